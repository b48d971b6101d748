"""
braid-bkl - normal forms and the word problem for braid groups in
Birman-Ko-Lee-Garside generators
"""

__version__ = "0.1.0"

from .core import (
    ArtinLetter,
    BandLetter,
    BraidContext,
    BraidError,
    BudgetExceededError,
    ConstraintViolationError,
    DeltaLetter,
    InvalidGeneratorError,
    InvalidSequenceError,
    InverseBand,
    RangeConstraint,
    deglex_compare,
    prime_transform,
    star_transform,
)
from .engine import (
    POLICIES,
    MatchPolicy,
    NormalForm,
    RewriteEngine,
    RewriteInvariantError,
)
from .exporter import ReportExporter
from .oracle import FreeAutomorphism, FreeGroupOracle, OracleConfig
from .parser import ParseError, WordParser
from .rules import RuleId, RuleMatch
from .selftest import SelfTestConfig, SelfTester
from .verifier import ConfluenceReport, ConfluenceVerifier, VerifierConfig

__all__ = [
    "ArtinLetter",
    "BandLetter",
    "BraidContext",
    "BraidError",
    "BudgetExceededError",
    "ConstraintViolationError",
    "DeltaLetter",
    "InvalidGeneratorError",
    "InvalidSequenceError",
    "InverseBand",
    "RangeConstraint",
    "deglex_compare",
    "prime_transform",
    "star_transform",
    "POLICIES",
    "MatchPolicy",
    "NormalForm",
    "RewriteEngine",
    "RewriteInvariantError",
    "ReportExporter",
    "FreeAutomorphism",
    "FreeGroupOracle",
    "OracleConfig",
    "ParseError",
    "WordParser",
    "RuleId",
    "RuleMatch",
    "SelfTestConfig",
    "SelfTester",
    "ConfluenceReport",
    "ConfluenceVerifier",
    "VerifierConfig",
]
