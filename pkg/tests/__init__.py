"""Tests for braid_bkl package"""
