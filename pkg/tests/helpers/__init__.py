"""
Test helper modules for certiq.

This package contains assertion helpers and dense reference oracles that are
used across multiple test modules.
"""
