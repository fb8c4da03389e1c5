"""
Test package for certiq.

This package contains all test modules for the certiq project.
Tests are organized into unit and integration test categories.
"""
