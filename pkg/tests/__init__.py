"""
Test package for palinfix.

This package contains unit tests for the palinfix library and command line.
"""
