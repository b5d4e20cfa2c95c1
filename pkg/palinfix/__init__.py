"""
palinfix - palindromic prefixes of infinite words.

Builds words from directive functions, enumerates their palindromic prefixes,
recovers reduced directive functions from words and estimates the density
exponent delta, exactly for Sturmian schemes through continued fractions.
"""

__version__ = "0.1.0"
