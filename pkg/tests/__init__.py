"""
Test package for xspec-eval
"""
