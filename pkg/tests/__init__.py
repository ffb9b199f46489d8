"""
Test package
"""
