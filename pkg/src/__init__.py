"""Numerical verification of bounded symmetric domain identities"""

__version__ = "0.1.0"
