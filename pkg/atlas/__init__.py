"""
Exact-arithmetic atlas of the exceptional Lie algebras.
"""

__version__ = "1.0.0"
