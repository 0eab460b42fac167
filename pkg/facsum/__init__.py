"""
Facsum - summation reduction for combinatorial sequences
Description: Exact sums, factorial transforms and quadrature-backed checks
"""

__version__ = "1.0.0"
