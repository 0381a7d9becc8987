"""Exact tools for the knots-quivers correspondence.

Modules: laurent (polynomial arithmetic), knotdb (special-form data),
ansatz (colored polynomials), quiver, rewriter, lmov (BPS and DT
invariants), homology (9_42 superpolynomials), cli.
"""

__version__ = "0.1.0"
