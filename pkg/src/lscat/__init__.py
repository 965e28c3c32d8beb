"""Lusternik-Schnirelmann category of closed 3-manifolds, with certificates.

Subpackages: triangulations (delta_complex), exact linear algebra
(exact_algebra), cup products and cup-length (cohomology_ring), fundamental
groups (pi1), connected-sum expressions (manifold_algebra), the theorem
engine (category_engine), and the command line (cli).
"""

__version__ = "0.1.0"
