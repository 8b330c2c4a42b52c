"""Jacobian Poisson structures on K[x1, x2, x3, x4]: brackets, vector calculus
on A^4 / A^6, Poisson (co)homology at truncated degree and module-structure checks."""

__version__ = "0.1.0"

from .polyring import Poly, WeightVector, parse_poly  # noqa: E402
from .poisson import PoissonStructure, j_preset, k_preset  # noqa: E402

__all__ = ["Poly", "WeightVector", "parse_poly", "PoissonStructure", "j_preset", "k_preset",
           "__version__"]
