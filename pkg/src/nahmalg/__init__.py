"""Nahm algebras A(g): exact structure theory and numerical Nahm flows."""

from .liealg import LieAlgebra, catalog
from .nahm import NahmAlgebra, NahmElement, product, square

__all__ = ["LieAlgebra", "NahmAlgebra", "NahmElement", "catalog", "product", "square"]
__version__ = "0.1.0"
