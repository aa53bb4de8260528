"""
Binary64 view of a Nahm algebra.

Structure constants are converted to float once; everything downstream
(Newton search, ODE integration, monitors) works on flat numpy vectors in the
usual ``(x1 | x2 | x3)`` order.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .linalg import Matrix
from .nahm import NahmAlgebra, NahmElement


class FloatNahm:
    def __init__(self, A: NahmAlgebra):
        self.algebra = A
        self.n = A.n
        self.dim = A.dim
        self.c = np.array(
            [[[float(x) for x in row] for row in plane] for plane in A.base.c], dtype=float
        ).reshape(self.n, self.n, self.n)

    def bracket(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self.c)

    def split(self, X: np.ndarray):
        n = self.n
        return X[:n], X[n:2 * n], X[2 * n:]

    def product(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        x1, x2, x3 = self.split(X)
        y1, y2, y3 = self.split(Y)
        b = self.bracket
        return 0.5 * np.concatenate([
            b(x2, y3) + b(y2, x3),
            b(x3, y1) + b(y3, x1),
            b(x1, y2) + b(y1, x2),
        ])

    def square(self, X: np.ndarray) -> np.ndarray:
        x1, x2, x3 = self.split(X)
        b = self.bracket
        return np.concatenate([b(x2, x3), b(x3, x1), b(x1, x2)])

    def ad(self, x: np.ndarray) -> np.ndarray:
        # ad(x)[k, j] = sum_i x_i c[i, j, k]
        return np.einsum("i,ijk->kj", x, self.c)

    def left_mult(self, X: np.ndarray) -> np.ndarray:
        x1, x2, x3 = self.split(X)
        a1, a2, a3 = self.ad(x1), self.ad(x2), self.ad(x3)
        z = np.zeros_like(a1)
        return 0.5 * np.block([[z, -a3, a2], [a3, z, -a1], [-a2, a1, z]])


def to_float(X) -> np.ndarray:
    if isinstance(X, NahmElement):
        X = X.coords
    return np.array([float(x) for x in X], dtype=float)


def matrix_to_float(M: Matrix) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in M.tolist()], dtype=float).reshape(M.shape)


def rationalize(x: float, max_den: int = 10**6, tol: float = 1e-8) -> Fraction | None:
    """Continued-fraction rounding; None if the best fraction is farther than ``tol``."""
    f = Fraction(x).limit_denominator(max_den)
    return f if abs(float(f) - x) <= tol else None


def rationalize_vector(v, max_den: int = 10**6, tol: float = 1e-8) -> tuple | None:
    out = []
    for x in v:
        f = rationalize(float(x), max_den, tol)
        if f is None:
            return None
        out.append(f)
    return tuple(out)


def expm(a: np.ndarray, terms: int = 24) -> np.ndarray:
    """Matrix exponential by scaling and squaring a truncated Taylor series."""
    norm = np.max(np.sum(np.abs(a), axis=1)) if a.size else 0.0
    s = max(0, int(np.ceil(np.log2(norm / 0.5))) if norm > 0.5 else 0)
    b = a / (2.0 ** s)
    out = np.eye(a.shape[0])
    term = np.eye(a.shape[0])
    for k in range(1, terms + 1):
        term = term @ b / k
        out = out + term
    for _ in range(s):
        out = out @ out
    return out
