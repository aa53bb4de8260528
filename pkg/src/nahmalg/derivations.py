"""
Derivations and automorphisms of A(g).

Operators on A(g) are exact ``3n x 3n`` matrices in the ``(x1 | x2 | x3)``
coordinate order.  A 3x3 matrix M acts on g (x) K^3 as the Kronecker product
``M (x) I_n``: block (i, j) is ``M[i, j] * I_n``.
"""

from __future__ import annotations

from fractions import Fraction
from math import pi, sqrt
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DimensionMismatch, PreconditionError, VerificationError
from .liealg import ad, is_lie_automorphism
from .linalg import Matrix, Subspace, centralizer, commutator, express, solve_nullspace, vec
from .nahm import (
    NahmAlgebra,
    diag,
    left_mult,
    product,
    proj_delta,
    proj_w,
    standard_form,
)
from .numeric import expm
from .structure import is_simple_nahm


def so3_generator(i: int, j: int) -> Matrix:
    """E_ij = e_i e_j^T - e_j e_i^T for 1-based i, j."""
    rows = [[0] * 3 for _ in range(3)]
    rows[i - 1][j - 1] = 1
    rows[j - 1][i - 1] = -1
    return Matrix(rows)


E12, E13, E23 = so3_generator(1, 2), so3_generator(1, 3), so3_generator(2, 3)
SO3_BASIS = (E12, E13, E23)


def hat(v: Sequence) -> Matrix:
    """Cross-product matrix: hat(v) w = v x w.  hat(e1) = E32, hat(e2) = E13, hat(e3) = E21."""
    a, b, c = vec(v)
    return Matrix([[0, -c, b], [c, 0, -a], [-b, a, 0]])


class BlockOperator:
    """A 3n x 3n operator viewed as a 3x3 grid of n x n blocks."""

    def __init__(self, T: Matrix, n: int):
        if T.shape != (3 * n, 3 * n):
            raise DimensionMismatch(f"expected a {3 * n}x{3 * n} matrix, got {T.shape}")
        self.T = T
        self.n = n

    def block(self, i: int, j: int) -> Matrix:
        return self.T.block(i, j, self.n)

    @property
    def T_diag(self) -> Matrix:
        return Matrix.block_diag([self.block(k, k) for k in range(3)])

    @property
    def T_off(self) -> Matrix:
        return self.T - self.T_diag


def act3(A: NahmAlgebra, M: Matrix) -> Matrix:
    """M (x) I_n for any 3x3 matrix M."""
    if M.shape != (3, 3):
        raise DimensionMismatch("expected a 3x3 matrix")
    eye = Matrix.identity(A.n)
    return Matrix.blocks([[eye * M[i, j] for j in range(3)] for i in range(3)])


def _product_table(A: NahmAlgebra):
    B = A.basis_elements()
    return B, [[product(A, B[i], B[j]).coords if j >= i else None for j in range(len(B))]
               for i in range(len(B))]


def is_derivation(A: NahmAlgebra, T: Matrix) -> bool:
    N = A.dim
    if T.shape != (N, N):
        raise DimensionMismatch(f"expected a {N}x{N} matrix")
    B, P = _product_table(A)
    images = [A.element(T.col(i)) for i in range(N)]
    for i in range(N):
        for j in range(i, N):
            lhs = T @ P[i][j]
            rhs = (product(A, images[i], B[j]) + product(A, B[i], images[j])).coords
            if lhs != rhs:
                return False
    return True


def derivation_algebra(A: NahmAlgebra) -> Subspace:
    """Der(A) as a subspace of row-major flattened operators.

    One exact system: unknown T[r, s] sits at column r*N + s and every basis
    pair i <= j contributes N equations
    T (B_i B_j) - L(B_j) T B_i - L(B_i) T B_j = 0.
    """
    N = A.dim
    B, P = _product_table(A)
    Ls = [left_mult(A, b) for b in B]
    rows = []
    for i in range(N):
        for j in range(i, N):
            pij = P[i][j]
            for r in range(N):
                row: dict[int, Fraction] = {}
                for s in range(N):
                    if pij[s]:
                        row[r * N + s] = row.get(r * N + s, 0) + pij[s]
                    # (L_j T)[r, i] = sum_s L_j[r, s] T[s, i]
                    if Ls[j][r, s]:
                        row[s * N + i] = row.get(s * N + i, 0) - Ls[j][r, s]
                    if Ls[i][r, s]:
                        row[s * N + j] = row.get(s * N + j, 0) - Ls[i][r, s]
                row = {k: v for k, v in row.items() if v}
                if row:
                    rows.append(row)
    der = solve_nullspace(rows, N * N)
    mats = [Matrix.unflatten(b, N, N) for b in der.basis]
    if not all(is_derivation(A, D) for D in mats):
        raise VerificationError("nullspace element fails the Leibniz identity")
    for a in range(len(mats)):
        for b in range(a + 1, len(mats)):
            if not der.contains(commutator(mats[a], mats[b]).flatten()):
                raise VerificationError("Der(A) is not closed under commutators")
    return der


def derivation_basis(A: NahmAlgebra) -> list[Matrix]:
    return [Matrix.unflatten(b, A.dim, A.dim) for b in derivation_algebra(A).basis]


def diag_ad(A: NahmAlgebra, x: Sequence) -> Matrix:
    D = diag(ad(A.base, vec(x)))
    if not is_derivation(A, D):
        raise VerificationError("diag(ad x) failed the Leibniz identity")
    return D


def so3_action(A: NahmAlgebra, M: Matrix) -> Matrix:
    if M.shape != (3, 3) or M.T != -M:
        raise ValueError("so3_action needs a skew-symmetric 3x3 matrix")
    D = act3(A, M)
    if not is_derivation(A, D):
        raise VerificationError("so(3) action failed the Leibniz identity")
    return D


def split_check(A: NahmAlgebra, T: Matrix) -> bool:
    """Both T_diag and T_off of a derivation are again derivations."""
    op = BlockOperator(T, A.n)
    return is_derivation(A, op.T_diag) and is_derivation(A, op.T_off)


class DecompositionReport(NamedTuple):
    der_dim: int
    expected_dim: int
    span_equal: bool
    commute: bool

    @property
    def passed(self) -> bool:
        return self.der_dim == self.expected_dim and self.span_equal and self.commute


def decomposition_check(A: NahmAlgebra) -> DecompositionReport:
    """Der(A(g)) = diag(ad g) (+) so(3) for simple g."""
    if not is_simple_nahm(A):
        raise PreconditionError(f"A({A.base.name}) is not simple")
    n = A.n
    der = derivation_algebra(A)
    ads = [diag_ad(A, A.base.basis(i)) for i in range(n)]
    rots = [so3_action(A, M) for M in SO3_BASIS]
    expected = Subspace.span([m.flatten() for m in ads + rots], A.dim ** 2)
    commute = all(commutator(a, r).is_zero() for a in ads for r in rots)
    return DecompositionReport(der.dim, n + 3, expected == der, commute)


def schur_centralizer(A: NahmAlgebra) -> Subspace:
    return centralizer([left_mult(A, b) for b in A.basis_elements()], A.dim)


def c_transpose(A: NahmAlgebra, T: Matrix) -> Matrix:
    """T^c with C(T^c X, Y) = C(X, T Y), i.e. G^-1 T^t G."""
    G = standard_form(A).gram
    try:
        Gi = G.inverse()
    except ZeroDivisionError:
        raise PreconditionError(f"standard form of A({A.base.name}) is degenerate") from None
    Tc = Gi @ T.T @ G
    if Tc.T @ G != G @ T:
        raise VerificationError("C-transpose identity failed")
    return Tc


def t_plus_tc_scalar(A: NahmAlgebra, T: Matrix) -> Fraction | None:
    """lambda with T + T^c = lambda I, or None if T + T^c is not scalar."""
    S = T + c_transpose(A, T)
    lam = S[0, 0]
    return lam if S == Matrix.identity(A.dim) * lam else None


def is_automorphism(A: NahmAlgebra, F: Matrix) -> bool:
    N = A.dim
    if F.shape != (N, N) or F.rank() < N:
        return False
    B, P = _product_table(A)
    images = [A.element(F.col(i)) for i in range(N)]
    return all(
        F @ P[i][j] == product(A, images[i], images[j]).coords
        for i in range(N) for j in range(i, N)
    )


U_MATRIX = Matrix([[-1, 2, 2], [2, -1, 2], [2, 2, -1]]) * Fraction(1, 3)
G_MATRIX = (pi / sqrt(3.0)) * np.array([[0.0, 1.0, -1.0], [-1.0, 0.0, 1.0], [1.0, -1.0, 0.0]])


class GradingAutomorphism(NamedTuple):
    U: Matrix
    G: np.ndarray
    exp_error: float
    eigen_ranks: tuple[int, int]  # rank(U - I), rank(U + I)


def grading_automorphism(A: NahmAlgebra) -> GradingAutomorphism:
    """U = P_Delta - P_W and a derivation G with exp(G) = U."""
    U = U_MATRIX
    I3 = Matrix.identity(3)
    if U @ U.T != I3 or U.det() != 1:
        raise VerificationError("U is not in SO(3)")
    if U @ U != I3:
        raise VerificationError("U is not an involution")
    Ub = act3(A, U)
    for X in A.basis_elements():
        if Ub @ X.coords != (proj_delta(A, X) - proj_w(A, X)).coords:
            raise VerificationError("blockwise U differs from P_Delta - P_W")
    if not is_automorphism(A, Ub):
        raise VerificationError("blockwise U is not an automorphism")
    Uf = np.array([[float(x) for x in row] for row in U.tolist()])
    err = float(np.max(np.abs(expm(G_MATRIX) - Uf)))
    if err > 1e-12:
        raise VerificationError(f"exp(G) misses U by {err:.3e}")
    return GradingAutomorphism(U, G_MATRIX.copy(), err, ((U - I3).rank(), (U + I3).rank()))


class AutFactorization(NamedTuple):
    phi: Matrix
    R: Matrix


def aut_factorization(A: NahmAlgebra, F: Matrix) -> AutFactorization:
    """Split F = diag(phi) R with phi in Aut(g) and R in SO(3).

    Conjugation by F preserves the so(3) part of Der(A).  In the basis
    so3_action(hat(e_k)) the conjugation matrix is R itself, because
    R hat(v) R^t = hat(R v) for R in SO(3).
    """
    if not is_simple_nahm(A):
        raise PreconditionError(f"A({A.base.name}) is not simple")
    if not is_automorphism(A, F):
        raise PreconditionError("F is not an automorphism")
    Finv = F.inverse()
    hats = [act3(A, hat(Matrix.identity(3).col(k))) for k in range(3)]
    flat = [h.flatten() for h in hats]
    cols = []
    for h in hats:
        coeffs = express(flat, (F @ h @ Finv).flatten())
        if coeffs is None:
            raise VerificationError("conjugation does not preserve the so(3) component")
        cols.append(coeffs)
    R = Matrix.from_columns(cols, 3)
    if R @ R.T != Matrix.identity(3) or R.det() != 1:
        raise VerificationError("recovered R is not in SO(3)")
    D = F @ act3(A, R.T)
    op = BlockOperator(D, A.n)
    phi = op.block(0, 0)
    if D != diag(phi):
        raise VerificationError("F R^-1 is not block diagonal with equal blocks")
    if not is_lie_automorphism(A.base, phi):
        raise VerificationError("recovered phi is not an automorphism of g")
    if diag(phi) @ act3(A, R) != F or act3(A, R) @ diag(phi) != F:
        raise VerificationError("factorization does not reconstruct F")
    return AutFactorization(phi, R)
