"""
Exact rational dense linear algebra.

Everything here works over ``fractions.Fraction``.  Matrices are immutable
row-major grids; subspaces are stored by their reduced row-echelon basis so
that equality of subspaces is plain equality of bases.

Elimination runs on sparse row dictionaries internally, which keeps the
large Leibniz/commutation systems built elsewhere in the package cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

Vector = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction.

    Floats are rejected: exact modules never see binary64 values.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def vec(values: Iterable) -> Vector:
    return tuple(to_fraction(v) for v in values)


def zero_vec(n: int) -> Vector:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def vadd(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vscale(s, a: Vector) -> Vector:
    s = to_fraction(s)
    return tuple(s * x for x in a)


def is_zero_vec(a: Vector) -> bool:
    return all(x == 0 for x in a)


class Matrix:
    """Immutable exact matrix.

    Construct from a list of rows.  Supports ``@`` with matrices and with
    plain tuples (treated as column vectors), ``+``, ``-`` and scalar ``*``.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: Sequence[Sequence], cols: int | None = None):
        data = tuple(vec(r) for r in rows)
        if cols is None:
            if not data:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(data[0])
        if any(len(r) != cols for r in data):
            raise ValueError("ragged rows")
        self.rows = len(data)
        self.cols = cols
        self._data = data

    @classmethod
    def _raw(cls, data: tuple, cols: int) -> "Matrix":
        m = object.__new__(cls)
        m.rows = len(data)
        m.cols = cols
        m._data = data
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls._raw(tuple(zero_vec(cols) for _ in range(rows)), cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw(tuple(unit_vec(n, i) for i in range(n)), n)

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        n = len(values)
        vals = vec(values)
        return cls._raw(
            tuple(tuple(vals[i] if i == j else ZERO for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "Matrix":
        if not columns:
            if rows is None:
                raise ValueError("rows must be given for a matrix with no columns")
            return cls._raw(tuple(() for _ in range(rows)), 0)
        return cls(list(zip(*columns)), len(columns))

    @classmethod
    def blocks(cls, grid: Sequence[Sequence["Matrix"]]) -> "Matrix":
        """Assemble a block matrix from a grid of equally shaped blocks."""
        out = []
        for block_row in grid:
            height = block_row[0].rows
            for r in range(height):
                row: list = []
                for b in block_row:
                    row.extend(b._data[r])
                out.append(row)
        return cls(out, sum(b.cols for b in grid[0]))

    @classmethod
    def block_diag(cls, mats: Sequence["Matrix"]) -> "Matrix":
        total_c = sum(m.cols for m in mats)
        out = []
        offset = 0
        for m in mats:
            for r in m._data:
                out.append((ZERO,) * offset + r + (ZERO,) * (total_c - offset - m.cols))
            offset += m.cols
        return cls._raw(tuple(out), total_c)

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> Vector:
        return self._data[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(tuple(zip(*self._data)) if self.rows else tuple(() for _ in range(self.cols)), self.rows)

    def block(self, i: int, j: int, size: int) -> "Matrix":
        return Matrix._raw(
            tuple(r[j * size:(j + 1) * size] for r in self._data[i * size:(i + 1) * size]), size
        )

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.cols, self._data))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._data)
        return f"Matrix([{body}])"

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._raw(tuple(vadd(a, b) for a, b in zip(self._data, other._data)), self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._raw(tuple(vsub(a, b) for a, b in zip(self._data, other._data)), self.cols)

    def __neg__(self) -> "Matrix":
        return self * -1

    def __mul__(self, s) -> "Matrix":
        s = to_fraction(s)
        return Matrix._raw(tuple(tuple(s * x for x in r) for r in self._data), self.cols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            ocols = other.T._data
            return Matrix._raw(
                tuple(tuple(_dot(r, c) for c in ocols) for r in self._data), other.cols
            )
        if len(other) != self.cols:
            raise ValueError(f"shape mismatch {self.shape} @ vector({len(other)})")
        return tuple(_dot(r, other) for r in self._data)

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def trace(self) -> Fraction:
        return sum((self._data[i][i] for i in range(min(self.rows, self.cols))), ZERO)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and self == self.T

    def flatten(self) -> Vector:
        return tuple(x for r in self._data for x in r)

    @classmethod
    def unflatten(cls, values: Sequence, rows: int, cols: int) -> "Matrix":
        values = vec(values)
        return cls._raw(tuple(values[i * cols:(i + 1) * cols] for i in range(rows)), cols)

    def rank(self) -> int:
        return len(_sparse_rref(_sparse_rows(self._data), self.cols))

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        a = [list(r) for r in self._data]
        n = self.rows
        sign = ONE
        result = ONE
        for c in range(n):
            p = next((r for r in range(c, n) if a[r][c] != 0), None)
            if p is None:
                return ZERO
            if p != c:
                a[c], a[p] = a[p], a[c]
                sign = -sign
            piv = a[c][c]
            result *= piv
            for r in range(c + 1, n):
                f = a[r][c] / piv
                if f:
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return sign * result

    def inverse(self) -> "Matrix":
        """Exact inverse by Gauss-Jordan; raises ``ZeroDivisionError`` if singular."""
        n = self.rows
        if n != self.cols:
            raise ValueError("inverse of a non-square matrix")
        aug = [list(r) + list(unit_vec(n, i)) for i, r in enumerate(self._data)]
        for c in range(n):
            p = next((r for r in range(c, n) if aug[r][c] != 0), None)
            if p is None:
                raise ZeroDivisionError("matrix is singular")
            aug[c], aug[p] = aug[p], aug[c]
            piv = aug[c][c]
            aug[c] = [x / piv for x in aug[c]]
            for r in range(n):
                if r != c and aug[r][c] != 0:
                    f = aug[r][c]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
        return Matrix._raw(tuple(tuple(r[n:]) for r in aug), n)


def _dot(a, b) -> Fraction:
    s = ZERO
    for x, y in zip(a, b):
        if x and y:
            s += x * y
    return s


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return a @ b - b @ a


# --- sparse elimination core -------------------------------------------------

def _sparse_rows(rows: Iterable[Sequence]) -> list[dict]:
    out = []
    for r in rows:
        d = {j: to_fraction(x) for j, x in enumerate(r) if x != 0}
        if d:
            out.append(d)
    return out


def _sparse_rref(rows: Iterable[dict], ncols: int) -> dict[int, dict]:
    """Incremental Gauss-Jordan on sparse rows.

    Returns ``{pivot_col: row}`` where every row has a 1 at its pivot and a 0
    in every other pivot column (fully reduced).
    """
    pivots: dict[int, dict] = {}
    for raw in rows:
        row = dict(raw)
        for col in [c for c in row if c in pivots]:
            f = row.get(col)
            if not f:
                continue
            for k, v in pivots[col].items():
                nv = row.get(k, ZERO) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        if not row:
            continue
        p = min(row)
        inv = 1 / row[p]
        row = {k: v * inv for k, v in row.items()}
        for prow in pivots.values():
            f = prow.get(p)
            if f:
                for k, v in row.items():
                    nv = prow.get(k, ZERO) - f * v
                    if nv:
                        prow[k] = nv
                    else:
                        prow.pop(k, None)
        pivots[p] = row
    return pivots


def _dense(row: dict, ncols: int) -> Vector:
    out = [ZERO] * ncols
    for k, v in row.items():
        out[k] = v
    return tuple(out)


def rref(m: Matrix) -> Matrix:
    """Reduced row-echelon form, padded with zero rows to the input shape."""
    pivots = _sparse_rref(_sparse_rows(m._data), m.cols)
    rows = [_dense(pivots[p], m.cols) for p in sorted(pivots)]
    rows += [zero_vec(m.cols)] * (m.rows - len(rows))
    return Matrix._raw(tuple(rows), m.cols)


def _null_basis(pivots: dict[int, dict], ncols: int) -> list[Vector]:
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for p, row in pivots.items():
            x = row.get(f)
            if x:
                v[p] = -x
        basis.append(tuple(v))
    return basis


# --- subspaces ---------------------------------------------------------------

class Subspace:
    """A subspace of Q^ambient_dim held by its canonical (RREF) basis."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, basis: tuple, pivots: tuple):
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        vectors = list(vectors)
        for v in vectors:
            if len(v) != ambient_dim:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        return cls._from_pivots(_sparse_rref(_sparse_rows(vectors), ambient_dim), ambient_dim)

    @classmethod
    def _from_pivots(cls, pivots: dict, ambient_dim: int) -> "Subspace":
        order = tuple(sorted(pivots))
        return cls(ambient_dim, tuple(_dense(pivots[p], ambient_dim) for p in order), order)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, (), ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, tuple(unit_vec(ambient_dim, i) for i in range(ambient_dim)),
                   tuple(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def matrix(self) -> Matrix:
        return Matrix._raw(self.basis, self.ambient_dim)

    def reduce(self, v: Sequence) -> Vector:
        """Residual of ``v`` after elimination against the basis."""
        r = list(vec(v))
        for p, b in zip(self.pivots, self.basis):
            f = r[p]
            if f:
                for k, x in enumerate(b):
                    if x:
                        r[k] -= f * x
        return tuple(r)

    def contains(self, v: Sequence) -> bool:
        return is_zero_vec(self.reduce(v))

    __contains__ = contains

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(b) for b in other.basis)

    def coordinates(self, v: Sequence) -> Vector:
        """Coefficients of ``v`` in the canonical basis; ``v`` must lie in the span."""
        v = vec(v)
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return tuple(v[p] for p in self.pivots)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def annihilator(self) -> "Subspace":
        """Row space of all linear functionals vanishing on the subspace."""
        return nullspace(self.matrix())

    def intersection(self, other: "Subspace") -> "Subspace":
        constraints = self.annihilator().basis + other.annihilator().basis
        return nullspace(Matrix._raw(constraints, self.ambient_dim))

    def complement_coordinates(self) -> tuple[int, ...]:
        """Coordinates not used as pivots; their unit vectors span a complement."""
        return tuple(i for i in range(self.ambient_dim) if i not in self.pivots)


def nullspace(m: Matrix) -> Subspace:
    pivots = _sparse_rref(_sparse_rows(m._data), m.cols)
    return Subspace.span(_null_basis(pivots, m.cols), m.cols)


def solve_nullspace(rows: Iterable[dict], ncols: int) -> Subspace:
    """Nullspace of a system given directly as sparse rows ``{col: coeff}``."""
    pivots = _sparse_rref(rows, ncols)
    return Subspace.span(_null_basis(pivots, ncols), ncols)


def centralizer(mats: Sequence[Matrix], k: int | None = None) -> Subspace:
    """All k x k matrices T with T M = M T for every M in ``mats``.

    The result lives in the k^2-dim operator space, with T flattened
    row-major.  ``k`` is only needed when ``mats`` is empty.
    """
    if k is None:
        if not mats:
            raise ValueError("k is required when no matrices are given")
        k = mats[0].rows
    for m in mats:
        if m.shape != (k, k):
            raise ValueError("centralizer needs square matrices of equal size")
    rows = []
    for m in mats:
        # (T M - M T)[i][j] = sum_l T[i][l] M[l][j] - M[i][l] T[l][j]
        for i in range(k):
            for j in range(k):
                eq: dict[int, Fraction] = {}
                for l in range(k):
                    a = m[l, j]
                    if a:
                        eq[i * k + l] = eq.get(i * k + l, ZERO) + a
                    b = m[i, l]
                    if b:
                        eq[l * k + j] = eq.get(l * k + j, ZERO) - b
                eq = {c: v for c, v in eq.items() if v}
                if eq:
                    rows.append(eq)
    return solve_nullspace(rows, k * k)


# --- bilinear forms ----------------------------------------------------------

class Definiteness(str, Enum):
    POSITIVE_DEFINITE = "positive_definite"
    NEGATIVE_DEFINITE = "negative_definite"
    INDEFINITE_OR_SEMIDEFINITE = "indefinite_or_semidefinite"


@dataclass(frozen=True)
class BilinearForm:
    gram: Matrix

    def __post_init__(self):
        if not self.gram.is_symmetric():
            raise ValueError("gram matrix must be symmetric")

    @property
    def dim(self) -> int:
        return self.gram.rows

    def __call__(self, x: Sequence, y: Sequence) -> Fraction:
        return _dot(x, self.gram @ vec(y))

    def radical(self) -> Subspace:
        return nullspace(self.gram)

    def is_nondegenerate(self) -> bool:
        return self.radical().is_zero()

    def is_zero(self) -> bool:
        return self.gram.is_zero()

    def signature(self) -> tuple[int, int, int]:
        """(positive, negative, zero) inertia via exact symmetric elimination."""
        return inertia(self.gram)


def leading_minors(m: Matrix) -> list[Fraction]:
    return [Matrix([r[:k] for r in m.tolist()[:k]], k).det() for k in range(1, m.rows + 1)]


def definiteness(f: BilinearForm) -> Definiteness:
    """Sylvester's criterion on leading principal minors."""
    minors = leading_minors(f.gram)
    if any(d == 0 for d in minors):
        return Definiteness.INDEFINITE_OR_SEMIDEFINITE
    if all(d > 0 for d in minors):
        return Definiteness.POSITIVE_DEFINITE
    if all((d < 0) if k % 2 == 0 else (d > 0) for k, d in enumerate(minors)):
        return Definiteness.NEGATIVE_DEFINITE
    return Definiteness.INDEFINITE_OR_SEMIDEFINITE


def inertia(m: Matrix) -> tuple[int, int, int]:
    # congruence diagonalisation (symmetric Gaussian elimination)
    a = m.tolist()
    n = len(a)
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i < j and a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # replace row/col i by i + j, which makes a[i][i] = 2 a[i][j] != 0
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            piv = i
        d = a[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for i in active:
            f = a[i][piv] / d
            if f:
                for k in range(n):
                    a[i][k] -= f * a[piv][k]
        for i in active:
            a[piv][i] = a[i][piv] = ZERO
    return pos, neg, n - pos - neg


def express(vectors: Sequence[Sequence], v: Sequence) -> Vector | None:
    """Coefficients a with sum a_i vectors[i] = v, or None if v is not in the span.

    ``vectors`` must be linearly independent for the answer to be unique.
    """
    n = len(v)
    k = len(vectors)
    # columns: the k vectors, then -v; a nullspace vector with last entry 1 solves it
    rows = [tuple(vectors[c][r] for c in range(k)) + (-to_fraction(v[r]),) for r in range(n)]
    ns = nullspace(Matrix(rows, k + 1)) if rows else Subspace.full(k + 1)
    for b in ns.basis:
        if b[k] != 0:
            return tuple(x / b[k] for x in b[:k])
    return None
