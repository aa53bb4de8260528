"""
Lie algebras given by structure constants.

A :class:`LieAlgebra` stores the dense tensor ``c[i][j][k]`` with
``[b_i, b_j] = sum_k c[i][j][k] b_k``.  Vectors of the algebra are plain
tuples of Fractions in the fixed basis ``b_0 .. b_{n-1}``; nothing here ever
changes basis behind the caller's back.

Simplicity is decided over Q by semisimplicity plus a one-dimensional
centralizer of ``ad(g)``.  Simple algebras of complex type (e.g. sl2(C)
viewed as a real algebra) have a two-dimensional centralizer and would be
misreported; that case is caught by the ideal-closure cross-check, which
raises :class:`SimplicityMismatch` instead of answering.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .errors import DimensionMismatch, InvalidAlgebra, SimplicityMismatch, VerificationError
from .linalg import (
    ZERO,
    BilinearForm,
    Matrix,
    Subspace,
    Vector,
    centralizer,
    express,
    nullspace,
    unit_vec,
    vec,
    zero_vec,
)


class LieAlgebra:
    """Finite-dimensional Lie algebra over Q.

    Construction does not validate; call :func:`validate` (or use
    :func:`catalog` / :meth:`from_brackets` with ``check=True``) when the
    input is untrusted.
    """

    __slots__ = ("name", "dim", "c", "_table")

    def __init__(self, name: str, dim: int, c: Sequence):
        self.name = name
        self.dim = dim
        self.c = tuple(tuple(vec(c[i][j]) for j in range(dim)) for i in range(dim))
        if len(self.c) != dim or any(len(row) != dim for row in self.c):
            raise DimensionMismatch("structure constant tensor has the wrong shape")
        # sparse view: _table[i][j] = ((k, c_ijk), ...) for nonzero entries
        self._table = tuple(
            tuple(tuple((k, x) for k, x in enumerate(self.c[i][j]) if x) for j in range(dim))
            for i in range(dim)
        )

    @classmethod
    def from_brackets(cls, name: str, dim: int, brackets: dict, check: bool = True) -> "LieAlgebra":
        """Build from ``{(i, j): vector}`` with i < j (0-based); antisymmetric completion implied."""
        c = [[list(zero_vec(dim)) for _ in range(dim)] for _ in range(dim)]
        for (i, j), v in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise DimensionMismatch(f"bracket index ({i}, {j}) out of range")
            if i == j:
                raise InvalidAlgebra(f"[b{i}, b{i}] must be zero and cannot be specified")
            v = vec(v)
            if len(v) != dim:
                raise DimensionMismatch("bracket value has the wrong length")
            c[i][j] = list(v)
            c[j][i] = [-x for x in v]
        g = cls(name, dim, c)
        if check:
            report = validate(g)
            if not report.ok:
                raise InvalidAlgebra(f"{name}: {report.describe()}")
        return g

    def __repr__(self):
        return f"LieAlgebra({self.name!r}, dim={self.dim})"

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.dim == other.dim and self.c == other.c

    def __hash__(self):
        return hash((self.dim, self.c))

    def basis(self, i: int) -> Vector:
        return unit_vec(self.dim, i)

    def zero(self) -> Vector:
        return zero_vec(self.dim)

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        return bracket(self, x, y)


class ValidationReport(NamedTuple):
    antisymmetry_ok: bool
    jacobi_ok: bool
    antisymmetry_failures: tuple  # (i, j, k), 0-based
    jacobi_failures: tuple  # ((i, j, k, l), residual), 0-based

    @property
    def ok(self) -> bool:
        return self.antisymmetry_ok and self.jacobi_ok

    @property
    def failing_indices(self) -> tuple:
        return self.antisymmetry_failures + tuple(q for q, _ in self.jacobi_failures)

    def describe(self) -> str:
        if self.ok:
            return "antisymmetry ok, jacobi ok"
        parts = []
        if not self.antisymmetry_ok:
            idx = ", ".join(str(tuple(a + 1 for a in t)) for t in self.antisymmetry_failures[:5])
            parts.append(f"antisymmetry fails at {idx}")
        if not self.jacobi_ok:
            idx = ", ".join(
                f"{tuple(a + 1 for a in q)} residual {r}" for q, r in self.jacobi_failures[:5]
            )
            parts.append(f"jacobi fails at {idx}")
        return "; ".join(parts)


def validate(g: LieAlgebra) -> ValidationReport:
    """Check antisymmetry and the Jacobi identity exactly.

    Indices in the report are 0-based; :meth:`ValidationReport.describe`
    prints them 1-based.
    """
    n, c = g.dim, g.c
    anti = tuple(
        (i, j, k)
        for i in range(n)
        for j in range(i, n)
        for k in range(n)
        if c[i][j][k] != -c[j][i][k]
    )
    t = g._table
    if anti:
        triples = [(i, j, k) for i in range(n) for j in range(n) for k in range(n)]
    else:
        # with antisymmetry, repeated indices satisfy Jacobi automatically
        triples = [(i, j, k) for i in range(n) for j in range(i + 1, n) for k in range(j + 1, n)]
    jac = []
    for i, j, k in triples:
        res = [ZERO] * n
        for a, b, cc in ((i, j, k), (j, k, i), (k, i, j)):
            for m, x in t[a][b]:
                for l, y in t[m][cc]:
                    res[l] += x * y
        for l, r in enumerate(res):
            if r:
                jac.append(((i, j, k, l), r))
    return ValidationReport(not anti, not jac, anti, tuple(jac))


def _check_vec(g: LieAlgebra, *xs):
    for x in xs:
        if len(x) != g.dim:
            raise DimensionMismatch(f"vector of length {len(x)} for algebra of dim {g.dim}")


def bracket(g: LieAlgebra, x: Sequence, y: Sequence) -> Vector:
    _check_vec(g, x, y)
    out = [ZERO] * g.dim
    t = g._table
    for i, xi in enumerate(x):
        if not xi:
            continue
        row = t[i]
        for j, yj in enumerate(y):
            if not yj:
                continue
            f = xi * yj
            for k, ck in row[j]:
                out[k] += f * ck
    return tuple(out)


def ad(g: LieAlgebra, x: Sequence) -> Matrix:
    """Matrix of ``y -> [x, y]``: column j is ``[x, b_j]``."""
    _check_vec(g, x)
    cols = [bracket(g, x, g.basis(j)) for j in range(g.dim)]
    return Matrix.from_columns(cols, g.dim)


def ad_basis(g: LieAlgebra) -> list[Matrix]:
    return [ad(g, g.basis(i)) for i in range(g.dim)]


@dataclass(frozen=True)
class Representation:
    """Matrices ``rho[i] = rho(b_i)`` acting on a space of dimension ``space_dim``."""

    parent: LieAlgebra
    rho: tuple
    space_dim: int = field(default=-1)

    def __post_init__(self):
        rho = tuple(self.rho)
        object.__setattr__(self, "rho", rho)
        if len(rho) != self.parent.dim:
            raise DimensionMismatch("need one matrix per basis vector")
        if self.space_dim < 0:
            if not rho:
                raise DimensionMismatch("space_dim required for a zero-dimensional algebra")
            object.__setattr__(self, "space_dim", rho[0].rows)
        if any(m.shape != (self.space_dim, self.space_dim) for m in rho):
            raise DimensionMismatch("representation matrices must be square of equal size")

    def of(self, x: Sequence) -> Matrix:
        out = Matrix.zeros(self.space_dim, self.space_dim)
        for xi, m in zip(x, self.rho):
            if xi:
                out = out + m * xi
        return out

    def is_valid(self) -> bool:
        """Homomorphism law on all basis pairs."""
        g = self.parent
        for i in range(g.dim):
            for j in range(i + 1, g.dim):
                lhs = self.of(g.c[i][j])
                if lhs != self.rho[i] @ self.rho[j] - self.rho[j] @ self.rho[i]:
                    return False
        return True


def adjoint_rep(g: LieAlgebra) -> Representation:
    return Representation(g, tuple(ad_basis(g)), g.dim)


def defining_rep(g: LieAlgebra) -> Representation:
    """3x3 rotation generators for so3, 2x2 trace-free matrices for sl2 (catalog bases)."""
    if g.name == "so3" and g == _so3():
        mats = (
            Matrix([[0, 0, 0], [0, 0, -1], [0, 1, 0]]),
            Matrix([[0, 0, 1], [0, 0, 0], [-1, 0, 0]]),
            Matrix([[0, -1, 0], [1, 0, 0], [0, 0, 0]]),
        )
    elif g.name == "sl2" and g == _sl2():
        mats = (Matrix([[1, 0], [0, -1]]), Matrix([[0, 1], [0, 0]]), Matrix([[0, 0], [1, 0]]))
    else:
        raise KeyError(f"no defining representation stored for {g.name!r}")
    rep = Representation(g, mats)
    if not rep.is_valid():
        raise InvalidAlgebra("defining matrices fail the bracket relations")
    return rep


def zero_rep(g: LieAlgebra, space_dim: int) -> Representation:
    return Representation(g, tuple(Matrix.zeros(space_dim, space_dim) for _ in range(g.dim)), space_dim)


def trace_form(rep: Representation) -> BilinearForm:
    if not rep.is_valid():
        raise InvalidAlgebra("matrices do not form a representation")
    r = rep.rho
    n = len(r)
    gram = [[(r[i] @ r[j]).trace() for j in range(n)] for i in range(n)]
    return BilinearForm(Matrix(gram, n))


def killing(g: LieAlgebra) -> BilinearForm:
    return trace_form(adjoint_rep(g))


# --- subspace machinery --------------------------------------------------------

def bracket_span(g: LieAlgebra, u: Subspace, v: Subspace) -> Subspace:
    return Subspace.span(
        [bracket(g, a, b) for a in u.basis for b in v.basis], g.dim
    )


def derived_algebra(g: LieAlgebra) -> Subspace:
    full = Subspace.full(g.dim)
    return bracket_span(g, full, full)


def is_subalgebra(g: LieAlgebra, s: Subspace) -> bool:
    return all(s.contains(bracket(g, a, b)) for a in s.basis for b in s.basis)


def is_ideal(g: LieAlgebra, s: Subspace) -> bool:
    return all(s.contains(bracket(g, g.basis(i), b)) for i in range(g.dim) for b in s.basis)


class DerivedSeries(NamedTuple):
    members: tuple
    is_solvable: bool


def derived_series(g: LieAlgebra, start: Subspace | None = None) -> DerivedSeries:
    """g, [g,g], [[g,g],[g,g]], ... listed until the first repeat.

    ``start`` runs the series of a subalgebra instead of the whole algebra.
    """
    cur = Subspace.full(g.dim) if start is None else start
    members = [cur]
    while not cur.is_zero():
        nxt = bracket_span(g, cur, cur)
        if nxt == cur:
            break
        members.append(nxt)
        cur = nxt
    return DerivedSeries(tuple(members), members[-1].is_zero())


def radical(g: LieAlgebra) -> Subspace:
    """Maximal solvable ideal, as the Killing-orthogonal complement of [g, g].

    Valid in characteristic zero.  The answer is re-checked to be a solvable
    ideal before it is returned.
    """
    gram = killing(g).gram
    dg = derived_algebra(g)
    rows = [gram @ y for y in dg.basis]
    rad = nullspace(Matrix(rows, g.dim)) if rows else Subspace.full(g.dim)
    if not is_ideal(g, rad):
        raise VerificationError(f"{g.name}: computed radical is not an ideal")
    if not derived_series(g, rad).is_solvable:
        raise VerificationError(f"{g.name}: computed radical is not solvable")
    return rad


def is_semisimple(g: LieAlgebra) -> bool:
    return killing(g).is_nondegenerate()


def is_solvable(g: LieAlgebra) -> bool:
    return derived_series(g).is_solvable


def ideal_closure(g: LieAlgebra, seed: Iterable[Sequence]) -> Subspace:
    """Smallest ad-invariant subspace containing ``seed``."""
    cur = Subspace.span(list(seed), g.dim)
    while True:
        new = [bracket(g, g.basis(i), b) for i in range(g.dim) for b in cur.basis]
        nxt = cur + Subspace.span(new, g.dim)
        if nxt == cur:
            return cur
        cur = nxt


def ad_centralizer(g: LieAlgebra) -> Subspace:
    return centralizer(ad_basis(g), g.dim)


def is_simple(g: LieAlgebra) -> bool:
    if g.dim == 0 or derived_algebra(g).is_zero():
        return False
    if not is_semisimple(g):
        return False
    by_centralizer = ad_centralizer(g).dim == 1
    by_closure = all(ideal_closure(g, [g.basis(i)]).is_full() for i in range(g.dim))
    if by_centralizer != by_closure:
        raise SimplicityMismatch(
            f"{g.name}: centralizer test says simple={by_centralizer}, "
            f"ideal closure says simple={by_closure} (possibly a simple algebra of complex type)"
        )
    return by_centralizer


# --- constructions -------------------------------------------------------------

def direct_sum(g1: LieAlgebra, g2: LieAlgebra, name: str | None = None) -> LieAlgebra:
    n1, n2 = g1.dim, g2.dim
    n = n1 + n2
    c = [[zero_vec(n) for _ in range(n)] for _ in range(n)]
    for i in range(n1):
        for j in range(n1):
            c[i][j] = g1.c[i][j] + zero_vec(n2)
    for i in range(n2):
        for j in range(n2):
            c[n1 + i][n1 + j] = zero_vec(n1) + g2.c[i][j]
    return LieAlgebra(name or f"{g1.name}+{g2.name}", n, c)


def restrict(g: LieAlgebra, basis: Sequence[Sequence], name: str | None = None) -> LieAlgebra:
    """Structure constants of the subalgebra spanned by the independent ``basis``."""
    basis = [vec(b) for b in basis]
    k = len(basis)
    c = [[None] * k for _ in range(k)]
    for a in range(k):
        for b in range(k):
            coords = express(basis, bracket(g, basis[a], basis[b]))
            if coords is None:
                raise InvalidAlgebra("span is not closed under the bracket")
            c[a][b] = coords
    return LieAlgebra(name or f"sub({g.name})", k, c)


def quotient(g: LieAlgebra, ideal: Subspace, name: str | None = None) -> LieAlgebra:
    """g / ideal on the complement spanned by the non-pivot coordinates of the ideal."""
    keep = ideal.complement_coordinates()
    k = len(keep)
    c = [[None] * k for _ in range(k)]
    for a, i in enumerate(keep):
        for b, j in enumerate(keep):
            r = ideal.reduce(g.c[i][j])
            c[a][b] = tuple(r[x] for x in keep)
    return LieAlgebra(name or f"{g.name}/I", k, c)


def is_homomorphism(g: LieAlgebra, h: LieAlgebra, phi: Matrix) -> bool:
    """``phi`` (h.dim x g.dim) preserves brackets on all basis pairs."""
    if phi.shape != (h.dim, g.dim):
        raise DimensionMismatch("phi has the wrong shape")
    cols = [phi.col(i) for i in range(g.dim)]
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            if phi @ g.c[i][j] != bracket(h, cols[i], cols[j]):
                return False
    return True


def is_lie_automorphism(g: LieAlgebra, phi: Matrix) -> bool:
    return phi.det() != 0 and is_homomorphism(g, g, phi)


# --- catalog -------------------------------------------------------------------

def _so3() -> LieAlgebra:
    return LieAlgebra.from_brackets(
        "so3", 3, {(0, 1): (0, 0, 1), (1, 2): (1, 0, 0), (0, 2): (0, -1, 0)}
    )


def _sl2() -> LieAlgebra:
    # basis (h, e, f)
    return LieAlgebra.from_brackets(
        "sl2", 3, {(0, 1): (0, 2, 0), (0, 2): (0, 0, -2), (1, 2): (1, 0, 0)}
    )


def _heisenberg() -> LieAlgebra:
    # basis (x, y, z), [x, y] = z
    return LieAlgebra.from_brackets("heisenberg", 3, {(0, 1): (0, 0, 1)})


def _aff1() -> LieAlgebra:
    # basis (a, b), [a, b] = b
    return LieAlgebra.from_brackets("aff1", 2, {(0, 1): (0, 1)})


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(f"abelian({n})", n, [[zero_vec(n)] * n for _ in range(n)])


_BASE = {"so3": _so3, "sl2": _sl2, "heisenberg": _heisenberg, "aff1": _aff1}
_ABELIAN = re.compile(r"^abelian\((\d+)\)$")

CATALOG_EXAMPLES = ("so3", "sl2", "heisenberg", "aff1", "abelian(n)", "so3+so3", "sl2+aff1", "sl2+so3")


def catalog(name: str) -> LieAlgebra:
    """Built-in algebra by name; ``a+b`` builds direct sums left to right."""
    parts = [p.strip() for p in name.split("+")]
    algs = []
    for p in parts:
        m = _ABELIAN.match(p)
        if m:
            algs.append(abelian(int(m.group(1))))
        elif p in _BASE:
            algs.append(_BASE[p]())
        else:
            raise KeyError(f"unknown catalog algebra {p!r}")
    g = algs[0]
    for h in algs[1:]:
        g = direct_sum(g, h)
    if len(algs) > 1:
        g = LieAlgebra(name.replace(" ", ""), g.dim, g.c)
    return g
