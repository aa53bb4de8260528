"""
The Nahm algebra A(g) = g x g x g.

Coordinates of an element are always the concatenation ``(x1 | x2 | x3)``;
every matrix in the package (left multiplications, forms, derivations,
automorphisms) uses that order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import DimensionMismatch, InvalidAlgebra, PreconditionError, VerificationError
from .liealg import (
    LieAlgebra,
    Representation,
    ad,
    adjoint_rep,
    bracket,
    is_homomorphism,
    is_semisimple,
    is_subalgebra,
    killing,
    trace_form,
)
from .linalg import (
    ZERO,
    BilinearForm,
    Definiteness,
    Matrix,
    Subspace,
    Vector,
    definiteness,
    is_zero_vec,
    nullspace,
    unit_vec,
    vadd,
    vec,
    vscale,
    vsub,
    zero_vec,
)

HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)


@dataclass(frozen=True)
class NahmElement:
    x1: Vector
    x2: Vector
    x3: Vector

    def __post_init__(self):
        for name in ("x1", "x2", "x3"):
            object.__setattr__(self, name, vec(getattr(self, name)))
        if not len(self.x1) == len(self.x2) == len(self.x3):
            raise DimensionMismatch("components must have equal length")

    @classmethod
    def from_coords(cls, coords: Sequence, n: int) -> "NahmElement":
        if len(coords) != 3 * n:
            raise DimensionMismatch(f"expected {3 * n} coordinates, got {len(coords)}")
        return cls(coords[:n], coords[n:2 * n], coords[2 * n:])

    @property
    def coords(self) -> Vector:
        return self.x1 + self.x2 + self.x3

    @property
    def components(self) -> tuple[Vector, Vector, Vector]:
        return self.x1, self.x2, self.x3

    @property
    def n(self) -> int:
        return len(self.x1)

    def __add__(self, other: "NahmElement") -> "NahmElement":
        return NahmElement(vadd(self.x1, other.x1), vadd(self.x2, other.x2), vadd(self.x3, other.x3))

    def __sub__(self, other: "NahmElement") -> "NahmElement":
        return NahmElement(vsub(self.x1, other.x1), vsub(self.x2, other.x2), vsub(self.x3, other.x3))

    def __mul__(self, s) -> "NahmElement":
        return NahmElement(vscale(s, self.x1), vscale(s, self.x2), vscale(s, self.x3))

    __rmul__ = __mul__

    def __neg__(self) -> "NahmElement":
        return self * -1

    def is_zero(self) -> bool:
        return is_zero_vec(self.coords)

    def __str__(self):
        def fmt(v):
            return "(" + ", ".join(str(x) for x in v) + ")"
        return f"[{fmt(self.x1)}; {fmt(self.x2)}; {fmt(self.x3)}]"


class NahmAlgebra:
    """A(g) for a Lie algebra g; ``dim`` is 3 * g.dim."""

    __slots__ = ("base",)

    def __init__(self, base: LieAlgebra):
        self.base = base

    def __repr__(self):
        return f"NahmAlgebra({self.base.name!r})"

    def __eq__(self, other):
        return isinstance(other, NahmAlgebra) and self.base == other.base

    def __hash__(self):
        return hash(self.base)

    @property
    def n(self) -> int:
        return self.base.dim

    @property
    def dim(self) -> int:
        return 3 * self.base.dim

    def element(self, coords: Sequence) -> NahmElement:
        return NahmElement.from_coords(vec(coords), self.n)

    def zero(self) -> NahmElement:
        return self.element(zero_vec(self.dim))

    def basis(self, i: int) -> NahmElement:
        return self.element(unit_vec(self.dim, i))

    def basis_elements(self) -> list[NahmElement]:
        return [self.basis(i) for i in range(self.dim)]

    def mul(self, x: NahmElement, y: NahmElement) -> NahmElement:
        return product(self, x, y)

    def square(self, x: NahmElement) -> NahmElement:
        return product(self, x, x)


def _check(A: NahmAlgebra, *xs: NahmElement):
    for x in xs:
        if x.n != A.n:
            raise DimensionMismatch(f"element over a {x.n}-dim base used in A({A.base.name})")


def product(A: NahmAlgebra, X: NahmElement, Y: NahmElement) -> NahmElement:
    _check(A, X, Y)
    g = A.base
    x1, x2, x3 = X.components
    y1, y2, y3 = Y.components
    return NahmElement(
        vscale(HALF, vadd(bracket(g, x2, y3), bracket(g, y2, x3))),
        vscale(HALF, vadd(bracket(g, x3, y1), bracket(g, y3, x1))),
        vscale(HALF, vadd(bracket(g, x1, y2), bracket(g, y1, x2))),
    )


def square(A: NahmAlgebra, X: NahmElement) -> NahmElement:
    """X^2 = ([x2, x3], [x3, x1], [x1, x2])."""
    _check(A, X)
    g = A.base
    x1, x2, x3 = X.components
    return NahmElement(bracket(g, x2, x3), bracket(g, x3, x1), bracket(g, x1, x2))


def _cross_blocks(m1: Matrix, m2: Matrix, m3: Matrix) -> Matrix:
    z = Matrix.zeros(m1.rows, m1.cols)
    return Matrix.blocks([
        [z, -m3, m2],
        [m3, z, -m1],
        [-m2, m1, z],
    ]) * HALF


def left_mult(A: NahmAlgebra, X: NahmElement) -> Matrix:
    """Matrix of Y -> XY, built from half-blocks of +-ad x_i."""
    _check(A, X)
    g = A.base
    return _cross_blocks(ad(g, X.x1), ad(g, X.x2), ad(g, X.x3))


def l_rho(A: NahmAlgebra, rep: Representation, X: NahmElement) -> Matrix:
    """Same block pattern as :func:`left_mult` with rho in place of ad."""
    _check(A, X)
    if rep.parent != A.base:
        raise DimensionMismatch("representation is over a different algebra")
    return _cross_blocks(rep.of(X.x1), rep.of(X.x2), rep.of(X.x3))


def lift_hom(g: LieAlgebra, h: LieAlgebra, phi: Matrix) -> Matrix:
    """A(phi) = diag(phi, phi, phi) for a verified homomorphism phi: g -> h."""
    if not is_homomorphism(g, h, phi):
        raise InvalidAlgebra("phi is not a Lie algebra homomorphism")
    return Matrix.block_diag([phi, phi, phi])


def diag(L: Matrix) -> Matrix:
    return Matrix.block_diag([L, L, L])


# --- natural Z2 grading --------------------------------------------------------

def delta(A: NahmAlgebra, x: Sequence) -> NahmElement:
    x = vec(x)
    return NahmElement(x, x, x)


def proj_delta(A: NahmAlgebra, X: NahmElement) -> NahmElement:
    return delta(A, vscale(THIRD, vadd(vadd(X.x1, X.x2), X.x3)))


def proj_w(A: NahmAlgebra, X: NahmElement) -> NahmElement:
    return X - proj_delta(A, X)


def delta_subspace(A: NahmAlgebra) -> Subspace:
    return Subspace.span([delta(A, A.base.basis(i)).coords for i in range(A.n)], A.dim)


def w_subspace(A: NahmAlgebra) -> Subspace:
    n = A.n
    vs = []
    for i in range(n):
        b = A.base.basis(i)
        z = A.base.zero()
        vs.append(b + vscale(-1, b) + z)
        vs.append(z + b + vscale(-1, b))
    return Subspace.span(vs, A.dim)


def triple_subspace(m1: Subspace, m2: Subspace, m3: Subspace) -> Subspace:
    n = m1.ambient_dim
    if not m1.ambient_dim == m2.ambient_dim == m3.ambient_dim:
        raise DimensionMismatch("triple components live in different ambient spaces")
    z = zero_vec(n)
    vs = [b + z + z for b in m1.basis] + [z + b + z for b in m2.basis] + [z + z + b for b in m3.basis]
    return Subspace.span(vs, 3 * n)


class CheckReport(NamedTuple):
    passed: bool
    failures: tuple  # human-readable witnesses

    def __bool__(self):
        return self.passed


def _products_in(A: NahmAlgebra, us, vs, target: Subspace, label: str, failures: list):
    for u in us:
        for v in vs:
            p = product(A, A.element(u), A.element(v)).coords
            if not target.contains(p):
                failures.append(f"{label}: {A.element(u)} * {A.element(v)} = {A.element(p)}")
                return


def grading_check(A: NahmAlgebra) -> CheckReport:
    """Delta*Delta = 0, Delta*W in W, W*W in Delta, A = Delta (+) W, on spanning sets."""
    D, W = delta_subspace(A), w_subspace(A)
    zero = Subspace.zero(A.dim)
    failures: list[str] = []
    _products_in(A, D.basis, D.basis, zero, "Delta*Delta != 0", failures)
    _products_in(A, D.basis, W.basis, W, "Delta*W not in W", failures)
    _products_in(A, W.basis, W.basis, D, "W*W not in Delta", failures)
    if D.dim + W.dim != A.dim or not D.intersection(W).is_zero():
        failures.append("A is not the direct sum of Delta and W")
    for i in range(A.dim):
        X = A.basis(i)
        pd, pw = proj_delta(A, X), proj_w(A, X)
        if pd + pw != X or proj_delta(A, pd) != pd or not D.contains(pd.coords) \
                or not W.contains(pw.coords):
            failures.append(f"projector identities fail on basis element {i}")
            break
    return CheckReport(not failures, tuple(failures))


class InducedGrading(NamedTuple):
    even: Subspace
    odd: Subspace
    pattern: str  # e.g. "011/100"


def induced_gradings(g: LieAlgebra, g0: Subspace, g1: Subspace) -> tuple[InducedGrading, ...]:
    """The three Z2-gradings of A(g) induced by g = g0 (+) g1."""
    n = g.dim
    if g0.dim + g1.dim != n or not g0.intersection(g1).is_zero():
        raise PreconditionError("g0 and g1 are not complementary")
    if not is_subalgebra(g, g0):
        raise PreconditionError("g0 is not a subalgebra")
    for a in g0.basis:
        for b in g1.basis:
            if not g1.contains(bracket(g, a, b)):
                raise PreconditionError("[g0, g1] is not contained in g1")
    for a in g1.basis:
        for b in g1.basis:
            if not g0.contains(bracket(g, a, b)):
                raise PreconditionError("[g1, g1] is not contained in g0")
    A = NahmAlgebra(g)
    out = []
    for slot in range(3):
        parts_even = [g0 if k == slot else g1 for k in range(3)]
        parts_odd = [g1 if k == slot else g0 for k in range(3)]
        even, odd = triple_subspace(*parts_even), triple_subspace(*parts_odd)
        pattern = "".join("0" if k == slot else "1" for k in range(3))
        pattern += "/" + "".join("1" if k == slot else "0" for k in range(3))
        fails: list[str] = []
        if even.dim + odd.dim != A.dim or not even.intersection(odd).is_zero():
            fails.append("not a direct sum")
        _products_in(A, even.basis, even.basis, even, "even*even", fails)
        _products_in(A, even.basis, odd.basis, odd, "even*odd", fails)
        _products_in(A, odd.basis, odd.basis, even, "odd*odd", fails)
        if fails:
            raise VerificationError(f"induced grading {pattern} fails: {fails}")
        out.append(InducedGrading(even, odd, pattern))
    return tuple(out)


# --- trace forms -------------------------------------------------------------

def trace_form_by_definition(A: NahmAlgebra, rep: Representation) -> BilinearForm:
    Ls = [l_rho(A, rep, X) for X in A.basis_elements()]
    N = A.dim
    gram = [[ZERO] * N for _ in range(N)]
    for i in range(N):
        for j in range(i, N):
            gram[i][j] = gram[j][i] = (Ls[i] @ Ls[j]).trace()
    return BilinearForm(Matrix(gram, N))


def trace_form_nahm(A: NahmAlgebra, rep: Representation) -> BilinearForm:
    """Induced trace form, computed both from traces of L_rho products and as
    -1/2 * blockdiag(B_rho, B_rho, B_rho); the two must agree exactly."""
    b = trace_form(rep).gram
    shortcut = BilinearForm(Matrix.block_diag([b, b, b]) * (-HALF))
    direct = trace_form_by_definition(A, rep)
    if direct != shortcut:
        raise VerificationError("trace definition and block formula disagree")
    return shortcut


def standard_form(A: NahmAlgebra) -> BilinearForm:
    return trace_form_nahm(A, adjoint_rep(A.base))


def form_radical_nahm(A: NahmAlgebra, rep: Representation) -> Subspace:
    rad = trace_form_nahm(A, rep).radical()
    rb = trace_form(rep).radical()
    if rad != triple_subspace(rb, rb, rb):
        raise VerificationError("radical of the induced form is not (rad B)^3")
    return rad


def is_compact(A: NahmAlgebra) -> bool:
    if not is_semisimple(A.base):
        raise PreconditionError(f"A({A.base.name}) is not semisimple")
    compact = definiteness(standard_form(A)) is Definiteness.POSITIVE_DEFINITE
    if compact != (definiteness(killing(A.base)) is Definiteness.NEGATIVE_DEFINITE):
        raise VerificationError("standard form and Killing form disagree on compactness")
    return compact


def c_orthogonal_of_delta(A: NahmAlgebra) -> Subspace:
    gram = standard_form(A).gram
    rows = [gram @ b for b in delta_subspace(A).basis]
    return nullspace(Matrix(rows, A.dim)) if rows else Subspace.full(A.dim)


def w_rad(A: NahmAlgebra) -> Subspace:
    """{Y : y1 + y2 + y3 in rad(kappa)}."""
    ann = killing(A.base).radical().annihilator()
    # functional f on g pulled back along Y -> y1 + y2 + y3
    rows = [f + f + f for f in ann.basis]
    return nullspace(Matrix(rows, A.dim)) if rows else Subspace.full(A.dim)
