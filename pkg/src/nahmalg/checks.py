"""
Named property checks run by ``nahmalg check-theorems``.

Every check returns a :class:`Check` carrying a short reference label for the
statement it exercises.  Checks whose preconditions fail for the given
algebra are reported as skipped rather than failed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import derivations as der
from .document import emit, parse
from .errors import NahmError, PreconditionError
from .flow import (
    FlowOptions,
    Status,
    exp_derivation_defect,
    integrate,
    monitor_confinement,
    monitor_decoupling,
    monitor_gradient,
    monitor_monotone,
    ray_error,
    transport_deviation,
)
from .liealg import (
    LieAlgebra,
    ad,
    adjoint_rep,
    catalog,
    defining_rep,
    direct_sum,
    is_lie_automorphism,
    is_semisimple,
    is_simple,
    killing,
    radical,
    trace_form,
    validate,
)
from .linalg import Matrix, Subspace, definiteness, unit_vec
from .nahm import (
    NahmAlgebra,
    c_orthogonal_of_delta,
    delta,
    delta_subspace,
    form_radical_nahm,
    grading_check,
    induced_gradings,
    is_compact,
    left_mult,
    lift_hom,
    product,
    square,
    standard_form,
    trace_form_by_definition,
    triple_subspace,
    w_rad,
)
from .numeric import to_float
from .special import (
    abelian_elements_nilpotent,
    find_idempotent,
    is_idempotent,
    is_nilpotent,
    power_assoc_witness,
)
from .structure import (
    TripleSubspace,
    is_ideal_triple,
    is_semisimple_nahm,
    is_simple_nahm,
    is_subalgebra_triple,
    projections_of_ideal,
    radical_nahm,
    subalgebra_generated,
    verify_levi,
)


class Skip(Exception):
    """Raised inside a check whose preconditions do not hold."""


@dataclass(frozen=True)
class Check:
    name: str
    ref: str
    status: str  # "pass" | "fail" | "skip"
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    def line(self) -> str:
        return f"{self.status.upper():4}  {self.name:28} [{self.ref}]  {self.detail}".rstrip()


_REGISTRY: list[tuple[str, str, Callable]] = []


def check(name: str, ref: str):
    def deco(fn):
        _REGISTRY.append((name, ref, fn))
        return fn
    return deco


class Context:
    """Shared, lazily computed data for one algebra."""

    def __init__(self, g: LieAlgebra):
        self.g = g
        self.A = NahmAlgebra(g)
        self._cache = {}

    def get(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def der_basis(self):
        return self.get("der", lambda: der.derivation_basis(self.A))

    @property
    def simple(self):
        return self.get("simple", lambda: is_simple(self.g))

    @property
    def semisimple(self):
        return self.get("semisimple", lambda: is_semisimple(self.g))

    @property
    def nondegenerate(self):
        return self.get("nondeg", lambda: standard_form(self.A).is_nondegenerate())

    @property
    def idempotent(self):
        """E = (b1, b2, b3) when that is an idempotent, else None."""
        def find():
            A = self.A
            if self.g.dim < 3:
                return None
            n = A.n
            E = A.element(unit_vec(n, 0) + unit_vec(n, 1) + unit_vec(n, 2))
            return E if is_idempotent(A, E) else None
        return self.get("idem", find)

    def require(self, cond: bool, why: str):
        if not cond:
            raise Skip(why)


def run_checks(g: LieAlgebra) -> list[Check]:
    ctx = Context(g)
    out = []
    for name, ref, fn in _REGISTRY:
        try:
            ok, detail = fn(ctx)
            out.append(Check(name, ref, "pass" if ok else "fail", detail))
        except Skip as s:
            out.append(Check(name, ref, "skip", str(s)))
        except NahmError as e:
            out.append(Check(name, ref, "fail", f"{type(e).__name__}: {e}"))
    return out


def check_names() -> list[str]:
    return [n for n, _, _ in _REGISTRY]


def _rng(ctx: Context, tag: int = 0):
    return np.random.default_rng(1000 * ctx.g.dim + tag)


def _rational_sample(rng, n: int) -> tuple:
    return tuple(Fraction(int(v), 4) for v in rng.integers(-8, 9, size=n))


# --- Lie algebra layer ---------------------------------------------------------------

@check("lie-validate", "Lie bracket axioms")
def _(ctx):
    r = validate(ctx.g)
    return r.ok, r.describe()


@check("killing-invariant", "killing")
def _(ctx):
    g, k = ctx.g, killing(ctx.g)
    ok = all(
        k(g.bracket(g.basis(i), g.basis(j)), g.basis(l)) == k(g.basis(i), g.bracket(g.basis(j), g.basis(l)))
        for i in range(g.dim) for j in range(g.dim) for l in range(g.dim)
    )
    return ok, f"signature {k.signature()}"


@check("cartan-criterion", "killing")
def _(ctx):
    nd = killing(ctx.g).is_nondegenerate()
    return nd == ctx.semisimple, f"semisimple={ctx.semisimple}, killing nondegenerate={nd}"


# --- Nahm product ------------------------------------------------------------------

@check("product-commutative", "nahm-product")
def _(ctx):
    B = ctx.A.basis_elements()
    return all(product(ctx.A, x, y) == product(ctx.A, y, x) for x in B for y in B), f"{len(B)}^2 pairs"


@check("left-mult-consistent", "L(X)")
def _(ctx):
    A = ctx.A
    B = A.basis_elements()
    ok = all(left_mult(A, x) @ y.coords == product(A, x, y).coords for x in B for y in B)
    return ok, "L(X) Y = X Y on basis pairs"


@check("square-is-nahm-rhs", "Nahm equations")
def _(ctx):
    A, rng = ctx.A, _rng(ctx, 1)
    xs = [A.element(_rational_sample(rng, A.dim)) for _ in range(5)]
    return all(square(A, X) == product(A, X, X) for X in xs), "X^2 = ([x2,x3],[x3,x1],[x1,x2])"


@check("functoriality", "A(phi) homomorphism")
def _(ctx):
    g = ctx.g
    h = direct_sum(g, g)
    inc = Matrix.from_columns([g.basis(i) + (0,) * g.dim for i in range(g.dim)], 2 * g.dim) \
        if g.dim else Matrix.zeros(0, 0)
    F = lift_hom(g, h, inc)
    A, H = ctx.A, NahmAlgebra(h)
    B = A.basis_elements()
    ok = all(
        F @ product(A, x, y).coords == product(H, H.element(F @ x.coords), H.element(F @ y.coords)).coords
        for x in B for y in B
    )
    return ok, "inclusion g -> g + g lifts"


@check("grading", "thm-A(g)=D(g)(+)W(g)")
def _(ctx):
    r = grading_check(ctx.A)
    return r.passed, "; ".join(r.failures) or "DD=0, DW<W, WW<D, P_D+P_W=I"


@check("induced-grading", "coro-grading")
def _(ctx):
    g = ctx.g
    ctx.require(g.dim >= 2, "dim g < 2")
    g0 = Subspace.span([g.basis(0)], g.dim)
    g1 = Subspace.span([g.basis(i) for i in range(1, g.dim)], g.dim)
    try:
        gs = induced_gradings(g, g0, g1)
    except PreconditionError:
        raise Skip("span(b1) + span(b2..bn) is not a Z2 grading of g") from None
    return True, f"{len(gs)} induced gradings"


# --- trace forms ---------------------------------------------------------------------

@check("trace-form-adjoint", "C-B")
def _(ctx):
    b = killing(ctx.g).gram
    direct = trace_form_by_definition(ctx.A, adjoint_rep(ctx.g))
    return direct.gram == Matrix.block_diag([b, b, b]) * Fraction(-1, 2), "C = -1/2 blockdiag(kappa)"


@check("trace-form-defining", "C-B")
def _(ctx):
    try:
        rep = defining_rep(ctx.g)
    except KeyError:
        raise Skip("no defining representation stored") from None
    b = trace_form(rep).gram
    direct = trace_form_by_definition(ctx.A, rep)
    return direct.gram == Matrix.block_diag([b, b, b]) * Fraction(-1, 2), f"space dim {rep.space_dim}"


@check("form-invariance", "thm-invariant-form")
def _(ctx):
    A, C = ctx.A, standard_form(ctx.A)
    B = A.basis_elements()
    ok = all(
        C(product(A, x, y).coords, z.coords) == C(x.coords, product(A, y, z).coords)
        for x in B for y in B for z in B
    )
    return ok, f"{len(B) ** 3} basis triples"


@check("form-radical", "thm-rad")
def _(ctx):
    rad = form_radical_nahm(ctx.A, adjoint_rep(ctx.g))
    return True, f"rad C = (rad kappa)^3, dim {rad.dim}"


@check("form-nondegenerate", "coro-nondeg-semi")
def _(ctx):
    return ctx.nondegenerate == ctx.semisimple, f"nondegenerate={ctx.nondegenerate}"


@check("compactness", "thm-semi-compact")
def _(ctx):
    ctx.require(ctx.semisimple, "g not semisimple")
    c = is_compact(ctx.A)
    return True, f"compact={c}, C {definiteness(standard_form(ctx.A)).value}"


@check("w-rad", "W_rad remark")
def _(ctx):
    return c_orthogonal_of_delta(ctx.A) == w_rad(ctx.A), "Delta^perp = W_rad"


# --- subalgebras, ideals, structure ---------------------------------------------------

@check("triple-subalgebra", "thm-subalg")
def _(ctx):
    g, A = ctx.g, ctx.A
    lines = [Subspace.span([g.basis(k % g.dim)], g.dim) for k in range(3)] if g.dim else []
    cands = [TripleSubspace.uniform(Subspace.full(g.dim)), TripleSubspace.uniform(radical(g))]
    if lines:
        cands.append(TripleSubspace(*lines))
    verdicts = [is_subalgebra_triple(A, M) for M in cands]
    return verdicts[0] and verdicts[1], f"verdicts {verdicts} agree with closure"


@check("triple-ideal", "thm-ideals")
def _(ctx):
    g, A = ctx.g, ctx.A
    r = radical(g)
    verdicts = [is_ideal_triple(A, TripleSubspace.uniform(s))
                for s in (Subspace.full(g.dim), r, Subspace.zero(g.dim))]
    return all(verdicts), "full, radical and zero triples are ideals"


@check("ideal-projections", "coro-intersect")
def _(ctx):
    R = radical_nahm(ctx.A)
    p = projections_of_ideal(ctx.A, R)
    return p.inclusions_ok and p.intersection_is_ideal, f"intersection dim {p.intersection.dim}"


@check("generated-subalgebra", "subalg(P)")
def _(ctx):
    A, n = ctx.A, ctx.A.n
    ctx.require(n >= 2, "dim g < 2")
    P = A.element(unit_vec(n, 0) + unit_vec(n, 1) + (0,) * n)
    gs = subalgebra_generated(A, P)
    return gs.closure.contains_subspace(gs.powers), f"closure {gs.closure.dim}, powers {gs.powers.dim}"


@check("simplicity-transfer", "thm-simple")
def _(ctx):
    s = is_simple_nahm(ctx.A)
    return s == ctx.simple, f"simple={s}"


@check("semisimplicity-transfer", "thm-semisimple")
def _(ctx):
    s = is_semisimple_nahm(ctx.A)
    return s == ctx.semisimple, f"semisimple={s}"


@check("radical-transfer", "thm-radical")
def _(ctx):
    r = radical(ctx.g)
    R = radical_nahm(ctx.A)
    return R == triple_subspace(r, r, r), f"dim rad A = {R.dim}"


@check("levi-decomposition", "coro-levi")
def _(ctx):
    g = ctx.g
    r = radical(g)
    s_basis = [g.basis(i) for i in r.complement_coordinates()]
    rep = verify_levi(ctx.A, s_basis)
    if not rep.passed:
        raise Skip("coordinate complement of the radical is not a Levi factor")
    return True, f"dim A(s) = {rep.levi_nahm.dim}, dim rad = {rep.radical_nahm.dim}"


# --- nilpotents and idempotents ------------------------------------------------------

@check("diagonal-nilpotent", "nilpotents N^2=0")
def _(ctx):
    A, rng = ctx.A, _rng(ctx, 2)
    reps = [is_nilpotent(A, delta(A, _rational_sample(rng, A.n))) for _ in range(10)]
    return all(reps), "Delta(x) for 10 sampled x"


@check("abelian-subalgebra-nilpotent", "nilpotents N^2=0")
def _(ctx):
    A = ctx.A
    ok = abelian_elements_nilpotent(A, delta_subspace(A))
    if ctx.g.dim:
        line = Subspace.span([ctx.g.basis(0)], ctx.g.dim)
        ok = ok and abelian_elements_nilpotent(A, triple_subspace(line, line, line))
    return ok, "Delta(g) and K b1 x K b1 x K b1"


@check("idempotent-so3-triple", "su(2)")
def _(ctx):
    E = ctx.idempotent
    ctx.require(E is not None, "(b1, b2, b3) is not an so(3)-triple")
    return True, f"E = {E}"


@check("idempotent-homogeneity", "idempotents E^2=E")
def _(ctx):
    E = ctx.idempotent
    ctx.require(E is not None, "no idempotent at hand")
    scales = (Fraction(2), Fraction(-1), Fraction(1, 2))
    return not any(is_idempotent(ctx.A, E * a) for a in scales), "aE for a in 2, -1, 1/2"


@check("newton-idempotent", "idempotents E^2=E")
def _(ctx):
    E = ctx.idempotent
    ctx.require(E is not None, "no idempotent at hand")
    r = find_idempotent(ctx.A, 1.1 * to_float(E), tol=1e-10, max_iter=20)
    return r.exact == E, f"{r.iterations} iterations, residual {r.residual:.1e}"


@check("power-assoc-failure", "fourth power-associativity")
def _(ctx):
    w = power_assoc_witness(ctx.A)
    ctx.require(w is not None, "no witness among basis pairs")
    return w.left != w.right, f"X = {w.element}"


# --- derivations ----------------------------------------------------------------------

@check("der-lie-algebra", "Der(A) Lie subalgebra")
def _(ctx):
    return True, f"dim Der = {len(ctx.der_basis)}"


@check("diag-ad-derivation", "thm-adD(g)-der")
def _(ctx):
    for i in range(ctx.g.dim):
        der.diag_ad(ctx.A, ctx.g.basis(i))
    return True, "diag(ad b_i) for all i"


@check("so3-derivation", "thm-so(3)-der")
def _(ctx):
    for M in der.SO3_BASIS:
        der.so3_action(ctx.A, M)
    return True, "E12, E13, E23"


@check("ad-so3-commute", "commute")
def _(ctx):
    A, g = ctx.A, ctx.g
    ok = all(
        der.act3(A, M) @ der.diag(ad(g, g.basis(i))) == der.diag(ad(g, g.basis(i))) @ der.act3(A, M)
        for M in der.SO3_BASIS for i in range(g.dim)
    )
    return ok, "[diag(ad x), M] = 0"


@check("der-split", "lemma-der-split")
def _(ctx):
    ok = all(der.split_check(ctx.A, T) for T in ctx.der_basis)
    return ok, f"{len(ctx.der_basis)} basis derivations"


@check("der-decomposition", "thm-simple-der")
def _(ctx):
    ctx.require(ctx.simple, "g not simple")
    r = der.decomposition_check(ctx.A)
    return r.passed, f"dim Der = {r.der_dim} = {ctx.g.dim} + 3"


@check("schur-centralizer", "lemma-schur")
def _(ctx):
    ctx.require(ctx.simple, "g not simple")
    d = der.schur_centralizer(ctx.A).dim
    return d == 1, f"dim = {d}"


@check("c-skew", "transpose")
def _(ctx):
    ctx.require(ctx.nondegenerate, "standard form degenerate")
    A, g = ctx.A, ctx.g
    ops = [der.diag(ad(g, g.basis(i))) for i in range(g.dim)] + [der.act3(A, M) for M in der.SO3_BASIS]
    return all(der.t_plus_tc_scalar(A, T) == 0 for T in ops), "T + T^c = 0"


@check("t-plus-tc-scalar", "lemma-T+Tc")
def _(ctx):
    ctx.require(ctx.simple, "g not simple")
    lams = [der.t_plus_tc_scalar(ctx.A, T) for T in ctx.der_basis]
    return all(l is not None for l in lams), f"lambda = {sorted(set(str(l) for l in lams))}"


def _so3_test_rotations():
    perm = Matrix([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    return [der.U_MATRIX, perm, Matrix([[1, 0, 0], [0, -1, 0], [0, 0, -1]])]


@check("so3-automorphisms", "coro-SO(3)-aut")
def _(ctx):
    return all(der.is_automorphism(ctx.A, der.act3(ctx.A, R)) for R in _so3_test_rotations()), "U, cyclic permutation, diag(1,-1,-1)"


def _exp_nilpotent(M: Matrix) -> Matrix | None:
    out, term = Matrix.identity(M.rows), Matrix.identity(M.rows)
    for k in range(1, M.rows + 1):
        term = term @ M * Fraction(1, k)
        out = out + term
    return out if (term @ M).is_zero() else None


def _lie_automorphisms(g: LieAlgebra) -> list[Matrix]:
    cands = []
    if g.dim == 3:
        cands.append(Matrix([[0, 0, 1], [1, 0, 0], [0, 1, 0]]))
    for i in range(g.dim):
        e = _exp_nilpotent(ad(g, g.basis(i)))
        if e is not None and e != Matrix.identity(g.dim):
            cands.append(e)
    return [m for m in cands if is_lie_automorphism(g, m)] or [Matrix.identity(g.dim)]


@check("diag-automorphisms", "prop-diagaut")
def _(ctx):
    phis = _lie_automorphisms(ctx.g)
    return all(der.is_automorphism(ctx.A, der.diag(p)) for p in phis), f"{len(phis)} automorphisms of g"


@check("grading-automorphism", "U-auto")
def _(ctx):
    r = der.grading_automorphism(ctx.A)
    return r.eigen_ranks == (2, 1), f"|exp(G) - U| = {r.exp_error:.1e}"


@check("automorphism-closure", "Aut(A) group")
def _(ctx):
    A = ctx.A
    Fs = [der.act3(A, R) for R in _so3_test_rotations()] + [der.diag(p) for p in _lie_automorphisms(ctx.g)]
    ok = all(der.is_automorphism(A, F @ H) for F in Fs for H in Fs)
    ok = ok and all(der.is_automorphism(A, F.inverse()) for F in Fs)
    return ok, f"{len(Fs)} generators, products and inverses"


@check("automorphism-factorization", "thm-simple-aut")
def _(ctx):
    ctx.require(ctx.simple, "g not simple")
    A = ctx.A
    phi = _lie_automorphisms(ctx.g)[0]
    U = der.U_MATRIX
    cases = [(Matrix.identity(A.n), U), (phi, Matrix.identity(3)), (phi, U)]
    ok = True
    for p, R in cases:
        f = der.aut_factorization(A, der.diag(p) @ der.act3(A, R))
        ok = ok and f.phi == p and f.R == R
    return ok, "blockwise U, diag(phi), diag(phi) U"


# --- dynamics -------------------------------------------------------------------------

@check("equilibrium", "nilpotent equilibria")
def _(ctx):
    A = ctx.A
    ctx.require(A.n >= 1, "dim g = 0")
    tr = integrate(A, delta(A, ctx.g.basis(0)), FlowOptions(t_end=10.0))
    return tr.status is Status.EQUILIBRIUM and tr.drift() <= 1e-9, f"drift {tr.drift():.1e}"


@check("blow-up", "ray blow-up at t=1/a")
def _(ctx):
    E = ctx.idempotent
    ctx.require(E is not None, "no idempotent at hand")
    tr = integrate(ctx.A, E, FlowOptions(t_end=2.0))
    ok = tr.status is Status.BLOW_UP and abs(tr.t_est - 1.0) <= 0.01
    return ok, f"t_est {tr.t_est:.8f}"


@check("ray-solution", "aE/(1-at)")
def _(ctx):
    E = ctx.idempotent
    ctx.require(E is not None, "no idempotent at hand")
    errs = [ray_error(ctx.A, E, a, FlowOptions(t_end=2.0)) for a in (1.0, -1.0, 2.5)]
    return max(errs) <= 1e-6, f"max relative error {max(errs):.1e}"


@check("confinement", "X(t;P) in <P>")
def _(ctx):
    A, n = ctx.A, ctx.A.n
    ctx.require(n >= 2, "dim g < 2")
    P = A.element(unit_vec(n, 0) + unit_vec(n, 1) + (0,) * n)
    tr = integrate(A, P, FlowOptions(t_end=0.5))
    r = monitor_confinement(A, tr, P)
    return r <= 1e-6, f"residual {r:.1e}"


@check("gradient", "gradient potential")
def _(ctx):
    ctx.require(ctx.nondegenerate, "standard form degenerate")
    rng = _rng(ctx, 3)
    res = max(monitor_gradient(ctx.A, rng.uniform(-1, 1, ctx.A.dim) / np.sqrt(ctx.A.dim)) for _ in range(10))
    return res <= 1e-8, f"residual {res:.1e}"


@check("monotone-potential", "thm-semi-compact")
def _(ctx):
    ctx.require(ctx.semisimple and is_compact(ctx.A), "A not compact")
    rng = _rng(ctx, 4)
    trajs = [integrate(ctx.A, 0.5 * rng.standard_normal(ctx.A.dim), FlowOptions(t_end=1.0)) for _ in range(3)]
    return all(monitor_monotone(ctx.A, t) for t in trajs), "3 random starts"


@check("automorphism-transport", "solution preserving")
def _(ctx):
    A = ctx.A
    rng = _rng(ctx, 5)
    P = 0.5 * rng.standard_normal(A.dim)
    d = transport_deviation(A, der.act3(A, der.U_MATRIX), P, FlowOptions(t_end=0.5))
    return d <= 1e-6, f"deviation {d:.1e}"


@check("decoupling", "X_j' = X_j^2")
def _(ctx):
    ctx.require(ctx.g.dim <= 6, "dim g > 6")
    rng = _rng(ctx, 6)
    so3 = catalog("so3")
    d = monitor_decoupling(ctx.g, so3, 0.5 * rng.standard_normal(3 * ctx.g.dim),
                           0.5 * rng.standard_normal(9), FlowOptions(t_end=0.5))
    return d <= 1e-6, f"g + so3, deviation {d:.1e}"


@check("derivation-flow", "exp(tD) symmetry")
def _(ctx):
    A, g = ctx.A, ctx.g
    D = der.act3(A, der.E12)
    if g.dim:
        D = D + der.diag(ad(g, g.basis(0)))
    d = exp_derivation_defect(A, D, (0.3, 1.0))
    return d <= 1e-12, f"defect {d:.1e}"


@check("document-round-trip", "algebra documents")
def _(ctx):
    g2 = parse(emit(ctx.g))
    return g2 == ctx.g and parse(emit(g2)) == g2, "parse(emit(g)) = g"
