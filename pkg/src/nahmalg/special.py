"""
Nilpotents of index two, idempotents and power-associativity counterexamples.

Idempotents of A(g) correspond to ordered so(3)-triples in g:
E = (e1, e2, e3) with [e_i, e_{i+1}] = e_{i+2}.  :func:`find_idempotent`
searches for them numerically with damped Newton and then tries to recover
an exact rational idempotent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ConvergenceError, PreconditionError, VerificationError
from .liealg import bracket
from .linalg import Subspace, vec
from .nahm import NahmAlgebra, NahmElement, product, square, triple_subspace
from .numeric import FloatNahm, rationalize_vector, to_float
from .structure import is_closed


class NilpotentReport(NamedTuple):
    nilpotent: bool
    is_zero: bool
    components_commute: bool
    abelian_triple: bool  # K n1 x K n2 x K n3 is an abelian subalgebra

    def __bool__(self):
        return self.nilpotent


def is_nilpotent(A: NahmAlgebra, N: NahmElement) -> NilpotentReport:
    nil = square(A, N).is_zero()
    g = A.base
    comps = N.components
    commute = all(
        not any(bracket(g, comps[i], comps[j])) for i in range(3) for j in range(i + 1, 3)
    )
    spans = [Subspace.span([c], g.dim) for c in comps]
    T = triple_subspace(*spans)
    abelian = all(
        product(A, A.element(u), A.element(v)).is_zero() for u in T.basis for v in T.basis
    )
    if nil != commute or nil != abelian:
        raise VerificationError("nilpotency, commuting components and abelian triple disagree")
    return NilpotentReport(nil, N.is_zero(), commute, abelian)


def _independent(vs) -> bool:
    return Subspace.span(vs, len(vs[0])).dim == len(vs)


def is_idempotent(A: NahmAlgebra, E: NahmElement) -> bool:
    if E.is_zero() or square(A, E) != E:
        return False
    comps = E.components
    if any(not any(c) for c in comps) or not _independent(comps):
        raise VerificationError("idempotent with zero or dependent components")
    return True


@dataclass(frozen=True)
class So3Triple:
    e1: tuple
    e2: tuple
    e3: tuple

    def __post_init__(self):
        for k in ("e1", "e2", "e3"):
            object.__setattr__(self, k, vec(getattr(self, k)))

    def relations_hold(self, g) -> bool:
        e = (self.e1, self.e2, self.e3)
        return all(bracket(g, e[i], e[(i + 1) % 3]) == e[(i + 2) % 3] for i in range(3))


def idempotent_from_so3(A: NahmAlgebra, t: So3Triple) -> NahmElement:
    if not t.relations_hold(A.base):
        raise PreconditionError("triple does not satisfy [e_i, e_(i+1)] = e_(i+2)")
    if not _independent([t.e1, t.e2, t.e3]):
        raise PreconditionError("triple is linearly dependent")
    E = NahmElement(t.e1, t.e2, t.e3)
    if not is_idempotent(A, E):
        raise VerificationError("so(3)-triple did not give an idempotent")
    return E


@dataclass
class NewtonResult:
    x: np.ndarray
    iterations: int
    residual: float
    exact: NahmElement | None  # rational idempotent when exactification succeeds

    @property
    def approximate_only(self) -> bool:
        return self.exact is None


def find_idempotent(
    A: NahmAlgebra,
    X0,
    tol: float = 1e-10,
    max_iter: int = 50,
    max_den: int = 10**6,
) -> NewtonResult:
    """Damped Newton on F(X) = X^2 - X with Jacobian 2 L(X) - I.

    Steps come from least squares, so singular Jacobians (idempotents sit on
    orbits of the derivation algebra) are handled.  A step is halved up to
    30 times while it increases the residual.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    fa = FloatNahm(A)
    x = to_float(X0) if not isinstance(X0, np.ndarray) else np.array(X0, dtype=float)
    eye = np.eye(fa.dim)

    def resid(v):
        return fa.square(v) - v

    f = resid(x)
    r = np.max(np.abs(f))
    it = 0
    while r > tol:
        if it >= max_iter:
            raise ConvergenceError(f"no convergence in {max_iter} iterations (residual {r:.3e})")
        it += 1
        J = 2.0 * fa.left_mult(x) - eye
        step = np.linalg.lstsq(J, -f, rcond=None)[0]
        lam = 1.0
        for _ in range(30):
            trial = x + lam * step
            rt = np.max(np.abs(resid(trial)))
            if rt < r:
                break
            lam *= 0.5
        x = trial
        f = resid(x)
        r = np.max(np.abs(f))
        if not np.all(np.isfinite(x)) or np.max(np.abs(x)) > 1e12:
            raise ConvergenceError("Newton iteration diverged")
    if np.max(np.abs(x)) < 1e-6:
        raise ConvergenceError("converged to the zero solution, which is not an idempotent")
    exact = None
    q = rationalize_vector(x, max_den)
    if q is not None:
        E = A.element(q)
        if is_idempotent(A, E):
            exact = E
    return NewtonResult(x, it, float(r), exact)


class PowerWitness(NamedTuple):
    element: NahmElement
    left: NahmElement   # ((X^2) X) X
    right: NahmElement  # (X^2)(X^2)


def fourth_powers(A: NahmAlgebra, X: NahmElement) -> tuple[NahmElement, NahmElement]:
    X2 = square(A, X)
    return product(A, product(A, X2, X), X), product(A, X2, X2)


def _candidates(A: NahmAlgebra):
    B = A.basis_elements()
    yield from B
    for i in range(len(B)):
        for j in range(i + 1, len(B)):
            yield B[i] + B[j]
            yield B[i] - B[j]


def power_assoc_witness(A: NahmAlgebra) -> PowerWitness | None:
    """First X (basis elements, then b_i + b_j, b_i - b_j) with ((X^2)X)X != (X^2)(X^2)."""
    for X in _candidates(A):
        left, right = fourth_powers(A, X)
        if left != right:
            return PowerWitness(X, left, right)
    return None


def abelian_elements_nilpotent(A: NahmAlgebra, S: Subspace) -> bool:
    """Every element of the subalgebra S squares to zero, tested on the basis
    and on pairwise sums.  Holds whenever S is abelian."""
    if not is_closed(A, S):
        raise PreconditionError("S is not a subalgebra")
    els = [A.element(b) for b in S.basis]
    cands = els + [u + v for k, u in enumerate(els) for v in els[k + 1:]]
    return all(square(A, X).is_zero() for X in cands)
