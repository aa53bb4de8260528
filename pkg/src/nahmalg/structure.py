"""
Subalgebras, ideals, simplicity, semisimplicity, radical and Levi factors of A(g).

Arbitrary ideals of A(g) are plain subspaces of the 3n-dim space; a
:class:`TripleSubspace` is only the special product form m1 x m2 x m3, which
does not describe every subalgebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import PreconditionError, SimplicityMismatch, VerificationError
from .liealg import (
    bracket,
    is_ideal,
    is_semisimple,
    is_simple,
    is_subalgebra,
    quotient,
    radical,
    restrict,
)
from .linalg import Subspace, vec
from .nahm import NahmAlgebra, NahmElement, left_mult, product, standard_form, triple_subspace


@dataclass(frozen=True)
class TripleSubspace:
    m1: Subspace
    m2: Subspace
    m3: Subspace

    def __post_init__(self):
        if not self.m1.ambient_dim == self.m2.ambient_dim == self.m3.ambient_dim:
            raise ValueError("components must share the ambient dimension")

    @classmethod
    def uniform(cls, m: Subspace) -> "TripleSubspace":
        return cls(m, m, m)

    @property
    def parts(self) -> tuple[Subspace, Subspace, Subspace]:
        return self.m1, self.m2, self.m3

    def span(self) -> Subspace:
        return triple_subspace(self.m1, self.m2, self.m3)


def _left_mults(A: NahmAlgebra):
    return [left_mult(A, B) for B in A.basis_elements()]


def is_closed(A: NahmAlgebra, S: Subspace) -> bool:
    return all(
        S.contains(product(A, A.element(u), A.element(v)).coords)
        for k, u in enumerate(S.basis) for v in S.basis[k:]
    )


def is_subalgebra_triple(A: NahmAlgebra, M: TripleSubspace) -> bool:
    """[m_i, m_{i+1}] in m_{i+2} for i = 1, 2, 3 (indices mod 3)."""
    g = A.base
    parts = M.parts
    ok = all(
        parts[(i + 2) % 3].contains(bracket(g, a, b))
        for i in range(3)
        for a in parts[i].basis
        for b in parts[(i + 1) % 3].basis
    )
    if ok != is_closed(A, M.span()):
        raise VerificationError("triple criterion disagrees with direct closure test")
    return ok


def is_ideal_general(A: NahmAlgebra, S: Subspace) -> bool:
    Ls = _left_mults(A)
    return all(S.contains(L @ s) for L in Ls for s in S.basis)


def is_ideal_triple(A: NahmAlgebra, J: TripleSubspace) -> bool:
    """[g, h_i] in h_{i+1} and h_{i+2} for each i."""
    g = A.base
    parts = J.parts
    ok = True
    for i in range(3):
        target = parts[(i + 1) % 3].intersection(parts[(i + 2) % 3])
        if not all(target.contains(bracket(g, g.basis(k), h))
                   for k in range(g.dim) for h in parts[i].basis):
            ok = False
            break
    if ok != is_ideal_general(A, J.span()):
        raise VerificationError("triple ideal criterion disagrees with the direct test")
    return ok


def project(S: Subspace, slot: int, n: int) -> Subspace:
    return Subspace.span([b[slot * n:(slot + 1) * n] for b in S.basis], n)


class IdealProjections(NamedTuple):
    h1: Subspace
    h2: Subspace
    h3: Subspace
    inclusions_ok: bool
    intersection: Subspace
    intersection_is_ideal: bool


def projections_of_ideal(A: NahmAlgebra, S: Subspace) -> IdealProjections:
    if not is_ideal_general(A, S):
        raise PreconditionError("S is not an ideal of A(g)")
    g, n = A.base, A.n
    hs = [project(S, k, n) for k in range(3)]
    inclusions = all(
        hs[(i + 1) % 3].contains(w) and hs[(i + 2) % 3].contains(w)
        for i in range(3)
        for k in range(n)
        for h in hs[i].basis
        for w in [bracket(g, g.basis(k), h)]
    )
    inter = hs[0].intersection(hs[1]).intersection(hs[2])
    return IdealProjections(*hs, inclusions, inter, is_ideal(g, inter))


class GeneratedSubalgebra(NamedTuple):
    closure: Subspace  # smallest product-closed subspace containing P
    powers: Subspace   # span of principal powers P, P^2, P^2 P, (P^2 P) P, ...


def subalgebra_generated(A: NahmAlgebra, P: NahmElement) -> GeneratedSubalgebra:
    powers = Subspace.span([P.coords], A.dim)
    cur = P
    while True:
        # right multiplication by P is linear, so this is a Krylov sequence
        cur = product(A, cur, P)
        nxt = powers + Subspace.span([cur.coords], A.dim)
        if nxt == powers:
            break
        powers = nxt

    closure = Subspace.span([P.coords], A.dim)
    while True:
        basis = closure.basis
        new = [
            product(A, A.element(u), A.element(v)).coords
            for k, u in enumerate(basis) for v in basis[k:]
        ]
        nxt = closure + Subspace.span(new, A.dim)
        if nxt == closure:
            break
        closure = nxt
    if not closure.contains_subspace(powers):
        raise VerificationError("power span escapes the bilinear closure")
    return GeneratedSubalgebra(closure, powers)


def ideal_closure_nahm(A: NahmAlgebra, seed: Sequence[NahmElement]) -> Subspace:
    Ls = _left_mults(A)
    cur = Subspace.span([s.coords for s in seed], A.dim)
    while True:
        nxt = cur + Subspace.span([L @ b for L in Ls for b in cur.basis], A.dim)
        if nxt == cur:
            return cur
        cur = nxt


def is_simple_nahm(A: NahmAlgebra) -> bool:
    """Decided through the base algebra, then cross-checked inside A(g).

    The cross-check asks whether A^2 != 0 and the ideal generated by every
    basis element of A(g) is all of A(g).
    """
    by_base = is_simple(A.base)
    squares_vanish = all(
        product(A, X, Y).is_zero() for X in A.basis_elements() for Y in A.basis_elements()
    )
    by_closure = not squares_vanish and all(
        ideal_closure_nahm(A, [X]).is_full() for X in A.basis_elements()
    )
    if by_base != by_closure:
        raise SimplicityMismatch(
            f"A({A.base.name}): base test says simple={by_base}, ideal closure says {by_closure}"
        )
    return by_base


def is_semisimple_nahm(A: NahmAlgebra) -> bool:
    by_base = is_semisimple(A.base)
    by_form = standard_form(A).is_nondegenerate()
    if by_base != by_form:
        raise VerificationError("Killing-form and standard-form semisimplicity tests disagree")
    return by_base


def radical_nahm(A: NahmAlgebra) -> Subspace:
    """rad A(g) as (rad g)^3, checked to be an ideal with semisimple quotient."""
    r = radical(A.base)
    R = triple_subspace(r, r, r)
    if not is_ideal_general(A, R):
        raise VerificationError("A(rad g) is not an ideal of A(g)")
    q = quotient(A.base, r)
    if q.dim and not is_semisimple_nahm(NahmAlgebra(q)):
        raise VerificationError("A(g)/A(rad g) is not semisimple")
    return R


class LeviReport(NamedTuple):
    independent: bool
    subalgebra: bool
    semisimple: bool
    complement: bool
    levi_nahm: Subspace | None   # A(s) inside A(g)
    radical_nahm: Subspace | None

    @property
    def passed(self) -> bool:
        return self.independent and self.subalgebra and self.semisimple and self.complement

    def failures(self) -> list[str]:
        names = ("independent", "subalgebra", "semisimple", "complement")
        return [f"not {k}" if k != "independent" else "basis is linearly dependent"
                for k in names if not getattr(self, k)]


def verify_levi(A: NahmAlgebra, s_basis: Sequence[Sequence]) -> LeviReport:
    """Check that span(s_basis) is a Levi factor of g, giving A(g) = A(s) (+) rad A(g)."""
    g = A.base
    s_basis = [vec(b) for b in s_basis]
    s = Subspace.span(s_basis, g.dim)
    independent = s.dim == len(s_basis)
    sub = independent and is_subalgebra(g, s)
    semi = sub and (not s_basis or is_semisimple(restrict(g, s_basis)))
    r = radical(g)
    comp = s.dim + r.dim == g.dim and s.intersection(r).is_zero()
    if independent and sub and semi and comp:
        return LeviReport(True, True, True, True, triple_subspace(s, s, s), radical_nahm(A))
    return LeviReport(independent, sub, semi, comp, None, None)
