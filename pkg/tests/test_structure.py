import pytest

from nahmalg.errors import PreconditionError
from nahmalg.liealg import catalog, radical
from nahmalg.linalg import Subspace
from nahmalg.nahm import NahmAlgebra, triple_subspace
from nahmalg.structure import (
    TripleSubspace,
    ideal_closure_nahm,
    is_ideal_general,
    is_ideal_triple,
    is_semisimple_nahm,
    is_simple_nahm,
    is_subalgebra_triple,
    projections_of_ideal,
    radical_nahm,
    subalgebra_generated,
    verify_levi,
)

SETS = ["so3", "sl2", "heisenberg", "aff1", "so3+so3", "sl2+aff1"]


@pytest.mark.parametrize("name", SETS)
def test_structure_transfer(name):
    from nahmalg.liealg import is_semisimple, is_simple

    g = catalog(name)
    A = NahmAlgebra(g)
    assert is_simple_nahm(A) == is_simple(g)
    assert is_semisimple_nahm(A) == is_semisimple(g)
    r = radical(g)
    assert radical_nahm(A) == triple_subspace(r, r, r)


def test_so3_lines_subalgebra(so3, A_so3):
    lines = [Subspace.span([so3.basis(i)], 3) for i in range(3)]
    assert is_subalgebra_triple(A_so3, TripleSubspace(*lines))
    assert not is_subalgebra_triple(A_so3, TripleSubspace(lines[0], lines[0], lines[1]))


def test_triple_ideals(so3, A_so3):
    assert is_ideal_triple(A_so3, TripleSubspace.uniform(Subspace.full(3)))
    line = Subspace.span([so3.basis(0)], 3)
    assert not is_ideal_triple(A_so3, TripleSubspace.uniform(line))


def test_summand_is_ideal():
    g = catalog("so3+so3")
    A = NahmAlgebra(g)
    first = Subspace.span([g.basis(i) for i in range(3)], 6)
    S = triple_subspace(first, first, first)
    assert is_ideal_general(A, S)
    p = projections_of_ideal(A, S)
    assert p.inclusions_ok and p.intersection == first and p.intersection_is_ideal
    assert ideal_closure_nahm(A, [A.element(S.basis[0])]) == S


def test_projections_need_an_ideal(so3, A_so3):
    with pytest.raises(PreconditionError):
        projections_of_ideal(A_so3, Subspace.span([A_so3.basis(0).coords], 9))


def test_generated_subalgebra(A_so3):
    P = A_so3.element([1, 0, 0, 0, 1, 0, 0, 0, 0])
    gs = subalgebra_generated(A_so3, P)
    assert gs.closure.dim == 2 and gs.powers.dim == 2
    E = A_so3.element([1, 0, 0, 0, 1, 0, 0, 0, 1])
    assert subalgebra_generated(A_so3, E).closure.dim == 1


def test_levi():
    g = catalog("sl2+aff1")
    A = NahmAlgebra(g)
    rep = verify_levi(A, [g.basis(i) for i in range(3)])
    assert rep.passed and rep.levi_nahm.dim == 9 and rep.radical_nahm.dim == 6
    bad = verify_levi(A, [g.basis(3), g.basis(4)])
    assert not bad.passed and "not semisimple" in bad.failures()
