from fractions import Fraction

import pytest

from nahmalg.errors import InvalidAlgebra
from nahmalg.liealg import (
    LieAlgebra,
    abelian,
    ad,
    adjoint_rep,
    catalog,
    defining_rep,
    derived_series,
    is_ideal,
    is_lie_automorphism,
    is_semisimple,
    is_simple,
    is_solvable,
    killing,
    quotient,
    radical,
    trace_form,
    validate,
)
from nahmalg.linalg import Matrix, Subspace

NAMES = ["so3", "sl2", "heisenberg", "aff1", "abelian(2)", "so3+so3", "sl2+aff1", "sl2+so3"]


@pytest.mark.parametrize("name", NAMES)
def test_catalog_validates(name):
    assert validate(catalog(name)).ok


def test_unknown_catalog_name():
    with pytest.raises(KeyError):
        catalog("g2")


def test_so3_brackets(so3):
    e1, e2, e3 = (so3.basis(i) for i in range(3))
    assert so3.bracket(e1, e2) == e3
    assert so3.bracket(e2, e3) == e1
    assert so3.bracket(e3, e1) == e2


def test_jacobi_failure_reports_quadruple():
    with pytest.raises(InvalidAlgebra, match=r"\(1, 2, 3, 3\)"):
        LieAlgebra.from_brackets("bad", 3, {(0, 1): (1, 0, 0), (0, 2): (0, 0, 1)})
    g = LieAlgebra.from_brackets("bad", 3, {(0, 1): (1, 0, 0), (0, 2): (0, 0, 1)}, check=False)
    r = validate(g)
    assert not r.jacobi_ok and r.antisymmetry_ok
    assert r.jacobi_failures[0] == ((0, 1, 2, 2), 1)


def test_killing_forms(so3):
    assert killing(so3).gram == Matrix.identity(3) * -2
    k = killing(catalog("sl2"))
    assert k.gram[0, 0] == 8 and k.gram[1, 2] == 4 and k.gram[1, 1] == 0
    assert killing(catalog("heisenberg")).is_zero()


def test_defining_reps_valid():
    for name in ("so3", "sl2"):
        rep = defining_rep(catalog(name))
        assert rep.is_valid()
    assert trace_form(defining_rep(catalog("sl2"))).gram[0, 0] == 2
    with pytest.raises(KeyError):
        defining_rep(catalog("heisenberg"))


@pytest.mark.parametrize("name,dim", [
    ("so3", 0), ("sl2", 0), ("heisenberg", 3), ("aff1", 2), ("sl2+aff1", 2), ("so3+so3", 0), ("abelian(2)", 2),
])
def test_radical_dims(name, dim):
    g = catalog(name)
    r = radical(g)
    assert r.dim == dim
    assert is_ideal(g, r)
    assert derived_series(g, r).is_solvable


@pytest.mark.parametrize("name,simple,semisimple,solvable", [
    ("so3", True, True, False),
    ("sl2", True, True, False),
    ("heisenberg", False, False, True),
    ("aff1", False, False, True),
    ("so3+so3", False, True, False),
    ("sl2+aff1", False, False, False),
    ("abelian(1)", False, False, True),
])
def test_structure_flags(name, simple, semisimple, solvable):
    g = catalog(name)
    assert is_simple(g) is simple
    assert is_semisimple(g) is semisimple
    assert is_solvable(g) is solvable


def test_quotient_by_radical_is_semisimple():
    g = catalog("sl2+aff1")
    q = quotient(g, radical(g))
    assert q.dim == 3 and is_semisimple(q)


def test_ad_is_representation(so3):
    assert adjoint_rep(so3).is_valid()
    x = (Fraction(1), Fraction(2), Fraction(3))
    assert ad(so3, x) @ x == (0, 0, 0)


def test_lie_automorphisms(so3):
    cyc = Matrix([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    assert is_lie_automorphism(so3, cyc)
    assert not is_lie_automorphism(so3, Matrix.identity(3) * 2)


def test_abelian():
    g = abelian(3)
    assert g.dim == 3 and all(not any(g.bracket(g.basis(i), g.basis(j))) for i in range(3) for j in range(3))
    assert Subspace.full(3) == radical(g)
