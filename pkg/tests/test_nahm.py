from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nahmalg.errors import DimensionMismatch, InvalidAlgebra, PreconditionError
from nahmalg.liealg import adjoint_rep, catalog, defining_rep
from nahmalg.linalg import Matrix, Subspace
from nahmalg.nahm import (
    NahmAlgebra,
    NahmElement,
    c_orthogonal_of_delta,
    delta,
    delta_subspace,
    diag,
    grading_check,
    induced_gradings,
    is_compact,
    left_mult,
    lift_hom,
    product,
    proj_delta,
    proj_w,
    square,
    standard_form,
    trace_form_by_definition,
    trace_form_nahm,
    w_rad,
    w_subspace,
)

CATALOG = ["so3", "sl2", "heisenberg", "aff1", "abelian(2)", "sl2+aff1", "so3+so3"]

rat = st.fractions(min_value=-3, max_value=3, max_denominator=4)


def elements(n):
    return st.lists(rat, min_size=3 * n, max_size=3 * n)


def test_product_example(A_so3):
    X = A_so3.element([1, 0, 0, 0, 1, 0, 0, 0, 0])
    assert square(A_so3, X) == A_so3.element([0, 0, 0, 0, 0, 0, 0, 0, 1])
    assert product(A_so3, square(A_so3, X), X) == X * Fraction(1, 2)


def test_idempotent_square(A_so3, E):
    assert square(A_so3, E) == E


def test_dimension_mismatch(A_so3):
    with pytest.raises(DimensionMismatch):
        product(A_so3, A_so3.zero(), NahmElement((1,), (0,), (0,)))


@settings(max_examples=25, deadline=None)
@given(elements(3), elements(3))
def test_commutative_and_left_mult(xs, ys):
    A = NahmAlgebra(catalog("sl2"))
    X, Y = A.element(xs), A.element(ys)
    assert product(A, X, Y) == product(A, Y, X)
    assert left_mult(A, X) @ Y.coords == product(A, X, Y).coords
    assert square(A, X) == product(A, X, X)


@settings(max_examples=25, deadline=None)
@given(elements(3), elements(3), elements(3))
def test_standard_form_invariant(xs, ys, zs):
    A = NahmAlgebra(catalog("so3"))
    C = standard_form(A)
    X, Y, Z = A.element(xs), A.element(ys), A.element(zs)
    assert C(product(A, X, Y).coords, Z.coords) == C(X.coords, product(A, Y, Z).coords)


@pytest.mark.parametrize("name", CATALOG)
def test_grading(name):
    A = NahmAlgebra(catalog(name))
    assert grading_check(A).passed
    assert delta_subspace(A).dim + w_subspace(A).dim == A.dim


def test_projections(A_so3):
    X = A_so3.element([1, 2, 3, 0, 0, 3, 2, 1, 0])
    d = proj_delta(A_so3, X)
    assert d == delta(A_so3, [1, 1, 2])
    assert d + proj_w(A_so3, X) == X


def test_induced_gradings_so3(so3):
    g0 = Subspace.span([so3.basis(0)], 3)
    g1 = Subspace.span([so3.basis(1), so3.basis(2)], 3)
    assert len(induced_gradings(so3, g0, g1)) == 3
    with pytest.raises(PreconditionError):
        induced_gradings(so3, g1, g0)


@pytest.mark.parametrize("name", ["so3", "sl2"])
def test_trace_form_identity(name):
    g = catalog(name)
    A = NahmAlgebra(g)
    for rep in (adjoint_rep(g), defining_rep(g)):
        direct = trace_form_by_definition(A, rep)
        assert direct == trace_form_nahm(A, rep)


def test_standard_form_so3_identity(A_so3):
    assert standard_form(A_so3).gram == Matrix.identity(9)
    assert is_compact(A_so3)
    assert not is_compact(NahmAlgebra(catalog("sl2")))
    with pytest.raises(PreconditionError):
        is_compact(NahmAlgebra(catalog("heisenberg")))


@pytest.mark.parametrize("name", CATALOG)
def test_w_rad_is_delta_perp(name):
    A = NahmAlgebra(catalog(name))
    assert c_orthogonal_of_delta(A) == w_rad(A)


def test_signatures():
    sig = {n: standard_form(NahmAlgebra(catalog(n))).signature() for n in ("so3", "sl2", "heisenberg", "aff1")}
    assert sig == {"so3": (9, 0, 0), "sl2": (3, 6, 0), "heisenberg": (0, 0, 9), "aff1": (0, 3, 3)}


def test_lift_hom(so3):
    cyc = Matrix([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    assert lift_hom(so3, so3, cyc) == diag(cyc)
    with pytest.raises(InvalidAlgebra):
        lift_hom(so3, so3, Matrix.identity(3) * 2)
