from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nahmalg.linalg import (
    BilinearForm,
    Definiteness,
    Matrix,
    Subspace,
    centralizer,
    commutator,
    definiteness,
    express,
    inertia,
    nullspace,
    rref,
    to_fraction,
)

small = st.integers(-4, 4)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows).map(Matrix)


def test_to_fraction_rejects_floats_and_bools():
    assert to_fraction(3) == Fraction(3)
    assert to_fraction("2/3") == Fraction(2, 3)
    with pytest.raises(TypeError):
        to_fraction(0.5)
    with pytest.raises(TypeError):
        to_fraction(True)


def test_basic_arithmetic():
    a = Matrix([[1, 2], [3, 4]])
    b = Matrix([[0, 1], [1, 0]])
    assert a @ b == Matrix([[2, 1], [4, 3]])
    assert (a + b) - b == a
    assert a * 2 == Matrix([[2, 4], [6, 8]])
    assert a @ (1, 1) == (3, 7)
    assert a.T == Matrix([[1, 3], [2, 4]])
    assert a.trace() == 5
    assert a.det() == -2
    assert a @ a.inverse() == Matrix.identity(2)


def test_singular_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        Matrix([[1, 2], [2, 4]]).inverse()


def test_rref_and_nullspace():
    m = Matrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    r = rref(m)
    assert r.row(0) == (1, 0, 1)
    assert r.row(1) == (0, 1, 1)
    ns = nullspace(m)
    assert ns.dim == 1
    assert m @ ns.basis[0] == (0, 0, 0)


@settings(max_examples=40, deadline=None)
@given(matrices(3, 4))
def test_rank_nullity(m):
    assert m.rank() + nullspace(m).dim == m.cols


@settings(max_examples=40, deadline=None)
@given(matrices(3, 3))
def test_det_multiplicative_and_inverse(m):
    s = Matrix([[1, 1, 0], [0, 1, 1], [1, 0, 2]])
    assert (m @ s).det() == m.det() * s.det()
    if m.det() != 0:
        assert m.inverse() @ m == Matrix.identity(3)
    else:
        assert m.rank() < 3


def test_subspace_canonical_equality():
    a = Subspace.span([(1, 1, 0), (0, 1, 1)], 3)
    b = Subspace.span([(1, 2, 1), (1, 0, -1)], 3)
    assert a == b
    assert (1, 0, -1) in a
    assert (1, 0, 0) not in a
    assert a.basis == ((1, 0, -1), (0, 1, 1))
    assert a.coordinates((1, 2, 1)) == (1, 2)


def test_subspace_sum_intersection_annihilator():
    x = Subspace.span([(1, 0, 0), (0, 1, 0)], 3)
    y = Subspace.span([(0, 1, 0), (0, 0, 1)], 3)
    assert (x + y).is_full()
    assert x.intersection(y) == Subspace.span([(0, 1, 0)], 3)
    assert x.annihilator() == Subspace.span([(0, 0, 1)], 3)
    assert Subspace.zero(3).is_zero() and Subspace.full(3).dim == 3


@settings(max_examples=30, deadline=None)
@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=3),
       st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=3))
def test_dimension_formula(us, vs):
    u, v = Subspace.span(us, 4), Subspace.span(vs, 4)
    assert (u + v).dim + u.intersection(v).dim == u.dim + v.dim


def test_centralizer_of_scalars_and_diagonal():
    assert centralizer([Matrix.identity(2)], 2).dim == 4
    assert centralizer([Matrix.diag([1, 2, 3])], 3).dim == 3


def test_commutator():
    a, b = Matrix([[0, 1], [0, 0]]), Matrix([[0, 0], [1, 0]])
    assert commutator(a, b) == Matrix([[1, 0], [0, -1]])


def test_forms_and_definiteness():
    assert definiteness(BilinearForm(Matrix.identity(3))) is Definiteness.POSITIVE_DEFINITE
    assert definiteness(BilinearForm(Matrix.identity(2) * -2)) is Definiteness.NEGATIVE_DEFINITE
    hyp = BilinearForm(Matrix([[0, 1], [1, 0]]))
    assert definiteness(hyp) is Definiteness.INDEFINITE_OR_SEMIDEFINITE
    assert hyp.signature() == (1, 1, 0)
    assert inertia(Matrix([[1, 0, 0], [0, 0, 0], [0, 0, -3]])) == (1, 1, 1)
    with pytest.raises(ValueError):
        BilinearForm(Matrix([[0, 1], [0, 0]]))


def test_express():
    assert express([(1, 0), (1, 1)], (3, 2)) == (1, 2)
    assert express([(1, 1)], (1, 0)) is None
