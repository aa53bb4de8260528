from fractions import Fraction

import numpy as np
import pytest

from nahmalg.errors import ConvergenceError, PreconditionError
from nahmalg.liealg import catalog
from nahmalg.nahm import NahmAlgebra, delta, square
from nahmalg.special import (
    So3Triple,
    find_idempotent,
    fourth_powers,
    idempotent_from_so3,
    is_idempotent,
    is_nilpotent,
    power_assoc_witness,
)


def test_nilpotent_reports(A_so3, E):
    r = is_nilpotent(A_so3, delta(A_so3, [1, 2, 3]))
    assert r and r.components_commute and r.abelian_triple and not r.is_zero
    z = is_nilpotent(A_so3, A_so3.zero())
    assert z and z.is_zero
    assert not is_nilpotent(A_so3, E)


def test_idempotent(A_so3, E):
    assert is_idempotent(A_so3, E)
    assert not is_idempotent(A_so3, A_so3.zero())
    for a in (Fraction(2), Fraction(-1), Fraction(1, 2)):
        assert not is_idempotent(A_so3, E * a)


def test_idempotent_from_triples(so3, A_so3, E):
    e1, e2, e3 = (so3.basis(i) for i in range(3))
    assert idempotent_from_so3(A_so3, So3Triple(e1, e2, e3)) == E
    cyc = idempotent_from_so3(A_so3, So3Triple(e2, e3, e1))
    assert square(A_so3, cyc) == cyc
    with pytest.raises(PreconditionError):
        idempotent_from_so3(A_so3, So3Triple(*(tuple(2 * x for x in v) for v in (e1, e2, e3))))


def test_newton_from_perturbed_idempotent(A_so3, E):
    r = find_idempotent(A_so3, 1.1 * np.array([1, 0, 0, 0, 1, 0, 0, 0, 1.0]), tol=1e-10)
    assert r.residual <= 1e-10 and r.iterations <= 20
    assert r.exact == E


def test_newton_random_seed(A_so3):
    # seed 0 lands on an irrational point of the idempotent orbit
    r = find_idempotent(A_so3, np.random.default_rng(0).standard_normal(9))
    x = r.x
    assert np.max(np.abs(A_so3_square(A_so3, x) - x)) <= 1e-10
    assert r.approximate_only


def A_so3_square(A, x):
    from nahmalg.numeric import FloatNahm

    return FloatNahm(A).square(x)


def test_newton_abelian_fails():
    A = NahmAlgebra(catalog("abelian(2)"))
    with pytest.raises(ConvergenceError):
        find_idempotent(A, np.ones(6))


def test_newton_bad_tol(A_so3):
    with pytest.raises(ValueError):
        find_idempotent(A_so3, np.ones(9), tol=0)


def test_power_assoc_witness(A_so3):
    w = power_assoc_witness(A_so3)
    assert w.element == A_so3.element([1, 0, 0, 0, 1, 0, 0, 0, 0])
    assert w.left == A_so3.element([0, 0, 0, 0, 0, 0, 0, 0, Fraction(1, 2)])
    assert w.right.is_zero()
    assert fourth_powers(A_so3, w.element) == (w.left, w.right)
    assert power_assoc_witness(NahmAlgebra(catalog("abelian(2)"))) is None


@pytest.mark.parametrize("seed", range(4))
def test_newton_finds_nothing_in_sl2(seed):
    # sl2(R) has no so(3)-triple, so A(sl2) has no real idempotent
    A = NahmAlgebra(catalog("sl2"))
    x0 = np.random.default_rng(seed).standard_normal(A.dim)
    with pytest.raises(ConvergenceError):
        find_idempotent(A, x0)
