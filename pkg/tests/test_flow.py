import io

import numpy as np
import pytest

from nahmalg import derivations as der
from nahmalg.errors import PreconditionError
from nahmalg.liealg import catalog
from nahmalg.nahm import NahmAlgebra, delta
from nahmalg.numeric import expm, to_float
from nahmalg.flow import (
    FlowOptions,
    Status,
    derivation_flow_error,
    exp_derivation_defect,
    integrate,
    monitor_confinement,
    monitor_decoupling,
    monitor_gradient,
    monitor_monotone,
    ray_error,
    transport_deviation,
)


def test_options_validation():
    with pytest.raises(ValueError):
        FlowOptions(t_end=-1)
    with pytest.raises(ValueError):
        FlowOptions(t_end=1, monitors={"bogus"})


def test_equilibrium(A_so3):
    tr = integrate(A_so3, delta(A_so3, (1, 0, 0)), FlowOptions(t_end=10))
    assert tr.status is Status.EQUILIBRIUM
    assert tr.drift() <= 1e-9


def test_blow_up(A_so3, E):
    tr = integrate(A_so3, E, FlowOptions(t_end=2))
    assert tr.status is Status.BLOW_UP
    assert 0.99 <= tr.t_est <= 1.01


def test_decay(A_so3, E):
    tr = integrate(A_so3, E * -1, FlowOptions(t_end=9))
    assert tr.status is Status.COMPLETED
    assert np.max(np.abs(tr(9.0) + to_float(E) / 10)) <= 1e-6


def test_times_increasing(A_so3):
    tr = integrate(A_so3, np.random.default_rng(1).standard_normal(9) * 0.3, FlowOptions(t_end=1))
    assert np.all(np.diff(tr.times) > 0)
    assert len(tr.times) == len(tr.states)


@pytest.mark.parametrize("coords,t_end,cap", [
    ([1, 2, 3, 1, 2, 3, 1, 2, 3], 1.0, None),
    ([1, 0, 0, 0, 1, 0, 0, 0, 1], 2.0, 1e3),
    ([1, 0, 0, 0, 1, 0, 0, 0, 0], 0.5, None),
])
def test_confinement(A_so3, coords, t_end, cap):
    P = A_so3.element(coords)
    tr = integrate(A_so3, P, FlowOptions(t_end=t_end))
    assert monitor_confinement(A_so3, tr, P, norm_cap=cap) <= 1e-6


def test_gradient(A_so3, E):
    rng = np.random.default_rng(7)
    for _ in range(10):
        x = rng.uniform(-1, 1, 9) / 3
        assert monitor_gradient(A_so3, x) <= 1e-8
    assert monitor_gradient(A_so3, np.zeros(9)) == 0.0
    assert monitor_gradient(A_so3, E) <= 1e-8


def test_gradient_sl2(A_sl2):
    rng = np.random.default_rng(8)
    assert monitor_gradient(A_sl2, rng.uniform(-1, 1, 9) / 3) <= 1e-8
    with pytest.raises(PreconditionError):
        monitor_gradient(NahmAlgebra(catalog("heisenberg")), np.zeros(9))


def test_monotone(A_so3, E):
    assert monitor_monotone(A_so3, integrate(A_so3, E, FlowOptions(t_end=2)))
    rng = np.random.default_rng(3)
    assert monitor_monotone(A_so3, integrate(A_so3, rng.standard_normal(9), FlowOptions(t_end=1)))
    with pytest.raises(PreconditionError):
        monitor_monotone(A_sl2_alg(), None)


def A_sl2_alg():
    return NahmAlgebra(catalog("sl2"))


def test_decoupling(so3, A_so3, E):
    assert monitor_decoupling(so3, so3, E, delta(A_so3, (1, 2, 3)), FlowOptions(t_end=0.5)) <= 1e-6
    assert monitor_decoupling(so3, so3, E, A_so3.zero(), FlowOptions(t_end=0.5)) <= 1e-6
    rng = np.random.default_rng(4)
    assert monitor_decoupling(so3, catalog("sl2"), rng.standard_normal(9) * 0.5,
                              rng.standard_normal(9) * 0.5, FlowOptions(t_end=0.3)) <= 1e-6


def test_transport(A_so3):
    F = der.act3(A_so3, der.U_MATRIX)
    P = np.random.default_rng(5).standard_normal(9) * 0.5
    assert transport_deviation(A_so3, F, P, FlowOptions(t_end=1)) <= 1e-6


@pytest.mark.parametrize("a", [1.0, -1.0, 0.5, 3.0])
def test_ray(A_so3, E, a):
    assert ray_error(A_so3, E, a, FlowOptions(t_end=2.5)) <= 1e-6


def test_derivation_flow(A_so3, A_sl2):
    D = der.so3_action(A_so3, der.E12) + der.diag_ad(A_so3, (0, 1, 0))
    assert exp_derivation_defect(A_so3, D, (0.5, 2.0)) <= 1e-12
    for T in der.derivation_basis(A_sl2):
        assert exp_derivation_defect(A_sl2, T, (0.5,)) <= 1e-10
    # D = 0 with a nilpotent P is the degenerate case of D P = P^2
    P = delta(A_so3, (1, 1, 0))
    assert derivation_flow_error(A_so3, D * 0, P, FlowOptions(t_end=1)) == 0.0
    with pytest.raises(PreconditionError):
        derivation_flow_error(A_so3, D, A_so3.element([1, 0, 0, 0, 1, 0, 0, 0, 1]), FlowOptions(t_end=1))


def test_expm():
    a = np.array([[0.0, 1.0], [-1.0, 0.0]]) * 3
    expected = np.array([[np.cos(3), np.sin(3)], [-np.sin(3), np.cos(3)]])
    assert np.max(np.abs(expm(a) - expected)) <= 1e-13


def test_csv(A_so3):
    tr = integrate(A_so3, A_so3.element([1, 0, 0, 0, 1, 0, 0, 0, 0]),
                   FlowOptions(t_end=0.1, monitors={"phi", "norm"}))
    buf = io.StringIO()
    tr.write_csv(buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "t,x1_1,x1_2,x1_3,x2_1,x2_2,x2_3,x3_1,x3_2,x3_3,norm,phi"
    assert len(lines) == len(tr.times) + 1
    row = [float(v) for v in lines[-1].split(",")]
    assert row[0] == tr.times[-1] and row[1] == tr.states[-1][0]
