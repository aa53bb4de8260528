"""
Numerical integration of the Nahm equations X' = X^2 and dynamical monitors.

The integrator is scipy's Dormand-Prince 5(4) pair (``RK45``) with its quartic
dense output.  Blow-up is a terminal event on ``||X||_inf = blow_up_norm``;
the blow-up time is then estimated from the last five accepted steps by
fitting the line 1/||X|| = c (t* - t), which is exact for ray solutions.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .errors import PreconditionError, StepUnderflow
from .liealg import LieAlgebra, direct_sum
from .linalg import Matrix, Subspace
from .nahm import NahmAlgebra, NahmElement, is_compact, square, standard_form
from .numeric import FloatNahm, expm, matrix_to_float, to_float
from .structure import subalgebra_generated

MONITORS = ("norm", "square_norm", "phi", "confinement")


class Status(str, Enum):
    COMPLETED = "completed"
    BLOW_UP = "blow_up"
    EQUILIBRIUM = "equilibrium"


@dataclass(frozen=True)
class FlowOptions:
    t_end: float
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_step: float = math.inf
    blow_up_norm: float = 1e9
    monitors: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if not (self.t_end > 0 and self.rel_tol > 0 and self.abs_tol > 0
                and self.max_step > 0 and self.blow_up_norm > 0):
            raise ValueError("t_end, tolerances, max_step and blow_up_norm must be positive")
        object.__setattr__(self, "monitors", frozenset(self.monitors))
        unknown = self.monitors - set(MONITORS)
        if unknown:
            raise ValueError(f"unknown monitors: {sorted(unknown)}")


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: np.ndarray          # shape (len(times), 3n)
    status: Status
    t_est: float | None         # blow-up time estimate
    diagnostics: dict           # monitor name -> array over samples
    dense: Callable[[float], np.ndarray] = field(repr=False, compare=False)
    n: int = 0

    def __call__(self, t: float) -> np.ndarray:
        return self.dense(t)

    @property
    def t_final(self) -> float:
        return float(self.times[-1])

    def drift(self) -> float:
        return float(np.max(np.abs(self.states - self.states[0])))

    def write_csv(self, path_or_file) -> None:
        n = self.n
        header = ["t"] + [f"x{s}_{i}" for s in (1, 2, 3) for i in range(1, n + 1)]
        chans = sorted(self.diagnostics)
        header += chans

        def emit(f):
            w = csv.writer(f, lineterminator="\n")
            w.writerow(header)
            for k, t in enumerate(self.times):
                row = [t, *self.states[k]] + [self.diagnostics[c][k] for c in chans]
                w.writerow(["%.17g" % v for v in row])

        if hasattr(path_or_file, "write"):
            emit(path_or_file)
        else:
            with open(path_or_file, "w", newline="") as f:
                emit(f)


def _estimate_blow_up(times: np.ndarray, states: np.ndarray) -> float:
    t = times[-5:]
    inv = 1.0 / np.max(np.abs(states[-5:]), axis=1)
    slope, icpt = np.polyfit(t, inv, 1)
    return float(-icpt / slope)


def integrate(A: NahmAlgebra, P, opts: FlowOptions, fa: FloatNahm | None = None) -> Trajectory:
    fa = fa or FloatNahm(A)
    x0 = to_float(P) if not isinstance(P, np.ndarray) else np.asarray(P, dtype=float)
    if x0.shape != (fa.dim,):
        raise ValueError(f"initial state must have {fa.dim} coordinates")

    def blow(t, x):
        return np.max(np.abs(x)) - opts.blow_up_norm

    blow.terminal = True
    blow.direction = 1

    sol = solve_ivp(
        lambda t, x: fa.square(x), (0.0, opts.t_end), x0, method="RK45",
        rtol=opts.rel_tol, atol=opts.abs_tol, max_step=opts.max_step,
        events=blow, dense_output=True,
    )
    if sol.status == -1:
        last = sol.y[:, -1] if sol.y.size else x0
        t_last = float(sol.t[-1]) if sol.t.size else 0.0
        raise StepUnderflow(sol.message, t=t_last, state=last)
    times, states = sol.t, sol.y.T
    t_est = None
    if np.max(np.abs(fa.square(x0))) < opts.abs_tol:
        status = Status.EQUILIBRIUM
    elif sol.status == 1:
        status = Status.BLOW_UP
        t_est = _estimate_blow_up(times, states)
    else:
        status = Status.COMPLETED
    diag = {}
    if opts.monitors:
        diag = _channels(A, fa, x0, states, opts.monitors)
    return Trajectory(times, states, status, t_est, diag, sol.sol, fa.n)


def _channels(A, fa, x0, states, names) -> dict:
    out = {}
    if "norm" in names:
        out["norm"] = np.max(np.abs(states), axis=1)
    if "square_norm" in names:
        out["square_norm"] = np.array([np.max(np.abs(fa.square(x))) for x in states])
    if "phi" in names:
        G = matrix_to_float(standard_form(A).gram)
        out["phi"] = np.array([potential(fa, G, x) for x in states])
    if "confinement" in names:
        Q = _orthonormal(closure_of(A, x0))
        out["confinement"] = np.array([_distance(Q, x) for x in states])
    return out


# --- confinement --------------------------------------------------------------

def closure_of(A: NahmAlgebra, x0: np.ndarray) -> Subspace:
    """Exact bilinear closure of P, with P read exactly from its binary64 value."""
    P = A.element([Fraction(float(v)) for v in x0])
    return subalgebra_generated(A, P).closure


def _orthonormal(S: Subspace) -> np.ndarray:
    if S.dim == 0:
        return np.zeros((S.ambient_dim, 0))
    M = np.array([[float(v) for v in b] for b in S.basis]).T
    q, _ = np.linalg.qr(M)
    return q


def _distance(Q: np.ndarray, x: np.ndarray) -> float:
    return float(np.max(np.abs(x - Q @ (Q.T @ x))))


def monitor_confinement(A: NahmAlgebra, traj: Trajectory, P, norm_cap: float | None = None) -> float:
    """Max distance from X(t) to the subalgebra generated by P."""
    x0 = to_float(P) if not isinstance(P, np.ndarray) else np.asarray(P, dtype=float)
    Q = _orthonormal(closure_of(A, x0))
    states = traj.states
    if norm_cap is not None:
        states = states[np.max(np.abs(states), axis=1) <= norm_cap]
    return max((_distance(Q, x) for x in states), default=0.0)


# --- gradient structure ----------------------------------------------------------

def potential(fa: FloatNahm, G: np.ndarray, x: np.ndarray) -> float:
    """phi(X) = C(X, X^2) / 3."""
    return float(x @ G @ fa.square(x)) / 3.0


def monitor_gradient(A: NahmAlgebra, X, h: float = 1e-5) -> float:
    """||grad_C phi(X) - X^2||_inf with grad_C = G^-1 (coordinate gradient)."""
    gram = standard_form(A)
    if not gram.is_nondegenerate():
        raise PreconditionError(f"standard form of A({A.base.name}) is degenerate")
    fa = FloatNahm(A)
    G = matrix_to_float(gram.gram)
    x = to_float(X) if not isinstance(X, np.ndarray) else np.asarray(X, dtype=float)
    grad = np.empty_like(x)
    for k in range(x.size):
        e = np.zeros_like(x)
        e[k] = h
        grad[k] = (potential(fa, G, x + e) - potential(fa, G, x - e)) / (2 * h)
    return float(np.max(np.abs(np.linalg.solve(G, grad) - fa.square(x)))) if x.size else 0.0


def monitor_monotone(A: NahmAlgebra, traj: Trajectory, abs_tol: float = 1e-12) -> bool:
    """phi is nondecreasing along the samples (compact A only).

    The allowance 10 * abs_tol is scaled by max(1, |phi|) since phi grows
    cubically toward a blow-up.
    """
    if not is_compact(A):
        raise PreconditionError(f"A({A.base.name}) is not compact")
    fa = FloatNahm(A)
    G = matrix_to_float(standard_form(A).gram)
    phi = np.array([potential(fa, G, x) for x in traj.states])
    slack = 10 * abs_tol * np.maximum(1.0, np.abs(phi[:-1]))
    return bool(np.all(np.diff(phi) >= -slack))


# --- decoupling --------------------------------------------------------------------

def _interleave(x1: np.ndarray, x2: np.ndarray, n1: int, n2: int) -> np.ndarray:
    """(slots of A(g1), slots of A(g2)) -> coordinates of A(g1 + g2)."""
    return np.concatenate([np.concatenate([x1[s * n1:(s + 1) * n1], x2[s * n2:(s + 1) * n2]])
                           for s in range(3)])


def monitor_decoupling(g1: LieAlgebra, g2: LieAlgebra, P1, P2, opts: FlowOptions) -> float:
    A1, A2 = NahmAlgebra(g1), NahmAlgebra(g2)
    A = NahmAlgebra(direct_sum(g1, g2))
    p1, p2 = to_float(P1), to_float(P2)
    full = integrate(A, _interleave(p1, p2, g1.dim, g2.dim), opts)
    t1 = integrate(A1, p1, opts)
    t2 = integrate(A2, p2, opts)
    horizon = min(full.t_final, t1.t_final, t2.t_final)
    dev = 0.0
    for t in full.times[full.times <= horizon]:
        ref = _interleave(t1(t), t2(t), g1.dim, g2.dim)
        dev = max(dev, float(np.max(np.abs(full(t) - ref))))
    return dev


# --- symmetry checks -------------------------------------------------------------

def transport_deviation(A: NahmAlgebra, F: Matrix | np.ndarray, P, opts: FlowOptions) -> float:
    """max_t ||X(t; F P) - F X(t; P)||_inf for an automorphism F."""
    Ff = matrix_to_float(F) if isinstance(F, Matrix) else np.asarray(F, dtype=float)
    x0 = to_float(P) if not isinstance(P, np.ndarray) else np.asarray(P, dtype=float)
    base = integrate(A, x0, opts)
    moved = integrate(A, Ff @ x0, opts)
    horizon = min(base.t_final, moved.t_final)
    return max(float(np.max(np.abs(moved(t) - Ff @ base(t))))
               for t in base.times[base.times <= horizon])


def ray_error(A: NahmAlgebra, E: NahmElement, a: float, opts: FlowOptions,
              norm_cap: float = 1e3) -> float:
    """Max relative error against aE/(1 - at) while ||X|| <= norm_cap."""
    e = to_float(E)
    traj = integrate(A, a * e, opts)
    err = 0.0
    for t, x in zip(traj.times, traj.states):
        if np.max(np.abs(x)) > norm_cap:
            break
        exact = a * e / (1.0 - a * t)
        err = max(err, float(np.max(np.abs(x - exact)) / np.max(np.abs(exact))))
    return err


def derivation_flow_error(A: NahmAlgebra, D: Matrix, P: NahmElement, opts: FlowOptions) -> float:
    """For DP = P^2 the solution is exp(tD) P; returns the max deviation."""
    if D @ P.coords != square(A, P).coords:
        raise PreconditionError("D P != P^2")
    Df = matrix_to_float(D)
    traj = integrate(A, to_float(P), opts)
    p = to_float(P)
    return max(float(np.max(np.abs(x - expm(t * Df) @ p))) for t, x in zip(traj.times, traj.states))


def exp_derivation_defect(A: NahmAlgebra, D: Matrix, s_values: Sequence[float]) -> float:
    """Max multiplicativity defect of exp(sD) on basis pairs."""
    fa = FloatNahm(A)
    Df = matrix_to_float(D)
    eye = np.eye(fa.dim)
    worst = 0.0
    for s in s_values:
        F = expm(s * Df)
        for i in range(fa.dim):
            for j in range(i, fa.dim):
                lhs = F @ fa.product(eye[i], eye[j])
                rhs = fa.product(F[:, i], F[:, j])
                worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst
