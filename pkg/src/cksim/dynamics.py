"""Hamiltonian flows, trajectory containers, and closed-form oracles.

Flows use exact jet gradients of the catalog Hamiltonians through the
selected backend.  The closed forms cover the four solvable scenarios: the
two flat canonical pairs, the fiber motion on the degenerate curved spaces
with its effective barrier constant, and the flat base motion in its own
time variable.  They are computed from initial data only, so they can serve
as independent oracles for the numerical trajectories.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import engine
from ._pyengine import TERM_LABELS, TERM_NONE, flow_callable, make_guard
from .coalgebra import BeltramiState, ModelParams
from .errors import BarrierSingularity, DomainError
from .geometry import PolarState
from .hamiltonians import (BaseFiberSplit, Coords, HamiltonianSpec,
                           hamiltonian)
from .kernels import Jet, deriv, exp
from .spaces import kappas

SING_GUARD = 1e-6


class Integrator(str, enum.Enum):
    RK4 = "rk4"
    MIDPOINT = "midpoint"


class SolutionKind(str, enum.Enum):
    FLAT_Q1 = "flat_q1"
    FLAT_Q2 = "flat_q2"
    NEWTON_FIBER = "newton_fiber"
    BASE_Q2 = "base_q2"


@dataclass(frozen=True)
class TerminationEvent:
    """Why and where a flow stopped early; step indexes the failed step."""

    kind: str
    step: int
    time: float


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: np.ndarray
    energy: np.ndarray
    casimir: np.ndarray
    coords: Coords
    termination: Optional[TerminationEvent] = None

    def __len__(self):
        return len(self.times)

    def state(self, i: int):
        row = self.states[i]
        if self.coords is Coords.BELTRAMI:
            return BeltramiState(*row)
        return PolarState(*row)

    @property
    def final_state(self):
        return self.state(len(self.times) - 1)


def _state_vector(coords: Coords, s) -> np.ndarray:
    if coords is Coords.BELTRAMI:
        return np.array([s.q1, s.q2, s.p1, s.p2], dtype=np.float64)
    return np.array([s.r, s.theta, s.pr, s.ptheta], dtype=np.float64)


def _wrap(states, energy, casimir, dt, coords, term_kind, term_step):
    times = np.arange(len(states), dtype=np.float64) * dt
    term = None
    if term_kind != TERM_NONE:
        term = TerminationEvent(kind=TERM_LABELS[term_kind], step=term_step,
                                time=times[-1] if len(times) else 0.0)
    return Trajectory(times=times, states=states, energy=energy,
                      casimir=casimir, coords=coords, termination=term)


def hamiltonian_flow(spec: HamiltonianSpec, s0, dt: float, steps: int,
                     integrator: Integrator = Integrator.RK4,
                     backend=None) -> Trajectory:
    """Integrate the configured system from s0, logging H and C per sample.

    The initial state is validated by direct evaluation, so domain problems
    at t=0 raise; problems reached later terminate the trajectory and are
    recorded on it instead.
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    if steps < 1:
        raise ValueError("steps must be at least 1")
    hamiltonian(spec)(s0)
    y0 = _state_vector(spec.coords, s0)
    m = spec.params
    k1, k2 = kappas(spec.sig)
    coords_code = 0 if spec.coords is Coords.BELTRAMI else 1
    family_code = {"free": 0, "sw": 1, "kc": 2}[spec.family.value]
    code = make_guard(coords_code, family_code, float(k1), float(k2), m.z,
                      m.b1, m.b2)(y0)
    if code == 1:
        raise BarrierSingularity("initial state inside the singularity guard")
    if code != TERM_NONE:
        raise DomainError("initial state outside the flow domain")
    states, energy, casimir, term_kind, term_step = engine.flow_for_spec(
        spec, y0, dt, steps, integrator, backend=backend)
    return _wrap(states, energy, casimir, dt, spec.coords, term_kind,
                 term_step)


def base_flow(split: BaseFiberSplit, s0, dtau: float, steps: int,
              integrator: Integrator = Integrator.RK4) -> Trajectory:
    """Integrate the base Hamiltonian of a degenerate-space system.

    The base motion runs in its own time variable tau and is independent of
    the fiber coordinates (their vector-field components vanish).  The
    casimir column logs the velocity-form base constant
    (dq2/dtau)**2 + b2/q2**2 for canonical splits; polar splits repeat the
    base energy, which is their only logged invariant.
    """
    if dtau <= 0.0:
        raise ValueError("dtau must be positive")
    spec = split.spec
    m = spec.params
    k1, k2 = kappas(spec.sig)
    coords_code = 0 if spec.coords is Coords.BELTRAMI else 1
    family_code = {"free": 0, "sw": 1, "kc": 2}[spec.family.value]

    def h(y):
        if spec.coords is Coords.BELTRAMI:
            return split.base(BeltramiState(*y))
        return split.base(PolarState(*y))

    if spec.coords is Coords.BELTRAMI:
        def c(y):
            lifted = BeltramiState(y[0], y[1], y[2], Jet(y[3], 1.0))
            v2 = deriv(split.base(lifted))
            out = v2 * v2
            if m.b2 != 0.0:
                out += m.b2 / (y[1] * y[1])
            return out
    else:
        c = h

    y0 = list(_state_vector(spec.coords, s0))
    h(y0)
    guard = make_guard(coords_code, family_code, float(k1), 0.0, m.z, m.b1,
                       m.b2)
    code = guard(y0)
    if code == 1:
        raise BarrierSingularity("initial state inside the singularity guard")
    if code != TERM_NONE:
        raise DomainError("initial state outside the flow domain")
    states, energy, casimir, term_kind, term_step = flow_callable(
        h, c, _state_vector(spec.coords, s0), dtau, steps,
        0 if integrator == Integrator.RK4 else 1, guard)
    return _wrap(states, energy, casimir, dtau, spec.coords, term_kind,
                 term_step)


@dataclass(frozen=True)
class ClosedFormSolution:
    """Quadratic-in-time law q**2(t) = b_eff/E + factor*E*(t - t0)**2.

    E is None for the degenerate fiber line with no barrier, where the
    coordinate simply stays at its initial value (stored in const).
    """

    kind: SolutionKind
    E: Optional[float]
    b_eff: float
    t0: float
    factor: float
    const: float

    def q_squared(self, t):
        if self.E is None or self.E == 0.0:
            return self.const + 0.0 * np.asarray(t)
        dt = np.asarray(t) - self.t0
        return self.b_eff / self.E + self.factor * self.E * dt * dt


def closed_form(kind: SolutionKind, m: ModelParams, sig,
                s0: BeltramiState) -> ClosedFormSolution:
    """Constants of motion and trajectory law from initial data only."""
    k1, k2 = kappas(sig)
    if kind in (SolutionKind.FLAT_Q1, SolutionKind.FLAT_Q2):
        if k1 != 0:
            raise ValueError("flat closed forms need kappa1 = 0")
    if kind in (SolutionKind.NEWTON_FIBER, SolutionKind.BASE_Q2):
        if k2 != 0:
            raise ValueError("fiber/base closed forms need kappa2 = 0")
    if kind is SolutionKind.BASE_Q2 and k1 != 0:
        raise ValueError("the quadratic base law holds for kappa1 = 0 only")

    def _check(q, b, label):
        if b != 0.0 and abs(q) < SING_GUARD:
            raise DomainError(f"initial {label} sits on the barrier")

    if kind is SolutionKind.FLAT_Q1 or kind is SolutionKind.NEWTON_FIBER:
        _check(s0.q1, m.b1, "q1")
        a = exp(k1 * m.z * s0.q2 ** 2) if kind is SolutionKind.NEWTON_FIBER else 1.0
        v = m.sign * s0.p1 * a
        b_eff = m.b1 * a * a
        e = v * v + (b_eff / s0.q1 ** 2 if m.b1 != 0.0 else 0.0)
        if b_eff > 0.0 and e <= 0.0:
            raise DomainError("no positive energy with a positive barrier")
        t0 = -s0.q1 * v / e if e > 0.0 else 0.0
        return ClosedFormSolution(kind, e, b_eff, t0, 1.0, s0.q1 ** 2)

    if kind is SolutionKind.FLAT_Q2:
        _check(s0.q2, m.b2, "q2")
        if k2 == 0:
            e = m.b2 / s0.q2 ** 2 if m.b2 > 0.0 else None
            return ClosedFormSolution(kind, e, m.b2, 0.0, 0.0, s0.q2 ** 2)
        e = s0.p2 ** 2 + (m.b2 / s0.q2 ** 2 if m.b2 != 0.0 else 0.0)
        if m.b2 > 0.0 and e <= 0.0:
            raise DomainError("no positive energy with a positive barrier")
        t0 = -m.sign * s0.q2 * s0.p2 / (k2 * e) if e > 0.0 else 0.0
        return ClosedFormSolution(kind, e, m.b2, t0, k2 * k2, s0.q2 ** 2)

    # BASE_Q2: the kappa1 = 0 base motion in its own time variable
    _check(s0.q2, m.b2, "q2")
    v = m.sign * s0.p2
    e = v * v + (m.b2 / s0.q2 ** 2 if m.b2 != 0.0 else 0.0)
    if m.b2 > 0.0 and e <= 0.0:
        raise DomainError("no positive energy with a positive barrier")
    t0 = -s0.q2 * v / e if e > 0.0 else 0.0
    return ClosedFormSolution(kind, e, m.b2, t0, 1.0, s0.q2 ** 2)


def conic_residual(traj: Trajectory, sol1: ClosedFormSolution,
                   sol2: ClosedFormSolution, sig) -> float:
    """Sup-norm of the conserved conic combination along a flat trajectory.

    E1*q2**2 - k2**2*E2*q1**2 - (b2*E1/E2 - k2**2*b1*E2/E1) vanishes for
    synchronized turning points; for k2 = 0 it degenerates to the fiber
    line q2**2 = b2/E2.
    """
    _, k2 = kappas(sig)
    if sol1.E is None or sol1.E == 0.0 or sol2.E is None or sol2.E == 0.0:
        raise DomainError("conic needs both energy constants defined and nonzero")
    q1 = traj.states[:, 0]
    q2 = traj.states[:, 1]
    k4 = float(k2) ** 2
    rhs = sol2.b_eff * sol1.E / sol2.E - k4 * sol1.b_eff * sol2.E / sol1.E
    res = sol1.E * q2 ** 2 - k4 * sol2.E * q1 ** 2 - rhs
    return float(np.max(np.abs(res)))
