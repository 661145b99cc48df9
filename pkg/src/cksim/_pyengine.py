"""Pure-Python compute backend.

Two jobs, mirroring the compiled core so either can stand in for the other:

* ``bracket_stats``: batched bracket/Casimir residuals over arrays of states.
  The defining identities cancel terms that grow like exp of the deformation,
  so the arithmetic runs in numpy longdouble (80-bit on x86) with a local
  value/derivative pair type; plain double would leave rounding floors above
  the verification tolerances at the grid corners.
* ``flow`` / ``flow_callable``: a readable fixed-step integrator (RK4 and
  implicit midpoint) over exact jet gradients, in ordinary doubles.

Termination codes are shared with the compiled core: 0 none, 1 singularity,
2 non-finite, 3 domain.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import BarrierSingularity, DomainError
from .kernels import Jet, deriv, expm1c, gcos, gsin

name = "pure"

TERM_NONE = 0
TERM_SINGULARITY = 1
TERM_NONFINITE = 2
TERM_DOMAIN = 3

TERM_LABELS = {TERM_SINGULARITY: "singularity",
               TERM_NONFINITE: "nonfinite",
               TERM_DOMAIN: "domain"}

SING_GUARD = 1e-6
MIDPOINT_TOL = 1e-12
MIDPOINT_MAX_ITER = 50

_LD = np.longdouble
_SWITCH = 1e-4
_C6 = _LD(1) / _LD(6)
_C120 = _LD(1) / _LD(120)
_C3 = _LD(1) / _LD(3)
_C30 = _LD(1) / _LD(30)


class _D:
    """Forward-mode value/derivative pair over longdouble arrays."""

    __slots__ = ("v", "d")

    def __init__(self, v, d):
        self.v = v
        self.d = d

    def __add__(self, o):
        if isinstance(o, _D):
            return _D(self.v + o.v, self.d + o.d)
        return _D(self.v + o, self.d)

    __radd__ = __add__

    def __sub__(self, o):
        if isinstance(o, _D):
            return _D(self.v - o.v, self.d - o.d)
        return _D(self.v - o, self.d)

    def __rsub__(self, o):
        return _D(o - self.v, -self.d)

    def __mul__(self, o):
        if isinstance(o, _D):
            return _D(self.v * o.v, self.d * o.v + self.v * o.d)
        return _D(self.v * o, self.d * o)

    __rmul__ = __mul__

    def __truediv__(self, o):
        if isinstance(o, _D):
            q = self.v / o.v
            return _D(q, (self.d - q * o.d) / o.v)
        return _D(self.v / o, self.d / o)

    def __rtruediv__(self, o):
        q = o / self.v
        return _D(q, -q * self.d / self.v)

    def __neg__(self):
        return _D(-self.v, -self.d)


def _exp(x: _D) -> _D:
    e = np.exp(x.v)
    return _D(e, e * x.d)


def _sinhc_vals(u):
    small = np.abs(u) < _SWITCH
    safe = np.where(small, np.ones_like(u), u)
    u2 = u * u
    return np.where(small, 1.0 + u2 * (_C6 + u2 * _C120), np.sinh(safe) / safe)


def _sinhc(x: _D) -> _D:
    v = x.v
    small = np.abs(v) < _SWITCH
    safe = np.where(small, np.ones_like(v), v)
    u2 = v * v
    val = np.where(small, 1.0 + u2 * (_C6 + u2 * _C120), np.sinh(safe) / safe)
    slope = np.where(small, v * (_C3 + u2 * _C30),
                     np.cosh(safe) / safe - np.sinh(safe) / (safe * safe))
    return _D(val, slope * x.d)


def _eval_all(q1, q2, p1, p2, z, b1, b2, k1, k2):
    """Generators, both Casimir routes, all as value/derivative pairs.

    Same term structure and the same conditional barrier terms as the
    scalar reference implementation in coalgebra.py.
    """
    u1 = (k1 * k2 * z) * (q1 * q1)
    u2 = (k1 * z) * (q2 * q2)
    a = _sinhc(u1)
    b = _sinhc(u2)
    e_up = _exp(u2)
    e_dn = _exp(-u1)
    jm = q2 * q2 + k2 * (q1 * q1)
    j3 = a * q1 * p1 * e_up + b * q2 * p2 * e_dn
    t1 = a * (p1 * p1)
    if b1 != 0.0:
        t1 = t1 + b1 / (q1 * q1 * a)
    t2 = b * (p2 * p2)
    if b2 != 0.0:
        t2 = t2 + b2 / (q2 * q2 * b)
    jp = t1 * e_up + k2 * (t2 * e_dn)

    e_cross = _exp(u2 - u1)
    w = k2 * (q1 * p2) - q2 * p1
    c = a * b * (w * w) * e_cross
    if b1 != 0.0 or b2 != 0.0:
        c = c + k2 * (b1 * _exp(2.0 * u2) + b2 * _exp(-2.0 * u1))
    if b1 != 0.0:
        c = c + b1 * ((q2 * q2) / (q1 * q1)) * (b / a) * e_cross
    if b2 != 0.0:
        c = c + (k2 * k2) * b2 * ((q1 * q1) / (q2 * q2)) * (a / b) * e_cross

    ccoal = (jm * _sinhc((k1 * z) * jm)) * jp - k2 * (j3 * j3)
    return jm, j3, jp, c, ccoal


def bracket_stats(states, z, b1, b2, k1, k2):
    """Residuals of the bracket relations on a batch of states.

    states: (n, 4) array of (q1, q2, p1, p2).  Returns (n, 7) float64 with
    columns: the three generator-bracket residuals, the three
    Casimir-commutator residuals {C, J-}, {C, J3}, {C, J+} (C taken along
    its expanded two-particle route), and the difference of the two Casimir
    evaluation routes.
    """
    arr = np.ascontiguousarray(states, dtype=np.float64)
    n = arr.shape[0]
    q1 = arr[:, 0].astype(_LD)
    q2 = arr[:, 1].astype(_LD)
    p1 = arr[:, 2].astype(_LD)
    p2 = arr[:, 3].astype(_LD)
    zL, b1L, b2L = _LD(z), _LD(b1), _LD(b2)
    k1L, k2L = _LD(k1), _LD(k2)
    zeros = np.zeros(n, dtype=_LD)
    ones = np.ones(n, dtype=_LD)

    passes = []
    for i in range(4):
        seeds = [zeros, zeros, zeros, zeros]
        seeds[i] = ones
        passes.append(_eval_all(_D(q1, seeds[0]), _D(q2, seeds[1]),
                                _D(p1, seeds[2]), _D(p2, seeds[3]),
                                zL, b1L, b2L, k1L, k2L))

    def pb(fi, hi):
        # canonical bracket {f, h} from the four directional passes
        return (passes[0][fi].d * passes[2][hi].d
                - passes[2][fi].d * passes[0][hi].d
                + passes[1][fi].d * passes[3][hi].d
                - passes[3][fi].d * passes[1][hi].d)

    vjm = passes[0][0].v
    vj3 = passes[0][1].v
    vjp = passes[0][2].v
    vc = passes[0][3].v
    vcc = passes[0][4].v

    r1 = pb(0, 2) - 4.0 * k2L * vj3
    r2 = pb(1, 2) - 2.0 * vjp * np.cosh(k1L * zL * vjm)
    r3 = pb(1, 0) + 2.0 * vjm * _sinhc_vals(k1L * zL * vjm)
    out = np.stack([r1, r2, r3, pb(3, 0), pb(3, 1), pb(3, 2), vcc - vc],
                   axis=1)
    return out.astype(np.float64)


# ---------------------------------------------------------------------------
# Flows


def make_guard(coords, family, k1, k2, z, b1, b2):
    """Step guard shared by flows: returns a termination code for a state."""
    if coords == 0:
        def guard(y):
            if b1 != 0.0 and abs(y[0]) < SING_GUARD:
                return TERM_SINGULARITY
            if b2 != 0.0 and abs(y[1]) < SING_GUARD:
                return TERM_SINGULARITY
            if family == 2:
                jm = y[1] * y[1] + k2 * y[0] * y[0]
                if jm * expm1c(2.0 * k1 * z * jm) <= 0.0:
                    return TERM_DOMAIN
            return TERM_NONE
    else:
        def guard(y):
            if abs(gsin(k1, y[0])) < SING_GUARD:
                return TERM_SINGULARITY
            if k1 > 0 and gcos(k1, y[0]) < SING_GUARD:
                return TERM_DOMAIN
            if b1 != 0.0 and abs(gsin(k2, y[1])) < SING_GUARD:
                return TERM_SINGULARITY
            if b2 != 0.0 and abs(gcos(k2, y[1])) < SING_GUARD:
                return TERM_SINGULARITY
            return TERM_NONE
    return guard


def _grad4(h, y):
    g = [0.0, 0.0, 0.0, 0.0]
    for i in range(4):
        lifted = list(y)
        lifted[i] = Jet(y[i], 1.0)
        g[i] = deriv(h(lifted))
    return g


def _field(h, y):
    g = _grad4(h, y)
    return [g[2], g[3], -g[0], -g[1]]


def _rk4_step(h, y, dt):
    a = _field(h, y)
    b = _field(h, [y[i] + 0.5 * dt * a[i] for i in range(4)])
    c = _field(h, [y[i] + 0.5 * dt * b[i] for i in range(4)])
    d = _field(h, [y[i] + dt * c[i] for i in range(4)])
    return [y[i] + dt * (a[i] + 2.0 * b[i] + 2.0 * c[i] + d[i]) / 6.0
            for i in range(4)]


def _midpoint_step(h, y, dt):
    f0 = _field(h, y)
    yn = [y[i] + dt * f0[i] for i in range(4)]
    for _ in range(MIDPOINT_MAX_ITER):
        mid = [0.5 * (y[i] + yn[i]) for i in range(4)]
        fm = _field(h, mid)
        cand = [y[i] + dt * fm[i] for i in range(4)]
        delta = max(abs(cand[i] - yn[i]) for i in range(4))
        yn = cand
        if delta < MIDPOINT_TOL:
            break
    return yn


def flow_callable(h, c, y0, dt, steps, integrator=0, guard=None):
    """Integrate the Hamiltonian callable h; log h and optionally c.

    Returns (states, energies, extras, term_kind, term_step).  On early
    termination the arrays keep every good sample; term_step is the index
    of the step that failed (equal to the number of completed steps).
    """
    step = _rk4_step if integrator == 0 else _midpoint_step
    y = [float(v) for v in y0]
    states = [tuple(y)]
    energies = [float(h(y))]
    extras = None if c is None else [float(c(y))]
    term_kind = TERM_NONE
    term_step = -1
    for i in range(steps):
        try:
            yn = step(h, y, dt)
            if not all(math.isfinite(v) for v in yn):
                code = TERM_NONFINITE
            else:
                code = guard(yn) if guard is not None else TERM_NONE
            if code == TERM_NONE:
                hv = float(h(yn))
                cv = None if c is None else float(c(yn))
        except BarrierSingularity:
            code = TERM_SINGULARITY
        except DomainError:
            code = TERM_DOMAIN
        except (OverflowError, ZeroDivisionError, ValueError, FloatingPointError):
            code = TERM_NONFINITE
        if code != TERM_NONE:
            term_kind = code
            term_step = i
            break
        y = yn
        states.append(tuple(y))
        energies.append(hv)
        if extras is not None:
            extras.append(cv)
    out_states = np.array(states, dtype=np.float64)
    out_h = np.array(energies, dtype=np.float64)
    out_c = None if extras is None else np.array(extras, dtype=np.float64)
    return out_states, out_h, out_c, term_kind, term_step


def flow(coords, family, variant, k1, k2, z, b1, b2, beta0, kck, gamma, sign,
         y0, dt, steps, integrator):
    """Backend flow entry point (integer-coded system selection)."""
    from .coalgebra import BeltramiState, ModelParams, casimir_two_particle
    from .geometry import PolarState
    from .hamiltonians import (Coords, Family, Variant, casimir_polar,
                               h_beltrami, h_polar)
    fam = (Family.FREE, Family.SW, Family.KC)[family]
    var = (Variant.INTEGRABLE, Variant.SUPERINTEGRABLE)[variant]
    m = ModelParams(z=z, b1=b1, b2=b2, beta0=beta0, k=kck, gamma=gamma,
                    sign=sign)
    sig = (k1, k2)
    if coords == 0:
        def h(y):
            return h_beltrami(BeltramiState(*y), m, sig, fam, var)

        def c(y):
            return casimir_two_particle(BeltramiState(*y), m, sig)
    else:
        def h(y):
            return h_polar(PolarState(*y), m, sig, fam, var)

        def c(y):
            return casimir_polar(PolarState(*y), m, sig)
    guard = make_guard(coords, family, k1, k2, z, b1, b2)
    return flow_callable(h, c, y0, dt, steps, integrator, guard)
