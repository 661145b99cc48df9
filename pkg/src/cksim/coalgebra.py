"""Two-particle realization of the deformed sl(2) Poisson coalgebra.

Provides the generators J-, J3, J+ on a two-particle canonical phase space,
the abstract Casimir written in the generators, its fully expanded
two-particle form (an independent evaluation path), and a generic
exact-derivative canonical Poisson bracket engine built on jet lifting.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import BarrierSingularity
from .kernels import Jet, cosh, deriv, exp, real_value, shz, sinhc
from .spaces import kappas

BARRIER_GUARD = 1e-10

PHASE_FIELDS = ("q1", "q2", "p1", "p2")


@dataclass(frozen=True)
class ModelParams:
    """Deformation and potential constants shared by every Hamiltonian.

    gamma is the coupling of the attractive-potential family in canonical
    coordinates; when left as None it falls back to k so a single constant
    drives both coordinate systems.  sign is the overall Hamiltonian sign
    flag (the kappa2 = -1 space presets set it to -1).
    """

    z: float = 0.0
    b1: float = 0.0
    b2: float = 0.0
    beta0: float = 0.0
    k: float = 0.0
    gamma: float | None = None
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")

    @property
    def gamma_eff(self) -> float:
        return self.k if self.gamma is None else self.gamma


@dataclass(frozen=True)
class BeltramiState:
    """Canonical coordinates (q1, q2) and momenta (p1, p2)."""

    q1: float
    q2: float
    p1: float
    p2: float


@dataclass(frozen=True)
class Generators:
    jminus: float
    j3: float
    jplus: float


def _barrier_check(q, b: float, name: str):
    if b != 0.0 and abs(real_value(q)) < BARRIER_GUARD:
        raise BarrierSingularity(
            f"|{name}| < {BARRIER_GUARD} with barrier b != 0 (1/q**2 wall)")


def generators(s: BeltramiState, m: ModelParams, sig) -> Generators:
    """Evaluate J-, J3, J+ at a phase-space point.

    All contraction limits are carried by the kernels, so any real (or
    jet-lifted) kappa pair is acceptable.
    """
    k1, k2 = kappas(sig)
    _barrier_check(s.q1, m.b1, "q1")
    _barrier_check(s.q2, m.b2, "q2")
    u1 = k1 * k2 * m.z * s.q1 ** 2
    u2 = k1 * m.z * s.q2 ** 2
    a = sinhc(u1)
    b = sinhc(u2)
    e_up = exp(u2)
    e_dn = exp(-u1)
    jminus = s.q2 ** 2 + k2 * s.q1 ** 2
    j3 = a * s.q1 * s.p1 * e_up + b * s.q2 * s.p2 * e_dn
    t1 = a * s.p1 ** 2
    if m.b1 != 0.0:
        t1 = t1 + m.b1 / (s.q1 ** 2 * a)
    t2 = b * s.p2 ** 2
    if m.b2 != 0.0:
        t2 = t2 + m.b2 / (s.q2 ** 2 * b)
    jplus = t1 * e_up + k2 * t2 * e_dn
    return Generators(jminus, j3, jplus)


def casimir_coalgebra(gen: Generators, m: ModelParams, sig):
    """Casimir written in the generators: shz(k1*z, J-)*J+ - k2*J3**2."""
    k1, k2 = kappas(sig)
    return shz(k1 * m.z, gen.jminus) * gen.jplus - k2 * gen.j3 ** 2


def casimir_two_particle(s: BeltramiState, m: ModelParams, sig):
    """Fully expanded two-particle Casimir.

    Independent of :func:`casimir_coalgebra` composed with
    :func:`generators`; the two paths agreeing pointwise is one of the
    library's self-checks.  The barrier ratio terms are rewritten with sinhc
    so every kappa = 0 limit is an evaluation:
    the b1 term carries no kappa2 factor, the b2 term carries kappa2**2.
    """
    k1, k2 = kappas(sig)
    _barrier_check(s.q1, m.b1, "q1")
    _barrier_check(s.q2, m.b2, "q2")
    u1 = k1 * k2 * m.z * s.q1 ** 2
    u2 = k1 * m.z * s.q2 ** 2
    a = sinhc(u1)
    b = sinhc(u2)
    e_cross = exp(u2 - u1)
    w = k2 * s.q1 * s.p2 - s.q2 * s.p1
    c = a * b * w ** 2 * e_cross
    if m.b1 != 0.0 or m.b2 != 0.0:
        c = c + k2 * (m.b1 * exp(2.0 * u2) + m.b2 * exp(-2.0 * u1))
    if m.b1 != 0.0:
        c = c + m.b1 * (s.q2 ** 2 / s.q1 ** 2) * (b / a) * e_cross
    if m.b2 != 0.0:
        c = c + k2 ** 2 * m.b2 * (s.q1 ** 2 / s.q2 ** 2) * (a / b) * e_cross
    return c


def grad(f, s):
    """Exact gradient (df/dq1, df/dq2, df/dp1, df/dp2) by jet lifting."""
    out = []
    for name in PHASE_FIELDS:
        lifted = replace(s, **{name: Jet(getattr(s, name), 1.0)})
        out.append(deriv(f(lifted)))
    return tuple(out)


def poisson_bracket(f, g, s: BeltramiState):
    """Canonical bracket {f, g} at s with exact forward derivatives."""
    fq1, fq2, fp1, fp2 = grad(f, s)
    gq1, gq2, gp1, gp2 = grad(g, s)
    return fq1 * gp1 - fp1 * gq1 + fq2 * gp2 - fp2 * gq2


def bracket_residuals(s: BeltramiState, m: ModelParams, sig):
    """Deviations of {J-,J+}, {J3,J+}, {J3,J-} from their closed forms.

    All three vanish identically; the returned numbers measure rounding
    only.  This is the readable reference path; the engine module has a fast
    batch equivalent.
    """
    k1, k2 = kappas(sig)

    def jm(st):
        return generators(st, m, sig).jminus

    def j3(st):
        return generators(st, m, sig).j3

    def jp(st):
        return generators(st, m, sig).jplus

    gen = generators(s, m, sig)
    r1 = poisson_bracket(jm, jp, s) - 4.0 * k2 * gen.j3
    r2 = poisson_bracket(j3, jp, s) - 2.0 * gen.jplus * cosh(k1 * m.z * gen.jminus)
    r3 = poisson_bracket(j3, jm, s) + 2.0 * shz(k1 * m.z, gen.jminus)
    return r1, r2, r3


def casimir_commutators(s: BeltramiState, m: ModelParams, sig):
    """Brackets of the two-particle Casimir with each generator (all ~ 0)."""

    def c(st):
        return casimir_two_particle(st, m, sig)

    def jm(st):
        return generators(st, m, sig).jminus

    def j3(st):
        return generators(st, m, sig).j3

    def jp(st):
        return generators(st, m, sig).jplus

    return (poisson_bracket(c, jm, s),
            poisson_bracket(c, j3, s),
            poisson_bracket(c, jp, s))
