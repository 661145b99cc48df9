"""Hamiltonian catalog on the nine spaces and the base/fiber decomposition.

Three families (free geodesic motion, oscillator with centrifugal barriers,
attractive-center potential) in two variants each, written either in the
canonical two-particle realization ("Beltrami" coordinates) or in polar
coordinates.  On degenerate signatures (kappa2 = 0) every Hamiltonian
decomposes into a fiber part (its value at kappa2 = 0) and a base part (the
kappa2-linear coefficient); the decomposition is computed by lifting kappa2
to a jet, with hand-coded closed forms kept alongside as cross-checks.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Callable

from .coalgebra import (BeltramiState, ModelParams, casimir_two_particle,
                        generators)
from .errors import DomainError
from .geometry import PolarState
from .kernels import (Jet, deriv, exp, expm1c, gcos, gsin, gtan, jet_depth,
                      real_value, shz, sinhc, sqrt, wrap_constant)
from .spaces import kappas

POLAR_GUARD = 1e-12

POLAR_FIELDS = ("r", "theta", "pr", "ptheta")


class Family(str, enum.Enum):
    FREE = "free"
    SW = "sw"
    KC = "kc"


class Variant(str, enum.Enum):
    INTEGRABLE = "integrable"
    SUPERINTEGRABLE = "superintegrable"


class Coords(str, enum.Enum):
    BELTRAMI = "beltrami"
    POLAR = "polar"


@dataclass(frozen=True)
class HamiltonianSpec:
    """Complete description of one system: what, in which chart, where."""

    family: Family
    variant: Variant
    coords: Coords
    params: ModelParams
    sig: object


@dataclass(frozen=True)
class BaseFiberSplit:
    """Phase functions for the two independent motions at kappa2 = 0."""

    fiber: Callable
    base: Callable
    spec: "HamiltonianSpec"


def h_beltrami(s: BeltramiState, m: ModelParams, sig, family: Family,
               variant: Variant = Variant.INTEGRABLE):
    """Any of the three families in the two-particle realization."""
    k1, k2 = kappas(sig)
    gen = generators(s, m, sig)
    az = k1 * m.z
    h = 0.5 * gen.jplus
    if family is Family.SW:
        h = h + k2 * m.beta0 * shz(az, gen.jminus)
    elif family is Family.KC:
        u = 2.0 * az * gen.jminus
        den = gen.jminus * expm1c(u)
        if real_value(den) <= 0.0:
            raise DomainError(
                "attractive-center radicand needs jminus > 0 at this state")
        h = h - k2 * m.gamma_eff * sqrt(1.0 / den) * exp(u)
    if variant is Variant.SUPERINTEGRABLE:
        h = h * exp(az * gen.jminus)
    return m.sign * h


def h_free(s, m, sig, variant=Variant.INTEGRABLE):
    return h_beltrami(s, m, sig, Family.FREE, variant)


def h_sw(s, m, sig, variant=Variant.INTEGRABLE):
    return h_beltrami(s, m, sig, Family.SW, variant)


def h_kc(s, m, sig, variant=Variant.INTEGRABLE):
    return h_beltrami(s, m, sig, Family.KC, variant)


def casimir_polar(ps: PolarState, m: ModelParams, sig):
    """Angular constant of motion p_theta**2 + 4b1/S2**2 + 4 k2 b2/C2**2.

    The kernel slots take the numeric part of kappa2 (branch selection);
    the multiplicative kappa2 is carried as given so the jet split sees it.
    """
    _, k2 = kappas(sig)
    k2v = real_value(k2)
    c = ps.ptheta ** 2
    if m.b1 != 0.0:
        s2 = gsin(k2v, ps.theta)
        if abs(real_value(s2)) <= POLAR_GUARD:
            raise DomainError("angular barrier b1 diverges: gsin(kappa2, theta) ~ 0")
        c = c + 4.0 * m.b1 / s2 ** 2
    if m.b2 != 0.0:
        c2 = gcos(k2v, ps.theta)
        if abs(real_value(c2)) <= POLAR_GUARD:
            raise DomainError("angular barrier b2 diverges: gcos(kappa2, theta) ~ 0")
        c = c + 4.0 * k2 * m.b2 / c2 ** 2
    return c


def _g0(family: Family, m: ModelParams, k1, r):
    # Radial potential with the curvature carried by gtan; the flat limit
    # gives beta0*r**2 and -k/r.
    if family is Family.FREE:
        return 0.0
    t1 = gtan(k1, r)
    if family is Family.SW:
        return m.beta0 * t1 * t1
    if abs(real_value(t1)) <= POLAR_GUARD:
        raise DomainError("attractive center: gtan(kappa1, r) ~ 0")
    return -m.k / t1


def h_polar(ps: PolarState, m: ModelParams, sig, family: Family,
            variant: Variant = Variant.INTEGRABLE):
    """Polar-coordinate Hamiltonians.

    The superintegrable variant is the core expression

        (1/2) k2 pr**2 + casimir_polar/(2 S1**2) + k2 g0(r),

    and the integrable one is exactly gcos(k1, r) times it, so the relation
    between the two variants holds bitwise, not merely to rounding.
    """
    k1, k2 = kappas(sig)
    s1 = gsin(k1, ps.r)
    if abs(real_value(s1)) <= POLAR_GUARD:
        raise DomainError("polar kinetic term diverges: gsin(kappa1, r) ~ 0")
    core = (0.5 * k2 * ps.pr ** 2
            + casimir_polar(ps, m, sig) / (2.0 * s1 ** 2)
            + k2 * _g0(family, m, k1, ps.r))
    if variant is Variant.INTEGRABLE:
        core = gcos(k1, ps.r) * core
    return m.sign * core


def hamiltonian(spec: HamiltonianSpec) -> Callable:
    """State -> energy for the configured system."""
    if spec.coords is Coords.BELTRAMI:
        def h(s):
            return h_beltrami(s, spec.params, spec.sig, spec.family, spec.variant)
    else:
        def h(ps):
            return h_polar(ps, spec.params, spec.sig, spec.family, spec.variant)
    return h


def conserved_quantity(spec: HamiltonianSpec) -> Callable:
    """State -> the second constant of motion for the chart in use."""
    if spec.coords is Coords.BELTRAMI:
        def c(s):
            return casimir_two_particle(s, spec.params, spec.sig)
    else:
        def c(ps):
            return casimir_polar(ps, spec.params, spec.sig)
    return c


def grad_polar(f, ps: PolarState):
    """(df/dr, df/dtheta, df/dpr, df/dptheta) by jet lifting."""
    out = []
    for name in POLAR_FIELDS:
        lifted = replace(ps, **{name: Jet(getattr(ps, name), 1.0)})
        out.append(deriv(f(lifted)))
    return tuple(out)


def poisson_bracket_polar(f, g, ps: PolarState):
    """Canonical bracket in (r, theta, pr, ptheta)."""
    fr, fth, fpr, fpth = grad_polar(f, ps)
    gr, gth, gpr, gpth = grad_polar(g, ps)
    return fr * gpr - fpr * gr + fth * gpth - fpth * gth


def _strip_inner(x, depth: int, take_der: bool):
    # Walk through `depth` outer jet levels (state directions) and read the
    # innermost level (the kappa2 direction).  Reals at any level mean the
    # expression lost that dependence; their kappa2-derivative is 0.
    if not isinstance(x, Jet):
        return 0.0 if take_der else x
    if depth == 0:
        return x.der if take_der else x.val
    return Jet(_strip_inner(x.val, depth - 1, take_der),
               _strip_inner(x.der, depth - 1, take_der))


def split_base_fiber(spec: HamiltonianSpec) -> BaseFiberSplit:
    """Fiber and base Hamiltonians of a system on a degenerate space.

    The full Hamiltonian is evaluated with kappa2 = 0 + 1*eta; the value is
    the fiber Hamiltonian, the eta coefficient the base one.  Outer jet
    directions on the state (used by flows and brackets) pass through: the
    kappa2 jet is wrapped below them, so mixed first derivatives come out
    of one evaluation.
    """
    k1, k2 = kappas(spec.sig)
    if real_value(k2) != 0.0:
        raise ValueError("base/fiber split is defined for kappa2 = 0 signatures")
    beltrami = spec.coords is Coords.BELTRAMI
    fields = ("q1", "q2", "p1", "p2") if beltrami else POLAR_FIELDS

    def _eval(s, take_der):
        depth = max(jet_depth(getattr(s, name)) for name in fields)
        sig2 = (k1, wrap_constant(Jet(0.0, 1.0), depth))
        if beltrami:
            full = h_beltrami(s, spec.params, sig2, spec.family, spec.variant)
        else:
            full = h_polar(s, spec.params, sig2, spec.family, spec.variant)
        return _strip_inner(full, depth, take_der)

    return BaseFiberSplit(fiber=lambda s: _eval(s, False),
                          base=lambda s: _eval(s, True),
                          spec=spec)


def split_reference(spec: HamiltonianSpec) -> BaseFiberSplit:
    """Hand-coded closed forms for the split, kept independent on purpose.

    Covers the configurations with published closed forms: the free family
    in the two-particle realization (integrable variant) and all three
    families in polar coordinates.  Anything else raises ValueError.
    """
    k1, k2 = kappas(spec.sig)
    if real_value(k2) != 0.0:
        raise ValueError("base/fiber split is defined for kappa2 = 0 signatures")
    m = spec.params

    if spec.coords is Coords.BELTRAMI:
        if spec.family is not Family.FREE or spec.variant is not Variant.INTEGRABLE:
            raise ValueError("no independent closed form for this configuration")

        def fiber(s):
            t = s.p1 ** 2
            if m.b1 != 0.0:
                t = t + m.b1 / s.q1 ** 2
            return m.sign * 0.5 * t * exp(k1 * m.z * s.q2 ** 2)

        def base(s):
            b = sinhc(k1 * m.z * s.q2 ** 2)
            t = b * s.p2 ** 2
            if m.b2 != 0.0:
                t = t + m.b2 / (s.q2 ** 2 * b)
            return m.sign * 0.5 * t

        return BaseFiberSplit(fiber=fiber, base=base, spec=spec)

    c1_factor = spec.variant is Variant.INTEGRABLE

    def fiber(ps):
        s1 = gsin(k1, ps.r)
        num = ps.ptheta ** 2
        if m.b1 != 0.0:
            num = num + 4.0 * m.b1 / ps.theta ** 2
        out = num / (2.0 * s1 ** 2)
        if c1_factor:
            out = gcos(k1, ps.r) * out
        return m.sign * out

    def base(ps):
        s1 = gsin(k1, ps.r)
        out = 0.5 * ps.pr ** 2 + _g0(spec.family, m, k1, ps.r)
        if m.b2 != 0.0:
            out = out + 2.0 * m.b2 / s1 ** 2
        if c1_factor:
            out = gcos(k1, ps.r) * out
        return m.sign * out

    return BaseFiberSplit(fiber=fiber, base=base, spec=spec)
