"""Coordinate charts, metric data, and numerical Gaussian curvature.

The plane carries two charts: Beltrami-type coordinates (x, y) in which the
coalgebra realization is written (x = sqrt(2) q2, y = sqrt(2) q1), and polar
coordinates (r, theta) defined through

    gcos(k1, r) = exp(-(1/2) k1 (x**2 + k2 y**2)),
    gsin(k2, theta)**2 = y**2 M(k1 k2 y**2) / (rho2 M(k1 rho2)),

with rho2 = x**2 + k2 y**2 and M(a) = (1 - e**-a)/a.  Both directions are
closed-form; momenta move by the cotangent lift with Jacobians computed
exactly by jets.

Branch conventions: r >= 0 and theta takes the sign of y.  For kappa2 = +1
the quadrant is restored from the sign of x; for kappa2 <= 0 the chart
covers the x > 0 wedge only (for kappa2 = -1 the map cannot distinguish +-x,
and for kappa2 = 0 the inverse always lands on x > 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ChartDomainError, DegenerateMetric, JacobianSingular
from .kernels import (Jet, acos, acosh, asin, asinh, exp, expm1, expm1c, gcos,
                      gsin, log, log1p, real_value, sqrt)
from .spaces import kappas

CHART_GUARD = 1e-12
SQRT2 = math.sqrt(2.0)

# Central-difference step for curvature; one Richardson level on top.
CURVATURE_STEP = 1e-4


@dataclass(frozen=True)
class PolarState:
    """Polar coordinates (r, theta) and conjugate momenta (pr, ptheta)."""

    r: float
    theta: float
    pr: float
    ptheta: float


@dataclass(frozen=True)
class MetricAt:
    """Diagonal metric components at radius r.

    fiber_g_thth is the kappa2-stripped angular part; on degenerate spaces
    it is the fiber metric while g_thth itself vanishes.
    """

    g_rr: float
    g_thth: float
    fiber_g_thth: float


def _n(v):
    # -log1p(-v)/v with the removable singularity by series.
    if abs(real_value(v)) < 1e-4:
        return 1.0 + v * 0.5 + v * v * (1.0 / 3.0) + v * v * v * 0.25
    return -log1p(-v) / v


def beltrami_to_polar(x, y, sig):
    """Map a Beltrami point (x, y) to polar (r, theta).

    Accepts jet-lifted x, y so Jacobians come out exactly.
    """
    k1, k2 = kappas(sig)
    xv = real_value(x)
    yv = real_value(y)
    if xv == 0.0 and yv == 0.0:
        return 0.0, 0.0
    if k2 <= 0 and xv <= 0.0:
        raise ChartDomainError("chart covers the x > 0 wedge for kappa2 <= 0")
    rho2 = x * x + k2 * (y * y)
    rv = real_value(rho2)
    if rv < 0.0:
        raise ChartDomainError("x**2 + kappa2*y**2 < 0: no real radius")
    if rv == 0.0:
        raise ChartDomainError("point on the light cone: radius 0 with y != 0")

    if k1 > 0:
        rk1 = math.sqrt(k1)
        e = exp(-0.5 * k1 * rho2)
        r = acos(e) / rk1
    elif k1 < 0:
        rk1 = math.sqrt(-k1)
        r = acosh(exp(-0.5 * k1 * rho2)) / rk1
    else:
        r = sqrt(rho2)

    if k2 == 0:
        theta = y / (x * sqrt(expm1c(-k1 * (x * x))))
        return r, theta

    s2sq = (y * y) * expm1c(-k1 * k2 * (y * y)) / (rho2 * expm1c(-k1 * rho2))
    sy = 1.0 if yv >= 0.0 else -1.0
    if k2 > 0:
        rk2 = math.sqrt(k2)
        arg = rk2 * sqrt(s2sq)
        av = real_value(arg)
        if av > 1.0:
            if av > 1.0 + 1e-9:
                raise ChartDomainError("angular relation left [-1, 1]")
            arg = arg / av
        half = asin(arg) / rk2
        theta = sy * half if xv >= 0.0 else sy * (math.pi / rk2 - half)
    else:
        rk2 = math.sqrt(-k2)
        theta = sy * asinh(rk2 * sqrt(s2sq)) / rk2
    return r, theta


def polar_to_beltrami(r, theta, sig):
    """Closed-form inverse of :func:`beltrami_to_polar`."""
    k1, k2 = kappas(sig)
    rv = real_value(r)
    tv = real_value(theta)
    if rv == 0.0:
        return 0.0, 0.0
    if rv < 0.0:
        raise ChartDomainError("radius must be nonnegative")

    if k1 == 0:
        big_r2 = r * r
    else:
        c1 = gcos(k1, r)
        if real_value(c1) <= CHART_GUARD:
            raise ChartDomainError("r at or beyond the chart edge gcos = 0")
        big_r2 = (-2.0 / k1) * log(c1)

    w = -expm1(-k1 * big_r2)
    s2 = gsin(k2, theta)
    s2sq = s2 * s2
    v = k2 * s2sq * w
    if real_value(v) >= 1.0 - CHART_GUARD:
        raise ChartDomainError("theta outside the chart for this radius")
    y2 = s2sq * big_r2 * expm1c(-k1 * big_r2) * _n(v)
    sy = 1.0 if real_value(s2) >= 0.0 else -1.0
    y = sy * sqrt(y2) if real_value(y2) > 0.0 else 0.0 * r
    x2 = big_r2 - k2 * y2
    if real_value(x2) < 0.0:
        if real_value(x2) < -1e-14 * abs(real_value(big_r2)):
            raise ChartDomainError("theta outside the chart for this radius")
        x2 = 0.0 * x2
    x = sqrt(x2)
    if k2 > 0 and real_value(gcos(k2, theta)) < 0.0:
        x = -x
    return x, y


def _jacobian(map2, a, b):
    """2x2 Jacobian of (a, b) -> map2(a, b) by jet lifting."""
    ra, ta = map2(Jet(a, 1.0), b)
    rb, tb = map2(a, Jet(b, 1.0))
    from .kernels import deriv
    return ((deriv(ra), deriv(rb)),
            (deriv(ta), deriv(tb)))


def _solve_transpose(jac, v0, v1):
    # Solve J^T w = v for w (covector transport through the map with
    # Jacobian J).
    (a, b), (c, d) = jac
    det = a * d - b * c
    if abs(det) < 1e-12:
        raise JacobianSingular("coordinate-map Jacobian is singular here")
    # J^T = [[a, c], [b, d]]
    w0 = (d * v0 - c * v1) / det
    w1 = (-b * v0 + a * v1) / det
    return w0, w1


def transport_momenta_to_polar(x, y, px, py, sig):
    """Cotangent lift of (px, py) along beltrami_to_polar."""
    jac = _jacobian(lambda u, v: beltrami_to_polar(u, v, sig), x, y)
    # p_belt = J^T p_pol with J = d(r,theta)/d(x,y); solve for p_pol.
    return _solve_transpose(jac, px, py)


def transport_momenta_to_beltrami(r, theta, pr, ptheta, sig):
    """Cotangent lift of (pr, ptheta) along polar_to_beltrami."""
    jac = _jacobian(lambda u, v: polar_to_beltrami(u, v, sig), r, theta)
    return _solve_transpose(jac, pr, ptheta)


def polar_state_of(s, sig) -> PolarState:
    """Full phase-space map from a canonical two-particle state.

    The chart identification is x = sqrt(2) q2, y = sqrt(2) q1, so momenta
    scale as px = p2/sqrt(2), py = p1/sqrt(2) before the lift.
    """
    x, y = SQRT2 * s.q2, SQRT2 * s.q1
    r, theta = beltrami_to_polar(x, y, sig)
    pr, ptheta = transport_momenta_to_polar(x, y, s.p2 / SQRT2, s.p1 / SQRT2, sig)
    return PolarState(r=r, theta=theta, pr=pr, ptheta=ptheta)


def beltrami_state_of(ps: PolarState, sig):
    """Inverse of :func:`polar_state_of`."""
    from .coalgebra import BeltramiState
    x, y = polar_to_beltrami(ps.r, ps.theta, sig)
    px, py = transport_momenta_to_beltrami(ps.r, ps.theta, ps.pr, ps.ptheta, sig)
    return BeltramiState(q1=y / SQRT2, q2=x / SQRT2, p1=py * SQRT2, p2=px * SQRT2)


def metric_at(r: float, sig) -> MetricAt:
    """Diagonal metric components 1/C1, k2*S1**2/C1 and the fiber part."""
    k1, k2 = kappas(sig)
    c1 = gcos(k1, r)
    if real_value(c1) <= CHART_GUARD:
        raise ChartDomainError("metric factor 1/gcos diverges at the chart edge")
    s1 = gsin(k1, r)
    fiber = s1 * s1 / c1
    return MetricAt(g_rr=1.0 / c1, g_thth=k2 * fiber, fiber_g_thth=fiber)


def _deriv1(f, r: float, h: float) -> float:
    def d(step):
        return (f(r + step) - f(r - step)) / (2.0 * step)
    return (4.0 * d(h / 2.0) - d(h)) / 3.0


def _deriv2(f, r: float, h: float) -> float:
    def d(step):
        return (f(r + step) - 2.0 * f(r) + f(r - step)) / (step * step)
    return (4.0 * d(h / 2.0) - d(h)) / 3.0


def gaussian_curvature(r: float, sig) -> float:
    """Numerical Gaussian curvature of the diagonal metric at radius r.

    Central differences with one Richardson level; independent of any
    closed-form curvature, which is what makes it usable as a cross-check.
    Signed metrics (kappa2 = -1) are handled by the same formula.
    """
    k1, k2 = kappas(sig)
    if k2 == 0:
        raise DegenerateMetric("curvature of a degenerate metric is undefined")

    def e_of(rr):
        return metric_at(rr, sig).g_rr

    def g_of(rr):
        return metric_at(rr, sig).g_thth

    e0 = e_of(r)
    g0 = g_of(r)
    if abs(g0) < 1e-30:
        raise ChartDomainError("curvature needs r away from the axis")
    h = CURVATURE_STEP
    ep = _deriv1(e_of, r, h)
    gp = _deriv1(g_of, r, h)
    gpp = _deriv2(g_of, r, h)
    return (-0.5 * gpp + gp * gp / (4.0 * g0) + ep * gp / (4.0 * e0)) / (e0 * g0)
