"""Scalar kernels and first-order jet arithmetic.

Every curvature-dependent expression in this library is written in terms of a
signature parameter kappa in {+1, 0, -1} and the kernels below, so that the
degenerate kappa = 0 cases are plain evaluations of analytic limits rather
than numerical epsilon tricks.  The kernels also accept any real kappa, which
is what makes the kappa-continuity checks (kappa = +-1e-6 vs the kappa = 0
branch) meaningful.

Jets are truncated first-order values a + b*eta with eta**2 = 0.  One
mechanism covers two jobs: exact phase-space derivatives (Poisson brackets,
Hamiltonian flows) and extraction of the kappa2-linear coefficient that
defines base Hamiltonians on degenerate-metric spaces.  Coefficients may
themselves be jets, which nests independent directions for mixed
second-order data.
"""

from __future__ import annotations

import math

from .errors import DomainError

GTAN_GUARD = 1e-12
_SERIES_SWITCH = 1e-4


class Jet:
    """First-order truncated value ``val + der*eta`` with ``eta**2 = 0``.

    Lifting a coordinate as ``Jet(x, 1.0)`` and evaluating any expression
    built from the arithmetic below and the generic functions in this module
    yields the exact forward derivative in ``der``.  Nesting (jet-valued
    coefficients) keeps independent directions separate; see
    :func:`wrap_constant`.
    """

    __slots__ = ("val", "der")

    def __init__(self, val, der=0.0):
        self.val = val
        self.der = der

    def __repr__(self):
        return f"Jet({self.val!r}, {self.der!r})"

    def __add__(self, other):
        if isinstance(other, Jet):
            return Jet(self.val + other.val, self.der + other.der)
        return Jet(self.val + other, self.der)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Jet):
            return Jet(self.val - other.val, self.der - other.der)
        return Jet(self.val - other, self.der)

    def __rsub__(self, other):
        return Jet(other - self.val, -self.der)

    def __neg__(self):
        return Jet(-self.val, -self.der)

    def __mul__(self, other):
        if isinstance(other, Jet):
            return Jet(self.val * other.val,
                       self.val * other.der + self.der * other.val)
        return Jet(self.val * other, self.der * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            val = self.val / other.val
            return Jet(val, (self.der - val * other.der) / other.val)
        return Jet(self.val / other, self.der / other)

    def __rtruediv__(self, other):
        val = other / self.val
        return Jet(val, -val * self.der / self.val)

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("jet powers are integer only; use sqrt/exp/log")
        return Jet(self.val ** n, n * self.val ** (n - 1) * self.der)


def value(x):
    """Order-0 part of x (one jet level; floats pass through)."""
    return x.val if isinstance(x, Jet) else x


def deriv(x):
    """Order-1 coefficient of x (0.0 for plain numbers)."""
    return x.der if isinstance(x, Jet) else 0.0


def real_value(x):
    """Strip all jet levels to recover the underlying real number."""
    while isinstance(x, Jet):
        x = x.val
    return x


def jet_depth(x) -> int:
    """Nesting depth of x: 0 for reals, 1 for plain jets, and so on."""
    depth = 0
    while isinstance(x, Jet):
        depth += 1
        x = x.val
    return depth


def lift(x) -> Jet:
    """Seed x as an independent differentiation direction."""
    return Jet(x, 1.0)


def wrap_constant(x, depth: int):
    """Push x below ``depth`` outer jet levels as a constant.

    Needed when mixing directions: a jet that must stay independent of
    ``depth`` outer directions is wrapped so its own eta lives strictly
    inside theirs.
    """
    for _ in range(depth):
        x = Jet(x, 0.0)
    return x


# Generic elementary functions: dispatch on Jet vs real, recurse through
# nesting via the chain rule.

def exp(x):
    if isinstance(x, Jet):
        e = exp(x.val)
        return Jet(e, e * x.der)
    return math.exp(x)


def expm1(x):
    if isinstance(x, Jet):
        return Jet(expm1(x.val), exp(x.val) * x.der)
    return math.expm1(x)


def log(x):
    if isinstance(x, Jet):
        return Jet(log(x.val), x.der / x.val)
    return math.log(x)


def log1p(x):
    if isinstance(x, Jet):
        return Jet(log1p(x.val), x.der / (1.0 + x.val))
    return math.log1p(x)


def sqrt(x):
    if isinstance(x, Jet):
        s = sqrt(x.val)
        return Jet(s, 0.5 * x.der / s)
    return math.sqrt(x)


def sin(x):
    if isinstance(x, Jet):
        return Jet(sin(x.val), cos(x.val) * x.der)
    return math.sin(x)


def cos(x):
    if isinstance(x, Jet):
        return Jet(cos(x.val), -sin(x.val) * x.der)
    return math.cos(x)


def sinh(x):
    if isinstance(x, Jet):
        return Jet(sinh(x.val), cosh(x.val) * x.der)
    return math.sinh(x)


def cosh(x):
    if isinstance(x, Jet):
        return Jet(cosh(x.val), sinh(x.val) * x.der)
    return math.cosh(x)


def asin(x):
    if isinstance(x, Jet):
        return Jet(asin(x.val), x.der / sqrt(1.0 - x.val * x.val))
    return math.asin(x)


def acos(x):
    if isinstance(x, Jet):
        return Jet(acos(x.val), -x.der / sqrt(1.0 - x.val * x.val))
    return math.acos(x)


def asinh(x):
    if isinstance(x, Jet):
        return Jet(asinh(x.val), x.der / sqrt(1.0 + x.val * x.val))
    return math.asinh(x)


def acosh(x):
    if isinstance(x, Jet):
        return Jet(acosh(x.val), x.der / sqrt(x.val * x.val - 1.0))
    return math.acosh(x)


def _check_kappa(kappa):
    # Signature slots take plain reals by design.  The degenerate-space split
    # lifts kappa2 to a jet for every arithmetic occurrence but feeds only its
    # value to kernel slots; passing the jet itself here is a bug upstream.
    if isinstance(kappa, Jet):
        raise TypeError("kernel signature slots take a real kappa; "
                        "pass value(kappa) for jet-lifted signatures")


def gsin(kappa, x):
    """Generalized sine: sin(sqrt(k)x)/sqrt(k) | x | sinh(sqrt(-k)x)/sqrt(-k).

    Odd in x, smooth in x, and continuous in kappa through 0.
    """
    _check_kappa(kappa)
    if kappa > 0:
        rk = math.sqrt(kappa)
        return sin(rk * x) / rk
    if kappa < 0:
        rk = math.sqrt(-kappa)
        return sinh(rk * x) / rk
    return x


def gcos(kappa, x):
    """Generalized cosine: cos(sqrt(k)x) | 1 | cosh(sqrt(-k)x)."""
    _check_kappa(kappa)
    if kappa > 0:
        return cos(math.sqrt(kappa) * x)
    if kappa < 0:
        return cosh(math.sqrt(-kappa) * x)
    return 1.0


def gtan(kappa, x):
    """Generalized tangent gsin/gcos; errors within GTAN_GUARD of a pole."""
    c = gcos(kappa, x)
    if abs(real_value(c)) < GTAN_GUARD:
        raise DomainError(f"gtan pole: |gcos({kappa}, x)| < {GTAN_GUARD}")
    return gsin(kappa, x) / c


def sinhc(u):
    """sinh(u)/u with the removable singularity evaluated by series.

    The series switch keeps relative error below 1e-16 on both branches.
    """
    if abs(real_value(u)) < _SERIES_SWITCH:
        u2 = u * u
        return 1.0 + u2 * (1.0 / 6.0) + u2 * u2 * (1.0 / 120.0)
    return sinh(u) / u


def shz(a, x):
    """sinh(a*x)/a with the a -> 0 limit x; equals x*sinhc(a*x)."""
    return x * sinhc(a * x)


def expm1c(u):
    """(e**u - 1)/u with the removable singularity evaluated by series."""
    if abs(real_value(u)) < _SERIES_SWITCH:
        return 1.0 + u * 0.5 + u * u * (1.0 / 6.0) + u * u * u * (1.0 / 24.0)
    return expm1(u) / u
