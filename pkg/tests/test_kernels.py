"""Dual-number jets and the curvature-labelled trig kernels."""

import math

import numpy as np
import pytest

from cksim.kernels import (
    GTAN_GUARD,
    Jet,
    cos,
    deriv,
    exp,
    expm1c,
    gcos,
    gsin,
    gtan,
    jet_depth,
    lift,
    log,
    real_value,
    shz,
    sin,
    sinhc,
    sqrt,
    value,
    wrap_constant,
)
from cksim.errors import DomainError

SINH1 = 1.1752011936438014
COSH1 = 1.5430806348152437


def test_jet_arithmetic():
    x = Jet(3.0, 1.0)
    y = x * x
    assert value(y) == 9.0
    assert deriv(y) == 6.0
    assert value(1.0 - x) == -2.0
    assert deriv(1.0 - x) == -1.0
    z = 6.0 / x
    assert value(z) == 2.0
    assert deriv(z) == pytest.approx(-6.0 / 9.0, rel=1e-15)


def test_jet_elementary_functions():
    x = Jet(0.0, 1.0)
    assert value(exp(x)) == 1.0
    assert deriv(exp(x)) == 1.0
    s = sqrt(Jet(4.0, 1.0))
    assert value(s) == 2.0
    assert deriv(s) == 0.25
    # chain rule through two kernels
    t = sin(cos(Jet(0.3, 1.0)))
    assert deriv(t) == pytest.approx(-math.cos(math.cos(0.3)) * math.sin(0.3),
                                     rel=1e-14)


def test_nested_jets_give_second_derivatives():
    # d/dx and d2/dx2 of x**3 at x = 2
    x = Jet(Jet(2.0, 1.0), Jet(1.0, 0.0))
    y = x * x * x
    assert real_value(y) == 8.0
    assert deriv(value(y)) == 12.0
    assert value(deriv(y)) == 12.0
    assert deriv(deriv(y)) == 12.0  # 6x at x = 2


def test_depth_helpers():
    c = wrap_constant(2.0, 2)
    assert jet_depth(c) == 2
    assert real_value(c) == 2.0
    assert deriv(c) == pytest.approx(0.0) or real_value(deriv(c)) == 0.0
    assert jet_depth(lift(1.5)) == 1
    assert jet_depth(0.5) == 0


@pytest.mark.parametrize("kappa, fn, expected", [
    (1, gsin, math.sin(1.0)),
    (-1, gsin, SINH1),
    (0, gsin, 1.0),
    (1, gcos, math.cos(1.0)),
    (-1, gcos, COSH1),
    (0, gcos, 1.0),
    (1, gtan, math.tan(1.0)),
    (-1, gtan, math.tanh(1.0)),
    (0, gtan, 1.0),
])
def test_kernel_branches_at_one(kappa, fn, expected):
    assert fn(kappa, 1.0) == pytest.approx(expected, rel=1e-15)


def test_kernels_scale_with_curvature():
    # gsin(k, x) = sin(sqrt(k) x)/sqrt(k) for k > 0
    k = 4.0
    assert gsin(k, 0.7) == pytest.approx(math.sin(2.0 * 0.7) / 2.0, rel=1e-14)
    assert gcos(k, 0.7) == pytest.approx(math.cos(2.0 * 0.7), rel=1e-14)
    k = -4.0
    assert gsin(k, 0.7) == pytest.approx(math.sinh(2.0 * 0.7) / 2.0, rel=1e-14)


def test_kernel_derivative_relations():
    # d gsin/dx = gcos, d gcos/dx = -k gsin
    for k in (1.0, -1.0, 0.0, 2.5, -0.3):
        x = Jet(0.6, 1.0)
        assert deriv(gsin(k, x)) == pytest.approx(gcos(k, 0.6), rel=1e-13)
        assert deriv(gcos(k, x)) == pytest.approx(-k * gsin(k, 0.6),
                                                  rel=1e-13, abs=1e-15)


def test_kappa_slot_rejects_jets():
    with pytest.raises(TypeError):
        gsin(Jet(1.0, 1.0), 0.5)
    with pytest.raises(TypeError):
        gcos(Jet(0.0, 1.0), 0.5)
    with pytest.raises(TypeError):
        gtan(Jet(-1.0, 1.0), 0.5)


def test_gtan_pole_guard():
    with pytest.raises(DomainError):
        gtan(1.0, math.pi / 2.0)
    assert GTAN_GUARD == 1e-12


def test_sinhc_values():
    assert sinhc(0.0) == 1.0
    assert sinhc(2.0) == pytest.approx(math.sinh(2.0) / 2.0, rel=1e-15)
    assert sinhc(-2.0) == pytest.approx(math.sinh(2.0) / 2.0, rel=1e-15)


def test_sinhc_series_joins_direct_branch():
    # the series takes over below 1e-4; both branches must agree there
    lo = sinhc(0.9999999e-4)
    hi = sinhc(1.0000001e-4)
    assert abs(hi - lo) < 1e-12
    assert sinhc(1e-5) == pytest.approx(1.0 + 1e-10 / 6.0, rel=1e-15)


def test_shz():
    assert shz(-0.5, 2.0) == pytest.approx(2.3504023872876028, rel=1e-15)
    assert shz(0.0, 3.7) == 3.7
    # shz(a, x) = sinh(a x)/a
    assert shz(0.25, 1.2) == pytest.approx(math.sinh(0.3) / 0.25, rel=1e-15)


def test_expm1c():
    assert expm1c(0.0) == 1.0
    assert expm1c(2.0) == pytest.approx(math.expm1(2.0) / 2.0, rel=1e-15)
    assert expm1c(1e-6) == pytest.approx(1.0 + 0.5e-6, rel=1e-12)


def test_jet_through_kernels_matches_finite_differences():
    h = 1e-7
    for k in (1.0, 0.0, -1.0):
        for f in (sinhc, expm1c):
            d = deriv(f(Jet(0.8, 1.0)))
            fd = (f(0.8 + h) - f(0.8 - h)) / (2.0 * h)
            assert d == pytest.approx(fd, rel=1e-6)
        d = deriv(gtan(k, Jet(0.8, 1.0)))
        fd = (gtan(k, 0.8 + h) - gtan(k, 0.8 - h)) / (2.0 * h)
        assert d == pytest.approx(fd, rel=1e-6)


def test_log_and_value_on_arrays():
    # value/deriv are identity/zero on plain floats
    assert value(1.25) == 1.25
    assert deriv(1.25) == 0.0
    assert deriv(log(Jet(2.0, 1.0))) == 0.5
    assert np.isfinite(real_value(exp(Jet(Jet(0.1, 1.0), Jet(1.0, 0.0)))))
