"""Deformed sl(2) generators, bracket closure and the two Casimir routes."""

import dataclasses
import math

import numpy as np
import pytest

from cksim.coalgebra import (
    BARRIER_GUARD,
    BeltramiState,
    ModelParams,
    bracket_residuals,
    casimir_coalgebra,
    casimir_commutators,
    casimir_two_particle,
    generators,
    grad,
    poisson_bracket,
)
from cksim.errors import BarrierSingularity
from cksim.kernels import Jet, value
from cksim.spaces import ALL_SIGNATURES

STATE = BeltramiState(1.0, 1.0, 0.0, 0.0)


def test_undeformed_generators_at_unit_state():
    m = ModelParams(z=0.0, b1=1.0, b2=1.0)
    g = generators(STATE, m, (0, 1))
    assert g.jminus == 2.0
    assert g.j3 == 0.0
    assert g.jplus == 2.0


def test_casimir_at_unit_state():
    # C = shz(k1 z, J-) J+ - k2 J3**2 collapses to J- J+ at z = 0
    m = ModelParams(z=0.0, b1=1.0, b2=1.0)
    g = generators(STATE, m, (0, 1))
    assert casimir_coalgebra(g, m, (0, 1)) == 4.0
    assert casimir_two_particle(STATE, m, (0, 1)) == 4.0


def test_jminus_tracks_signature():
    s = BeltramiState(0.5, 1.2, 0.3, -0.4)
    m = ModelParams(z=0.1)
    assert generators(s, m, (1, 1)).jminus == pytest.approx(1.2 ** 2 + 0.5 ** 2)
    assert generators(s, m, (1, -1)).jminus == pytest.approx(1.2 ** 2 - 0.5 ** 2)
    assert generators(s, m, (1, 0)).jminus == pytest.approx(1.2 ** 2)


def test_barrier_guard_raises_close_to_axis():
    m = ModelParams(b1=1.0)
    bad = BeltramiState(0.5 * BARRIER_GUARD, 1.0, 0.0, 0.0)
    with pytest.raises(BarrierSingularity):
        generators(bad, m, (0, 1))
    # with b1 = 0 the axis is regular
    g = generators(BeltramiState(0.0, 1.0, 0.2, 0.1), ModelParams(b2=1.0), (0, 1))
    assert np.isfinite(g.jplus)


def test_bracket_residuals_close_pointwise():
    """{J-,J+} = 4 k2 J3, {J3,J+} = 2 J+ cosh(k1 z J-), {J3,J-} = -2 shz."""
    rng = np.random.default_rng(11)
    worst = 0.0
    for sig in ALL_SIGNATURES:
        for z in (-0.7, 0.0, 0.4):
            m = ModelParams(z=z, b1=0.6, b2=0.3)
            for _ in range(5):
                s = BeltramiState(*rng.uniform(0.5, 1.5, 2), *rng.uniform(-1, 1, 2))
                r1, r2, r3 = bracket_residuals(s, m, sig)
                worst = max(worst, abs(r1), abs(r2), abs(r3))
    assert worst < 1e-9


def test_casimir_commutes_with_generators():
    rng = np.random.default_rng(12)
    for sig in ALL_SIGNATURES:
        m = ModelParams(z=0.35, b1=0.2, b2=0.5)
        s = BeltramiState(*rng.uniform(0.6, 1.4, 2), *rng.uniform(-1, 1, 2))
        c1, c2, c3 = casimir_commutators(s, m, sig)
        assert max(abs(c1), abs(c2), abs(c3)) < 1e-9


def test_two_casimir_routes_agree():
    rng = np.random.default_rng(13)
    for sig in ALL_SIGNATURES:
        for z in (-1.0, 0.5):
            m = ModelParams(z=z, b1=1.0, b2=1.0)
            s = BeltramiState(*rng.uniform(0.6, 1.3, 2), *rng.uniform(-1, 1, 2))
            g = generators(s, m, sig)
            d = abs(casimir_coalgebra(g, m, sig) - casimir_two_particle(s, m, sig))
            assert d < 1e-10


def test_grad_matches_finite_differences():
    m = ModelParams(z=0.2, b1=0.4, b2=0.1)

    def f(s):
        return generators(s, m, (1, 1)).jplus

    s0 = BeltramiState(0.9, 1.1, 0.3, -0.2)
    g = grad(f, s0)
    h = 1e-6
    for i, field in enumerate(("q1", "q2", "p1", "p2")):
        up = f(dataclasses.replace(s0, **{field: getattr(s0, field) + h}))
        dn = f(dataclasses.replace(s0, **{field: getattr(s0, field) - h}))
        assert g[i] == pytest.approx((up - dn) / (2.0 * h), rel=1e-6, abs=1e-8)


def test_poisson_bracket_antisymmetry():
    m = ModelParams(z=0.3, b1=0.2, b2=0.7)
    s = BeltramiState(1.1, 0.8, -0.4, 0.6)

    def f(st):
        return generators(st, m, (-1, 1)).j3

    def g(st):
        return generators(st, m, (-1, 1)).jplus

    ab = poisson_bracket(f, g, s)
    ba = poisson_bracket(g, f, s)
    assert ab == pytest.approx(-ba, rel=1e-12)
    assert poisson_bracket(f, f, s) == pytest.approx(0.0, abs=1e-12)


def test_generators_accept_jet_states():
    # phase-space slots are jet capable even though kappa slots are not
    m = ModelParams(z=0.2, b1=0.3, b2=0.3)
    s = BeltramiState(Jet(1.0, 1.0), 1.1, 0.2, 0.1)
    g = generators(s, m, (1, 1))
    assert np.isfinite(value(g.jplus))


def test_gamma_defaults_to_k():
    assert ModelParams(k=0.7).gamma_eff == 0.7
    assert ModelParams(k=0.7, gamma=0.2).gamma_eff == 0.2


def test_sign_validation():
    with pytest.raises(ValueError):
        ModelParams(sign=2)
    assert ModelParams(sign=-1).sign == -1
