"""Hamiltonian families, the two variants and the degenerate-space split."""

import math

import numpy as np
import pytest

from cksim.coalgebra import (
    BeltramiState,
    ModelParams,
    casimir_two_particle,
    generators,
    poisson_bracket,
)
from cksim.geometry import PolarState
from cksim.hamiltonians import (
    Coords,
    Family,
    HamiltonianSpec,
    Variant,
    casimir_polar,
    conserved_quantity,
    grad_polar,
    h_beltrami,
    h_free,
    h_kc,
    h_polar,
    h_sw,
    hamiltonian,
    poisson_bracket_polar,
    split_base_fiber,
    split_reference,
)
from cksim.kernels import gcos
from cksim.spaces import ALL_SIGNATURES, kappas

UNIT = BeltramiState(1.0, 1.0, 0.0, 0.0)
DEGENERATE = [(1, 0), (0, 0), (-1, 0)]


def _params(**kw):
    kw.setdefault("z", 0.0)
    return ModelParams(**kw)


class TestFreeFamily:
    def test_euclidean_unit_state(self):
        m = _params(b1=1.0, b2=1.0)
        assert h_free(UNIT, m, (0, 1)) == 1.0

    def test_galilei_unit_state(self):
        # the kappa2 half of J+ drops out on degenerate spaces
        m = _params(b1=1.0, b2=1.0)
        assert h_free(UNIT, m, (0, 0)) == 0.5

    def test_rest_state_has_zero_energy(self):
        m = _params(z=0.4)
        for sig in ALL_SIGNATURES:
            assert h_free(UNIT, m, sig) == 0.0

    def test_sign_flag_flips_energy(self):
        m = _params(z=0.2, b1=0.5, b2=0.5)
        s = BeltramiState(0.8, 1.2, 0.3, -0.1)
        plus = h_free(s, m, (1, 1))
        minus = h_free(s, _params(z=0.2, b1=0.5, b2=0.5, sign=-1), (1, 1))
        assert minus == -plus


class TestCurvedFamilies:
    def test_sw_adds_harmonic_term(self):
        m = _params(beta0=1.0)
        assert h_sw(UNIT, m, (0, 1)) == 2.0  # shz(0, J-) = J- = 2

    def test_kc_attractive_term(self):
        m = _params(gamma=1.0)
        # -gamma/sqrt(J-) at z = 0 with J- = 2
        assert h_kc(UNIT, m, (0, 1)) == pytest.approx(-0.7071067811865476,
                                                      rel=1e-15)

    def test_kc_uses_k_when_gamma_unset(self):
        s = BeltramiState(0.9, 1.1, 0.2, 0.3)
        a = h_kc(s, _params(z=0.1, k=0.6), (1, 1))
        b = h_kc(s, _params(z=0.1, gamma=0.6, k=5.0), (1, 1))
        assert a == b

    def test_degenerate_spaces_collapse_the_families(self):
        # SW and KC corrections carry a kappa2 factor, so their values match
        # the free family whenever kappa2 = 0
        s = BeltramiState(0.7, 1.3, 0.4, -0.6)
        m = _params(z=0.3, b1=0.2, b2=0.9, beta0=1.1, k=0.8)
        for sig in DEGENERATE:
            f = h_free(s, m, sig)
            assert h_sw(s, m, sig) == f
            assert h_kc(s, m, sig) == f


def _wedge_state(rng):
    # q2 > q1 keeps jminus positive on the timelike signatures
    return BeltramiState(rng.uniform(0.5, 0.8), rng.uniform(0.9, 1.3),
                         rng.uniform(-1, 1), rng.uniform(-1, 1))


def test_superintegrable_variant_is_exponentially_tilted():
    rng = np.random.default_rng(21)
    for sig in ALL_SIGNATURES:
        k1, k2 = kappas(sig)
        m = _params(z=0.25, b1=0.4, b2=0.2, beta0=0.3, k=0.5)
        s = _wedge_state(rng)
        jm = generators(s, m, sig).jminus
        for fam in (Family.FREE, Family.SW, Family.KC):
            hi = h_beltrami(s, m, sig, fam, Variant.INTEGRABLE)
            hs = h_beltrami(s, m, sig, fam, Variant.SUPERINTEGRABLE)
            assert hs == pytest.approx(math.exp(k1 * m.z * jm) * hi,
                                       rel=1e-12, abs=1e-12)


def test_hamiltonian_commutes_with_casimir():
    rng = np.random.default_rng(22)
    m = _params(z=0.2, b1=0.3, b2=0.6, beta0=0.4, k=0.5)
    for sig in ALL_SIGNATURES:
        s = _wedge_state(rng)

        def c(st):
            return casimir_two_particle(st, m, sig)

        for fam in (Family.FREE, Family.SW, Family.KC):
            for var in (Variant.INTEGRABLE, Variant.SUPERINTEGRABLE):
                def h(st):
                    return h_beltrami(st, m, sig, fam, var)

                assert abs(poisson_bracket(h, c, s)) < 1e-9


class TestPolar:
    def test_galilei_free_radial_state(self):
        # the radial kinetic term carries kappa2 and lives in the base part
        ps = PolarState(1.0, 0.5, 1.0, 0.0)
        assert h_polar(ps, _params(), (0, 0), Family.FREE) == 0.0

    def test_galilei_free_with_angular_momentum(self):
        ps = PolarState(2.0, 1.0, 0.0, 1.0)
        m = _params(b1=1.0)
        assert h_polar(ps, m, (0, 0), Family.FREE) == 0.625

    def test_sphere_sw_superintegrable_value(self):
        q = math.pi / 4.0
        ps = PolarState(q, q, 0.0, 0.0)
        m = _params(b1=1.0, b2=1.0, beta0=1.0)
        got = h_polar(ps, m, (1, 1), Family.SW, Variant.SUPERINTEGRABLE)
        assert got == pytest.approx(17.0, rel=1e-14)

    def test_casimir_polar_values(self):
        assert casimir_polar(PolarState(1.0, 1.0, 0.0, 2.0),
                             _params(b1=1.0), (0, 0)) == 8.0
        assert casimir_polar(PolarState(1.0, 0.3, 0.5, 1.5),
                             _params(), (1, 1)) == 1.5 ** 2
        got = casimir_polar(PolarState(1.0, math.pi / 4.0, 0.0, 0.0),
                            _params(b1=1.0, b2=1.0), (1, 1))
        assert got == pytest.approx(16.0, rel=1e-14)

    def test_variant_relation_is_exact(self):
        rng = np.random.default_rng(23)
        m = _params(z=0.0, b1=0.7, b2=0.2, beta0=0.5, k=0.3)
        for sig in ALL_SIGNATURES:
            k1, _ = kappas(sig)
            for _ in range(5):
                ps = PolarState(rng.uniform(0.5, 1.2), rng.uniform(0.5, 1.2),
                                rng.uniform(-1, 1), rng.uniform(-1, 1))
                for fam in (Family.FREE, Family.SW, Family.KC):
                    hs = h_polar(ps, m, sig, fam, Variant.SUPERINTEGRABLE)
                    hi = h_polar(ps, m, sig, fam, Variant.INTEGRABLE)
                    # bitwise, not approximately: the code factors the cosine
                    assert gcos(k1, ps.r) * hs == hi

    def test_polar_hamiltonian_commutes_with_its_casimir(self):
        rng = np.random.default_rng(24)
        m = _params(b1=0.4, b2=0.3, beta0=0.6, k=0.2)
        for sig in ALL_SIGNATURES:
            ps = PolarState(rng.uniform(0.6, 1.1), rng.uniform(0.6, 1.1),
                            rng.uniform(-1, 1), rng.uniform(-1, 1))

            def h(st):
                return h_polar(st, m, sig, Family.SW)

            def c(st):
                return casimir_polar(st, m, sig)

            assert abs(poisson_bracket_polar(h, c, ps)) < 1e-9

    def test_grad_polar_matches_finite_differences(self):
        m = _params(b1=0.5, b2=0.2, beta0=0.4)

        def h(st):
            return h_polar(st, m, (1, 1), Family.SW)

        ps = PolarState(0.8, 0.7, 0.3, -0.4)
        g = grad_polar(h, ps)
        eps = 1e-6
        up = h(PolarState(0.8 + eps, 0.7, 0.3, -0.4))
        dn = h(PolarState(0.8 - eps, 0.7, 0.3, -0.4))
        assert g[0] == pytest.approx((up - dn) / (2 * eps), rel=1e-6)


class TestSplit:
    def test_rejects_nondegenerate_signatures(self):
        spec = HamiltonianSpec(Family.FREE, Variant.INTEGRABLE, Coords.BELTRAMI,
                               _params(), (1, 1))
        with pytest.raises(ValueError):
            split_base_fiber(spec)
        with pytest.raises(ValueError):
            split_reference(spec)

    def test_galilei_canonical_split_hand_forms(self):
        # kappa1 = 0 kills both exponents: J+ separates cleanly
        m = _params(z=0.7, b1=0.6, b2=0.4)
        spec = HamiltonianSpec(Family.FREE, Variant.INTEGRABLE, Coords.BELTRAMI,
                               m, (0, 0))
        split = split_base_fiber(spec)
        s = BeltramiState(0.8, 1.1, 0.3, -0.5)
        fiber = 0.5 * (0.3 ** 2 + 0.6 / 0.8 ** 2)
        base = 0.5 * ((-0.5) ** 2 + 0.4 / 1.1 ** 2)
        assert split.fiber(s) == pytest.approx(fiber, rel=1e-14)
        assert split.base(s) == pytest.approx(base, rel=1e-14)

    def test_newton_fiber_carries_the_exponential_tilt(self):
        m = _params(z=0.5, b1=2.0)
        spec = HamiltonianSpec(Family.FREE, Variant.INTEGRABLE, Coords.BELTRAMI,
                               m, (1, 0))
        split = split_base_fiber(spec)
        s = BeltramiState(1.0, 1.0, 0.0, 0.0)
        # (1/2) b1/q1**2 * exp(z q2**2) = exp(1/2)
        assert split.fiber(s) == pytest.approx(math.exp(0.5), rel=1e-14)

    def test_polar_sw_hand_forms(self):
        m = _params(b1=1.0, b2=0.5, beta0=0.5)
        spec = HamiltonianSpec(Family.SW, Variant.INTEGRABLE, Coords.POLAR,
                               m, (0, 0))
        split = split_base_fiber(spec)
        ps = PolarState(1.0, 0.8, 0.2, 0.4)
        assert split.fiber(ps) == pytest.approx(3.205, rel=1e-14)
        assert split.base(ps) == pytest.approx(1.52, rel=1e-14)

    def test_jet_split_matches_reference_closed_forms(self):
        rng = np.random.default_rng(25)
        m = _params(z=0.25, b1=0.8, b2=0.6, beta0=0.5, k=0.4)
        for sig in DEGENERATE:
            s = BeltramiState(*rng.uniform(0.6, 1.2, 2), *rng.uniform(-1, 1, 2))
            spec = HamiltonianSpec(Family.FREE, Variant.INTEGRABLE,
                                   Coords.BELTRAMI, m, sig)
            jet, ref = split_base_fiber(spec), split_reference(spec)
            assert jet.fiber(s) == pytest.approx(ref.fiber(s), rel=1e-12)
            assert jet.base(s) == pytest.approx(ref.base(s), rel=1e-12)
            ps = PolarState(rng.uniform(0.6, 1.2), rng.uniform(0.6, 1.2),
                            rng.uniform(-1, 1), rng.uniform(-1, 1))
            for fam in (Family.FREE, Family.SW, Family.KC):
                pspec = HamiltonianSpec(fam, Variant.SUPERINTEGRABLE,
                                        Coords.POLAR, m, sig)
                jet, ref = split_base_fiber(pspec), split_reference(pspec)
                assert jet.fiber(ps) == pytest.approx(ref.fiber(ps), rel=1e-12)
                assert jet.base(ps) == pytest.approx(ref.base(ps), rel=1e-12)

    def test_fiber_value_is_family_independent(self):
        m = _params(z=0.2, b1=0.5, b2=0.3, beta0=0.7, k=0.4)
        s = BeltramiState(0.9, 1.2, 0.1, 0.2)
        ps = PolarState(0.9, 0.7, 0.1, 0.2)
        for sig in DEGENERATE:
            vals = []
            pvals = []
            for fam in (Family.FREE, Family.SW, Family.KC):
                spec = HamiltonianSpec(fam, Variant.INTEGRABLE, Coords.BELTRAMI,
                                       m, sig)
                vals.append(split_base_fiber(spec).fiber(s))
                pspec = HamiltonianSpec(fam, Variant.INTEGRABLE, Coords.POLAR,
                                        m, sig)
                pvals.append(split_base_fiber(pspec).fiber(ps))
            assert vals[0] == vals[1] == vals[2]
            assert pvals[0] == pvals[1] == pvals[2]


def test_spec_driven_callables():
    m = _params(z=0.15, b1=0.3, b2=0.2, beta0=0.4, k=0.6)
    spec = HamiltonianSpec(Family.SW, Variant.INTEGRABLE, Coords.BELTRAMI,
                           m, (-1, 1))
    s = BeltramiState(0.9, 1.0, -0.2, 0.4)
    assert hamiltonian(spec)(s) == h_sw(s, m, (-1, 1))
    assert conserved_quantity(spec)(s) == casimir_two_particle(s, m, (-1, 1))
    pspec = HamiltonianSpec(Family.KC, Variant.SUPERINTEGRABLE, Coords.POLAR,
                            m, (1, 1))
    ps = PolarState(0.8, 0.9, 0.1, -0.3)
    assert hamiltonian(pspec)(ps) == h_polar(ps, m, (1, 1), Family.KC,
                                             Variant.SUPERINTEGRABLE)
    assert conserved_quantity(pspec)(ps) == casimir_polar(ps, m, (1, 1))
