"""Backend selection and pure vs compiled agreement."""

import numpy as np
import pytest

from cksim import engine
from cksim.coalgebra import BeltramiState, ModelParams
from cksim.dynamics import hamiltonian_flow
from cksim.hamiltonians import Coords, Family, HamiltonianSpec, Variant

HAVE_COMPILED = "compiled" in engine.available_backends()
needs_compiled = pytest.mark.skipif(not HAVE_COMPILED,
                                    reason="compiled core not built")


def test_pure_backend_always_available():
    assert "pure" in engine.available_backends()
    assert engine.get_backend("pure").name == "pure"


def test_unknown_backend_rejected():
    with pytest.raises(ValueError):
        engine.get_backend("gpu")


def test_env_var_selects_backend(monkeypatch):
    monkeypatch.setenv("CKSIM_BACKEND", "pure")
    assert engine.get_backend(None).name == "pure"
    monkeypatch.delenv("CKSIM_BACKEND")
    assert engine.get_backend(None).name in ("pure", "compiled")


@needs_compiled
def test_bracket_stats_backends_agree():
    rng = np.random.default_rng(41)
    states = np.column_stack([rng.uniform(0.5, 2.0, (50, 2)),
                              rng.uniform(-1.0, 1.0, (50, 2))])
    out = {}
    for name in ("pure", "compiled"):
        be = engine.get_backend(name)
        out[name] = np.asarray(be.bracket_stats(states, 0.4, 0.7, 0.3, 1.0, -1.0))
    assert out["pure"].shape == (50, 7)
    assert np.max(np.abs(out["pure"] - out["compiled"])) < 1e-13


def test_bracket_stats_residuals_are_small():
    rng = np.random.default_rng(42)
    states = np.column_stack([rng.uniform(0.5, 2.0, (100, 2)),
                              rng.uniform(-1.0, 1.0, (100, 2))])
    be = engine.get_backend("pure")
    stats = np.asarray(be.bracket_stats(states, -0.5, 1.0, 1.0, -1.0, 1.0))
    # columns: three bracket residuals, three casimir commutators, dual path
    assert np.max(np.abs(stats[:, :3])) < 1e-9
    assert np.max(np.abs(stats[:, 3:6])) < 1e-9
    assert np.max(np.abs(stats[:, 6])) < 1e-10


@needs_compiled
def test_flow_backends_agree():
    spec = HamiltonianSpec(Family.SW, Variant.INTEGRABLE, Coords.BELTRAMI,
                           ModelParams(z=0.1, b1=0.3, b2=0.4, beta0=0.5),
                           (1, 1))
    s0 = BeltramiState(1.0, 1.1, 0.05, -0.1)
    a = hamiltonian_flow(spec, s0, 1e-3, 300, backend="pure")
    b = hamiltonian_flow(spec, s0, 1e-3, 300, backend="compiled")
    assert np.max(np.abs(a.states - b.states)) < 1e-12
    assert np.max(np.abs(a.energy - b.energy)) < 1e-12


@needs_compiled
def test_termination_parity():
    # the collapse step index must not depend on the backend
    spec = HamiltonianSpec(Family.FREE, Variant.INTEGRABLE, Coords.BELTRAMI,
                           ModelParams(z=0.05, b1=0.6, b2=0.4, sign=-1),
                           (1, -1))
    s0 = BeltramiState(0.5, 1.1, 0.1, -0.2)
    a = hamiltonian_flow(spec, s0, 1e-3, 10000, backend="pure")
    b = hamiltonian_flow(spec, s0, 1e-3, 10000, backend="compiled")
    assert a.termination is not None and b.termination is not None
    assert a.termination.kind == b.termination.kind
    assert a.termination.step == b.termination.step


@needs_compiled
def test_polar_flow_backends_agree():
    from cksim.geometry import PolarState

    spec = HamiltonianSpec(Family.KC, Variant.SUPERINTEGRABLE, Coords.POLAR,
                           ModelParams(b1=0.2, b2=0.3, k=0.4), (1, 1))
    ps0 = PolarState(0.9, 0.8, 0.1, 0.2)
    a = hamiltonian_flow(spec, ps0, 1e-3, 300, backend="pure")
    b = hamiltonian_flow(spec, ps0, 1e-3, 300, backend="compiled")
    assert np.max(np.abs(a.states - b.states)) < 1e-12


def test_flow_for_spec_accepts_string_integrator():
    spec = HamiltonianSpec(Family.FREE, Variant.INTEGRABLE, Coords.BELTRAMI,
                           ModelParams(z=0.1, b1=0.3, b2=0.4), (0, 1))
    y0 = np.array([1.0, 1.0, 0.1, 0.1])
    states, energy, casimir, kind, step = engine.flow_for_spec(
        spec, y0, 1e-3, 20, integrator="midpoint")
    assert states.shape == (21, 4)
    assert np.all(np.isfinite(energy))
