"""Self-verification suites with seeded sampling and JSON reports.

Five suites: bracket relations, Casimir commutation plus the two-route
Casimir agreement, base/fiber split cross-checks with the superintegrable
relation, flow conservation plus closed-form trajectory oracles, and
geometry (chart round-trips, curvature, metric degeneracy, kappa
continuity).  Every suite is deterministic given (samples, seed) and
reports per-signature maxima against the library's frozen tolerances.
"""

from __future__ import annotations

import json
import math

import numpy as np

from . import engine
from .coalgebra import BeltramiState, ModelParams, generators
from .dynamics import (SolutionKind, Trajectory, base_flow, closed_form,
                       conic_residual, hamiltonian_flow)
from .errors import CKError
from .geometry import (PolarState, beltrami_state_of, gaussian_curvature,
                       metric_at, polar_state_of)
from .hamiltonians import (Coords, Family, HamiltonianSpec, Variant,
                           h_beltrami, h_polar, hamiltonian, split_base_fiber,
                           split_reference)
from .kernels import gcos, gsin, gtan
from .spaces import SPACES, all_spaces, kappas

TOLERANCES = {
    "bracket": 1e-9,
    "casimir_commutator": 1e-9,
    "dual_path": 1e-10,
    "conservation": 1e-6,
    "oracle": 1e-6,
    "conic": 1e-6,
    "fiber_constancy": 1e-12,
    "base_constant": 1e-8,
    "split": 1e-12,
    "super_relation": 1e-13,
    "roundtrip": 1e-10,
    "curvature": 1e-4,
    "kappa_continuity": 1e-5,
}

Z_GRID = (-1.0, -0.5, 0.0, 0.5, 1.0)
B_GRID = ((0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0))

FAMILIES = (Family.FREE, Family.SW, Family.KC)
VARIANTS = (Variant.INTEGRABLE, Variant.SUPERINTEGRABLE)


def _draw_states(rng, n, qlo, qhi, plo, phi):
    out = np.empty((n, 4))
    out[:, 0] = rng.uniform(qlo, qhi, n)
    out[:, 1] = rng.uniform(qlo, qhi, n)
    out[:, 2] = rng.uniform(plo, phi, n)
    out[:, 3] = rng.uniform(plo, phi, n)
    return out


def _draw_wedge_states(rng, n):
    # q2 > q1 keeps jminus and the chart radius positive on kappa2 = -1
    out = np.empty((n, 4))
    out[:, 0] = rng.uniform(0.5, 0.8, n)
    out[:, 1] = rng.uniform(0.9, 1.2, n)
    out[:, 2] = rng.uniform(-1.0, 1.0, n)
    out[:, 3] = rng.uniform(-1.0, 1.0, n)
    return out


def _draw_polar_states(rng, n, rlo=0.4, tlo=0.4):
    out = np.empty((n, 4))
    out[:, 0] = rng.uniform(rlo, 1.2, n)
    out[:, 1] = rng.uniform(tlo, 1.3, n)
    out[:, 2] = rng.uniform(-1.0, 1.0, n)
    out[:, 3] = rng.uniform(-1.0, 1.0, n)
    return out


def suite_brackets(samples=1000, seed=2024, backend=None):
    """Deviation of the three deformed bracket relations from closed form."""
    eng = engine.get_backend(backend)
    rng = np.random.default_rng(seed)
    states = _draw_states(rng, samples, 0.5, 2.0, -1.0, 1.0)
    per_sig = {}
    worst = 0.0
    for sp in all_spaces():
        k1, k2 = kappas(sp.signature)
        acc = np.zeros(3)
        for z in Z_GRID:
            for b1, b2 in B_GRID:
                res = eng.bracket_stats(states, z, b1, b2, k1, k2)
                acc = np.maximum(acc, np.abs(res[:, :3]).max(axis=0))
        entry = {"r1": float(acc[0]), "r2": float(acc[1]),
                 "r3": float(acc[2]), "max": float(acc.max())}
        per_sig[sp.name] = entry
        worst = max(worst, entry["max"])
    return {"suite": "brackets", "backend": eng.name, "samples": int(samples),
            "seed": int(seed), "tolerance": TOLERANCES["bracket"],
            "per_signature": per_sig, "max_residual": worst,
            "pass": bool(worst < TOLERANCES["bracket"])}


def suite_casimir(samples=1000, seed=2024, backend=None):
    """Casimir-generator commutators and the two evaluation routes."""
    eng = engine.get_backend(backend)
    rng = np.random.default_rng(seed)
    states = _draw_states(rng, samples, 0.5, 2.0, -1.0, 1.0)
    per_sig = {}
    worst_comm = 0.0
    worst_dual = 0.0
    for sp in all_spaces():
        k1, k2 = kappas(sp.signature)
        comm = np.zeros(3)
        dual = 0.0
        for z in Z_GRID:
            for b1, b2 in B_GRID:
                res = eng.bracket_stats(states, z, b1, b2, k1, k2)
                comm = np.maximum(comm, np.abs(res[:, 3:6]).max(axis=0))
                dual = max(dual, float(np.abs(res[:, 6]).max()))
        entry = {"c_jminus": float(comm[0]), "c_j3": float(comm[1]),
                 "c_jplus": float(comm[2]), "dual_path": dual,
                 "max_commutator": float(comm.max())}
        per_sig[sp.name] = entry
        worst_comm = max(worst_comm, entry["max_commutator"])
        worst_dual = max(worst_dual, dual)
    ok = (worst_comm < TOLERANCES["casimir_commutator"]
          and worst_dual < TOLERANCES["dual_path"])
    return {"suite": "casimir", "backend": eng.name, "samples": int(samples),
            "seed": int(seed),
            "tolerances": {"commutator": TOLERANCES["casimir_commutator"],
                           "dual_path": TOLERANCES["dual_path"]},
            "per_signature": per_sig, "max_commutator": worst_comm,
            "max_dual_path": worst_dual, "pass": bool(ok)}


def suite_split(samples=500, seed=2024, backend=None):
    """Jet split vs hand-coded forms, and the exact variant relation."""
    rng = np.random.default_rng(seed)
    belt = _draw_states(rng, samples, 0.5, 2.0, -1.0, 1.0)
    polar = _draw_polar_states(rng, samples)
    m = ModelParams(z=0.25, b1=0.8, b2=0.6, beta0=0.5, k=0.4)
    per_config = {}
    worst_split = 0.0

    def compare(spec, states, to_state):
        js = split_base_fiber(spec)
        ref = split_reference(spec)
        df = db = 0.0
        for row in states:
            s = to_state(row)
            df = max(df, abs(js.fiber(s) - ref.fiber(s)))
            db = max(db, abs(js.base(s) - ref.base(s)))
        return df, db

    for sp in all_spaces():
        if not sp.degenerate:
            continue
        spec = HamiltonianSpec(Family.FREE, Variant.INTEGRABLE,
                               Coords.BELTRAMI, m, sp.signature)
        df, db = compare(spec, belt, lambda row: BeltramiState(*row))
        per_config[f"{sp.name}/beltrami/free/integrable"] = {
            "fiber": float(df), "base": float(db)}
        worst_split = max(worst_split, df, db)
        for family in FAMILIES:
            for variant in VARIANTS:
                spec = HamiltonianSpec(family, variant, Coords.POLAR, m,
                                       sp.signature)
                df, db = compare(spec, polar, lambda row: PolarState(*row))
                key = f"{sp.name}/polar/{family.value}/{variant.value}"
                per_config[key] = {"fiber": float(df), "base": float(db)}
                worst_split = max(worst_split, df, db)

    worst_super = 0.0
    for sp in all_spaces():
        k1, _ = kappas(sp.signature)
        msp = ModelParams(z=0.25, b1=0.8, b2=0.6, beta0=0.5, k=0.4,
                          sign=sp.default_sign)
        for family in FAMILIES:
            for row in polar:
                ps = PolarState(*row)
                hs = h_polar(ps, msp, sp.signature, family,
                             Variant.SUPERINTEGRABLE)
                hi = h_polar(ps, msp, sp.signature, family,
                             Variant.INTEGRABLE)
                worst_super = max(worst_super,
                                  abs(hs * gcos(k1, ps.r) - hi))

    ok = (worst_split < TOLERANCES["split"]
          and worst_super < TOLERANCES["super_relation"])
    return {"suite": "split", "samples": int(samples), "seed": int(seed),
            "tolerances": {"split": TOLERANCES["split"],
                           "super_relation": TOLERANCES["super_relation"]},
            "per_config": per_config, "max_split_residual": float(worst_split),
            "max_super_residual": float(worst_super), "pass": bool(ok)}


def _relative_drift(values):
    v0 = values[0]
    return float(np.max(np.abs(values - v0)) / max(abs(v0), 1e-30))


def _conserving_run(spec, rng, dt, steps, backend, tries=30):
    """Deterministic retry search for initial data whose flow stays regular.

    Acceptance is a chart-health condition, not a drift condition: the run
    must finish without hitting a guard, keep both deformation exponents
    z*|k1*k2|*q1^2 and z*|k1|*q2^2 at most 1 (so the exponential factors
    stay order e), and keep momenta moderate.  Drift is then measured, never
    selected on.
    """
    k1, k2 = kappas(spec.sig)
    z = abs(spec.params.z)
    tight = spec.family is Family.KC and k2 < 0
    h = hamiltonian(spec)
    for attempt in range(1, tries + 1):
        if tight:
            q1 = rng.uniform(0.3, 0.5)
            q2 = rng.uniform(1.2, 1.5)
            p1, p2 = rng.uniform(-0.2, 0.2, 2)
        else:
            q1, q2 = rng.uniform(0.8, 1.2, 2)
            p1, p2 = rng.uniform(-0.15, 0.15, 2)
        s0 = BeltramiState(q1, q2, p1, p2)
        try:
            h0 = h(s0)
        except CKError:
            continue
        if abs(h0) < 0.1:
            continue
        traj = hamiltonian_flow(spec, s0, dt, steps, backend=backend)
        if traj.termination is not None:
            continue
        q1m = float(np.abs(traj.states[:, 0]).max())
        q2m = float(np.abs(traj.states[:, 1]).max())
        if abs(k1 * k2) * z * q1m ** 2 > 1.0 or abs(k1) * z * q2m ** 2 > 1.0:
            continue
        if np.abs(traj.states[:, 2:]).max() > 3.0:
            continue
        return (_relative_drift(traj.energy), _relative_drift(traj.casimir),
                attempt)
    return float("inf"), float("inf"), tries


def suite_oracle(samples=None, seed=2024, backend=None):
    """Flow conservation plus the closed-form trajectory oracles."""
    del samples  # scenario-driven; kept for a uniform suite signature
    per_system = {}
    worst_h = worst_c = 0.0
    for i, sp in enumerate(all_spaces()):
        for j, family in enumerate(FAMILIES):
            # kappa2 = -1 with the default sign -1 turns the b1 barrier
            # attractive (generic collapse), so that coupling stays off
            # there.  z is small because the free family has no confined
            # orbits on the curved signatures: trajectories escape toward
            # the chart boundary, and only slow escape keeps the run inside
            # the region where fixed-step integration is meaningful.
            b1 = 0.3 if sp.signature.kappa2 >= 0 else 0.0
            m = ModelParams(z=0.005, b1=b1, b2=0.4, beta0=0.5, k=0.4,
                            sign=sp.default_sign)
            spec = HamiltonianSpec(family, Variant.INTEGRABLE,
                                   Coords.BELTRAMI, m, sp.signature)
            rng = np.random.default_rng(seed + 1000 * i + 100 * j)
            hd, cd, attempts = _conserving_run(spec, rng, 1e-3, 10000,
                                               backend)
            per_system[f"{sp.name}/{family.value}"] = {
                "h_drift": hd, "c_drift": cd, "tries": attempts}
            worst_h = max(worst_h, hd)
            worst_c = max(worst_c, cd)

    oracles = {}
    worst_oracle = 0.0
    worst_conic = 0.0
    worst_fiber = 0.0

    def flat_case(name, b1, b2, q1, q2):
        nonlocal worst_oracle, worst_conic, worst_fiber
        sp = SPACES[name]
        m = ModelParams(z=0.1, b1=b1, b2=b2, sign=sp.default_sign)
        s0 = BeltramiState(q1, q2, 0.0, 0.0)
        spec = HamiltonianSpec(Family.FREE, Variant.INTEGRABLE,
                               Coords.BELTRAMI, m, sp.signature)
        traj = hamiltonian_flow(spec, s0, 1e-3, 5000, backend=backend)
        s1 = closed_form(SolutionKind.FLAT_Q1, m, sp.signature, s0)
        s2 = closed_form(SolutionKind.FLAT_Q2, m, sp.signature, s0)
        d1 = float(np.max(np.abs(traj.states[:, 0] ** 2
                                 - s1.q_squared(traj.times))))
        d2 = float(np.max(np.abs(traj.states[:, 1] ** 2
                                 - s2.q_squared(traj.times))))
        conic = conic_residual(traj, s1, s2, sp.signature)
        worst_oracle = max(worst_oracle, d1, d2)
        worst_conic = max(worst_conic, conic)
        entry = {"q1_sq": d1, "q2_sq": d2, "conic": conic}
        if sp.degenerate:
            fib = float(np.max(np.abs(traj.states[:, 1] - s0.q2)))
            entry["fiber_constancy"] = fib
            worst_fiber = max(worst_fiber, fib)
        return entry

    oracles["euclidean"] = flat_case("euclidean", 0.6, 0.8, 1.0, 1.2)
    oracles["minkowski"] = flat_case("minkowski", 0.6, 0.8, 1.0, 1.2)
    oracles["galilei"] = flat_case("galilei", 0.6, 0.8, 1.0, 1.2)
    oracles["euclidean_symmetric"] = flat_case("euclidean", 0.5, 0.5, 1.0, 1.0)

    for name in ("newton_plus", "newton_minus"):
        sp = SPACES[name]
        m = ModelParams(z=0.5, b1=2.0, b2=0.0)
        s0 = BeltramiState(1.0, 1.0, 0.0, 0.0)
        spec = HamiltonianSpec(Family.FREE, Variant.INTEGRABLE,
                               Coords.BELTRAMI, m, sp.signature)
        traj = hamiltonian_flow(spec, s0, 1e-3, 5000, backend=backend)
        sol = closed_form(SolutionKind.NEWTON_FIBER, m, sp.signature, s0)
        dev = float(np.max(np.abs(traj.states[:, 0] ** 2
                                  - sol.q_squared(traj.times))))
        fib = float(np.max(np.abs(traj.states[:, 1] - s0.q2)))
        oracles[name] = {"q1_sq": dev, "b_eff": float(sol.b_eff),
                         "fiber_constancy": fib}
        worst_oracle = max(worst_oracle, dev)
        worst_fiber = max(worst_fiber, fib)

    sp = SPACES["galilei"]
    m = ModelParams(z=0.1, b1=0.6, b2=0.8)
    spec = HamiltonianSpec(Family.FREE, Variant.INTEGRABLE, Coords.BELTRAMI,
                           m, sp.signature)
    split = split_base_fiber(spec)
    s0 = BeltramiState(1.0, 1.0, 0.4, 0.3)
    traj = base_flow(split, s0, 2.5e-3, 2000)
    sol = closed_form(SolutionKind.BASE_Q2, m, sp.signature, s0)
    dev = float(np.max(np.abs(traj.states[:, 1] ** 2
                              - sol.q_squared(traj.times))))
    ehat = float(np.max(np.abs(traj.casimir - traj.casimir[0])))
    oracles["galilei_base"] = {"q2_sq": dev, "base_constant_drift": ehat}
    worst_oracle = max(worst_oracle, dev)

    ok = (worst_h < TOLERANCES["conservation"]
          and worst_c < TOLERANCES["conservation"]
          and worst_oracle < TOLERANCES["oracle"]
          and worst_conic < TOLERANCES["conic"]
          and worst_fiber < TOLERANCES["fiber_constancy"]
          and ehat < TOLERANCES["base_constant"])
    return {"suite": "oracle", "seed": int(seed),
            "tolerances": {"conservation": TOLERANCES["conservation"],
                           "oracle": TOLERANCES["oracle"],
                           "conic": TOLERANCES["conic"],
                           "fiber_constancy": TOLERANCES["fiber_constancy"],
                           "base_constant": TOLERANCES["base_constant"]},
            "conservation": {"per_system": per_system,
                             "max_h_drift": worst_h,
                             "max_c_drift": worst_c},
            "oracles": oracles, "max_oracle_dev": worst_oracle,
            "max_conic": worst_conic, "max_fiber_constancy": worst_fiber,
            "pass": bool(ok)}


def _reference_curvature_sphere(r):
    # closed form for the (1, 1) signature metric diag(1/cos r, sin^2 r/cos r)
    return -math.sin(r) ** 2 / (2.0 * math.cos(r))


def suite_geometry(samples=1000, seed=2024, backend=None):
    """Chart round-trips, curvature cross-check, degeneracy, continuity."""
    del backend  # geometry is pure Python by construction
    rng = np.random.default_rng(seed)
    per_sig = {}
    worst_rt = 0.0
    for sp in all_spaces():
        _, k2 = kappas(sp.signature)
        if k2 < 0:
            states = _draw_wedge_states(rng, samples)
        else:
            states = _draw_states(rng, samples, 0.5, 1.2, -1.0, 1.0)
        worst = 0.0
        for row in states:
            s = BeltramiState(*row)
            ps = polar_state_of(s, sp.signature)
            back = beltrami_state_of(ps, sp.signature)
            worst = max(worst, abs(back.q1 - s.q1), abs(back.q2 - s.q2),
                        abs(back.p1 - s.p1), abs(back.p2 - s.p2))
        per_sig[sp.name] = float(worst)
        worst_rt = max(worst_rt, worst)

    curv_max = 0.0
    for r in [0.1 * k for k in range(1, 11)]:
        got = gaussian_curvature(r, (1, 1))
        curv_max = max(curv_max, abs(got - _reference_curvature_sphere(r)))

    g = metric_at(1.7, (0, 0))
    galilei_exact = (g.g_rr == 1.0 and g.g_thth == 0.0
                     and g.fiber_g_thth == 1.7 * 1.7)

    # continuity box keeps r away from the chart origin: near r = 0 the
    # 1/(2*S1^2) factor amplifies the kappa derivative past the tolerance
    eps = 1e-6
    n_cont = 50
    xs = rng.uniform(0.4, 1.3, n_cont)
    cont_states = [BeltramiState(*row) for row in _draw_wedge_states(rng, n_cont)]
    cont_polar = [PolarState(*row)
                  for row in _draw_polar_states(rng, n_cont, rlo=0.7, tlo=0.6)]
    mc = ModelParams(z=0.3, b1=1.0, b2=1.0, beta0=0.5, k=0.4)

    kern_max = 0.0
    for x in xs:
        for e in (eps, -eps):
            kern_max = max(kern_max,
                           abs(gsin(e, x) - x),
                           abs(gcos(e, x) - 1.0),
                           abs(gtan(e, x) - x))

    gen_max = 0.0
    ham_max = 0.0
    for e in (eps, -eps):
        for other in (1.0, 0.0, -1.0):
            pairs = (((e, other), (0.0, other)), ((other, e), (other, 0.0)))
            for near, base in pairs:
                for s in cont_states:
                    ga = generators(s, mc, near)
                    gb = generators(s, mc, base)
                    gen_max = max(gen_max,
                                  abs(ga.jminus - gb.jminus),
                                  abs(ga.j3 - gb.j3),
                                  abs(ga.jplus - gb.jplus))
                    for family in FAMILIES:
                        ham_max = max(ham_max,
                                      abs(h_beltrami(s, mc, near, family)
                                          - h_beltrami(s, mc, base, family)))
                for ps in cont_polar:
                    for family in FAMILIES:
                        ham_max = max(ham_max,
                                      abs(h_polar(ps, mc, near, family)
                                          - h_polar(ps, mc, base, family)))

    cont_max = max(kern_max, gen_max, ham_max)
    ok = (worst_rt < TOLERANCES["roundtrip"]
          and curv_max < TOLERANCES["curvature"]
          and galilei_exact
          and cont_max < TOLERANCES["kappa_continuity"])
    return {"suite": "geometry", "samples": int(samples), "seed": int(seed),
            "tolerances": {"roundtrip": TOLERANCES["roundtrip"],
                           "curvature": TOLERANCES["curvature"],
                           "kappa_continuity": TOLERANCES["kappa_continuity"]},
            "roundtrip": {"per_signature": per_sig, "max": worst_rt},
            "curvature_max_error": float(curv_max),
            "galilei_metric_exact": bool(galilei_exact),
            "continuity": {"kernels": float(kern_max),
                           "generators": float(gen_max),
                           "hamiltonians": float(ham_max),
                           "max": float(cont_max)},
            "pass": bool(ok)}


SUITES = {
    "brackets": suite_brackets,
    "casimir": suite_casimir,
    "split": suite_split,
    "oracle": suite_oracle,
    "geometry": suite_geometry,
}


def run_suites(names=None, samples=None, seed=2024, backend=None):
    """Run the named suites (all by default) and aggregate pass/fail."""
    if names is None or names == ("all",) or names == ["all"]:
        names = tuple(SUITES)
    reports = {}
    for nm in names:
        if nm not in SUITES:
            raise ValueError(f"unknown suite {nm!r}; expected one of "
                             f"{', '.join(SUITES)} or all")
        fn = SUITES[nm]
        if samples is None:
            reports[nm] = fn(seed=seed, backend=backend)
        else:
            reports[nm] = fn(samples=samples, seed=seed, backend=backend)
    return {"seed": int(seed), "backend": engine.get_backend(backend).name,
            "suites": reports,
            "pass": bool(all(r["pass"] for r in reports.values()))}


def to_json(report) -> str:
    return json.dumps(report, sort_keys=True, indent=2)
