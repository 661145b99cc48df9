"""Command-line front end: simulate, verify, split, geometry, spaces.

Configuration comes from flags and/or a JSON config file; explicit flags
override file values.  Trajectories are written as CSV with 17 significant
digits; reports and sidecars are stable JSON (sorted keys), so identical
configs produce byte-identical output.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import verify as verify_mod
from .coalgebra import BeltramiState, ModelParams, grad
from .dynamics import (Integrator, SolutionKind, base_flow, closed_form,
                       conic_residual, hamiltonian_flow)
from .errors import CKError, DegenerateMetric
from .geometry import (PolarState, beltrami_state_of, gaussian_curvature,
                       metric_at, polar_state_of)
from .hamiltonians import (Coords, Family, HamiltonianSpec, Variant,
                           grad_polar, split_base_fiber)
from .spaces import all_spaces, space_by_name, space_for_signature

CSV_HEADER_BELTRAMI = ("t", "q1", "q2", "p1", "p2", "H", "C")
CSV_HEADER_POLAR = ("t", "r", "theta", "pr", "ptheta", "H", "C")


@dataclass
class RunConfig:
    """Resolved run parameters; every field has a scriptable default."""

    space: str | None = None
    kappa1: int | None = None
    kappa2: int | None = None
    coords: str = "beltrami"
    family: str = "free"
    variant: str = "integrable"
    z: float = 0.0
    b1: float = 0.0
    b2: float = 0.0
    beta0: float = 0.0
    k: float = 0.0
    sign: int | None = None
    q: tuple[float, float] | None = None
    p: tuple[float, float] | None = None
    r: float | None = None
    theta: float | None = None
    pr: float | None = None
    ptheta: float | None = None
    dt: float = 1e-3
    steps: int = 1000
    integrator: str = "rk4"
    seed: int = 2024
    out: str | None = None
    format: str = "csv"


def load_config(args) -> RunConfig:
    """File values first, then any flag the user actually passed."""
    cfg = RunConfig()
    names = {f.name for f in dataclasses.fields(RunConfig)}
    path = getattr(args, "config", None)
    if path:
        with open(path) as fh:
            file_values = json.load(fh)
        for key, val in file_values.items():
            if key not in names:
                raise ValueError(f"unknown config key {key!r}")
            setattr(cfg, key, tuple(val) if isinstance(val, list) else val)
    for key in names:
        val = getattr(args, key, None)
        if val is not None:
            setattr(cfg, key, tuple(val) if isinstance(val, list) else val)
    return cfg


def resolve_space(cfg: RunConfig):
    if cfg.space is not None:
        return space_by_name(cfg.space)
    if cfg.kappa1 is not None and cfg.kappa2 is not None:
        return space_for_signature((cfg.kappa1, cfg.kappa2))
    raise ValueError("specify --space or both --kappa1 and --kappa2")


def build_spec(cfg: RunConfig):
    sp = resolve_space(cfg)
    sign = sp.default_sign if cfg.sign is None else cfg.sign
    m = ModelParams(z=cfg.z, b1=cfg.b1, b2=cfg.b2, beta0=cfg.beta0,
                    k=cfg.k, sign=sign)
    spec = HamiltonianSpec(Family(cfg.family), Variant(cfg.variant),
                           Coords(cfg.coords), m, sp.signature)
    return sp, spec


def initial_state(cfg: RunConfig):
    if cfg.coords == "polar":
        return PolarState(1.0 if cfg.r is None else cfg.r,
                          0.5 if cfg.theta is None else cfg.theta,
                          0.0 if cfg.pr is None else cfg.pr,
                          0.0 if cfg.ptheta is None else cfg.ptheta)
    q = cfg.q if cfg.q is not None else (1.0, 1.0)
    p = cfg.p if cfg.p is not None else (0.0, 0.0)
    return BeltramiState(q[0], q[1], p[0], p[1])


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _state_doc(vec, names):
    return {n: float(v) for n, v in zip(names[1:5], vec)}


def _csv_text(traj, names) -> str:
    lines = [",".join(names)]
    for i in range(len(traj)):
        row = [traj.times[i], *traj.states[i], traj.energy[i],
               traj.casimir[i]]
        lines.append(",".join(_fmt(float(v)) for v in row))
    return "\n".join(lines) + "\n"


def _termination_doc(traj):
    if traj.termination is None:
        return None
    ev = traj.termination
    return {"kind": ev.kind, "step": int(ev.step), "time": float(ev.time)}


def _flat_constants(spec, s0, traj):
    """Closed-form constants for the runs that admit them."""
    out = {}
    if (spec.coords is not Coords.BELTRAMI or spec.family is not Family.FREE
            or spec.variant is not Variant.INTEGRABLE):
        return out
    m = spec.params
    k1 = spec.sig.kappa1
    k2 = spec.sig.kappa2
    sols = {}
    if k1 == 0:
        kinds = {"q1": SolutionKind.FLAT_Q1, "q2": SolutionKind.FLAT_Q2}
    elif k2 == 0:
        kinds = {"q1": SolutionKind.NEWTON_FIBER}
    else:
        return out
    for label, kind in kinds.items():
        try:
            sol = closed_form(kind, m, spec.sig, s0)
        except CKError:
            continue
        sols[label] = sol
        out[label] = {"E": None if sol.E is None else float(sol.E),
                      "t0": None if sol.t0 is None else float(sol.t0),
                      "b_eff": float(sol.b_eff)}
    s1, s2 = sols.get("q1"), sols.get("q2")
    if s1 and s2 and s1.E and s2.E:
        try:
            out["conic_residual"] = float(conic_residual(traj, s1, s2,
                                                         spec.sig))
        except CKError:
            pass
    return out


def cmd_simulate(cfg: RunConfig) -> int:
    sp, spec = build_spec(cfg)
    s0 = initial_state(cfg)
    traj = hamiltonian_flow(spec, s0, cfg.dt, cfg.steps,
                            integrator=Integrator(cfg.integrator))
    names = CSV_HEADER_POLAR if cfg.coords == "polar" else CSV_HEADER_BELTRAMI
    sidecar = {
        "space": sp.name,
        "signature": [sp.signature.kappa1, sp.signature.kappa2],
        "coords": cfg.coords, "family": cfg.family, "variant": cfg.variant,
        "params": {"z": cfg.z, "b1": cfg.b1, "b2": cfg.b2,
                   "beta0": cfg.beta0, "k": cfg.k,
                   "sign": spec.params.sign},
        "dt": cfg.dt, "steps": int(cfg.steps),
        "integrator": cfg.integrator,
        "samples": len(traj),
        "initial_state": _state_doc(traj.states[0], names),
        "final_state": _state_doc(traj.states[-1], names),
        "energy": {"initial": float(traj.energy[0]),
                   "final": float(traj.energy[-1]),
                   "max_abs_drift": float(abs(traj.energy
                                              - traj.energy[0]).max())},
        "casimir": {"initial": float(traj.casimir[0]),
                    "final": float(traj.casimir[-1]),
                    "max_abs_drift": float(abs(traj.casimir
                                               - traj.casimir[0]).max())},
        "termination": _termination_doc(traj),
        "constants": _flat_constants(spec, s0, traj),
    }
    if cfg.format == "json":
        doc = dict(sidecar)
        doc["columns"] = list(names)
        doc["rows"] = [[float(traj.times[i]), *map(float, traj.states[i]),
                        float(traj.energy[i]), float(traj.casimir[i])]
                       for i in range(len(traj))]
        _emit(_dump(doc), cfg.out)
    else:
        _emit(_csv_text(traj, names), cfg.out)
        if cfg.out:
            side = Path(cfg.out).with_suffix(".json")
            side.write_text(_dump(sidecar))
    return 0


def _split_fiber_flow(split, s0, dt, steps):
    """RK4 for the fiber Hamiltonian alone, in its own time variable."""
    polar = isinstance(s0, PolarState)
    gradf = grad_polar if polar else grad
    make = PolarState if polar else BeltramiState

    def velocity(s):
        g = gradf(split.fiber, s)
        return (g[2], g[3], -g[0], -g[1])

    def step(s):
        y = dataclasses.astuple(s)
        k1v = velocity(s)
        k2v = velocity(make(*(y[i] + 0.5 * dt * k1v[i] for i in range(4))))
        k3v = velocity(make(*(y[i] + 0.5 * dt * k2v[i] for i in range(4))))
        k4v = velocity(make(*(y[i] + dt * k3v[i] for i in range(4))))
        return make(*(y[i] + dt / 6.0 * (k1v[i] + 2.0 * k2v[i]
                                         + 2.0 * k3v[i] + k4v[i])
                      for i in range(4)))

    out = [s0]
    for _ in range(steps):
        out.append(step(out[-1]))
    return out


def cmd_split(cfg: RunConfig) -> int:
    sp, spec = build_spec(cfg)
    if not sp.degenerate:
        raise ValueError(
            f"space {sp.name!r} has kappa2 != 0, so there is no base/fiber "
            "split; use the simulate command for full flows")
    s0 = initial_state(cfg)
    split = split_base_fiber(spec)
    names = CSV_HEADER_POLAR if cfg.coords == "polar" else CSV_HEADER_BELTRAMI
    steps = min(int(cfg.steps), 400)
    thin = max(1, steps // 40)

    base_traj = base_flow(split, s0, cfg.dt, steps)
    idx = range(0, len(base_traj), thin)
    base_doc = {
        "tau": [float(base_traj.times[i]) for i in idx],
        "states": [[float(v) for v in base_traj.states[i]] for i in idx],
        "H_base": [float(base_traj.energy[i]) for i in idx],
        "termination": _termination_doc(base_traj),
    }

    fiber_states = _split_fiber_flow(split, s0, cfg.dt, steps)
    fib_idx = range(0, len(fiber_states), thin)
    fiber_doc = {
        "tau": [float(i * cfg.dt) for i in fib_idx],
        "states": [[float(v) for v in dataclasses.astuple(fiber_states[i])]
                   for i in fib_idx],
        "H_fiber": [float(split.fiber(fiber_states[i])) for i in fib_idx],
    }

    doc = {
        "space": sp.name,
        "signature": [sp.signature.kappa1, sp.signature.kappa2],
        "coords": cfg.coords, "family": cfg.family, "variant": cfg.variant,
        "params": {"z": cfg.z, "b1": cfg.b1, "b2": cfg.b2,
                   "beta0": cfg.beta0, "k": cfg.k,
                   "sign": spec.params.sign},
        "state": _state_doc(dataclasses.astuple(s0), names),
        "fiber_value": float(split.fiber(s0)),
        "base_value": float(split.base(s0)),
        "base_trajectory": base_doc,
        "fiber_trajectory": fiber_doc,
    }
    _emit(_dump(doc), cfg.out)
    return 0


def cmd_geometry(cfg: RunConfig) -> int:
    sp = resolve_space(cfg)
    sig = sp.signature
    if cfg.r is not None or cfg.coords == "polar":
        ps = PolarState(1.0 if cfg.r is None else cfg.r,
                        0.5 if cfg.theta is None else cfg.theta,
                        0.0 if cfg.pr is None else cfg.pr,
                        0.0 if cfg.ptheta is None else cfg.ptheta)
        bs = beltrami_state_of(ps, sig)
    else:
        q = cfg.q if cfg.q is not None else (1.0, 1.0)
        p = cfg.p if cfg.p is not None else (0.0, 0.0)
        bs = BeltramiState(q[0], q[1], p[0], p[1])
        ps = polar_state_of(bs, sig)
    g = metric_at(ps.r, sig)
    try:
        curvature = float(gaussian_curvature(ps.r, sig))
    except DegenerateMetric:
        curvature = None
    doc = {
        "space": sp.name,
        "signature": [sig.kappa1, sig.kappa2],
        "degenerate": sp.degenerate,
        "beltrami_state": {"q1": bs.q1, "q2": bs.q2,
                           "p1": bs.p1, "p2": bs.p2},
        "polar_state": {"r": ps.r, "theta": ps.theta,
                        "pr": ps.pr, "ptheta": ps.ptheta},
        "metric": {"g_rr": g.g_rr, "g_thth": g.g_thth,
                   "fiber_g_thth": g.fiber_g_thth},
        "gaussian_curvature": curvature,
    }
    _emit(_dump(doc), cfg.out)
    return 0


def cmd_verify(args) -> int:
    names = None if args.suite == "all" else (args.suite,)
    report = verify_mod.run_suites(names=names, samples=args.samples,
                                   seed=args.seed)
    _emit(verify_mod.to_json(report) + "\n", args.out)
    return 0 if report["pass"] else 1


def cmd_spaces(args) -> int:
    rows = [{"name": s.name, "kappa1": s.signature.kappa1,
             "kappa2": s.signature.kappa2, "degenerate": s.degenerate,
             "default_sign": s.default_sign, "label": s.label}
            for s in all_spaces()]
    if args.format == "json":
        text = _dump(rows)
    elif args.format == "csv":
        lines = ["name,kappa1,kappa2,degenerate,default_sign"]
        lines += [f"{r['name']},{r['kappa1']},{r['kappa2']},"
                  f"{str(r['degenerate']).lower()},{r['default_sign']}"
                  for r in rows]
        text = "\n".join(lines) + "\n"
    else:
        lines = [f"{'name':<16} {'kappa1':>6} {'kappa2':>6} "
                 f"{'degenerate':>10} {'sign':>4}  label"]
        lines += [f"{r['name']:<16} {r['kappa1']:>6} {r['kappa2']:>6} "
                  f"{str(r['degenerate']).lower():>10} "
                  f"{r['default_sign']:>4}  {r['label']}"
                  for r in rows]
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


def _add_run_flags(p):
    p.add_argument("--config", help="JSON config file; flags override it")
    p.add_argument("--space", help="space name, e.g. sphere or galilei")
    p.add_argument("--kappa1", type=int, choices=(-1, 0, 1))
    p.add_argument("--kappa2", type=int, choices=(-1, 0, 1))
    p.add_argument("--coords", choices=("beltrami", "polar"))
    p.add_argument("--family", choices=("free", "sw", "kc"))
    p.add_argument("--variant", choices=("integrable", "superintegrable"))
    p.add_argument("--z", type=float, help="deformation parameter")
    p.add_argument("--b1", type=float)
    p.add_argument("--b2", type=float)
    p.add_argument("--beta0", type=float, help="oscillator coupling")
    p.add_argument("--k", type=float, help="attractive-potential coupling")
    p.add_argument("--sign", type=int, choices=(1, -1),
                   help="override the space's default overall sign")
    p.add_argument("--q", nargs=2, type=float, metavar=("Q1", "Q2"))
    p.add_argument("--p", nargs=2, type=float, metavar=("P1", "P2"))
    p.add_argument("--r", type=float)
    p.add_argument("--theta", type=float)
    p.add_argument("--pr", type=float)
    p.add_argument("--ptheta", type=float)
    p.add_argument("--dt", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--integrator", choices=("rk4", "midpoint"))
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "json"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cksim",
        description="Integrable Hamiltonians on the nine Cayley-Klein "
                    "spaces: simulate, split, verify.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spaces", help="list the nine spaces")
    sp.add_argument("--format", choices=("csv", "json"))
    sp.add_argument("--out")

    sim = sub.add_parser("simulate", help="integrate a Hamiltonian flow")
    _add_run_flags(sim)

    ver = sub.add_parser("verify", help="run self-verification suites")
    ver.add_argument("--suite", default="all",
                     choices=("brackets", "casimir", "split", "oracle",
                              "geometry", "all"))
    ver.add_argument("--samples", type=int)
    ver.add_argument("--seed", type=int, default=2024)
    ver.add_argument("--out")

    spl = sub.add_parser("split",
                         help="base/fiber split on a degenerate space")
    _add_run_flags(spl)

    geo = sub.add_parser("geometry",
                         help="chart conversion, metric and curvature")
    _add_run_flags(geo)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {"spaces": lambda: cmd_spaces(args),
                "verify": lambda: cmd_verify(args)}
    try:
        if args.command in handlers:
            return handlers[args.command]()
        cfg = load_config(args)
        if args.command == "simulate":
            return cmd_simulate(cfg)
        if args.command == "split":
            return cmd_split(cfg)
        return cmd_geometry(cfg)
    except CKError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
