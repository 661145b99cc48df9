"""Compare the compiled and pure-Python engines on the two hot paths.

Usage: python3 benchmarks/bench_backends.py [--samples N] [--steps N]
"""

import argparse
import time

import numpy as np

from cksim import engine
from cksim.coalgebra import ModelParams
from cksim.hamiltonians import Coords, Family, HamiltonianSpec, Variant
from cksim.spaces import space_by_name


def time_call(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=1000)
    ap.add_argument("--steps", type=int, default=10000)
    args = ap.parse_args()

    rng = np.random.default_rng(7)
    states = np.column_stack([rng.uniform(0.5, 2.0, args.samples),
                              rng.uniform(0.5, 2.0, args.samples),
                              rng.uniform(-1.0, 1.0, args.samples),
                              rng.uniform(-1.0, 1.0, args.samples)])
    m = ModelParams(z=0.05, b1=0.3, b2=0.4, beta0=0.5, k=0.4)
    spec = HamiltonianSpec(Family.SW, Variant.INTEGRABLE, Coords.BELTRAMI,
                           m, space_by_name("sphere").signature)
    y0 = np.array([1.0, 1.1, 0.1, -0.1])

    names = engine.available_backends()
    results = {}
    for name in names:
        eng = engine.get_backend(name)
        tb = time_call(lambda: eng.bracket_stats(states, 0.5, 1.0, 1.0,
                                                 1.0, 1.0))
        tf = time_call(lambda: engine.flow_for_spec(spec, y0, 1e-3,
                                                    args.steps,
                                                    backend=name))
        results[name] = (tb, tf)
        print(f"{name:9s} bracket_stats({args.samples}): {tb * 1e3:8.2f} ms"
              f"   rk4 flow({args.steps} steps): {tf * 1e3:8.2f} ms")
    if len(results) == 2:
        cb, cf = results["compiled"]
        pb, pf = results["pure"]
        print(f"speedup   bracket_stats: {pb / cb:6.1f}x"
              f"   flow: {pf / cf:6.1f}x")

    a = engine.get_backend(names[0]).bracket_stats(states, 0.5, 1.0, 1.0,
                                                   1.0, 1.0)
    for name in names[1:]:
        b = engine.get_backend(name).bracket_stats(states, 0.5, 1.0, 1.0,
                                                   1.0, 1.0)
        print(f"max |{names[0]} - {name}| on bracket stats: "
              f"{np.abs(a - b).max():.3e}")


if __name__ == "__main__":
    main()
