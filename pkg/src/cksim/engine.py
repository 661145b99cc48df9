"""Backend selection for the numeric hot paths.

The compiled extension (``cksim._ckcore``) and the pure-Python module
(``cksim._pyengine``) expose the same two entry points, ``bracket_stats``
and ``flow``.  Selection order: the CKSIM_BACKEND environment variable
("compiled", "pure", or "auto"), else compiled when importable, else pure.
"""

from __future__ import annotations

import os

import numpy as np

from . import _pyengine
from .spaces import kappas

try:
    from . import _ckcore
except ImportError:
    _ckcore = None

FAMILY_CODES = {"free": 0, "sw": 1, "kc": 2}
VARIANT_CODES = {"integrable": 0, "superintegrable": 1}
COORDS_CODES = {"beltrami": 0, "polar": 1}
INTEGRATOR_CODES = {"rk4": 0, "midpoint": 1}


def available_backends():
    return ("compiled", "pure") if _ckcore is not None else ("pure",)


def get_backend(name=None):
    """Resolve a backend module by name, env var, or availability."""
    if name is None:
        name = os.environ.get("CKSIM_BACKEND", "auto")
    if name == "auto":
        return _ckcore if _ckcore is not None else _pyengine
    if name == "compiled":
        if _ckcore is None:
            raise RuntimeError("compiled backend requested but not built; "
                               "reinstall with a C compiler or use CKSIM_BACKEND=pure")
        return _ckcore
    if name == "pure":
        return _pyengine
    raise ValueError(f"unknown backend {name!r}; expected auto, compiled, or pure")


def _code(table, key):
    key = getattr(key, "value", key)
    return table[str(key)]


def flow_for_spec(spec, y0, dt, steps, integrator="rk4", backend=None):
    """Run a flow for a HamiltonianSpec through the selected backend.

    y0 is the 4-vector ordered like spec.coords (q1,q2,p1,p2 or
    r,theta,pr,ptheta).  Returns (states, energies, casimirs, term_kind,
    term_step).
    """
    eng = get_backend(backend)
    m = spec.params
    k1, k2 = kappas(spec.sig)
    return eng.flow(_code(COORDS_CODES, spec.coords),
                    _code(FAMILY_CODES, spec.family),
                    _code(VARIANT_CODES, spec.variant),
                    float(k1), float(k2),
                    m.z, m.b1, m.b2, m.beta0, m.k, m.gamma_eff, m.sign,
                    np.asarray(y0, dtype=np.float64), dt, steps,
                    _code(INTEGRATOR_CODES, integrator))
