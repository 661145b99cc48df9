"""The nine two-dimensional Cayley-Klein spaces.

Each space is named by a signature pair (kappa1, kappa2) in {+1, 0, -1}**2:
kappa1 is the curvature sign, kappa2 = 0 marks a degenerate metric whose
dynamics splits into base and fiber parts.  Spaces with kappa2 = -1 carry a
default overall Hamiltonian sign of -1; the flag is data, so formulas stay
verbatim and any preset can be overridden.
"""

from __future__ import annotations

from dataclasses import dataclass

_VALID = (-1, 0, 1)


@dataclass(frozen=True)
class CKSignature:
    kappa1: int
    kappa2: int

    def __post_init__(self):
        if self.kappa1 not in _VALID or self.kappa2 not in _VALID:
            raise ValueError(f"signature components must be in {_VALID}, "
                             f"got ({self.kappa1}, {self.kappa2})")

    @property
    def degenerate(self) -> bool:
        return self.kappa2 == 0


@dataclass(frozen=True)
class SpaceInfo:
    name: str
    signature: CKSignature
    default_sign: int
    label: str

    @property
    def degenerate(self) -> bool:
        return self.signature.degenerate


def _space(name, k1, k2, label):
    return SpaceInfo(name, CKSignature(k1, k2), -1 if k2 == -1 else 1, label)


SPACES: dict[str, SpaceInfo] = {
    s.name: s
    for s in (
        _space("sphere", 1, 1, "sphere S^2"),
        _space("hyperbolic", -1, 1, "hyperbolic plane H^2"),
        _space("anti_de_sitter", 1, -1, "anti-de Sitter space-time AdS^{1+1}"),
        _space("de_sitter", -1, -1, "de Sitter space-time dS^{1+1}"),
        _space("euclidean", 0, 1, "Euclidean plane E^2"),
        _space("minkowski", 0, -1, "Minkowski space-time M^{1+1}"),
        _space("newton_plus", 1, 0, "Newton space N^{1+1}(+), positive curvature"),
        _space("newton_minus", -1, 0, "Newton space N^{1+1}(-), negative curvature"),
        _space("galilei", 0, 0, "Galilei space-time G^{1+1}"),
    )
}

ALIASES = {
    "ads": "anti_de_sitter",
    "ds": "de_sitter",
    "newton+": "newton_plus",
    "newton-": "newton_minus",
}

ALL_SIGNATURES: tuple[CKSignature, ...] = tuple(s.signature for s in SPACES.values())


def all_spaces() -> tuple[SpaceInfo, ...]:
    return tuple(SPACES.values())


def space_by_name(name: str) -> SpaceInfo:
    key = name.strip().lower().replace("-", "_")
    key = ALIASES.get(name.strip().lower(), key)
    if key not in SPACES:
        raise ValueError(f"unknown space {name!r}; choose one of "
                         f"{', '.join(SPACES)} (aliases: {', '.join(ALIASES)})")
    return SPACES[key]


def space_for_signature(sig) -> SpaceInfo:
    k1, k2 = kappas(sig)
    for s in SPACES.values():
        if s.signature.kappa1 == k1 and s.signature.kappa2 == k2:
            return s
    raise ValueError(f"no space with signature ({k1}, {k2})")


def kappas(sig):
    """Accept CKSignature, SpaceInfo, or a bare (kappa1, kappa2) pair.

    Bare pairs may hold any reals (or jets, for the degenerate split), which
    is how continuity in kappa is probed.
    """
    if isinstance(sig, SpaceInfo):
        sig = sig.signature
    if isinstance(sig, CKSignature):
        return sig.kappa1, sig.kappa2
    k1, k2 = sig
    return k1, k2
