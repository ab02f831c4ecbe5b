"""Lattice geometry and the phonon spectrum of the periodic harmonic lattice.

Units: hbar = k_B = m = 1. Frequencies are reported in units of the
nearest-neighbour coupling omega, so only the ratio delta/omega enters any
dimensionless quantity.
"""
from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import EvenSide, NegativeTrap, NonPositiveCoupling, UnsupportedDimension

SUPPORTED_DIMENSIONS = (1, 2, 3)


@dataclass(frozen=True)
class LatticeSpec:
    """Square periodic lattice of ``side**dimension`` sites.

    ``coupling`` is the nearest-neighbour frequency omega and ``trap`` the
    on-site frequency delta, both angular frequencies.
    """

    dimension: int
    side: int
    coupling: float = 1.0
    trap: float = 0.0

    @property
    def trap_ratio(self) -> float:
        return self.trap / self.coupling

    @property
    def half_width(self) -> int:
        return (self.side - 1) // 2

    def total_sites(self) -> int:
        return self.side**self.dimension

    def with_(self, **changes) -> "LatticeSpec":
        fields = dict(dimension=self.dimension, side=self.side,
                      coupling=self.coupling, trap=self.trap)
        fields.update(changes)
        return validate_spec(LatticeSpec(**fields))


def validate_spec(raw: LatticeSpec) -> LatticeSpec:
    """Return ``raw`` unchanged if it describes a supported lattice, else raise."""
    if isinstance(raw.dimension, bool) or raw.dimension not in SUPPORTED_DIMENSIONS:
        raise UnsupportedDimension(f"dimension must be one of {SUPPORTED_DIMENSIONS}, got {raw.dimension!r}")
    if int(raw.side) != raw.side or raw.side < 3:
        raise EvenSide(f"side must be an odd integer >= 3, got {raw.side!r}")
    if raw.side % 2 == 0:
        raise EvenSide(f"side must be odd, got {raw.side}")
    if not raw.coupling > 0 or not math.isfinite(raw.coupling):
        raise NonPositiveCoupling(f"coupling must be > 0, got {raw.coupling!r}")
    if not raw.trap >= 0 or not math.isfinite(raw.trap):
        raise NegativeTrap(f"trap must be >= 0, got {raw.trap!r}")
    return raw


def lattice(dimension: int, side: int, coupling: float = 1.0, trap: float = 0.0) -> LatticeSpec:
    """Convenience constructor that validates."""
    return validate_spec(LatticeSpec(int(dimension), int(side), float(coupling), float(trap)))


def iter_modes(spec: LatticeSpec) -> Iterator[tuple[int, ...]]:
    """Mode indices l in lexicographic order, each component in [-(n-1)/2, (n-1)/2]."""
    h = spec.half_width
    return itertools.product(range(-h, h + 1), repeat=spec.dimension)


def mode_frequency(spec: LatticeSpec, l: Sequence[int]) -> float:
    """Scaled phonon frequency x_l = omega_l / omega of mode ``l``."""
    if len(l) != spec.dimension:
        raise ValueError(f"mode index has {len(l)} components, lattice has dimension {spec.dimension}")
    h = spec.half_width
    if any(abs(c) > h for c in l):
        raise ValueError(f"mode index {tuple(l)} outside [-{h}, {h}]")
    s = math.fsum(math.sin(math.pi * c / spec.side) ** 2 for c in l)
    return 2.0 * math.sqrt(s + (spec.trap_ratio / 2.0) ** 2)


@functools.lru_cache(maxsize=32)
def mode_table(spec: LatticeSpec) -> tuple[np.ndarray, np.ndarray]:
    """All mode indices (shape ``(N, d)``) and their scaled frequencies (shape ``(N,)``).

    Rows follow the lexicographic order of :func:`iter_modes`. The arrays are
    cached per spec and returned read-only.
    """
    h = spec.half_width
    axis = np.arange(-h, h + 1)
    grids = np.meshgrid(*([axis] * spec.dimension), indexing="ij")
    indices = np.stack([g.ravel() for g in grids], axis=1)
    sin2 = np.sin(np.pi * axis / spec.side) ** 2
    grids2 = np.meshgrid(*([sin2] * spec.dimension), indexing="ij")
    total = np.zeros(indices.shape[0])
    for g in grids2:
        total += g.ravel()
    x = 2.0 * np.sqrt(total + (spec.trap_ratio / 2.0) ** 2)
    indices.setflags(write=False)
    x.setflags(write=False)
    return indices, x


def mean_square_frequency(spec: LatticeSpec) -> float:
    """(1/N) sum_l omega_l**2 in physical units; closed form 2 d omega**2 + delta**2."""
    _, x = mode_table(spec)
    return math.fsum(x * x) / x.size * spec.coupling**2
