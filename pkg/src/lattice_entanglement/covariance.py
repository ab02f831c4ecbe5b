"""Thermal two-site covariance matrix of the harmonic lattice.

Temperatures are scaled, ``t = 2 k_B T / (hbar omega)``; the coupling
parameter of the mode sums is ``xi = 1/t``. ``t == 0`` (``ZERO``) is the exact
ground state, evaluated with every coth factor set to one.

Entries are dimensionless: A and E in units of hbar/(m omega), B and F in
units of m hbar omega. The state is symmetric in R and P, so the 4x4 matrix
is fixed by (A, B, E, F).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import BadSeparation, ZeroModeDivergence
from .model import LatticeSpec, mode_table

ZERO = 0.0

# Below this argument coth(y) ~ 1/y is only reachable through a near-zero mode.
COTH_FLOOR = 1e-8

SIGMA = np.array([[0.0, 1.0], [-1.0, 0.0]])


@dataclass(frozen=True)
class TwoSiteCovariance:
    a: float
    b: float
    e: float
    f: float
    separation: tuple[int, ...] = (1,)
    temperature: float = ZERO

    def physicality_margin(self) -> float:
        """Smallest eigenvalue of Gamma + i(sigma + sigma); >= 0 for a physical state."""
        return float(np.linalg.eigvalsh(assemble_matrix(self) + 1j * symplectic_form(2)).min())


def symplectic_form(modes: int) -> np.ndarray:
    return np.kron(np.eye(modes), SIGMA)


def canonical_separation(r: Sequence[int], side: int) -> tuple[int, ...]:
    """Reduce a separation vector to its representative in [0, (n-1)/2] per axis."""
    out = []
    for c in r:
        c = int(c) % side
        out.append(min(c, side - c))
    return tuple(out)


def coth_factors(x: np.ndarray, temperature: float) -> np.ndarray:
    """coth(x/t) for every mode, or ones at t == 0.

    Raises ZeroModeDivergence if any argument is below ``COTH_FLOOR``.
    """
    if temperature < 0 or math.isnan(temperature):
        raise ValueError(f"temperature must be >= 0, got {temperature!r}")
    if temperature == ZERO:
        return np.ones_like(x)
    y = x / temperature
    if y.min() < COTH_FLOOR:
        raise ZeroModeDivergence(
            f"coth argument {y.min():.3g} below {COTH_FLOOR}; a trap delta > 0 is required at T > 0"
        )
    # 1 + 2/(e^{2y} - 1); expm1 overflow to inf gives exactly 1
    with np.errstate(over="ignore"):
        return 1.0 + 2.0 / np.expm1(2.0 * y)


def _check_separation(spec: LatticeSpec, separation: Sequence[int]) -> tuple[int, ...]:
    r = tuple(int(c) for c in separation)
    if len(r) != spec.dimension:
        raise BadSeparation(f"separation {r} has {len(r)} components, lattice has dimension {spec.dimension}")
    if all(c == 0 for c in r):
        raise BadSeparation("separation must be nonzero")
    h = spec.half_width
    if any(c < 0 or c > h for c in r):
        raise BadSeparation(f"separation {r} outside [0, {h}] per axis; reduce with canonical_separation")
    return r


def two_site_covariance(spec: LatticeSpec, temperature: float, separation: Sequence[int]) -> TwoSiteCovariance:
    """Entries (A, B, E, F) of the two-site covariance at scaled temperature ``temperature``.

    The cosine kernel is ``cos(2 pi l.r / n)`` with the componentwise dot
    product, so the same code serves d = 1, 2, 3.
    """
    r = _check_separation(spec, separation)
    indices, x = mode_table(spec)
    if x.min() <= 0.0:
        raise ZeroModeDivergence("zero mode x = 0 present (delta = 0); the 1/x_l sum diverges")
    c = coth_factors(x, temperature)
    kernel = np.cos((2.0 * np.pi / spec.side) * (indices @ np.asarray(r)))
    pos = c / x
    mom = x * c
    n = x.size
    return TwoSiteCovariance(
        a=math.fsum(pos) / n,
        b=math.fsum(mom) / n,
        e=math.fsum(kernel * pos) / n,
        f=math.fsum(kernel * mom) / n,
        separation=r,
        temperature=float(temperature),
    )


def assemble_matrix(cov: TwoSiteCovariance) -> np.ndarray:
    """4x4 covariance in the ordering (u_R, p_R, u_P, p_P)."""
    a, b, e, f = cov.a, cov.b, cov.e, cov.f
    return np.array(
        [
            [a, 0.0, e, 0.0],
            [0.0, b, 0.0, f],
            [e, 0.0, a, 0.0],
            [0.0, f, 0.0, b],
        ]
    )
