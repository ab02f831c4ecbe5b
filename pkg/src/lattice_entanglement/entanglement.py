"""Two-site PPT test, logarithmic negativity and critical temperatures."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import integrate

from .covariance import ZERO, TwoSiteCovariance, two_site_covariance
from .errors import DomainError, NotEntangled, NoVanishing, QuadratureFailure, UnsupportedSeparation
from .model import LatticeSpec

DEFAULT_SCAN_MAX = 3.0
DEFAULT_TOL = 1e-6
DEFAULT_SCAN_POINTS = 200
QUAD_TOL = 1e-9


@dataclass(frozen=True)
class SeparabilityPair:
    s1: float
    s2: float

    def minimum(self) -> float:
        return min(self.s1, self.s2)


@dataclass(frozen=True)
class NegativityResult:
    value: float
    entangled: bool


def separability_functions(cov: TwoSiteCovariance) -> SeparabilityPair:
    """S1 = (A + E)(B - F) - 1 and S2 = (A - E)(B + F) - 1."""
    return SeparabilityPair(
        s1=(cov.a + cov.e) * (cov.b - cov.f) - 1.0,
        s2=(cov.a - cov.e) * (cov.b + cov.f) - 1.0,
    )


def log_negativity(pair: SeparabilityPair) -> NegativityResult:
    """E_N = sum_j max(0, -ln sqrt(S_j + 1)); an infinite S_j contributes nothing."""
    value = 0.0
    for s in (pair.s1, pair.s2):
        if not s > -1.0:
            raise DomainError(f"separability value {s!r} <= -1: covariance is unphysical")
        if s < 0.0:
            value += -0.5 * math.log1p(s)
    return NegativityResult(value=value, entangled=value > 0.0)


def negativity(spec: LatticeSpec, temperature: float, separation: Sequence[int]) -> NegativityResult:
    return log_negativity(separability_functions(two_site_covariance(spec, temperature, separation)))


def _even_quad(func, split: float | None) -> float:
    """2 * integral of an even integrand over [0, pi/2], optionally split at ``split``."""
    edges = [0.0, math.pi / 2] if split is None else [0.0, split, math.pi / 2]
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, err = integrate.quad(func, lo, hi, epsabs=1e-14, epsrel=1e-13, limit=500)
        if not err <= QUAD_TOL / 4:
            raise QuadratureFailure(f"quadrature on [{lo}, {hi}] reached error {err:.3g}")
        total += val
    return 2.0 * total


def continuum_ground_state_s(r: int, trap_ratio: float) -> SeparabilityPair:
    """Ground-state S1, S2 of the infinite chain by quadrature.

    ``trap_ratio`` is delta/(2 omega). For ``trap_ratio == 0`` the position
    integral of the ``+`` branch diverges logarithmically at z = 0 and S1 is
    returned as ``math.inf``.
    """
    if int(r) != r or r < 1:
        raise ValueError(f"separation must be a positive integer, got {r!r}")
    if trap_ratio < 0:
        raise ValueError(f"trap_ratio must be >= 0, got {trap_ratio!r}")
    c2 = trap_ratio * trap_ratio
    split = None if trap_ratio == 0 else min(10.0 * trap_ratio, math.pi / 4)

    def root(z):
        return math.sqrt(math.sin(z) ** 2 + c2)

    def pos_minus(z):
        # (1 - cos 2zr) = 2 sin^2(zr); finite at z = 0 even when c = 0
        if z == 0.0 and c2 == 0.0:
            return 0.0
        return 2.0 * math.sin(z * r) ** 2 / root(z)

    def pos_plus(z):
        return 2.0 * math.cos(z * r) ** 2 / root(z)

    def mom_minus(y):
        return root(y) * 2.0 * math.sin(y * r) ** 2

    def mom_plus(y):
        return root(y) * 2.0 * math.cos(y * r) ** 2

    norm = 1.0 / math.pi**2
    s2 = norm * _even_quad(pos_minus, split) * _even_quad(mom_plus, None) - 1.0
    if trap_ratio == 0:
        s1 = math.inf
    else:
        s1 = norm * _even_quad(pos_plus, split) * _even_quad(mom_minus, None) - 1.0
    return SeparabilityPair(s1=s1, s2=s2)


def ground_state_nn_s2() -> float:
    """Closed form S2(r=1) = 16/(3 pi^2) - 1 of the infinite, untrapped chain."""
    return 16.0 / (3.0 * math.pi**2) - 1.0


def high_temperature_s2(xi: float, r: int) -> float:
    """First-order high-temperature S2 of the untrapped infinite chain."""
    if not xi > 0:
        raise ValueError(f"xi must be > 0, got {xi!r}")
    if r == 1:
        return 1.0 / (2.0 * xi * xi) - 0.5
    if r == 2:
        return 1.0 / (xi * xi)
    raise UnsupportedSeparation(f"high-temperature expansion is available for r in {{1, 2}}, got {r!r}")


def min_separability(spec: LatticeSpec, temperature: float, separation: Sequence[int]) -> float:
    return separability_functions(two_site_covariance(spec, temperature, separation)).minimum()


def critical_temperature(
    spec: LatticeSpec,
    separation: Sequence[int],
    scan_max: float = DEFAULT_SCAN_MAX,
    tol: float = DEFAULT_TOL,
    points: int = DEFAULT_SCAN_POINTS,
) -> float:
    """Scaled temperature where two-site entanglement at ``separation`` vanishes.

    Scans ``points`` temperatures on [tol, scan_max] and bisects the last
    negative-to-nonnegative crossing of min(S1, S2).
    """
    if not 0 < tol < scan_max:
        raise ValueError(f"need 0 < tol < scan_max, got tol={tol!r}, scan_max={scan_max!r}")
    grid = np.linspace(tol, scan_max, points)
    values = np.array([min_separability(spec, t, separation) for t in grid])
    negative = np.flatnonzero(values < 0)
    if negative.size == 0:
        raise NotEntangled(f"no entanglement at separation {tuple(separation)} on [{tol}, {scan_max}]")
    last = negative[-1]
    if last == points - 1:
        raise NoVanishing(f"still entangled at scan_max = {scan_max}")
    lo, hi = float(grid[last]), float(grid[last + 1])
    while hi - lo > tol / 2:
        mid = 0.5 * (lo + hi)
        if min_separability(spec, mid, separation) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
