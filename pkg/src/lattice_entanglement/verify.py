"""Oracle equivalence suites, shared by the ``verify`` subcommand and the tests."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .covariance import assemble_matrix, canonical_separation, two_site_covariance
from .entanglement import log_negativity, separability_functions
from .model import lattice, mode_table
from .oracle import (
    FockOracleConfig,
    covariance_from_modes,
    dense_modes,
    fock_thermal_moments,
    random_physical_covariance,
    symplectic_negativity,
)


@dataclass(frozen=True)
class Check:
    name: str
    max_error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_error <= self.tolerance


def _entry_error(c1, c2) -> float:
    return max(abs(c1.a - c2.a), abs(c1.b - c2.b), abs(c1.e - c2.e), abs(c1.f - c2.f))


# (d, n, delta/omega, scaled T) cases for the dense-mode comparison
DENSE_CASES = [
    (d, n, trap, t)
    for (d, n), trap, t in itertools.product(
        [(1, 3), (1, 7), (1, 9), (2, 3), (2, 5), (3, 3), (3, 5)], [0.3, 1.0], [0.0, 0.7]
    )
][:20]


def spectrum_check(sides=(3, 5, 7, 9), dims=(1, 2, 3), traps=(0.0, 0.5, 1.0)) -> Check:
    worst = 0.0
    for d, n, trap in itertools.product(dims, sides, traps):
        spec = lattice(d, n, 1.0, trap)
        x = np.sort(mode_table(spec)[1])
        dense = dense_modes(spec).frequencies
        worst = max(worst, float(np.max(np.abs(x - dense) / np.maximum(x, 1.0))))
    return Check("spectrum == dense eigenfrequencies", worst, 1e-10)


def dense_covariance_check(cases=DENSE_CASES) -> Check:
    worst = 0.0
    for d, n, trap, t in cases:
        spec = lattice(d, n, 1.0, trap)
        decomp = dense_modes(spec)
        origin = (0,) * d
        for step in range(1, (n - 1) // 2 + 1):
            site = (step,) + (0,) * (d - 1)
            dense = covariance_from_modes(decomp, t, origin, site)
            analytic = two_site_covariance(spec, t, canonical_separation(site, n))
            worst = max(worst, _entry_error(dense, analytic))
    return Check(f"analytic covariance == dense-mode covariance ({len(cases)} cases)", worst, 1e-10)


def fock_check(xis=(1.0, 2.0, 5.0), cutoff: int = 12, trap: float = 1.0) -> Check:
    spec = lattice(1, 3, 1.0, trap)
    worst = 0.0
    for xi in xis:
        fock = fock_thermal_moments(FockOracleConfig(3, cutoff, xi), spec)
        worst = max(worst, _entry_error(fock, two_site_covariance(spec, 1.0 / xi, (1,))))
    return Check(f"analytic covariance == truncated-Fock moments (xi in {tuple(xis)})", worst, 1e-4)


def negativity_check(samples: int = 1000, seed: int = 0) -> Check:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        cov = random_physical_covariance(rng)
        direct = log_negativity(separability_functions(cov)).value
        worst = max(worst, abs(direct - symplectic_negativity(assemble_matrix(cov))))
    return Check(f"negativity from S1,S2 == symplectic negativity ({samples} samples)", worst, 1e-10)


def run_verification(include_fock: bool = True) -> list[Check]:
    checks = [spectrum_check(), dense_covariance_check(), negativity_check()]
    if include_fock:
        checks.append(fock_check())
    return checks
