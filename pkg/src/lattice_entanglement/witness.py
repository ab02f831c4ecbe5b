"""Total energy as an entanglement witness for the lattice sites.

Energies are in units of hbar*omega and temperatures in the scaled unit
2 k_B T / (hbar omega), so k_B T = t/2 in energy units. The lattice has
``d`` identical polarization branches; per-mode sums are multiplied by ``d``
wherever a total lattice energy is needed.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .covariance import COTH_FLOOR, ZERO
from .errors import NotEntangled, NotOrthogonal, UnsupportedDimension, ZeroModeDivergence
from .model import LatticeSpec, mode_table

ORTHOGONALITY_TOL = 1e-10


class BoundConvention(str, enum.Enum):
    # Omega^2 = 2 omega^2 + delta^2 for every d, as printed
    PAPER = "paper"
    # Omega^2 = (1/N) sum_l omega_l^2 = 2 d omega^2 + delta^2
    MEAN = "mean"


class EnergyModel(str, enum.Enum):
    EQUIPARTITION = "equipartition"
    EXACT = "exact"


class Verdict(str, enum.Enum):
    ENTANGLED = "WitnessedEntangled"
    INCONCLUSIVE = "Inconclusive"


def default_convention(spec: LatticeSpec) -> BoundConvention:
    return BoundConvention.PAPER if spec.dimension == 1 else BoundConvention.MEAN


@dataclass(frozen=True)
class WitnessReport:
    internal_energy: float
    separable_bound: float
    witness_temperature: float
    verdict: Verdict
    convention: BoundConvention
    energy_model: EnergyModel


def internal_energy(spec: LatticeSpec, temperature: float) -> float:
    """Exact thermal energy d * sum_l x_l (1/2 + n_B), zero-point energy included."""
    if temperature < 0 or math.isnan(temperature):
        raise ValueError(f"temperature must be >= 0, got {temperature!r}")
    _, x = mode_table(spec)
    if temperature == ZERO:
        return spec.dimension * 0.5 * math.fsum(x)
    y = 2.0 * x / temperature
    if y.min() < COTH_FLOOR:
        raise ZeroModeDivergence("zero mode occupation diverges at T > 0; a trap delta > 0 is required")
    with np.errstate(over="ignore"):
        occupation = 1.0 / np.expm1(y)
    return spec.dimension * math.fsum(x * (0.5 + occupation))


def equipartition_energy(spec: LatticeSpec, temperature: float) -> float:
    """High-temperature limit d N k_B T."""
    return spec.dimension * spec.total_sites() * temperature / 2.0


def site_frequency(spec: LatticeSpec, convention: BoundConvention) -> float:
    """Effective single-site frequency Omega in units of omega."""
    convention = BoundConvention(convention)
    if convention is BoundConvention.PAPER:
        return math.sqrt(2.0 + spec.trap_ratio**2)
    _, x = mode_table(spec)
    return math.sqrt(math.fsum(x * x) / x.size)


def separable_bound(spec: LatticeSpec, convention: BoundConvention | str | None = None) -> float:
    """Minimum energy (d/2) N Omega of any state that is fully separable over sites."""
    convention = default_convention(spec) if convention is None else convention
    return 0.5 * spec.dimension * spec.total_sites() * site_frequency(spec, convention)


def witness_temperature(spec: LatticeSpec, convention: BoundConvention | str | None = None) -> float:
    """Scaled temperature where the equipartition energy meets the separable bound (= Omega/omega)."""
    convention = default_convention(spec) if convention is None else convention
    return site_frequency(spec, convention)


def exact_witness_temperature(spec: LatticeSpec, convention: BoundConvention | str | None = None) -> float:
    """Scaled temperature where the exact internal energy meets the separable bound.

    Raises NotEntangled if the ground-state energy already reaches the bound.
    """
    bound = separable_bound(spec, convention)
    if internal_energy(spec, ZERO) >= bound:
        raise NotEntangled("ground-state energy is not below the separable bound")
    hi = max(1.0, witness_temperature(spec, convention))
    while internal_energy(spec, hi) < bound:
        hi *= 2.0
    return optimize.brentq(lambda t: internal_energy(spec, t) - bound, 1e-6, hi, xtol=1e-12, rtol=1e-14)


def witness_verdict(
    spec: LatticeSpec,
    temperature: float,
    convention: BoundConvention | str | None = None,
    energy_model: EnergyModel | str = EnergyModel.EQUIPARTITION,
) -> WitnessReport:
    convention = BoundConvention(default_convention(spec) if convention is None else convention)
    energy_model = EnergyModel(energy_model)
    if energy_model is EnergyModel.EXACT:
        energy = internal_energy(spec, temperature)
    else:
        if temperature < 0 or math.isnan(temperature):
            raise ValueError(f"temperature must be >= 0, got {temperature!r}")
        energy = equipartition_energy(spec, temperature)
    bound = separable_bound(spec, convention)
    return WitnessReport(
        internal_energy=energy,
        separable_bound=bound,
        witness_temperature=witness_temperature(spec, convention),
        verdict=Verdict.ENTANGLED if energy < bound else Verdict.INCONCLUSIVE,
        convention=convention,
        energy_model=energy_model,
    )


def mixing_bound(spec: LatticeSpec, weights: np.ndarray) -> float:
    """(1/2) sum_k sqrt(sum_l P_kl omega_l^2) for a doubly stochastic ``weights`` P."""
    _, x = mode_table(spec)
    weights = np.asarray(weights, dtype=float)
    if weights.shape != (x.size, x.size):
        raise ValueError(f"weights must be {x.size}x{x.size}, got {weights.shape}")
    w2 = weights @ (x * x)
    return 0.5 * math.fsum(np.sqrt(w2))


def mode_transform_bound(spec: LatticeSpec, orthogonal: np.ndarray) -> float:
    """Separable-energy bound for the modes U_k = sum_l O_kl U_l of a 1D chain."""
    if spec.dimension != 1:
        raise UnsupportedDimension("the mode-transform bound is defined for d = 1 only")
    o = np.asarray(orthogonal, dtype=float)
    n = spec.total_sites()
    if o.shape != (n, n):
        raise NotOrthogonal(f"matrix must be {n}x{n}, got {o.shape}")
    if np.abs(o.T @ o - np.eye(n)).max() > ORTHOGONALITY_TOL:
        raise NotOrthogonal("columns are not orthonormal to 1e-10")
    return mixing_bound(spec, o * o)


def random_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    """Orthonormalized standard-normal matrix (Haar distributed after the sign fix)."""
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))
