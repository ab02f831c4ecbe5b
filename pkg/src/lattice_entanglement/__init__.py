"""Two-site and witnessed entanglement of thermal states of harmonic lattices."""

__version__ = "0.1.0"

from .covariance import ZERO, TwoSiteCovariance, assemble_matrix, canonical_separation, two_site_covariance
from .entanglement import (
    NegativityResult,
    SeparabilityPair,
    continuum_ground_state_s,
    critical_temperature,
    high_temperature_s2,
    log_negativity,
    negativity,
    separability_functions,
)
from .model import LatticeSpec, iter_modes, lattice, mean_square_frequency, mode_frequency, mode_table, validate_spec
from .witness import (
    BoundConvention,
    EnergyModel,
    WitnessReport,
    internal_energy,
    mode_transform_bound,
    separable_bound,
    witness_temperature,
    witness_verdict,
)
