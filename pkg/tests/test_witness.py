import math

import numpy as np
import pytest

from lattice_entanglement.covariance import ZERO
from lattice_entanglement.entanglement import critical_temperature, negativity
from lattice_entanglement.errors import NotOrthogonal, UnsupportedDimension, ZeroModeDivergence
from lattice_entanglement.model import lattice, mode_table
from lattice_entanglement.oracle import FockOracleConfig, fock_system
from lattice_entanglement.witness import (
    BoundConvention,
    EnergyModel,
    Verdict,
    equipartition_energy,
    exact_witness_temperature,
    internal_energy,
    mixing_bound,
    mode_transform_bound,
    random_orthogonal,
    separable_bound,
    witness_temperature,
    witness_verdict,
)


def test_ground_energy_small_chain():
    spec = lattice(1, 3, 1.0, 1.0)
    assert internal_energy(spec, ZERO) == pytest.approx(2.5, abs=1e-14)
    fock = fock_system(FockOracleConfig(3, 12, 1.0), spec)
    assert np.linalg.eigvalsh(fock.hamiltonian.toarray())[0] == pytest.approx(2.5, abs=1e-6)


@pytest.mark.parametrize("d, n, trap", [(1, 49, 1e-4), (2, 7, 0.5), (3, 5, 1.0)])
def test_equipartition_limit(d, n, trap):
    spec = lattice(d, n, 1.0, trap)
    assert internal_energy(spec, 50.0) / equipartition_energy(spec, 50.0) == pytest.approx(1.0, abs=0.01)


def test_energy_nondecreasing():
    spec = lattice(2, 9, 1.0, 0.3)
    u = [internal_energy(spec, t) for t in np.linspace(0.01, 5, 40)]
    assert np.all(np.diff(u) >= 0)
    assert internal_energy(spec, ZERO) <= u[0]


def test_zero_mode_energy_diverges():
    with pytest.raises(ZeroModeDivergence):
        internal_energy(lattice(1, 5), 1.0)
    assert internal_energy(lattice(1, 5), ZERO) > 0


def test_separable_bound_examples():
    spec = lattice(1, 51, 1.0, 0.0)
    for conv in BoundConvention:
        assert separable_bound(spec, conv) == pytest.approx(51 / 2 * math.sqrt(2), rel=1e-14)
    spec = lattice(1, 17, 1.0, 0.37)
    assert separable_bound(spec, "paper") == pytest.approx(separable_bound(spec, "mean"), rel=1e-12)
    spec = lattice(3, 5, 1.0, 0.0)
    assert separable_bound(spec, "paper") == pytest.approx(1.5 * 125 * math.sqrt(2), rel=1e-14)
    assert separable_bound(spec, "mean") == pytest.approx(1.5 * 125 * math.sqrt(6), rel=1e-12)


def test_witness_temperature_examples():
    assert witness_temperature(lattice(1, 9, 1.0, 0.0), "paper") == pytest.approx(math.sqrt(2), abs=1e-15)
    assert witness_temperature(lattice(1, 9, 1.0, 1.0), "paper") == pytest.approx(math.sqrt(3), abs=1e-15)
    assert witness_temperature(lattice(2, 9, 1.0, 1.0), "mean") == pytest.approx(math.sqrt(5), rel=1e-12)
    big = witness_temperature(lattice(1, 9, 1.0, 1000.0), "paper")
    assert big / 1000.0 == pytest.approx(1.0, rel=1e-5)


def test_equipartition_crossing_is_witness_temperature():
    for spec in (lattice(1, 49, 1.0, 0.3), lattice(3, 5, 1.0, 2.0)):
        for conv in BoundConvention:
            t = witness_temperature(spec, conv)
            assert equipartition_energy(spec, t) == pytest.approx(separable_bound(spec, conv), rel=1e-14)


@pytest.mark.parametrize("model", list(EnergyModel))
def test_verdict_examples(model):
    spec = lattice(1, 49, 1.0, 1e-4)
    assert witness_verdict(spec, 0.5, energy_model=model).verdict is Verdict.ENTANGLED
    assert witness_verdict(spec, 3.0, energy_model=model).verdict is Verdict.INCONCLUSIVE
    report = witness_verdict(spec, 0.5, energy_model=model)
    assert (report.internal_energy < report.separable_bound) == (report.verdict is Verdict.ENTANGLED)


@pytest.mark.parametrize("n, trap", [(3, 0.1), (9, 0.0), (49, 1.0)])
def test_ground_state_witnessed_in_1d(n, trap):
    spec = lattice(1, n, 1.0, trap)
    report = witness_verdict(spec, ZERO, "paper", "exact")
    assert report.internal_energy < report.separable_bound
    assert report.verdict is Verdict.ENTANGLED


def test_exact_energy_exceeds_equipartition():
    # zero-point energy keeps the exact U above d N k_B T, so its certified region is narrower
    spec = lattice(1, 49, 1.0, 1e-4)
    for t in np.linspace(0.05, 3.0, 25):
        assert internal_energy(spec, t) > equipartition_energy(spec, t)
    t_exact = exact_witness_temperature(spec)
    assert t_exact < witness_temperature(spec)
    assert internal_energy(spec, t_exact) == pytest.approx(separable_bound(spec), rel=1e-10)


def test_equipartition_verdict_contains_nearest_neighbour_entanglement():
    for trap in np.logspace(-4, 0.5, 10):
        spec = lattice(1, 49, 1.0, trap)
        for t in np.linspace(0.05, 2.5, 10):
            if negativity(spec, t, (1,)).value > 0:
                assert witness_verdict(spec, t).verdict is Verdict.ENTANGLED


def test_mode_transform_identity_and_permutation():
    spec = lattice(1, 11, 1.0, 0.2)
    _, x = mode_table(spec)
    ground = 0.5 * math.fsum(x)
    assert mode_transform_bound(spec, np.eye(11)) == pytest.approx(ground, rel=1e-14)
    perm = np.eye(11)[np.random.default_rng(3).permutation(11)]
    assert mode_transform_bound(spec, perm) == pytest.approx(ground, rel=1e-14)


def test_complete_mixture_gives_site_bound():
    spec = lattice(1, 11, 1.0, 0.2)
    flat = np.full((11, 11), 1 / 11)
    assert mixing_bound(spec, flat) == pytest.approx(separable_bound(spec, "paper"), rel=1e-12)


def test_mode_transform_rejects_bad_input():
    spec = lattice(1, 5, 1.0, 0.2)
    with pytest.raises(NotOrthogonal):
        mode_transform_bound(spec, np.ones((5, 5)))
    with pytest.raises(NotOrthogonal):
        mode_transform_bound(spec, np.eye(4))
    with pytest.raises(UnsupportedDimension):
        mode_transform_bound(lattice(2, 3, 1.0, 0.2), np.eye(9))


def test_sandwich_random_orthogonal():
    spec = lattice(1, 15, 1.0, 0.5)
    _, x = mode_table(spec)
    lower, upper = 0.5 * math.fsum(x), separable_bound(spec, "paper")
    rng = np.random.default_rng(11)
    for _ in range(30):
        b = mode_transform_bound(spec, random_orthogonal(15, rng))
        assert lower - 1e-10 <= b <= upper + 1e-10
