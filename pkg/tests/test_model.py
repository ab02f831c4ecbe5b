import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lattice_entanglement.errors import EvenSide, NegativeTrap, NonPositiveCoupling, UnsupportedDimension
from lattice_entanglement.model import (
    LatticeSpec,
    iter_modes,
    lattice,
    mean_square_frequency,
    mode_frequency,
    mode_table,
    validate_spec,
)
from lattice_entanglement.oracle import dense_modes


@pytest.mark.parametrize("d, n, delta", [(1, 51, 1e-4), (2, 31, 1e-4), (3, 3, 0.0)])
def test_valid_specs(d, n, delta):
    spec = validate_spec(LatticeSpec(d, n, 1.0, delta))
    assert spec.total_sites() == n**d


@pytest.mark.parametrize(
    "raw, exc",
    [
        (LatticeSpec(1, 4, 1.0, 0.1), EvenSide),
        (LatticeSpec(1, 1, 1.0, 0.1), EvenSide),
        (LatticeSpec(1, 5, 0.0, 0.1), NonPositiveCoupling),
        (LatticeSpec(1, 5, 1.0, -0.1), NegativeTrap),
        (LatticeSpec(4, 5, 1.0, 0.1), UnsupportedDimension),
        (LatticeSpec(0, 5, 1.0, 0.1), UnsupportedDimension),
    ],
)
def test_invalid_specs(raw, exc):
    with pytest.raises(exc):
        validate_spec(raw)


def test_mode_frequency_examples():
    assert mode_frequency(lattice(1, 3), (0,)) == 0.0
    assert mode_frequency(lattice(1, 3), (1,)) == pytest.approx(math.sqrt(3), abs=1e-15)
    assert mode_frequency(lattice(2, 3, 1.0, 2.0), (0, 0)) == pytest.approx(2.0, abs=1e-15)


def test_mode_enumeration_count_and_symmetry():
    spec = lattice(2, 5)
    modes = list(iter_modes(spec))
    assert len(modes) == len(set(modes)) == 25
    assert set(modes) == {tuple(-c for c in m) for m in modes}
    assert modes == sorted(modes)


def test_mode_table_matches_scalar_path():
    spec = lattice(3, 5, 1.0, 0.3)
    indices, x = mode_table(spec)
    assert [tuple(int(c) for c in row) for row in indices] == list(iter_modes(spec))
    for row, xv in zip(indices[::17], x[::17]):
        assert xv == pytest.approx(mode_frequency(spec, tuple(row)), rel=1e-14)


@pytest.mark.parametrize("n", [3, 5, 7])
def test_mean_square_frequency_1d_untrapped(n):
    direct = sum(4 * math.sin(math.pi * l / n) ** 2 for l in range(-(n // 2), n // 2 + 1)) / n
    assert direct == pytest.approx(2.0, abs=1e-14)
    assert mean_square_frequency(lattice(1, n)) == pytest.approx(2.0, abs=1e-14)


def test_mean_square_frequency_3d_and_units():
    assert mean_square_frequency(lattice(3, 5, 1.0, 1.0)) == pytest.approx(7.0, rel=1e-14)
    # physical units: 2 d omega^2 + delta^2
    assert mean_square_frequency(lattice(1, 5, 2.0, 1.0)) == pytest.approx(2 * 4.0 + 1.0, rel=1e-14)


specs = st.builds(
    lattice,
    dimension=st.integers(1, 3),
    side=st.sampled_from([3, 5, 7, 9]),
    coupling=st.floats(0.5, 2.0),
    trap=st.floats(0.0, 3.0),
)


@settings(max_examples=40, deadline=None)
@given(specs)
def test_minimum_at_zero_mode(spec):
    indices, x = mode_table(spec)
    zero = np.all(indices == 0, axis=1)
    assert x[zero][0] == pytest.approx(spec.trap_ratio, abs=1e-15)
    assert np.all(x[~zero] > spec.trap_ratio)


@settings(max_examples=40, deadline=None)
@given(specs)
def test_spectrum_inversion_symmetry(spec):
    for l in list(iter_modes(spec))[:20]:
        assert mode_frequency(spec, l) == mode_frequency(spec, tuple(-c for c in l))


@settings(max_examples=40, deadline=None)
@given(specs)
def test_mean_square_identity(spec):
    _, x = mode_table(spec)
    assert math.fsum(x * x) / x.size == pytest.approx(2 * spec.dimension + spec.trap_ratio**2, rel=1e-12)


@settings(max_examples=15, deadline=None)
@given(specs)
def test_spectrum_matches_dense_diagonalization(spec):
    x = np.sort(mode_table(spec)[1])
    dense = dense_modes(spec).frequencies
    np.testing.assert_allclose(dense, x, rtol=1e-10, atol=1e-10)
