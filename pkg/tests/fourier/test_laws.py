"""
Unit tests for standardized laws, characteristic functions and Kolmogorov distances.
"""

import math

import numpy as np
import pytest

from berry_esseen.core.errors import DegenerateVariance, InvalidProfile
from berry_esseen.core.model import DiscreteFamily
from berry_esseen.fourier.laws import StandardizedLaw, cf_error, exact_cf, exact_dkol, normal_cdf


@pytest.fixture
def rademacher_law() -> StandardizedLaw:
    """The standardized Rademacher law."""
    return StandardizedLaw.from_atoms([-1.0, 1.0], [0.5, 0.5])


def test_normal_cdf_scalar_and_array():
    """Test that scalars stay scalars and arrays stay arrays."""
    assert normal_cdf(0.0) == 0.5
    np.testing.assert_allclose(normal_cdf(np.array([-1.0, 1.0])), [0.15865525, 0.84134475], rtol=1e-7)


def test_from_atoms_standardizes():
    """Test that an arbitrary law is centered and scaled."""
    law = StandardizedLaw.from_atoms([0.0, 10.0], [0.75, 0.25])
    assert law.is_standardized()
    assert law.values[0] < 0 < law.values[1]


def test_from_atoms_point_mass():
    """Test that a point mass cannot be standardized."""
    with pytest.raises(DegenerateVariance, match="zero variance"):
        StandardizedLaw.from_atoms([3.0], [1.0])


def test_bare_constructor_merges_atoms():
    """Test that repeated values are merged and sorted."""
    law = StandardizedLaw([1.0, -1.0, 1.0], [0.25, 0.5, 0.25])
    np.testing.assert_allclose(law.values, [-1.0, 1.0])
    np.testing.assert_allclose(law.probs, [0.5, 0.5])


def test_bare_constructor_rejects_bad_probabilities():
    """Test that probabilities must sum to one."""
    with pytest.raises(InvalidProfile):
        StandardizedLaw([0.0, 1.0], [0.5, 0.2])


def test_from_family(clique_family):
    """Test the standardized law of four blocks of two copies."""
    law = StandardizedLaw.from_family(clique_family)
    np.testing.assert_allclose(law.values, [-2.0, -1.0, 0.0, 1.0, 2.0])
    assert law.is_standardized()


def test_exact_cf_rademacher(rademacher_law):
    """Test that the Rademacher cf is cos(s)."""
    for s in (0.0, 0.3, 2.0):
        value = exact_cf(rademacher_law, s)
        assert value.real == pytest.approx(math.cos(s))
        assert value.imag == pytest.approx(0.0, abs=1e-15)


def test_cf_error_at_origin(rademacher_law):
    """Test that the cf error vanishes at s = 0."""
    assert cf_error(rademacher_law, 0.0) == 0.0


def test_exact_dkol_rademacher(rademacher_law):
    """Test the Kolmogorov distance of a single sign."""
    assert exact_dkol(rademacher_law) == pytest.approx(0.5 - normal_cdf(-1.0))


def test_exact_dkol_point_mass():
    """Test that a point mass at zero is at distance one half."""
    assert exact_dkol(StandardizedLaw([0.0], [1.0])) == pytest.approx(0.5)


def test_exact_dkol_decreases_with_blocks(rademacher):
    """Test that the distance shrinks as independent signs are added."""
    small = exact_dkol(StandardizedLaw.from_family(DiscreteFamily.independent([rademacher] * 4)))
    large = exact_dkol(StandardizedLaw.from_family(DiscreteFamily.independent([rademacher] * 64)))
    assert large < small
    assert large == pytest.approx(0.05, abs=0.005)
