"""
Unit tests for the numerical constants behind the bounds.
"""

import math

import numpy as np
import pytest

from berry_esseen.cumulants.constants import (
    DISPLAYED_CONSTANTS,
    constant_C,
    constant_C_second,
    derived_theorem_constants,
    proof_constants,
    smoothing_objective,
    smoothing_second_derivative,
)


def test_constant_c_enclosure():
    """Test that C is enclosed in [5.17, 5.18] with a narrow interval."""
    c = constant_C()
    assert c.within(5.17, 5.18)
    assert 0 < c.width <= 1e-10


def test_constant_c_exceeds_first_term():
    """Test that C is larger than its first series term, which equals 2."""
    first_term = 4 * math.e ** 3 * 3 / (math.factorial(3) * math.e ** 3)
    assert first_term == pytest.approx(2.0)
    assert constant_C().lo > first_term


def test_constant_c_second():
    """Test that C'' = 2e(C - 2) lies in [16.8, 17.3]."""
    c2 = constant_C_second()
    assert c2.within(16.8, 17.3)
    assert c2.mid == pytest.approx(2 * math.e * (constant_C().mid - 2))


def test_proof_constants():
    """Test the smoothing optimum and the constants B and chi."""
    pc = proof_constants()
    assert pc.alpha0 <= 0.636647
    assert pc.alpha0 == pytest.approx(0.6366, abs=1e-3)
    assert pc.I <= 16.5653
    assert pc.I == pytest.approx(smoothing_objective(pc.alpha0))
    assert 71.107 < pc.B.lo <= pc.B.hi < 71.125
    assert pc.chi <= 8.015


def test_smoothing_objective_convex():
    """Test that the smoothing objective has a positive second derivative on (0, 1)."""
    grid = np.linspace(1e-3, 1 - 1e-3, 1000)
    assert all(smoothing_second_derivative(a) > 0 for a in grid)


def test_smoothing_optimum_is_minimum():
    """Test that nearby points give larger objective values."""
    alpha0 = proof_constants().alpha0
    assert smoothing_objective(alpha0 - 1e-3) > smoothing_objective(alpha0)
    assert smoothing_objective(alpha0 + 1e-3) > smoothing_objective(alpha0)


def test_displayed_constants_cover_derivations():
    """Test that every displayed constant is at least its derived value."""
    table = derived_theorem_constants()
    assert set(table) == set(DISPLAYED_CONSTANTS)
    for name, row in table.items():
        assert row["covers"], f"{name}: displayed {row['displayed']} < derived {row['derived']}"
    assert table["linfty_cumulant"]["derived"] == pytest.approx(68.5, abs=0.2)
