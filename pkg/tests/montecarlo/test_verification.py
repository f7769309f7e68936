"""
Unit tests for empirical Kolmogorov distances, DKW margins and bound certification.
"""

import logging
import math

import numpy as np
import pytest

from berry_esseen.core.errors import Insufficient, WrongRegime
from berry_esseen.core.model import DiscreteLaw
from berry_esseen.fourier.laws import StandardizedLaw, exact_dkol
from berry_esseen.generators import CliqueBlocks, CustomSpec, MDependentWindow, ThreePointFamily
from berry_esseen.montecarlo import (
    REVERSE_BE_CONSTANT,
    VerificationReport,
    dkw_margin,
    empirical_dkol,
    rate_scan,
    sample_standardized_sum,
    verify_bound,
)
from berry_esseen.utils.rng import substream


def make_report(empirical: float, margin: float, bound: float) -> VerificationReport:
    """A report with only the pass-relevant fields set."""
    return VerificationReport({}, "linfty", 100, empirical, margin, bound, 0.99, 0)


@pytest.mark.parametrize(
    "n_samples, confidence, expected",
    [(10 ** 6, 0.99, 0.0016278), (2, 0.5, 0.5887)],
)
def test_dkw_margin_values(n_samples, confidence, expected):
    """Test sqrt(ln(2/(1-c))/(2n))."""
    assert dkw_margin(n_samples, confidence) == pytest.approx(expected, abs=1e-4)


def test_dkw_margin_shrinks():
    """Test that the margin vanishes as n grows."""
    margins = [dkw_margin(10 ** k, 0.99) for k in range(1, 7)]
    assert all(a > b > 0 for a, b in zip(margins, margins[1:]))


@pytest.mark.parametrize("confidence", [0.0, 1.0, 1.5])
def test_dkw_margin_rejects_confidence(confidence):
    """Test that the confidence must lie strictly between 0 and 1."""
    with pytest.raises(WrongRegime, match="Confidence must lie in"):
        dkw_margin(100, confidence)


def test_empirical_dkol_point_mass():
    """Test that samples all at 0 sit at distance one half."""
    assert empirical_dkol(np.zeros(1000)) == pytest.approx(0.5)
    assert empirical_dkol([0.0]) == pytest.approx(0.5)


def test_empirical_dkol_hand_example():
    """Test two samples at -1 and 1."""
    phi = 0.5 * math.erfc(1 / math.sqrt(2))
    assert empirical_dkol([1.0, -1.0]) == pytest.approx(0.5 - phi)


def test_empirical_dkol_needs_samples():
    """Test that an empty sample is refused."""
    with pytest.raises(Insufficient):
        empirical_dkol([])


def test_empirical_dkol_of_normal_samples():
    """Test that normal draws stay inside a high-confidence band."""
    samples = substream(0, 0).standard_normal(200_000)
    assert empirical_dkol(samples) <= dkw_margin(200_000, 0.9999)


def test_empirical_matches_exact_law(clique_family):
    """Test the empirical distance against the exact one across 20 seeds."""
    spec = CustomSpec(clique_family)
    exact = exact_dkol(StandardizedLaw.from_family(clique_family))
    margin = dkw_margin(20000, 0.99)
    inside = sum(
        abs(empirical_dkol(sample_standardized_sum(spec, seed, 20000)) - exact) <= margin for seed in range(20)
    )
    assert inside >= 18


def test_pass_rule():
    """Test that pass is exactly empirical - margin <= bound."""
    assert make_report(0.375, 0.125, 0.25).passed
    assert not make_report(0.5, 0.125, 0.25).passed
    assert make_report(0.9, 0.0, 1.0).to_dict()["pass"]


def test_verify_bound_small_clique(rademacher):
    """Test a quick certification of the bounded theorem."""
    spec = CliqueBlocks(250, 4, rademacher)
    report = verify_bound(spec, "linfty", n_samples=20000, seed=3)
    assert report.passed
    assert report.theorem == "linfty"
    assert report.dkw_margin == pytest.approx(dkw_margin(20000, 0.99))
    assert report.metadata["graph_verified"]
    assert report.to_dict()["spec"]["kind"] == "clique_blocks"


def test_verify_bound_trivial_pass(rademacher, caplog):
    """Test that a clamped bound of 1 always passes."""
    spec = CliqueBlocks(2, 2, rademacher)
    with caplog.at_level(logging.WARNING):
        report = verify_bound(spec, "delta_ge3", n_samples=1000, delta=3.0)
    assert report.theoretical_bound == 1.0
    assert report.passed
    assert "failed" not in caplog.text


def test_reverse_constant():
    """Test the recorded upper value of the reverse constant."""
    assert REVERSE_BE_CONSTANT == pytest.approx(0.4097, abs=1e-4)


@pytest.mark.slow
@pytest.mark.parametrize(
    "spec, theorem, delta",
    [
        (CliqueBlocks(2500, 4, DiscreteLaw.rademacher()), "linfty", None),
        (ThreePointFamily(3.0, 10 ** 4), "delta_ge3", 3.0),
        (MDependentWindow(10 ** 4, 1, DiscreteLaw.rademacher(), "sum"), "delta_2_3", 2.5),
    ],
)
def test_certification_at_scale(spec, theorem, delta):
    """Test certification of the main theorems with 10^6 samples."""
    report = verify_bound(spec, theorem, n_samples=10 ** 6, seed=7, delta=delta, threads=4)
    assert report.passed


@pytest.mark.slow
def test_rate_scan_slope(rademacher):
    """Test that the empirical distance of cliques decays like sqrt((D+1)/N)."""
    scan = rate_scan(4, rademacher, [2 ** 8, 2 ** 10, 2 ** 12], n_samples=200_000, seed=1)
    assert list(scan.frame.columns) == ["N", "D", "empirical_dkol", "dkw_margin", "scaled"]
    assert scan.frame["D"].tolist() == [3, 3, 3]
    assert scan.fit.verdict.value == "yes"
    assert scan.fit.slope == pytest.approx(-0.5, abs=0.15)
    scaled = scan.frame["scaled"]
    assert scaled.max() <= 10 * scaled.min()


def test_rate_scan_rows_do_not_depend_on_scanned_set(rademacher):
    """Test that the row for one size is the same whatever other sizes are scanned."""
    first = rate_scan(4, rademacher, [16, 32, 64], n_samples=2000, seed=3).frame.set_index("N")
    second = rate_scan(4, rademacher, [64, 32, 128], n_samples=2000, seed=3).frame.set_index("N")
    for size in (32, 64):
        assert first.loc[size, "empirical_dkol"] == second.loc[size, "empirical_dkol"]

