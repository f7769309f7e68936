"""
Unit tests for the rate-exponent comparison and region maps.
"""

import math

import numpy as np
import pytest

from berry_esseen.bounds.regimes import (
    CS_P_THRESHOLD,
    RegimePoint,
    closed_form_boundary,
    crossover_curves,
    default_alpha_grid,
    default_delta_grid,
    exponents,
    render_svg,
)
from berry_esseen.core.errors import WrongRegime


def test_exponents_independent_delta_three():
    """Test the three exponents at delta = 3 with independent summands."""
    table = exponents(RegimePoint(3.0, 0.0))
    assert table.jl == pytest.approx(-1 / 8)
    assert table.cs == pytest.approx(-0.5)
    assert math.isinf(table.p)
    assert table.best == "cs"
    assert table.conjectured == pytest.approx(-0.5)


def test_exponents_p_unavailable_below_four():
    """Test that the Stein-method exponent is infinite for delta < 4."""
    assert math.isinf(exponents(RegimePoint(3.5, 0.05)).p)


def test_p_beats_cs_above_threshold():
    """Test that P < CS for delta >= 4 once alpha exceeds 1/30."""
    table = exponents(RegimePoint(5.0, CS_P_THRESHOLD + 0.01))
    assert table.p < table.cs


@pytest.mark.parametrize("delta, alpha", [(2.0, 0.1), (10.5, 0.1), (3.0, -0.1), (3.0, 1.5)])
def test_regime_point_out_of_range(delta, alpha):
    """Test that points outside (2,10] x [0,1] are refused."""
    with pytest.raises(WrongRegime, match="must lie in"):
        RegimePoint(delta, alpha)


def test_regime_point_from_sizes():
    """Test alpha = ln(D+1)/ln(N)."""
    point = RegimePoint.from_sizes(10 ** 6, 999, 3.0)
    assert point.alpha == pytest.approx(0.5)


def test_default_grids():
    """Test the grid endpoints and sizes."""
    deltas = default_delta_grid()
    alphas = default_alpha_grid()
    assert deltas[0] == pytest.approx(2.02)
    assert deltas[-1] == pytest.approx(10.0)
    assert deltas.size == 400
    assert alphas.size == 101
    assert alphas[0] == 0.0


def test_alpha_tenth_column_is_jl():
    """Test that the finite-moment bounds win everywhere at alpha = 0.1."""
    region = crossover_curves(default_delta_grid(), [0.1])
    assert all(region.label_at(i, 0) == "jl" for i in range(region.deltas.size))


@pytest.mark.parametrize("delta", [2.5, 3.0, 4.5, 6.0])
def test_transitions_match_closed_form(delta):
    """Test that grid transitions sit within one alpha step of the closed form."""
    alphas = default_alpha_grid()
    step = alphas[1] - alphas[0]
    region = crossover_curves([delta], alphas)
    transitions = region.transitions()
    assert transitions
    for row in transitions:
        boundary = closed_form_boundary(row["below"], row["above"], delta)
        assert boundary is not None
        assert row["alpha_below"] - step <= boundary <= row["alpha_above"] + step


def test_crossover_rejects_bad_grid():
    """Test that grids must lie in range."""
    with pytest.raises(WrongRegime, match="delta grid"):
        crossover_curves([2.0, 3.0], [0.0])
    with pytest.raises(WrongRegime, match="non-empty"):
        crossover_curves([], [0.0])


def test_region_frame_columns():
    """Test the delta-major table layout."""
    frame = crossover_curves([3.0, 5.0], [0.0, 0.05]).to_frame()
    assert list(frame.columns) == ["delta", "alpha", "jl", "p", "cs", "best", "conjectured"]
    assert frame["delta"].tolist() == [3.0, 3.0, 5.0, 5.0]
    assert set(frame["best"]) <= {"jl", "p", "cs"}
    assert np.isinf(frame.loc[0, "p"])


def test_render_svg_is_reproducible(tmp_path):
    """Test that two renders of the same map are byte-identical."""
    region = crossover_curves(np.round(np.arange(2.5, 6.01, 0.5), 10), default_alpha_grid(step=0.01))
    first = render_svg(region, tmp_path / "a.svg")
    second = render_svg(region, tmp_path / "b" / "b.svg")
    assert first.read_bytes() == second.read_bytes()
    assert b"<svg" in first.read_bytes()
