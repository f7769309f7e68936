"""
Regime comparison of convergence-rate exponents.

With alpha = ln(D+1)/ln(N), each known bound decays like N^x for an exponent
x(delta, alpha). This module compares three of them:

-   JL: the finite-moment bounds of this package, (alpha-1)(delta-2)/(2(delta+1)).
-   P:  the Stein-method bound, alpha - 1/4, available only when delta >= 4.
-   CS: the Chen-Shao bound, 1 - min(3,delta)/2 + alpha(9 min(3,delta)/2 - 5).

The smallest exponent wins; ties go to JL, then P, then CS. The conjectured
optimal exponent (alpha-1)(delta-2)/2 is carried alongside but never wins.
"""

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

import numpy as np
import pandas as pd
from matplotlib import rc_context
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.colors import ListedColormap
from matplotlib.figure import Figure
from matplotlib.patches import Patch

from berry_esseen.core.errors import WrongRegime

logger = logging.getLogger(__name__)

# Tie-break order; also the integer code of each label in a RegionMap.
LABELS = ("jl", "p", "cs")
COLORS = {"jl": "#2ca02c", "p": "#ff7f0e", "cs": "#1f77b4"}
LEGEND = {
    "jl": "JL: finite-moment bounds",
    "p": "P: Stein method (delta >= 4)",
    "cs": "CS: Chen-Shao",
}
CS_P_THRESHOLD = 1.0 / 30.0
SVG_HASH_SALT = "berry-esseen-regimes"


@dataclass(frozen=True)
class RegimePoint:
    delta: float
    alpha: float

    def __post_init__(self):
        if not 2 < self.delta <= 10:
            raise WrongRegime(f"delta must lie in (2, 10], got {self.delta}.")
        if not 0 <= self.alpha <= 1:
            raise WrongRegime(f"alpha must lie in [0, 1], got {self.alpha}.")

    @classmethod
    def from_sizes(cls, N: int, D: int, delta: float) -> "RegimePoint":  # pylint: disable=invalid-name
        """alpha = ln(D+1)/ln(N)."""
        if N < 2:
            raise WrongRegime(f"alpha needs N >= 2, got {N}.")
        return cls(delta, math.log(D + 1) / math.log(N))


@dataclass(frozen=True)
class ExponentTable:
    jl: float
    cs: float
    p: float
    best: str
    conjectured: float

    def to_dict(self) -> Dict[str, object]:
        return {"jl": self.jl, "p": self.p, "cs": self.cs, "best": self.best, "conjectured": self.conjectured}


def _exponent_arrays(delta, alpha):
    delta = np.asarray(delta, dtype=float)
    alpha = np.asarray(alpha, dtype=float)
    jl = (alpha - 1) * (delta - 2) / (2 * (delta + 1))
    p = np.where(delta >= 4, alpha - 0.25, np.inf)
    capped = np.minimum(3.0, delta)
    cs = 1 - capped / 2 + alpha * (4.5 * capped - 5)
    conjectured = (alpha - 1) * (delta - 2) / 2
    return jl, p, cs, conjectured


def exponents(point: RegimePoint) -> ExponentTable:
    """The three exponents at `point` and the winning label."""
    jl, p, cs, conjectured = (float(x) for x in _exponent_arrays(point.delta, point.alpha))
    values = {"jl": jl, "p": p, "cs": cs}
    best = min(LABELS, key=lambda label: values[label])
    return ExponentTable(jl=jl, cs=cs, p=p, best=best, conjectured=conjectured)


# ---------------------------------------------------------------------------
# Closed-form crossovers
# ---------------------------------------------------------------------------


def cs_jl_boundary(delta: float) -> float:
    """CS < JL exactly when alpha lies below this value."""
    if delta >= 3:
        return 3.0 / (16 * delta + 19)
    return (delta ** 2 - 2 * delta) / (9 * delta ** 2 - 2 * delta - 8)


def p_jl_boundary(delta: float) -> Optional[float]:
    """P < JL exactly when delta is in [4, 5) and alpha lies below this value."""
    if 4 <= delta < 5:
        return (5 - delta) / (8 + 2 * delta)
    return None


def cs_p_boundary(delta: float) -> Optional[float]:
    """P < CS exactly when delta >= 4 and alpha lies above 1/30."""
    return CS_P_THRESHOLD if delta >= 4 else None


BOUNDARIES = {
    frozenset(("cs", "jl")): cs_jl_boundary,
    frozenset(("p", "jl")): p_jl_boundary,
    frozenset(("cs", "p")): cs_p_boundary,
}


def closed_form_boundary(first: str, second: str, delta: float) -> Optional[float]:
    return BOUNDARIES[frozenset((first, second))](delta)


# ---------------------------------------------------------------------------
# Region maps
# ---------------------------------------------------------------------------


def default_delta_grid(start: float = 2.0, stop: float = 10.0, step: float = 0.02) -> np.ndarray:
    """delta = start + k*step for k = 1..(stop-start)/step, rounded to 10 decimals."""
    count = int(round((stop - start) / step))
    return np.round(start + step * np.arange(1, count + 1), 10)


def default_alpha_grid(start: float = 0.0, stop: float = 0.1, step: float = 0.001) -> np.ndarray:
    """alpha = start + j*step for j = 0..(stop-start)/step, rounded to 10 decimals."""
    count = int(round((stop - start) / step))
    return np.round(start + step * np.arange(0, count + 1), 10)


@dataclass(frozen=True)
class RegionMap:
    """
    Winner of the exponent comparison on a delta x alpha grid.

    Arrays are indexed [delta_index, alpha_index].
    """

    deltas: np.ndarray
    alphas: np.ndarray
    jl: np.ndarray
    p: np.ndarray
    cs: np.ndarray
    conjectured: np.ndarray
    winner: np.ndarray

    def label_at(self, i: int, j: int) -> str:
        return LABELS[int(self.winner[i, j])]

    def to_frame(self) -> pd.DataFrame:
        """One row per cell, delta-major, with columns delta, alpha, jl, p, cs, best, conjectured."""
        delta_col, alpha_col = np.meshgrid(self.deltas, self.alphas, indexing="ij")
        return pd.DataFrame({
            "delta": delta_col.ravel(),
            "alpha": alpha_col.ravel(),
            "jl": self.jl.ravel(),
            "p": self.p.ravel(),
            "cs": self.cs.ravel(),
            "best": np.array(LABELS, dtype=object)[self.winner.ravel()],
            "conjectured": self.conjectured.ravel(),
        })

    def transitions(self) -> List[Dict[str, object]]:
        """Cells, along each delta column, where the winner changes with alpha."""
        rows = []
        for i, delta in enumerate(self.deltas):
            column = self.winner[i]
            for j in np.flatnonzero(column[1:] != column[:-1]):
                rows.append({
                    "delta": float(delta),
                    "alpha_below": float(self.alphas[j]),
                    "alpha_above": float(self.alphas[j + 1]),
                    "below": LABELS[int(column[j])],
                    "above": LABELS[int(column[j + 1])],
                })
        return rows


def crossover_curves(delta_grid: Sequence[float], alpha_grid: Sequence[float]) -> RegionMap:
    """
    Evaluates the exponent comparison on every grid cell.

    Args:
        delta_grid (Sequence[float]): Values in (2, 10].
        alpha_grid (Sequence[float]): Values in [0, 1].

    Returns:
        RegionMap: Exponents and winners per cell.

    Raises:
        WrongRegime: If a grid value is out of range.
    """
    deltas = np.asarray(delta_grid, dtype=float)
    alphas = np.asarray(alpha_grid, dtype=float)
    if deltas.size == 0 or alphas.size == 0:
        raise WrongRegime("Regime grids must be non-empty.")
    if np.any(deltas <= 2) or np.any(deltas > 10):
        raise WrongRegime("delta grid must lie in (2, 10].")
    if np.any(alphas < 0) or np.any(alphas > 1):
        raise WrongRegime("alpha grid must lie in [0, 1].")

    delta_mesh, alpha_mesh = np.meshgrid(deltas, alphas, indexing="ij")
    jl, p, cs, conjectured = _exponent_arrays(delta_mesh, alpha_mesh)
    # argmin keeps the first minimum, which is the jl < p < cs tie order.
    winner = np.argmin(np.stack([jl, p, cs]), axis=0)
    logger.info(f"Region map evaluated on {deltas.size} x {alphas.size} cells.")
    return RegionMap(deltas, alphas, jl, p, cs, conjectured, winner)


def _closed_form_traces(deltas: np.ndarray) -> List[tuple]:
    fine = np.linspace(deltas.min(), deltas.max(), 800)
    traces = [(fine, np.array([cs_jl_boundary(d) for d in fine]), "CS/JL crossover")]
    p_range = fine[(fine >= 4) & (fine < 5)]
    if p_range.size:
        traces.append((p_range, (5 - p_range) / (8 + 2 * p_range), "P/JL crossover"))
    high = fine[fine >= 4]
    if high.size:
        traces.append((high, np.full(high.size, CS_P_THRESHOLD), "P/CS crossover"))
    return traces


def render_svg(region_map: RegionMap, path: Union[str, Path]) -> Path:
    """
    Writes the region map as an SVG with dashed closed-form crossovers.

    Output is byte-identical across runs: the SVG hash salt is fixed and no
    date is embedded.
    """
    path = Path(path)
    figure = Figure(figsize=(8, 5))
    FigureCanvasAgg(figure)
    ax = figure.add_subplot(1, 1, 1)

    d_step = region_map.deltas[1] - region_map.deltas[0] if region_map.deltas.size > 1 else 0.02
    a_step = region_map.alphas[1] - region_map.alphas[0] if region_map.alphas.size > 1 else 0.001
    extent = (
        region_map.deltas[0] - d_step / 2, region_map.deltas[-1] + d_step / 2,
        region_map.alphas[0] - a_step / 2, region_map.alphas[-1] + a_step / 2,
    )
    cmap = ListedColormap([COLORS[label] for label in LABELS])
    ax.imshow(region_map.winner.T, origin="lower", extent=extent, aspect="auto",
              interpolation="nearest", cmap=cmap, vmin=-0.5, vmax=len(LABELS) - 0.5)

    for index, (xs, ys, _) in enumerate(_closed_form_traces(region_map.deltas)):
        ax.plot(xs, ys, linestyle="--", color="black", linewidth=0.8,
                label="closed-form crossovers" if index == 0 else "_nolegend_")

    patches = [Patch(color=COLORS[label], label=LEGEND[label]) for label in LABELS]
    line_handles, _ = ax.get_legend_handles_labels()
    ax.legend(handles=patches + line_handles, loc="upper right", fontsize=8)
    ax.set_xlim(extent[0], extent[1])
    ax.set_ylim(extent[2], extent[3])
    ax.set_xlabel("delta")
    ax.set_ylabel("alpha = ln(D+1) / ln(N)")
    ax.set_title("Best rate exponent")

    path.parent.mkdir(parents=True, exist_ok=True)
    with rc_context({"svg.hashsalt": SVG_HASH_SALT}):
        figure.savefig(path, format="svg", metadata={"Date": None})
    logger.info(f"Region map written to {path}")
    return path
