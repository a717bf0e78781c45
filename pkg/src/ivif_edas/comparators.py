"""Reference ranking methods run on the same normalized matrix as EDAS.

* ``ivifwa_rank``: aggregate each alternative over its attributes.
* ``topsis``: closeness to the positive and negative ideal solutions.
* ``taxonomy``: development-pattern distance of each alternative.
* ``todim``: pairwise dominance with a loss-attenuation factor ``theta``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

from .aggregation import AttributeSpec, GroupMatrix, check_weights, cost_mask, ivifwa, swap_cost_columns
from .errors import DegenerateProblemError, DomainError, ShapeError
from .ivif import MIN, TIE_TOL, accuracy_simple, scale, score_simple
from .ranking import rank_order

TopsisForm = Literal["unweighted_distance", "double_weighted"]


def _cells(m: GroupMatrix | np.ndarray, min_rows: int = 1) -> np.ndarray:
    cells = m.cells if isinstance(m, GroupMatrix) else np.asarray(m, dtype=float)
    if cells.ndim != 3:
        raise ShapeError(f"expected an n x k x 4 matrix, got shape {cells.shape}")
    if cells.shape[0] < min_rows:
        raise ShapeError(f"method needs at least {min_rows} alternatives, got {cells.shape[0]}")
    return cells


def _ideal(cells: np.ndarray, best: bool) -> np.ndarray:
    """Column-wise best (max memberships, min non-memberships) or worst point."""
    hi, lo = (np.max, np.min) if best else (np.min, np.max)
    return np.concatenate([hi(cells[..., :2], axis=0), lo(cells[..., 2:], axis=0)], axis=-1)


# --- weighted-average ranking ------------------------------------------------------

@dataclass(frozen=True, eq=False)
class IvifwaResult:
    aggregate: np.ndarray  # (n, 4)
    sf: np.ndarray
    af: np.ndarray
    ranking: np.ndarray


def ivifwa_rank(m: GroupMatrix | np.ndarray, weights) -> IvifwaResult:
    cells = _cells(m)
    w = check_weights(weights, cells.shape[1], name="attribute weights")
    agg = ivifwa(cells, w, axis=1)
    sf, af = score_simple(agg), accuracy_simple(agg)
    return IvifwaResult(agg, sf, af, rank_order(sf, af))


# --- TOPSIS ----------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TopsisResult:
    d_plus: np.ndarray
    d_minus: np.ndarray
    closeness: np.ndarray
    ranking: np.ndarray
    weighted: np.ndarray   # (n, k, 4) attribute-weighted matrix
    pis: np.ndarray        # (k, 4)
    nis: np.ndarray        # (k, 4)
    form: TopsisForm
    degenerate: bool = False


def topsis(m: GroupMatrix | np.ndarray, attrs: Sequence[AttributeSpec], weights,
           form: TopsisForm = "unweighted_distance") -> TopsisResult:
    """Closeness coefficient ``D- / (D+ + D-)``.

    The normalized matrix is mapped back to its raw benefit/cost form and
    weighted cell by cell with ``scale(w_s, cell)``.  Ideals take the best
    value per column, with the direction flipped on cost attributes.

    ``form="unweighted_distance"`` (default) sums absolute bound differences
    without a second weight factor.  ``form="double_weighted"`` multiplies each
    attribute's term by ``w_s`` again.  Both divide by ``4n``.
    """
    if form not in ("unweighted_distance", "double_weighted"):
        raise ValueError(f"unknown TOPSIS form {form!r}")
    cells = _cells(m, min_rows=2)
    n, k = cells.shape[:2]
    w = check_weights(weights, k, name="attribute weights")
    raw = swap_cost_columns(cells, attrs)
    # scale(k, x) tends to MIN as k -> 0; an unweighted attribute carries no signal.
    used = w > 0
    weighted = np.where(used[:, None], scale(np.where(used, w, 1.0), raw), MIN.as_array())
    best, worst = _ideal(weighted, True), _ideal(weighted, False)
    cost = cost_mask(attrs, k)
    pis = np.where(cost[:, None], worst, best)
    nis = np.where(cost[:, None], best, worst)
    factor = w if form == "double_weighted" else np.ones(k)
    d_plus = (factor * np.abs(weighted - pis[None]).sum(axis=-1)).sum(axis=1) / (4 * n)
    d_minus = (factor * np.abs(weighted - nis[None]).sum(axis=-1)).sum(axis=1) / (4 * n)
    total = d_plus + d_minus
    degenerate = bool((total <= 0).any())
    if degenerate:
        closeness = np.full(n, 0.5)
    else:
        closeness = d_minus / total
    return TopsisResult(d_plus, d_minus, closeness, rank_order(closeness), weighted,
                        pis, nis, form, degenerate)


# --- taxonomy ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TaxonomyResult:
    dist_matrix: np.ndarray     # (n, n)
    row_means: np.ndarray       # (n,) mean distance to the other alternatives
    bounds: tuple[float, float]
    outliers: np.ndarray        # (n,) bool, outside the homogeneity bounds
    ideal: np.ndarray           # (k, 4)
    k_ro: np.ndarray
    k_bound: float
    development: np.ndarray     # NaN for dropped alternatives
    ranking: np.ndarray         # ascending development; dropped alternatives omitted


def taxonomy(m: GroupMatrix | np.ndarray, weights, drop_outliers: bool = False) -> TaxonomyResult:
    cells = _cells(m, min_rows=2)
    n, k = cells.shape[:2]
    w = check_weights(weights, k, name="attribute weights")

    diffs = np.abs(cells[:, None] - cells[None, :]).sum(axis=-1)      # (n, n, k)
    dist = (diffs * w).sum(axis=-1) / 4
    row_means = dist.sum(axis=1) / (n - 1)
    center, spread = row_means.mean(), row_means.std()
    bounds = (float(center - 2 * spread), float(center + 2 * spread))
    outliers = (row_means < bounds[0] - TIE_TOL) | (row_means > bounds[1] + TIE_TOL)

    keep = ~outliers if drop_outliers else np.ones(n, dtype=bool)
    kept = cells[keep]
    ideal = _ideal(kept, best=True)
    k_ro = (np.abs(kept - ideal[None]).sum(axis=-1) * w).sum(axis=-1) / 4
    k_bound = float(k_ro.mean() + 2 * k_ro.std())
    if k_bound <= 0:
        raise DegenerateProblemError(
            "all alternatives coincide with the ideal pattern; development scores are undefined")
    development = np.full(n, np.nan)
    development[keep] = k_ro / k_bound
    kept_index = np.flatnonzero(keep)
    ranking = kept_index[rank_order(development[keep], descending=False)]
    full_k_ro = np.full(n, np.nan)
    full_k_ro[keep] = k_ro
    return TaxonomyResult(dist, row_means, bounds, outliers, ideal, full_k_ro, k_bound,
                          development, ranking)


# --- TODIM ------------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TodimResult:
    normalized: np.ndarray      # (n, k, 4) vector-normalized cells
    partial: np.ndarray         # (n, n, k) per-attribute dominance of p over r
    dominance: np.ndarray       # (n, n)
    totals: np.ndarray          # (n,) overall dominance of each alternative
    xi: np.ndarray
    theta: float
    ranking: np.ndarray
    degenerate: bool = False
    flags: dict = field(default_factory=dict)


def todim(m: GroupMatrix | np.ndarray, weights, theta: float = 1.0) -> TodimResult:
    """Pairwise dominance ranking.

    Columns are vector-normalized: membership bounds are divided by
    ``sqrt(sum_p sqrt(lm^2 + rm^2))`` and non-membership bounds by the
    analogous term.  Gains and losses are decided by ``score_simple`` of the
    original cells; the size of each term is
    ``sqrt(w_s / sum w) * sqrt(quarter-sum of bound differences)``, with
    losses negated and divided by ``theta``.  ``xi`` is the min-max scaled
    total dominance of each alternative over all others.
    """
    if not (np.isfinite(theta) and theta > 0):
        raise DomainError(f"theta must be positive, got {theta!r}")
    cells = _cells(m, min_rows=2)
    n, k = cells.shape[:2]
    w = check_weights(weights, k, name="attribute weights")

    member = np.sqrt(np.sqrt(cells[..., 0] ** 2 + cells[..., 1] ** 2).sum(axis=0))
    nonmember = np.sqrt(np.sqrt(cells[..., 2] ** 2 + cells[..., 3] ** 2).sum(axis=0))
    denom = np.stack([member, member, nonmember, nonmember], axis=-1)
    normalized = cells / np.where(denom > 0, denom, 1.0)

    rel = w / w.max()
    share = np.sqrt(rel / rel.sum())                                     # (k,)
    dist = np.sqrt(np.abs(normalized[:, None] - normalized[None, :]).sum(axis=-1) / 4)
    sc = score_simple(cells)
    gap = sc[:, None, :] - sc[None, :, :]                                 # (n, n, k)
    magnitude = share * dist
    partial = np.where(gap > TIE_TOL, magnitude,
                       np.where(gap < -TIE_TOL, -magnitude / theta, 0.0))
    dominance = partial.sum(axis=-1)
    totals = dominance.sum(axis=1)
    spread = totals.max() - totals.min()
    degenerate = bool(spread <= TIE_TOL)
    xi = np.full(n, 0.5) if degenerate else (totals - totals.min()) / spread
    return TodimResult(normalized, partial, dominance, totals, xi, float(theta),
                       rank_order(xi), degenerate,
                       {"constant_dominance": True} if degenerate else {})
