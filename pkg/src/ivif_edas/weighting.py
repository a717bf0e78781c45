"""Entropy-derived attribute weights from a normalized group matrix."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .aggregation import GroupMatrix
from .errors import DegenerateProblemError, ShapeError
from .ivif import DISTANCES


@dataclass(frozen=True)
class EntropyBreakdown:
    nip: np.ndarray          # (k, 4) negative ideal point
    dist: np.ndarray         # (n, k) distances to the negative ideal
    norm_dist: np.ndarray    # (n, k) column-normalized distances
    degenerate: np.ndarray   # (k,) columns whose distances are all zero
    entropy: np.ndarray      # (k,)
    weights: np.ndarray      # (k,)


def _cells(m: GroupMatrix | np.ndarray) -> np.ndarray:
    if isinstance(m, GroupMatrix) and not m.normalized:
        raise ValueError("entropy weighting expects the normalized matrix")
    cells = m.cells if isinstance(m, GroupMatrix) else np.asarray(m, dtype=float)
    if cells.ndim != 3 or cells.shape[0] == 0:
        raise ShapeError(f"expected a non-empty n x k x 4 matrix, got shape {cells.shape}")
    return cells


def negative_ideal(m: GroupMatrix | np.ndarray) -> np.ndarray:
    """Per column: smallest memberships and largest non-memberships."""
    cells = _cells(m)
    return np.concatenate([cells[..., :2].min(axis=0), cells[..., 2:].max(axis=0)], axis=-1)


def entropy_distance_matrix(m: GroupMatrix | np.ndarray, nip: np.ndarray,
                            distance: str = "hybrid") -> np.ndarray:
    cells = _cells(m)
    nip = np.asarray(nip, dtype=float)
    if nip.shape != cells.shape[1:]:
        raise ShapeError(f"ideal row has shape {nip.shape}, matrix columns need {cells.shape[1:]}")
    return DISTANCES[distance](cells, nip[None, :, :])


def normalize_distances(dist: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Divide each column by its sum.

    Returns ``(normalized, degenerate)``; a degenerate column (sum zero) is
    left as zeros and flagged rather than raising here.
    """
    dist = np.asarray(dist, dtype=float)
    if (dist < 0).any():
        raise ValueError("distances must be non-negative")
    totals = dist.sum(axis=0)
    degenerate = totals == 0
    safe = np.where(degenerate, 1.0, totals)
    return dist / safe, degenerate


def entropy(norm_dist: np.ndarray, degenerate: np.ndarray | None = None) -> np.ndarray:
    """Shannon entropy of each column scaled by ``1/ln n``.

    ``0 ln 0`` counts as 0.  Degenerate columns carry no information and get
    entropy 1.
    """
    p = np.asarray(norm_dist, dtype=float)
    n = p.shape[0]
    if n < 2:
        raise ShapeError("entropy needs at least two alternatives")
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0, p * np.log(np.where(p > 0, p, 1.0)), 0.0)
    e = -terms.sum(axis=0) / np.log(n)
    if degenerate is not None:
        e = np.where(degenerate, 1.0, e)
    # Rounding can push a uniform column a hair above 1.
    return np.clip(e, 0.0, 1.0)


def entropy_breakdown(m: GroupMatrix | np.ndarray, distance: str = "hybrid") -> EntropyBreakdown:
    cells = _cells(m)
    nip = negative_ideal(cells)
    dist = entropy_distance_matrix(cells, nip, distance)
    norm, degenerate = normalize_distances(dist)
    e = entropy(norm, degenerate)
    information = 1.0 - e
    total = information.sum()
    if total <= 0:
        raise DegenerateProblemError(
            "no attribute separates the alternatives; entropy weights are undefined")
    return EntropyBreakdown(nip, dist, norm, degenerate, e, information / total)


def entropy_weights(m: GroupMatrix | np.ndarray, distance: str = "hybrid") -> np.ndarray:
    return entropy_breakdown(m, distance).weights
