"""Deterministic ranking with tolerance-aware ties broken by original index."""

from __future__ import annotations

from functools import cmp_to_key

import numpy as np

from .ivif import TIE_TOL


def rank_order(*keys, descending: bool = True, tol: float = TIE_TOL) -> np.ndarray:
    """Indices sorted lexicographically by ``keys``.

    Values within ``tol`` of each other count as equal and fall through to
    the next key, and finally to the original index.
    """
    columns = [np.asarray(k, dtype=float) for k in keys]
    sign = -1 if descending else 1

    def cmp(i: int, j: int) -> int:
        for col in columns:
            a, b = col[i], col[j]
            if abs(a - b) > tol:
                return sign if a > b else -sign
        return (i > j) - (i < j)

    return np.array(sorted(range(len(columns[0])), key=cmp_to_key(cmp)), dtype=int)


def positions(order: np.ndarray) -> np.ndarray:
    """1-based rank of each alternative given a best-first order."""
    pos = np.empty(len(order), dtype=int)
    pos[np.asarray(order)] = np.arange(1, len(order) + 1)
    return pos
