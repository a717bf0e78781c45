"""Weighted IVIF aggregation, expert fusion and benefit/cost normalization.

Matrices are numpy arrays of shape ``(n_alternatives, n_attributes, 4)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .errors import ShapeError, WeightError
from .ivif import IVIFN, complement, validate_array

WEIGHT_TOL = 1e-9

AttributeKind = Literal["benefit", "cost"]


@dataclass(frozen=True)
class AttributeSpec:
    name: str
    kind: AttributeKind = "benefit"

    def __post_init__(self) -> None:
        if self.kind not in ("benefit", "cost"):
            raise ValueError(f"attribute {self.name!r}: kind must be 'benefit' or 'cost', got {self.kind!r}")

    @property
    def is_cost(self) -> bool:
        return self.kind == "cost"


@dataclass(frozen=True, eq=False)
class ExpertMatrix:
    expert_id: str
    cells: np.ndarray

    def __post_init__(self) -> None:
        cells = validate_array(self.cells, what=f"expert {self.expert_id}")
        if cells.ndim != 3:
            raise ShapeError(f"expert {self.expert_id}: expected an n x k grid of quadruples, got shape {cells.shape}")
        object.__setattr__(self, "cells", cells)


@dataclass(frozen=True, eq=False)
class GroupMatrix:
    cells: np.ndarray
    normalized: bool = False

    def __post_init__(self) -> None:
        cells = validate_array(self.cells, what="group matrix")
        if cells.ndim != 3:
            raise ShapeError(f"group matrix must be n x k x 4, got shape {cells.shape}")
        cells = cells.copy()
        cells.flags.writeable = False
        object.__setattr__(self, "cells", cells)

    @property
    def shape(self) -> tuple[int, int]:
        return self.cells.shape[:2]


def check_weights(weights, size: int | None = None, *, name: str = "weights") -> np.ndarray:
    """Validate a weight vector: entries in [0, 1], sum 1 within 1e-9.

    Never renormalizes.
    """
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1 or w.size == 0:
        raise WeightError(f"{name}: expected a non-empty vector, got shape {w.shape}")
    if size is not None and w.size != size:
        raise ShapeError(f"{name}: expected {size} entries, got {w.size}")
    if not np.isfinite(w).all() or (w < 0).any() or (w > 1).any():
        raise WeightError(f"{name}: every entry must lie in [0, 1], got {w.tolist()}")
    total = float(w.sum())
    if abs(total - 1.0) > WEIGHT_TOL:
        raise WeightError(f"{name}: entries must sum to 1, got {total!r}", total=total)
    return w


def _stack_values(values) -> tuple[np.ndarray, bool]:
    if isinstance(values, np.ndarray):
        return validate_array(values, what="values"), False
    seq = list(values)
    scalar = bool(seq) and all(isinstance(v, IVIFN) for v in seq)
    arr = np.array([v.as_tuple() if isinstance(v, IVIFN) else v for v in seq], dtype=float)
    return validate_array(arr, what="values"), scalar


def _weighted_products(arr: np.ndarray, w: np.ndarray, axis: int):
    """Product over ``axis`` of ``arr ** w`` and ``(1-arr) ** w`` with 0**0 = 1."""
    shape = [1] * arr.ndim
    shape[axis] = w.size
    wb = w.reshape(shape)
    # numpy already yields 0.0 ** 0.0 == 1.0, which is the convention we want.
    return np.prod(arr ** wb, axis=axis), np.prod((1 - arr) ** wb, axis=axis)


def _aggregate(values, weights, axis: int, geometric: bool):
    arr, scalar = _stack_values(values)
    if arr.ndim < 2:
        raise ShapeError("aggregation needs at least one value")
    axis = axis % (arr.ndim - 1)
    w = check_weights(weights, arr.shape[axis])
    direct, dual = _weighted_products(arr, w, axis)
    if geometric:
        out = np.stack([direct[..., 0], direct[..., 1], 1 - dual[..., 2], 1 - dual[..., 3]], axis=-1)
    else:
        out = np.stack([1 - dual[..., 0], 1 - dual[..., 1], direct[..., 2], direct[..., 3]], axis=-1)
    return IVIFN.from_array(out) if scalar else out


def ivifwa(values, weights, axis: int = 0):
    """Weighted average operator.

    ``values`` is a sequence of IVIFNs (result: IVIFN) or an array with the
    weighted items along ``axis`` (result: array with that axis removed).
    """
    return _aggregate(values, weights, axis, geometric=False)


def ivifwg(values, weights, axis: int = 0):
    """Weighted geometric operator; the dual of :func:`ivifwa`."""
    return _aggregate(values, weights, axis, geometric=True)


def aggregate_experts(matrices: Sequence[ExpertMatrix | np.ndarray], expert_weights) -> GroupMatrix:
    grids = [m.cells if isinstance(m, ExpertMatrix) else validate_array(m) for m in matrices]
    if not grids:
        raise ShapeError("no expert matrices given")
    shapes = {g.shape for g in grids}
    if len(shapes) != 1:
        raise ShapeError(f"expert matrices differ in shape: {sorted(shapes)}")
    w = check_weights(expert_weights, len(grids), name="expert weights")
    return GroupMatrix(ivifwa(np.stack(grids), w, axis=0), normalized=False)


def cost_mask(attrs: Sequence[AttributeSpec], k: int | None = None) -> np.ndarray:
    if k is not None and len(attrs) != k:
        raise ShapeError(f"{len(attrs)} attributes given for a matrix with {k} columns")
    return np.array([a.is_cost for a in attrs], dtype=bool)


def swap_cost_columns(cells: np.ndarray, attrs: Sequence[AttributeSpec]) -> np.ndarray:
    """Complement every cell of the cost columns; an involution."""
    mask = cost_mask(attrs, cells.shape[1])
    out = np.array(cells, dtype=float, copy=True)
    out[:, mask] = complement(out[:, mask])
    return out


def normalize_matrix(m: GroupMatrix, attrs: Sequence[AttributeSpec]) -> GroupMatrix:
    if m.normalized:
        raise ValueError("matrix is already normalized")
    return GroupMatrix(swap_cost_columns(m.cells, attrs), normalized=True)
