"""EDAS ranking with prospect-theory distances and probability weighting.

Two entry points:

* :func:`score_and_rank` works on a normalized IVIF matrix ``(n, k, 4)``.
* :func:`crisp_edas` works on a real-valued ``(n, k)`` matrix with typed
  attributes.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Literal, Sequence

import numpy as np

from .aggregation import AttributeSpec, GroupMatrix, check_weights, cost_mask
from .errors import DegenerateProblemError, DomainError, ShapeError
from .ivif import TIE_TOL, accuracy_wc, compare, dist_hybrid
from .ranking import rank_order

Branch = Literal["gain", "loss"]
CPT_PARAMS = ("alpha", "beta", "gamma", "delta", "rho")
_DIST_NOISE = 1e-12


@dataclass(frozen=True)
class CptParams:
    """Curvatures of the weighting (alpha, beta) and value (gamma, delta) functions, plus loss aversion rho."""

    alpha: float = 0.61
    beta: float = 0.69
    gamma: float = 0.88
    delta: float = 0.88
    rho: float = 2.25

    def __post_init__(self) -> None:
        for name in CPT_PARAMS:
            check_param(name, getattr(self, name))

    def with_value(self, name: str, value: float) -> "CptParams":
        if name not in CPT_PARAMS:
            raise DomainError(f"unknown parameter {name!r}; expected one of {', '.join(CPT_PARAMS)}")
        return replace(self, **{name: float(value)})

    def as_dict(self) -> dict[str, float]:
        return {name: float(getattr(self, name)) for name in CPT_PARAMS}


def check_param(name: str, value: float) -> None:
    """Raise DomainError unless ``value`` is legal for parameter ``name``."""
    v = float(value)
    if name == "rho":
        ok = np.isfinite(v) and v > 1
        legal = "rho > 1"
    else:
        ok = 0 < v <= 1
        legal = f"0 < {name} <= 1"
    if not ok:
        raise DomainError(f"{name}={value!r} is out of range ({legal})", parameter=name, value=v)


@dataclass(frozen=True, eq=False)
class EdasTrace:
    avg: np.ndarray            # (k, 4) for IVIF input, (k,) for crisp input
    gain: np.ndarray           # (n, k) bool: which cells sit on the gain side
    rel_weights: np.ndarray
    pda: np.ndarray
    nda: np.ndarray
    sp: np.ndarray
    sn: np.ndarray
    nsp: np.ndarray
    nsn: np.ndarray
    scores: np.ndarray
    ranking: np.ndarray        # best first
    flags: dict = field(default_factory=dict)


def cpt_weight(p, branch: Branch | np.ndarray, params: CptParams = CptParams()):
    """Probability weighting ``p^c / (p^c + (1-p)^c)^(1/c)``.

    ``c`` is alpha on gains and beta on losses.  ``branch`` may be the string
    ``"gain"``/``"loss"`` or a boolean array (True = gain).
    """
    p = np.asarray(p, dtype=float)
    if isinstance(branch, str):
        if branch not in ("gain", "loss"):
            raise ValueError(f"branch must be 'gain' or 'loss', got {branch!r}")
        c = params.alpha if branch == "gain" else params.beta
    else:
        c = np.where(np.asarray(branch, dtype=bool), params.alpha, params.beta)
    if ((p < 0) | (p > 1)).any():
        raise DomainError(f"probability weights need p in [0, 1], got {p}")
    num = p ** c
    out = num / (num + (1 - p) ** c) ** (1 / c)
    return float(out) if out.ndim == 0 else out


def _cells(m: GroupMatrix | np.ndarray, batch: bool = False) -> np.ndarray:
    cells = m.cells if isinstance(m, GroupMatrix) else np.asarray(m, dtype=float)
    ok = cells.ndim >= 3 if batch else cells.ndim == 3
    if not ok or cells.shape[-1] != 4 or cells.shape[-3] == 0:
        raise ShapeError(f"expected a non-empty n x k x 4 matrix, got shape {cells.shape}")
    return cells


def average_solution(m: GroupMatrix | np.ndarray) -> np.ndarray:
    """Equal-weight weighted average of each column, shape ``(k, 4)``."""
    cells = _cells(m, batch=True)
    # Geometric means written out directly; same result as ivifwa with 1/n weights.
    inv = 1.0 / cells.shape[-3]
    lower = 1 - np.prod(1 - cells[..., :2], axis=-3) ** inv
    upper = np.prod(cells[..., 2:], axis=-3) ** inv
    return np.concatenate([lower, upper], axis=-1)


def branch_of(cell, avg):
    """``"gain"`` when the cell ranks at or above the average, else ``"loss"``.

    With array arguments returns a boolean array (True = gain).
    """
    result = np.asarray(compare(cell, avg)) >= 0
    if result.ndim == 0:
        return "gain" if bool(result) else "loss"
    return result


def _attribute_label(s: int, names: Sequence[str] | None) -> str:
    return names[s] if names is not None else f"#{s}"


def pda_nda(m: GroupMatrix | np.ndarray, avg: np.ndarray, params: CptParams = CptParams(),
            attribute_names: Sequence[str] | None = None):
    """Positive and negative distances from the average, shape ``(n, k)`` each."""
    cells = _cells(m)
    avg = np.asarray(avg, dtype=float)
    return _distances(cells, avg, branch_of(cells, avg[None]), params, attribute_names)


def _distances(cells, avg, gain, params, attribute_names):
    acc = accuracy_wc(avg)[..., None, :]
    for s in np.argwhere(np.abs(acc) <= 0)[:1, -1]:
        name = _attribute_label(int(s), attribute_names)
        raise DegenerateProblemError(
            f"accuracy of the average solution is zero for attribute {name}; distances are undefined",
            attribute=name)
    d = dist_hybrid(cells, avg[..., None, :, :])
    # A column of identical cells averages back to the cell only up to
    # rounding; d ** gamma would inflate that noise into a visible distance.
    d = np.where(d <= _DIST_NOISE, 0.0, d)
    pda = np.where(gain, d ** params.gamma / acc, 0.0)
    nda = np.where(gain, 0.0, params.rho * d ** params.delta / acc)
    return pda, nda


def relative_weights(m: GroupMatrix | np.ndarray, avg: np.ndarray, weights,
                     params: CptParams = CptParams()) -> np.ndarray:
    cells = _cells(m)
    w = check_weights(weights, cells.shape[1], name="attribute weights")
    return _relative(w, branch_of(cells, np.asarray(avg, dtype=float)[None]), params)


def _relative(w, gain, params):
    return cpt_weight(np.broadcast_to(w, gain.shape), gain, params)


def _finish(avg, gain, g, pda, nda) -> EdasTrace:
    sp = (g * pda).sum(axis=-1)
    sn = (g * nda).sum(axis=-1)
    sp_max = sp.max(axis=-1, keepdims=True)
    sn_max = sn.max(axis=-1, keepdims=True)
    no_gain, no_loss = sp_max <= 0, sn_max <= 0
    nsp = np.where(no_gain, 0.0, sp / np.where(no_gain, 1.0, sp_max))
    nsn = np.where(no_loss, 1.0, 1 - sn / np.where(no_loss, 1.0, sn_max))
    scores = (nsp + nsn) / 2
    # One problem: plain True flags.  A stack: one bool per problem.
    flags = {}
    for key, hit in (("all_positive_distances_zero", no_gain[..., 0]),
                     ("all_negative_distances_zero", no_loss[..., 0])):
        if hit.any():
            flags[key] = True if hit.ndim == 0 else hit
    if scores.ndim == 1:
        ranking = rank_order(scores)
    else:
        flat = scores.reshape(-1, scores.shape[-1])
        ranking = np.stack([rank_order(row) for row in flat]).reshape(scores.shape)
    return EdasTrace(avg=avg, gain=gain, rel_weights=g, pda=pda, nda=nda, sp=sp, sn=sn,
                     nsp=nsp, nsn=nsn, scores=scores, ranking=ranking, flags=flags)


def score_and_rank(m: GroupMatrix | np.ndarray, weights, params: CptParams = CptParams(),
                   attribute_names: Sequence[str] | None = None) -> EdasTrace:
    """Full IVIF pipeline from the normalized matrix to the ranking.

    ``m`` may also be a stack ``(..., n, k, 4)`` of problems sharing one
    weight vector; every output then gains the same leading axes.
    """
    cells = _cells(m, batch=True)
    if cells.shape[-3] < 2:
        raise ShapeError("ranking needs at least two alternatives")
    w = check_weights(weights, cells.shape[-2], name="attribute weights")
    avg = average_solution(cells)
    gain = branch_of(cells, avg[..., None, :, :])
    pda, nda = _distances(cells, avg, gain, params, attribute_names)
    return _finish(avg, gain, _relative(w, gain, params), pda, nda)


# --- crisp variant ---------------------------------------------------------------

def crisp_average(m) -> np.ndarray:
    y = np.asarray(m, dtype=float)
    if y.ndim != 2 or y.shape[0] == 0:
        raise ShapeError(f"expected a non-empty n x k matrix, got shape {y.shape}")
    return y.mean(axis=0)


def crisp_edas(m, attrs: Sequence[AttributeSpec], weights,
               params: CptParams = CptParams()) -> EdasTrace:
    y = np.asarray(m, dtype=float)
    if y.ndim != 2 or y.shape[0] < 2:
        raise ShapeError(f"expected an n x k matrix with n >= 2, got shape {y.shape}")
    if not np.isfinite(y).all():
        raise ValueError("crisp matrix contains non-finite entries")
    cost = cost_mask(attrs, y.shape[1])
    w = check_weights(weights, y.shape[1], name="attribute weights")
    avg = crisp_average(y)
    for s in np.flatnonzero(avg <= 0):
        raise DegenerateProblemError(
            f"average of attribute {attrs[s].name} is {avg[s]!r}; it must be positive",
            attribute=attrs[s].name)
    # Signed advantage over the average: larger is better for both kinds.
    advantage = np.where(cost, avg - y, y - avg)
    gain = advantage >= -TIE_TOL
    up = np.maximum(0.0, advantage)
    down = np.maximum(0.0, -advantage)
    pda = np.where(gain, up ** params.gamma / avg, 0.0)
    nda = np.where(gain, 0.0, params.rho * down ** params.delta / avg)
    g = cpt_weight(np.broadcast_to(w, gain.shape), gain, params)
    return _finish(avg, gain, g, pda, nda)
