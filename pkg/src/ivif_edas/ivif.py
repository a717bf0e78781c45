"""Interval-valued intuitionistic fuzzy numbers.

A value is the quadruple ``(lm, rm, ln, rn)``: the membership interval
``[lm, rm]`` and the non-membership interval ``[ln, rn]``.

Every operation accepts either an :class:`IVIFN` or an array whose last
axis has length 4 in that same order.  Scalar inputs give scalar outputs
(an ``IVIFN`` or a ``float``).  Array inputs broadcast and give arrays, which
is what the matrix pipeline uses.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Union

import numpy as np

from .errors import DomainError, InvalidIVIFN

# Tolerance used for ties in orderings and branch decisions.
TIE_TOL = 1e-9
# Slack allowed on the structural invariants to absorb float rounding.
_INVARIANT_SLACK = 1e-12


@dataclass(frozen=True, slots=True)
class IVIFN:
    lm: float
    rm: float
    ln: float
    rn: float

    def __post_init__(self) -> None:
        problem = _violation(self.lm, self.rm, self.ln, self.rn)
        if problem:
            raise InvalidIVIFN(f"{problem}: {self.as_tuple()}", value=list(self.as_tuple()))

    @classmethod
    def from_array(cls, values) -> "IVIFN":
        lm, rm, ln, rn = (float(v) for v in np.asarray(values, dtype=float).reshape(4))
        return cls(lm, rm, ln, rn)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.lm, self.rm, self.ln, self.rn)

    def as_array(self) -> np.ndarray:
        return np.array(self.as_tuple(), dtype=float)

    def __iter__(self) -> Iterator[float]:
        return iter(self.as_tuple())

    def __str__(self) -> str:
        return f"([{self.lm:.3f}, {self.rm:.3f}], [{self.ln:.3f}, {self.rn:.3f}])"


IvifLike = Union[IVIFN, np.ndarray]


@dataclass(frozen=True, slots=True)
class HesitancyInterval:
    lo: float
    hi: float


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def _violation(lm: float, rm: float, ln: float, rn: float) -> str | None:
    vals = (lm, rm, ln, rn)
    if not all(np.isfinite(v) for v in vals):
        return "non-finite bound"
    if any(v < -_INVARIANT_SLACK or v > 1 + _INVARIANT_SLACK for v in vals):
        return "bound outside [0, 1]"
    if lm > rm + _INVARIANT_SLACK:
        return "lower membership exceeds upper membership"
    if ln > rn + _INVARIANT_SLACK:
        return "lower non-membership exceeds upper non-membership"
    if rm + rn > 1 + _INVARIANT_SLACK:
        return "upper membership plus upper non-membership exceeds 1"
    return None


MAX = IVIFN(1.0, 1.0, 0.0, 0.0)
MIN = IVIFN(0.0, 0.0, 1.0, 1.0)


def validate_array(cells, *, what: str = "matrix") -> np.ndarray:
    """Return ``cells`` as a float array after checking every quadruple.

    Raises InvalidIVIFN naming the first offending index.
    """
    arr = np.asarray(cells, dtype=float)
    if arr.ndim == 0 or arr.shape[-1] != 4:
        raise InvalidIVIFN(f"{what}: last axis must hold 4 bounds, got shape {arr.shape}")
    lm, rm, ln, rn = np.moveaxis(arr, -1, 0)
    bad = (
        ~np.isfinite(arr).all(axis=-1)
        | (arr < -_INVARIANT_SLACK).any(axis=-1)
        | (arr > 1 + _INVARIANT_SLACK).any(axis=-1)
        | (lm > rm + _INVARIANT_SLACK)
        | (ln > rn + _INVARIANT_SLACK)
        | (rm + rn > 1 + _INVARIANT_SLACK)
    )
    if bad.any():
        index = tuple(int(i) for i in np.argwhere(bad)[0])
        cell = arr[index]
        reason = _violation(*cell)
        raise InvalidIVIFN(f"{what}: invalid cell at {index}: {reason}: {tuple(cell)}",
                           index=list(index), value=cell.tolist())
    return arr


def _parts(x: IvifLike):
    if isinstance(x, IVIFN):
        return x.lm, x.rm, x.ln, x.rn
    a = np.asarray(x, dtype=float)
    return a[..., 0], a[..., 1], a[..., 2], a[..., 3]


def _scalar_input(*xs) -> bool:
    return all(isinstance(x, IVIFN) for x in xs)


def _pack(scalar: bool, lm, rm, ln, rn) -> IvifLike:
    if scalar:
        return IVIFN(float(lm), float(rm), float(ln), float(rn))
    return np.stack(np.broadcast_arrays(lm, rm, ln, rn), axis=-1)


def _real(scalar: bool, value):
    return float(value) if scalar else value


# --- algebra -----------------------------------------------------------------

def complement(x: IvifLike) -> IvifLike:
    lm, rm, ln, rn = _parts(x)
    return _pack(_scalar_input(x), ln, rn, lm, rm)


def add(x: IvifLike, y: IvifLike) -> IvifLike:
    a, b = _parts(x), _parts(y)
    return _pack(
        _scalar_input(x, y),
        a[0] + b[0] - a[0] * b[0],
        a[1] + b[1] - a[1] * b[1],
        a[2] * b[2],
        a[3] * b[3],
    )


def mul(x: IvifLike, y: IvifLike) -> IvifLike:
    a, b = _parts(x), _parts(y)
    return _pack(
        _scalar_input(x, y),
        a[0] * b[0],
        a[1] * b[1],
        a[2] + b[2] - a[2] * b[2],
        a[3] + b[3] - a[3] * b[3],
    )


def join(x: IvifLike, y: IvifLike) -> IvifLike:
    a, b = _parts(x), _parts(y)
    return _pack(_scalar_input(x, y), np.maximum(a[0], b[0]), np.maximum(a[1], b[1]),
                 np.minimum(a[2], b[2]), np.minimum(a[3], b[3]))


def meet(x: IvifLike, y: IvifLike) -> IvifLike:
    a, b = _parts(x), _parts(y)
    return _pack(_scalar_input(x, y), np.minimum(a[0], b[0]), np.minimum(a[1], b[1]),
                 np.maximum(a[2], b[2]), np.maximum(a[3], b[3]))


def _check_exponent(k) -> None:
    if np.any(np.asarray(k) <= 0) or not np.all(np.isfinite(k)):
        raise DomainError(f"multiplier must be a positive finite real, got {k!r}")


def scale(k, x: IvifLike) -> IvifLike:
    """k-fold sum: ``1-(1-m)^k`` on memberships, ``n^k`` on non-memberships."""
    _check_exponent(k)
    lm, rm, ln, rn = _parts(x)
    return _pack(_scalar_input(x), 1 - (1 - lm) ** k, 1 - (1 - rm) ** k, ln ** k, rn ** k)


def power(x: IvifLike, k) -> IvifLike:
    _check_exponent(k)
    lm, rm, ln, rn = _parts(x)
    return _pack(_scalar_input(x), lm ** k, rm ** k, 1 - (1 - ln) ** k, 1 - (1 - rn) ** k)


# --- scalar characteristics ------------------------------------------------------

def hesitancy(x: IvifLike):
    """Hesitation interval ``[1-rm-rn, 1-lm-ln]``; shape ``(..., 2)`` for arrays."""
    lm, rm, ln, rn = _parts(x)
    lo, hi = 1 - rm - rn, 1 - lm - ln
    if _scalar_input(x):
        return HesitancyInterval(float(lo), float(hi))
    return np.stack([lo, hi], axis=-1)


def score_wc(x: IvifLike):
    lm, rm, ln, rn = _parts(x)
    return _real(_scalar_input(x), ((lm + rm) * (lm + ln) - (ln + rn) * (rm + rn)) / 2)


def accuracy_wc(x: IvifLike):
    lm, rm, ln, rn = _parts(x)
    value = ((1 - lm + rm) * (1 - lm - ln) + (1 - ln + rn) * (1 - rm - rn)) / 2
    return _real(_scalar_input(x), value)


def score_simple(x: IvifLike):
    lm, rm, ln, rn = _parts(x)
    return _real(_scalar_input(x), (lm - ln + rm - rn) / 2)


def accuracy_simple(x: IvifLike):
    lm, rm, ln, rn = _parts(x)
    return _real(_scalar_input(x), (lm + ln + rm + rn) / 2)


def _cmp_reals(a, b, tol: float):
    return np.where(a > b + tol, 1, np.where(b > a + tol, -1, 0))


def compare(x: IvifLike, y: IvifLike, tol: float = TIE_TOL):
    """Lexicographic order on (score_wc, accuracy_wc) with a tie tolerance.

    Returns an :class:`Ordering` for two IVIFNs, otherwise an int array of
    -1/0/1 values.
    """
    by_score = _cmp_reals(score_wc(x), score_wc(y), tol)
    by_accuracy = _cmp_reals(accuracy_wc(x), accuracy_wc(y), tol)
    result = np.where(by_score != 0, by_score, by_accuracy)
    if _scalar_input(x, y):
        return Ordering(int(result))
    return result


# --- distances -----------------------------------------------------------------------

def _abs_diffs(x: IvifLike, y: IvifLike) -> np.ndarray:
    a = np.stack(np.broadcast_arrays(*_parts(x)), axis=-1)
    b = np.stack(np.broadcast_arrays(*_parts(y)), axis=-1)
    return np.abs(a - b)


def dist_hamming(x: IvifLike, y: IvifLike):
    return _real(_scalar_input(x, y), _abs_diffs(x, y).sum(axis=-1) / 4)


def dist_hausdorff(x: IvifLike, y: IvifLike):
    return _real(_scalar_input(x, y), _abs_diffs(x, y).max(axis=-1) / 2)


def dist_hybrid(x: IvifLike, y: IvifLike):
    """Hamming plus Hausdorff; lies in [0, 1.5]."""
    d = _abs_diffs(x, y)
    return _real(_scalar_input(x, y), d.sum(axis=-1) / 4 + d.max(axis=-1) / 2)


def dist_hybrid_by_pair(x: IvifLike, y: IvifLike):
    """Hybrid variant taking the Hausdorff maximum within each interval separately.

    Offered as an alternative for entropy weighting; it is not the default.
    """
    d = _abs_diffs(x, y)
    value = (d.sum(axis=-1) / 4
             + np.maximum(d[..., 0], d[..., 1]) / 2
             + np.maximum(d[..., 2], d[..., 3]) / 2)
    return _real(_scalar_input(x, y), value)


DISTANCES = {
    "hamming": dist_hamming,
    "hausdorff": dist_hausdorff,
    "hybrid": dist_hybrid,
    "hybrid_by_pair": dist_hybrid_by_pair,
}
