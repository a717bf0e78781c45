"""End-to-end runs, parameter sweeps and report serialization."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Sequence

import numpy as np
import yaml

from . import __version__
from .aggregation import aggregate_experts, normalize_matrix
from .comparators import ivifwa_rank, taxonomy, todim, topsis
from .edas import CPT_PARAMS, check_param, score_and_rank
from .errors import DomainError, IvifError, PipelineError
from .ivif import TIE_TOL
from .problem import METHODS, Problem
from .ranking import positions, rank_order
from .weighting import entropy_breakdown

BOUNDS = ("lm", "rm", "ln", "rn")
ROUNDED_DECIMALS = 3


@dataclass(frozen=True, eq=False)
class Table:
    """A 2-D block of numbers with row and column labels."""

    values: np.ndarray
    rows: list[str]
    columns: list[str]

    def rounded(self, decimals: int = ROUNDED_DECIMALS) -> np.ndarray:
        return np.round(self.values, decimals)


def _ivif_matrix(cells: np.ndarray, rows: Sequence[str], attrs: Sequence[str]) -> Table:
    n, k = cells.shape[:2]
    columns = [f"{a}.{b}" for a in attrs for b in BOUNDS]
    return Table(np.asarray(cells, dtype=float).reshape(n, 4 * k), list(rows), columns)


def _ivif_row(cells: np.ndarray, labels: Sequence[str]) -> Table:
    return Table(np.asarray(cells, dtype=float), list(labels), list(BOUNDS))


def _by_attribute(values: np.ndarray, name: str, attrs: Sequence[str]) -> Table:
    return Table(np.asarray(values, dtype=float)[None, :], [name], list(attrs))


def _grid(values: np.ndarray, rows: Sequence[str], columns: Sequence[str]) -> Table:
    return Table(np.asarray(values, dtype=float), list(rows), list(columns))


def _columns(rows: Sequence[str], **cols: np.ndarray) -> Table:
    return Table(np.column_stack([np.asarray(v, dtype=float) for v in cols.values()]),
                 list(rows), list(cols))


@dataclass(eq=False)
class Report:
    method: str
    alternatives: list[str]
    attributes: list[str]
    scores: np.ndarray
    ranking: list[str]
    tables: dict[str, Table] = field(default_factory=dict)
    metadata: dict[str, Any] = field(default_factory=dict)
    trace: Any = None   # the method's raw result object, not serialized

    def ranking_text(self) -> str:
        descending = self.method != "taxonomy"
        return ranking_text(self.scores, self.alternatives, descending)

    def to_dict(self, rounded: bool = True) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "method": self.method,
            "ranking": list(self.ranking),
            "ranking_text": self.ranking_text(),
            "metadata": self.metadata,
            "tables": {name: _table_dict(t, None) for name, t in self.tables.items()},
        }
        if rounded:
            doc["rounded"] = {name: _table_dict(t, ROUNDED_DECIMALS) for name, t in self.tables.items()}
        return doc

    def to_structured_text(self) -> str:
        return yaml.safe_dump(_plain(self.to_dict()), sort_keys=False, default_flow_style=None, width=100)

    def to_csv_texts(self) -> dict[str, str]:
        """One CSV document per table, plus ``ranking`` and ``metadata``."""
        out = {name: table_to_csv(t) for name, t in self.tables.items()}
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["position", "alternative"])
        for i, label in enumerate(self.ranking, 1):
            w.writerow([i, label])
        out["ranking"] = buf.getvalue()
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        for key, value in _flatten(self.metadata):
            w.writerow([key, value])
        out["metadata"] = buf.getvalue()
        return out

    def write_csv(self, directory: str | Path) -> list[Path]:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        written = []
        for name, text in self.to_csv_texts().items():
            path = directory / f"{name}.csv"
            path.write_text(text, encoding="utf-8")
            written.append(path)
        return written


def _fmt(x: float) -> str:
    # repr round-trips a double exactly.
    return repr(float(x))


def table_to_csv(table: Table, decimals: int | None = None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([""] + table.columns)
    values = table.values if decimals is None else table.rounded(decimals)
    for label, row in zip(table.rows, values):
        w.writerow([label] + [_fmt(v) for v in row])
    return buf.getvalue()


def _table_dict(table: Table, decimals: int | None) -> dict[str, Any]:
    values = table.values if decimals is None else table.rounded(decimals)
    return {"rows": table.rows, "columns": table.columns, "values": values.tolist()}


def _plain(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def _flatten(obj: Any, prefix: str = ""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}{k}.")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        yield prefix[:-1], " ".join(str(_plain(v)) for v in obj)
    else:
        yield prefix[:-1], _plain(obj)


def ranking_text(scores: np.ndarray, labels: Sequence[str], descending: bool = True,
                 tol: float = TIE_TOL) -> str:
    """``"A > B = C"`` style ranking; NaN scores are left out."""
    scores = np.asarray(scores, dtype=float)
    valid = np.flatnonzero(~np.isnan(scores))
    order = valid[rank_order(scores[valid], descending=descending, tol=tol)]
    parts = [labels[order[0]]]
    for prev, cur in zip(order, order[1:]):
        parts.append(("= " if abs(scores[prev] - scores[cur]) <= tol else "> ") + labels[cur])
    return " ".join(parts)


# --- running -------------------------------------------------------------------------

def _stage(name: str, fn: Callable, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except PipelineError:
        raise
    except IvifError as exc:
        raise PipelineError(name, exc) from exc


def run(problem: Problem, method: str | None = None, emit_intermediates: bool = True) -> Report:
    """Aggregate, normalize, weight, then rank with the selected method."""
    method = method or problem.method
    if method not in METHODS:
        raise DomainError(f"unknown method {method!r}; expected one of {', '.join(METHODS)}")
    alts = problem.alternatives
    attrs = [a.name for a in problem.attributes]
    tables: dict[str, Table] = {}
    meta: dict[str, Any] = {
        "package_version": __version__,
        "method": method,
        "alternatives": len(alts),
        "attributes": len(attrs),
        "experts": len(problem.expert_ids),
    }

    group = _stage("aggregate", aggregate_experts, problem.expert_matrices(), problem.expert_weights)
    normalized = _stage("normalize", normalize_matrix, group, problem.attributes)
    if emit_intermediates:
        tables["group_matrix"] = _ivif_matrix(group.cells, alts, attrs)
        tables["normalized_matrix"] = _ivif_matrix(normalized.cells, alts, attrs)

    if problem.fixed_weights is not None:
        weights = np.asarray(problem.fixed_weights, dtype=float)
        meta["weights_source"] = "fixed"
    else:
        ent = _stage("weights", entropy_breakdown, normalized)
        weights = ent.weights
        meta["weights_source"] = "entropy"
        if ent.degenerate.any():
            meta["uninformative_attributes"] = [attrs[i] for i in np.flatnonzero(ent.degenerate)]
        if emit_intermediates:
            tables["negative_ideal"] = _ivif_row(ent.nip, attrs)
            tables["ideal_distances"] = _grid(ent.dist, alts, attrs)
            tables["normalized_distances"] = _grid(ent.norm_dist, alts, attrs)
            tables["entropy"] = _by_attribute(ent.entropy, "entropy", attrs)
    tables["weights"] = _by_attribute(weights, "weight", attrs)

    stage = f"method:{method}"
    cells = normalized.cells
    if method == "edas":
        meta["cpt"] = problem.cpt.as_dict()
        tr = _stage(stage, score_and_rank, cells, weights, problem.cpt, attrs)
        scores = tr.scores
        meta["flags"] = dict(tr.flags)
        if emit_intermediates:
            tables["average_solution"] = _ivif_row(tr.avg, attrs)
            tables["relative_weights"] = _grid(tr.rel_weights, alts, attrs)
            tables["positive_distances"] = _grid(tr.pda, alts, attrs)
            tables["negative_distances"] = _grid(tr.nda, alts, attrs)
        tables["result"] = _columns(alts, sp=tr.sp, sn=tr.sn, nsp=tr.nsp, nsn=tr.nsn,
                                    score=scores, rank=positions(tr.ranking))
    elif method == "ivifwa":
        tr = _stage(stage, ivifwa_rank, cells, weights)
        scores = tr.sf
        if emit_intermediates:
            tables["aggregate"] = _ivif_row(tr.aggregate, alts)
        tables["result"] = _columns(alts, score=tr.sf, accuracy=tr.af, rank=positions(tr.ranking))
    elif method == "topsis":
        tr = _stage(stage, topsis, cells, problem.attributes, weights)
        scores = tr.closeness
        meta["topsis_form"] = tr.form
        meta["topsis_matrix"] = "raw benefit/cost form, cells weighted by scale(weight, cell)"
        meta["flags"] = {"identical_alternatives": tr.degenerate}
        if emit_intermediates:
            tables["weighted_matrix"] = _ivif_matrix(tr.weighted, alts, attrs)
            tables["positive_ideal"] = _ivif_row(tr.pis, attrs)
            tables["negative_ideal_solution"] = _ivif_row(tr.nis, attrs)
        tables["result"] = _columns(alts, d_plus=tr.d_plus, d_minus=tr.d_minus,
                                    closeness=tr.closeness, rank=positions(tr.ranking))
    elif method == "taxonomy":
        tr = _stage(stage, taxonomy, cells, weights)
        scores = tr.development
        meta["taxonomy_bounds"] = list(tr.bounds)
        meta["taxonomy_k"] = tr.k_bound
        meta["flags"] = {"outside_homogeneity_bounds": [alts[i] for i in np.flatnonzero(tr.outliers)]}
        if emit_intermediates:
            tables["pairwise_distances"] = _grid(tr.dist_matrix, alts, alts)
            tables["ideal_pattern"] = _ivif_row(tr.ideal, attrs)
        tables["result"] = _columns(alts, row_mean=tr.row_means, k_ro=tr.k_ro,
                                    development=tr.development, rank=positions(tr.ranking))
    else:
        tr = _stage(stage, todim, cells, weights, problem.todim_theta)
        scores = tr.xi
        meta["todim_theta"] = tr.theta
        meta["flags"] = {"constant_dominance": tr.degenerate}
        if emit_intermediates:
            tables["dominance"] = _grid(tr.dominance, alts, alts)
        tables["result"] = _columns(alts, total_dominance=tr.totals, xi=tr.xi,
                                    rank=positions(tr.ranking))

    return Report(method, list(alts), attrs, np.asarray(scores, dtype=float),
                  [alts[i] for i in tr.ranking], tables, meta, tr)


# --- sweeps ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SweepPoint:
    value: float
    scores: np.ndarray
    ranking: list[str]
    ranking_text: str


def sweep(problem: Problem, param: str, values: Sequence[float],
          max_workers: int | None = None) -> list[SweepPoint]:
    """Re-run the EDAS pipeline once per value of one CPT parameter.

    Every value is range-checked before anything runs.  Output order follows
    ``values``; ``max_workers > 1`` evaluates grid points on a thread pool.
    """
    if param not in CPT_PARAMS:
        raise DomainError(f"unknown sweep parameter {param!r}; expected one of {', '.join(CPT_PARAMS)}")
    grid = [float(v) for v in values]
    if not grid:
        raise DomainError("sweep needs at least one value")
    for v in grid:
        check_param(param, v)

    def one(v: float) -> SweepPoint:
        report = run(problem.with_cpt(problem.cpt.with_value(param, v)), method="edas",
                     emit_intermediates=False)
        return SweepPoint(v, report.scores, report.ranking, report.ranking_text())

    if max_workers and max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            return list(pool.map(one, grid))
    return [one(v) for v in grid]


def sweep_to_csv(points: Sequence[SweepPoint], param: str, alternatives: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([param] + list(alternatives) + ["ranking"])
    for p in points:
        w.writerow([_fmt(p.value)] + [_fmt(s) for s in p.scores] + [p.ranking_text])
    return buf.getvalue()


def sweep_to_structured_text(points: Sequence[SweepPoint], param: str,
                             alternatives: Sequence[str]) -> str:
    doc = {
        "parameter": param,
        "alternatives": list(alternatives),
        "points": [{"value": p.value, "scores": p.scores.tolist(), "ranking": p.ranking,
                    "ranking_text": p.ranking_text} for p in points],
    }
    return yaml.safe_dump(doc, sort_keys=False, default_flow_style=None, width=100)
