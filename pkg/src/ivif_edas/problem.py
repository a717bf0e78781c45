"""Problem files, linguistic scales and their validation.

A problem file is YAML::

    version: 1
    alternatives: [A1, A2]
    attributes:
      - {name: price, kind: cost}
      - {name: quality, kind: benefit}
    experts:
      - {id: E1, weight: 0.6}
      - {id: E2, weight: 0.4}
    matrices:
      E1:
        - [G, MG]
        - [[0.3, 0.4, 0.45, 0.5], M]     # labels and quadruples may mix
      E2: ...
    cpt: {alpha: 0.61, beta: 0.69, gamma: 0.88, delta: 0.88, rho: 2.25}   # optional
    fixed_weights: [0.5, 0.5]            # optional, skips entropy weighting
    method: edas                         # optional
    todim_theta: 1.0                     # optional
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Any, Iterable, Mapping, TextIO

import numpy as np
import yaml

from .aggregation import AttributeSpec, ExpertMatrix, check_weights
from .edas import CPT_PARAMS, CptParams
from .errors import IvifError, ProblemFileError, UnknownLabelError
from .ivif import IVIFN

FORMAT_VERSION = 1
METHODS = ("edas", "ivifwa", "topsis", "taxonomy", "todim")


class LinguisticScale:
    """Ordered label -> IVIFN mapping, looked up case-insensitively."""

    def __init__(self, entries: Mapping[str, IVIFN | Iterable[float]],
                 names: Mapping[str, str] | None = None) -> None:
        self._entries: dict[str, IVIFN] = {}
        self._lookup: dict[str, str] = {}
        for label, value in entries.items():
            label = str(label)
            key = label.casefold()
            if key in self._lookup:
                raise ProblemFileError(f"duplicate scale label {label!r}")
            try:
                ivif = value if isinstance(value, IVIFN) else IVIFN(*(float(v) for v in value))
            except (TypeError, ValueError) as exc:
                raise ProblemFileError(f"scale label {label!r}: {exc}", field=f"scale.{label}") from exc
            self._entries[label] = ivif
            self._lookup[key] = label
        self.names = dict(names or {})

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, label: str) -> bool:
        return str(label).casefold() in self._lookup

    def labels(self) -> list[str]:
        return list(self._entries)

    def items(self):
        return self._entries.items()

    def resolve(self, label: str) -> IVIFN:
        try:
            return self._entries[self._lookup[str(label).strip().casefold()]]
        except KeyError:
            raise UnknownLabelError(f"unknown linguistic label {label!r}", label=str(label)) from None

    @classmethod
    def default(cls) -> "LinguisticScale":
        return _load_scale_text(resources.files("ivif_edas").joinpath("data/scale.yaml").read_text())

    @classmethod
    def from_file(cls, path: str | Path) -> "LinguisticScale":
        return _load_scale_text(Path(path).read_text(encoding="utf-8"), source=str(path))


def _load_scale_text(text: str, source: str = "<scale>") -> LinguisticScale:
    doc = _parse_yaml(text, source)
    if not isinstance(doc, Mapping) or not isinstance(doc.get("labels"), list):
        raise ProblemFileError(f"{source}: expected a mapping with a 'labels' list", field="labels")
    entries: dict[str, list[float]] = {}
    names: dict[str, str] = {}
    for i, item in enumerate(doc["labels"]):
        if not isinstance(item, Mapping) or "label" not in item or "value" not in item:
            raise ProblemFileError(f"{source}: labels[{i}] needs 'label' and 'value'", field=f"labels[{i}]")
        label = str(item["label"])
        if label in entries:
            raise ProblemFileError(f"{source}: duplicate scale label {label!r}", field=f"labels[{i}]")
        entries[label] = item["value"]
        if "name" in item:
            names[label] = str(item["name"])
    return LinguisticScale(entries, names)


def resolve_label(label: str, scale: LinguisticScale) -> IVIFN:
    return scale.resolve(label)


@dataclass(frozen=True, eq=False)
class Problem:
    alternatives: list[str]
    attributes: list[AttributeSpec]
    expert_ids: list[str]
    expert_weights: np.ndarray
    matrices: list[np.ndarray]            # one (n, k, 4) array per expert
    cpt: CptParams = field(default_factory=CptParams)
    fixed_weights: np.ndarray | None = None
    method: str = "edas"
    todim_theta: float = 1.0

    @property
    def shape(self) -> tuple[int, int, int]:
        return len(self.alternatives), len(self.attributes), len(self.expert_ids)

    def expert_matrices(self) -> list[ExpertMatrix]:
        return [ExpertMatrix(e, m) for e, m in zip(self.expert_ids, self.matrices)]

    def with_cpt(self, cpt: CptParams) -> "Problem":
        return _replace(self, cpt=cpt)

    def with_method(self, method: str) -> "Problem":
        _check_method(method)
        return _replace(self, method=method)

    def with_fixed_weights(self, weights) -> "Problem":
        w = None if weights is None else check_weights(weights, len(self.attributes), name="fixed_weights")
        return _replace(self, fixed_weights=w)

    def to_dict(self) -> dict[str, Any]:
        """Plain-data form with numeric quadruples; loads back to an equal problem."""
        doc: dict[str, Any] = {
            "version": FORMAT_VERSION,
            "alternatives": list(self.alternatives),
            "attributes": [{"name": a.name, "kind": a.kind} for a in self.attributes],
            "experts": [{"id": e, "weight": float(w)} for e, w in zip(self.expert_ids, self.expert_weights)],
            "matrices": {e: [[[float(v) for v in cell] for cell in row] for row in m]
                         for e, m in zip(self.expert_ids, self.matrices)},
            "cpt": self.cpt.as_dict(),
            "method": self.method,
            "todim_theta": float(self.todim_theta),
        }
        if self.fixed_weights is not None:
            doc["fixed_weights"] = [float(v) for v in self.fixed_weights]
        return doc

    def dumps(self) -> str:
        return yaml.safe_dump(self.to_dict(), sort_keys=False, default_flow_style=None, width=120)


def _replace(problem: Problem, **changes) -> Problem:
    return replace(problem, **changes)


def _check_method(method: str) -> None:
    if method not in METHODS:
        raise ProblemFileError(f"unknown method {method!r}; expected one of {', '.join(METHODS)}",
                               field="method")


# --- loading ---------------------------------------------------------------------------

def _parse_yaml(text: str, source: str) -> Any:
    try:
        return yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        line = mark.line + 1 if mark is not None else None
        column = mark.column + 1 if mark is not None else None
        problem = getattr(exc, "problem", None) or str(exc)
        where = f" line {line}, column {column}" if line else ""
        raise ProblemFileError(f"{source}:{where}: {problem}", line=line, column=column) from None


def _require(doc: Mapping, key: str, kind: type, source: str):
    if key not in doc:
        raise ProblemFileError(f"{source}: missing required key {key!r}", field=key)
    value = doc[key]
    if not isinstance(value, kind):
        raise ProblemFileError(f"{source}: {key!r} must be a {kind.__name__}", field=key)
    return value


def _resolve_cell(value: Any, scale: LinguisticScale, where: dict[str, Any], source: str) -> tuple:
    location = f"expert {where['expert']}, row {where['row']}, column {where['column']}"
    if isinstance(value, str):
        try:
            return scale.resolve(value).as_tuple()
        except UnknownLabelError:
            raise UnknownLabelError(f"{source}: unknown linguistic label {value!r} at {location}",
                                    label=value, **where) from None
    if isinstance(value, (list, tuple)) and len(value) == 4:
        try:
            return IVIFN(*(float(v) for v in value)).as_tuple()
        except (TypeError, ValueError) as exc:
            msg = exc.message if isinstance(exc, IvifError) else str(exc)
            raise ProblemFileError(f"{source}: invalid quadruple at {location}: {msg}", **where) from None
    if value is None:
        raise ProblemFileError(f"{source}: missing cell at {location}", **where)
    raise ProblemFileError(f"{source}: cell at {location} must be a label or 4 numbers, got {value!r}",
                           **where)


def problem_from_dict(doc: Any, scale: LinguisticScale | None = None,
                      source: str = "<problem>") -> Problem:
    scale = scale or LinguisticScale.default()
    if not isinstance(doc, Mapping):
        raise ProblemFileError(f"{source}: top level must be a mapping")
    version = doc.get("version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise ProblemFileError(f"{source}: unsupported format version {version!r}", field="version")

    alternatives = [str(a) for a in _require(doc, "alternatives", list, source)]
    if len(alternatives) < 2 or len(set(alternatives)) != len(alternatives):
        raise ProblemFileError(f"{source}: need at least two distinct alternatives", field="alternatives")

    attributes = []
    for i, item in enumerate(_require(doc, "attributes", list, source)):
        if not isinstance(item, Mapping) or "name" not in item:
            raise ProblemFileError(f"{source}: attributes[{i}] needs a name", field=f"attributes[{i}]")
        kind = item.get("kind", "benefit")
        if kind not in ("benefit", "cost"):
            raise ProblemFileError(f"{source}: attributes[{i}].kind must be benefit or cost, got {kind!r}",
                                   field=f"attributes[{i}].kind")
        attributes.append(AttributeSpec(str(item["name"]), kind))
    if not attributes or len({a.name for a in attributes}) != len(attributes):
        raise ProblemFileError(f"{source}: attribute names must be non-empty and distinct", field="attributes")

    experts = _require(doc, "experts", list, source)
    expert_ids, weights = [], []
    for i, item in enumerate(experts):
        if not isinstance(item, Mapping) or "id" not in item or "weight" not in item:
            raise ProblemFileError(f"{source}: experts[{i}] needs id and weight", field=f"experts[{i}]")
        expert_ids.append(str(item["id"]))
        weights.append(item["weight"])
    if not expert_ids or len(set(expert_ids)) != len(expert_ids):
        raise ProblemFileError(f"{source}: expert ids must be non-empty and distinct", field="experts")
    try:
        expert_weights = check_weights(weights, name="expert weights")
    except (IvifError, TypeError, ValueError) as exc:
        raise ProblemFileError(f"{source}: {exc}", field="experts") from None

    raw = _require(doc, "matrices", dict, source)
    extra = set(map(str, raw)) - set(expert_ids)
    if extra:
        raise ProblemFileError(f"{source}: matrices given for unknown experts {sorted(extra)}", field="matrices")
    n, k = len(alternatives), len(attributes)
    matrices = []
    for e in expert_ids:
        grid = raw.get(e)
        if not isinstance(grid, list) or len(grid) != n:
            raise ProblemFileError(f"{source}: matrix for expert {e} must have {n} rows", field=f"matrices.{e}",
                                   expert=e)
        cells = np.empty((n, k, 4))
        for r, row in enumerate(grid):
            if not isinstance(row, list) or len(row) != k:
                raise ProblemFileError(
                    f"{source}: expert {e}, row {alternatives[r]} must have {k} cells",
                    field=f"matrices.{e}[{r}]", expert=e, row=alternatives[r])
            for s, value in enumerate(row):
                where = {"expert": e, "row": alternatives[r], "column": attributes[s].name}
                cells[r, s] = _resolve_cell(value, scale, where, source)
        matrices.append(cells)

    cpt_doc = doc.get("cpt") or {}
    if not isinstance(cpt_doc, Mapping) or set(cpt_doc) - set(CPT_PARAMS):
        raise ProblemFileError(f"{source}: cpt must map a subset of {', '.join(CPT_PARAMS)} to numbers",
                               field="cpt")
    try:
        cpt = CptParams(**{key: float(v) for key, v in cpt_doc.items()})
    except (IvifError, TypeError, ValueError) as exc:
        raise ProblemFileError(f"{source}: cpt: {exc}", field="cpt") from None

    fixed = doc.get("fixed_weights")
    if fixed is not None:
        try:
            fixed = check_weights(fixed, k, name="fixed_weights")
        except (IvifError, TypeError, ValueError) as exc:
            raise ProblemFileError(f"{source}: {exc}", field="fixed_weights") from None

    method = str(doc.get("method", "edas"))
    _check_method(method)
    theta = doc.get("todim_theta", 1.0)
    if not isinstance(theta, (int, float)) or not theta > 0:
        raise ProblemFileError(f"{source}: todim_theta must be a positive number", field="todim_theta")

    return Problem(alternatives, attributes, expert_ids, expert_weights, matrices, cpt,
                   fixed, method, float(theta))


def load_problem(source: str | Path | TextIO, scale: LinguisticScale | None = None) -> Problem:
    """Read and fully validate a problem from a path or an open text stream."""
    if isinstance(source, (str, Path)):
        path = Path(source)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ProblemFileError(f"cannot read {path}: {exc.strerror}", path=str(path)) from None
        name = str(path)
    else:
        text = source.read()
        name = getattr(source, "name", "<stream>")
    return problem_from_dict(_parse_yaml(text, name), scale, name)


def loads_problem(text: str, scale: LinguisticScale | None = None) -> Problem:
    return load_problem(io.StringIO(text), scale)


def bundled_problem_path(name: str = "case_study") -> Path:
    """Path of a problem file shipped with the package (``case_study`` or ``case_study_numeric``)."""
    ref = resources.files("ivif_edas").joinpath(f"data/{name}.yaml")
    return Path(str(ref))
