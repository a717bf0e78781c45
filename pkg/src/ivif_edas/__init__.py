"""Interval-valued intuitionistic fuzzy group decision analysis.

Core value type and algebra live in :mod:`ivif_edas.ivif`; the ranking
pipeline is :func:`ivif_edas.pipeline.run`.
"""

__version__ = "0.1.0"

from .aggregation import AttributeSpec, ExpertMatrix, GroupMatrix, aggregate_experts, ivifwa, ivifwg, normalize_matrix
from .comparators import ivifwa_rank, taxonomy, todim, topsis
from .edas import CptParams, EdasTrace, crisp_edas, score_and_rank
from .errors import IvifError
from .ivif import IVIFN, MAX, MIN, Ordering
from .problem import LinguisticScale, Problem, load_problem, resolve_label
from .weighting import entropy_weights

# pipeline imports __version__ from this module, so it comes last.
from .pipeline import Report, run, sweep  # noqa: E402

__all__ = [
    "AttributeSpec", "CptParams", "EdasTrace", "ExpertMatrix", "GroupMatrix", "IVIFN", "IvifError",
    "LinguisticScale", "MAX", "MIN", "Ordering", "Problem", "Report", "aggregate_experts",
    "crisp_edas", "entropy_weights", "ivifwa", "ivifwa_rank", "ivifwg", "load_problem",
    "normalize_matrix", "resolve_label", "run", "score_and_rank", "sweep", "taxonomy", "todim",
    "topsis",
]
