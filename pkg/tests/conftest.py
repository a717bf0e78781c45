from collections import OrderedDict

import numpy as np
import pytest

import golden
from ivif_edas.aggregation import AttributeSpec, swap_cost_columns
from ivif_edas.problem import Problem, bundled_problem_path, load_problem

# criterion number -> [title, passed, failed]
_CRITERIA: "OrderedDict[int, list]" = OrderedDict()


def pytest_collection_modifyitems(items):
    for item in items:
        marker = item.get_closest_marker("criterion")
        if marker is not None:
            number, title = marker.args
            item.user_properties.append(("criterion", (number, title)))


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        number, title = crit
        entry = _CRITERIA.setdefault(number, [title, 0, 0])
        entry[1 if report.passed else 2] += 1


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, passed, failed = _CRITERIA[number]
        mark = "PASS" if failed == 0 else "FAIL"
        terminalreporter.write_line(
            f"[{mark}] C{number} {title} ({passed}/{passed + failed} checks passed)")


ATTRS = [AttributeSpec(name, "cost" if i in golden.COST_COLUMNS else "benefit")
         for i, name in enumerate(golden.ATTRIBUTES)]


@pytest.fixture(scope="session")
def attrs():
    return ATTRS


@pytest.fixture(scope="session")
def linguistic_problem():
    return load_problem(bundled_problem_path("case_study"))


@pytest.fixture(scope="session")
def numeric_problem():
    return load_problem(bundled_problem_path("case_study_numeric"))


def reference_group_problem() -> Problem:
    """Single pseudo-expert holding the reference group matrix, with the reference weights.

    Lets every downstream stage be checked against its own reference table
    independently of rounding upstream.
    """
    raw = swap_cost_columns(golden.GROUP_NORMALIZED, ATTRS)
    return Problem(
        alternatives=list(golden.ALTERNATIVES),
        attributes=list(ATTRS),
        expert_ids=["group"],
        expert_weights=np.array([1.0]),
        matrices=[raw],
        fixed_weights=golden.WEIGHTS.copy(),
    )


@pytest.fixture(scope="session")
def reference_problem():
    return reference_group_problem()
