import random

import pytest
from hypothesis import strategies as st

from graphprod.graph import Graph
from graphprod.groups import FiniteTable, IntCyclic, ModCyclic, symmetric_group_table
from graphprod.words import Presentation, Syllable


def s3():
    return FiniteTable(*symmetric_group_table(3))


def small_presentations():
    """Presentations used across the word tests; all have at most six vertices."""
    return {
        "path-z2z3z2": Presentation(Graph.from_edges("abc", [("a", "b")]),
                                    {"a": ModCyclic(2), "b": ModCyclic(3), "c": ModCyclic(2)}),
        "free-z-z": Presentation(Graph(("x", "y")), {"x": IntCyclic(), "y": IntCyclic()}),
        "square-mixed": Presentation(Graph.from_edges("abcd", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]),
                                     {"a": ModCyclic(2), "b": ModCyclic(3), "c": ModCyclic(4), "d": IntCyclic()}),
        "s3-star": Presentation(Graph.from_edges("abcd", [("a", "b"), ("a", "c"), ("a", "d")]),
                                {"a": s3(), "b": ModCyclic(2), "c": s3(), "d": ModCyclic(3)}),
        "hexagon": Presentation(Graph.from_edges("abcdef", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"),
                                                            ("e", "f"), ("f", "a"), ("a", "d")]),
                                {"a": ModCyclic(2), "b": ModCyclic(3), "c": ModCyclic(4), "d": IntCyclic(),
                                 "e": s3(), "f": ModCyclic(2)}),
        "complete-z4": Presentation(Graph.complete("abc"), {"a": ModCyclic(4), "b": ModCyclic(2), "c": IntCyclic()}),
    }


PRESENTATIONS = small_presentations()


@pytest.fixture(params=sorted(PRESENTATIONS))
def pres(request):
    return PRESENTATIONS[request.param]


def element_strategy(grp, int_range=4):
    if grp.order is None:
        return st.integers(-int_range, int_range)
    return st.sampled_from(grp.elements())


def words(p, max_len=8):
    syll = st.sampled_from(p.vertices).flatmap(
        lambda v: element_strategy(p.factors[v]).map(lambda g: Syllable(v, g)))
    return st.lists(syll, max_size=max_len)


@pytest.fixture
def rng():
    return random.Random(12345)


# one summary line per acceptance criterion

_CRITERIA: dict[int, tuple[str, str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call":
        return
    number, title = mark.args
    detail = "; ".join(f"{k}={v}" for k, v in rep.user_properties)
    _CRITERIA[number] = ("PASS" if rep.passed else "FAIL", title, detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        status, title, detail = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n} {status}: {title}" + (f" ({detail})" if detail else ""))
