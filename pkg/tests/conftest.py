from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from edgeface.embed import PlaneGraph, build_from_rotations
from edgeface.io_gen.enumerate import enumerate_small

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

GOLDEN = Path(__file__).parent / "golden"


def k3() -> PlaneGraph:
    return build_from_rotations({0: [1, 2], 1: [2, 0], 2: [0, 1]})


def k4() -> PlaneGraph:
    # centre 3 inside the triangle 0 1 2
    return build_from_rotations({0: [1, 3, 2], 1: [2, 3, 0], 2: [0, 3, 1], 3: [0, 1, 2]})


def k11() -> PlaneGraph:
    return build_from_rotations({0: [1], 1: [0]})


def path(n: int) -> PlaneGraph:
    rot = {i: [j for j in (i - 1, i + 1) if 0 <= j < n] for i in range(n)}
    return build_from_rotations(rot)


def triangle_with_leaves(leaves: tuple[int, int, int]) -> PlaneGraph:
    """Triangle 0 1 2 with pendant vertices hung in its outer face.

    The face traced 0 -> 1 -> 2 stays a triangle.
    """
    rot = {0: [1, 2], 1: [2, 0], 2: [0, 1]}
    nxt = 3
    for v, k in zip((0, 1, 2), leaves):
        new = list(range(nxt, nxt + k))
        rot[v] = [rot[v][0], *new, rot[v][1]]
        for x in new:
            rot[x] = [v]
        nxt += k
    return build_from_rotations(rot)


@pytest.fixture(scope="session")
def small_corpus() -> list[PlaneGraph]:
    return list(enumerate_small(5))


# acceptance reporting: one line per criterion in the terminal summary

_CRITERIA: list[tuple[int, str, str, str]] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call":
        return
    n, title = mark.args
    detail = getattr(item, "criterion_detail", "")
    _CRITERIA.append((n, title, "PASS" if rep.passed else "FAIL", detail))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n, title, status, detail in sorted(_CRITERIA):
        line = f"criterion {n} {status}: {title}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)


@pytest.fixture
def report(request):
    """Attach a short detail string to the criterion line of this test."""

    def note(text: str) -> None:
        request.node.criterion_detail = text

    return note
