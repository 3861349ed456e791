import itertools
import random

import pytest

from irmatch.generators import gen_figure1, random_digraph
from irmatch.graph import Graph


@pytest.fixture
def fig1() -> Graph:
    return gen_figure1().graph


def brute_cycles(g: Graph, cap: int) -> set[tuple[int, ...]]:
    """Cycles by trying every ordered vertex tuple; independent of the DFS."""
    found = set()
    for length in range(2, cap + 1):
        for seq in itertools.permutations(range(g.vertex_count), length):
            if seq[0] != min(seq):
                continue
            if all(g.has_edge(seq[i], seq[(i + 1) % length]) for i in range(length)):
                found.add(seq)
    return found


def random_corpus(count: int, max_n: int, seed: int, min_n: int = 2) -> list[Graph]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(min_n, max_n)
        out.append(random_digraph(n, rng.uniform(0.1, 0.5), rng.uniform(0.0, 0.4), rng))
    return out


# ---------------------------------------------------------- acceptance summary

_ACCEPTANCE: dict[int, tuple[str, str, float]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and not report.passed):
        status = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")
        _ACCEPTANCE[number] = (title, status, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, status, duration = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {title} ({duration:.1f}s)")
