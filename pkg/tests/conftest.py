import random
import sys
from fractions import Fraction

import pytest

from curvlab.expr import Chart, parse_expression
from curvlab.fixture import example_metric
from curvlab.geometry import MetricSpec


def stereographic(n=4):
    """Round unit sphere in stereographic coordinates: g = 4 delta / (1 + |x|^2)^2."""
    chart = Chart.standard(n)
    radius = " + ".join(f"x{i}^2" for i in range(1, n + 1))
    conformal = parse_expression(f"4/(1 + {radius})^2", chart)
    return MetricSpec.diagonal(chart, [conformal] * n)


def flat(n=4):
    return MetricSpec.diagonal(Chart.standard(n), [1] * n)


def random_diagonal_metric(rng: random.Random, n: int) -> MetricSpec:
    """Diagonal metric whose entries are monomials or simple rational functions."""
    chart = Chart.standard(n)
    entries = []
    for _ in range(n):
        kind = rng.choice(["const", "mono", "mono", "ratio", "shift"])
        c = rng.randint(1, 3)
        a, b = rng.sample(range(1, n + 1), 2)
        if kind == "const":
            text = str(c)
        elif kind == "mono":
            text = f"{c}*x{a}^{rng.randint(1, 2)}"
        elif kind == "ratio":
            text = f"{c}*x{a}/x{b}"
        else:
            text = f"(x{a} + {c})^{rng.randint(1, 2)}"
        entries.append(parse_expression(text, chart))
    return MetricSpec.diagonal(chart, entries)


RANDOM_METRIC_SEEDS = list(range(24))


def metric_for_seed(seed):
    rng = random.Random(1000 + seed)
    n = (2, 3, 4)[seed % 3]
    return random_diagonal_metric(rng, n)


@pytest.fixture(scope="session")
def example():
    return example_metric()


@pytest.fixture(scope="session")
def sphere():
    return stereographic(4)


@pytest.fixture
def chart4():
    return Chart.standard(4)


def frac_point(*values):
    return tuple(Fraction(v) for v in values)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in acceptance.CRITERIA:
        if key in acceptance.RESULTS:
            terminalreporter.write_line(acceptance.line(key))
