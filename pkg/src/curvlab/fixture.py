"""The worked four-dimensional example: metric, printed tables and printed one-forms.

Everything here is transcribed as printed, in the expression grammar, and is
never recomputed.  ``golden_comparisons`` checks the computed pipeline against
it by canonical-form identity.
"""

from __future__ import annotations

from dataclasses import dataclass

from .expr import Chart, Expression, parse_expression
from .geometry import (MetricSpec, gaussian_tensor, nabla_ricci, nabla_riemann, ricci, ricci_wedge,
                       riemann)
from .symmetry.forms import FormFamily9
from .tensor import riemann_orbit_representatives

CHART = Chart.standard(4)

METRIC_DIAGONAL = ("1", "x1", "x4", "x3")

LAMBDA = {
    "lambda1": "x3^2*x4^2 + x1^2*(x3 + x4)",
    "lambda2": "x1^4*(x3 + x4)^2 - x3^4*x4^4",
    "lambda3": "x3^2*x4^2 - x1^2*(x3 + x4)",
}

# 1-based indices; nabla tables carry the derivative index last
TABLES = {
    "R": {
        (1, 2, 1, 2): "1/(4*x1)",
        (3, 4, 3, 4): "(x3 + x4)/(4*x3*x4)",
    },
    "S": {
        (1, 1): "-1/(4*x1^2)",
        (2, 2): "-1/(4*x1)",
        (3, 3): "-(x3 + x4)/(4*x3^2*x4)",
        (4, 4): "-(x3 + x4)/(4*x3*x4^2)",
    },
    "G": {
        (1, 2, 1, 2): "-2*x1",
        (1, 3, 1, 3): "-2*x4",
        (1, 4, 1, 4): "-2*x3",
        (2, 3, 2, 3): "-2*x1*x4",
        (2, 4, 2, 4): "-2*x1*x3",
        (3, 4, 3, 4): "-2*x3*x4",
    },
    "g^S": {
        (1, 2, 1, 2): "1/(2*x1)",
        (1, 3, 1, 3): "(x3*x1^2 + x4*x1^2 + x3^2*x4^2)/(4*x1^2*x3^2*x4)",
        (1, 4, 1, 4): "(x3*x1^2 + x4*x1^2 + x3^2*x4^2)/(4*x1^2*x3*x4^2)",
        (2, 3, 2, 3): "(x3*x1^2 + x4*x1^2 + x3^2*x4^2)/(4*x1*x3^2*x4)",
        (2, 4, 2, 4): "(x3*x1^2 + x4*x1^2 + x3^2*x4^2)/(4*x1*x3*x4^2)",
        (3, 4, 3, 4): "(x3 + x4)/(2*x3*x4)",
    },
    "nabla R": {
        (1, 2, 1, 2, 1): "-1/(2*x1^2)",
        (3, 4, 3, 4, 3): "(x3 + 2*x4)/(4*x3^2*x4)",
        (3, 4, 3, 4, 4): "(2*x3 + x4)/(4*x3*x4^2)",
    },
    "nabla S": {
        (1, 1, 1): "1/(2*x1^3)",
        (2, 2, 1): "1/(2*x1^2)",
        (3, 3, 3): "(x3 + 2*x4)/(4*x3^3*x4)",
        (3, 3, 4): "(2*x3 + x4)/(4*x3^2*x4^2)",
        (4, 4, 3): "(x3 + 2*x4)/(4*x3^2*x4^2)",
        (4, 4, 4): "(2*x3 + x4)/(4*x3*x4^3)",
    },
}

FORMS = {
    "A": ("2*x3^2*x4^2/(x1*lambda1)", "0",
          "-x1^2*(x3 + 2*x4)/(x3*lambda1)", "-x1^2*(2*x3 + x4)/(x4*lambda1)"),
    "B": ("2*x1*x3^2*x4^2*(x3 + x4)/lambda2", "0",
          "-x1^2*x3*x4^2*(x3 + 2*x4)/lambda2", "-x1^2*x3^2*x4*(2*x3 + x4)/lambda2"),
    "D": ("-(x3 + x4)/(4*x1*lambda3)", "0",
          "(x3 + 2*x4)/(8*x3*lambda3)", "(2*x3 + x4)/(8*x4*lambda3)"),
    "alpha": ("lambda3/(x1^2*(x3 + x4))", "0", "0", "0"),
    "beta": ("1", "0", "0", "0"),
    "gamma": ("lambda1/(8*x1^2*x3^2*x4^2)", "0", "0", "0"),
}
# theta = -alpha, phi = -beta, psi = -gamma
NEGATED = {"theta": "alpha", "phi": "beta", "psi": "gamma"}


def _expand_lambdas(text: str) -> str:
    for name, value in LAMBDA.items():
        text = text.replace(name, f"({value})")
    return text


def parse(text: str) -> Expression:
    return parse_expression(_expand_lambdas(text), CHART)


def example_metric() -> MetricSpec:
    return MetricSpec.diagonal(CHART, [parse(s) for s in METRIC_DIAGONAL], signature="riemannian")


def example_forms() -> FormFamily9:
    forms = {name: [parse(s) for s in comps] for name, comps in FORMS.items()}
    for name, source in NEGATED.items():
        forms[name] = [-v for v in forms[source]]
    return FormFamily9(CHART, forms)


def perturbed_forms(name: str, component: int, amount=1) -> FormFamily9:
    """The printed family with ``name[component]`` (0-based) shifted by ``amount``."""
    base = example_forms()
    values = list(base[name].components)
    values[component] = values[component] + amount
    return base.replace(**{name: values})


def _computed(m: MetricSpec):
    return {
        "R": riemann(m), "S": ricci(m), "G": gaussian_tensor(m), "g^S": ricci_wedge(m),
        "nabla R": nabla_riemann(m), "nabla S": nabla_ricci(m),
    }


def _independent(table: str, n: int):
    if table in ("R", "G", "g^S"):
        yield from riemann_orbit_representatives(n)
    elif table == "nabla R":
        for rep in riemann_orbit_representatives(n):
            for l in range(n):
                yield rep + (l,)
    elif table == "S":
        yield from ((i, j) for i in range(n) for j in range(i, n))
    else:
        yield from ((i, j, l) for i in range(n) for j in range(i, n) for l in range(n))


@dataclass(frozen=True)
class GoldenComparison:
    table: str
    index: tuple            # 1-based
    expected: Expression | None   # None: computed nonzero but not listed
    computed: Expression

    @property
    def ok(self) -> bool:
        return self.expected is not None and self.expected == self.computed

    @property
    def label(self) -> str:
        return f"{self.table}[{','.join(map(str, self.index))}]"


def golden_comparisons(m: MetricSpec | None = None) -> list[GoldenComparison]:
    """Every printed component, plus any computed independent nonzero component the tables omit."""
    m = m or example_metric()
    computed = _computed(m)
    out = []
    for table, entries in TABLES.items():
        t = computed[table]
        for idx, text in entries.items():
            zero_based = tuple(i - 1 for i in idx)
            out.append(GoldenComparison(table, idx, parse(text), t[zero_based]))
        for idx in _independent(table, m.dim):
            one_based = tuple(i + 1 for i in idx)
            if one_based not in entries and not t[idx].is_zero():
                out.append(GoldenComparison(table, one_based, None, t[idx]))
    return out


def forms_file_text() -> str:
    """The printed family in the forms-file format."""
    from .io import emit_forms
    return emit_forms(example_forms())


def metric_file_text() -> str:
    from .io import emit_metric
    return emit_metric(example_metric())


__all__ = ["CHART", "TABLES", "FORMS", "LAMBDA", "example_metric", "example_forms", "perturbed_forms",
           "golden_comparisons", "GoldenComparison", "forms_file_text", "metric_file_text"]
