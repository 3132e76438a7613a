"""Residual of the extended weakly symmetric defining equation.

All rank-5 tensors are indexed ``[h, i, j, k, l]`` for the arguments
``(X1, X2, X3, X4, X5)``; ``X5`` is the differentiation direction, so the
left-hand side is ``nabla_riemann(m)[h, i, j, k, l] = R_{hijk,l}``.
"""

from __future__ import annotations

from itertools import product

import numpy as np

from ..errors import ChartError
from ..expr import Expression
from ..geometry import MetricSpec, gaussian_tensor, nabla_riemann, ricci_wedge, riemann
from ..tensor import TensorField, zeros
from .forms import EWS_TERMS, FormFamily, FormFamily9, FormFamily15


def curvature_operands(m: MetricSpec) -> dict[str, np.ndarray]:
    return {"R": riemann(m).components, "H": ricci_wedge(m).components, "G": gaussian_tensor(m).components}


def slot_source(idx: tuple[int, int, int, int, int], position: int):
    """For a rank-5 index and a form position, return (form index, tensor index)."""
    h, i, j, k, l = idx
    if position == 5:
        return l, (h, i, j, k)
    if position == 1:
        return h, (l, i, j, k)
    if position == 2:
        return i, (h, l, j, k)
    if position == 3:
        return j, (h, i, l, k)
    return k, (h, i, j, l)


def ews_rhs(m: MetricSpec, family: FormFamily15) -> np.ndarray:
    """Fifteen-term right-hand side as a rank-5 component array."""
    if family.chart != m.chart:
        raise ChartError("forms and metric live on different charts")
    ops = curvature_operands(m)
    n = m.dim
    chart = m.chart
    active = [(family[name].components, ops[t], pos) for name, (t, pos) in EWS_TERMS.items()
              if not family[name].is_zero()]
    out = zeros(chart, 5)
    for idx in product(range(n), repeat=5):
        total = chart.zero()
        for form, tensor, pos in active:
            fi, ti = slot_source(idx, pos)
            a = form[fi]
            if a.is_zero():
                continue
            b = tensor[ti]
            if not b.is_zero():
                total = total + a * b
        out[idx] = total
    return out


def ews_residual(m: MetricSpec, family: FormFamily) -> TensorField:
    """``nabla R`` minus the fifteen-term right-hand side."""
    family15 = family.expand()
    lhs = nabla_riemann(m).components
    arr = lhs - ews_rhs(m, family15)
    return TensorField._wrap(m.chart, arr, (0, 5), None, "ews_residual")


def reduced_ews_residual(m: MetricSpec, family: FormFamily9) -> TensorField:
    """Residual of the reduced (nine-form) defining equation."""
    if not isinstance(family, FormFamily9):
        raise TypeError("reduced_ews_residual expects a FormFamily9")
    return ews_residual(m, family)


def slot_coefficient(m_ops: dict[str, np.ndarray], name: str, idx) -> tuple[int, Expression]:
    """Which component of form ``name`` appears in residual row ``idx``, and its coefficient."""
    t, pos = EWS_TERMS[name]
    fi, ti = slot_source(idx, pos)
    return fi, m_ops[t][ti]
