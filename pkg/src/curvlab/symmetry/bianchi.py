"""Identities that follow from the reduced equation: its Ricci-level contraction,
the second-Bianchi consequence and what can be read off from it.

Two coefficient variants are offered.  ``"derived"`` (default) gives the exact
consequences for ``G = g ^ g``.  ``"printed"`` reproduces the displayed
coefficients, which correspond to a ``G`` normalized as ``(g ^ g) / 2`` and do
not vanish on genuine solutions in general.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from ..errors import ChartError, NullFormError
from ..expr import Expression
from ..geometry import (MetricSpec, apply_ricci, contract, gaussian_tensor, kulkarni_nomizu,
                        nabla_ricci, raise_form, ricci, ricci_wedge, riemann, scalar_curvature)
from ..tensor import SYMMETRIC, TensorField, zeros
from .forms import FormFamily9

VARIANTS = ("derived", "printed")


def _check_variant(variant):
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")


def _form(chart, values) -> TensorField:
    return TensorField._wrap(chart, np.array(list(values), dtype=object), (0, 1))


def _combine(chart, *terms) -> TensorField:
    """Sum of ``coefficient * one-form`` pairs; coefficients may be Expressions."""
    n = chart.dim
    out = [chart.zero()] * n
    for coef, form in terms:
        for i in range(n):
            v = form[i]
            if not v.is_zero():
                out[i] = out[i] + coef * v
    return _form(chart, out)


def _sym(chart, a: TensorField, b: TensorField, coef=1) -> TensorField:
    """``coef * (a (x) b + b (x) a)``."""
    n = chart.dim
    arr = zeros(chart, 2)
    for i, j in product(range(n), repeat=2):
        arr[i, j] = (a[i] * b[j] + b[i] * a[j]) * coef
    return TensorField._wrap(chart, arr, (0, 2), SYMMETRIC)


def _pair(form: TensorField, vector: TensorField) -> Expression:
    return sum((form[i] * vector[i] for i in range(form.dim)), form.chart.zero())


# -- Ricci level -----------------------------------------------------------------


@dataclass
class RicciLevelForms:
    f1: TensorField
    f2: TensorField
    f3: TensorField
    f4: TensorField
    f5: TensorField
    f6: TensorField
    variant: str = "derived"

    def as_tuple(self):
        return (self.f1, self.f2, self.f3, self.f4, self.f5, self.f6)


def ricci_level_forms(f: FormFamily9, m: MetricSpec, variant: str = "derived") -> RicciLevelForms:
    _check_variant(variant)
    chart = m.chart
    n = m.dim
    r = scalar_curvature(m)
    k = 2 if variant == "derived" else 1
    return RicciLevelForms(
        _combine(chart, (1, f["A"]), (n - 2, f["alpha"]), (1, f["beta"]), (1, f["gamma"])),
        _combine(chart, (1, f["B"]), (n - 3, f["beta"])),
        _combine(chart, (1, f["D"]), (n - 3, f["gamma"])),
        _combine(chart, (k * (n - 1), f["theta"]), (k, f["phi"]), (k, f["psi"]), (r, f["alpha"])),
        _combine(chart, (k * (n - 2), f["phi"]), (r, f["beta"])),
        _combine(chart, (k * (n - 2), f["psi"]), (r, f["gamma"])),
        variant,
    )


def ricci_level_residual(m: MetricSpec, f: FormFamily9, variant: str = "derived") -> TensorField:
    """Residual of the contracted equation, indexed ``[i, j, l]`` for ``(X2, X3, X5)``."""
    if f.chart != m.chart:
        raise ChartError("forms and metric live on different charts")
    chart = m.chart
    n = m.dim
    fs = ricci_level_forms(f, m, variant)
    f1, f2, f3, f4, f5, f6 = fs.as_tuple()
    S = ricci(m).components
    g = m.components
    R = riemann(m).components
    dS = nabla_ricci(m).components
    XB = raise_form(f["B"], m)
    XD = raise_form(f["D"], m)
    bL = apply_ricci(f["beta"], m)
    cL = apply_ricci(f["gamma"], m)
    out = zeros(chart, 3)
    for i, j, l in product(range(n), repeat=3):
        rhs = (f1[l] * S[i, j] + f2[i] * S[l, j] + f3[j] * S[i, l]
               + f4[l] * g[i][j] + f5[i] * g[l][j] + f6[j] * g[i][l])
        for p in range(n):
            if not XB[p].is_zero():
                rhs = rhs - R[i, l, j, p] * XB[p]
            if not XD[p].is_zero():
                rhs = rhs + R[l, j, i, p] * XD[p]
        rhs = rhs + (bL[l] + cL[l]) * g[i][j] - bL[i] * g[l][j] - cL[j] * g[l][i]
        out[i, j, l] = dS[i, j, l] - rhs
    return TensorField._wrap(chart, out, (0, 3), name="ricci_level_residual")


def gwrs_condition(m: MetricSpec, f: FormFamily9) -> TensorField:
    """The one-form ``X -> B(LX) + D(LX) + (n-1)[beta(LX) + gamma(LX)]``."""
    n = m.dim
    combo = _combine(m.chart, (1, f["B"]), (1, f["D"]), (n - 1, f["beta"]), (n - 1, f["gamma"]))
    return apply_ricci(combo, m)


# -- second-Bianchi consequences ------------------------------------------------------


@dataclass
class BianchiForms:
    J: TensorField
    delta: TensorField
    omega: TensorField
    epsilon: TensorField
    E: TensorField
    F: TensorField
    X_J: TensorField
    JJ: Expression          # J(X_J)
    variant: str = "derived"

    @property
    def is_null(self) -> bool:
        return self.JJ.is_zero()


def bianchi_forms(f: FormFamily9, m: MetricSpec, variant: str = "derived") -> BianchiForms:
    _check_variant(variant)
    chart = m.chart
    n = m.dim
    r = scalar_curvature(m)
    J = _combine(chart, (1, f["A"]), (-2, f["B"]))
    delta = _combine(chart, (1, f["alpha"]), (-2, f["beta"]))
    omega = _combine(chart, (1, f["theta"]), (-2, f["phi"]))
    k = 2 if variant == "derived" else 1
    s = -1 if variant == "derived" else 1
    epsilon = _combine(chart, (1, apply_ricci(delta, m)), (-k * (n - 1), omega), (-r, delta))
    SJ = apply_ricci(J, m)
    E = _sym(chart, SJ, delta) + _sym(chart, J, epsilon, s)
    F = _sym(chart, J, J) + _sym(chart, J, delta, n - 2)
    X_J = raise_form(J, m)
    return BianchiForms(J, delta, omega, epsilon, E, F, X_J, _pair(J, X_J), variant)


def bianchi_consequence_residual(m: MetricSpec, bf: BianchiForms) -> TensorField:
    """Left side of the cyclic identity, indexed ``[h, i, j, k, l]`` for ``(X1..X5)``."""
    chart = m.chart
    n = m.dim
    R = riemann(m).components
    H = ricci_wedge(m).components
    G = gaussian_tensor(m).components
    terms = [(bf.omega, G), (bf.delta, H), (bf.J, R)]
    terms = [(w, T) for w, T in terms if not w.is_zero()]
    out = zeros(chart, 5)
    for h, i, j, k, l in product(range(n), repeat=5):
        total = chart.zero()
        for w, T in terms:
            total = total + w[l] * T[h, i, j, k] + w[i] * T[l, h, j, k] + w[h] * T[i, l, j, k]
        out[h, i, j, k, l] = total
    return TensorField._wrap(chart, out, (0, 5), name="bianchi_consequence_residual")


def contracted_consequence_residual(m: MetricSpec, bf: BianchiForms) -> TensorField:
    """``R(X_J, X4, X1, X5)`` minus the right side, indexed ``[h, k, l]`` for ``(X1, X4, X5)``."""
    chart = m.chart
    n = m.dim
    r = scalar_curvature(m)
    R = riemann(m).components
    S = ricci(m).components
    g = m.components
    k_omega = 2 * (n - 2) if bf.variant == "derived" else n - 2
    Sd = apply_ricci(bf.delta, m)  # S(X, X_delta)
    a = _combine(chart, (k_omega, bf.omega), (r, bf.delta), (-1, Sd))
    b = _combine(chart, (1, bf.J), (n - 3, bf.delta))
    XJ = bf.X_J
    out = zeros(chart, 3)
    for h, k, l in product(range(n), repeat=3):
        lhs = sum((XJ[p] * R[p, k, h, l] for p in range(n) if not XJ[p].is_zero()), chart.zero())
        rhs = a[l] * g[h][k] - a[h] * g[k][l] + b[l] * S[h, k] - b[h] * S[k, l]
        out[h, k, l] = lhs - rhs
    return TensorField._wrap(chart, out, (0, 3), name="contracted_consequence_residual")


def curvature_bracket(m: MetricSpec, bf: BianchiForms) -> TensorField:
    """The bracket that should equal ``2 J(X_J) R``."""
    H = ricci_wedge(m)
    G = gaussian_tensor(m)
    s = -1 if bf.variant == "derived" else 1
    dJ = _pair(bf.delta, bf.X_J)
    wJ = _pair(bf.omega, bf.X_J)
    return (H.scale(dJ * (2 * s)) + G.scale(wJ * (2 * s))
            + kulkarni_nomizu(bf.E, m.tensor()) + kulkarni_nomizu(bf.F, ricci(m)))


@dataclass
class Reconstruction:
    reconstructed: TensorField
    matches_R: bool
    witness: tuple | None = None


def reconstruct_curvature(m: MetricSpec, bf: BianchiForms) -> Reconstruction:
    if bf.JJ.is_zero():
        raise NullFormError("J(X_J) vanishes identically; the curvature cannot be reconstructed")
    rec = curvature_bracket(m, bf) / (bf.JJ * 2)
    diff = rec - riemann(m)
    witness = diff.first_nonzero()
    return Reconstruction(rec, witness is None, witness)


@dataclass
class ScalarRelations:
    cnR: TensorField     # (0,2) in (X2, X3)
    scalar: TensorField  # (0,1)


def scalar_relation_residuals(m: MetricSpec, bf: BianchiForms) -> ScalarRelations:
    if bf.variant == "derived":
        identity = riemann(m).scale(bf.JJ * 2) - curvature_bracket(m, bf)
        cnR = contract(identity, (0, 3), m)
        scalar = contract(contracted_consequence_residual(m, bf), (0, 1), m)
        return ScalarRelations(cnR, scalar)
    return _printed_scalar_relations(m, bf)


def _printed_scalar_relations(m: MetricSpec, bf: BianchiForms) -> ScalarRelations:
    # J(S(X_J, X)) is read as S(X_J, X) = J(LX); delta(S(X_J, X)) as delta(LX)
    chart = m.chart
    n = m.dim
    r = scalar_curvature(m)
    J, d, w = bf.J, bf.delta, bf.omega
    JS = apply_ricci(J, m)
    dS = apply_ricci(d, m)
    cn = zeros(chart, 2)
    for i, j in product(range(n), repeat=2):
        cn[i, j] = (r * J[i] * J[j] - (J[i] * JS[j] + J[j] * JS[i])
                    - (J[j] * w[i] + J[i] * w[j]) * Fraction((n - 1) * (n - 2), 2)
                    + r * (n - 2) * (J[j] * d[i] + J[i] * d[j])
                    - (n - 2) * (J[j] * dS[i] + J[i] * dS[j]))
    sc = [r * (J[j] + d[j] * (2 * (n - 2))) - JS[j] * 2 + w[j] * ((n - 1) * (n - 2)) - dS[j] * (2 * (n - 2))
          for j in range(n)]
    return ScalarRelations(TensorField._wrap(chart, cn, (0, 2)), _form(chart, sc))


__all__ = [
    "RicciLevelForms", "ricci_level_forms", "ricci_level_residual", "gwrs_condition",
    "BianchiForms", "bianchi_forms", "bianchi_consequence_residual", "contracted_consequence_residual",
    "curvature_bracket", "Reconstruction", "reconstruct_curvature", "ScalarRelations",
    "scalar_relation_residuals", "VARIANTS",
]
