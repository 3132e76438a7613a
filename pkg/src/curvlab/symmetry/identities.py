"""Instance checks for the curvature identities and dichotomies.

Sign conventions: with the Riemann convention used throughout, a space of
constant sectional curvature ``K`` has ``R = -(K/2) G`` with ``G = g ^ g``,
so the unit sphere has ``K = 1`` and negative Ricci curvature.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from ..errors import ChartError, SymmetryError, ValenceError
from ..expr import Expression
from ..geometry import MetricSpec, gaussian_tensor, nabla_riemann, ricci, ricci_wedge, riemann, scalar_curvature, weyl
from ..tensor import TensorField, as_one_form, zeros


def is_constant_curvature(m: MetricSpec) -> Fraction | None:
    """Sectional curvature ``K`` if ``R = K (g_hj g_ik - g_hk g_ij)`` with ``K`` constant."""
    R = riemann(m)
    G = gaussian_tensor(m)
    for idx in G.indices():
        if not G[idx].is_zero():
            ratio = R[idx] * -2 / G[idx]
            break
    else:  # pragma: no cover - G never vanishes for a nondegenerate metric
        return None
    if not ratio.is_constant():
        return None
    K = ratio.constant_value()
    if (R + G.scale(K / 2)).is_zero():
        return K
    return None


def is_einstein(m: MetricSpec) -> Expression | None:
    """``a = r/n`` if ``S = a g``, else ``None``."""
    a = scalar_curvature(m) / m.dim
    if (ricci(m) - m.tensor().scale(a)).is_zero():
        return a
    return None


def is_conformally_flat(m: MetricSpec) -> bool | None:
    """Weyl tensor vanishes; ``None`` (not applicable) below dimension 4."""
    if m.dim < 4:
        return None
    return weyl(m).is_zero()


def is_locally_symmetric(m: MetricSpec) -> bool:
    return nabla_riemann(m).is_zero()


def generalized_curvature_violation(K: TensorField):
    """First index where skew, pair or first-Bianchi symmetry fails, else ``None``."""
    if K.valence != (0, 4):
        raise ValenceError("a generalized curvature tensor is (0,4)")
    a = K.components
    n = K.dim
    for h, i, j, k in product(range(n), repeat=4):
        v = a[h, i, j, k]
        if v != -a[i, h, j, k] or v != -a[h, i, k, j] or v != a[j, k, h, i]:
            return (h, i, j, k)
        if not (v + a[h, j, k, i] + a[h, k, i, j]).is_zero():
            return (h, i, j, k)
    return None


def _require_curvature(K: TensorField):
    bad = generalized_curvature_violation(K)
    if bad is not None:
        raise SymmetryError(f"not a generalized curvature tensor at index {tuple(x + 1 for x in bad)}")


def prop_identity_residual(K: TensorField, A, B) -> TensorField:
    """``A(X5)K(X1,X2,X3,X4) + B(X5)K(X1,X4,X2,X3) - {A(X5) - B(X5)/2} K(X1,X2,X3,X4)``."""
    _require_curvature(K)
    chart = K.chart
    A = as_one_form(A, chart)
    B = as_one_form(B, chart)
    k = K.components
    n = K.dim
    half = Fraction(1, 2)
    out = zeros(chart, 5)
    for h, i, j, kk, l in product(range(n), repeat=5):
        out[h, i, j, kk, l] = (A[l] * k[h, i, j, kk] + B[l] * k[h, kk, i, j]
                               - (A[l] - B[l] * half) * k[h, i, j, kk])
    return TensorField._wrap(chart, out, (0, 5), name="prop_identity_residual")


def lemma_symmetrization(K: TensorField, A) -> TensorField:
    """``A(X1)K(X2,X5,X3,X4) + A(X2)K(X1,X5,X3,X4)`` indexed ``[h, i, j, k, l]``."""
    chart = K.chart
    A = as_one_form(A, chart)
    k = K.components
    n = K.dim
    out = zeros(chart, 5)
    for h, i, j, kk, l in product(range(n), repeat=5):
        out[h, i, j, kk, l] = A[h] * k[i, l, j, kk] + A[i] * k[h, l, j, kk]
    return TensorField._wrap(chart, out, (0, 5))


def lemma_witness(K: TensorField, A) -> str:
    """One of ``symmetrization-nonzero``, ``A-zero``, ``K-zero``, ``counterexample``."""
    _require_curvature(K)
    A = as_one_form(A, K.chart)
    if A.chart != K.chart:
        raise ChartError("form and tensor live on different charts")
    if not lemma_symmetrization(K, A).is_zero():
        return "symmetrization-nonzero"
    if A.is_zero():
        return "A-zero"
    if K.is_zero():
        return "K-zero"
    return "counterexample"


@dataclass
class DichotomyReport:
    hypothesis_holds: bool
    branch: str
    witness: tuple | None = None            # first nonzero hypothesis component
    relations: dict = field(default_factory=dict)  # relation label -> vanishes identically
    constant_curvature: Fraction | None = None
    conformally_flat: bool | None = None


def _pair_residual(chart, n, terms) -> TensorField:
    out = zeros(chart, 5)
    for h, i, j, k, l in product(range(n), repeat=5):
        total = chart.zero()
        for w, T in terms:
            total = total + w[h] * T[i, l, j, k] + w[i] * T[h, l, j, k]
        out[h, i, j, k, l] = total
    return TensorField._wrap(chart, out, (0, 5))


def _lin(*terms) -> TensorField:
    out = None
    for coef, form in terms:
        t = form.scale(coef)
        out = t if out is None else out + t
    return out


def condG_residual(m: MetricSpec, A, B) -> TensorField:
    chart = m.chart
    A, B = as_one_form(A, chart), as_one_form(B, chart)
    return _pair_residual(chart, m.dim, [(A, riemann(m).components), (B, gaussian_tensor(m).components)])


def condH_residual(m: MetricSpec, A, B, D) -> TensorField:
    chart = m.chart
    A, B, D = (as_one_form(x, chart) for x in (A, B, D))
    return _pair_residual(chart, m.dim, [(A, riemann(m).components), (B, ricci_wedge(m).components),
                                         (D, gaussian_tensor(m).components)])


def dichotomy_condG(m: MetricSpec, A, B) -> DichotomyReport:
    chart = m.chart
    A, B = as_one_form(A, chart), as_one_form(B, chart)
    n = m.dim
    r = scalar_curvature(m)
    res = condG_residual(m, A, B)
    witness = res.first_nonzero()
    relations = {"r*A + n(n-1)*B = 0": _lin((r, A), (n * (n - 1), B)).is_zero()}
    K = is_constant_curvature(m)
    if witness is not None:
        return DichotomyReport(False, "hypothesis fails", witness, relations, K)
    if A.is_zero() and B.is_zero():
        branch = "forms vanish"
    elif K is not None:
        branch = "constant curvature"
    else:
        branch = "counterexample"
    return DichotomyReport(True, branch, None, relations, K)


def dichotomy_condH(m: MetricSpec, A, B, D) -> DichotomyReport:
    chart = m.chart
    A, B, D = (as_one_form(x, chart) for x in (A, B, D))
    n = m.dim
    r = scalar_curvature(m)
    res = condH_residual(m, A, B, D)
    witness = res.first_nonzero()
    relations = {
        "A + (n-2)*D = 0": _lin((1, A), (n - 2, D)).is_zero(),
        "n*B + D = 0": _lin((n, B), (1, D)).is_zero(),
        "(r/n)*B + D = 0": _lin((r / n, B), (1, D)).is_zero(),
    }
    K = is_constant_curvature(m)
    cf = is_conformally_flat(m)
    if witness is not None:
        return DichotomyReport(False, "hypothesis fails", witness, relations, K, cf)
    if A.is_zero() and B.is_zero() and D.is_zero():
        branch = "forms vanish"
    elif K is not None:
        branch = "constant curvature"
    elif cf:
        branch = "conformally flat"
    elif A.is_zero() and relations["(r/n)*B + D = 0"]:
        branch = "A = (r/n)B + D = 0"
    else:
        branch = "counterexample"
    return DichotomyReport(True, branch, None, relations, K, cf)
