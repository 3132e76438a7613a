"""Curvature of coordinate metrics with rational components.

Conventions (fixed so that the worked 4-dimensional example tables come out
exactly, see README):

* ``Gamma[k, i, j] = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij)``
* ``R[a, b, c, d] = g_ae (d_c Gamma^e_db - d_d Gamma^e_cb
  + Gamma^e_cf Gamma^f_db - Gamma^e_df Gamma^f_cb)``
* ``S[i, j] = g^{hk} R[h, i, j, k]``, ``r = g^{ij} S[i, j]``, ``L^i_j = g^{ik} S[k, j]``
* ``(q ^ p)[h,i,j,k] = q_hk p_ij - q_hj p_ik + p_hk q_ij - p_hj q_ik``
* covariant derivatives append the derivative index last: ``nabla_R[h,i,j,k,l]``

With these, a round sphere has ``R[0,1,0,1] > 0`` and negative Ricci.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

from .errors import ChartError, PoleError, SingularMetricError, SymmetryError, ValenceError
from .expr import Chart, Expression, as_expression, differentiate, evaluate, polynomial_jet
from .jet import Jet
from .tensor import RIEMANN, SYMMETRIC, TensorField, fill_riemann, zeros


@dataclass(frozen=True)
class MetricSpec:
    """A chart and a symmetric, non-degenerate matrix of metric components."""

    chart: Chart
    components: tuple
    signature: str | None = None

    def __post_init__(self):
        n = self.chart.dim
        rows = tuple(tuple(as_expression(v, self.chart) for v in row) for row in self.components)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValenceError(f"metric must be {n}x{n}")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise SymmetryError(f"g[{i + 1},{j + 1}] != g[{j + 1},{i + 1}]")
        if self.signature not in (None, "riemannian", "semi"):
            raise ValueError(f"unknown signature tag {self.signature!r}")
        object.__setattr__(self, "components", rows)
        if determinant(rows).is_zero():
            raise SingularMetricError("metric determinant vanishes identically")

    @classmethod
    def from_matrix(cls, chart: Chart, matrix, signature=None) -> "MetricSpec":
        return cls(chart, tuple(tuple(row) for row in matrix), signature)

    @classmethod
    def diagonal(cls, chart: Chart, entries, signature=None) -> "MetricSpec":
        n = chart.dim
        entries = list(entries)
        rows = [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)]
        return cls.from_matrix(chart, rows, signature)

    @property
    def dim(self) -> int:
        return self.chart.dim

    def __getitem__(self, idx) -> Expression:
        i, j = idx
        return self.components[i][j]

    def tensor(self) -> TensorField:
        return TensorField._wrap(self.chart, np.array(self.components, dtype=object), (0, 2), SYMMETRIC, "g")

    def is_diagonal(self) -> bool:
        n = self.dim
        return all(self.components[i][j].is_zero() for i in range(n) for j in range(n) if i != j)


def determinant(rows: Sequence[Sequence[Expression]]) -> Expression:
    """Determinant by fraction-field Gaussian elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    chart = m[0][0].chart
    det = chart.one()
    for col in range(n):
        pivot = next((r for r in range(col, n) if not m[r][col].is_zero()), None)
        if pivot is None:
            return chart.zero()
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        p = m[col][col]
        det = det * p
        for r in range(col + 1, n):
            if m[r][col].is_zero():
                continue
            f = m[r][col] / p
            for c in range(col, n):
                m[r][c] = m[r][c] - f * m[col][c]
    return det


def _invert(rows, one, zero):
    n = len(rows)
    m = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not _is_zero(m[r][col])), None)
        if pivot is None:
            raise SingularMetricError("metric is singular")
        m[col], m[pivot] = m[pivot], m[col]
        p = m[col][col]
        m[col] = [v / p for v in m[col]]
        for r in range(n):
            if r != col and not _is_zero(m[r][col]):
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return [row[n:] for row in m]


def _is_zero(v) -> bool:
    if isinstance(v, Expression):
        return v.is_zero()
    if isinstance(v, Jet):
        return v.value == 0
    return v == 0


# ---------------------------------------------------------------------------
# symbolic pipeline (cached per metric; all results are immutable)


@lru_cache(maxsize=64)
def inverse_metric(m: MetricSpec) -> TensorField:
    """``g^{ij}`` as a (2,0) tensor."""
    chart = m.chart
    inv = _invert(m.components, chart.one(), chart.zero())
    return TensorField._wrap(chart, np.array(inv, dtype=object), (2, 0), SYMMETRIC, "g_inv")


@dataclass(frozen=True)
class ChristoffelSymbols:
    """``values[k, i, j] = Gamma^k_ij``, symmetric in (i, j)."""

    chart: Chart
    values: np.ndarray = field(compare=False)

    def __getitem__(self, idx) -> Expression:
        return self.values[tuple(idx)]

    def nonzero_items(self):
        return [(idx, self.values[idx]) for idx in np.ndindex(self.values.shape) if not self.values[idx].is_zero()]

    def as_tensor(self) -> TensorField:
        return TensorField._wrap(self.chart, self.values, (1, 2), None, "christoffel")


@lru_cache(maxsize=64)
def _metric_derivatives(m: MetricSpec):
    n = m.dim
    coords = m.chart.coordinates
    return [[[differentiate(m.components[i][j], coords[l]) for l in range(n)] for j in range(n)] for i in range(n)]


@lru_cache(maxsize=64)
def christoffel(m: MetricSpec) -> ChristoffelSymbols:
    n = m.dim
    chart = m.chart
    ginv = inverse_metric(m).components
    dg = _metric_derivatives(m)  # dg[i][j][l] = d_l g_ij
    half = Fraction(1, 2)
    # lowered symbols Gamma_{l,ij} = 1/2 (d_i g_jl + d_j g_il - d_l g_ij)
    low = {}
    for l, i in product(range(n), repeat=2):
        for j in range(i, n):
            low[l, i, j] = (dg[j][l][i] + dg[i][l][j] - dg[i][j][l]) * half
    values = zeros(chart, 3)
    for k, i in product(range(n), repeat=2):
        for j in range(i, n):
            total = chart.zero()
            for l in range(n):
                if not ginv[k, l].is_zero() and not low[l, i, j].is_zero():
                    total = total + ginv[k, l] * low[l, i, j]
            values[k, i, j] = total
            values[k, j, i] = total
    values.flags.writeable = False
    return ChristoffelSymbols(chart, values)


@lru_cache(maxsize=64)
def _christoffel_derivatives(m: MetricSpec):
    gam = christoffel(m).values
    coords = m.chart.coordinates
    n = m.dim
    out = np.empty((n,) * 4, dtype=object)  # out[e, d, b, c] = d_c Gamma^e_db
    for e, d, b in product(range(n), repeat=3):
        if d > b:
            for c in range(n):
                out[e, d, b, c] = out[e, b, d, c]
            continue
        for c in range(n):
            out[e, d, b, c] = differentiate(gam[e, d, b], coords[c])
    return out


@lru_cache(maxsize=64)
def riemann(m: MetricSpec) -> TensorField:
    """The (0,4) curvature tensor with riemann-type symmetry."""
    n = m.dim
    chart = m.chart
    g = m.components
    gam = christoffel(m).values
    dgam = _christoffel_derivatives(m)

    def upper(e, b, c, d):
        total = dgam[e, d, b, c] - dgam[e, c, b, d]
        for f in range(n):
            if not gam[e, c, f].is_zero() and not gam[f, d, b].is_zero():
                total = total + gam[e, c, f] * gam[f, d, b]
            if not gam[e, d, f].is_zero() and not gam[f, c, b].is_zero():
                total = total - gam[e, d, f] * gam[f, c, b]
        return total

    def component(a, b, c, d):
        total = chart.zero()
        for e in range(n):
            if not g[a][e].is_zero():
                total = total + g[a][e] * upper(e, b, c, d)
        return total

    return TensorField._wrap(chart, fill_riemann(chart, component), (0, 4), RIEMANN, "R")


def _trace_14(t: np.ndarray, ginv: np.ndarray, chart: Chart) -> np.ndarray:
    n = chart.dim
    out = zeros(chart, 2)
    for i, j in product(range(n), repeat=2):
        total = chart.zero()
        for h, k in product(range(n), repeat=2):
            if not ginv[h, k].is_zero() and not t[h, i, j, k].is_zero():
                total = total + ginv[h, k] * t[h, i, j, k]
        out[i, j] = total
    return out


@lru_cache(maxsize=64)
def ricci(m: MetricSpec) -> TensorField:
    """``S[i,j] = g^{hk} R[h,i,j,k]``."""
    arr = _trace_14(riemann(m).components, inverse_metric(m).components, m.chart)
    return TensorField._wrap(m.chart, arr, (0, 2), SYMMETRIC, "S")


@lru_cache(maxsize=64)
def scalar_curvature(m: MetricSpec) -> Expression:
    ginv = inverse_metric(m).components
    s = ricci(m).components
    total = m.chart.zero()
    for i, j in product(range(m.dim), repeat=2):
        if not ginv[i, j].is_zero() and not s[i, j].is_zero():
            total = total + ginv[i, j] * s[i, j]
    return total


@lru_cache(maxsize=64)
def ricci_operator(m: MetricSpec) -> TensorField:
    """``L^i_j = g^{ik} S[k,j]`` as a (1,1) tensor."""
    n = m.dim
    ginv = inverse_metric(m).components
    s = ricci(m).components
    out = zeros(m.chart, 2)
    for i, j in product(range(n), repeat=2):
        total = m.chart.zero()
        for k in range(n):
            if not ginv[i, k].is_zero() and not s[k, j].is_zero():
                total = total + ginv[i, k] * s[k, j]
        out[i, j] = total
    return TensorField._wrap(m.chart, out, (1, 1), None, "L")


def kulkarni_nomizu(q: TensorField, p: TensorField) -> TensorField:
    """``(q ^ p)[h,i,j,k] = q_hk p_ij - q_hj p_ik + p_hk q_ij - p_hj q_ik``."""
    for t in (q, p):
        if t.valence != (0, 2):
            raise ValenceError("Kulkarni-Nomizu product needs (0,2) tensors")
    if q.chart != p.chart:
        raise ChartError("tensors live on different charts")
    for t in (q, p):
        a = t.components
        n = t.dim
        if any(a[i, j] != a[j, i] for i in range(n) for j in range(i + 1, n)):
            raise SymmetryError("Kulkarni-Nomizu product needs symmetric inputs")
    qa, pa = q.components, p.components

    def component(h, i, j, k):
        return qa[h, k] * pa[i, j] - qa[h, j] * pa[i, k] + pa[h, k] * qa[i, j] - pa[h, j] * qa[i, k]

    return TensorField._wrap(q.chart, fill_riemann(q.chart, component), (0, 4), RIEMANN)


@lru_cache(maxsize=64)
def gaussian_tensor(m: MetricSpec) -> TensorField:
    """``G = g ^ g``."""
    t = kulkarni_nomizu(m.tensor(), m.tensor())
    t.name = "G"
    return t


@lru_cache(maxsize=64)
def ricci_wedge(m: MetricSpec) -> TensorField:
    """``H = g ^ S``."""
    t = kulkarni_nomizu(m.tensor(), ricci(m))
    t.name = "H"
    return t


def covariant_derivative(t: TensorField, m: MetricSpec) -> TensorField:
    """``(nabla t)[i_1..i_k, l] = d_l t[i..] - sum_a Gamma^p_{l i_a} t[..p..]``."""
    if not t.is_covariant:
        raise ValenceError("covariant_derivative expects a covariant tensor")
    if t.chart != m.chart:
        raise ChartError("tensor and metric live on different charts")
    n = m.dim
    k = t.rank
    chart = m.chart
    coords = chart.coordinates
    gam = christoffel(m).values
    a = t.components

    def component(idx, l):
        total = differentiate(a[idx], coords[l])
        for slot in range(k):
            for p in range(n):
                coef = gam[p, l, idx[slot]]
                if coef.is_zero():
                    continue
                moved = idx[:slot] + (p,) + idx[slot + 1:]
                if not a[moved].is_zero():
                    total = total - coef * a[moved]
        return total

    if t.symmetry == RIEMANN and k == 4:
        def block(h, i, j, kk):
            return np.array([component((h, i, j, kk), l) for l in range(n)], dtype=object)

        arr = fill_riemann(chart, block, extra_rank=1)
    else:
        arr = zeros(chart, k + 1)
        for idx in np.ndindex((n,) * k):
            if t.symmetry == SYMMETRIC and k == 2 and idx[0] > idx[1]:
                continue
            for l in range(n):
                arr[idx + (l,)] = component(idx, l)
                if t.symmetry == SYMMETRIC and k == 2:
                    arr[(idx[1], idx[0], l)] = arr[idx + (l,)]
    return TensorField._wrap(chart, arr, (0, k + 1), None, f"nabla_{t.name}" if t.name else None)


@lru_cache(maxsize=64)
def nabla_riemann(m: MetricSpec) -> TensorField:
    return covariant_derivative(riemann(m), m)


@lru_cache(maxsize=64)
def nabla_ricci(m: MetricSpec) -> TensorField:
    return covariant_derivative(ricci(m), m)


@lru_cache(maxsize=64)
def weyl(m: MetricSpec) -> TensorField:
    """Trace-free part of R: ``R - H/(n-2) + r G / (2(n-1)(n-2))``."""
    n = m.dim
    if n < 3:
        raise ValenceError("the Weyl tensor needs dimension >= 3")
    r = scalar_curvature(m)
    c = riemann(m) - ricci_wedge(m).scale(Fraction(1, n - 2)) \
        + gaussian_tensor(m).scale(r * Fraction(1, 2 * (n - 1) * (n - 2)))
    c.symmetry = RIEMANN
    c.name = "C"
    return c


# ---------------------------------------------------------------------------
# index gymnastics


def raise_form(form: TensorField, m: MetricSpec) -> TensorField:
    """Associated vector field ``X^i = g^{ij} form_j``."""
    if form.valence != (0, 1):
        raise ValenceError("raise_form expects a one-form")
    ginv = inverse_metric(m).components
    n = m.dim
    vals = [sum((ginv[i, j] * form[j] for j in range(n)), m.chart.zero()) for i in range(n)]
    return TensorField._wrap(m.chart, np.array(vals, dtype=object), (1, 0))


def lower_vector(vector: TensorField, m: MetricSpec) -> TensorField:
    if vector.valence != (1, 0):
        raise ValenceError("lower_vector expects a vector field")
    n = m.dim
    vals = [sum((m.components[i][j] * vector[j] for j in range(n)), m.chart.zero()) for i in range(n)]
    return TensorField._wrap(m.chart, np.array(vals, dtype=object), (0, 1))


def apply_ricci(form: TensorField, m: MetricSpec) -> TensorField:
    """The one-form ``X -> form(L X)``, components ``form_p L^p_j``."""
    if form.valence != (0, 1):
        raise ValenceError("apply_ricci expects a one-form")
    ell = ricci_operator(m).components
    n = m.dim
    vals = [sum((form[p] * ell[p, j] for p in range(n)), m.chart.zero()) for j in range(n)]
    return TensorField._wrap(m.chart, np.array(vals, dtype=object), (0, 1))


def contract(t: TensorField, slots: tuple[int, int], m: MetricSpec | None = None) -> TensorField:
    """Contract two slots: with ``g^{-1}`` if both covariant, with ``g`` if both
    contravariant, directly if mixed."""
    a, b = sorted(slots)
    k = t.rank
    if a == b or a < 0 or b >= k:
        raise ValenceError(f"invalid slot pair {slots} for a rank-{k} tensor")
    r = t.valence[0]
    up_a, up_b = a < r, b < r
    n = t.dim
    chart = t.chart
    if up_a == up_b:
        if m is None:
            raise ValenceError("contracting like slots needs the metric")
        metric = inverse_metric(m).components if not up_a else np.array(m.components, dtype=object)
    else:
        metric = None
    rest = [s for s in range(k) if s not in (a, b)]
    out = zeros(chart, k - 2)
    comps = t.components
    for idx in np.ndindex((n,) * (k - 2)):
        total = chart.zero()
        for p, q in product(range(n), repeat=2):
            if metric is None and p != q:
                continue
            weight = chart.one() if metric is None else metric[p, q]
            if weight.is_zero():
                continue
            full = [0] * k
            for s, v in zip(rest, idx):
                full[s] = v
            full[a], full[b] = p, q
            val = comps[tuple(full)]
            if not val.is_zero():
                total = total + weight * val
        out[idx] = total
    new_up = r - int(up_a) - int(up_b)
    return TensorField._wrap(chart, out, (new_up, k - 2 - new_up))


# ---------------------------------------------------------------------------
# jet oracle


@dataclass
class OracleReport:
    point: tuple
    depth: int
    checked: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _jet_metric(m: MetricSpec, values, order):
    n = m.dim
    out = [[None] * n for _ in range(n)]
    for i, j in product(range(n), repeat=2):
        e = m.components[i][j]
        num = polynomial_jet(m.chart, e.num, values, order)
        den = polynomial_jet(m.chart, e.den, values, order)
        if den.value == 0:
            raise PoleError(f"metric entry g[{i + 1},{j + 1}] has a pole at the point")
        out[i][j] = num / den
    return out


def jet_curvature(m: MetricSpec, point, depth: int = 3):
    """Pointwise Gamma, R and nabla R from jets of the raw metric entries.

    Uses the second-derivative form of the curvature,
    ``R_abcd = 1/2 (d_b d_c g_ad + d_a d_d g_bc - d_a d_c g_bd - d_b d_d g_ac)
    + g_ef (Gamma^e_bc Gamma^f_ad - Gamma^e_bd Gamma^f_ac)``,
    which shares no code path with the symbolic pipeline.
    """
    if depth < 3:
        raise ValueError("the oracle needs jets of order >= 3 to reach nabla R")
    n = m.dim
    values = [Fraction(v) for v in (point.values() if isinstance(point, dict) else point)]
    g = _jet_metric(m, values, depth)
    one = Jet.constant(n, depth, 1)
    zero = Jet.constant(n, depth, 0)
    try:
        ginv = _invert(g, one, zero)
    except SingularMetricError:
        raise PoleError("metric is degenerate at the point") from None
    dg = [[[g[i][j].derivative(l) for l in range(n)] for j in range(n)] for i in range(n)]
    gam_low = [[[(dg[j][l][i] + dg[i][l][j] - dg[i][j][l]) * Fraction(1, 2)
                 for j in range(n)] for i in range(n)] for l in range(n)]
    gam = [[[sum((ginv[k][l] * gam_low[l][i][j] for l in range(n)), Jet.constant(n, depth - 1, 0))
             for j in range(n)] for i in range(n)] for k in range(n)]
    ddg = [[[[dg[i][j][a].derivative(b) for b in range(n)] for a in range(n)] for j in range(n)] for i in range(n)]
    riem = {}
    for a, b, c, d in product(range(n), repeat=4):
        second = (ddg[a][d][b][c] + ddg[b][c][a][d] - ddg[b][d][a][c] - ddg[a][c][b][d]) * Fraction(1, 2)
        quad = Jet.constant(n, depth - 2, 0)
        for e, f in product(range(n), repeat=2):
            quad = quad + g[e][f] * (gam[e][b][c] * gam[f][a][d] - gam[e][b][d] * gam[f][a][c])
        riem[a, b, c, d] = second + quad
    gam0 = {(k, i, j): gam[k][i][j].value for k, i, j in product(range(n), repeat=3)}
    nabla = {}
    for a, b, c, d in product(range(n), repeat=4):
        for l in range(n):
            total = riem[a, b, c, d].derivative(l).value
            idx = [a, b, c, d]
            for s in range(4):
                for p in range(n):
                    coef = gam0[p, l, idx[s]]
                    if coef:
                        moved = idx.copy()
                        moved[s] = p
                        total -= coef * riem[tuple(moved)].value
            nabla[a, b, c, d, l] = total
    return gam0, {k: v.value for k, v in riem.items()}, nabla


def oracle_check(m: MetricSpec, point, depth: int = 3) -> OracleReport:
    """Compare symbolic Gamma, R, nabla R evaluated at ``point`` against the jet oracle."""
    if isinstance(point, dict):
        point = [point[c] for c in m.chart.coordinates]
    point = tuple(Fraction(v) for v in point)
    gam0, riem0, nabla0 = jet_curvature(m, point, depth)
    report = OracleReport(point, depth)
    gam = christoffel(m).values
    riem = riemann(m).components
    nab = nabla_riemann(m).components
    for name, sym, ref in (("christoffel", gam, gam0), ("riemann", riem, riem0), ("grad-riemann", nab, nabla0)):
        for idx, expected in ref.items():
            got = evaluate(sym[idx], point)
            report.checked += 1
            if got != expected:
                report.mismatches.append((name, idx, got, expected))
    return report
