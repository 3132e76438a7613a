"""The fifteen-term equation read as a linear system in the one-form components."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from ..errors import PoleError
from ..expr import Expression, evaluate
from ..geometry import MetricSpec, nabla_riemann
from ..tensor import TensorField
from . import linsolve
from .ews import curvature_operands, ews_residual, slot_source
from .forms import EWS_TERMS, FormFamily, FormFamily9, FormFamily15, REDUCED_NAMES
from .patterns import Pattern, get_pattern


@dataclass
class LinearSystem:
    """Rows ``coeffs . u = rhs`` indexed by residual component ``(h,i,j,k,l)``."""

    pattern: Pattern
    dim: int
    indices: list            # residual index of each row
    rows: list               # dense coefficient lists
    rhs: list

    @property
    def n_unknowns(self) -> int:
        return len(self.pattern.parameters) * self.dim

    def column(self, param: str, component: int) -> int:
        return self.pattern.parameters.index(param) * self.dim + component

    def unknown_label(self, col: int) -> str:
        return f"{self.pattern.parameters[col // self.dim]}[{col % self.dim + 1}]"

    def at_point(self, point) -> "LinearSystem":
        rows = [[evaluate(v, point) for v in row] for row in self.rows]
        rhs = [evaluate(v, point) for v in self.rhs]
        return LinearSystem(self.pattern, self.dim, self.indices, rows, rhs)


def build_system(m: MetricSpec, pattern) -> LinearSystem:
    pattern = get_pattern(pattern)
    n = m.dim
    zero = m.chart.zero()
    ops = curvature_operands(m)
    lhs = nabla_riemann(m).components
    slot_map = pattern.slot_map()
    params = pattern.parameters
    ncols = len(params) * n
    indices, rows, rhs = [], [], []
    for idx in product(range(n), repeat=5):
        row = [zero] * ncols
        for slot, terms in slot_map.items():
            t, pos = EWS_TERMS[slot]
            fi, ti = slot_source(idx, pos)
            c = ops[t][ti]
            if c.is_zero():
                continue
            for p, k in terms:
                col = params.index(p) * n + fi
                row[col] = row[col] + c * k
        b = lhs[idx]
        if b.is_zero() and all(v.is_zero() for v in row):
            continue
        indices.append(idx)
        rows.append(row)
        rhs.append(b)
    return LinearSystem(pattern, n, indices, rows, rhs)


@dataclass
class Certificate:
    """Multipliers ``y`` over residual rows with ``y.M = 0`` and ``y.b != 0``."""

    rows: list            # residual indices (0-based)
    multipliers: list     # Expressions, denominators cleared
    coefficients: list    # coefficient rows of the involved equations
    rhs: list
    combination: Expression  # y.b, not identically zero

    def verify(self) -> bool:
        """Exact check over the fraction field."""
        chart = self.combination.chart
        ncols = len(self.coefficients[0]) if self.coefficients else 0
        for c in range(ncols):
            total = chart.zero()
            for y, row in zip(self.multipliers, self.coefficients):
                total = total + y * row[c]
            if not total.is_zero():
                return False
        total = chart.zero()
        for y, b in zip(self.multipliers, self.rhs):
            total = total + y * b
        return total == self.combination and not total.is_zero()

    def evaluate(self, point) -> tuple[list[Fraction], Fraction]:
        """Return ``(y(p).M(p), y(p).b(p))``; a contradiction shows as zeros versus nonzero."""
        ys = [evaluate(y, point) for y in self.multipliers]
        ncols = len(self.coefficients[0]) if self.coefficients else 0
        lhs = [sum((y * evaluate(row[c], point) for y, row in zip(ys, self.coefficients)), Fraction(0))
               for c in range(ncols)]
        rhs = sum((y * evaluate(b, point) for y, b in zip(ys, self.rhs)), Fraction(0))
        return lhs, rhs

    def contradiction_at(self, point) -> bool:
        try:
            lhs, rhs = self.evaluate(point)
        except PoleError:
            return False
        return all(v == 0 for v in lhs) and rhs != 0


@dataclass
class EWSSolution:
    pattern: str
    particular: FormFamily
    nullspace_dimension: int
    residual_status: str                   # proven-zero | nonzero-witness
    parameters: dict = field(default_factory=dict)  # pattern parameter -> one-form
    nullspace: list = field(default_factory=list)   # parameter dicts spanning the kernel
    rank: int = 0
    witness: tuple | None = None
    solvable = True


@dataclass
class NoSolution:
    pattern: str
    certificate: Certificate
    rank: int = 0
    solvable = False
    residual_status = "no-solution"


@dataclass
class PointwiseSolution:
    pattern: str
    point: tuple
    consistent: bool
    rank: int
    n_unknowns: int
    particular: dict | None      # parameter -> list of Fractions
    certificate_rows: list | None = None

    @property
    def nullspace_dimension(self) -> int:
        return self.n_unknowns - self.rank


def _clear_denominators(values: list[Expression]) -> list[Expression]:
    if not values:
        return values
    chart = values[0].chart
    ring = chart.ring
    lcm = ring.one
    for v in values:
        lcm = lcm.lcm(v.den)
    scale = Expression(chart, lcm, ring.one)
    return [v * scale for v in values]


def _family(m: MetricSpec, pattern: Pattern, params: dict[str, TensorField]) -> FormFamily:
    chart = m.chart
    if pattern.family == "reduced-9":
        return FormFamily9(chart, {k: params[k] for k in REDUCED_NAMES})
    forms = {}
    for slot, terms in pattern.slot_map().items():
        total = TensorField.zero(chart, (0, 1))
        for p, k in terms:
            total = total + params[p].scale(k)
        forms[slot] = total
    return FormFamily15(chart, forms)


def _split(system: LinearSystem, vector, chart) -> dict[str, TensorField]:
    n = system.dim
    return {p: TensorField.one_form(chart, vector[i * n:(i + 1) * n], name=p)
            for i, p in enumerate(system.pattern.parameters)}


def solve_one_forms(m: MetricSpec, pattern="reduced-9"):
    """Exact elimination over Q(x1..xn).

    Returns :class:`EWSSolution` (free kernel directions set to zero) or
    :class:`NoSolution` carrying an inconsistency certificate.
    """
    pattern = get_pattern(pattern)
    chart = m.chart
    system = build_system(m, pattern)
    if system.n_unknowns == 0:
        res = ews_residual(m, FormFamily15(chart))
        if res.is_zero():
            return EWSSolution(pattern.id, _family(m, pattern, {}), 0, "proven-zero")
        return NoSolution(pattern.id, _single_row_certificate(system, res))
    sol = linsolve.solve(system.rows, system.rhs, chart.zero(), chart.one(), system.n_unknowns)
    if not sol.consistent:
        used = sorted(sol.certificate)
        ys = _clear_denominators([sol.certificate[r] for r in used])
        coeffs = [system.rows[r] for r in used]
        rhs = [system.rhs[r] for r in used]
        comb = chart.zero()
        for y, b in zip(ys, rhs):
            comb = comb + y * b
        cert = Certificate([system.indices[r] for r in used], ys, coeffs, rhs, comb)
        return NoSolution(pattern.id, cert, sol.rank)
    params = _split(system, sol.particular, chart)
    family = _family(m, pattern, params)
    res = ews_residual(m, family)
    witness = res.first_nonzero()
    status = "proven-zero" if witness is None else "nonzero-witness"
    kernel = [_split(system, v, chart) for v in sol.nullspace]
    return EWSSolution(pattern.id, family, sol.nullspace_dimension, status, params, kernel, sol.rank, witness)


def _single_row_certificate(system: LinearSystem, res: TensorField) -> Certificate:
    idx, value = res.first_nonzero()
    one = res.chart.one()
    return Certificate([idx], [one], [[]], [value], value)


def solve_at_point(m: MetricSpec, pattern, point) -> PointwiseSolution:
    """Diagnostic: the exact rational system at one point."""
    pattern = get_pattern(pattern)
    system = build_system(m, pattern).at_point(point)
    point = tuple(Fraction(v) for v in (point.values() if isinstance(point, dict) else point))
    if system.n_unknowns == 0:
        bad = [system.indices[r] for r, b in enumerate(system.rhs) if b != 0]
        return PointwiseSolution(pattern.id, point, not bad, 0, 0, {} if not bad else None, bad[:1] or None)
    sol = linsolve.solve(system.rows, system.rhs, Fraction(0), Fraction(1), system.n_unknowns)
    if not sol.consistent:
        return PointwiseSolution(pattern.id, point, False, sol.rank, system.n_unknowns, None,
                                 [system.indices[r] for r in sorted(sol.certificate)])
    n = system.dim
    part = {p: sol.particular[i * n:(i + 1) * n] for i, p in enumerate(pattern.parameters)}
    return PointwiseSolution(pattern.id, point, True, sol.rank, system.n_unknowns, part)


def generic_nonzero_witness(solution: EWSSolution, m: MetricSpec, seed: int = 0, tries: int = 20) -> bool | None:
    """Does some solution have every pattern parameter nonzero at a random point?

    Returns ``None`` if no non-singular sample point was found.
    """
    rng = random.Random(seed)
    n = m.dim
    for _ in range(tries):
        point = [Fraction(rng.randint(1, 9), rng.randint(1, 5)) for _ in range(n)]
        try:
            part = {p: [evaluate(v, point) for v in f.components] for p, f in solution.parameters.items()}
            kern = [{p: [evaluate(v, point) for v in f.components] for p, f in k.items()}
                    for k in solution.nullspace]
        except PoleError:
            continue
        weights = [rng.randint(1, 97) for _ in kern]
        ok = True
        for p, vals in part.items():
            total = list(vals)
            for w, k in zip(weights, kern):
                total = [a + w * b for a, b in zip(total, k[p])]
            if all(v == 0 for v in total):
                ok = False
        return ok
    return None
