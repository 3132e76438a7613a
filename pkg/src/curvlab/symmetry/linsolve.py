"""Gauss-Jordan elimination over a field, with inconsistency certificates.

Entries are either :class:`~curvlab.expr.Expression` (the fraction field
Q(x1..xn)) or :class:`fractions.Fraction` (pointwise mode).  Each working row
remembers which combination of the original rows produced it, so an
inconsistent system comes with multipliers ``y`` satisfying ``y A = 0`` and
``y b != 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..expr import Expression


def is_zero(v) -> bool:
    return v.is_zero() if isinstance(v, Expression) else v == 0


def pivot_key(v):
    if isinstance(v, Expression):
        return v.complexity()
    v = Fraction(v)
    return (abs(v.numerator).bit_length() + v.denominator.bit_length(), 0)


@dataclass
class LinearSolution:
    consistent: bool
    rank: int
    n_unknowns: int
    particular: list | None = None
    nullspace: list = field(default_factory=list)
    pivots: dict = field(default_factory=dict)
    certificate: dict | None = None  # original row index -> multiplier

    @property
    def nullspace_dimension(self) -> int:
        return self.n_unknowns - self.rank


def solve(rows: Sequence[Sequence], rhs: Sequence, zero, one, ncols: int | None = None) -> LinearSolution:
    """Solve ``rows @ u = rhs`` exactly.

    Returns a particular solution (free unknowns set to zero) and a nullspace
    basis, or a certificate of inconsistency.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    work = []
    seen = set()
    for r, (row, b) in enumerate(zip(rows, rhs)):
        entries = {c: v for c, v in enumerate(row) if not is_zero(v)}
        if not entries:
            if is_zero(b):
                continue
            return LinearSolution(False, 0, ncols, certificate={r: one})
        key = (tuple(sorted(entries.items(), key=lambda kv: kv[0])), b)
        neg = (tuple((c, -v) for c, v in sorted(entries.items(), key=lambda kv: kv[0])), -b)
        try:
            if key in seen or neg in seen:
                continue
            seen.add(key)
        except TypeError:
            pass
        work.append([entries, b, {r: one}])

    pivots: dict[int, int] = {}  # column -> index into done
    done = []
    remaining = work
    for col in range(ncols):
        candidates = [w for w in remaining if col in w[0]]
        if not candidates:
            continue
        best = min(candidates, key=lambda w: (pivot_key(w[0][col]), len(w[0])))
        remaining = [w for w in remaining if w is not best]
        p = best[0][col]
        inv = one / p
        best = [{c: v * inv for c, v in best[0].items()}, best[1] * inv, {r: v * inv for r, v in best[2].items()}]
        best[0][col] = one

        def eliminate(w):
            f = w[0].get(col)
            if f is None:
                return w
            entries = dict(w[0])
            for c, v in best[0].items():
                nv = entries.get(c, zero) - f * v
                if is_zero(nv):
                    entries.pop(c, None)
                else:
                    entries[c] = nv
            combo = dict(w[2])
            for r, v in best[2].items():
                nv = combo.get(r, zero) - f * v
                if is_zero(nv):
                    combo.pop(r, None)
                else:
                    combo[r] = nv
            return [entries, w[1] - f * best[1], combo]

        remaining = [eliminate(w) for w in remaining]
        done = [eliminate(w) for w in done]
        pivots[col] = len(done)
        done.append(best)
        for w in remaining:
            if not w[0] and not is_zero(w[1]):
                return LinearSolution(False, len(done), ncols, pivots=pivots, certificate=w[2])
        remaining = [w for w in remaining if w[0] or not is_zero(w[1])]

    for w in remaining:
        if not w[0] and not is_zero(w[1]):
            return LinearSolution(False, len(done), ncols, pivots=pivots, certificate=w[2])

    particular = [zero] * ncols
    for col, d in pivots.items():
        particular[col] = done[d][1]
    nullspace = []
    for free in range(ncols):
        if free in pivots:
            continue
        vec = [zero] * ncols
        vec[free] = one
        for col, d in pivots.items():
            coef = done[d][0].get(free)
            if coef is not None:
                vec[col] = -coef
        nullspace.append(vec)
    return LinearSolution(True, len(done), ncols, particular, nullspace, pivots)
