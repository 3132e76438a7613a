"""Dense component arrays of Expressions on a chart."""

from __future__ import annotations

from itertools import product
from typing import Callable, Iterator

import numpy as np

from .errors import ChartError, ValenceError
from .expr import Chart, Expression, as_expression, evaluate

RIEMANN = "riemann"
SYMMETRIC = "symmetric"


def zeros(chart: Chart, rank: int) -> np.ndarray:
    out = np.empty((chart.dim,) * rank, dtype=object)
    zero = chart.zero()
    for idx in np.ndindex(out.shape):
        out[idx] = zero
    return out


def riemann_orbit_representatives(n: int) -> Iterator[tuple[int, int, int, int]]:
    """Index tuples (h,i,j,k) with h<i, j<k, (h,i)<=(j,k): one per symmetry orbit."""
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    for p, q in product(range(len(pairs)), repeat=2):
        if p <= q:
            yield pairs[p] + pairs[q]


def riemann_orbit(h, i, j, k):
    """(index, sign) images of a component under the skew/pair symmetries."""
    return (
        ((h, i, j, k), 1), ((i, h, j, k), -1), ((h, i, k, j), -1), ((i, h, k, j), 1),
        ((j, k, h, i), 1), ((k, j, h, i), -1), ((j, k, i, h), -1), ((k, j, i, h), 1),
    )


def fill_riemann(chart: Chart, compute: Callable[[int, int, int, int], Expression],
                 extra_rank: int = 0) -> np.ndarray:
    """Build an array with riemann symmetry in its first four slots.

    ``compute(h, i, j, k)`` returns the component (an Expression when
    ``extra_rank`` is 0, otherwise an array over the trailing slots) for
    orbit representatives only.
    """
    out = zeros(chart, 4 + extra_rank)
    for rep in riemann_orbit_representatives(chart.dim):
        value = compute(*rep)
        for idx, sign in riemann_orbit(*rep):
            out[idx] = value if sign == 1 else -value
    return out


class TensorField:
    """Components of a tensor on a chart.

    ``valence=(r, s)``: the first ``r`` slots are contravariant, the remaining
    ``s`` covariant.  Indices are 0-based in the API and 1-based in reports.
    """

    __slots__ = ("chart", "components", "valence", "symmetry", "name")

    def __init__(self, chart: Chart, components, valence=None, symmetry=None, name=None):
        arr = np.asarray(components, dtype=object)
        if arr.ndim and any(d != chart.dim for d in arr.shape):
            raise ValenceError(f"component array shape {arr.shape} does not match dimension {chart.dim}")
        if valence is None:
            valence = (0, arr.ndim)
        if sum(valence) != arr.ndim:
            raise ValenceError(f"valence {valence} does not match rank {arr.ndim}")
        arr = arr.copy()
        for idx in np.ndindex(arr.shape):
            arr[idx] = as_expression(arr[idx], chart)
        arr.flags.writeable = False
        self.chart = chart
        self.components = arr
        self.valence = tuple(valence)
        self.symmetry = symmetry
        self.name = name

    @classmethod
    def _wrap(cls, chart, arr, valence, symmetry=None, name=None) -> "TensorField":
        """Trusted constructor: ``arr`` already holds Expressions on ``chart``."""
        obj = cls.__new__(cls)
        arr = np.array(arr, dtype=object)
        arr.flags.writeable = False
        obj.chart = chart
        obj.components = arr
        obj.valence = tuple(valence)
        obj.symmetry = symmetry
        obj.name = name
        return obj

    @classmethod
    def zero(cls, chart: Chart, valence=(0, 1), name=None) -> "TensorField":
        return cls._wrap(chart, zeros(chart, sum(valence)), valence, name=name)

    @classmethod
    def one_form(cls, chart: Chart, values, name=None) -> "TensorField":
        values = list(values)
        if len(values) != chart.dim:
            raise ValenceError(f"a one-form needs {chart.dim} components, got {len(values)}")
        return cls(chart, values, (0, 1), name=name)

    # -- shape --------------------------------------------------------
    @property
    def rank(self) -> int:
        return self.components.ndim

    @property
    def dim(self) -> int:
        return self.chart.dim

    @property
    def is_covariant(self) -> bool:
        return self.valence[0] == 0

    def __getitem__(self, idx) -> Expression:
        if isinstance(idx, int):
            idx = (idx,)
        return self.components[tuple(idx)]

    def indices(self) -> Iterator[tuple[int, ...]]:
        return np.ndindex(self.components.shape)

    def nonzero_items(self) -> list[tuple[tuple[int, ...], Expression]]:
        return [(idx, self.components[idx]) for idx in self.indices() if not self.components[idx].is_zero()]

    def is_zero(self) -> bool:
        return all(self.components[idx].is_zero() for idx in self.indices())

    def first_nonzero(self):
        for idx in self.indices():
            if not self.components[idx].is_zero():
                return idx, self.components[idx]
        return None

    # -- algebra ------------------------------------------------------
    def _check_compatible(self, other: "TensorField"):
        if not isinstance(other, TensorField):
            raise TypeError("expected a TensorField")
        if other.chart != self.chart:
            raise ChartError("tensors live on different charts")
        if other.valence != self.valence:
            raise ValenceError(f"valence mismatch {self.valence} vs {other.valence}")

    def __add__(self, other):
        self._check_compatible(other)
        sym = self.symmetry if self.symmetry == other.symmetry else None
        return TensorField._wrap(self.chart, self.components + other.components, self.valence, sym)

    def __sub__(self, other):
        self._check_compatible(other)
        sym = self.symmetry if self.symmetry == other.symmetry else None
        return TensorField._wrap(self.chart, self.components - other.components, self.valence, sym)

    def __neg__(self):
        return TensorField._wrap(self.chart, -self.components, self.valence, self.symmetry)

    def scale(self, factor) -> "TensorField":
        factor = as_expression(factor, self.chart)
        if factor.is_zero():
            return TensorField.zero(self.chart, self.valence)
        arr = np.empty(self.components.shape, dtype=object)
        for idx in self.indices():
            arr[idx] = self.components[idx] * factor
        return TensorField._wrap(self.chart, arr, self.valence, self.symmetry)

    def __mul__(self, factor):
        if isinstance(factor, TensorField):
            return NotImplemented
        return self.scale(factor)

    __rmul__ = __mul__

    def __truediv__(self, factor):
        factor = as_expression(factor, self.chart)
        return self.scale(self.chart.one() / factor)

    def permute(self, axes) -> "TensorField":
        """Reorder slots: result[i_0..] = self[i_axes[0]..] (numpy transpose semantics)."""
        return TensorField._wrap(self.chart, np.transpose(self.components, axes), self.valence)

    def map(self, fn: Callable[[Expression], Expression]) -> "TensorField":
        arr = np.empty(self.components.shape, dtype=object)
        for idx in self.indices():
            arr[idx] = fn(self.components[idx])
        return TensorField._wrap(self.chart, arr, self.valence, self.symmetry)

    def evaluate(self, point) -> np.ndarray:
        out = np.empty(self.components.shape, dtype=object)
        for idx in self.indices():
            out[idx] = evaluate(self.components[idx], point)
        return out

    def __eq__(self, other):
        if not isinstance(other, TensorField):
            return NotImplemented
        return (self.chart == other.chart and self.valence == other.valence
                and all(self.components[i] == other.components[i] for i in self.indices()))

    __hash__ = None

    def as_list(self):
        return self.components.tolist()

    def __repr__(self):
        label = self.name or "TensorField"
        return f"<{label} valence={self.valence} nonzero={len(self.nonzero_items())}>"


def as_one_form(value, chart: Chart, name=None) -> TensorField:
    if isinstance(value, TensorField):
        if value.valence != (0, 1):
            raise ValenceError("expected a one-form")
        if value.chart != chart:
            raise ChartError("one-form lives on a different chart")
        return value
    return TensorField.one_form(chart, value, name=name)
