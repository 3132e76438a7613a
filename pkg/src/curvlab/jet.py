"""Truncated multivariate Taylor series with exact rational coefficients.

A :class:`Jet` of order ``k`` in ``n`` variables stores the coefficients of
``sum c_alpha * dx^alpha`` for ``|alpha| <= k``.  Arithmetic propagates the
truncation, so the coefficient of ``dx^alpha`` in ``f(x0 + dx)`` equals
``d^alpha f(x0) / alpha!`` exactly.  Used as the independent derivative
oracle of the geometry pipeline.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import factorial
from typing import Dict, Iterator, Tuple

from .errors import PoleError

Multi = Tuple[int, ...]


def _rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


class Jet:
    __slots__ = ("nvars", "order", "coeffs")

    def __init__(self, nvars: int, order: int, coeffs: Dict[Multi, Fraction] | None = None):
        if order < 0:
            raise ValueError("jet order must be non-negative")
        self.nvars = nvars
        self.order = order
        self.coeffs = {}
        for multi, c in (coeffs or {}).items():
            if len(multi) != nvars:
                raise ValueError("multi-index length does not match number of variables")
            if sum(multi) <= order and c:
                self.coeffs[tuple(multi)] = _rational(c)

    @classmethod
    def constant(cls, nvars: int, order: int, value) -> "Jet":
        return cls(nvars, order, {(0,) * nvars: _rational(value)})

    @classmethod
    def variable(cls, nvars: int, order: int, index: int, value) -> "Jet":
        """The jet of the coordinate function ``x_index`` at ``x_index = value``."""
        unit = tuple(1 if i == index else 0 for i in range(nvars))
        coeffs = {(0,) * nvars: _rational(value)}
        if order >= 1:
            coeffs[unit] = Fraction(1)
        return cls(nvars, order, coeffs)

    # -- inspection ---------------------------------------------------
    @property
    def value(self) -> Fraction:
        return self.coeffs.get((0,) * self.nvars, Fraction(0))

    def coefficient(self, multi: Multi) -> Fraction:
        return self.coeffs.get(tuple(multi), Fraction(0))

    def partial(self, multi: Multi) -> Fraction:
        """Exact partial derivative ``d^multi f`` at the expansion point."""
        scale = 1
        for a in multi:
            scale *= factorial(a)
        return self.coefficient(multi) * scale

    def multi_indices(self) -> Iterator[Multi]:
        for multi in product(range(self.order + 1), repeat=self.nvars):
            if sum(multi) <= self.order:
                yield multi

    def is_zero(self) -> bool:
        return not self.coeffs

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "Jet":
        if isinstance(other, Jet):
            if other.nvars != self.nvars:
                raise ValueError("jets over different numbers of variables")
            return other
        return Jet.constant(self.nvars, self.order, other)

    def truncate(self, order: int) -> "Jet":
        return Jet(self.nvars, min(order, self.order), self.coeffs)

    def __add__(self, other) -> "Jet":
        other = self._coerce(other)
        order = min(self.order, other.order)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return Jet(self.nvars, order, out)

    __radd__ = __add__

    def __neg__(self) -> "Jet":
        return Jet(self.nvars, self.order, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other) -> "Jet":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Jet":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Jet":
        if not isinstance(other, Jet):
            c = _rational(other)
            return Jet(self.nvars, self.order, {m: v * c for m, v in self.coeffs.items()})
        other = self._coerce(other)
        order = min(self.order, other.order)
        out: Dict[Multi, Fraction] = {}
        for m1, c1 in self.coeffs.items():
            d1 = sum(m1)
            if d1 > order:
                continue
            for m2, c2 in other.coeffs.items():
                if d1 + sum(m2) > order:
                    continue
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Jet(self.nvars, order, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Jet":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.reciprocal() ** (-exponent)
        result = Jet.constant(self.nvars, self.order, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def reciprocal(self) -> "Jet":
        a0 = self.value
        if a0 == 0:
            raise PoleError("jet reciprocal at a zero of the expansion")
        # 1/(a0 + h) = sum_m (-h)^m / a0^(m+1); h has no constant term
        h = self - a0
        term = Jet.constant(self.nvars, self.order, 1 / a0)
        total = term
        for _ in range(self.order):
            term = term * h * (-1 / a0)
            total = total + term
        return total

    def __truediv__(self, other) -> "Jet":
        if isinstance(other, Jet):
            return self * other.reciprocal()
        return self * (1 / _rational(other))

    def __rtruediv__(self, other) -> "Jet":
        return self.reciprocal() * other

    def derivative(self, index: int) -> "Jet":
        """Partial derivative; the result is one order shorter."""
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 jet")
        out = {}
        for m, c in self.coeffs.items():
            if m[index] == 0:
                continue
            lowered = tuple(a - 1 if i == index else a for i, a in enumerate(m))
            out[lowered] = c * m[index]
        return Jet(self.nvars, self.order - 1, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Jet):
            return NotImplemented
        return (self.nvars, self.order, self.coeffs) == (other.nvars, other.order, other.coeffs)

    def __repr__(self) -> str:
        terms = ", ".join(f"{m}: {c}" for m, c in sorted(self.coeffs.items()))
        return f"Jet(order={self.order}, {{{terms}}})"
