"""Exact multivariate rational functions over Q.

An :class:`Expression` is a quotient ``p/q`` of integer polynomials in the
coordinates of a :class:`Chart`.  Every instance is kept canonical:

* ``gcd(p, q)`` is a constant,
* the integer contents of ``p`` and ``q`` are jointly coprime,
* the leading coefficient of ``q`` (lex order, chart order) is positive,
* zero is ``0/1``.

Two expressions denote the same rational function iff they compare equal.
Polynomial arithmetic is delegated to sympy's sparse ``PolyElement`` type.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from sympy.polys.domains import ZZ
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyRing

from .errors import (
    ChartError,
    ExpressionSyntaxError,
    NonIntegerExponentError,
    PoleError,
    UnknownIdentifierError,
)
from .jet import Jet

_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")


@lru_cache(maxsize=None)
def _poly_ring(coordinates: tuple[str, ...]) -> PolyRing:
    return PolyRing(coordinates, ZZ, lex)


@dataclass(frozen=True)
class Chart:
    """Ordered coordinate names of a local chart."""

    coordinates: tuple[str, ...]

    def __post_init__(self):
        coords = tuple(self.coordinates)
        object.__setattr__(self, "coordinates", coords)
        if len(coords) < 2:
            raise ChartError("a chart needs at least two coordinates")
        if len(set(coords)) != len(coords):
            raise ChartError(f"duplicate coordinate names in {coords}")
        for name in coords:
            if not _IDENT.match(name):
                raise ChartError(f"invalid coordinate name {name!r}")

    @classmethod
    def standard(cls, n: int, prefix: str = "x") -> "Chart":
        return cls(tuple(f"{prefix}{i}" for i in range(1, n + 1)))

    @property
    def dim(self) -> int:
        return len(self.coordinates)

    @property
    def ring(self) -> PolyRing:
        return _poly_ring(self.coordinates)

    def index(self, name: str) -> int:
        try:
            return self.coordinates.index(name)
        except ValueError:
            raise UnknownIdentifierError(f"unknown coordinate {name!r}") from None

    def zero(self) -> "Expression":
        return Expression(self, self.ring.zero, self.ring.one, _canonical=True)

    def one(self) -> "Expression":
        return Expression(self, self.ring.one, self.ring.one, _canonical=True)

    def coordinate(self, name: str) -> "Expression":
        return Expression(self, self.ring.gens[self.index(name)], self.ring.one, _canonical=True)

    def constant(self, value) -> "Expression":
        value = Fraction(value)
        ring = self.ring
        return Expression(self, ring(value.numerator), ring(value.denominator), _canonical=True)

    def __str__(self) -> str:
        return ", ".join(self.coordinates)


class Expression:
    """Canonical rational function on a chart.  Immutable."""

    __slots__ = ("chart", "num", "den", "_hash")

    def __init__(self, chart: Chart, num, den=None, *, _canonical: bool = False):
        ring = chart.ring
        if den is None:
            den = ring.one
        if not _canonical:
            num, den = _cancel(ring, num, den)
        self.chart = chart
        self.num = num
        self.den = den
        self._hash = None

    # -- coercion -----------------------------------------------------
    def _lift(self, other) -> "Expression | None":
        if isinstance(other, Expression):
            if other.chart != self.chart:
                raise ChartError("expressions live on different charts")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.chart.constant(other)
        return None

    # -- predicates ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_constant(self) -> bool:
        return self.num.is_ground and self.den.is_ground

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return Fraction(int(self.num.LC) if self.num else 0, int(self.den.LC))

    def is_polynomial(self) -> bool:
        return self.den.is_ground

    def variables(self) -> set[str]:
        used = set()
        for poly in (self.num, self.den):
            for monom in poly.monoms():
                used.update(n for n, e in zip(self.chart.coordinates, monom) if e)
        return used

    def complexity(self) -> tuple[int, int]:
        """Total degree and term count; a pivot-selection key."""
        deg = 0
        for poly in (self.num, self.den):
            for monom in poly.monoms():
                deg = max(deg, sum(monom))
        return deg, len(self.num) + len(self.den)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return Expression(self.chart, self.num + other.num, self.den)
        return Expression(self.chart, self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return Expression(self.chart, -self.num, self.den, _canonical=True)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if not self.num or not other.num:
            return self.chart.zero()
        if other.is_constant() and other.num == other.den:
            return self
        return Expression(self.chart, self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if not other.num:
            raise PoleError("division by the zero polynomial")
        return Expression(self.chart, self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent >= 0:
            return Expression(self.chart, self.num**exponent, self.den**exponent, _canonical=True) \
                if exponent else self.chart.one()
        if not self.num:
            raise PoleError("zero raised to a negative power")
        return Expression(self.chart, self.den ** (-exponent), self.num ** (-exponent))

    # -- identity -----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Expression):
            return self.chart == other.chart and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.chart, tuple(self.num.terms()), tuple(self.den.terms())))
        return self._hash

    def __str__(self):
        return format_expression(self)

    def __repr__(self):
        return f"Expression({format_expression(self)!r})"


def _cancel(ring, num, den):
    if not den:
        raise PoleError("division by the zero polynomial")
    if not num:
        return ring.zero, ring.one
    if den.is_ground and num.is_ground:
        value = Fraction(int(num.LC), int(den.LC))
        return ring(value.numerator), ring(value.denominator)
    p, q = num.cancel(den)
    if q.LC < 0:
        p, q = -p, -q
    return p, q


# ---------------------------------------------------------------------------
# canonicalization and structural helpers


def canonicalize(e: Expression) -> Expression:
    """Canonical representative of ``e``.  Expressions are canonical on construction."""
    return Expression(e.chart, e.num, e.den)


def from_polynomials(chart: Chart, numerator, denominator) -> Expression:
    """Build a canonical expression from sympy ``PolyElement`` (or integer) pieces."""
    ring = chart.ring
    return Expression(chart, ring(numerator), ring(denominator))


def cross_equal(e1: Expression, e2: Expression) -> bool:
    """Equality through ``p1*q2 - p2*q1 == 0``, bypassing canonical-form identity."""
    return not (e1.num * e2.den - e2.num * e1.den)


# ---------------------------------------------------------------------------
# printing


def _format_monomial(chart: Chart, monom) -> str:
    parts = []
    for name, exp in zip(chart.coordinates, monom):
        if exp == 1:
            parts.append(name)
        elif exp:
            parts.append(f"{name}^{exp}")
    return "*".join(parts)


def format_polynomial(chart: Chart, poly) -> str:
    if not poly:
        return "0"
    out = []
    for i, (monom, coeff) in enumerate(poly.terms()):
        coeff = int(coeff)
        mono = _format_monomial(chart, monom)
        mag = abs(coeff)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            out.append(f"-{body}" if coeff < 0 else body)
        else:
            out.append(f" - {body}" if coeff < 0 else f" + {body}")
    return "".join(out)


def format_expression(e: Expression) -> str:
    """Canonical text of ``e``; re-parses to an identical Expression."""
    num = format_polynomial(e.chart, e.num)
    if e.den == e.chart.ring.one:
        return num
    if len(e.num) > 1:
        num = f"({num})"
    den = format_polynomial(e.chart, e.den)
    single_power = len(e.den) == 1 and e.den.LC == 1 and sum(1 for x in e.den.monoms()[0] if x) == 1
    if not single_power:
        den = f"({den})"
    return f"{num}/{den}"


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<decimal>\d+\.\d*|\.\d+)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, chart: Chart):
        self.text = text
        self.chart = chart
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return ExpressionSyntaxError(message, self.text, tok[2])

    def parse(self) -> Expression:
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        value = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return value

    def expr(self) -> Expression:
        value = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Expression:
        value = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            if op[1] == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise PoleError(f"division by the zero polynomial at position {op[2]}")
                value = value / rhs
        return value

    def unary(self) -> Expression:
        if self.peek() == ("op", "-", self.peek()[2]):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+", self.peek()[2]):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Expression:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            sign = 1
            if self.peek()[0] == "op" and self.peek()[1] in "+-":
                sign = -1 if self.take()[1] == "-" else 1
            tok = self.peek()
            if tok[0] != "int":
                if tok[0] == "end":
                    raise self.error("missing exponent")
                raise NonIntegerExponentError("exponent must be an integer literal", self.text, tok[2])
            self.take()
            exponent = sign * int(tok[1])
            if exponent < 0 and base.is_zero():
                raise PoleError(f"zero raised to a negative power at position {tok[2]}")
            return base**exponent
        return base

    def atom(self) -> Expression:
        tok = self.take()
        kind, text, pos = tok
        if kind == "int":
            return self.chart.constant(int(text))
        if kind == "ident":
            if text not in self.chart.coordinates:
                raise UnknownIdentifierError(f"unknown identifier {text!r} at position {pos}")
            return self.chart.coordinate(text)
        if kind == "op" and text == "(":
            value = self.expr()
            if self.peek()[1] != ")":
                raise self.error("expected ')'")
            self.take()
            return value
        if kind == "decimal":
            raise ExpressionSyntaxError("decimal literals are not exact; use a fraction", self.text, pos)
        if kind == "end":
            raise ExpressionSyntaxError("unexpected end of input", self.text, pos)
        raise ExpressionSyntaxError(f"unexpected {text!r}", self.text, pos)


def parse_expression(text: str, chart: Chart) -> Expression:
    """Parse ``text`` (grammar: ``+ - * / ^``, integers, coordinates, parentheses)."""
    return _Parser(text, chart).parse()


def as_expression(value, chart: Chart) -> Expression:
    """Coerce strings, ints, Fractions and Expressions onto ``chart``."""
    if isinstance(value, Expression):
        if value.chart != chart:
            raise ChartError("expression lives on a different chart")
        return value
    if isinstance(value, str):
        return parse_expression(value, chart)
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return chart.constant(value)
    raise TypeError(f"cannot interpret {value!r} as an expression")


# ---------------------------------------------------------------------------
# calculus and evaluation


def differentiate(e: Expression, coordinate: str) -> Expression:
    """Exact partial derivative with respect to ``coordinate``."""
    chart = e.chart
    x = chart.ring.gens[chart.index(coordinate)]
    if not e.num:
        return e
    dn = e.num.diff(x)
    if e.den.is_ground:
        return Expression(chart, dn, e.den)
    dd = e.den.diff(x)
    return Expression(chart, dn * e.den - e.num * dd, e.den**2)


def _point_values(chart: Chart, point: Mapping[str, object] | Sequence) -> list[Fraction]:
    if isinstance(point, Mapping):
        unknown = set(point) - set(chart.coordinates)
        if unknown:
            raise UnknownIdentifierError(f"unknown coordinates {sorted(unknown)}")
        missing = [c for c in chart.coordinates if c not in point]
        if missing:
            raise ValueError(f"point does not assign {missing}")
        return [Fraction(point[c]) for c in chart.coordinates]
    values = [Fraction(v) for v in point]
    if len(values) != chart.dim:
        raise ValueError(f"point has {len(values)} values for a {chart.dim}-dimensional chart")
    return values


def _eval_poly(poly, values: Sequence[Fraction]) -> Fraction:
    total = Fraction(0)
    for monom, coeff in poly.terms():
        term = Fraction(int(coeff))
        for v, k in zip(values, monom):
            if k:
                term *= v**k
        total += term
    return total


def evaluate(e: Expression, point) -> Fraction:
    """Exact value at ``point`` (mapping name -> rational, or a sequence in chart order)."""
    values = _point_values(e.chart, point)
    den = _eval_poly(e.den, values)
    if den == 0:
        raise PoleError(
            f"pole: denominator {format_polynomial(e.chart, e.den)} vanishes at the point",
            denominator=format_polynomial(e.chart, e.den),
        )
    return _eval_poly(e.num, values) / den


def polynomial_jet(chart: Chart, poly, values: Sequence[Fraction], order: int) -> Jet:
    """Jet of an integer polynomial at ``values`` by substituting ``x = x0 + dx``."""
    n = chart.dim
    coords = [Jet.variable(n, order, i, v) for i, v in enumerate(values)]
    powers: dict[tuple[int, int], Jet] = {}
    total = Jet.constant(n, order, 0)
    for monom, coeff in poly.terms():
        term = Jet.constant(n, order, int(coeff))
        for i, k in enumerate(monom):
            if k:
                if (i, k) not in powers:
                    powers[(i, k)] = coords[i] ** k
                term = term * powers[(i, k)]
        total = total + term
    return total


def jet_evaluate(e: Expression, point, order: int) -> Jet:
    """Truncated Taylor expansion of ``e`` around ``point`` to total order ``order``."""
    values = _point_values(e.chart, point)
    if _eval_poly(e.den, values) == 0:
        raise PoleError(
            f"pole: denominator {format_polynomial(e.chart, e.den)} vanishes at the point",
            denominator=format_polynomial(e.chart, e.den),
        )
    num = polynomial_jet(e.chart, e.num, values, order)
    if e.den.is_ground:
        return num / int(e.den.LC)
    return num / polynomial_jet(e.chart, e.den, values, order)
