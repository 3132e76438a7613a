"""Families of one-forms entering the extended weakly symmetric equation."""

from __future__ import annotations

from typing import Iterator, Mapping

from ..errors import ChartError, PatternError
from ..expr import Chart, Expression
from ..tensor import TensorField, as_one_form

FULL_NAMES = (
    "A", "B", "Bbar", "D", "Dbar",
    "alpha", "beta", "betabar", "gamma", "gammabar",
    "theta", "phi", "phibar", "psi", "psibar",
)
REDUCED_NAMES = ("A", "B", "D", "alpha", "beta", "gamma", "theta", "phi", "psi")

# reduced name carried by each slot of the full equation
REDUCED_SOURCE = {
    "A": "A", "B": "B", "Bbar": "B", "D": "D", "Dbar": "D",
    "alpha": "alpha", "beta": "beta", "betabar": "beta", "gamma": "gamma", "gammabar": "gamma",
    "theta": "theta", "phi": "phi", "phibar": "phi", "psi": "psi", "psibar": "psi",
}

# (curvature-like tensor, position of the form's argument) for every slot.
# Position 5 means the form eats X5 and the tensor keeps (X1..X4); position p
# in 1..4 means the form eats X_p and X5 takes its place inside the tensor.
EWS_TERMS = {
    "A": ("R", 5), "B": ("R", 1), "Bbar": ("R", 2), "D": ("R", 3), "Dbar": ("R", 4),
    "alpha": ("H", 5), "beta": ("H", 1), "betabar": ("H", 2), "gamma": ("H", 3), "gammabar": ("H", 4),
    "theta": ("G", 5), "phi": ("G", 1), "phibar": ("G", 2), "psi": ("G", 3), "psibar": ("G", 4),
}


class FormFamily:
    """A named tuple of one-forms on one chart."""

    NAMES: tuple[str, ...] = ()
    pattern = ""

    def __init__(self, chart: Chart, forms: Mapping[str, object] | None = None):
        forms = dict(forms or {})
        unknown = set(forms) - set(self.NAMES)
        if unknown:
            raise PatternError(f"unknown form names for {self.pattern}: {sorted(unknown)}")
        self.chart = chart
        self._forms = {}
        for name in self.NAMES:
            value = forms.get(name)
            if value is None:
                self._forms[name] = TensorField.zero(chart, (0, 1), name=name)
            else:
                form = as_one_form(value, chart, name=name)
                if form.chart != chart:
                    raise ChartError(f"form {name} lives on a different chart")
                self._forms[name] = form

    @classmethod
    def zeros(cls, chart: Chart):
        return cls(chart)

    def __getitem__(self, name: str) -> TensorField:
        return self._forms[name]

    def items(self) -> Iterator[tuple[str, TensorField]]:
        return iter(self._forms.items())

    def component(self, name: str, index: int) -> Expression:
        return self._forms[name][index]

    def replace(self, **changes):
        forms = dict(self._forms)
        forms.update(changes)
        return type(self)(self.chart, forms)

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self._forms.values())

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.chart == other.chart and all(self[n] == other[n] for n in self.NAMES)

    __hash__ = None

    def __repr__(self):
        nz = [n for n, f in self._forms.items() if not f.is_zero()]
        return f"{type(self).__name__}(nonzero={nz})"


class FormFamily15(FormFamily):
    """``(A, B, Bbar, D, Dbar, alpha, beta, betabar, gamma, gammabar, theta, phi, phibar, psi, psibar)``."""

    NAMES = FULL_NAMES
    pattern = "full-15"

    def expand(self) -> "FormFamily15":
        return self


class FormFamily9(FormFamily):
    """The reduced family where each barred form equals its unbarred partner."""

    NAMES = REDUCED_NAMES
    pattern = "reduced-9"

    def expand(self) -> FormFamily15:
        return FormFamily15(self.chart, {n: self[REDUCED_SOURCE[n]] for n in FULL_NAMES})


def family_for_pattern(pattern: str):
    if pattern == "full-15":
        return FormFamily15
    if pattern == "reduced-9":
        return FormFamily9
    raise PatternError(f"no form family for pattern {pattern!r}")
