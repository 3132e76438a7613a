"""Deterministic human and JSON rendering of command results.

JSON schema (top-level keys, always present, sorted on output)::

    tool-version   package version string
    chart          list of coordinate names
    command        the subcommand name
    tensors        {name: {"components": {"R[1,2,1,2]": "1/(4*x1)", ...},
                           "identically_zero": bool}}
    verdicts       {label: value}  (strings, booleans, numbers or null)
    certificates   {label: {...}}

Component keys use 1-based indices.  Expression strings are canonical and
re-parse to the identical Expression.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .expr import Chart, Expression, format_expression
from .tensor import TensorField


@dataclass
class Report:
    command: str
    chart: Chart | None = None
    tensors: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)
    certificates: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def add_tensor(self, name: str, tensor: TensorField | Expression):
        self.tensors[name] = tensor_entry(name, tensor)

    def add_verdict(self, label: str, value):
        self.verdicts[label] = plain(value)


def index_key(name: str, idx) -> str:
    return f"{name}[{','.join(str(i + 1) for i in idx)}]"


def tensor_entry(name: str, tensor) -> dict:
    if isinstance(tensor, Expression):
        comps = {} if tensor.is_zero() else {name: format_expression(tensor)}
        return {"components": comps, "identically_zero": tensor.is_zero()}
    comps = {index_key(name, idx): format_expression(v) for idx, v in tensor.nonzero_items()}
    return {"components": comps, "identically_zero": not comps}


def plain(value):
    """Convert verdict payloads to JSON-ready values."""
    if isinstance(value, Expression):
        return format_expression(value)
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else value.numerator
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    return value


def as_dict(report: Report) -> dict:
    return {
        "tool-version": __version__,
        "chart": list(report.chart.coordinates) if report.chart else [],
        "command": report.command,
        "tensors": report.tensors,
        "verdicts": report.verdicts,
        "certificates": plain(report.certificates),
    }


def _human(report: Report) -> str:
    lines = [f"curvlab {__version__}: {report.command}"]
    if report.chart:
        lines.append("chart: " + " ".join(report.chart.coordinates))
    for name, entry in report.tensors.items():
        if entry["identically_zero"]:
            lines.append(f"{name}: identically zero")
            continue
        lines.append(f"{name}:")
        lines.extend(f"  {k} = {v}" for k, v in entry["components"].items())
    if report.verdicts:
        lines.append("verdicts:")
        for k, v in report.verdicts.items():
            lines.append(f"  {k}: {_human_value(v)}")
    for label, cert in plain(report.certificates).items():
        lines.append(f"certificate {label}:")
        for k, v in cert.items():
            lines.append(f"  {k}: {_human_value(v)}")
    lines.extend(report.notes)
    return "\n".join(lines) + "\n"


def _human_value(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "n/a"
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def emit_report(report: Report, format: str = "human") -> str:
    if format == "json":
        return json.dumps(as_dict(report), indent=2, sort_keys=True) + "\n"
    if format == "human":
        return _human(report)
    raise ValueError(f"unknown report format {format!r}")
