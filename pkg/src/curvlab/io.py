"""Line-oriented file formats for metrics and one-form families.

Metric file::

    # comment
    dim 4
    coords x1 x2 x3 x4        (optional; default x1..xn)
    signature riemannian      (optional)
    g 2 2 : x1

Forms file::

    form A 1 : 2*x3^2/x1
    form beta 1 : 1

Indices are 1-based.  Unlisted entries are zero; the metric is completed
symmetrically.
"""

from __future__ import annotations

import re

from .errors import CurvlabError, ExpressionSyntaxError, FormatError, PatternError, UnknownIdentifierError
from .expr import Chart, format_expression, parse_expression
from .geometry import MetricSpec
from .symmetry.forms import FormFamily, family_for_pattern

_ENTRY = re.compile(r"^(g|form)\s+(.*?)\s*:\s*(.*)$")


def _lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def _index(token: str, n: int, line: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise FormatError(f"index {token!r} is not an integer", line) from None
    if not 1 <= value <= n:
        raise FormatError(f"index {value} out of range 1..{n}", line)
    return value - 1


def _expr(text: str, chart: Chart, line: int):
    if not text:
        raise FormatError("missing expression after ':'", line)
    try:
        return parse_expression(text, chart)
    except (ExpressionSyntaxError, UnknownIdentifierError) as exc:
        raise FormatError(str(exc), line) from exc
    except CurvlabError as exc:
        raise FormatError(str(exc), line) from exc


def parse_metric_spec(text: str) -> MetricSpec:
    dim = None
    coords = None
    signature = None
    entries: dict[tuple[int, int], tuple] = {}
    pending = []
    for number, line in _lines(text):
        head = line.split(None, 1)[0]
        if head == "dim":
            if dim is not None:
                raise FormatError("dim given twice", number)
            parts = line.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise FormatError("expected 'dim <n>'", number)
            dim = int(parts[1])
            if dim < 2:
                raise FormatError(f"dimension must be at least 2, got {dim}", number)
        elif head == "coords":
            if coords is not None:
                raise FormatError("coords given twice", number)
            coords = (tuple(line.split()[1:]), number)
        elif head == "signature":
            parts = line.split()
            if len(parts) != 2 or parts[1] not in ("riemannian", "semi"):
                raise FormatError("expected 'signature riemannian' or 'signature semi'", number)
            signature = parts[1]
        elif head == "g":
            pending.append((number, line))
        else:
            raise FormatError(f"unrecognized directive {head!r}", number)
    if dim is None:
        raise FormatError("missing 'dim' line")
    if coords is None:
        chart = Chart.standard(dim)
    else:
        names, number = coords
        if len(names) != dim:
            raise FormatError(f"coords lists {len(names)} names for dim {dim}", number)
        try:
            chart = Chart(names)
        except CurvlabError as exc:
            raise FormatError(str(exc), number) from exc
    for number, line in pending:
        match = _ENTRY.match(line)
        if not match:
            raise FormatError("expected 'g <i> <j> : <expr>'", number)
        idx = match.group(2).split()
        if len(idx) != 2:
            raise FormatError("a metric entry needs two indices", number)
        i, j = (_index(t, dim, number) for t in idx)
        value = _expr(match.group(3), chart, number)
        if (i, j) in entries:
            raise FormatError(f"duplicate entry g {i + 1} {j + 1}", number)
        mirror = entries.get((j, i))
        if mirror is not None and mirror[0] != value:
            raise FormatError(f"g {i + 1} {j + 1} conflicts with g {j + 1} {i + 1} (line {mirror[1]})", number)
        entries[(i, j)] = (value, number)
    rows = [[chart.zero()] * dim for _ in range(dim)]
    for (i, j), (value, _) in entries.items():
        rows[i][j] = value
        rows[j][i] = value
    return MetricSpec.from_matrix(chart, rows, signature)


def parse_forms_file(text: str, pattern: str = "reduced-9", chart: Chart | None = None) -> FormFamily:
    family = family_for_pattern(pattern)
    chart = chart or Chart.standard(4)
    n = chart.dim
    values: dict[str, list] = {}
    seen = set()
    for number, line in _lines(text):
        match = _ENTRY.match(line)
        if not match or match.group(1) != "form":
            raise FormatError("expected 'form <NAME> <i> : <expr>'", number)
        parts = match.group(2).split()
        if len(parts) != 2:
            raise FormatError("a form entry needs a name and one index", number)
        name, token = parts
        if name not in family.NAMES:
            raise FormatError(f"unknown form name {name!r} for pattern {pattern}", number)
        i = _index(token, n, number)
        if (name, i) in seen:
            raise FormatError(f"duplicate entry for {name} {i + 1}", number)
        seen.add((name, i))
        values.setdefault(name, [chart.zero()] * n)[i] = _expr(match.group(3), chart, number)
    try:
        return family(chart, values)
    except PatternError as exc:  # pragma: no cover - names are checked above
        raise FormatError(str(exc)) from exc


def emit_metric(m: MetricSpec) -> str:
    chart = m.chart
    lines = [f"dim {m.dim}", "coords " + " ".join(chart.coordinates)]
    if m.signature:
        lines.append(f"signature {m.signature}")
    for i in range(m.dim):
        for j in range(i, m.dim):
            v = m[i, j]
            if not v.is_zero():
                lines.append(f"g {i + 1} {j + 1} : {format_expression(v)}")
    return "\n".join(lines) + "\n"


def emit_forms(family: FormFamily) -> str:
    lines = [f"# pattern {family.pattern}"]
    for name, form in family.items():
        for i, v in enumerate(form.components):
            if not v.is_zero():
                lines.append(f"form {name} {i + 1} : {format_expression(v)}")
    return "\n".join(lines) + "\n"


def read_text(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()
