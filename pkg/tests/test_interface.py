import io
import json

import pytest

from curvlab import __version__
from curvlab.cli import run
from curvlab.errors import FormatError, SingularMetricError
from curvlab.expr import parse_expression
from curvlab.fixture import forms_file_text, metric_file_text, example_forms, example_metric, perturbed_forms
from curvlab.geometry import riemann
from curvlab.io import emit_forms, emit_metric, parse_forms_file, parse_metric_spec
from curvlab.report import Report, emit_report
from curvlab.symmetry.forms import FormFamily9, FormFamily15

EXAMPLE_SPEC = """\
# the worked example
dim 4
g 1 1 : 1
g 2 2 : x1
g 3 3 : x4
g 4 4 : x3
"""


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write


# -- metric files ---------------------------------------------------------------


def test_parse_example_spec():
    m = parse_metric_spec(EXAMPLE_SPEC)
    assert m.components == example_metric().components and m.signature is None


def test_metric_round_trip():
    m = example_metric()
    assert parse_metric_spec(emit_metric(m)) == m
    text = "dim 2\ncoords u v\nsignature semi\ng 1 2 : u\ng 1 1 : 1\ng 2 2 : -v^2\n"
    m = parse_metric_spec(text)
    assert m.chart.coordinates == ("u", "v") and m.signature == "semi"
    assert parse_metric_spec(emit_metric(m)) == m


@pytest.mark.parametrize("text,line", [
    ("g 1 1 : 1\n", None),                                   # missing dim
    ("dim 2\ng 1 2 : x1\ng 2 1 : x2\n", 3),                  # symmetric conflict
    ("dim 2\ng 1 1 : 1\ng 1 1 : 2\n", 3),                     # duplicate
    ("dim 2\ng 1 3 : 1\n", 2),                                # index out of range
    ("dim 2\ng 1 1 : 1 +\n", 2),                              # bad expression
    ("dim 2\nwat 1\n", 2),                                    # unknown directive
    ("dim 1\n", 1),                                           # bad dimension
    ("dim 2\ncoords a\n", 2),                                 # wrong coordinate count
])
def test_metric_format_errors(text, line):
    with pytest.raises(FormatError) as info:
        parse_metric_spec(text)
    assert info.value.line == line


def test_symmetric_duplicate_that_agrees_is_fine():
    m = parse_metric_spec("dim 2\ng 1 1 : 1\ng 1 2 : x1\ng 2 1 : x1\ng 2 2 : 1 + x1^2\n")
    assert m[0, 1] == m[1, 0]


def test_singular_spec_rejected():
    with pytest.raises(SingularMetricError):
        parse_metric_spec("dim 2\ng 1 1 : x1\n")


# -- forms files --------------------------------------------------------------------


def test_forms_file_round_trip():
    f = example_forms()
    text = forms_file_text()
    assert text.startswith("# pattern reduced-9")
    assert parse_forms_file(text) == f
    g = FormFamily15(f.chart, {"Bbar": [1, 0, 0, 0], "psibar": [0, 0, 1, 0]})
    assert parse_forms_file(emit_forms(g), "full-15") == g


def test_empty_forms_file_is_zero():
    assert parse_forms_file("").is_zero()
    assert parse_forms_file("# nothing\n") == FormFamily9.zeros(example_metric().chart)


@pytest.mark.parametrize("text", [
    "form Q 1 : 1\n",
    "form A 5 : 1\n",
    "form A 1 : 1\nform A 1 : 2\n",
    "form Bbar 1 : 1\n",           # barred names belong to the full family
    "form A : 1\n",
])
def test_forms_file_errors(text):
    with pytest.raises(FormatError):
        parse_forms_file(text)


# -- reports ----------------------------------------------------------------------


def test_json_report_for_riemann():
    m = example_metric()
    report = Report("compute", m.chart)
    report.add_tensor("R", riemann(m))
    data = json.loads(emit_report(report, "json"))
    assert set(data) == {"tool-version", "chart", "command", "tensors", "verdicts", "certificates"}
    assert data["tool-version"] == __version__
    assert data["tensors"]["R"]["components"]["R[1,2,1,2]"] == "1/(4*x1)"
    for value in data["tensors"]["R"]["components"].values():
        assert str(parse_expression(value, m.chart)) == value


def test_report_is_deterministic():
    m = example_metric()
    texts = set()
    for _ in range(2):
        report = Report("compute", m.chart)
        report.add_tensor("R", riemann(m))
        texts.add(emit_report(report, "json"))
    assert len(texts) == 1


# -- command line ----------------------------------------------------------------------


def test_cli_compute_json(files):
    spec = files("m.spec", EXAMPLE_SPEC)
    code, out, _ = cli("compute", spec, "--tensor", "riemann", "--format", "json")
    assert code == 0
    assert '"R[1,2,1,2]": "1/(4*x1)"' in out
    code, out, _ = cli("--format", "json", "compute", spec, "--tensor", "scalar")
    assert code == 0 and json.loads(out)["tensors"]["r"]["identically_zero"] is False


def test_cli_compute_zero_tensor(files):
    spec = files("flat.spec", "dim 3\ng 1 1 : 1\ng 2 2 : 1\ng 3 3 : 1\n")
    code, out, _ = cli("compute", spec, "--tensor", "riemann", "--format", "json")
    entry = json.loads(out)["tensors"]["R"]
    assert code == 0 and entry == {"components": {}, "identically_zero": True}


def test_cli_singular_metric_is_usage_error(files):
    spec = files("bad.spec", "dim 2\ng 1 1 : x1\ng 1 2 : x1\ng 2 2 : x1\n")
    code, _, err = cli("compute", spec, "--tensor", "riemann", "--format", "json")
    assert code == 2 and "error" in err


def test_cli_usage_errors(files):
    assert cli()[0] == 2
    assert cli("frobnicate")[0] == 2
    assert cli("compute", "/nonexistent.spec", "--tensor", "riemann")[0] == 2
    spec = files("m.spec", EXAMPLE_SPEC)
    assert cli("compute", spec, "--tensor", "nope")[0] == 2
    assert cli("solve", spec, "--pattern", "nonsense")[0] == 2


def test_cli_verify(files, example_solution_text):
    spec = files("m.spec", EXAMPLE_SPEC)
    good = files("good.forms", example_solution_text)
    code, out, _ = cli("verify", spec, "--forms", good)
    assert code == 0, out
    bad = files("bad.forms", emit_forms(perturbed_forms("A", 0)))
    code, out, _ = cli("verify", spec, "--forms", bad, "--format", "json")
    data = json.loads(out)
    assert code == 1
    assert data["verdicts"]["residual identically zero"] is False
    assert data["verdicts"]["witness"]


@pytest.fixture(scope="module")
def example_solution_text():
    from curvlab.symmetry.solver import solve_one_forms
    return emit_forms(solve_one_forms(example_metric(), "reduced-9").particular)


def test_cli_solve(files):
    spec = files("m.spec", EXAMPLE_SPEC)
    code, out, _ = cli("solve", spec, "--pattern", "reduced-9", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["verdicts"]["residual_status"] == "proven-zero"
    code, out, _ = cli("solve", spec, "--pattern", "recurrent", "--format", "json")
    data = json.loads(out)
    assert code == 1 and data["verdicts"]["residual_status"] == "no-solution"
    assert data["certificates"]
    code, out, _ = cli("solve", spec, "--pattern", "reduced-9", "--at-point", "x1=1,x2=1,x3=2,x4=1/2")
    assert code == 0 and "pointwise" in out
    assert cli("solve", spec, "--at-point", "x1=1")[0] == 2


def test_cli_classify_flat(files):
    spec = files("flat.spec", "dim 4\ng 1 1 : 1\ng 2 2 : 1\ng 3 3 : 1\ng 4 4 : 1\n")
    code, out, _ = cli("classify", spec, "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["verdicts"]["(i) symmetric"] == "holds"


def test_cli_check_identities_and_oracle(files):
    spec = files("m.spec", EXAMPLE_SPEC)
    assert cli("check-identities", spec)[0] == 0
    code, out, _ = cli("oracle", spec, "--points", "3", "--seed", "1", "--format", "json")
    assert code == 0


def test_cli_worked_example_reports_defects():
    code, out, _ = cli("paper-example", "--format", "json")
    data = json.loads(out)["verdicts"]
    assert code == 1
    assert data["R[1,2,1,2]"] == "match"
    assert data["nabla R[3,4,3,4,3]"].startswith("MISMATCH")


def test_fixture_texts_parse():
    assert parse_metric_spec(metric_file_text()) == example_metric()
