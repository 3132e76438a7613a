"""Command-line entry point.

Exit codes: 0 success or verified, 1 computed and false, 2 usage or input
error, 3 internal invariant breach.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import __version__
from .checks import all_identities, oracle_points
from .errors import CurvlabError, PoleError
from .expr import format_expression
from .fixture import golden_comparisons, example_forms, example_metric
from .geometry import (christoffel, gaussian_tensor, nabla_ricci, nabla_riemann, ricci, ricci_wedge,
                       riemann, scalar_curvature, weyl)
from .io import parse_forms_file, parse_metric_spec, read_text
from .report import Report, emit_report, index_key
from .symmetry.bianchi import (bianchi_consequence_residual, bianchi_forms, reconstruct_curvature,
                               ricci_level_residual, scalar_relation_residuals)
from .symmetry.classify import classify
from .symmetry.ews import ews_residual
from .symmetry.solver import solve_at_point, solve_one_forms

OK, FALSE, USAGE, BREACH = 0, 1, 2, 3


class InvariantBreach(Exception):
    pass


TENSORS = {
    "christoffel": ("Gamma", lambda m: christoffel(m).as_tensor()),
    "riemann": ("R", riemann),
    "ricci": ("S", ricci),
    "scalar": ("r", scalar_curvature),
    "weyl": ("C", weyl),
    "G": ("G", gaussian_tensor),
    "H": ("H", ricci_wedge),
    "grad-riemann": ("nablaR", nabla_riemann),
    "grad-ricci": ("nablaS", nabla_ricci),
}


def _load_metric(path):
    return parse_metric_spec(read_text(path))


def _parse_point(text: str, chart):
    """``x1=1,x2=1/2,...`` or ``1,1/2,...``."""
    parts = [p.strip() for p in text.replace(" ", ",").split(",") if p.strip()]
    if parts and all("=" in p for p in parts):
        values = {}
        for p in parts:
            name, value = p.split("=", 1)
            chart.index(name.strip())
            values[name.strip()] = Fraction(value.strip())
        missing = [c for c in chart.coordinates if c not in values]
        if missing:
            raise CurvlabError(f"point is missing coordinates {missing}")
        return tuple(values[c] for c in chart.coordinates)
    if len(parts) != chart.dim:
        raise CurvlabError(f"point needs {chart.dim} values")
    return tuple(Fraction(p) for p in parts)


# -- commands ----------------------------------------------------------------


def cmd_compute(args) -> tuple[Report, int]:
    m = _load_metric(args.spec)
    name, fn = TENSORS[args.tensor]
    report = Report("compute", m.chart)
    report.add_tensor(name, fn(m))
    return report, OK


def cmd_verify(args) -> tuple[Report, int]:
    m = _load_metric(args.spec)
    family = parse_forms_file(read_text(args.forms), args.pattern, m.chart)
    res = ews_residual(m, family)
    report = Report("verify", m.chart)
    nonzero = res.nonzero_items()
    report.add_verdict("pattern", args.pattern)
    report.add_verdict("residual identically zero", not nonzero)
    report.add_verdict("nonzero residual components", len(nonzero))
    if nonzero:
        idx, value = nonzero[0]
        report.add_verdict("witness", {index_key("residual", idx): format_expression(value)})
        return report, FALSE
    return report, OK


def _forms_verdicts(report: Report, params):
    for p, form in params.items():
        report.add_tensor(p, form)


def cmd_solve(args) -> tuple[Report, int]:
    m = _load_metric(args.spec)
    report = Report("solve", m.chart)
    if args.at_point:
        point = _parse_point(args.at_point, m.chart)
        sol = solve_at_point(m, args.pattern, point)
        report.add_verdict("pattern", sol.pattern)
        report.add_verdict("mode", "pointwise")
        report.add_verdict("point", list(point))
        report.add_verdict("consistent", sol.consistent)
        report.add_verdict("rank", sol.rank)
        report.add_verdict("nullspace dimension", sol.nullspace_dimension)
        if sol.consistent:
            report.add_verdict("particular", {p: [str(v) for v in vals] for p, vals in sol.particular.items()})
            return report, OK
        report.certificates["inconsistency"] = {
            "rows": [index_key("residual", r) for r in sol.certificate_rows]}
        return report, FALSE
    sol = solve_one_forms(m, args.pattern)
    report.add_verdict("pattern", sol.pattern)
    report.add_verdict("solvable", sol.solvable)
    report.add_verdict("residual_status", sol.residual_status)
    if not sol.solvable:
        cert = sol.certificate
        if not cert.verify():
            raise InvariantBreach("inconsistency certificate does not verify")
        point = tuple(Fraction(1) for _ in range(m.dim))
        entry = {
            "rows": [index_key("residual", r) for r in cert.rows],
            "multipliers": [format_expression(y) for y in cert.multipliers],
            "combination": format_expression(cert.combination),
            "verified": True,
        }
        try:
            lhs, rhs = cert.evaluate(point)
            entry["point"] = [str(v) for v in point]
            entry["combined coefficients at point"] = [str(v) for v in lhs]
            entry["combined right side at point"] = str(rhs)
            entry["contradiction at point"] = all(v == 0 for v in lhs) and rhs != 0
        except PoleError:
            entry["contradiction at point"] = None
        report.certificates["inconsistency"] = entry
        return report, FALSE
    report.add_verdict("rank", sol.rank)
    report.add_verdict("nullspace_dimension", sol.nullspace_dimension)
    _forms_verdicts(report, sol.parameters)
    if sol.residual_status != "proven-zero":
        raise InvariantBreach("elimination reported a solution whose residual is nonzero")
    return report, OK


def cmd_classify(args) -> tuple[Report, int]:
    m = _load_metric(args.spec)
    rep = classify(m, seed=args.seed)
    report = Report("classify", m.chart)
    for v in rep.classes.values():
        report.add_verdict(v.key, v.verdict)
        if v.verdict == "holds" and v.nonzero_witness is not None:
            report.add_verdict(f"{v.key} / all free forms nonzero generically", v.nonzero_witness)
    for k, v in rep.flags.items():
        report.add_verdict(k, v)
    if rep.constant_curvature is not None:
        report.add_verdict("sectional curvature", rep.constant_curvature)
    if rep.einstein is not None:
        report.add_verdict("Einstein constant r/n", rep.einstein)
    if rep.locally_symmetric and rep.classes["i"].verdict != "holds":
        raise InvariantBreach("locally symmetric but class (i) does not hold")
    if rep.flags["constant-curvature"] and m.dim >= 4 and not rep.conformally_flat:
        raise InvariantBreach("constant curvature but not conformally flat")
    return report, OK


def cmd_check_identities(args) -> tuple[Report, int]:
    m = _load_metric(args.spec)
    report = Report("check-identities", m.chart)
    code = OK
    for check in all_identities(m, seed=args.seed):
        report.add_verdict(check.name, check.holds)
        if check.holds is False:
            report.add_verdict(f"{check.name} / witness", "(" + ",".join(str(i + 1) for i in check.witness) + ")")
            if not check.informational:
                code = BREACH
    return report, code


def cmd_oracle(args) -> tuple[Report, int]:
    m = _load_metric(args.spec)
    reports = oracle_points(m, args.points, args.seed)
    report = Report("oracle", m.chart)
    report.add_verdict("points requested", args.points)
    report.add_verdict("points checked", len(reports))
    report.add_verdict("components compared", sum(r.checked for r in reports))
    bad = [r for r in reports if not r.ok]
    report.add_verdict("agree", not bad)
    for r in bad[:3]:
        name, idx, got, expected = r.mismatches[0]
        report.certificates[f"mismatch at {[str(v) for v in r.point]}"] = {
            "component": index_key(name, idx), "symbolic": str(got), "jet": str(expected)}
    if bad:
        return report, BREACH
    if len(reports) < args.points:
        report.notes.append("fewer non-singular points found than requested")
        return report, FALSE
    return report, OK


def cmd_worked_example(args) -> tuple[Report, int]:
    m = example_metric()
    f = example_forms()
    report = Report("paper-example", m.chart)
    comparisons = golden_comparisons(m)
    for c in comparisons:
        if c.expected is None:
            report.add_verdict(f"{c.label} (not in the printed tables)", format_expression(c.computed))
            continue
        report.add_verdict(c.label, "match" if c.ok else
                           f"MISMATCH printed {format_expression(c.expected)} computed {format_expression(c.computed)}")
    res = ews_residual(m, f)
    nonzero = res.nonzero_items()
    report.add_verdict("reduced equation with printed forms: residual identically zero", not nonzero)
    report.add_verdict("reduced equation with printed forms: nonzero components", len(nonzero))
    if nonzero:
        idx, value = nonzero[0]
        report.add_verdict("reduced equation witness", {index_key("residual", idx): format_expression(value)})
    report.add_verdict("contracted equation residual zero", ricci_level_residual(m, f).is_zero())
    bf = bianchi_forms(f, m)
    report.add_verdict("Bianchi consequence residual zero", bianchi_consequence_residual(m, bf).is_zero())
    sr = scalar_relation_residuals(m, bf)
    report.add_verdict("cnR residual zero", sr.cnR.is_zero())
    report.add_verdict("scalar residual zero", sr.scalar.is_zero())
    if bf.is_null:
        report.add_verdict("curvature reconstruction", "J is null")
    else:
        report.add_verdict("curvature reconstruction matches R", reconstruct_curvature(m, bf).matches_R)
    ok = all(c.ok for c in comparisons) and not nonzero
    return report, OK if ok else FALSE


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("human", "json"), default=argparse.SUPPRESS,
                     help="report format (default human)")
    parser = argparse.ArgumentParser(prog="curvlab", parents=[fmt],
                                     description="Exact curvature and extended weakly symmetric checks.")
    parser.add_argument("--version", action="version", version=f"curvlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[fmt], help="compute a curvature tensor")
    p.add_argument("spec")
    p.add_argument("--tensor", required=True, choices=sorted(TENSORS))
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", parents=[fmt], help="check the defining equation for given forms")
    p.add_argument("spec")
    p.add_argument("--forms", required=True)
    p.add_argument("--pattern", choices=("full-15", "reduced-9"), default="reduced-9")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", parents=[fmt], help="solve for the one-forms of a pattern")
    p.add_argument("spec")
    p.add_argument("--pattern", default="reduced-9",
                   help="full-15, reduced-9, a taxonomy id (i..xvii) or a class name such as recurrent")
    p.add_argument("--at-point", help="solve pointwise, e.g. x1=1,x2=1,x3=2,x4=1/2")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("classify", parents=[fmt], help="run every taxonomy pattern")
    p.add_argument("spec")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("check-identities", parents=[fmt], help="Bianchi, metric compatibility, Weyl traces")
    p.add_argument("spec")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_check_identities)

    p = sub.add_parser("oracle", parents=[fmt], help="compare against the jet oracle at random points")
    p.add_argument("spec")
    p.add_argument("--points", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("paper-example", parents=[fmt], help="reproduce the worked example")
    p.set_defaults(func=cmd_worked_example)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    fmt = getattr(args, "format", "human")
    try:
        report, code = args.func(args)
    except InvariantBreach as exc:
        stderr.write(f"curvlab: invariant breach: {exc}\n")
        return BREACH
    except (CurvlabError, OSError, ValueError) as exc:
        stderr.write(f"curvlab: error: {exc}\n")
        return USAGE
    except Exception as exc:  # noqa: BLE001 - anything else is our bug
        stderr.write(f"curvlab: internal error: {type(exc).__name__}: {exc}\n")
        return BREACH
    stdout.write(emit_report(report, fmt))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
