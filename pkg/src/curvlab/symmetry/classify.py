"""Run every taxonomy pattern through the solver and collect verdicts."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..expr import Expression
from ..geometry import MetricSpec
from .identities import is_conformally_flat, is_constant_curvature, is_einstein, is_locally_symmetric
from .patterns import NOT_APPLICABLE, PATTERNS, TAXONOMY
from .solver import generic_nonzero_witness, solve_one_forms


@dataclass
class ClassVerdict:
    id: str
    label: str
    verdict: str                      # holds | fails | not-applicable
    nullspace_dimension: int | None = None
    rank: int | None = None
    nonzero_witness: bool | None = None   # generic solution with every free form nonzero
    certificate_rows: list | None = None
    note: str = ""

    @property
    def key(self) -> str:
        return f"({self.id}) {self.label}"


@dataclass
class ClassificationReport:
    classes: dict = field(default_factory=dict)   # id -> ClassVerdict
    constant_curvature: object = None             # Fraction or None
    einstein: Expression | None = None
    conformally_flat: bool | None = None
    locally_symmetric: bool = False

    @property
    def flags(self) -> dict:
        return {
            "constant-curvature": self.constant_curvature is not None,
            "Einstein": self.einstein is not None,
            "conformally-flat": self.conformally_flat,
            "locally-symmetric": self.locally_symmetric,
        }

    def verdict(self, class_id: str) -> str:
        return self.classes[class_id].verdict


def _verdict(m: MetricSpec, pid: str, seed: int) -> ClassVerdict:
    pattern = PATTERNS[pid]
    sol = solve_one_forms(m, pattern)
    if not sol.solvable:
        return ClassVerdict(pid, pattern.label, "fails", rank=sol.rank,
                            certificate_rows=sol.certificate.rows)
    if sol.residual_status != "proven-zero":
        # the solver's own re-verification disagreed with the elimination
        return ClassVerdict(pid, pattern.label, "fails", sol.nullspace_dimension, sol.rank,
                            note="re-verification produced a nonzero residual")
    nz = generic_nonzero_witness(sol, m, seed=seed) if pattern.parameters else None
    return ClassVerdict(pid, pattern.label, "holds", sol.nullspace_dimension, sol.rank, nz)


def classify(m: MetricSpec, seed: int = 0) -> ClassificationReport:
    report = ClassificationReport()
    for pid in TAXONOMY:
        if pid in NOT_APPLICABLE:
            report.classes[pid] = ClassVerdict(pid, "unlisted", "not-applicable", note=NOT_APPLICABLE[pid])
            continue
        report.classes[pid] = _verdict(m, pid, seed)
    for pid in ("full-15", "reduced-9"):
        report.classes[pid] = _verdict(m, pid, seed)
    report.constant_curvature = is_constant_curvature(m)
    report.einstein = is_einstein(m)
    report.conformally_flat = is_conformally_flat(m)
    report.locally_symmetric = is_locally_symmetric(m)
    return report
