"""Exact identity checks used by the ``check-identities`` command and the tests."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import PoleError, SingularMetricError
from .expr import evaluate
from .geometry import (MetricSpec, contract, covariant_derivative, determinant, nabla_riemann, oracle_check, ricci,
                       riemann, weyl)
from .symmetry.identities import prop_identity_residual
from .tensor import TensorField


@dataclass
class IdentityCheck:
    name: str
    holds: bool | None          # None: not applicable
    witness: tuple | None = None  # first failing index (0-based)
    informational: bool = False   # reported, not a breach if it fails


def _first(t: TensorField):
    hit = t.first_nonzero()
    return None if hit is None else hit[0]


def riemann_symmetries(m: MetricSpec) -> IdentityCheck:
    R = riemann(m).components
    n = m.dim
    for h, i, j, k in product(range(n), repeat=4):
        v = R[h, i, j, k]
        if v != -R[i, h, j, k] or v != -R[h, i, k, j] or v != R[j, k, h, i]:
            return IdentityCheck("riemann symmetries", False, (h, i, j, k))
    return IdentityCheck("riemann symmetries", True)


def first_bianchi(m: MetricSpec) -> IdentityCheck:
    R = riemann(m).components
    n = m.dim
    for h, i, j, k in product(range(n), repeat=4):
        if not (R[h, i, j, k] + R[h, j, k, i] + R[h, k, i, j]).is_zero():
            return IdentityCheck("first Bianchi", False, (h, i, j, k))
    return IdentityCheck("first Bianchi", True)


def second_bianchi(m: MetricSpec) -> IdentityCheck:
    D = nabla_riemann(m).components
    n = m.dim
    for h, i, j, k, l in product(range(n), repeat=5):
        if not (D[h, i, j, k, l] + D[h, i, k, l, j] + D[h, i, l, j, k]).is_zero():
            return IdentityCheck("second Bianchi", False, (h, i, j, k, l))
    return IdentityCheck("second Bianchi", True)


def metric_compatibility(m: MetricSpec) -> IdentityCheck:
    w = _first(covariant_derivative(m.tensor(), m))
    return IdentityCheck("nabla g = 0", w is None, w)


def ricci_is_contraction(m: MetricSpec) -> IdentityCheck:
    w = _first(contract(riemann(m), (0, 3), m) - ricci(m))
    return IdentityCheck("ricci = trace of riemann", w is None, w)


def weyl_traceless(m: MetricSpec) -> IdentityCheck:
    if m.dim < 4:
        return IdentityCheck("weyl traceless", None)
    C = weyl(m)
    for pair in ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)):
        w = _first(contract(C, pair, m))
        if w is not None:
            return IdentityCheck("weyl traceless", False, pair + w)
    return IdentityCheck("weyl traceless", True)


def proposition_suite(m: MetricSpec, seed: int = 0) -> list[IdentityCheck]:
    """The pointwise proposition for K = R with a few sample B; vanishing is not presumed."""
    rng = random.Random(seed)
    n = m.dim
    K = riemann(m)
    out = []
    for _ in range(3):
        B = [rng.randint(-3, 3) for _ in range(n)]
        if not any(B):
            B[0] = 1
        A = [rng.randint(-3, 3) for _ in range(n)]
        w = _first(prop_identity_residual(K, A, B))
        out.append(IdentityCheck(f"proposition residual, K=R, B={B}", w is None, w, informational=True))
    return out


def all_identities(m: MetricSpec, seed: int = 0) -> list[IdentityCheck]:
    return [riemann_symmetries(m), first_bianchi(m), second_bianchi(m), metric_compatibility(m),
            ricci_is_contraction(m), weyl_traceless(m), *proposition_suite(m, seed)]


def random_points(m: MetricSpec, count: int, seed: int, tries: int = 1000):
    """Random rational points at which the metric has no pole and is nondegenerate."""
    rng = random.Random(seed)
    det = determinant(m.components)
    points = []
    for _ in range(tries):
        if len(points) == count:
            break
        p = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(m.dim))
        try:
            if evaluate(det, p) == 0:
                continue
            for row in m.components:
                for v in row:
                    evaluate(v, p)
        except PoleError:
            continue
        points.append(p)
    return points


def oracle_points(m: MetricSpec, count: int = 10, seed: int = 0, depth: int = 3):
    """Oracle reports at random points where both routes are defined."""
    reports = []
    for p in random_points(m, count * 20, seed):
        if len(reports) == count:
            break
        try:
            reports.append(oracle_check(m, p, depth))
        except (PoleError, SingularMetricError):
            continue
    return reports
