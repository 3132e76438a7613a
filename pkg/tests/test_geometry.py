from fractions import Fraction
from itertools import product

import pytest

from conftest import RANDOM_METRIC_SEEDS, flat, metric_for_seed, stereographic
from curvlab.checks import (first_bianchi, metric_compatibility, oracle_points, ricci_is_contraction,
                            riemann_symmetries, second_bianchi, weyl_traceless)
from curvlab.errors import PoleError, SingularMetricError, SymmetryError, ValenceError
from curvlab.expr import Chart, evaluate, parse_expression
from curvlab.geometry import (MetricSpec, apply_ricci, christoffel, contract, covariant_derivative,
                              gaussian_tensor, inverse_metric, kulkarni_nomizu, lower_vector, nabla_ricci,
                              nabla_riemann, oracle_check, raise_form, ricci, ricci_operator, ricci_wedge,
                              riemann, scalar_curvature, weyl)
from curvlab.tensor import TensorField


def E(text, chart):
    return parse_expression(text, chart)


def matmul_is_identity(m: MetricSpec):
    ginv = inverse_metric(m).components
    n = m.dim
    for i, j in product(range(n), repeat=2):
        total = sum((m[i, k] * ginv[k, j] for k in range(n)), m.chart.zero())
        if total != m.chart.constant(int(i == j)):
            return False
    return True


# -- worked example --------------------------------------------------------------


def test_inverse_of_example_metric(example):
    c = example.chart
    ginv = inverse_metric(example)
    assert [ginv[i, i] for i in range(4)] == [c.one(), E("1/x1", c), E("1/x4", c), E("1/x3", c)]
    assert matmul_is_identity(example)


def test_inverse_off_diagonal():
    c = Chart.standard(2)
    m = MetricSpec.from_matrix(c, [[1, E("x1", c)], [E("x1", c), E("1 + x1^2", c)]])
    assert matmul_is_identity(m)
    assert inverse_metric(m)[0, 0] == E("1 + x1^2", c)


def test_christoffel_example(example):
    gam = christoffel(example)
    assert gam[1, 0, 1] == E("1/(2*x1)", example.chart)
    assert gam[1, 1, 0] == gam[1, 0, 1]


def test_constant_metric_has_no_connection_or_curvature():
    m = flat(3)
    assert not christoffel(m).nonzero_items()
    assert riemann(m).is_zero()
    assert ricci(m).is_zero() and scalar_curvature(m).is_zero()


def test_riemann_example(example):
    c = example.chart
    R = riemann(example)
    assert R[0, 1, 0, 1] == E("1/(4*x1)", c)
    assert R[2, 3, 2, 3] == E("(x3 + x4)/(4*x3*x4)", c)
    nonzero = {tuple(sorted((tuple(sorted(i[:2])), tuple(sorted(i[2:]))))) for i, _ in R.nonzero_items()}
    assert nonzero == {((0, 1), (0, 1)), ((2, 3), (2, 3))}


def test_polar_chart_is_flat():
    c = Chart.standard(2)
    assert riemann(MetricSpec.diagonal(c, [1, E("x1^2", c)])).is_zero()


def test_ricci_and_scalar_example(example):
    c = example.chart
    S = ricci(example)
    assert S[0, 0] == E("-1/(4*x1^2)", c)
    assert S[2, 2] == E("-(x3 + x4)/(4*x3^2*x4)", c)
    assert scalar_curvature(example) == E("-1/(2*x1^2) - (x3 + x4)/(2*x3^2*x4^2)", c)
    L = ricci_operator(example)
    assert L[0, 0] == S[0, 0]


def test_kulkarni_nomizu_example(example):
    c = example.chart
    G = gaussian_tensor(example)
    H = ricci_wedge(example)
    assert G[0, 1, 0, 1] == E("-2*x1", c) and G[2, 3, 2, 3] == E("-2*x3*x4", c)
    assert H[0, 1, 0, 1] == E("1/(2*x1)", c) and H[2, 3, 2, 3] == E("(x3 + x4)/(2*x3*x4)", c)


def test_kulkarni_nomizu_is_symmetric_and_curvature_like():
    c = Chart.standard(3)
    q = TensorField(c, [[E("x1", c), 1, 0], [1, E("x2^2", c), E("x3", c)], [0, E("x3", c), 2]])
    p = TensorField(c, [[1, E("x2", c), 0], [E("x2", c), 0, 1], [0, 1, E("x1*x3", c)]])
    qp = kulkarni_nomizu(q, p)
    assert qp == kulkarni_nomizu(p, q)
    T = qp.components
    for h, i, j, k in product(range(3), repeat=4):
        assert T[h, i, j, k] == -T[i, h, j, k] == T[j, k, h, i]
        assert (T[h, i, j, k] + T[i, j, h, k] + T[j, h, i, k]).is_zero()


def test_kulkarni_nomizu_rejects_asymmetric():
    c = Chart.standard(2)
    with pytest.raises(SymmetryError):
        kulkarni_nomizu(TensorField(c, [[0, 1], [0, 0]]), TensorField(c, [[1, 0], [0, 1]]))


def test_covariant_derivatives_example(example):
    c = example.chart
    D = nabla_riemann(example)
    assert D[0, 1, 0, 1, 0] == E("-1/(2*x1^2)", c)
    DS = nabla_ricci(example)
    assert DS[0, 0, 0] == E("1/(2*x1^3)", c)
    assert DS[2, 2, 3] == E("(2*x3 + x4)/(4*x3^2*x4^2)", c)


def test_covariant_derivative_needs_covariant_input(example):
    with pytest.raises(ValenceError):
        covariant_derivative(inverse_metric(example), example)


def test_weyl_vanishes_in_dimension_three_and_when_flat():
    c = Chart.standard(3)
    m = MetricSpec.diagonal(c, [1, E("x1^2 + 1", c), E("x1*x2 + 3", c)])
    assert weyl(m).is_zero()
    assert weyl(flat(4)).is_zero()


def test_weyl_needs_dimension_three():
    with pytest.raises(ValenceError):
        weyl(flat(2))


def test_weyl_of_conformally_flat_fixture(sphere):
    assert weyl(sphere).is_zero()


def test_weyl_traceless_on_example(example):
    C = weyl(example)
    for pair in ((0, 3), (1, 2)):
        assert contract(C, pair, example).is_zero()


def test_raise_lower_and_apply_ricci(example):
    c = example.chart
    A = TensorField.one_form(c, [E("x3", c), 1, E("x1/x4", c), 2])
    assert lower_vector(raise_form(A, example), example) == A
    flat4 = flat(4)
    assert raise_form(A, flat4).components.tolist() == A.components.tolist()
    beta = TensorField.one_form(c, [1, 0, 0, 0])
    assert apply_ricci(beta, example).components.tolist() == [E("-1/(4*x1^2)", c), c.zero(), c.zero(), c.zero()]


def test_contract_rejects_bad_slots(example):
    with pytest.raises(ValenceError):
        contract(riemann(example), (1, 1), example)
    with pytest.raises(ValenceError):
        contract(riemann(example), (0, 7), example)


def test_singular_metric_rejected():
    c = Chart.standard(2)
    with pytest.raises(SingularMetricError):
        MetricSpec.from_matrix(c, [[E("x1", c), E("x1", c)], [E("x1", c), E("x1", c)]])


def test_asymmetric_metric_rejected():
    c = Chart.standard(2)
    with pytest.raises(SymmetryError):
        MetricSpec.from_matrix(c, [[1, E("x1", c)], [0, 1]])


def test_sphere_has_positive_sectional_curvature(sphere):
    R = riemann(sphere)
    g = sphere
    # K(e1, e2) = R_1212 / (g11 g22 - g12^2) = 1 with this sign convention
    assert R[0, 1, 0, 1] / (g[0, 0] * g[1, 1]) == sphere.chart.one()
    assert scalar_curvature(sphere) == sphere.chart.constant(-12)


# -- randomized identities ---------------------------------------------------------


@pytest.mark.parametrize("seed", RANDOM_METRIC_SEEDS)
def test_identities_on_random_diagonal_metrics(seed):
    m = metric_for_seed(seed)
    for check in (riemann_symmetries, first_bianchi, second_bianchi, metric_compatibility, ricci_is_contraction):
        result = check(m)
        assert result.holds, (check.__name__, result.witness)
    if m.dim >= 4:
        assert weyl_traceless(m).holds
    r = scalar_curvature(m)
    assert contract(ricci(m), (0, 1), m).components[()] == r


@pytest.mark.parametrize("seed", RANDOM_METRIC_SEEDS[::3])
def test_second_bianchi_in_differentiation_slots(seed):
    # (nabla_l R)_hijk + (nabla_h R)_iljk + (nabla_i R)_lhjk = 0
    m = metric_for_seed(seed)
    D = nabla_riemann(m).components
    n = m.dim
    for h, i, j, k, l in product(range(n), repeat=5):
        assert (D[h, i, j, k, l] + D[i, l, j, k, h] + D[l, h, j, k, i]).is_zero()


def test_covariant_derivative_of_metric_vanishes_off_diagonal():
    c = Chart.standard(3)
    m = MetricSpec.from_matrix(c, [[1, E("x2", c), 0], [E("x2", c), E("1 + x1^2", c), 0], [0, 0, E("x3", c)]])
    assert metric_compatibility(m).holds
    assert first_bianchi(m).holds and second_bianchi(m).holds


# -- oracle -----------------------------------------------------------------------


def test_oracle_example_point(example):
    report = oracle_check(example, (1, 1, 1, 1))
    assert report.ok and report.checked > 0
    assert evaluate(riemann(example)[0, 1, 0, 1], (1, 1, 1, 1)) == Fraction(1, 4)


def test_oracle_flat():
    report = oracle_check(flat(3), (2, -1, 5))
    assert report.ok


def test_oracle_pole(example):
    with pytest.raises(PoleError):
        oracle_check(example, (0, 1, 1, 1))


@pytest.mark.parametrize("seed", [0, 4, 8])
def test_oracle_on_random_metrics(seed):
    m = metric_for_seed(seed + 2)  # n = 4
    reports = oracle_points(m, count=10, seed=seed)
    assert len(reports) == 10
    assert all(r.ok for r in reports), [r.mismatches[:3] for r in reports if not r.ok]


def test_stereographic_fixture_n3():
    m = stereographic(3)
    assert weyl(m).is_zero()
    assert second_bianchi(m).holds
