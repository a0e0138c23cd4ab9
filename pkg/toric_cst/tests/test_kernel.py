import math

import numpy as np
import pytest
from hamcrest import *
from hypothesis import given, settings, strategies as st
from scipy import special

from toric_cst.exceptions import DegenerateGradientException, DomainException
from toric_cst.kernel import KernelPoint
from toric_cst.kernel.diagnostics import diagonal_roots, gradient_closed_form, gradient_ratio, kernel_gradient, \
    kernel_report, ratio_from_gradient, render_report, write_report_csv
from toric_cst.kernel.forms import diagonal_values, direct_values, expanded_values, kernel_diagonal, kernel_direct, \
    kernel_expanded, q_factors, taylor_values

R = 1 / 8
R_MIN, R_MAX = 0.14, 1.0


def _scale(p, r):
    return 2 * math.pi * r * r * math.sqrt(p * p - R * R) / (R * p * math.sqrt(p + r))


def test_q_factors_examples():
    q = q_factors(1.0, 0.5, R)
    assert_that(q.Q2, close_to(math.pi, 1e-14))
    assert_that(q.Q3, close_to(math.sqrt(1 - R * R) * math.sqrt(1.5), 1e-14))
    assert_that(q.Q4, close_to(R / 2, 1e-15))
    diagonal = q_factors(0.5, 0.5, R)
    assert_that(diagonal.Q4, close_to(R / 0.5, 1e-15))
    assert_that(q_factors(2 * R, 2 * R, R).Q2, close_to(2 * math.pi, 1e-14))


def test_kernel_rejects_points_outside_the_triangle():
    for point in [(0.5, 0.6, 0), (0.5, 0.1, 0), (R, R, 0), (0.5, 0.4, -1)]:
        with pytest.raises(DomainException):
            kernel_direct(point, R)
    with pytest.raises(DomainException):
        kernel_diagonal(0.1, 2, R)


def test_degree_zero_is_twice_q1():
    for p, r in [(1.0, 0.5), (0.3, 0.2), (0.9, 0.9)]:
        assert_that(kernel_direct((p, r, 0), R), close_to(2 * q_factors(p, r, R).Q1, 1e-12 * _scale(p, r)))


def test_diagonal_example():
    value = kernel_diagonal(0.5, 0, R)
    assert_that(value, close_to(math.sqrt(8) * math.pi / R * math.sqrt(0.5) * math.sqrt(0.25 - R * R), 1e-10))
    assert_that(value, close_to(24.335, 1e-3))


def test_diagonal_vanishes_at_legendre_root():
    r0 = R * math.sqrt(3)
    assert_that(abs(kernel_diagonal(r0, 2, R)), less_than(1e-12 * _scale(r0, r0)))


def test_forms_agree_on_the_diagonal():
    r = np.linspace(0.15, 1.0, 30)
    for l in range(0, 12):
        diagonal = diagonal_values(r, l, R)
        assert_that(np.allclose(direct_values(r, r, l, R), diagonal, rtol=1e-12, atol=1e-12), equal_to(True))
        assert_that(np.allclose(expanded_values(r, r, l, R), diagonal, rtol=1e-12, atol=1e-12), equal_to(True))


def test_direct_form_is_continuous_at_the_diagonal():
    for l in (0, 3, 7):
        r = 0.5
        above = kernel_direct((r + 1e-9, r, l), R)
        assert_that(above, close_to(kernel_diagonal(r, l, R), 1e-6 * _scale(r, r)))


@pytest.mark.parametrize('l', range(0, 21))
def test_direct_and_expanded_forms_agree(l):
    generator = np.random.Generator(np.random.PCG64(l))
    a, b = generator.uniform(R_MIN, R_MAX, size=(2, 500))
    p, r = np.maximum(a, b), np.minimum(a, b)
    direct = direct_values(p, r, l, R)
    expanded = expanded_values(p, r, l, R)
    assert_that(float(np.max(np.abs(direct - expanded) / (1 + np.abs(direct)))), less_than(1e-9))


@settings(max_examples=200)
@given(l=st.integers(min_value=0, max_value=20), a=st.floats(min_value=R_MIN, max_value=R_MAX),
       b=st.floats(min_value=R_MIN, max_value=R_MAX))
def test_scalar_forms_agree(l, a, b):
    point = KernelPoint(max(a, b), min(a, b), l)
    direct = kernel_direct(point, R)
    assert_that(abs(direct - kernel_expanded(point, R)), less_than(1e-9 * (1 + abs(direct))))


def test_taylor_values_extend_below_the_diagonal():
    # polynomial in (p - r): crossing the diagonal keeps it smooth
    r0, l = 0.4, 4
    h = 1e-4
    values = [float(taylor_values(np.float64(r0), np.float64(r0 + k * h), l, R)) for k in (-1, 0, 1)]
    assert_that(abs(values[0] - 2 * values[1] + values[2]), less_than(1e-4 * _scale(r0, r0)))


@pytest.mark.parametrize('l', [2, 3, 5])
def test_taylor_values_match_the_first_order_expansion(l):
    r, d = 0.6, 2.5e-4

    def first_order_error(step):
        q = q_factors(r + step, r, R)
        x = q.Q4
        first = special.eval_legendre(l, x)
        slope = special.eval_legendre(l - 1, x) * l - x * l * first
        slope /= 1 - x * x
        curvature = (2 * x * slope - l * (l + 1) * first) / (1 - x * x)
        expected = 2 * q.Q1 * first + 2 * step * (q.Q3 ** 2 * q.Q1 * curvature / 2 - q.Q3 * q.Q2 * slope)
        return abs(float(taylor_values(np.float64(r + step), np.float64(r), l, R)) - expected)

    ratio = first_order_error(d) / first_order_error(2 * d)
    assert_that(ratio, close_to(0.25, 0.05))


def test_kernel_grows_linearly_away_from_the_diagonal():
    for l in (0, 3):
        r = 0.5
        steps = np.array([1e-3, 1e-4, 1e-5])
        differences = [abs(kernel_direct((r + h, r, l), R) - kernel_diagonal(r, l, R)) for h in steps]
        slope = np.polyfit(np.log(steps), np.log(differences), 1)[0]
        assert_that(float(slope), greater_than_or_equal_to(0.9))


def test_diagonal_roots_of_degree_two():
    roots = diagonal_roots(2, R, R_MIN, R_MAX)
    assert_that(roots, has_length(1))
    assert_that(roots[0], close_to(R * math.sqrt(3), 1e-12))
    assert_that(diagonal_roots(1, R, R_MIN, R_MAX), empty())
    assert_that(diagonal_roots(0, R, R_MIN, R_MAX), empty())


@pytest.mark.parametrize('l', [3, 8, 15, 20])
def test_diagonal_roots_match_gauss_nodes(l):
    nodes = special.roots_legendre(l)[0]
    expected = sorted(R / x for x in nodes if R / R_MAX <= x <= R / R_MIN)
    roots = diagonal_roots(l, R, R_MIN, R_MAX)
    assert_that(roots, has_length(len(expected)))
    assert_that(np.allclose(roots, expected, rtol=1e-10, atol=0), equal_to(True))
    for r0 in roots:
        assert_that(abs(kernel_diagonal(r0, l, R)), less_than(1e-9 * _scale(r0, r0)))


def test_diagonal_roots_reject_bad_ranges():
    with pytest.raises(DomainException):
        diagonal_roots(2, R, 0.1, 1.0)
    with pytest.raises(DomainException):
        diagonal_roots(-1, R, R_MIN, R_MAX)


def test_gradient_ratio_at_the_first_root():
    r0 = R * math.sqrt(3)
    kappa1, kappa2 = kernel_gradient(r0, 2, R)
    assert_that(kappa1 / kappa2, close_to(-2.0, 1e-3))
    assert_that(gradient_ratio(r0, 2, R), close_to(2.0, 1e-3))


@pytest.mark.parametrize('l', range(1, 21))
def test_gradient_matches_the_closed_form(l):
    for r0 in diagonal_roots(l, R, R_MIN, R_MAX):
        kappa1, kappa2 = kernel_gradient(r0, l, R)
        closed1, closed2 = gradient_closed_form(r0, l, R)
        assert_that(kappa1, close_to(closed1, 1e-5 * abs(closed1)))
        assert_that(kappa2, close_to(closed2, 1e-5 * abs(closed2)))
        assert_that(gradient_ratio(r0, l, R), close_to(2.0, 1e-3))


def test_degenerate_gradient():
    with pytest.raises(DegenerateGradientException):
        ratio_from_gradient(1.0, -1.0)
    with pytest.raises(DegenerateGradientException):
        ratio_from_gradient(0.0, 0.0)
    assert_that(ratio_from_gradient(-2.0, 1.0), close_to(2.0, 1e-15))


def test_kernel_report(tmp_path):
    rows = kernel_report(6, R, R_MIN, R_MAX)
    assert_that(len(rows), equal_to(sum(len(diagonal_roots(l, R, R_MIN, R_MAX)) for l in range(1, 7))))
    for row in rows:
        assert_that(row.ratio, close_to(2.0, 1e-3))
    assert_that(render_report(rows).splitlines(), has_length(len(rows) + 1))
    path = tmp_path / 'kernel.csv'
    write_report_csv(rows, str(path))
    lines = path.read_text().splitlines()
    assert_that(lines[0], equal_to('l,r0,diagonal,kappa1,kappa2,kappa1_closed,kappa2_closed,ratio'))
    assert_that(float(lines[1].split(',')[1]), equal_to(rows[0].r0))
