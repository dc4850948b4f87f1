import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from confheun.kernels import RealPoly, is_nonpositive_integer, log_gamma, pochhammer, poly_roots, real_roots

finite = st.floats(-5, 5, allow_nan=False)


@pytest.mark.parametrize("x, n, expected", [(5.0, 0, 1.0), (1.0, 3, 6.0), (-2.0, 3, 0.0)])
def test_pochhammer_examples(x, n, expected):
    assert pochhammer(x, n) == expected


def test_pochhammer_zero_is_exact_only_within_range():
    assert pochhammer(-2.0, 2) == 2.0
    assert pochhammer(-2.0, 5) == 0.0


def test_pochhammer_rejects_negative_order():
    with pytest.raises(ValueError):
        pochhammer(1.0, -1)


@settings(max_examples=200, deadline=None)
@given(st.floats(-6, 6, allow_nan=False), st.integers(0, 20), st.integers(0, 20))
def test_pochhammer_splits(x, m, n):
    whole = pochhammer(x, m + n)
    split = pochhammer(x, m) * pochhammer(x + m, n)
    assert whole == pytest.approx(split, rel=1e-12, abs=1e-300)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.01, 50), st.integers(0, 30))
def test_log_gamma_matches_pochhammer(x, n):
    assert math.exp(log_gamma(x + n) - log_gamma(x)) == pytest.approx(pochhammer(x, n), rel=1e-10)


@pytest.mark.parametrize("x, expected", [
    (1.0, 0.0),
    (0.5, 0.57236494292470008707),   # ln sqrt(pi), 50-digit oracle
    (11.0, 15.104412573075515295),   # ln 10!
])
def test_log_gamma_examples(x, expected):
    assert log_gamma(x) == pytest.approx(expected, rel=1e-13, abs=1e-15)


@pytest.mark.parametrize("x", [0.0, -1.0, -0.5])
def test_log_gamma_domain(x):
    with pytest.raises(ValueError):
        log_gamma(x)


def test_is_nonpositive_integer():
    assert is_nonpositive_integer(0.0) and is_nonpositive_integer(-3.0)
    assert not is_nonpositive_integer(1.0) and not is_nonpositive_integer(-0.5)
    assert is_nonpositive_integer(-2.0 + 1e-10, tol=1e-8)


def _sorted(roots):
    return sorted(roots, key=lambda z: (round(z.real, 6), round(z.imag, 6)))


def test_roots_of_difference_of_squares():
    assert np.allclose(_sorted(poly_roots(RealPoly([-1, 0, 1]))), [-1, 1])


def test_roots_of_factored_cubic():
    assert np.allclose(_sorted(poly_roots(RealPoly([-6, 11, -6, 1]))), [1, 2, 3])


def test_roots_of_quadratic_example():
    # q^2 - 2q - 1
    got = _sorted(poly_roots(RealPoly([-1, -2, 1])))
    assert np.allclose(got, [1 - math.sqrt(2), 1 + math.sqrt(2)], atol=1e-14)


def test_roots_of_zero_polynomial_raise():
    with pytest.raises(ValueError):
        poly_roots(RealPoly([0.0, 0.0]))
    with pytest.raises(ValueError):
        poly_roots(RealPoly([3.0]))


def test_complex_roots_are_split_off():
    reals, cplx = real_roots(RealPoly([1, 1, 1]))
    assert reals == [] and len(cplx) == 2


@settings(max_examples=150, deadline=None)
@given(st.lists(st.floats(-4, 4, allow_nan=False), min_size=1, max_size=5, unique=True))
def test_roots_recovered_from_linear_factors(shifts):
    sep = sorted(shifts)
    if any(b - a < 0.05 for a, b in zip(sep, sep[1:])):
        return  # near-multiple roots are ill-conditioned at 1e-8
    p = RealPoly.product_of_shifts([-r for r in shifts])
    got = sorted(r.real for r in poly_roots(p))
    assert np.allclose(got, sep, atol=1e-8)
    for r in poly_roots(p):
        assert abs(p(r)) <= 1e-9 * max(1.0, p.abs_eval(r))


def test_poly_arithmetic():
    p = RealPoly([1, 2])
    q = RealPoly([0, 0, 3])
    assert (p + q).coeffs == (1, 2, 3)
    assert (p * q).coeffs == (0, 0, 3, 6)
    assert (q - p).coeffs == (-1, -2, 3)
    assert (2 * p).coeffs == (2, 4)
    assert p(2.0) == 5.0
    assert q.derivative().coeffs == (0, 6)
    assert p[7] == 0.0


def test_degree_uses_relative_tolerance():
    assert RealPoly([1.0, 2.0, 1e-14]).degree() == 1
    assert RealPoly([0.0, 0.0]).degree() == -1
    assert RealPoly([1.0, 2.0, 1e-14]).trimmed().coeffs == (1.0, 2.0)


@settings(max_examples=100, deadline=None)
@given(st.lists(finite, min_size=1, max_size=4), st.lists(finite, min_size=1, max_size=4), finite)
def test_product_evaluates_as_product(a, b, x):
    pa, pb = RealPoly(a), RealPoly(b)
    assert (pa * pb)(x) == pytest.approx(pa(x) * pb(x), rel=1e-9, abs=1e-9)
