import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from confheun.che import CheParams
from confheun.recurrence import ExpansionError, run_three_term
from confheun.reduction import (ReductionSpec, ansatz_ratio, apply_restriction, build_constraint_poly,
                                check_family_b_obstruction, closed_form_coeffs, constraint_residual,
                                predicted_termination, solve_reduction, solve_reduction_elimination,
                                solve_reduction_general)
from confheun.sampling import draw_params, draw_unrestricted

TOL_COEFF = 1e-11


def key(spec):
    return np.concatenate([[spec.q], sorted(spec.e)])


def same_sets(a, b, tol=1e-7):
    ka, kb = [key(s) for s in a], [key(s) for s in b]
    return len(ka) == len(kb) and all(any(np.allclose(x, y, rtol=tol, atol=tol) for y in kb) for x in ka)


# ---------------------------------------------------------------- restriction

def test_restriction_examples():
    assert apply_restriction("A", CheParams(0, 1, 1, 2, 0), 0).gamma == 3.0
    assert apply_restriction("D", CheParams(5, 1, 0, 2, 0), 2).gamma == -2.0
    assert apply_restriction("C", CheParams(0.5, 0, 1, 3, 0), 1).delta == 1.0


def test_restriction_keeps_other_fields():
    p = CheParams(9, 1.25, 0.5, 2, 0.75)
    r = apply_restriction("A", p, 2)
    assert (r.delta, r.epsilon, r.alpha, r.q) == (p.delta, p.epsilon, p.alpha, p.q)


def test_restriction_errors():
    with pytest.raises(ExpansionError):
        apply_restriction("B", CheParams(1, 1, 1, 1, 1), 0)
    with pytest.raises(ExpansionError, match="ε ≠ 0"):
        apply_restriction("C", CheParams(1, 1, 0, 1, 1), 0)


# ---------------------------------------------------------------- ratios

def test_ratio_examples():
    a = ReductionSpec("A", 0, (), -4.0, CheParams(3, 3, 1, 2, -4))
    assert ansatz_ratio(a, 1) == pytest.approx(1.0)
    a0 = ReductionSpec("A", 0, (), 0.0, CheParams(3, 0, 1, 2, 0))
    assert ansatz_ratio(a0, 1) == 0.0
    d = ReductionSpec("D", 0, (), 0.0, CheParams(0, 2, 0, 3, 0))
    # α / (n (δ - N - 1 + n)) = 3 / (1 * 2), the same as c_1 / c_0 of the closed form
    assert ansatz_ratio(d, 1) == pytest.approx(1.5)
    assert closed_form_coeffs(d, 1).c[1] == pytest.approx(1.5)


def test_ratio_zero_denominator():
    d = ReductionSpec("D", 0, (), 0.0, CheParams(0, 0, 0, 3, 0))
    with pytest.raises(ZeroDivisionError):
        ansatz_ratio(d, 1)


def test_spec_requires_n_auxiliary_parameters():
    with pytest.raises(ValueError):
        ReductionSpec("A", 2, (1.0,), 0.0, CheParams(0, 0, 1, 1, 0))


# ---------------------------------------------------------------- constraint polynomial

def test_order_zero_constraint_vanishes():
    spec = solve_reduction("A", CheParams(0, 3, 1, 2, 0), 0)[0]
    assert build_constraint_poly("A", spec.params, []).is_zero(TOL_COEFF)


def test_q_perturbation_leaves_constant():
    spec = solve_reduction("A", CheParams(0, 3, 1, 2, 0), 0)[0]
    poly = build_constraint_poly("A", spec.params.with_(q=spec.q + 1.0), []).trimmed()
    assert poly.degree() == 0 and poly[0] == pytest.approx(-1.0)


@pytest.mark.parametrize("e", [[], [1.5]])
def test_family_b_obstruction_examples(e):
    assert check_family_b_obstruction(CheParams(2, 1, 0.7, 1.1, 0.3), e) == pytest.approx(0.7, abs=1e-11)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 11), st.lists(st.floats(0.1, 4), min_size=0, max_size=4))
def test_family_b_obstruction_is_epsilon(seed, e):
    p = draw_unrestricted(np.random.default_rng(seed))
    assert check_family_b_obstruction(p, e) == pytest.approx(p.epsilon, abs=1e-11)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from("ACD"), st.integers(0, 4))
def test_top_power_cancels_after_restriction(seed, fam, N):
    rng = np.random.default_rng(seed)
    p = draw_unrestricted(rng, epsilon_zero=fam == "D").with_(alpha=float(rng.uniform(0.5, 2)))
    pr = apply_restriction(fam, p, N)
    e = list(rng.uniform(-3, 3, size=N))
    poly = build_constraint_poly(fam, pr, e)
    scale = max(1.0, poly.scale())
    assert abs(poly[N + 2]) <= TOL_COEFF * scale
    assert abs(poly[N + 1]) <= TOL_COEFF * scale


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 4))
def test_family_a_leading_coefficient(seed, N):
    rng = np.random.default_rng(seed)
    p = draw_unrestricted(rng)
    e = list(rng.uniform(-3, 3, size=N))
    poly = build_constraint_poly("A", p, e)
    scale = max(1.0, poly.scale())
    assert poly[N + 1] == pytest.approx(p.gamma - N - 1 - p.alpha / p.epsilon, abs=TOL_COEFF * scale)
    assert abs(poly[N + 2]) <= TOL_COEFF * scale


# ---------------------------------------------------------------- direct solver

def test_family_a_order_zero_example():
    out = solve_reduction("A", CheParams(0, 3, 1, 2, 0), 0)
    assert len(out) == 1
    s = out[0]
    assert (s.params.gamma, s.q, s.e) == (3.0, -4.0, ())


def test_family_d_order_zero_example():
    s = solve_reduction("D", CheParams(0, 2.5, 0, 1.3, 0), 0)[0]
    assert (s.params.gamma, s.q, s.e) == (0.0, 0.0, ())


def test_family_d_order_one_printed_relation():
    # The printed q-polynomial q² + q(1-δ) + α does not close the constraint polynomial;
    # the solver falls back to the derived one, q² + q(1-δ) - α, and says so.
    delta, alpha = 2.5, 0.8
    out = solve_reduction("D", CheParams(0, delta, 0, alpha, 0), 1)
    assert any("q-polynomial" in d for d in out.diagnostics)
    printed = np.roots([1, 1 - delta, alpha]).real
    pr = apply_restriction("D", CheParams(0, delta, 0, alpha, 0), 1)
    for q in printed:
        e1 = -alpha / q
        assert constraint_residual("D", pr.with_(q=q), [e1]) > 1e-3
    assert len(out) == 2
    for s in out:
        assert s.q ** 2 + s.q * (1 - delta) - alpha == pytest.approx(0, abs=1e-12)
        assert s.e[0] == pytest.approx(-alpha / s.q, rel=1e-12)
        assert constraint_residual("D", s.params, s.e) <= TOL_COEFF


def test_family_a_order_one_example():
    # δ=ε=α=1: the q-quadratic is q² + q + 1, with no real roots
    out = solve_reduction("A", CheParams(0, 1, 1, 1, 0), 1)
    assert len(out) == 0
    assert len(out.rejected) == 2 and all(r["reason"] == "complex q" for r in out.rejected)
    assert out.diagnostics


@pytest.mark.parametrize("seed", range(5))
def test_family_a_order_one_uses_printed_e(seed):
    p = draw_params("A", 1, np.random.default_rng(seed))
    for s in solve_reduction("A", p, 1):
        pr = s.params
        e1 = s.q - pr.alpha + pr.delta - pr.epsilon + pr.alpha * (1 + pr.delta) / pr.epsilon
        assert s.e[0] == pytest.approx(e1, rel=1e-12, abs=1e-12)


def test_family_c_order_two_falls_back_to_derived_sum():
    p = draw_params("C", 2, np.random.default_rng(3))
    out = solve_reduction("C", p, 2)
    assert any("e-relations" in d for d in out.diagnostics)
    for s in out:
        assert constraint_residual("C", s.params, s.e) <= TOL_COEFF


def test_order_out_of_range():
    with pytest.raises(ValueError):
        solve_reduction("A", CheParams(0, 1, 1, 1, 0), 3)


def test_integer_delta_below_minus_n_is_rejected():
    out = solve_reduction("A", CheParams(0, -2, 1, 0.5, 0), 1)
    assert len(out) == 0
    assert any("vanishes identically" in r["reason"] for r in out.rejected)


@pytest.mark.parametrize("fam", "ACD")
@pytest.mark.parametrize("N", [1, 2])
def test_elimination_matches_direct(fam, N):
    rng = np.random.default_rng(11)
    for _ in range(10):
        p = draw_params(fam, N, rng)
        assert same_sets(solve_reduction(fam, p, N), solve_reduction_elimination(fam, p, N), 1e-8)


# ---------------------------------------------------------------- general solver

def test_general_matches_direct_order_one():
    p = CheParams(0, 0.8, 1.2, 1.9, 0)
    assert same_sets(solve_reduction("A", p, 1), solve_reduction_general("A", p, 1))


@pytest.mark.parametrize("seed", range(3))
def test_general_matches_direct_order_two(seed):
    p = draw_params("A", 2, np.random.default_rng(seed))
    assert same_sets(solve_reduction("A", p, 2), solve_reduction_general("A", p, 2, starts=128))


def test_general_is_deterministic_for_a_seed():
    p = CheParams(0, 4, 0, 1, 0)
    a = solve_reduction_general("D", p, 3, seed=7)
    b = solve_reduction_general("D", p, 3, seed=7)
    assert [s.as_dict() for s in a] == [s.as_dict() for s in b]


def test_general_requires_positive_order():
    with pytest.raises(ValueError):
        solve_reduction_general("A", CheParams(0, 1, 1, 1, 0), 0)


def test_family_d_order_three_example():
    out = solve_reduction_general("D", CheParams(0, 4, 0, 1, 0), 3, starts=128)
    assert len(out) == 3
    for s in out:
        assert constraint_residual("D", s.params, s.e) <= TOL_COEFF


def test_family_d_order_three_recurrence_cross_check():
    # The closed form is the minimal solution of the family-D recurrence; forward
    # recurrence from c_0 amplifies rounding like (n!)^2 / α^n.
    out = solve_reduction_general("D", CheParams(0, 4, 0, 1, 0), 3, starts=128)
    for s in out:
        cf = closed_form_coeffs(s, 50).c
        rc = run_three_term("D", s.params, 50).c
        assert np.allclose(rc, cf, rtol=1e-11, atol=0)


# ---------------------------------------------------------------- closed form

def test_closed_form_example():
    spec = solve_reduction("A", CheParams(0, 3, 1, 2, 0), 0)[0]
    c = closed_form_coeffs(spec, 5)
    assert c.c[0] == 1.0 and c.provenance == "closed_form"
    assert c.c[1] == pytest.approx(1.0) and c.c[2] == pytest.approx(6 / 7)


def test_finite_sum_closed_form():
    spec = solve_reduction("A", CheParams(0, -1, 1.1, 0.7, 0), 1)[0]
    c = closed_form_coeffs(spec, 20)
    assert c.terminated_at == 2 == predicted_termination(spec)
    assert c.c[1] != 0.0 and all(x == 0.0 for x in c.c[2:])


def test_family_d_pole_is_an_error():
    spec = ReductionSpec("D", 0, (), 0.0, CheParams(0, -1.0, 0, 1.0, 0))
    with pytest.raises(ExpansionError):
        closed_form_coeffs(spec, 5)


@pytest.mark.parametrize("fam", "ACD")
@pytest.mark.parametrize("N", [0, 1, 2])
def test_ratio_and_zero_poly_properties(fam, N):
    rng = np.random.default_rng(100 + N)
    for _ in range(8):
        for s in solve_reduction(fam, draw_params(fam, N, rng), N):
            assert constraint_residual(fam, s.params, s.e) <= TOL_COEFF
            c = closed_form_coeffs(s, 30).c
            for n in range(1, 31):
                if c[n - 1] != 0.0:
                    assert c[n] / c[n - 1] == pytest.approx(ansatz_ratio(s, n), rel=1e-13, abs=1e-300)


def test_swapping_auxiliary_parameters_is_exact():
    for s in solve_reduction("A", draw_params("A", 2, np.random.default_rng(8)), 2):
        swapped = ReductionSpec(s.family, 2, (s.e[1], s.e[0]), s.q, s.params)
        assert closed_form_coeffs(s, 40).c == closed_form_coeffs(swapped, 40).c
