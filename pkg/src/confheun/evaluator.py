"""Assemble u(z) = sum c_n F_n(z) for a family's hypergeometric basis and check it against the ODE."""

from __future__ import annotations

import math

import numpy as np
from dataclasses import dataclass

from .che import CheParams, SolutionSample, che_residual
from .hypergeo import TOL_SERIES, conf_0f1_many, kummer_1f1_many
from .recurrence import CoefficientSeries, ExpansionError, ExpansionFamily, run_three_term
from .reduction import ReductionSpec, closed_form_coeffs

TOL_ASSEMBLE = 1e-12
K_CONV = 3
NMAX = 200
FD_STEP = 1e-6
VERIFY_GRID = tuple(round(0.1 * k, 1) for k in range(1, 10))

F = ExpansionFamily


@dataclass(frozen=True)
class SeriesSolution:
    """A coefficient sequence bound to a family and parameter set.

    ``n_used`` is the last index that enters the sum. ``converged`` says whether
    the coefficients themselves settle: the sum is finite, or the last K_CONV
    coefficients are below tol_assemble relative to the largest one.
    """

    family: ExpansionFamily
    params: CheParams
    coeffs: CoefficientSeries
    n_used: int
    converged: bool
    tol_assemble: float = TOL_ASSEMBLE
    tol_series: float = TOL_SERIES

    def __post_init__(self):
        if self.n_used > len(self.coeffs.c) - 1:
            raise ValueError("n_used exceeds the available coefficients")


@dataclass(frozen=True)
class Assembled:
    """Partial sums at one point.

    ``tail`` is the largest of the last K_CONV term magnitudes relative to
    max(|u|, |u'|); it is 0 for a finite sum.
    """

    u: float
    du: float
    n_used: int
    converged: bool
    tail: float


def _coefficients_settle(c: list[float], tol: float) -> bool:
    big = max(abs(x) for x in c)
    if not all(math.isfinite(x) for x in c):
        return False
    return len(c) > K_CONV and all(abs(x) <= tol * big for x in c[-K_CONV:])


def make_solution(family: ExpansionFamily, params: CheParams, coeffs: CoefficientSeries,
                  tol_assemble: float = TOL_ASSEMBLE, tol_series: float = TOL_SERIES) -> SeriesSolution:
    family = ExpansionFamily(family)
    if coeffs.terminated_at is not None:
        return SeriesSolution(family, params, coeffs, max(coeffs.terminated_at - 1, 0), True,
                              tol_assemble, tol_series)
    return SeriesSolution(family, params, coeffs, len(coeffs.c) - 1,
                          _coefficients_settle(coeffs.c, tol_assemble), tol_assemble, tol_series)


def solution_from_spec(spec: ReductionSpec, nmax: int = NMAX, source: str = "closed_form",
                       tol_assemble: float = TOL_ASSEMBLE, tol_series: float = TOL_SERIES) -> SeriesSolution:
    """Coefficients from the closed form (default) or from the forward recurrence."""
    if source == "closed_form":
        coeffs = closed_form_coeffs(spec, nmax)
    elif source == "recurrence":
        coeffs = run_three_term(spec.family, spec.params, nmax)
    else:
        raise ValueError(f"unknown coefficient source {source!r}")
    return make_solution(spec.family, spec.params, coeffs, tol_assemble, tol_series)


def _basis(family: ExpansionFamily, p: CheParams, n_lo: int, n_hi: int, z: float,
           tol: float = TOL_SERIES) -> tuple[np.ndarray, np.ndarray]:
    """F_n(z) and dF_n/dz for n = n_lo..n_hi."""
    n = np.arange(n_lo, n_hi + 1, dtype=float)
    if family is F.D:
        b = p.gamma + p.delta + n
        _check_lower(b, "γ+δ+n", n_lo)
        x = -p.alpha * z
        # d/dx 0F1(; b; x) = 0F1(; b+1; x) / b
        return conf_0f1_many(b, x, tol)[0], -p.alpha * conf_0f1_many(b + 1, x, tol)[0] / b
    a = p.alpha / p.epsilon
    if family is F.A:
        top, b = a + n, p.gamma + p.delta + n
    elif family is F.B:
        top, b = a + n, np.full_like(n, p.gamma)
    else:
        top, b = np.full_like(n, a), p.gamma + n
    _check_lower(b, "lower parameter", n_lo)
    x = -p.epsilon * z
    # d/dx 1F1(a; b; x) = (a/b) 1F1(a+1; b+1; x)
    value = kummer_1f1_many(top, b, x, tol)[0]
    deriv = top / b * kummer_1f1_many(top + 1, b + 1, x, tol)[0]
    return value, -p.epsilon * deriv


def _check_lower(b: np.ndarray, what: str, n_lo: int) -> None:
    bad = np.flatnonzero((b <= 0) & (b == np.round(b)))
    if bad.size:
        k = int(bad[0])
        raise ExpansionError(f"basis {what} = {b[k]!r} is a nonpositive integer at n={n_lo + k}")


def _relative(x: float, u: float, du: float) -> float:
    ref = max(abs(u), abs(du))
    return x / ref if ref > 0 else x


def assemble(sol: SeriesSolution, z: float) -> Assembled:
    """Partial sums of u and u' with early stopping once K_CONV consecutive terms are negligible."""
    if not 0.0 < z < 1.0:
        raise ValueError(f"z={z!r} lies outside (0, 1)")
    c = sol.coeffs.c
    tol = sol.tol_assemble
    u = du = 0.0
    small = 0
    recent: list[float] = []
    fn: list[float] = []
    dfn: list[float] = []
    for n in range(sol.n_used + 1):
        if n == len(fn):
            # basis values in doubling chunks: most sums stop long before n_used
            hi = min(sol.n_used, 2 * n + 15)
            v, d = _basis(sol.family, sol.params, n, hi, z, sol.tol_series)
            fn += v.tolist()
            dfn += d.tolist()
        term, dterm = c[n] * fn[n], c[n] * dfn[n]
        u += term
        du += dterm
        recent = (recent + [max(abs(term), abs(dterm))])[-K_CONV:]
        if abs(term) <= tol * abs(u) and abs(dterm) <= tol * max(abs(u), abs(du)):
            small += 1
            if small >= K_CONV:
                return Assembled(u, du, n, True, _relative(max(recent), u, du))
        else:
            small = 0
    finite = sol.coeffs.terminated_at is not None
    tail = 0.0 if finite else _relative(max(recent), u, du)
    return Assembled(u, du, sol.n_used, finite, tail)


def evaluate_solution(sol: SeriesSolution, z: float) -> tuple[float, float]:
    r = assemble(sol, z)
    return r.u, r.du


def pointwise_residual(sol: SeriesSolution, z: float, h: float = FD_STEP) -> float:
    """|ODE residual| at z, normalised by max(1, |u|, |u'|); u'' by central difference of u'."""
    u, du = evaluate_solution(sol, z)
    _, du_hi = evaluate_solution(sol, z + h)
    _, du_lo = evaluate_solution(sol, z - h)
    d2u = (du_hi - du_lo) / (2 * h)
    r = che_residual(sol.params, SolutionSample(z, u, du), d2u)
    return abs(r) / max(1.0, abs(u), abs(du))


def verify_solution(sol: SeriesSolution, zs=VERIFY_GRID) -> float:
    return max(pointwise_residual(sol, z) for z in zs)
