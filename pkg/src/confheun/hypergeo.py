"""Direct series evaluation of 1F1(a; b; z) and 0F1(; b; z) for real arguments."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kernels import is_nonpositive_integer

TOL_SERIES = 1e-15
K_CONV = 3
MAX_TERMS = 10000


@dataclass(frozen=True)
class HypergeoResult:
    value: float
    n_terms: int
    converged: bool


def _check_b(b: float) -> None:
    if is_nonpositive_integer(b):
        raise ValueError(f"lower parameter b={b!r} is zero or a negative integer")


def _sum_series(a: float | None, b: float, z: float, tol: float, max_terms: int) -> HypergeoResult:
    # term_{k+1} = term_k * (a+k) / ((b+k)(k+1)) * z, with the (a+k) factor dropped for 0F1
    term = 1.0
    total = 1.0
    small = 0
    for k in range(max_terms):
        num = z if a is None else (a + k) * z
        term *= num / ((b + k) * (k + 1))
        total += term
        if abs(term) <= tol * abs(total):
            small += 1
            if small >= K_CONV:
                return HypergeoResult(total, k + 2, True)
        else:
            small = 0
    return HypergeoResult(total, max_terms + 1, False)


def kummer_1f1(a: float, b: float, z: float, tol: float = TOL_SERIES,
               max_terms: int = MAX_TERMS) -> HypergeoResult:
    """Kummer's function M(a, b, z) by forward summation of the Taylor series."""
    _check_b(b)
    return _sum_series(a, b, z, tol, max_terms)


def kummer_1f1_dz(a: float, b: float, z: float, tol: float = TOL_SERIES,
                  max_terms: int = MAX_TERMS) -> HypergeoResult:
    """d/dz 1F1(a; b; z) = (a/b) 1F1(a+1; b+1; z)."""
    _check_b(b)
    _check_b(b + 1)
    r = _sum_series(a + 1, b + 1, z, tol, max_terms)
    return HypergeoResult(a / b * r.value, r.n_terms, r.converged)


def conf_0f1(b: float, z: float, tol: float = TOL_SERIES,
             max_terms: int = MAX_TERMS) -> HypergeoResult:
    _check_b(b)
    return _sum_series(None, b, z, tol, max_terms)


def conf_0f1_dz(b: float, z: float, tol: float = TOL_SERIES,
                max_terms: int = MAX_TERMS) -> HypergeoResult:
    """d/dz 0F1(; b; z) = (1/b) 0F1(; b+1; z)."""
    _check_b(b)
    _check_b(b + 1)
    r = _sum_series(None, b + 1, z, tol, max_terms)
    return HypergeoResult(r.value / b, r.n_terms, r.converged)


def _sum_series_many(a, b, z: float, tol: float, max_terms: int):
    """Vectorised ``_sum_series`` over parameter arrays; returns (values, converged mask)."""
    b = np.asarray(b, dtype=float)
    a = None if a is None else np.broadcast_to(np.asarray(a, dtype=float), b.shape)
    if np.any((b <= 0) & (b == np.round(b))):
        raise ValueError("a lower parameter is zero or a negative integer")
    term = np.ones_like(b)
    total = np.ones_like(b)
    small = np.zeros(b.shape, dtype=int)
    done = np.zeros(b.shape, dtype=bool)
    for k in range(max_terms):
        num = z if a is None else (a + k) * z
        term = term * num / ((b + k) * (k + 1))
        total = np.where(done, total, total + term)
        tiny = np.abs(term) <= tol * np.abs(total)
        small = np.where(tiny, small + 1, 0)
        done |= small >= K_CONV
        if done.all():
            break
    return total, done


def kummer_1f1_many(a, b, z: float, tol: float = TOL_SERIES, max_terms: int = MAX_TERMS):
    """1F1(a_i; b_i; z) for arrays of parameters at one argument."""
    return _sum_series_many(a, b, z, tol, max_terms)


def conf_0f1_many(b, z: float, tol: float = TOL_SERIES, max_terms: int = MAX_TERMS):
    """0F1(; b_i; z) for an array of lower parameters at one argument."""
    return _sum_series_many(None, b, z, tol, max_terms)
