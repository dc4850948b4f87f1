"""Scalar numerics: rising factorials, log-gamma and dense real polynomials."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

TOL_COEFF = 1e-11
TOL_ROOT = 1e-9


def is_nonpositive_integer(x: float, tol: float = 0.0) -> bool:
    """True if ``x`` lies within ``tol`` of one of 0, -1, -2, ..."""
    m = round(x)
    return m <= 0 and abs(x - m) <= tol


def pochhammer(x: float, n: int) -> float:
    """Rising factorial (x)_n = x (x+1) ... (x+n-1).

    Computed as a plain product so that a nonpositive integer ``x`` with
    ``-x < n`` gives an exact zero instead of a ratio of gamma poles.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    result = 1.0
    for k in range(n):
        f = x + k
        if f == 0.0:
            return 0.0
        result *= f
    return result


def log_gamma(x: float) -> float:
    if not x > 0:
        raise ValueError(f"log_gamma requires x > 0, got {x!r}")
    return math.lgamma(x)


@dataclass(frozen=True)
class RealPoly:
    """Dense polynomial with real coefficients stored in ascending degree."""

    coeffs: tuple[float, ...]

    def __init__(self, coeffs: Iterable[float]):
        c = tuple(float(v) for v in coeffs)
        if not c:
            c = (0.0,)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def const(cls, value: float) -> RealPoly:
        return cls([value])

    @classmethod
    def linear(cls, shift: float, slope: float = 1.0) -> RealPoly:
        """The polynomial ``shift + slope * x``."""
        return cls([shift, slope])

    @classmethod
    def product_of_shifts(cls, shifts: Sequence[float]) -> RealPoly:
        """prod_k (x + shifts[k]); the empty product is 1."""
        p = cls([1.0])
        for s in shifts:
            p = p * cls([s, 1.0])
        return p

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, m: int) -> float:
        return self.coeffs[m] if 0 <= m < len(self.coeffs) else 0.0

    def scale(self) -> float:
        return max(abs(c) for c in self.coeffs)

    def degree(self, tol: float = TOL_COEFF) -> int:
        """Index of the last coefficient above ``tol`` times the coefficient scale.

        The zero polynomial reports degree -1.
        """
        thresh = tol * self.scale()
        for m in range(len(self.coeffs) - 1, -1, -1):
            if abs(self.coeffs[m]) > thresh:
                return m
        return -1

    def is_zero(self, tol: float = TOL_COEFF, scale: float | None = None) -> bool:
        ref = 1.0 if scale is None else scale
        return all(abs(c) <= tol * ref for c in self.coeffs)

    def trimmed(self, tol: float = TOL_COEFF) -> RealPoly:
        d = self.degree(tol)
        return RealPoly(self.coeffs[: max(d, 0) + 1]) if d >= 0 else RealPoly([0.0])

    def __add__(self, other: RealPoly | float) -> RealPoly:
        if not isinstance(other, RealPoly):
            other = RealPoly.const(other)
        n = max(len(self), len(other))
        return RealPoly(self[m] + other[m] for m in range(n))

    __radd__ = __add__

    def __neg__(self) -> RealPoly:
        return RealPoly(-c for c in self.coeffs)

    def __sub__(self, other: RealPoly | float) -> RealPoly:
        if not isinstance(other, RealPoly):
            other = RealPoly.const(other)
        return self + (-other)

    def __rsub__(self, other: float) -> RealPoly:
        return RealPoly.const(other) - self

    def __mul__(self, other: RealPoly | float) -> RealPoly:
        if not isinstance(other, RealPoly):
            return RealPoly(c * other for c in self.coeffs)
        out = [0.0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RealPoly(out)

    __rmul__ = __mul__

    def __call__(self, x):
        acc = 0.0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> RealPoly:
        return RealPoly(m * self.coeffs[m] for m in range(1, len(self.coeffs)))

    def abs_eval(self, x: complex) -> float:
        """sum |c_m| |x|^m, the natural magnitude scale of p near x."""
        r = abs(x)
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * r + abs(c)
        return acc


def _quadratic_roots(c0: float, c1: float, c2: float) -> list[complex]:
    disc = c1 * c1 - 4.0 * c2 * c0
    if disc >= 0:
        s = math.sqrt(disc)
        # cancellation-free pair
        t = -0.5 * (c1 + math.copysign(s, c1)) if c1 != 0 else 0.5 * s
        if t == 0.0:
            return [complex(0.0), complex(0.0)]
        return [complex(t / c2), complex(c0 / t)]
    s = cmath.sqrt(disc)
    return [(-c1 + s) / (2 * c2), (-c1 - s) / (2 * c2)]


def _polish(p: RealPoly, dp: RealPoly, r: complex, iters: int = 3) -> complex:
    for _ in range(iters):
        d = dp(r)
        if d == 0:
            break
        step = p(r) / d
        nr = r - step
        if abs(p(nr)) >= abs(p(r)):
            break
        r = nr
    return r


def poly_roots(p: RealPoly, tol: float = TOL_COEFF) -> list[complex]:
    """All complex roots of ``p`` with multiplicity.

    Degree is taken after trimming negligible leading coefficients. Degrees 1
    and 2 use closed forms, higher degrees use companion-matrix eigenvalues
    followed by a few Newton polishing steps.
    """
    d = p.degree(tol)
    if d < 0:
        raise ValueError("cannot take roots of the zero polynomial")
    if d == 0:
        raise ValueError("constant polynomial has no roots")
    c = p.coeffs[: d + 1]
    if d == 1:
        return [complex(-c[0] / c[1])]
    if d == 2:
        roots = _quadratic_roots(c[0], c[1], c[2])
    else:
        roots = [complex(r) for r in np.roots(np.asarray(c[::-1], dtype=float))]
    q = RealPoly(c)
    dq = q.derivative()
    out = []
    for r in roots:
        r = _polish(q, dq, r)
        # near-double real roots come back from eig as tiny conjugate pairs
        if r.imag != 0.0 and abs(r.imag) <= 1e-7 * max(1.0, abs(r)):
            if abs(q(r.real)) <= TOL_ROOT * q.abs_eval(r.real):
                r = complex(r.real, 0.0)
        out.append(r)
    return out


def real_roots(p: RealPoly, tol_imag: float = 1e-9) -> tuple[list[float], list[complex]]:
    """Split the roots of ``p`` into real ones and genuinely complex ones."""
    reals, cplx = [], []
    for r in poly_roots(p):
        if abs(r.imag) <= tol_imag * max(1.0, abs(r)):
            reals.append(r.real)
        else:
            cplx.append(r)
    reals.sort()
    return reals, cplx
