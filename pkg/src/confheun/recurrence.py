"""Three-term recurrences for the four hypergeometric expansion families.

Family A: u = sum c_n 1F1(alpha/eps + n; gamma + delta + n; -eps z)
Family B: u = sum c_n 1F1(alpha/eps + n; gamma; -eps z)
Family C: u = sum c_n 1F1(alpha/eps; gamma + n; -eps z)
Family D: u = sum c_n 0F1(; gamma + delta + n; -alpha z)      (eps = 0)

In every family the coefficients obey R_n c_n + Q_{n-1} c_{n-1} + P_{n-2} c_{n-2} = 0.
"""

from __future__ import annotations

import enum
import sys
from dataclasses import dataclass, field

from .che import CheParams
from .kernels import is_nonpositive_integer

ZERO_THRESHOLD = 1e-280
CANCELLATION_ULPS = 1024  # q is a computed root, so its own rounding enters the cancellation


class ExpansionFamily(str, enum.Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"


class ExpansionError(ValueError):
    """Parameters for which a family's expansion is not defined."""


@dataclass
class CoefficientSeries:
    c: list[float]
    provenance: str
    terminated_at: int | None = None
    meta: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.c)


def validate_family(f: ExpansionFamily, p: CheParams) -> None:
    """Raise ExpansionError unless ``p`` is admissible for family ``f``."""
    f = ExpansionFamily(f)
    if f is ExpansionFamily.D:
        if p.epsilon != 0.0:
            raise ExpansionError("family D requires ε = 0")
        if p.alpha == 0.0:
            raise ExpansionError("family D requires α ≠ 0")
    elif p.epsilon == 0.0:
        raise ExpansionError(f"family {f.value} requires ε ≠ 0")
    # family C needs this too: R_n = -n(γ+δ-1+n) would vanish otherwise
    if f in (ExpansionFamily.A, ExpansionFamily.C, ExpansionFamily.D):
        if is_nonpositive_integer(p.gamma + p.delta):
            raise ExpansionError("γ+δ must not be zero or a negative integer")
    if f is ExpansionFamily.A and p.alpha ** 2 + (p.gamma + p.delta) ** 2 == 0.0:
        raise ExpansionError("family A requires α² + (γ+δ)² ≠ 0")
    if f in (ExpansionFamily.B, ExpansionFamily.C):
        if is_nonpositive_integer(p.gamma):
            raise ExpansionError("γ must not be zero or a negative integer")


def recurrence_coeffs(f: ExpansionFamily, p: CheParams, n: int) -> tuple[float, float, float]:
    """(R_n, Q_n, P_n) for family ``f`` at index ``n``."""
    f = ExpansionFamily(f)
    g, d, e, a, q = p.gamma, p.delta, p.epsilon, p.alpha, p.q
    if f is ExpansionFamily.A or f is ExpansionFamily.D:
        if f is ExpansionFamily.D:
            e = 0.0
        R = -n * (g + d + n - 1)
        Q = -q + a + (g + d + e + n - 1) * n
        den = g + d + n
        if den == 0.0:
            raise ExpansionError(f"P_{n} denominator γ+δ+n vanishes")
        P = -(d + n) * (e * n + a) / den
    elif f is ExpansionFamily.B:
        s = a / e
        R = n * (s - g + n)
        Q = -q + n * g + (s + n) * (e - d - 2 * n)
        P = (s + n) * (d + n)
    else:
        R = -n * (g + d - 1 + n)
        Q = -q + a - d * e - n * (1 - g - d + e) + n * n
        den = g + d + n
        if den == 0.0:
            raise ExpansionError(f"P_{n} denominator γ+δ+n vanishes")
        P = e * (-a / e + g + d + n) * (d + n) / den
    return R, Q, P


def run_three_term(f: ExpansionFamily, p: CheParams, nmax: int,
                   tol_r: float = 1e-13) -> CoefficientSeries:
    """Forward recurrence from c_0 = 1 (and c_{-1} = 0) up to c_nmax."""
    f = ExpansionFamily(f)
    validate_family(f, p)
    c = [1.0]
    prev2, prev1 = 0.0, 1.0
    terminated_at = None
    for n in range(1, nmax + 1):
        R, _, _ = recurrence_coeffs(f, p, n)
        _, Q1, _ = recurrence_coeffs(f, p, n - 1)
        scale = n * (abs(p.gamma) + abs(p.delta) + abs(p.alpha / p.epsilon if p.epsilon else 0.0) + n)
        if abs(R) <= tol_r * max(1.0, scale):
            raise ExpansionError(f"R_{n} vanishes; expansion inapplicable at n={n}")
        acc = Q1 * prev1
        # Q = -q + rest in every family; bound the rounding of both parts
        size = (abs(p.q) + abs(Q1 + p.q)) * abs(prev1)
        if n >= 2:
            _, _, P2 = recurrence_coeffs(f, p, n - 2)
            acc += P2 * prev2
            size += abs(P2 * prev2)
        cn = -acc / R
        # c_n cancelled to rounding level and P_{n-1} = 0: every later term is exactly zero
        if (terminated_at is None and abs(acc) <= CANCELLATION_ULPS * sys.float_info.epsilon * size
                and recurrence_coeffs(f, p, n - 1)[2] == 0.0):
            terminated_at = n
        c.append(cn)
        prev2, prev1 = prev1, cn
        if terminated_at is None and abs(prev1) <= ZERO_THRESHOLD and abs(prev2) <= ZERO_THRESHOLD:
            terminated_at = n - 1
    if terminated_at is not None:
        for k in range(terminated_at, len(c)):
            c[k] = 0.0
    return CoefficientSeries(c, "recurrence", terminated_at)
