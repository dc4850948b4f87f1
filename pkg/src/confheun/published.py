"""Published closed-form reduction systems for orders N = 0, 1, 2, coded verbatim.

These are kept exactly as printed, including apparent misprints; the
``audit`` module measures them against systems derived from the constraint
polynomial. Every function expects parameters with the family restriction
already applied.
"""

from __future__ import annotations

import cmath

from .che import CheParams
from .kernels import RealPoly
from .recurrence import ExpansionFamily

F = ExpansionFamily


# ---------------------------------------------------------------- family A

def a_q_order0(p: CheParams) -> float:
    return p.alpha * (1 - p.delta / p.epsilon)


def a_q_poly_order1(p: CheParams) -> RealPoly:
    d, e, al = p.delta, p.epsilon, p.alpha
    a = al / e
    c1 = a * (1 + 2 * d) - 2 * al - e + d
    c0 = a * (a * (d - e) * (1 + d - e) + (d + d * d - 2 * d * e + e * e))
    return RealPoly([c0, c1, 1.0])


def a_e1_order1(p: CheParams) -> float:
    d, e, al, q = p.delta, p.epsilon, p.alpha, p.q
    return q - al + d - e + al * (1 + d) / e


def a_q_poly_order2(p: CheParams) -> RealPoly:
    d, e, al = p.delta, p.epsilon, p.alpha
    a = al / e
    c2 = 1 + 3 * d - 3 * e - 3 * al + 3 * al * (1 + d) / e
    c1 = (a * a * (2 + 3 * d * d - 6 * d * (e - 1) + 3 * e * (e - 2))
          + 2 * a * (1 + 3 * d * d + d * (5 - 6 * e) + 3 * e * (e - 1))
          + 2 * (d + d * d - 2 * d * e + e * e))
    c0 = a * (a * a * (d - e) * (1 + d - e) * (2 + d - e)
              + a * (1 + d - e) * (3 * d * (2 + d) - 2 * (1 + 3 * d) * e + 3 * e * e)
              + 2 * (d * (1 + d) * (2 + d) - 3 * d * (1 + d) * e + 3 * d * e * e - e ** 3))
    return RealPoly([c0, c1, c2, 1.0])


def a_sum_order2(p: CheParams) -> float:
    """e_1 + e_2."""
    d, e, al, q = p.delta, p.epsilon, p.alpha, p.q
    return q + 1 - al + 2 * d - 2 * e + al * (2 + d) / e


def a_product_relation_order2(p: CheParams, s: float, prod: float) -> float:
    """Left side of the relation tying e_1 e_2 to e_1 + e_2 (zero when satisfied)."""
    d, e, al, q = p.delta, p.epsilon, p.alpha, p.q
    a = al / e
    return 2 * prod + (e - d - q - a * (1 + d - e)) * s - (al + 2 * al * d + e * (d + e)) / e


def a_product_order2(p: CheParams, s: float) -> float:
    d, e, al, q = p.delta, p.epsilon, p.alpha, p.q
    a = al / e
    return ((al + 2 * al * d + e * (d + e)) / e - (e - d - q - a * (1 + d - e)) * s) / 2


# ---------------------------------------------------------------- family C

def c_q_order0(p: CheParams) -> float:
    return (1 - p.gamma) * p.delta + p.epsilon


def c_e1_order1(p: CheParams) -> float:
    g, d, e, q = p.gamma, p.delta, p.epsilon, p.q
    return q - 2 + g - d + g * d - e


def c_q_poly_order1(p: CheParams) -> RealPoly:
    g, d, e = p.gamma, p.delta, p.epsilon
    c1 = g - 2 - 3 * d + 2 * g * d - 3 * e
    c0 = (2 - 3 * g + g * g) * d * d + 2 * e * (2 - g + e) + d * (2 + g * g + 4 * e - 3 * g - 3 * g * e)
    return RealPoly([c0, c1, 1.0])


def c_sum_relation_order2(p: CheParams, s: float) -> float:
    g, d, e, q = p.gamma, p.delta, p.epsilon, p.q
    return s + 2 * q - 7 + 3 * g + 3 * d - e


def c_sum_order2(p: CheParams) -> float:
    g, d, e, q = p.gamma, p.delta, p.epsilon, p.q
    return -(2 * q - 7 + 3 * g + 3 * d - e)


def c_product_relation_order2(p: CheParams, s: float, prod: float) -> float:
    g, d, e, q = p.gamma, p.delta, p.epsilon, p.q
    return 2 * prod + (1 - q - g - g * d + 2 * d + 2 * e) * s + 2 * q - 7 + 3 * g + 3 * d - e


def c_product_order2(p: CheParams, s: float) -> float:
    g, d, e, q = p.gamma, p.delta, p.epsilon, p.q
    return -((1 - q - g - g * d + 2 * d + 2 * e) * s + 2 * q - 7 + 3 * g + 3 * d - e) / 2


def c_q_poly_order2(p: CheParams) -> RealPoly:
    g, d, e = p.gamma, p.delta, p.epsilon
    c2 = 3 * g * (1 + d) - 2 * (4 + 3 * d + 3 * e)
    c1 = (12 + 26 * d + g * g * (2 + 3 * d * (2 + d)) + 36 * e + 11 * (d + e) ** 2
          - 2 * g * (5 + 7 * e + d * (13 + 6 * d + 6 * e)))
    c0 = ((g - 1) * (g - 2) * (g - 3) * d * (1 + d) * (2 + d)
          - 2 * (9 * (1 + d) * (2 + d) + g * g * (3 + d * (7 + 3 * d)) - g * (15 + d * (29 + 11 * d))) * e
          + (-18 * (2 + d) + g * (15 + 11 * d)) * e * e
          - 6 * e ** 3)
    return RealPoly([c0, c1, c2, 1.0])


# ---------------------------------------------------------------- family D

def d_q_poly_order1(p: CheParams) -> RealPoly:
    return RealPoly([p.alpha, 1 - p.delta, 1.0])


def d_e1_order1(p: CheParams) -> float:
    return -p.alpha / p.q


def d_sum_order2(p: CheParams) -> float:
    return -(p.q + 3 - 2 * p.delta)


def d_product_relation_order2(p: CheParams, s: float, prod: float) -> float:
    return p.q * (prod - p.alpha) + 2 * p.alpha * (p.delta - 1)


def d_product_order2(p: CheParams) -> float:
    return p.alpha - 2 * p.alpha * (p.delta - 1) / p.q


def d_q_poly_order2(p: CheParams) -> RealPoly:
    d, al = p.delta, p.alpha
    return RealPoly([4 * al * (d - 1), 4 - 4 * al - 6 * d + 2 * d * d, 4 - 3 * d, 1.0])


# ---------------------------------------------------------------- dispatch

def q_polynomial(f: ExpansionFamily, p: CheParams, N: int) -> RealPoly:
    table = {
        (F.A, 1): a_q_poly_order1, (F.A, 2): a_q_poly_order2,
        (F.C, 1): c_q_poly_order1, (F.C, 2): c_q_poly_order2,
        (F.D, 1): d_q_poly_order1, (F.D, 2): d_q_poly_order2,
    }
    return table[(ExpansionFamily(f), N)](p)


def _pair(s: float, prod: float) -> list[complex]:
    root = cmath.sqrt(s * s - 4 * prod)
    return [(s - root) / 2, (s + root) / 2]


def e_values(f: ExpansionFamily, p: CheParams, N: int) -> list[complex] | None:
    """Auxiliary parameters for the q carried by ``p``; None if undefined (e.g. q = 0)."""
    f = ExpansionFamily(f)
    try:
        if N == 1:
            fn = {F.A: a_e1_order1, F.C: c_e1_order1, F.D: d_e1_order1}[f]
            return [complex(fn(p))]
        if f is F.A:
            s = a_sum_order2(p)
            return _pair(s, a_product_order2(p, s))
        if f is F.C:
            s = c_sum_order2(p)
            return _pair(s, c_product_order2(p, s))
        return _pair(d_sum_order2(p), d_product_order2(p))
    except ZeroDivisionError:
        return None
