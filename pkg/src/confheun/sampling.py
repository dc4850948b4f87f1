"""Random parameter sets for which a family's reduction of order N is well posed.

Free parameters are drawn from boxes that keep the closed-form Pochhammer
arguments positive, so coefficient sequences have no sign changes and the
recurrence comparison is well conditioned.
"""

from __future__ import annotations

import numpy as np

from .che import CheParams
from .recurrence import ExpansionFamily

F = ExpansionFamily


def _signed(rng: np.random.Generator, lo: float, hi: float) -> float:
    return float(rng.uniform(lo, hi) * rng.choice([-1.0, 1.0]))


def draw_params(family: ExpansionFamily, N: int, rng: np.random.Generator) -> CheParams:
    """Unrestricted parameters; the dependent one (γ for A and D, δ for C) is left at 0."""
    family = ExpansionFamily(family)
    if family is F.A:
        delta = float(rng.uniform(0.1, 3.0))
        eps = _signed(rng, 0.2, 3.0)
        ratio = float(rng.uniform(0.1, 3.0))
        return CheParams(0.0, delta, eps, ratio * eps, 0.0)
    if family is F.C:
        gamma = float(rng.uniform(0.1, 3.0))
        eps = _signed(rng, 0.2, 3.0)
        ratio = float(rng.uniform(N + 1.1, N + 4.0))
        return CheParams(gamma, 0.0, eps, ratio * eps, 0.0)
    if family is F.D:
        delta = float(rng.uniform(N + 0.1, N + 3.0))
        return CheParams(0.0, delta, 0.0, _signed(rng, 0.2, 3.0), 0.0)
    raise ValueError("family B admits no reductions")


def draw_unrestricted(rng: np.random.Generator, epsilon_zero: bool = False) -> CheParams:
    """Generic parameters from [-3, 3] with |ε| bounded away from 0 (or ε = 0)."""
    g, d, a, q = (float(x) for x in rng.uniform(-3.0, 3.0, size=4))
    eps = 0.0 if epsilon_zero else _signed(rng, 0.2, 3.0)
    return CheParams(g, d, eps, a, q)
