"""The single confluent Heun equation

    u'' + (gamma/z + delta/(z-1) + epsilon) u' + (alpha z - q) / (z (z-1)) u = 0

with its pointwise residual and a fixed-step RK4 integrator used as an
independent oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

DEFAULT_STEP = 1e-4


@dataclass(frozen=True)
class CheParams:
    gamma: float
    delta: float
    epsilon: float
    alpha: float
    q: float

    def __post_init__(self):
        for name in ("gamma", "delta", "epsilon", "alpha", "q"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"parameter {name} must be finite, got {v!r}")
            object.__setattr__(self, name, float(v))

    def with_(self, **changes: float) -> CheParams:
        return replace(self, **changes)

    def as_dict(self) -> dict[str, float]:
        return {"gamma": self.gamma, "delta": self.delta, "epsilon": self.epsilon,
                "alpha": self.alpha, "q": self.q}


@dataclass(frozen=True)
class SolutionSample:
    z: float
    u: float
    du: float


def _check_regular(z: float) -> None:
    if z == 0.0 or z == 1.0:
        raise ValueError(f"z={z!r} is a singular point of the equation")


def che_residual(p: CheParams, s: SolutionSample, d2u: float) -> float:
    z = s.z
    _check_regular(z)
    return (d2u
            + (p.gamma / z + p.delta / (z - 1.0) + p.epsilon) * s.du
            + (p.alpha * z - p.q) / (z * (z - 1.0)) * s.u)


def _rhs(p: CheParams, z: float, u: float, du: float) -> tuple[float, float]:
    d2u = -((p.gamma / z + p.delta / (z - 1.0) + p.epsilon) * du
            + (p.alpha * z - p.q) / (z * (z - 1.0)) * u)
    return du, d2u


def integrate_che(p: CheParams, z0: float, u0: float, du0: float, z1: float,
                  h: float = DEFAULT_STEP) -> SolutionSample:
    """Classical RK4 on (u, u') from z0 to z1 with a uniform step close to ``h``.

    The step is shrunk so that an integer number of steps lands on z1.
    """
    if not h > 0:
        raise ValueError("step h must be positive")
    lo, hi = min(z0, z1), max(z0, z1)
    if lo <= 0.0 <= hi or lo <= 1.0 <= hi:
        raise ValueError(f"interval [{lo}, {hi}] touches a singular point")
    if z1 == z0:
        return SolutionSample(z0, u0, du0)
    steps = max(1, math.ceil(abs(z1 - z0) / h - 1e-9))
    dz = (z1 - z0) / steps
    u, v = u0, du0
    for i in range(steps):
        z = z0 + i * dz
        k1u, k1v = _rhs(p, z, u, v)
        k2u, k2v = _rhs(p, z + 0.5 * dz, u + 0.5 * dz * k1u, v + 0.5 * dz * k1v)
        k3u, k3v = _rhs(p, z + 0.5 * dz, u + 0.5 * dz * k2u, v + 0.5 * dz * k2v)
        k4u, k4v = _rhs(p, z + dz, u + dz * k3u, v + dz * k3v)
        u += dz / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u)
        v += dz / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v)
    return SolutionSample(z1, u, v)
