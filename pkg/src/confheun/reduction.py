"""Two-term reductions of the three-term recurrences.

The ansatz

    c_n / c_{n-1} = (base ratio of the family) * prod_k (e_k + n) / (e_k - 1 + n)

is substituted into R_n c_n + Q_{n-1} c_{n-1} + P_{n-2} c_{n-2} = 0. After
clearing denominators each family leaves a polynomial in n of the shape

    T_0(n) E(n) + Q_{n-1}(n) E(n-1) + T_2(n) E(n-2),   E(n) = prod_k (n + e_k),

whose coefficients must all vanish. The family restriction removes the top
coefficient; the remaining N+1 coefficient equations fix q and e_1..e_N.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
import scipy.linalg

from . import published
from .che import CheParams
from .kernels import TOL_COEFF, TOL_ROOT, RealPoly, is_nonpositive_integer, poly_roots, real_roots
from .recurrence import CoefficientSeries, ExpansionError, ExpansionFamily, validate_family

ADMISSIBILITY_TOL = 1e-8
NEWTON_MAX_ITER = 200
NEWTON_TOL = 1e-11
NEWTON_STARTS = 64
NEWTON_BOX = 5.0
DEDUP_TOL = 1e-6

F = ExpansionFamily


@dataclass(frozen=True)
class ReductionSpec:
    family: ExpansionFamily
    N: int
    e: tuple[float, ...]
    q: float
    params: CheParams

    def __post_init__(self):
        object.__setattr__(self, "family", ExpansionFamily(self.family))
        object.__setattr__(self, "e", tuple(float(v) for v in self.e))
        if len(self.e) != self.N:
            raise ValueError(f"expected {self.N} auxiliary parameters, got {len(self.e)}")

    def as_dict(self) -> dict:
        return {"family": self.family.value, "N": self.N, "q": self.q,
                "e": list(self.e), "params": self.params.as_dict()}


@dataclass
class ReductionOutcome:
    """Specs found by a solver, plus the roots that were turned away and why."""

    specs: list[ReductionSpec] = field(default_factory=list)
    rejected: list[dict] = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)

    def __iter__(self):
        return iter(self.specs)

    def __len__(self) -> int:
        return len(self.specs)

    def __getitem__(self, i: int) -> ReductionSpec:
        return self.specs[i]


# ---------------------------------------------------------------- restriction

def apply_restriction(f: ExpansionFamily, p: CheParams, N: int) -> CheParams:
    """Overwrite the dependent parameter so that the top coefficient vanishes.

    A: gamma = alpha/eps + 1 + N;  C: delta = alpha/eps - 1 - N;  D: gamma = -N.
    """
    f = ExpansionFamily(f)
    if N < 0:
        raise ValueError("order N must be nonnegative")
    if f is F.B:
        raise ExpansionError("family B admits no two-term reduction; "
                             "use check_family_b_obstruction")
    if f in (F.A, F.C) and p.epsilon == 0.0:
        raise ExpansionError(f"family {f.value} requires ε ≠ 0")
    if f is F.A:
        return p.with_(gamma=p.alpha / p.epsilon + 1 + N)
    if f is F.C:
        return p.with_(delta=p.alpha / p.epsilon - 1 - N)
    return p.with_(gamma=float(-N))


def is_admissible_e(ek: float, tol: float = ADMISSIBILITY_TOL) -> bool:
    return not is_nonpositive_integer(ek, tol)


# ---------------------------------------------------------------- ratios

def _e_ratio(e: Sequence[float], n: int) -> float:
    r = 1.0
    for ek in e:
        den = ek - 1 + n
        if den == 0.0:
            raise ZeroDivisionError(f"e_k - 1 + n vanishes at n={n}")
        r *= (ek + n) / den
    return r


def ansatz_ratio(spec: ReductionSpec, n: int) -> float:
    """c_n / c_{n-1} under the two-term ansatz."""
    if n < 1:
        raise ValueError("ratio is defined for n >= 1")
    p, N = spec.params, spec.N
    g, d = p.gamma, p.delta
    if spec.family is F.A:
        a = p.alpha / p.epsilon
        num = (a - 1 + n) * (d - 1 + n)
        den = (g + d - 1 + n) * n
    elif spec.family is F.C:
        num = (d - 1 + n) * (g - 2 - N + n)
        den = (g + d - 1 + n) * n
    elif spec.family is F.D:
        num = p.alpha
        den = n * (d - N - 1 + n)
    else:
        raise ExpansionError("family B has no reduction ansatz")
    if den == 0.0:
        raise ZeroDivisionError(f"ansatz ratio denominator vanishes at n={n}")
    return num / den * _e_ratio(spec.e, n)


# ---------------------------------------------------------------- constraint polynomial

EFactory = Callable[[int], RealPoly]


def _shifted_products(e: Sequence[float]) -> EFactory:
    return lambda s: RealPoly.product_of_shifts([ek + s for ek in e])


def _constraint_terms(f: ExpansionFamily, p: CheParams, efac: EFactory) -> list[RealPoly]:
    """The three cleared terms T_0 E(n), Q_{n-1} E(n-1), T_2 E(n-2) as polynomials in n."""
    f = ExpansionFamily(f)
    g, d, e, al, q = p.gamma, p.delta, p.epsilon, p.alpha, p.q
    nm1 = RealPoly.linear(-1.0)
    if f is F.A:
        a = al / e
        T0 = -(RealPoly.linear(a - 1) * RealPoly.linear(d - 1))
        Qm = (-q + al) + RealPoly.linear(g + d + e - 2) * nm1
        T2 = -e * nm1
    elif f is F.B:
        a = al / e
        T0 = RealPoly.linear(a - 1) * RealPoly.linear(d - 1)
        Qm = (-q) + g * nm1 + RealPoly.linear(a - 1) * RealPoly([e - d + 2, -2.0])
        T2 = RealPoly.linear(a - g - 1) * nm1
    elif f is F.C:
        a = al / e
        # (g + d - a - 1 + n) reduces to (g - 2 - N + n) once delta is restricted
        T0 = -(RealPoly.linear(d - 1) * RealPoly.linear(g + d - a - 1))
        Qm = (-q + al - d * e) - (1 - g - d + e) * nm1 + nm1 * nm1
        T2 = e * nm1
    else:
        T0 = RealPoly.const(-al)
        Qm = (-q + al) + nm1 * RealPoly.linear(g + d - 2)
        T2 = -(nm1 * RealPoly.linear(d - 2))
    return [T0 * efac(0), Qm * efac(-1), T2 * efac(-2)]


def build_constraint_poly(f: ExpansionFamily, p: CheParams, e: Sequence[float]) -> RealPoly:
    """Polynomial in n whose coefficients vanish iff the ansatz satisfies the recurrence."""
    terms = _constraint_terms(f, p, _shifted_products(e))
    return terms[0] + terms[1] + terms[2]


def constraint_scale(f: ExpansionFamily, p: CheParams, e: Sequence[float]) -> float:
    """Magnitude of the individual terms before cancellation."""
    terms = _constraint_terms(f, p, _shifted_products(e))
    return max(1.0, max(t.scale() for t in terms))


def constraint_residual(f: ExpansionFamily, p: CheParams, e: Sequence[float]) -> float:
    """max_m |A_m| relative to the term scale."""
    poly = build_constraint_poly(f, p, e)
    return poly.scale() / constraint_scale(f, p, e)


def check_family_b_obstruction(p: CheParams, e: Sequence[float]) -> float:
    """Coefficient of n^(N+1) in the family-B constraint polynomial.

    It always equals epsilon, so for eps != 0 the ansatz can never close.
    """
    poly = build_constraint_poly(F.B, p, e)
    return poly[len(e) + 1]


# ---------------------------------------------------------------- elimination

def _linear_system(f: ExpansionFamily, p: CheParams, N: int) -> tuple[np.ndarray, np.ndarray]:
    """(K0, K1) with A_m = sum_j sigma_j [K0 + q K1]_{mj}, m, j = 0..N.

    sigma_j are the elementary symmetric functions of e (sigma_0 = 1); this uses
    E(n+s) = sum_j sigma_j (n+s)^(N-j).
    """
    def column(pq: CheParams, j: int) -> list[float]:
        efac = lambda s: RealPoly.product_of_shifts([float(s)] * (N - j))
        terms = _constraint_terms(f, pq, efac)
        poly = terms[0] + terms[1] + terms[2]
        return [poly[m] for m in range(N + 1)]

    p0 = p.with_(q=0.0)
    p1 = p.with_(q=1.0)
    M0 = np.array([column(p0, j) for j in range(N + 1)]).T
    M1 = np.array([column(p1, j) for j in range(N + 1)]).T
    return M0, M1 - M0


def derived_q_polynomial(f: ExpansionFamily, p: CheParams, N: int) -> RealPoly:
    """Monic polynomial in q whose roots admit a reduction of order N.

    ``p`` must already carry the family restriction.
    """
    K0, K1 = _linear_system(f, p, N)
    A = -np.linalg.solve(K1, K0)
    return RealPoly(np.real(np.poly(A))[::-1])


def derived_symmetric(f: ExpansionFamily, p: CheParams, N: int, q: float) -> np.ndarray:
    """sigma_1..sigma_N of the auxiliary parameters for a given q (so N = 2 gives sum, product)."""
    K0, K1 = _linear_system(f, p, N)
    K = K0 + q * K1
    sigma, *_ = np.linalg.lstsq(K[:, 1:], -K[:, 0], rcond=None)
    return sigma


def derived_e(f: ExpansionFamily, p: CheParams, N: int, q: float) -> list[complex]:
    """Auxiliary parameters for a given q, from the linear system in sigma."""
    if N == 0:
        return []
    sigma = derived_symmetric(f, p, N, q)
    # prod (t - e_k) = sum_j (-1)^j sigma_j t^(N-j)
    mono = [1.0] + [(-1) ** (j + 1) * sigma[j] for j in range(N)]
    if N == 1:
        return [complex(sigma[0])]
    return poly_roots(RealPoly(mono[::-1]))


def solve_reduction_elimination(f: ExpansionFamily, p: CheParams, N: int) -> ReductionOutcome:
    """Any-order reduction via the q-pencil eigenvalues; independent of Newton."""
    f = ExpansionFamily(f)
    pr = apply_restriction(f, p, N)
    validate_family(f, pr)
    out = ReductionOutcome()
    if N == 0:
        qs = [_q_order_zero(f, pr)]
    else:
        K0, K1 = _linear_system(f, pr, N)
        vals = scipy.linalg.eigvals(K0, -K1)
        qs = []
        for v in vals:
            if abs(v.imag) <= 1e-9 * max(1.0, abs(v)):
                qs.append(float(v.real))
            else:
                out.rejected.append({"q": [v.real, v.imag], "reason": "complex q"})
        qs.sort()
    for q in qs:
        es = derived_e(f, pr.with_(q=q), N, q) if N else []
        _accept(out, f, N, pr.with_(q=q), es)
    _finish(out)
    return out


# ---------------------------------------------------------------- direct solver

def _q_order_zero(f: ExpansionFamily, pr: CheParams) -> float:
    if f is F.A:
        return published.a_q_order0(pr)
    if f is F.C:
        return published.c_q_order0(pr)
    return 0.0


def _vanishing_family_a(f: ExpansionFamily, pr: CheParams, N: int) -> bool:
    d = pr.delta
    return f is F.A and d == round(d) and d < -N


def _accept(out: ReductionOutcome, f: ExpansionFamily, N: int, pq: CheParams,
            es: Sequence[complex], tol: float = TOL_COEFF) -> ReductionSpec | None:
    q = pq.q
    if any(abs(complex(ek).imag) > 1e-9 * max(1.0, abs(ek)) for ek in es):
        out.rejected.append({"q": q, "e": [[complex(ek).real, complex(ek).imag] for ek in es],
                             "reason": "complex auxiliary parameters"})
        return None
    er = sorted(complex(ek).real for ek in es)
    bad = [ek for ek in er if not is_admissible_e(ek)]
    if bad:
        out.rejected.append({"q": q, "e": er, "reason": "e_k is zero or a negative integer"})
        return None
    if _vanishing_family_a(f, pq, N):
        out.rejected.append({"q": q, "e": er,
                             "reason": "integer δ < −N: the solution vanishes identically"})
        return None
    res = constraint_residual(f, pq, er)
    if res > tol:
        out.rejected.append({"q": q, "e": er, "reason": f"constraint residual {res:.3e}"})
        return None
    spec = ReductionSpec(f, N, tuple(er), q, pq)
    out.specs.append(spec)
    return spec


def _finish(out: ReductionOutcome) -> None:
    if not out.specs:
        out.diagnostics.append("no admissible real reduction found")


def _poly_agree(a: RealPoly, b: RealPoly, tol: float = 1e-9) -> bool:
    da, db = a.degree(), b.degree()
    if da != db or da < 0:
        return False
    an = [c / a[da] for c in a.coeffs[: da + 1]]
    bn = [c / b[db] for c in b.coeffs[: db + 1]]
    scale = max(1.0, max(abs(c) for c in an))
    return max(abs(x - y) for x, y in zip(an, bn)) <= tol * scale


def solve_reduction(f: ExpansionFamily, p: CheParams, N: int,
                    tol_root: float = TOL_ROOT) -> ReductionOutcome:
    """Reductions of order N = 0, 1, 2 from the published closed-form systems.

    Each published relation is checked against the system derived from the
    constraint polynomial. When they disagree the derived relation is used and
    the disagreement is recorded in ``diagnostics``.
    """
    f = ExpansionFamily(f)
    if N not in (0, 1, 2):
        raise ValueError("closed-form systems exist for N = 0, 1, 2; use solve_reduction_general")
    pr = apply_restriction(f, p, N)
    validate_family(f, pr)
    out = ReductionOutcome()
    if N == 0:
        _accept(out, f, 0, pr.with_(q=_q_order_zero(f, pr)), [])
        _finish(out)
        return out

    qpoly = published.q_polynomial(f, pr, N)
    if not _poly_agree(qpoly, derived_q_polynomial(f, pr, N)):
        out.diagnostics.append(
            f"published q-polynomial for family {f.value}, N={N} disagrees with the "
            "constraint polynomial; using the derived q-polynomial")
        qpoly = derived_q_polynomial(f, pr, N)
    qs, cplx = real_roots(qpoly, tol_imag=tol_root)
    for r in cplx:
        out.rejected.append({"q": [r.real, r.imag], "reason": "complex q"})
    e_warned = False
    for q in qs:
        pq = pr.with_(q=q)
        es = published.e_values(f, pq, N)
        if es is None or _e_relation_fails(f, pq, N, es):
            if not e_warned:
                out.diagnostics.append(
                    f"published e-relations for family {f.value}, N={N} do not close the "
                    "constraint polynomial; using the derived relations")
                e_warned = True
            es = derived_e(f, pq, N, q)
        _accept(out, f, N, pq, es)
    _finish(out)
    return out


def _e_relation_fails(f, pq, N, es) -> bool:
    if any(abs(complex(ek).imag) > 1e-9 * max(1.0, abs(ek)) for ek in es):
        # complex pair: compare symmetric functions with the derived ones instead
        ref = derived_e(f, pq, N, pq.q)
        return not np.allclose(sorted(es, key=lambda z: (z.real, z.imag)),
                               sorted(ref, key=lambda z: (z.real, z.imag)),
                               rtol=1e-6, atol=1e-8)
    return constraint_residual(f, pq, [complex(ek).real for ek in es]) > TOL_COEFF


# ---------------------------------------------------------------- Newton solver

def _elementary_symmetric(e: np.ndarray) -> np.ndarray:
    """sigma_0..sigma_N of each row of e (shape (S, N)), so prod (n + e_k) = sum_j sigma_j n^(N-j)."""
    S, N = e.shape
    sig = np.zeros((S, N + 1))
    sig[:, 0] = 1.0
    for k in range(N):
        sig[:, 1:k + 2] = sig[:, 1:k + 2] + e[:, k:k + 1] * sig[:, 0:k + 1]
    return sig


class _NewtonSystem:
    """A_0..A_N and their Jacobian in (q, e_1..e_N), evaluated for a batch of points.

    The coefficients are bilinear: A = (K0 + q K1) sigma(e).
    """

    def __init__(self, f: ExpansionFamily, pr: CheParams, N: int):
        self.N = N
        self.K0, self.K1 = _linear_system(f, pr, N)

    def __call__(self, x: np.ndarray):
        N = self.N
        q, e = x[:, 0], x[:, 1:]
        K = self.K0[None] + q[:, None, None] * self.K1[None]
        sig = _elementary_symmetric(e)
        F_ = np.einsum("smj,sj->sm", K, sig)
        J = np.empty((x.shape[0], N + 1, N + 1))
        J[:, :, 0] = sig @ self.K1.T
        for k in range(N):
            dsig = np.zeros_like(sig)
            dsig[:, 1:] = _elementary_symmetric(np.delete(e, k, axis=1))
            J[:, :, 1 + k] = np.einsum("smj,sj->sm", K, dsig)
        scale = np.maximum(1.0, np.einsum("smj,sj->sm", np.abs(K), np.abs(sig)).max(axis=1))
        return F_, J, scale


def _solve_steps(J: np.ndarray, F_: np.ndarray) -> np.ndarray:
    dx = np.full(F_.shape, np.nan)
    for s in range(F_.shape[0]):
        try:
            dx[s] = np.linalg.solve(J[s], -F_[s])
        except np.linalg.LinAlgError:
            dx[s] = np.linalg.lstsq(J[s], -F_[s], rcond=None)[0]
    return dx


def _newton_batch(system: _NewtonSystem, x0: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Damped Newton from every row of x0; returns (points, converged mask).

    A step is halved while it fails to reduce the residual 2-norm. A start is
    dropped when it stalls (no decrease even at step 1e-4, three times), when
    its residual fails to halve over 25 iterations (typically creeping toward
    a real q whose e-pair is complex), or when it runs off to infinity.
    """
    x = x0.astype(float).copy()
    S = x.shape[0]
    F_, J, scale = system(x)
    active = np.ones(S, dtype=bool)
    done = np.zeros(S, dtype=bool)
    stalls = np.zeros(S, dtype=int)
    checkpoint = np.linalg.norm(F_, axis=1)
    for it in range(NEWTON_MAX_ITER):
        conv = active & (np.max(np.abs(F_), axis=1) <= NEWTON_TOL * scale)
        done |= conv
        active &= ~conv
        if it and it % 25 == 0:
            now = np.linalg.norm(F_, axis=1)
            active &= ~(now > 0.5 * checkpoint)
            checkpoint = now
        if not active.any():
            break
        idx = np.flatnonzero(active)
        dx = _solve_steps(J[idx], F_[idx])
        ok = np.all(np.isfinite(dx), axis=1)
        active[idx[~ok]] = False
        idx, dx = idx[ok], dx[ok]
        norm = np.linalg.norm(F_[idx], axis=1)
        lam = np.ones(len(idx))
        pending = np.ones(len(idx), dtype=bool)
        xn = x[idx].copy()
        Fn, Jn, sn = F_[idx].copy(), J[idx].copy(), scale[idx].copy()
        while pending.any():
            pi = np.flatnonzero(pending)
            trial = x[idx[pi]] + lam[pi, None] * dx[pi]
            Ft, Jt, st = system(trial)
            better = np.linalg.norm(Ft, axis=1) < norm[pi]
            give_up = ~better & (lam[pi] * 0.5 < 1e-4)
            take = better | give_up
            xn[pi[take]], Fn[pi[take]], Jn[pi[take]], sn[pi[take]] = \
                trial[take], Ft[take], Jt[take], st[take]
            stalls[idx[pi[better]]] = 0
            stalls[idx[pi[give_up]]] += 1
            pending[pi[take]] = False
            lam[pi[~take]] *= 0.5
        x[idx], F_[idx], J[idx], scale[idx] = xn, Fn, Jn, sn
        active &= ~(stalls >= 3)
        active &= np.max(np.abs(x), axis=1) <= 1e12
    done |= active & (np.max(np.abs(F_), axis=1) <= NEWTON_TOL * scale)
    return _polish(system, x, done), done


def _polish(system: _NewtonSystem, x: np.ndarray, mask: np.ndarray, steps: int = 3) -> np.ndarray:
    """A few undamped steps on converged points, kept only while they help."""
    idx = np.flatnonzero(mask)
    if idx.size == 0:
        return x
    xs = x[idx].copy()
    F_, J, _ = system(xs)
    for _ in range(steps):
        dx = _solve_steps(J, F_)
        trial = xs + np.nan_to_num(dx)
        Ft, Jt, _ = system(trial)
        better = np.linalg.norm(Ft, axis=1) < np.linalg.norm(F_, axis=1)
        xs[better], F_[better], J[better] = trial[better], Ft[better], Jt[better]
    x[idx] = xs
    return x


def solve_reduction_general(f: ExpansionFamily, p: CheParams, N: int,
                            starts: int = NEWTON_STARTS, seed: int = 0) -> ReductionOutcome:
    """Reductions of any order N >= 1 by multi-start damped Newton on (q, e_1..e_N).

    Half the starts are drawn uniformly from [-5, 5]^(N+1), the rest from a cube
    whose half-width grows with the parameter magnitudes (large alpha pushes
    roots of q far out). The generator is seeded, so the output is reproducible
    for a fixed ``seed``.
    """
    f = ExpansionFamily(f)
    if N < 1:
        raise ValueError("general solver needs N >= 1")
    pr = apply_restriction(f, p, N)
    validate_family(f, pr)
    rng = np.random.default_rng(seed)
    wide = max(NEWTON_BOX, abs(pr.gamma) + abs(pr.delta) + abs(pr.epsilon) + abs(pr.alpha) + N)
    near = starts - starts // 2
    x0 = np.vstack([rng.uniform(-NEWTON_BOX, NEWTON_BOX, size=(near, N + 1)),
                    rng.uniform(-wide, wide, size=(starts - near, N + 1))])
    xs, conv = _newton_batch(_NewtonSystem(f, pr, N), x0)
    out = ReductionOutcome()
    found: list[np.ndarray] = []
    for x in xs[conv]:
        key = np.concatenate([[x[0]], np.sort(x[1:])])
        if any(np.max(np.abs(key - k)) < DEDUP_TOL * max(1.0, np.max(np.abs(k))) for k in found):
            continue
        found.append(key)
    found.sort(key=lambda k: tuple(k))
    for key in found:
        _accept(out, f, N, pr.with_(q=float(key[0])), list(key[1:]))
    if not conv.any():
        out.diagnostics.append(f"none of {starts} Newton starts converged")
    _finish(out)
    return out


# ---------------------------------------------------------------- closed form

def closed_form_coeffs(spec: ReductionSpec, nmax: int) -> CoefficientSeries:
    """c_0..c_nmax from the gamma-function closed form, as Pochhammer quotients.

    A: c_n = (delta)_n (alpha/eps)_n / (n! (alpha/eps + delta + 1 + N)_n) prod (e_k+n)/e_k
    C: c_n = (delta)_n (gamma - 1 - N)_n / (n! (gamma + delta)_n)    prod (e_k+n)/e_k
    D: c_n = alpha^n / (n! (delta - N)_n)                             prod (e_k+n)/e_k
    The Pochhammer quotient is accumulated factor by factor to avoid overflow.
    """
    p, N, fam = spec.params, spec.N, spec.family
    d = p.delta
    if fam is F.A:
        a = p.alpha / p.epsilon
        num = [d, a]
        den = [a + d + 1 + N]
        mult = 1.0
    elif fam is F.C:
        num = [d, p.gamma - 1 - N]
        den = [p.gamma + d]
        mult = 1.0
    elif fam is F.D:
        num = []
        den = [d - N]
        mult = p.alpha
    else:
        raise ExpansionError("family B has no closed form")
    if any(ek == 0.0 for ek in spec.e):
        raise ExpansionError("auxiliary parameter e_k = 0")
    c = [1.0]
    quot = 1.0
    terminated_at = None
    for n in range(1, nmax + 1):
        fac = mult / n
        for x in num:
            fac *= x + n - 1
        for x in den:
            b = x + n - 1
            if b == 0.0:
                if quot * fac == 0.0:
                    fac = 0.0
                    break
                raise ExpansionError(f"denominator Pochhammer vanishes at n={n}")
            fac /= b
        quot *= fac
        if quot == 0.0:
            if terminated_at is None:
                terminated_at = n
            c.append(0.0)
            continue
        eprod = 1.0
        for ek in spec.e:
            eprod *= (ek + n) / ek
        c.append(quot * eprod)
    return CoefficientSeries(c, "closed_form", terminated_at)


def predicted_termination(spec: ReductionSpec) -> int | None:
    """First index at which a numerator Pochhammer of the closed form vanishes."""
    p, N = spec.params, spec.N
    if spec.family is F.A:
        tops = [p.delta, p.alpha / p.epsilon]
    elif spec.family is F.C:
        tops = [p.delta, p.gamma - 1 - N]
    else:
        return None
    idx = [1 - int(round(x)) for x in tops if is_nonpositive_integer(x)]
    return min(idx) if idx else None

