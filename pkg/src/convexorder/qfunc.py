"""The threshold profile q(t) entering the sharp-bound relation.

q solves the initial value problem  d/dt ( t^(1/nu) q(t) ) =
t^(1/nu - 1) * integral_0^1 core(s t) s^(1/mu - 1) ds / (mu nu)  with
q(0) = 1, where

    core(x) = ((1 - delta) - (1 + delta) x) / ((1 - delta) (1 + x)^3).

Three interchangeable representations are implemented and cross-validated:

  * the double integral  q(t) = integral integral core(s w t)
    s^(1/mu-1) w^(1/nu-1) ds dw / (mu nu)  (gamma > 0),
  * the single integral  q_alpha(t) = integral core(s t) s^(1/alpha-1) ds
    / alpha  (gamma = 0),
  * the power series  q(t) = 1 + sum_(n>=1) (-1)^n (n+1)(n+1-delta)
    t^n / ((1-delta)(n nu + 1)(n mu + 1)).

The weighted integral  I = integral_0^1 lambda(t) q(t) dt  that defines the
sharp bound is computed termwise through the kernel moments (with Euler
acceleration of the alternating tail) and cross-checked against direct
quadrature of lambda * q.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple
import warnings

import numpy as np

from .acceleration import euler_alternating_sum
from .errors import CrossCheckFailure, DomainError, RegimeError, TruncationWarning
from .kernels import Kernel
from .params import MuNu
from .quadrature import adaptive, integrate_2d_weighted

_SERIES_DIRECT_CUTOFF = 0.9   # direct summation below, Euler acceleration above
_CROSSCHECK_HARD = 1e-6       # |termwise - quadrature| beyond this is an error


@dataclass(frozen=True)
class QSpec:
    """Factorization pair plus the target convexity order delta."""

    mu_nu: MuNu
    delta: float

    def __post_init__(self):
        if not (0.0 <= self.delta <= 0.5):
            raise DomainError(f"delta must lie in [0, 1/2], got {self.delta}")


class SeriesSum(NamedTuple):
    value: float
    error_estimate: float


class IntegralWithCheck(NamedTuple):
    value: float
    crosscheck_residual: float


def _core(x, delta):
    return ((1.0 - delta) - (1.0 + delta) * x) / ((1.0 - delta) * (1.0 + x) ** 3)


def _q_integral_grid(mu: float, nu: float, delta: float, ts: np.ndarray, tol: float):
    """Double-integral q at many t simultaneously (shared panel subdivision)."""
    ts = np.asarray(ts, dtype=float)
    state = {"err": 0.0}

    def outer(v):
        vn = v ** nu

        def inner(u):
            x = ts[:, None, None] * vn[None, :, None] * (u ** mu)[None, None, :]
            return _core(x, delta)

        vals, ierr, _ = adaptive(inner, 0.0, 1.0, 0.5 * tol)
        state["err"] = max(state["err"], ierr)
        return vals

    vals, oerr, _ = adaptive(outer, 0.0, 1.0, 0.5 * tol)
    return vals


def _q_alpha_grid(alpha: float, delta: float, ts: np.ndarray, tol: float):
    ts = np.asarray(ts, dtype=float)

    def f(u):
        return _core(ts[:, None] * (u ** alpha)[None, :], delta)

    vals, _, _ = adaptive(f, 0.0, 1.0, tol)
    return vals


def q_integral(spec: QSpec, t: float, tol: float = 1e-10) -> float:
    """q(t) from the double-integral representation (gamma > 0 branch).

    The power weights are absorbed exactly by s = u^mu, w = v^nu before the
    tensor quadrature, so the integrand is smooth on the unit square.
    """
    mu, nu = spec.mu_nu.mu, spec.mu_nu.nu
    if mu <= 0.0 or nu <= 0.0:
        raise RegimeError(
            f"double-integral q requires mu, nu > 0 (gamma > 0), got ({mu}, {nu}); "
            "use q_alpha_integral for gamma = 0"
        )
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"t must lie in [0, 1], got {t}")
    res = integrate_2d_weighted(
        lambda s, w: _core(s * w * t, spec.delta), mu, nu, tol=tol * mu * nu
    )
    return res.value / (mu * nu)


def q_alpha_integral(alpha: float, delta: float, t: float, tol: float = 1e-11) -> float:
    """q(t) for gamma = 0 from the single-integral representation."""
    if alpha <= 0.0:
        raise RegimeError(f"alpha must be positive, got {alpha}")
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"t must lie in [0, 1], got {t}")
    vals = _q_alpha_grid(alpha, delta, np.array([t]), tol)
    return float(vals[0])


def _series_terms(mu: float, nu: float, delta: float, t: float, n_terms: int):
    n = np.arange(1, n_terms + 1, dtype=float)
    mag = (n + 1.0) * (n + 1.0 - delta) / ((1.0 - delta) * (n * nu + 1.0) * (n * mu + 1.0))
    return ((-1.0) ** n) * mag * t ** n


def q_series(spec: QSpec, t: float, n_terms: int = 256) -> SeriesSum:
    """Partial sum of the power series for q, with Euler acceleration of the
    alternating tail for t > 0.9 (required at t = 1, where the terms only
    approach a constant).  Returns the value and an absolute error estimate."""
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"series evaluation requires t in [0, 1], got {t}")
    mu, nu = spec.mu_nu.mu, spec.mu_nu.nu
    if t == 0.0:
        return SeriesSum(1.0, 0.0)
    terms = _series_terms(mu, nu, delta=spec.delta, t=t, n_terms=n_terms)
    if t <= _SERIES_DIRECT_CUTOFF:
        value = 1.0 + float(terms.sum())
        est = abs(terms[-1]) * t / (1.0 - t)
    else:
        tail_value, est = euler_alternating_sum(terms)
        value = 1.0 + tail_value
    if est > 1e-9:
        warnings.warn(
            f"series tail estimate {est:.3e} exceeds 1e-9 at t = {t}",
            TruncationWarning,
            stacklevel=2,
        )
    return SeriesSum(value, est)


def lambda_q_integral(
    kernel: Kernel,
    spec: QSpec,
    tol: float = 2e-9,
    n_terms: int = 512,
) -> IntegralWithCheck:
    """I = integral_0^1 lambda(t) q(t) dt, computed two independent ways.

    Route (a), the returned value: termwise through the kernel moments,

        I = 1 + sum_(n>=1) (-1)^n (n+1)(n+1-delta) tau_n
                / ((1-delta)(n nu + 1)(n mu + 1)),

    with Euler acceleration of the alternating tail.  Route (b): adaptive
    quadrature of lambda(t) * q(t) with q from its integral representation.
    Raises CrossCheckFailure when the two routes disagree by more than 1e-6.
    """
    mu, nu = spec.mu_nu.mu, spec.mu_nu.nu
    delta = spec.delta
    n = np.arange(1, n_terms + 1, dtype=float)
    tau = np.asarray(kernel.moments(n), dtype=float)
    terms = ((-1.0) ** n) * (n + 1.0) * (n + 1.0 - delta) * tau / (
        (1.0 - delta) * (n * nu + 1.0) * (n * mu + 1.0)
    )
    tail, _ = euler_alternating_sum(terms)
    value_a = 1.0 + tail

    if mu > 0.0:
        q_of = lambda ts: _q_integral_grid(mu, nu, delta, ts, tol=0.5 * tol)
    else:
        q_of = lambda ts: _q_alpha_grid(nu, delta, ts, tol=0.5 * tol)
    value_b = float(kernel.integrate_against(q_of, tol=0.5 * tol))

    residual = abs(value_a - value_b)
    if residual > _CROSSCHECK_HARD:
        raise CrossCheckFailure(
            f"termwise moment route {value_a!r} and quadrature route {value_b!r} "
            f"disagree by {residual:.3e} (> {_CROSSCHECK_HARD})"
        )
    return IntegralWithCheck(value_a, residual)
