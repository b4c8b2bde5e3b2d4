"""Weight catalog for the integral transform and its admissibility checks.

A kernel is a nonnegative integrable weight lambda on (0, 1) normalized by
integral_0^1 lambda = 1.  The catalog carries closed forms for the moments
tau_n = integral lambda(t) t^n dt, for the tail integrals

    Lambda_nu(t) = integral_t^1 lambda(x) x^(-1/nu) dx,
    Pi_(mu,nu)(t) = integral_t^1 Lambda_nu(x) x^(1/nu - 1 - 1/mu) dx,

and for the first two derivatives of lambda.  Quadrature fallbacks absorb
every endpoint singularity by substitution before anything reaches the
adaptive integrator:

  * power weights t^a: t = w^(1/(1+a)) removes the weight exactly,
  * log-power weights t^a log(1/t)^(p-1): u = (1+a) log(1/t) maps the
    weight to the gamma density u^(p-1) e^(-u) / Gamma(p), and v = u^p
    absorbs the remaining u-singularity when p < 1,
  * custom samplers: t = e^(-u) with the domain truncated at t = 1e-12.

The admissibility checks are honest numerical versions of pointwise
inequalities on (0, 1): dense grids plus a 1e-9 slack, never symbolic proof.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.special import gammainc  # regularized lower incomplete gamma P(p, x)

from .errors import (
    ApproximateDerivativeWarning,
    DomainError,
    RegimeError,
)
from .params import MuNu
from .quadrature import adaptive

_FD_STEP = 1e-6          # central-difference step for custom kernels
_T_FLOOR = 1e-12         # domain truncation for custom samplers
_GRID_SLACK = 1e-9       # slack for grid inequality checks
_EQUAL_AB = 1e-8         # two-parameter kernels switch to the log branch here
_U_CAP_BASE = 60.0       # gamma-density truncation: tail < 1e-24 for p <= 10


def _stable_h(sigma: float, log_t: np.ndarray) -> np.ndarray:
    """(1 - t^sigma) / sigma, continuous through sigma = 0 (-> log(1/t))."""
    if sigma == 0.0:
        return -log_t
    return -np.expm1(sigma * log_t) / sigma


def _stable_g(sigma: float, big_l: np.ndarray) -> np.ndarray:
    """(L - (1 - e^(-sigma L))/sigma)/sigma with L = log(1/t), stable for small sigma L."""
    x = sigma * big_l
    small = np.abs(x) < 1e-4
    big_l2 = big_l * big_l
    series = big_l2 * (0.5 - x / 6.0 + x * x / 24.0)
    if sigma == 0.0:
        return 0.5 * big_l2
    with np.errstate(over="ignore", invalid="ignore"):
        direct = (x + np.expm1(-x)) / (sigma * sigma)
    return np.where(small, series, direct)


class Kernel:
    """Base class for transform weights; subclasses provide the closed forms."""

    kind = "abstract"

    # -- density and derivatives -------------------------------------------
    def density(self, t):
        raise NotImplementedError

    def density_d1(self, t):
        raise NotImplementedError

    def density_d2(self, t):
        raise NotImplementedError

    def value_at_one(self) -> float:
        raise NotImplementedError

    # -- moments ------------------------------------------------------------
    def moments(self, n):
        """tau_n = integral lambda(t) t^n dt for an integer array n (closed form)."""
        raise NotImplementedError

    # -- weighted integration ------------------------------------------------
    def integrate_against(self, f, lo=0.0, hi=1.0, tol=1e-10):
        """integral_lo^hi lambda(t) f(t) dt with the weight absorbed analytically.

        ``f`` must be numpy-vectorized; it may return arrays with leading axes
        (a family of integrals sharing one subdivision).
        """
        raise NotImplementedError

    # -- tail integral Lambda_nu ---------------------------------------------
    def lambda_tail(self, nu: float, t: np.ndarray) -> Optional[np.ndarray]:
        """Closed form of Lambda_nu(t) when available, else None."""
        return None

    def pi_tail_equal(self, nu: float, t: np.ndarray) -> Optional[np.ndarray]:
        """Closed form of integral_t^1 Lambda_nu(y)/y dy (mu = nu case), else None."""
        return None

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Bernardi(Kernel):
    """lambda(t) = (1+c) t^c, c > -1.  c = 0 is the Alexander weight, c = 1 Libera."""

    c: float
    kind = "bernardi"

    def __post_init__(self):
        if not self.c > -1.0:
            raise DomainError(f"bernardi weight requires c > -1, got {self.c}")

    def density(self, t):
        return (1.0 + self.c) * t ** self.c

    def density_d1(self, t):
        return (1.0 + self.c) * self.c * t ** (self.c - 1.0)

    def density_d2(self, t):
        return (1.0 + self.c) * self.c * (self.c - 1.0) * t ** (self.c - 2.0)

    def value_at_one(self) -> float:
        return 1.0 + self.c

    def moments(self, n):
        return (1.0 + self.c) / (np.asarray(n, dtype=float) + self.c + 1.0)

    def integrate_against(self, f, lo=0.0, hi=1.0, tol=1e-10):
        k = 1.0 + self.c
        value, err, _ = adaptive(
            lambda w: f(w ** (1.0 / k)), lo ** k, hi ** k, tol
        )
        return value

    def lambda_tail(self, nu, t):
        sigma = self.c + 1.0 - 1.0 / nu
        return (1.0 + self.c) * _stable_h(sigma, np.log(t))

    def pi_tail_equal(self, nu, t):
        sigma = self.c + 1.0 - 1.0 / nu
        return (1.0 + self.c) * _stable_g(sigma, np.log(1.0 / t))

    def to_json(self):
        return {"kind": "bernardi", "c": float(self.c)}


@dataclass(frozen=True)
class TwoParam(Kernel):
    """lambda(t) = (a+1)(b+1) t^a (1 - t^(b-a))/(b-a) for b != a,
    degenerating to (a+1)^2 t^a log(1/t) at b = a; a, b > -1."""

    a: float
    b: float
    kind = "two_param"

    def __post_init__(self):
        if not (self.a > -1.0 and self.b > -1.0):
            raise DomainError(f"two-parameter weight requires a, b > -1, got ({self.a}, {self.b})")

    @property
    def _log_branch(self) -> bool:
        # avoids the 0/0 in (1 - t^(b-a))/(b-a)
        return abs(self.b - self.a) < _EQUAL_AB

    def density(self, t):
        t = np.asarray(t, dtype=float)
        if self._log_branch:
            return (self.a + 1.0) ** 2 * t ** self.a * np.log(1.0 / t)
        k = (self.a + 1.0) * (self.b + 1.0) / (self.b - self.a)
        return k * (t ** self.a - t ** self.b)

    def density_d1(self, t):
        t = np.asarray(t, dtype=float)
        if self._log_branch:
            big_l = np.log(1.0 / t)
            return (self.a + 1.0) ** 2 * t ** (self.a - 1.0) * (self.a * big_l - 1.0)
        k = (self.a + 1.0) * (self.b + 1.0) / (self.b - self.a)
        return k * (self.a * t ** (self.a - 1.0) - self.b * t ** (self.b - 1.0))

    def density_d2(self, t):
        t = np.asarray(t, dtype=float)
        if self._log_branch:
            big_l = np.log(1.0 / t)
            a = self.a
            return (a + 1.0) ** 2 * t ** (a - 2.0) * (a * (a - 1.0) * big_l - (2.0 * a - 1.0))
        k = (self.a + 1.0) * (self.b + 1.0) / (self.b - self.a)
        return k * (
            self.a * (self.a - 1.0) * t ** (self.a - 2.0)
            - self.b * (self.b - 1.0) * t ** (self.b - 2.0)
        )

    def value_at_one(self) -> float:
        return 0.0

    def moments(self, n):
        n = np.asarray(n, dtype=float)
        if self._log_branch:
            return ((self.a + 1.0) / (n + self.a + 1.0)) ** 2
        return (self.a + 1.0) * (self.b + 1.0) / ((n + self.a + 1.0) * (n + self.b + 1.0))

    def integrate_against(self, f, lo=0.0, hi=1.0, tol=1e-10):
        ka = 1.0 + self.a
        if self._log_branch:
            value, err, _ = adaptive(
                lambda w: np.log(1.0 / w) * f(w ** (1.0 / ka)),
                max(lo ** ka, 1e-300), hi ** ka, tol,
            )
            return value
        kb = 1.0 + self.b
        pref = (self.a + 1.0) * (self.b + 1.0) / (self.b - self.a)
        va, _, _ = adaptive(lambda w: f(w ** (1.0 / ka)), lo ** ka, hi ** ka, tol * abs(ka / pref) / 2)
        vb, _, _ = adaptive(lambda w: f(w ** (1.0 / kb)), lo ** kb, hi ** kb, tol * abs(kb / pref) / 2)
        return pref * (va / ka - vb / kb)

    def lambda_tail(self, nu, t):
        log_t = np.log(t)
        if self._log_branch:
            sigma = self.a + 1.0 - 1.0 / nu
            big_l = -log_t
            x = sigma * big_l
            small = np.abs(x) < 1e-4
            series = big_l * big_l * (0.5 - x / 3.0 + x * x / 8.0)
            if sigma == 0.0:
                return (self.a + 1.0) ** 2 * 0.5 * big_l * big_l
            with np.errstate(over="ignore", invalid="ignore"):
                tsig = np.exp(sigma * log_t)
                direct = (1.0 - tsig) / sigma ** 2 + tsig * log_t / sigma
            return (self.a + 1.0) ** 2 * np.where(small, series, direct)
        k = (self.a + 1.0) * (self.b + 1.0) / (self.b - self.a)
        sa = self.a + 1.0 - 1.0 / nu
        sb = self.b + 1.0 - 1.0 / nu
        return k * (_stable_h(sa, log_t) - _stable_h(sb, log_t))

    def pi_tail_equal(self, nu, t):
        if self._log_branch:
            return None  # quadrature path
        big_l = np.log(1.0 / t)
        k = (self.a + 1.0) * (self.b + 1.0) / (self.b - self.a)
        sa = self.a + 1.0 - 1.0 / nu
        sb = self.b + 1.0 - 1.0 / nu
        return k * (_stable_g(sa, big_l) - _stable_g(sb, big_l))

    def to_json(self):
        return {"kind": "two_param", "a": float(self.a), "b": float(self.b)}


@dataclass(frozen=True)
class Komatu(Kernel):
    """lambda(t) = (1+a)^p / Gamma(p) * t^a log(1/t)^(p-1), a > -1, p >= 0.

    p = 1 recovers the Bernardi weight with c = a; p = 0 degenerates to the
    unit point mass at t = 1 (identity transform): the density is zero
    pointwise while all moments equal 1.
    """

    a: float
    p: float
    kind = "komatu"

    def __post_init__(self):
        if not self.a > -1.0:
            raise DomainError(f"komatu weight requires a > -1, got {self.a}")
        if not self.p >= 0.0:
            raise DomainError(f"komatu weight requires p >= 0, got {self.p}")

    def _pref(self) -> float:
        return (1.0 + self.a) ** self.p / math.gamma(self.p)

    def density(self, t):
        t = np.asarray(t, dtype=float)
        if self.p == 0.0:
            return np.zeros_like(t)
        return self._pref() * t ** self.a * np.log(1.0 / t) ** (self.p - 1.0)

    def density_d1(self, t):
        if self.p == 0.0:
            raise DomainError("p = 0 komatu weight is a point mass; no density derivative")
        t = np.asarray(t, dtype=float)
        big_l = np.log(1.0 / t)
        return self._pref() * t ** (self.a - 1.0) * big_l ** (self.p - 2.0) * (
            self.a * big_l - (self.p - 1.0)
        )

    def density_d2(self, t):
        if self.p == 0.0:
            raise DomainError("p = 0 komatu weight is a point mass; no density derivative")
        t = np.asarray(t, dtype=float)
        big_l = np.log(1.0 / t)
        a, p = self.a, self.p
        return self._pref() * t ** (a - 2.0) * (
            a * (a - 1.0) * big_l ** (p - 1.0)
            - (p - 1.0) * (2.0 * a - 1.0) * big_l ** (p - 2.0)
            + (p - 1.0) * (p - 2.0) * big_l ** (p - 3.0)
        )

    def value_at_one(self) -> float:
        if self.p > 1.0:
            return 0.0
        if self.p == 1.0:
            return 1.0 + self.a
        return math.inf

    def moments(self, n):
        n = np.asarray(n, dtype=float)
        return ((1.0 + self.a) / (n + self.a + 1.0)) ** self.p

    def integrate_against(self, f, lo=0.0, hi=1.0, tol=1e-10):
        # u = (1+a) log(1/t) maps lambda dt to the gamma density u^(p-1) e^(-u) / Gamma(p)
        if self.p == 0.0:
            return np.asarray(f(np.array([1.0])))[..., 0]
        ka = 1.0 + self.a
        u_hi = ka * math.log(1.0 / hi) if hi < 1.0 else 0.0
        u_cap = _U_CAP_BASE + 5.0 * self.p
        u_lo = ka * math.log(1.0 / lo) if lo > 0.0 else u_cap
        u_lo = min(u_lo, u_cap)
        if u_lo <= u_hi:
            zero = np.asarray(f(np.array([hi])))[..., 0]
            return np.zeros_like(zero)
        gamma_p = math.gamma(self.p)

        def g_of_u(u):
            return f(np.exp(-u / ka))

        if self.p >= 1.0:
            value, _, _ = adaptive(
                lambda u: u ** (self.p - 1.0) * np.exp(-u) * g_of_u(u) / gamma_p,
                u_hi, u_lo, tol,
            )
            return value
        # p < 1: absorb the u^(p-1) singularity with v = u^p
        value, _, _ = adaptive(
            lambda v: np.exp(-v ** (1.0 / self.p)) * g_of_u(v ** (1.0 / self.p)) / (self.p * gamma_p),
            u_hi ** self.p, u_lo ** self.p, tol,
        )
        return value

    def lambda_tail(self, nu, t):
        if self.p == 0.0:
            return np.where(np.asarray(t, dtype=float) < 1.0, 1.0, 0.0)
        sigma = self.a + 1.0 - 1.0 / nu
        if sigma <= 1e-12:
            return None  # incomplete-gamma form invalid; quadrature path
        big_l = np.log(1.0 / np.asarray(t, dtype=float))
        return (1.0 + self.a) ** self.p * gammainc(self.p, sigma * big_l) / sigma ** self.p

    def pi_tail_equal(self, nu, t):
        if self.p == 0.0:
            return None
        sigma = self.a + 1.0 - 1.0 / nu
        if sigma <= 1e-12:
            return None
        big_l = np.log(1.0 / np.asarray(t, dtype=float))
        x = sigma * big_l
        return (1.0 + self.a) ** self.p / sigma ** (self.p + 1.0) * (
            x * gammainc(self.p, x) - self.p * gammainc(self.p + 1.0, x)
        )

    def to_json(self):
        return {"kind": "komatu", "a": float(self.a), "p": float(self.p)}


@dataclass(frozen=True)
class CustomKernel(Kernel):
    """Library-only weight given by a vectorized sampler on (0, 1).

    The sampler must be pure and nonnegative.  Moments use ``moment_hint``
    when provided, otherwise adaptive quadrature (the sampler must then be
    resolvable by bisection: no mass hidden below t = 1e-12).  Derivatives
    are central differences with step 1e-6 and carry a warning.
    """

    sampler: Callable[[np.ndarray], np.ndarray]
    moment_hint: Optional[Callable[[int], float]] = None
    name: str = "custom"
    kind = "custom"

    def density(self, t):
        return np.asarray(self.sampler(np.asarray(t, dtype=float)), dtype=float)

    def _warn_fd(self):
        warnings.warn(
            "custom kernel derivatives use central differences (h = 1e-6)",
            ApproximateDerivativeWarning,
            stacklevel=3,
        )

    def density_d1(self, t):
        self._warn_fd()
        t = np.asarray(t, dtype=float)
        h = np.minimum(_FD_STEP, 0.5 * np.minimum(t, 1.0 - t))
        return (self.density(t + h) - self.density(t - h)) / (2.0 * h)

    def density_d2(self, t):
        self._warn_fd()
        t = np.asarray(t, dtype=float)
        h = np.minimum(_FD_STEP, 0.5 * np.minimum(t, 1.0 - t))
        return (self.density(t + h) - 2.0 * self.density(t) + self.density(t - h)) / (h * h)

    def value_at_one(self) -> float:
        return float(self.density(np.array([1.0 - _T_FLOOR]))[0])

    def moments(self, n):
        ns = np.atleast_1d(np.asarray(n))
        if self.moment_hint is not None:
            out = np.array([float(self.moment_hint(int(k))) for k in ns])
        else:
            out = np.array(
                [float(self.integrate_against(lambda t, k=int(k): t ** k, tol=1e-12))
                 for k in ns]
            )
        return out if np.ndim(n) else out[0]

    def integrate_against(self, f, lo=0.0, hi=1.0, tol=1e-10):
        # t = e^(-u); domain truncated at t = 1e-12 (documented tail assumption)
        u_hi = math.log(1.0 / hi) if hi < 1.0 else 0.0
        u_lo = math.log(1.0 / max(lo, _T_FLOOR))

        def g_of_u(u):
            t = np.exp(-u)
            return t * self.density(t) * f(t)

        value, _, _ = adaptive(g_of_u, u_hi, u_lo, tol)
        return value

    def to_json(self):
        raise TypeError("custom kernels are library-only and do not serialize")


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------

def eval_lambda(kernel: Kernel, t):
    """Density lambda(t) for t in (0, 1); DomainError outside."""
    arr = np.asarray(t, dtype=float)
    if np.any(arr <= 0.0) or np.any(arr >= 1.0):
        raise DomainError(f"t must lie in the open interval (0, 1), got {t}")
    out = kernel.density(arr)
    return float(out) if np.ndim(t) == 0 else out


def moment(kernel: Kernel, n: int) -> float:
    """tau_n = integral lambda(t) t^n dt; closed form for the catalog."""
    if n < 0:
        raise DomainError(f"moment order must be nonnegative, got {n}")
    return float(np.asarray(kernel.moments(np.array([n])))[0])


def moment_by_quadrature(kernel: Kernel, n: int, tol: float = 1e-12) -> float:
    """Independent quadrature route for tau_n (cross-check oracle)."""
    return float(kernel.integrate_against(lambda t: t ** n, tol=tol))


def normalization_residual(kernel: Kernel, tol: float = 1e-11) -> float:
    """|integral lambda - 1| via quadrature (catalog kernels are normalized by construction)."""
    return abs(float(kernel.integrate_against(lambda t: np.ones_like(t), tol=tol)) - 1.0)


def capital_lambda(kernel: Kernel, nu: float, t, tol: float = 1e-10, method: str = "auto"):
    """Lambda_nu(t) = integral_t^1 lambda(x) x^(-1/nu) dx; Lambda_nu(1) = 0 exactly.

    ``method="auto"`` uses the catalog closed forms where valid;
    ``method="quadrature"`` forces the weight-absorbed adaptive route.
    """
    if nu <= 0.0:
        raise DomainError(f"nu must be positive, got {nu}")
    arr = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(arr <= 0.0) or np.any(arr > 1.0):
        raise DomainError(f"t must lie in (0, 1], got {t}")
    closed = kernel.lambda_tail(nu, arr) if method == "auto" else None
    if closed is not None:
        out = np.asarray(closed, dtype=float)
    else:
        out = np.array(
            [0.0 if ti >= 1.0 else float(
                kernel.integrate_against(lambda x: x ** (-1.0 / nu), lo=ti, hi=1.0, tol=tol))
             for ti in arr]
        )
    out[arr >= 1.0] = 0.0
    return float(out[0]) if np.ndim(t) == 0 else out


def capital_pi(kernel: Kernel, mu_nu: MuNu, t, tol: float = 1e-9, method: str = "auto"):
    """Pi_(mu,nu)(t) = integral_t^1 Lambda_nu(x) x^(1/nu - 1 - 1/mu) dx (gamma > 0),
    and Lambda_alpha(t) itself in the gamma = 0 case (mu = 0, nu = alpha).

    For mu != nu the integral collapses analytically to
    (Lambda_mu(t) - t^(1/nu - 1/mu) Lambda_nu(t)) / (1/nu - 1/mu); the mu = nu
    case integrates Lambda_nu(y)/y with closed forms where the catalog has them.
    """
    mu, nu = mu_nu.mu, mu_nu.nu
    if mu == 0.0:
        return capital_lambda(kernel, nu, t, tol=tol, method=method)
    arr = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(arr <= 0.0) or np.any(arr > 1.0):
        raise DomainError(f"t must lie in (0, 1], got {t}")
    theta = 1.0 / nu - 1.0 / mu
    closed_equal = kernel.pi_tail_equal(nu, arr) if method == "auto" else None
    if method == "auto" and abs(theta) >= 1e-8:
        lam_mu = capital_lambda(kernel, mu, arr, tol=tol)
        lam_nu = capital_lambda(kernel, nu, arr, tol=tol)
        out = (lam_mu - arr ** theta * lam_nu) / theta
    elif closed_equal is not None:
        out = np.asarray(closed_equal, dtype=float)
    else:
        # direct tail integral over u = log(1/y), Lambda evaluated per node
        def one(ti):
            if ti >= 1.0:
                return 0.0
            big_l = math.log(1.0 / ti)

            def f_of_u(u):
                y = np.exp(-u)
                return capital_lambda(kernel, nu, y, tol=tol * 0.1) * y ** theta

            value, _, _ = adaptive(f_of_u, 0.0, big_l, tol)
            return float(value)

        out = np.array([one(ti) for ti in arr])
    out[arr >= 1.0] = 0.0
    return float(out[0]) if np.ndim(t) == 0 else out


@dataclass(frozen=True)
class LimitReport:
    """Scaled tail values t^(1/nu) Lambda_nu(t) and t^(1/nu) Pi_(mu,nu)(t) on a
    decade grid, plus whether each sequence decreases toward zero."""

    t_values: tuple
    lambda_scaled: tuple
    pi_scaled: tuple
    lambda_decreasing: bool
    pi_decreasing: bool

    @property
    def passed(self) -> bool:
        return self.lambda_decreasing and self.pi_decreasing


def _strictly_decreasing(values: np.ndarray) -> bool:
    # ratio of successive values < 1; a 0/0 plateau counts as failure
    prev = values[:-1]
    nxt = values[1:]
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(prev == 0.0, np.where(nxt == 0.0, 1.0, np.inf), nxt / prev)
    return bool(np.all(ratios < 1.0))


def check_limits(kernel: Kernel, mu_nu: MuNu, tol: float = 1e-10) -> LimitReport:
    """Evaluate the vanishing-tail hypotheses t^(1/nu) Lambda_nu -> 0 and
    t^(1/nu) Pi_(mu,nu) -> 0 on t in {1e-2, 1e-3, 1e-4, 1e-5}."""
    if mu_nu.nu <= 0.0:
        raise RegimeError(f"limit check requires nu > 0, got {mu_nu.nu}")
    ts = np.array([1e-2, 1e-3, 1e-4, 1e-5])
    scale = ts ** (1.0 / mu_nu.nu)
    lam = scale * capital_lambda(kernel, mu_nu.nu, ts, tol=tol)
    pi = scale * capital_pi(kernel, mu_nu, ts, tol=max(tol, 1e-9))
    return LimitReport(
        t_values=tuple(ts),
        lambda_scaled=tuple(float(v) for v in lam),
        pi_scaled=tuple(float(v) for v in pi),
        lambda_decreasing=_strictly_decreasing(lam),
        pi_decreasing=_strictly_decreasing(pi),
    )


def _log_deriv_ratio(kernel: Kernel, t: np.ndarray) -> np.ndarray:
    return t * kernel.density_d1(t) / kernel.density(t)


def condition_4_8(kernel: Kernel, mu_nu: MuNu, n_grid: int = 1024) -> bool:
    """Log-derivative growth bound: sup t lambda'(t)/lambda(t) <= 2 + 1/mu - 1/nu
    over a dense grid, within 1e-9 slack.  Requires mu >= 1."""
    if mu_nu.mu < 1.0:
        raise RegimeError(f"log-derivative criterion requires mu >= 1, got mu = {mu_nu.mu}")
    bound = 2.0 + 1.0 / mu_nu.mu - 1.0 / mu_nu.nu
    t = (np.arange(n_grid) + 0.5) / n_grid
    ratio = _log_deriv_ratio(kernel, t)
    return bool(np.max(ratio) <= bound + _GRID_SLACK)


def condition_4_9(kernel: Kernel, alpha: float, n_grid: int = 1024) -> bool:
    """Endpoint + curvature criterion for the gamma = 0 route:
    lambda(1) = 0 and t lambda''(t) - lambda'(t)/alpha >= 0 on a dense grid.
    Requires alpha >= 1."""
    if alpha < 1.0:
        raise RegimeError(f"curvature criterion requires alpha >= 1, got {alpha}")
    if not abs(kernel.value_at_one()) <= _GRID_SLACK:
        return False
    t = (np.arange(n_grid) + 0.5) / n_grid
    expr = t * kernel.density_d2(t) - kernel.density_d1(t) / alpha
    return bool(np.min(expr) >= -_GRID_SLACK)


def condition_4_1(kernel: Kernel, mu_nu: MuNu, delta: float, n_grid: int = 512) -> bool:
    """Monotonicity criterion: the ratio

        (t^(1/nu - 1/mu) Lambda_nu(t) + (1 - 1/mu) Pi_(mu,nu)(t))
        -----------------------------------------------------------
                   (1 + t) (1 - t)^(1 + 2 delta)

    must be nonincreasing on (0, 1).  The numerator uses the analytic
    identity -t Pi'(t) = t^(1/nu - 1/mu) Lambda_nu(t).  Grid check with
    1e-9 slack between consecutive points; requires mu >= 1 (gamma > 0)."""
    mu, nu = mu_nu.mu, mu_nu.nu
    if mu < 1.0:
        raise RegimeError(f"monotonicity criterion requires mu >= 1, got mu = {mu}")
    t = (np.arange(n_grid) + 0.5) / n_grid
    lam = capital_lambda(kernel, nu, t)
    pi = capital_pi(kernel, mu_nu, t)
    numer = t ** (1.0 / nu - 1.0 / mu) * lam + (1.0 - 1.0 / mu) * pi
    denom = (1.0 + t) * (1.0 - t) ** (1.0 + 2.0 * delta)
    ratio = numer / denom
    return bool(np.all(np.diff(ratio) <= _GRID_SLACK))


def kernel_from_json(obj: dict) -> Kernel:
    """Deserialize a catalog kernel descriptor."""
    kind = obj.get("kind")
    if kind == "bernardi":
        return Bernardi(float(obj["c"]))
    if kind == "two_param":
        return TwoParam(float(obj["a"]), float(obj["b"]))
    if kind == "komatu":
        return Komatu(float(obj["a"]), float(obj["p"]))
    raise DomainError(f"unknown kernel kind: {kind!r}")
