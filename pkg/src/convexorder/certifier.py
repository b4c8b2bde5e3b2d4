"""Numerical certification of the transform's convexity order.

A certificate is evidence, not proof: it records the boundary-grid minimum
of Re(1 + z F''/F') for the transformed extremal function, the sharpness
ratio (z F')'/F' at z = -1 (which must equal delta at the sharp bound), the
admissibility checks of the weight, and a sampled minimum of the duality
functional

    M(z, eps) = Re integral_0^1 t^(1/mu - 1) Pi_(mu,nu)(t)
                   [h'_delta(t z) - core(t)] dt,

whose nonnegativity over |eps| = 1, z in the disk characterizes the
inclusion of the transformed class in the convex-of-order-delta family.
Here h_delta(z) = z (1 + (eps + 2 delta - 1)/(2 - 2 delta) z)/(1-z)^2 and

    h'_delta(z) = ((1 - delta) + (eps + delta) z) / ((1 - delta)(1 - z)^3),

with core(t) = h'_delta(-t) at eps = 1, so M vanishes identically along
eps = 1, z -> -1: the sampled minimum of an admissible configuration sits
at zero, which is exactly the sharpness statement.
"""

from __future__ import annotations

import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .acceleration import euler_alternating_sum
from .errors import (
    DivergenceWarning,
    DomainError,
    NumericalError,
    RegimeError,
    ZeroDerivative,
)
from .kernels import (
    Kernel,
    capital_pi,
    check_limits,
    condition_4_1,
    condition_4_8,
    condition_4_9,
)
from .params import ClassParams, MuNu, resolve_mu_nu
from .qfunc import QSpec, _core
from .quadrature import adaptive
from .series import (
    PowerSeries,
    apply_transform,
    derivative_series,
    eval_series,
    extremal_function,
    operator_H,
    tail_bound,
)
from .sharpbeta import sharp_beta

_ZERO_DERIV_TOL = 1e-12
_GRID_TAIL_TOL = 1e-6


@dataclass(frozen=True)
class TestFunctionHDelta:
    """The rational test function whose convolution nonvanishing encodes
    convexity of order delta; epsilon ranges over the unit circle."""

    epsilon: complex
    delta: float

    def __post_init__(self):
        if abs(abs(self.epsilon) - 1.0) > 1e-12:
            raise DomainError(f"epsilon must be unit modulus, got |eps| = {abs(self.epsilon)}")
        if not 0.0 <= self.delta <= 0.5:
            raise DomainError(f"delta must lie in [0, 1/2], got {self.delta}")

    def value(self, z):
        a = (self.epsilon + 2.0 * self.delta - 1.0) / (2.0 - 2.0 * self.delta)
        return z * (1.0 + a * z) / (1.0 - z) ** 2

    def derivative(self, z):
        return h_delta_prime(z, self.epsilon, self.delta)


def h_delta_prime(z, epsilon, delta):
    """Closed-form derivative ((1-delta) + (eps+delta) z)/((1-delta)(1-z)^3)."""
    return ((1.0 - delta) + (epsilon + delta) * z) / ((1.0 - delta) * (1.0 - z) ** 3)


def _threads(requested: Optional[int]) -> int:
    if requested is None or requested == 1:
        return 1
    if requested == 0:
        return max(1, os.cpu_count() or 1)
    return max(1, int(requested))


def convexity_order_min(
    f: PowerSeries, r: float, n_theta: int, threads: Optional[int] = 1
) -> float:
    """min over the grid z = r e^(2 pi i k/n) of Re(1 + z F''(z)/F'(z)).

    Raises ZeroDerivative if |F'| < 1e-12 anywhere on the grid (the quotient
    is meaningless there and the function is not locally univalent)."""
    if not 0.0 < r < 1.0:
        raise DomainError(f"grid radius must lie in (0, 1), got {r}")
    if tail_bound(f, r, order=2) > _GRID_TAIL_TOL:
        raise DomainError(
            f"series truncation {f.truncation} insufficient for radius {r}"
        )
    d1 = derivative_series(f, 1)
    d2 = derivative_series(f, 2)

    def chunk_min(zs: np.ndarray) -> float:
        fp = np.polynomial.polynomial.polyval(zs, d1.coeffs)
        fpp = np.polynomial.polynomial.polyval(zs, d2.coeffs)
        small = np.abs(fp) < _ZERO_DERIV_TOL
        if np.any(small):
            bad = zs[small][0]
            raise ZeroDerivative(f"|F'| < {_ZERO_DERIV_TOL} at z = {bad}")
        return float(np.min((1.0 + zs * fpp / fp).real))

    theta = 2.0 * np.pi * np.arange(n_theta) / n_theta
    grid = r * np.exp(1j * theta)
    n_workers = _threads(threads)
    if n_workers == 1:
        return chunk_min(grid)
    chunks = np.array_split(grid, n_workers)
    with ThreadPoolExecutor(max_workers=n_workers) as pool:
        return min(pool.map(chunk_min, chunks))


def boundary_profile(f: PowerSeries, r: float, n_theta: int):
    """(theta, Re(1 + z F''/F')) rows at radius r, for plot-ready output."""
    d1 = derivative_series(f, 1)
    d2 = derivative_series(f, 2)
    theta = 2.0 * np.pi * np.arange(n_theta) / n_theta
    zs = r * np.exp(1j * theta)
    fp = np.polynomial.polynomial.polyval(zs, d1.coeffs)
    fpp = np.polynomial.polynomial.polyval(zs, d2.coeffs)
    if np.any(np.abs(fp) < _ZERO_DERIV_TOL):
        raise ZeroDerivative(f"|F'| < {_ZERO_DERIV_TOL} on the boundary grid")
    return theta, (1.0 + zs * fpp / fp).real


def sharpness_at_minus_one(
    kernel: Kernel, mu_nu: MuNu, beta: float, n_terms: int = 512
) -> float:
    """(z F')'(-1) / F'(-1) for the transformed extremal function.

    Both alternating sums are evaluated with Euler acceleration; at the sharp
    bound the ratio equals delta.  Emits DivergenceWarning when either
    acceleration error estimate exceeds 1e-6."""
    if not beta < 1.0:
        raise DomainError(f"requires beta < 1, got {beta}")
    n = np.arange(1, n_terms + 1, dtype=float)
    tau = np.asarray(kernel.moments(n), dtype=float)
    base = ((-1.0) ** n) * (n + 1.0) * tau / ((n * mu_nu.nu + 1.0) * (n * mu_nu.mu + 1.0))
    s2, est2 = euler_alternating_sum(base)
    s1, est1 = euler_alternating_sum(base * (n + 1.0))
    if max(est1, est2) > 1e-6:
        warnings.warn(
            f"boundary sum acceleration stalled (estimates {est1:.2e}, {est2:.2e})",
            DivergenceWarning,
            stacklevel=2,
        )
    num = 1.0 + 2.0 * (1.0 - beta) * s1
    den = 1.0 + 2.0 * (1.0 - beta) * s2
    if abs(den) < _ZERO_DERIV_TOL:
        raise ZeroDerivative("F'(-1) vanishes; sharpness ratio undefined")
    return num / den


def membership_witness(
    f: PowerSeries,
    params: ClassParams,
    beta: float,
    r: float = 0.99,
    n_theta: int = 720,
) -> Optional[float]:
    """Search for a rotation phi with min_k Re(e^(i phi) (H(z_k) - beta)) > 0
    on the sampling circle |z| = r; returns the witness phi or None.

    A 720-point scan locates the best phi, then golden-section refinement
    sharpens it.  None signals no witness at this radius/truncation, i.e.
    membership in the class could not be certified."""
    h = operator_H(f, params)
    theta = 2.0 * np.pi * np.arange(n_theta) / n_theta
    w, _ = eval_series(h, r * np.exp(1j * theta), tol=np.inf)
    w = w - beta
    re_w, im_w = w.real, w.imag

    def worst(phi):
        return float(np.min(np.cos(phi) * re_w - np.sin(phi) * im_w))

    phis = 2.0 * np.pi * np.arange(720) / 720.0
    table = np.cos(phis)[:, None] * re_w[None, :] - np.sin(phis)[:, None] * im_w[None, :]
    per_phi = table.min(axis=1)
    best = int(np.argmax(per_phi))
    lo = phis[best] - 2.0 * np.pi / 720.0
    hi = phis[best] + 2.0 * np.pi / 720.0
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = worst(c), worst(d)
    for _ in range(60):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = worst(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = worst(d)
    phi_star = 0.5 * (a + b)
    if worst(phi_star) > 0.0:
        return phi_star % (2.0 * np.pi)
    return None


def _duality_weight(kernel: Kernel, mu_nu: MuNu, t: np.ndarray) -> np.ndarray:
    """t^(1/m - 1) Pi_(mu,nu)(t) with m = mu for gamma > 0, m = nu for gamma = 0."""
    m = mu_nu.mu if mu_nu.mu > 0.0 else mu_nu.nu
    return t ** (1.0 / m - 1.0) * capital_pi(kernel, mu_nu, t)


def duality_functional_grid(
    kernel: Kernel,
    mu_nu: MuNu,
    delta: float,
    zs: np.ndarray,
    epsilons: np.ndarray,
    tol: float = 1e-8,
):
    """M(z, eps) on the product grid zs x epsilons, sharing one subdivision.

    The weight's endpoint singularity t^(1/nu - 1) is absorbed by t = w^m
    with m = max(1, nu) before the adaptive pass."""
    zs = np.atleast_1d(np.asarray(zs, dtype=complex))
    epsilons = np.atleast_1d(np.asarray(epsilons, dtype=complex))
    if np.any(np.abs(zs) >= 1.0):
        raise DomainError("duality functional requires |z| < 1")
    if np.any(np.abs(np.abs(epsilons) - 1.0) > 1e-12):
        raise DomainError("epsilon samples must be unit modulus")
    m = max(1.0, mu_nu.nu)

    def integrand(w):
        t = w ** m
        weight = m * w ** (m - 1.0) * _duality_weight(kernel, mu_nu, t)
        tz = t[None, None, :] * zs[:, None, None]
        hp = ((1.0 - delta) + (epsilons[None, :, None] + delta) * tz) / (
            (1.0 - delta) * (1.0 - tz) ** 3
        )
        return weight[None, None, :] * (hp.real - _core(t, delta)[None, None, :])

    vals, err, _ = adaptive(integrand, 0.0, 1.0, tol)
    return vals


def duality_functional(
    kernel: Kernel,
    mu_nu: MuNu,
    delta: float,
    z: complex,
    epsilon: complex,
    tol: float = 1e-8,
) -> float:
    """Single-sample duality functional M(z, eps)."""
    vals = duality_functional_grid(kernel, mu_nu, delta, [z], [epsilon], tol=tol)
    return float(vals[0, 0])


# ---------------------------------------------------------------------------
# full pipeline
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CertifyConfig:
    radius: float = 0.995
    n_theta: int = 4096
    series_n: Optional[int] = None          # None: auto-raise from 4096
    n_eps: int = 16
    n_z_angles: int = 16
    z_radii: tuple = (0.5, 0.9, 0.99)
    tol_grid: float = 1e-3
    tol_sharp: float = 1e-4
    duality_tol: float = 1e-8
    threads: Optional[int] = 1


@dataclass(frozen=True)
class Certificate:
    passed: bool
    beta: Optional[float]
    integral_I: Optional[float]
    mu: float
    nu: float
    alpha: float
    gamma: float
    delta: float
    kernel: Kernel
    admissibility: dict
    grid_radius: float
    n_theta: int
    grid_min_re: Optional[float]
    sharpness_ratio: Optional[float]
    sharpness_residual: Optional[float]
    duality_min: Optional[float]
    duality_samples: int
    series_n: Optional[int]
    reason_codes: tuple = ()

    def to_json(self) -> dict:
        kernel_json = self.kernel.to_json() if self.kernel.kind != "custom" else {
            "kind": "custom"
        }
        return {
            "pass": self.passed,
            "beta": self.beta,
            "integral_I": self.integral_I,
            "mu": self.mu,
            "nu": self.nu,
            "alpha": self.alpha,
            "gamma": self.gamma,
            "delta": self.delta,
            "kernel": kernel_json,
            "admissibility": dict(self.admissibility),
            "grid": {
                "radius": self.grid_radius,
                "n_theta": self.n_theta,
                "min_re": self.grid_min_re,
            },
            "sharpness": {
                "ratio": self.sharpness_ratio,
                "residual": self.sharpness_residual,
            },
            "duality": {"min": self.duality_min, "samples": self.duality_samples},
            "series_n": self.series_n,
            "reason_codes": list(self.reason_codes),
        }


def auto_series_n(radius: float, requested: Optional[int] = None) -> int:
    """Smallest power-of-two N >= 4096 with r^(N+1)/((N+1)(1-r)) <= 1e-8."""
    n = requested if requested else 4096
    while n < (1 << 18):
        bound = radius ** (n + 1) / ((n + 1) * (1.0 - radius))
        if bound <= 1e-8:
            break
        n *= 2
    return n


def _admissibility(kernel: Kernel, mu_nu: MuNu, params: ClassParams) -> dict:
    out = {"cond_4_8": None, "cond_4_9": None, "cond_4_1": None, "limits": None}
    if params.gamma > 0.0:
        if mu_nu.mu >= 1.0:
            out["cond_4_8"] = condition_4_8(kernel, mu_nu)
            out["cond_4_1"] = condition_4_1(kernel, mu_nu, params.delta)
    else:
        if params.alpha >= 1.0:
            try:
                out["cond_4_9"] = condition_4_9(kernel, params.alpha)
            except DomainError:
                out["cond_4_9"] = None  # no pointwise density (point mass)
    out["limits"] = check_limits(kernel, mu_nu).passed
    return out


def certify(kernel: Kernel, params: ClassParams, config: CertifyConfig = CertifyConfig()) -> Certificate:
    """Full pipeline: sharp bound, admissibility, boundary grid, sharpness at
    z = -1, and the sampled duality functional, assembled into a Certificate.

    Numerical failures do not raise: they produce a failed certificate whose
    reason codes carry an ``error:`` prefix (front ends map those to a
    distinct exit status).  Parameter errors (invalid kernel/params) raise.
    """
    mu_nu = resolve_mu_nu(params)
    reasons = []
    beta = integral_i = grid_min = ratio = residual = duality_min = None
    series_n = None
    n_samples = config.n_eps * config.n_z_angles * len(config.z_radii)

    admissibility = {"cond_4_8": None, "cond_4_9": None, "cond_4_1": None, "limits": None}
    try:
        admissibility = _admissibility(kernel, mu_nu, params)
    except NumericalError as exc:
        reasons.append(f"error:{type(exc).__name__}:{exc}")

    try:
        beta_res = sharp_beta(kernel, params)
        beta, integral_i = beta_res.beta, beta_res.integral_I

        series_n = auto_series_n(config.radius, config.series_n)
        extremal = extremal_function(mu_nu, beta, series_n)
        transformed = apply_transform(kernel, extremal)
        grid_min = convexity_order_min(
            transformed, config.radius, config.n_theta, threads=config.threads
        )

        ratio = sharpness_at_minus_one(kernel, mu_nu, beta)
        residual = abs(ratio - params.delta)

        eps = np.exp(2j * np.pi * np.arange(config.n_eps) / config.n_eps)
        angles = np.exp(2j * np.pi * np.arange(config.n_z_angles) / config.n_z_angles)
        mins = []
        for rz in config.z_radii:
            vals = duality_functional_grid(
                kernel, mu_nu, params.delta, rz * angles, eps, tol=config.duality_tol
            )
            mins.append(float(np.min(vals)))
        duality_min = min(mins)
    except NumericalError as exc:
        reasons.append(f"error:{type(exc).__name__}:{exc}")

    passed = False
    if not reasons:
        if grid_min < params.delta - config.tol_grid:
            reasons.append("grid_min_below_target")
        if residual > config.tol_sharp:
            reasons.append("sharpness_residual_above_tol")
        passed = not reasons

    return Certificate(
        passed=passed,
        beta=beta,
        integral_I=integral_i,
        mu=mu_nu.mu,
        nu=mu_nu.nu,
        alpha=params.alpha,
        gamma=params.gamma,
        delta=params.delta,
        kernel=kernel,
        admissibility=admissibility,
        grid_radius=config.radius,
        n_theta=config.n_theta,
        grid_min_re=grid_min,
        sharpness_ratio=ratio,
        sharpness_residual=residual,
        duality_min=duality_min,
        duality_samples=n_samples,
        series_n=series_n,
        reason_codes=tuple(reasons),
    )
