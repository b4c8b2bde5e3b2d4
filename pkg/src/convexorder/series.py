"""Truncated power-series engine for the transform pipeline.

Series are plain coefficient vectors c_0..c_N over the complex doubles; the
Hadamard product is the coefficientwise product (index 0 included).  The two
auxiliary coefficient families

    phi_(mu,nu):  1 + sum (n nu + 1)(n mu + 1)/(n + 1) z^n,
    psi_(mu,nu):  1 + sum (n + 1)/((n nu + 1)(n mu + 1)) z^n,

are convolution inverses of each other (their Hadamard product is the
all-ones series).  The differential combination H(f) is computed from its
derivative expression and from f' * phi simultaneously; disagreement raises,
which makes every downstream use a running self-test.

Boundary evaluation near |z| = 1 is controlled by the geometric tail bound
r^(N+1)/((N+1)(1-r)) per unit coefficient scale (coefficients of the
transform pipeline decay at least like 1/n); evaluations never use this
module at z = -1 itself, where dedicated alternating sums apply.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SelfTestFailure, TruncationWarning
from .kernels import Kernel
from .params import ClassParams, MuNu, resolve_mu_nu

_NORMALIZED_TOL = 1e-12


@dataclass(frozen=True)
class PowerSeries:
    """Coefficients c_0..c_N of sum c_n z^n; immutable after construction."""

    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(np.asarray(self.coeffs, dtype=complex))
        if arr.ndim != 1 or arr.size < 2:
            raise DomainError("a power series needs at least coefficients c_0, c_1")
        if not np.all(np.isfinite(arr)):
            raise DomainError("power series coefficients must be finite")
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)

    @property
    def truncation(self) -> int:
        return self.coeffs.size - 1

    def is_normalized(self) -> bool:
        return (
            abs(self.coeffs[0]) <= _NORMALIZED_TOL
            and abs(self.coeffs[1] - 1.0) <= _NORMALIZED_TOL
        )


def all_ones_series(n: int) -> PowerSeries:
    return PowerSeries(np.ones(n + 1, dtype=complex))


def hadamard(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Coefficientwise product, truncated to the shorter operand."""
    n = min(a.truncation, b.truncation)
    return PowerSeries(a.coeffs[: n + 1] * b.coeffs[: n + 1])


def _phi_factors(mu_nu: MuNu, n: int) -> np.ndarray:
    k = np.arange(n + 1, dtype=float)
    return (k * mu_nu.nu + 1.0) * (k * mu_nu.mu + 1.0)


def phi_series(mu_nu: MuNu, n: int) -> PowerSeries:
    """1 + sum (n nu + 1)(n mu + 1)/(n + 1) z^n up to z^n."""
    k = np.arange(n + 1, dtype=float)
    return PowerSeries(_phi_factors(mu_nu, n) / (k + 1.0))


def psi_series(mu_nu: MuNu, n: int) -> PowerSeries:
    """Convolution inverse of phi: 1 + sum (n + 1)/((n nu + 1)(n mu + 1)) z^n."""
    k = np.arange(n + 1, dtype=float)
    return PowerSeries((k + 1.0) / _phi_factors(mu_nu, n))


def derivative_series(f: PowerSeries, order: int = 1) -> PowerSeries:
    coeffs = f.coeffs
    for _ in range(order):
        n = np.arange(1, coeffs.size)
        coeffs = coeffs[1:] * n
    if coeffs.size < 2:
        coeffs = np.concatenate((coeffs, [0.0]))
    return PowerSeries(coeffs)


def operator_H(f: PowerSeries, params: ClassParams) -> PowerSeries:
    """(1 - alpha + 2 gamma) f/z + (alpha - 2 gamma) f' + gamma z f''.

    Computed both from the derivative expression and as f' * phi_(mu,nu);
    the coefficient-wise identity
    (1-alpha+2 gamma) + (alpha-2 gamma)(n+1) + gamma n (n+1) =
    (n nu + 1)(n mu + 1) makes the two routes redundant, and any
    disagreement beyond 1e-12 relative raises SelfTestFailure.
    """
    if not f.is_normalized():
        raise DomainError("operator input must be normalized: c_0 = 0, c_1 = 1")
    alpha, gamma = params.alpha, params.gamma
    mu_nu = resolve_mu_nu(params)
    n_out = f.truncation - 1
    k = np.arange(n_out + 1, dtype=float)
    tail = f.coeffs[1:]
    direct = tail * ((1.0 - alpha + 2.0 * gamma)
                     + (alpha - 2.0 * gamma) * (k + 1.0)
                     + gamma * k * (k + 1.0))
    fprime = tail * (k + 1.0)
    conv = fprime * phi_series(mu_nu, n_out).coeffs
    tol = 1e-12 * np.maximum(1.0, np.abs(direct))
    if np.any(np.abs(direct - conv) > tol):
        worst = int(np.argmax(np.abs(direct - conv) / np.maximum(1.0, np.abs(direct))))
        raise SelfTestFailure(
            f"derivative and convolution routes for H disagree at coefficient {worst}: "
            f"{direct[worst]!r} vs {conv[worst]!r}"
        )
    return PowerSeries(direct)


def extremal_function(mu_nu: MuNu, beta: float, n: int) -> PowerSeries:
    """z + 2(1-beta) sum z^(n+1)/((n nu + 1)(n mu + 1)): the member of the
    class whose transform attains convexity order delta exactly at z = -1."""
    if not beta < 1.0:
        raise DomainError(f"extremal function requires beta < 1, got {beta}")
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[1] = 1.0
    coeffs[2:] = 2.0 * (1.0 - beta) / _phi_factors(mu_nu, n - 1)[1:]
    return PowerSeries(coeffs)


def duality_test_function(
    x: complex, y: complex, beta: float, mu_nu: MuNu, n: int
) -> PowerSeries:
    """Normalized f with H(f) = beta + (1-beta)(1+xz)/(1+yz), |x| = |y| = 1.

    The boundary family that duality reduces the whole class to; at
    (x, y) = (1, -1) this is exactly the extremal function.
    """
    if abs(abs(x) - 1.0) > 1e-12 or abs(abs(y) - 1.0) > 1e-12:
        raise DomainError(f"x and y must be unit modulus, got |x|={abs(x)}, |y|={abs(y)}")
    if not beta < 1.0:
        raise DomainError(f"requires beta < 1, got {beta}")
    # H_n = (1-beta)(x - y)(-y)^(n-1) for n >= 1, H_0 = 1; f_(n+1) = H_n/phi-factor
    h = np.empty(n, dtype=complex)
    h[0] = 1.0
    k = np.arange(0, n - 1)
    h[1:] = (1.0 - beta) * (x - y) * (-y) ** k
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[1:] = h / _phi_factors(mu_nu, n - 1)
    return PowerSeries(coeffs)


def apply_transform(kernel: Kernel, f: PowerSeries) -> PowerSeries:
    """Coefficient action of the weighted transform: a_n -> tau_(n-1) a_n.

    Requires c_0 = 0 (the f(tz)/t factor), which every normalized series has.
    """
    if abs(f.coeffs[0]) > _NORMALIZED_TOL:
        raise DomainError("transform input must have zero constant term")
    n = f.truncation
    tau = np.asarray(kernel.moments(np.arange(0, n)), dtype=float)
    coeffs = f.coeffs.copy()
    coeffs[1:] = coeffs[1:] * tau
    return PowerSeries(coeffs)


def _coefficient_scale(coeffs: np.ndarray) -> float:
    """Empirical A such that |c_n| <~ A/(n+1), from the top quarter of coefficients."""
    n = coeffs.size
    start = max(1, n - max(8, n // 4))
    k = np.arange(start, n, dtype=float)
    return float(np.max(np.abs(coeffs[start:]) * (k + 1.0)))


def tail_bound(f: PowerSeries, r: float, order: int = 0) -> float:
    """Geometric bound on the truncated tail of f^(order) at radius r,
    assuming coefficients decay like A/(n+1) with A estimated from the series."""
    if r >= 1.0 - 1e-12:
        return np.inf
    if r <= 0.0:
        return 0.0
    a = _coefficient_scale(f.coeffs)
    n = f.truncation
    if order == 0:
        return a * r ** (n + 1) / ((n + 1) * (1.0 - r))
    if order == 1:
        return a * r ** n / (1.0 - r)
    if order == 2:
        return a * r ** (n - 1) * (n * (1.0 - r) + r) / (1.0 - r) ** 2
    raise DomainError(f"order must be 0, 1 or 2, got {order}")


def eval_series(f: PowerSeries, z, order: int = 0, tol: float = 1e-8):
    """Horner evaluation of f (or a termwise derivative) plus a tail bound.

    ``z`` may be a scalar or an ndarray; the bound uses the largest |z|.
    Emits TruncationWarning when the bound exceeds ``tol``.
    """
    if order not in (0, 1, 2):
        raise DomainError(f"order must be 0, 1 or 2, got {order}")
    g = derivative_series(f, order) if order else f
    zs = np.asarray(z)
    r = float(np.max(np.abs(zs)))
    bound = tail_bound(f, min(r, 1.0), order)
    if bound > tol:
        warnings.warn(
            f"truncation tail bound {bound:.3e} exceeds tolerance {tol:.1e} "
            f"at radius {r}",
            TruncationWarning,
            stacklevel=2,
        )
    values = np.polynomial.polynomial.polyval(zs, g.coeffs)
    if np.ndim(z) == 0:
        return complex(values), bound
    return values, bound
