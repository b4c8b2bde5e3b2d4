"""Sharp lower bound beta for convexity of order delta of the transform.

beta is defined by the linear-fractional relation

    (beta - 1/2) / (1 - beta) = - integral_0^1 lambda(t) q(t) dt = -I,

so it is obtained by exact Moebius inversion, beta = (1/2 - I)/(1 - I),
never by root finding.  Since q takes values in (0, 1] and the weight is
normalized, I lies in (0, 1) and beta < 1 always holds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .kernels import Kernel
from .params import ClassParams, resolve_mu_nu
from .qfunc import QSpec, lambda_q_integral


@dataclass(frozen=True)
class BetaResult:
    """Sharp bound together with the integral it came from."""

    beta: float
    integral_I: float
    spec: QSpec
    kernel: Kernel
    crosscheck_residual: float

    def to_json(self) -> dict:
        return {
            "beta": self.beta,
            "integral_I": self.integral_I,
            "mu": self.spec.mu_nu.mu,
            "nu": self.spec.mu_nu.nu,
            "delta": self.spec.delta,
            "kernel": self.kernel.to_json(),
            "crosscheck_residual": self.crosscheck_residual,
        }


def beta_from_integral(integral_i: float) -> float:
    """Moebius solve of (beta - 1/2)/(1 - beta) = -I."""
    return (0.5 - integral_i) / (1.0 - integral_i)


def integral_from_beta(beta: float) -> float:
    """Inverse Moebius map (round-trip oracle)."""
    return (0.5 - beta) / (1.0 - beta)


def sharp_beta(kernel: Kernel, params: ClassParams, tol: float = 2e-9) -> BetaResult:
    """Smallest beta such that the transform maps the class into convexity
    of order params.delta, for the given weight."""
    mu_nu = resolve_mu_nu(params)
    spec = QSpec(mu_nu, params.delta)
    integral = lambda_q_integral(kernel, spec, tol=tol)
    return BetaResult(
        beta=beta_from_integral(integral.value),
        integral_I=integral.value,
        spec=spec,
        kernel=kernel,
        crosscheck_residual=integral.crosscheck_residual,
    )


def alexander_closed_form(delta: float) -> float:
    """Sharp bound for the Alexander weight at mu = nu = 1 in closed form.

    The defining relation evaluates to R = (delta pi^2/12 - log 2)/(1-delta)
    on the right-hand side (termwise integration of the q series:
    sum (-1)^n/(n+1) = log 2 - 1 and sum (-1)^n/(n+1)^2 = pi^2/12 - 1), so
    beta = (1/2 + R)/(1 + R).
    """
    if not 0.0 <= delta <= 0.5:
        raise DomainError(f"delta must lie in [0, 1/2], got {delta}")
    r = (delta * math.pi ** 2 / 12.0 - math.log(2.0)) / (1.0 - delta)
    return (0.5 + r) / (1.0 + r)
