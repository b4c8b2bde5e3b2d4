"""Class parameters (alpha, gamma, delta) and their (mu, nu) factorization.

The differential combination (1-alpha+2*gamma) f/z + (alpha-2*gamma) f' +
gamma z f'' splits into two first-order factors indexed by the roots of
x^2 - (alpha-gamma) x + gamma = 0.  We adopt the convention mu <= nu, which
reproduces every classical special case (mu=1, nu=gamma for alpha=1+2*gamma
with gamma >= 1, and mu=0, nu=alpha when gamma=0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, NegativeDiscriminant

# (alpha-gamma)^2 - 4*gamma in [-_DISC_TOL, 0) is treated as a double root
# to avoid spurious rejections on the boundary alpha - gamma = 2*sqrt(gamma).
_DISC_TOL = 1e-12


@dataclass(frozen=True)
class ClassParams:
    """Parameters of the source class and the target convexity order."""

    alpha: float
    gamma: float
    delta: float

    def __post_init__(self):
        if not (self.alpha >= 0.0):
            raise DomainError(f"alpha must be nonnegative, got {self.alpha}")
        if not (self.gamma >= 0.0):
            raise DomainError(f"gamma must be nonnegative, got {self.gamma}")
        if not (0.0 <= self.delta <= 0.5):
            raise DomainError(f"delta must lie in [0, 1/2], got {self.delta}")


@dataclass(frozen=True)
class MuNu:
    """Factorization pair: mu + nu = alpha - gamma, mu * nu = gamma, mu <= nu."""

    mu: float
    nu: float

    def __post_init__(self):
        if not (self.mu >= 0.0 and self.nu >= 0.0):
            raise DomainError(f"mu, nu must be nonnegative, got ({self.mu}, {self.nu})")
        if self.mu > self.nu:
            raise DomainError(
                f"ordering convention requires mu <= nu, got ({self.mu}, {self.nu})"
            )

    @property
    def gamma(self) -> float:
        return self.mu * self.nu

    @property
    def alpha(self) -> float:
        return self.mu + self.nu + self.mu * self.nu


@dataclass(frozen=True)
class RegimeReport:
    """Which sufficiency regimes the factorization falls into.

    theorem_4_2_applicable: mu >= 1 (then nu >= mu by convention), the
    gamma > 0 log-derivative route.  theorem_4_3_applicable: mu = 0 with
    nu = alpha >= 1, the gamma = 0 second-derivative route.
    """

    theorem_4_2_applicable: bool
    theorem_4_3_applicable: bool


def resolve_mu_nu(params: ClassParams) -> MuNu:
    """Roots of x^2 - (alpha-gamma) x + gamma = 0 with mu the smaller root.

    For gamma = 0 returns (0, alpha) exactly.  Raises NegativeDiscriminant
    when (alpha-gamma)^2 < 4*gamma beyond the double-root tolerance: no real
    nonnegative factorization exists there.
    """
    if params.gamma == 0.0:
        return MuNu(0.0, params.alpha)
    b = params.alpha - params.gamma
    disc = b * b - 4.0 * params.gamma
    if disc < -_DISC_TOL:
        raise NegativeDiscriminant(
            f"(alpha-gamma)^2 = {b * b:.6g} < 4*gamma = {4.0 * params.gamma:.6g}: "
            "no real nonnegative (mu, nu) factorization"
        )
    if b < 0.0:
        # roots would be negative (alpha < gamma with gamma > 0)
        raise NegativeDiscriminant(
            f"alpha - gamma = {b:.6g} < 0 with gamma > 0: roots are not nonnegative"
        )
    root = math.sqrt(max(disc, 0.0))
    nu = 0.5 * (b + root)
    # companion root via the product, exact to rounding: mu * nu = gamma
    mu = params.gamma / nu if nu > 0.0 else 0.0
    if mu > nu:  # double-root rounding can flip the order by one ulp
        mu, nu = nu, mu
    return MuNu(mu, nu)


def validate_regime(mu_nu: MuNu) -> RegimeReport:
    """Report which sufficiency hypotheses hold; never rejects."""
    return RegimeReport(
        theorem_4_2_applicable=mu_nu.mu >= 1.0,
        theorem_4_3_applicable=(mu_nu.mu == 0.0 and mu_nu.nu >= 1.0),
    )
