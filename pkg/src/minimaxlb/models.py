"""One-parameter statistical families with closed-form densities, Fisher
information, and pairwise divergences, including n-fold IID tensorization.

Two families are provided: Gaussian location with known sigma (regular), and
the scale family Unif(0, theta) (irregular: Fisher information is undefined
and the squared Hellinger distance is locally linear, not quadratic, in the
shift). Divergences use closed forms; the brute-force integral oracles live
in the test suite only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .numerics import normal_pdf


@dataclass(frozen=True)
class GaussianLocation:
    """N(theta, sigma^2) with known sigma > 0; theta is the location."""

    sigma: float = 1.0

    def __post_init__(self):
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise ValueError("sigma must be a positive finite number")


@dataclass(frozen=True)
class UniformScale:
    """Unif(0, theta); theta > 0 is the right endpoint of the support."""


Family = Union[GaussianLocation, UniformScale]


@dataclass(frozen=True)
class DivergenceValue:
    """A divergence that is either a finite non-negative number or infinite.

    Divergent is a first-class variant (not a floating inf) so that bound
    evaluators can branch explicitly; chi-squared bounds yield the trivial
    value 0 on a Divergent denominator.
    """

    is_divergent: bool
    _value: float = 0.0

    @staticmethod
    def finite(value: float) -> "DivergenceValue":
        value = float(value)
        if not math.isfinite(value) or value < 0:
            raise ValueError(f"finite divergence must be >= 0, got {value!r}")
        return DivergenceValue(False, value)

    @staticmethod
    def divergent() -> "DivergenceValue":
        return DivergenceValue(True)

    @property
    def value(self) -> float:
        if self.is_divergent:
            raise ValueError("divergence is infinite; no finite value")
        return self._value

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return "Divergent" if self.is_divergent else f"Finite({self._value!r})"


def _check_theta(family: Family, theta: float, name: str = "theta") -> float:
    theta = float(theta)
    if not math.isfinite(theta):
        raise ValueError(f"{name} must be finite")
    if isinstance(family, UniformScale) and theta <= 0:
        raise ValueError(f"Uniform scale family requires {name} > 0, got {theta}")
    return theta


def density(family: Family, theta: float, x: float) -> float:
    """Model density dP_theta/dx at x; zero outside the support."""
    theta = _check_theta(family, theta)
    x = float(x)
    if isinstance(family, GaussianLocation):
        return normal_pdf((x - theta) / family.sigma) / family.sigma
    if 0.0 <= x <= theta:
        return 1.0 / theta
    return 0.0


def fisher_info(family: Family, theta: float) -> DivergenceValue:
    """Per-observation Fisher information; Divergent for the uniform family.

    Hellinger differentiability fails for Unif(0, theta), so no finite
    information exists there.
    """
    _check_theta(family, theta)
    if isinstance(family, GaussianLocation):
        return DivergenceValue.finite(1.0 / family.sigma**2)
    return DivergenceValue.divergent()


def hellinger_sq(family: Family, theta1: float, theta2: float) -> float:
    """Squared Hellinger distance H^2(P_theta1, P_theta2), in [0, 2].

    Gaussian: 2 - 2 exp(-(theta1-theta2)^2 / (8 sigma^2)).
    Uniform:  2 (1 - (1 + h/theta_min)^(-1/2)) with h = |theta1 - theta2|.
    """
    theta1 = _check_theta(family, theta1, "theta1")
    theta2 = _check_theta(family, theta2, "theta2")
    if isinstance(family, GaussianLocation):
        d = (theta1 - theta2) / family.sigma
        return -2.0 * math.expm1(-d * d / 8.0)
    t_min, t_max = min(theta1, theta2), max(theta1, theta2)
    r = t_min / t_max
    # 2 (1 - sqrt(r)) written without cancellation for r near 1
    return 2.0 * (1.0 - r) / (1.0 + math.sqrt(r))


def chi_sq(family: Family, theta_num: float, theta_den: float) -> DivergenceValue:
    """Chi-squared divergence chi^2(P_theta_num || P_theta_den).

    Divergent when the numerator distribution is not dominated by the
    denominator (uniform family with theta_num > theta_den).
    """
    theta_num = _check_theta(family, theta_num, "theta_num")
    theta_den = _check_theta(family, theta_den, "theta_den")
    if isinstance(family, GaussianLocation):
        d = (theta_num - theta_den) / family.sigma
        return DivergenceValue.finite(math.expm1(d * d))
    if theta_num > theta_den:
        return DivergenceValue.divergent()
    return DivergenceValue.finite(theta_den / theta_num - 1.0)


def hellinger_sq_iid(family: Family, theta1: float, theta2: float, n: int) -> float:
    """n-fold tensorization 2 - 2 (1 - H^2/2)^n of the squared Hellinger."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    h2 = hellinger_sq(family, theta1, theta2)
    if n == 1:
        return h2
    if h2 >= 2.0:
        return 2.0
    # 2 - 2 (1 - h2/2)^n via expm1/log1p to keep precision at small h2
    return -2.0 * math.expm1(n * math.log1p(-h2 / 2.0))


def chi_sq_iid(family: Family, theta_num: float, theta_den: float, n: int) -> DivergenceValue:
    """n-fold tensorization (1 + chi^2)^n - 1; Divergent propagates."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    per_obs = chi_sq(family, theta_num, theta_den)
    if per_obs.is_divergent:
        return per_obs
    if n == 1:
        return per_obs
    log_term = n * math.log1p(per_obs.value)
    if log_term > 700.0:  # exp would overflow; effectively infinite
        return DivergenceValue.divergent()
    return DivergenceValue.finite(math.expm1(log_term))


def hellinger_local_ratio(family: Family, theta: float, h: float) -> float:
    """Raw local ratio H^2(theta, theta + h) / h^2.

    Approaches I(theta)/4 as h -> 0 for the Gaussian family; grows without
    bound like 1/(2 theta h) for the uniform family, exhibiting the
    non-quadratic (alpha = 1) local behavior of the irregular model.
    """
    h = float(h)
    if h == 0.0:
        raise ValueError("h must be nonzero")
    return hellinger_sq(family, theta, theta + h) / (h * h)
