"""Prior densities on the real line with Fisher information, dilation, and
the Kepler-equation solver for constrained minimum-Fisher-information
squared-cosine priors.

The constrained problem: among densities supported inside [-1, 1] with
integral a over [0, 1], minimize the Fisher information J(q) = int q'^2/q.
The minimizer is a single squared-cosine piece whose support geometry is
governed by the transcendental map y -> y + sin(pi*y)/pi (the Kepler
equation), solved here by bisection. The minimum is 4*pi^2/w^2 where w is
the support width; w = 2 (the classical cosine prior, information pi^2) is
attained exactly at a = 1/2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple, Union

from .models import DivergenceValue
from .numerics import find_root_bisect, normal_pdf

_PI = math.pi


@dataclass(frozen=True)
class Cosine:
    """q(t) = (1/halfwidth) cos^2(pi (t-center) / (2 halfwidth)) on center +- halfwidth."""

    center: float = 0.0
    halfwidth: float = 1.0

    def __post_init__(self):
        if not (self.halfwidth > 0 and math.isfinite(self.halfwidth)):
            raise ValueError("halfwidth must be positive and finite")


@dataclass(frozen=True)
class GaussianPrior:
    mu: float = 0.0
    sigma: float = 1.0

    def __post_init__(self):
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise ValueError("sigma must be positive and finite")


@dataclass(frozen=True)
class UniformPrior:
    """Flat density on [lo, hi]; kept for oracle use, not 'nice' (no boundary decay)."""

    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("UniformPrior requires lo < hi")


@dataclass(frozen=True)
class KeplerSolution:
    """Solved geometry of the constrained minimum-Fisher cosine prior.

    y_a solves y + sin(pi*y)/pi = 2a - 1 on [-1, 1]; the support width on
    the unit scale is w_a = 2/(|y_a| + 1) and the minimum Fisher information
    is 4*pi^2/w_a^2. Side selection: mass constraint a > 1/2 pushes the
    support against the right edge (s_plus = 1), a <= 1/2 against the left
    (s_minus = -1); at a = 1/2 both rules give the symmetric [-1, 1].
    """

    a: float
    y_a: float
    w_a: float
    s_minus: float
    s_plus: float
    min_fisher: float


@dataclass(frozen=True)
class KeplerCosine:
    """Location-scale dilation of the constrained-minimizer cosine prior."""

    a: float
    solution: KeplerSolution
    center: float = 0.0
    scale: float = 1.0

    def __post_init__(self):
        if not (self.scale > 0 and math.isfinite(self.scale)):
            raise ValueError("scale must be positive and finite")

    @staticmethod
    def for_constraint(a: float, center: float = 0.0, scale: float = 1.0,
                       tol: float = 1e-13) -> "KeplerCosine":
        return KeplerCosine(a, solve_kepler(a, tol), center, scale)


Prior = Union[Cosine, GaussianPrior, UniformPrior, KeplerCosine]


@dataclass(frozen=True)
class NicenessReport:
    """Which of the nice-prior conditions hold; is_nice iff reasons is empty."""

    is_nice: bool
    reasons: Tuple[str, ...]


def solve_kepler(a: float, tol: float = 1e-13) -> KeplerSolution:
    """Invert y + sin(pi*y)/pi = 2a - 1 by bisection on [-1, 1].

    The map is strictly increasing with flat spots exactly at y = +-1, so
    bisection (rather than Newton) is used; flatness near the endpoints only
    tightens the residual. Returns the full support geometry.
    """
    a = float(a)
    if not (0.0 <= a <= 1.0):
        raise ValueError(f"a must lie in [0, 1], got {a}")
    if not (tol > 0):
        raise ValueError("tol must be positive")
    m = 2.0 * a - 1.0
    if m == -1.0:
        y = -1.0
    elif m == 1.0:
        y = 1.0
    elif m == 0.0:
        y = 0.0
    else:
        y = find_root_bisect(lambda t: t + math.sin(_PI * t) / _PI - m, -1.0, 1.0, tol)
    w = 2.0 / (abs(y) + 1.0)
    if a > 0.5:
        s_plus, s_minus = 1.0, 1.0 - w
    else:
        s_minus, s_plus = -1.0, w - 1.0
    return KeplerSolution(a=a, y_a=y, w_a=w, s_minus=s_minus, s_plus=s_plus,
                          min_fisher=4.0 * _PI * _PI / (w * w))


def min_fisher_constrained(a: float) -> float:
    """Smallest Fisher information over densities on [-1,1] with mass a on [0,1].

    Equals 4*pi^2/w_a^2; minimized (pi^2) uniquely at a = 1/2 and increasing
    in |2a - 1| as the constraint narrows the usable support width.
    """
    return solve_kepler(a).min_fisher


def _kepler_density_unit(sol: KeplerSolution, t: float) -> float:
    if t < sol.s_minus or t > sol.s_plus:
        return 0.0
    w = sol.w_a
    c = 0.5 * (sol.s_plus + sol.s_minus)
    val = math.cos(_PI * (t - c) / w)
    return (2.0 / w) * val * val


def kepler_prior_density(a: float, t: float) -> float:
    """Constrained-minimizer density on the unit scale; 0 outside [s-, s+]."""
    return _kepler_density_unit(solve_kepler(a), float(t))


def prior_density(prior: Prior, t: float) -> float:
    """Prior density q(t); zero outside the support."""
    t = float(t)
    if isinstance(prior, Cosine):
        u = (t - prior.center) / prior.halfwidth
        if abs(u) >= 1.0:
            return 0.0
        val = math.cos(_PI * u / 2.0)
        return val * val / prior.halfwidth
    if isinstance(prior, GaussianPrior):
        return normal_pdf((t - prior.mu) / prior.sigma) / prior.sigma
    if isinstance(prior, UniformPrior):
        return 1.0 / (prior.hi - prior.lo) if prior.lo <= t <= prior.hi else 0.0
    u = (t - prior.center) / prior.scale
    return _kepler_density_unit(prior.solution, u) / prior.scale


def prior_fisher_info(prior: Prior) -> DivergenceValue:
    """Fisher information I(Q) = int q'^2/q; scales as scale^-2 under dilation.

    The flat prior is not absolutely continuous with decaying boundary, so
    its information is Divergent.
    """
    if isinstance(prior, Cosine):
        return DivergenceValue.finite(_PI * _PI / prior.halfwidth**2)
    if isinstance(prior, GaussianPrior):
        return DivergenceValue.finite(1.0 / prior.sigma**2)
    if isinstance(prior, UniformPrior):
        return DivergenceValue.divergent()
    return DivergenceValue.finite(prior.solution.min_fisher / prior.scale**2)


def dilate(prior: Prior, center: float, scale: float) -> Prior:
    """Location-scale map: density t -> (1/scale) q((t - center)/scale).

    Composes multiplicatively in scale; Fisher information picks up scale^-2.
    """
    center = float(center)
    scale = float(scale)
    if not (scale > 0 and math.isfinite(scale)):
        raise ValueError("scale must be positive and finite")
    if not math.isfinite(center):
        raise ValueError("center must be finite")
    if isinstance(prior, Cosine):
        return Cosine(center + scale * prior.center, scale * prior.halfwidth)
    if isinstance(prior, GaussianPrior):
        return GaussianPrior(center + scale * prior.mu, scale * prior.sigma)
    if isinstance(prior, UniformPrior):
        return UniformPrior(center + scale * prior.lo, center + scale * prior.hi)
    return KeplerCosine(prior.a, prior.solution,
                        center + scale * prior.center, scale * prior.scale)


def check_nice(prior: Prior) -> NicenessReport:
    """Check the nice-prior conditions: absolutely continuous Lebesgue
    density, finite Fisher information, and density decaying to zero at the
    boundary of its support."""
    reasons = []
    if isinstance(prior, UniformPrior):
        reasons.append("density does not decay to zero at the support boundary")
        reasons.append("Fisher information is not finite (density not "
                       "absolutely continuous with vanishing boundary)")
    return NicenessReport(is_nice=not reasons, reasons=tuple(reasons))


def prior_support(prior: Prior) -> Tuple[float, float]:
    """Support interval of the prior; infinite endpoints for the Gaussian."""
    if isinstance(prior, Cosine):
        return prior.center - prior.halfwidth, prior.center + prior.halfwidth
    if isinstance(prior, GaussianPrior):
        return -math.inf, math.inf
    if isinstance(prior, UniformPrior):
        return prior.lo, prior.hi
    sol = prior.solution
    return (prior.center + prior.scale * sol.s_minus,
            prior.center + prior.scale * sol.s_plus)


def prior_dispersion(prior: Prior) -> float:
    """A scale measure used to size shift-search windows and truncations."""
    if isinstance(prior, Cosine):
        return prior.halfwidth
    if isinstance(prior, GaussianPrior):
        return prior.sigma
    if isinstance(prior, UniformPrior):
        return 0.5 * (prior.hi - prior.lo)
    return prior.scale
