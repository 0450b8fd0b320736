"""Divergences between the shifted joint mixture measures

    dM0(x, t) = p_t(x) q(t) dx dt      and      dMh(x, t) = p_{t+h}(x) q(t+h) dx dt,

computed through the decomposition identities

    H^2(Mh, M0)    = H^2(Q_h, Q) + int sqrt(q(t+h) q(t)) H^2(P^n_{t+h}, P^n_t) dt,
    chi^2(Mh||M0)  = int_{q>0} q(t+h)^2/q(t) (1 + chi^2(P^n_{t+h}||P^n_t)) dt - 1,

plus a brute-force 2-D grid oracle (n = 1 only) validating the Hellinger
identity. The computation path is always the outer t-quadrature with the
closed-form inner divergence, never an n-dimensional x-integral, so large n
costs nothing; the tensorization closed forms keep it exact.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .models import (DivergenceValue, Family, GaussianLocation, UniformScale,
                     chi_sq_iid, hellinger_sq_iid)
from .numerics import DEFAULT_QUAD, QuadratureSpec, integrate_piecewise
from .priors import (GaussianPrior, Prior, prior_density, prior_dispersion,
                     prior_support)

_TAIL_SIGMAS = 12.0


class CoverageWarning(UserWarning):
    """The oracle grid does not cover enough probability mass."""


@dataclass(frozen=True)
class MixtureSpec:
    """Inputs of a mixture divergence: family, sample size, prior, shift.

    The shift acts on the prior's native real line, so Q(.+h) is always
    well-defined regardless of the family's parameter constraints.
    """

    family: Family
    n: int
    prior: Prior
    h: float
    quad: QuadratureSpec = DEFAULT_QUAD

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be a positive integer")
        if not math.isfinite(self.h):
            raise ValueError("h must be finite")


@dataclass(frozen=True)
class GridSpec:
    """Rectangular trapezoid grid for the brute-force oracles."""

    t_lo: float
    t_hi: float
    x_lo: float
    x_hi: float
    t_points: int = 2001
    x_points: int = 2001

    def __post_init__(self):
        if not (self.t_lo < self.t_hi and self.x_lo < self.x_hi):
            raise ValueError("grid bounds must satisfy lo < hi")
        for p in (self.t_points, self.x_points):
            if p < 11 or p % 2 == 0:
                raise ValueError("grid points must be odd and >= 11")


def _finite_window(prior: Prior, pad: float) -> Tuple[float, float]:
    """A finite interval carrying all but a negligible tail of the prior."""
    lo, hi = prior_support(prior)
    if math.isinf(lo) or math.isinf(hi):
        disp = prior_dispersion(prior)
        mu = prior.mu if isinstance(prior, GaussianPrior) else 0.0
        return mu - _TAIL_SIGMAS * disp - pad, mu + _TAIL_SIGMAS * disp + pad
    return lo, hi


def _prior_cuts(prior: Prior) -> Tuple[float, ...]:
    lo, hi = prior_support(prior)
    cuts = []
    for v in (lo, hi):
        if math.isfinite(v):
            cuts.append(v)
    return tuple(cuts)


def _overlap_region(prior: Prior, h: float) -> Optional[Tuple[float, float, Tuple[float, ...]]]:
    """Region where q(t) q(t+h) > 0, with kink cut points, or None if empty."""
    lo0, hi0 = _finite_window(prior, 0.0)
    lo1, hi1 = lo0 - h, hi0 - h
    lo, hi = max(lo0, lo1), min(hi0, hi1)
    if lo >= hi:
        return None
    cuts = tuple(c for c in (*_prior_cuts(prior), *(c - h for c in _prior_cuts(prior)))
                 if lo < c < hi)
    return lo, hi, cuts


def _shift_quad_spec(quad: QuadratureSpec, h: float) -> QuadratureSpec:
    """Tolerance scaled down with h^2: shift divergences shrink quadratically,
    so a fixed absolute tolerance would swamp them at small shifts."""
    tol = max(1e-15, min(quad.abs_tol, quad.abs_tol * h * h))
    return QuadratureSpec(abs_tol=tol, rel_tol=quad.rel_tol,
                          max_depth=quad.max_depth,
                          hermite_order=quad.hermite_order)


def _union_region(prior: Prior, h: float) -> Tuple[float, float, Tuple[float, ...]]:
    """Window and kink cuts covering the supports of both q and q(. + h)."""
    lo0, hi0 = _finite_window(prior, 0.0)
    lo, hi = min(lo0, lo0 - h), max(hi0, hi0 - h)
    cuts = tuple(c for c in (*_prior_cuts(prior), *(c - h for c in _prior_cuts(prior)))
                 if lo < c < hi)
    return lo, hi, cuts


def prior_shift_hellinger_sq(prior: Prior, h: float,
                             quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """H^2(Q_h, Q) = int (sqrt(q(t+h)) - sqrt(q(t)))^2 dt by quadrature.

    The squared-difference form avoids the catastrophic cancellation of
    2 - 2 int sqrt(q_h q) when the shift is small.
    """
    h = float(h)
    if h == 0.0:
        return 0.0
    if _overlap_region(prior, h) is None:  # disjoint supports
        return 2.0
    lo, hi, cuts = _union_region(prior, h)

    def integrand(t: float) -> float:
        d = math.sqrt(prior_density(prior, t + h)) - math.sqrt(prior_density(prior, t))
        return d * d

    val = integrate_piecewise(integrand, lo, hi, cuts,
                              _shift_quad_spec(quad, h), min_panels=16)
    return min(max(val, 0.0), 2.0)


def mixture_hellinger_sq(spec: MixtureSpec) -> float:
    """Squared Hellinger distance between the shifted joint mixtures.

    Uses the decomposition identity with the n-fold family divergence in
    closed form inside the prior quadrature; always finite, in [0, 2].
    """
    h = float(spec.h)
    if h == 0.0:
        return 0.0
    prior_part = prior_shift_hellinger_sq(spec.prior, h, spec.quad)
    region = _overlap_region(spec.prior, h)
    if region is None:
        return 2.0
    lo, hi, cuts = region
    if isinstance(spec.family, UniformScale) and (lo <= 0.0 or lo + h <= 0.0):
        raise ValueError("uniform family requires the prior (and its shift) "
                         "to be supported on positive parameters")

    def integrand(t: float) -> float:
        w = math.sqrt(prior_density(spec.prior, t + h) * prior_density(spec.prior, t))
        if w == 0.0:
            return 0.0
        return w * hellinger_sq_iid(spec.family, t + h, t, spec.n)

    family_part = integrate_piecewise(integrand, lo, hi, cuts,
                                      _shift_quad_spec(spec.quad, h),
                                      min_panels=16)
    return min(max(prior_part + family_part, 0.0), 2.0)


def mixture_chi_sq(spec: MixtureSpec) -> DivergenceValue:
    """Chi-squared divergence chi^2(Mh || M0) of the shifted joint mixtures.

    For a dominated shift (full-support priors) this is
    int q(t+h)^2/q(t) (1 + chi^2_n(t)) dt - 1, the decomposition
    chi^2(Q_h||Q) + int chi^2_n dQ_h^2/dQ. Divergent when the shifted prior
    is not dominated (every compact-support prior with h != 0) or when the
    per-observation chi-squared is infinite on a set of positive prior mass
    (uniform family with h > 0).
    """
    h = float(spec.h)
    if h == 0.0:
        return DivergenceValue.finite(0.0)
    if isinstance(spec.family, UniformScale) and h > 0:
        return DivergenceValue.divergent()
    lo_s, hi_s = prior_support(spec.prior)
    if math.isfinite(lo_s) or math.isfinite(hi_s):
        # a shifted interval is never contained in itself
        return DivergenceValue.divergent()
    lo, hi = _finite_window(spec.prior, 0.0)
    if isinstance(spec.family, UniformScale) and (lo <= 0.0 or lo + h <= 0.0):
        raise ValueError("uniform family requires the prior (and its shift) "
                         "to be supported on positive parameters")

    # The ratio q(t+h)^2/q(t) concentrates around a shifted location
    # (center - 2h for a Gaussian prior); widen the window accordingly.
    pad = 2.0 * abs(h)
    lo, hi = lo - pad, hi + pad

    def integrand(t: float) -> float:
        q0 = prior_density(spec.prior, t)
        if q0 <= 0.0:
            return 0.0
        qh = prior_density(spec.prior, t + h)
        if qh == 0.0:
            return 0.0
        per = chi_sq_iid(spec.family, t + h, t, spec.n)
        if per.is_divergent:
            raise _DivergentSignal()
        return qh * qh / q0 * (1.0 + per.value)

    try:
        total = integrate_piecewise(integrand, lo, hi, (),
                                    _shift_quad_spec(spec.quad, h),
                                    min_panels=16)
    except _DivergentSignal:
        return DivergenceValue.divergent()
    return DivergenceValue.finite(max(total - 1.0, 0.0))


class _DivergentSignal(Exception):
    pass


def _trapezoid(values: np.ndarray, spacing: float, axis: int = -1) -> np.ndarray:
    try:
        return np.trapezoid(values, dx=spacing, axis=axis)
    except AttributeError:  # numpy < 2
        return np.trapz(values, dx=spacing, axis=axis)


def _family_density_grid(family: Family, thetas: np.ndarray, xs: np.ndarray) -> np.ndarray:
    """Matrix p_theta(x) with shape (len(thetas), len(xs))."""
    t = thetas[:, None]
    x = xs[None, :]
    if isinstance(family, GaussianLocation):
        s = family.sigma
        return np.exp(-0.5 * ((x - t) / s) ** 2) / (s * math.sqrt(2.0 * math.pi))
    if np.any(thetas <= 0):
        raise ValueError("uniform family requires positive parameters on the grid")
    return np.where((x >= 0.0) & (x <= t), 1.0 / t, 0.0)


def _prior_density_grid(prior: Prior, ts: np.ndarray) -> np.ndarray:
    return np.array([prior_density(prior, float(t)) for t in ts])


def default_grid(family: Family, prior: Prior, h: float,
                 t_points: int = 2001, x_points: int = 2001) -> GridSpec:
    """A grid covering the prior (and its shift) plus 8-sigma family tails."""
    lo, hi = _finite_window(prior, 0.0)
    t_lo, t_hi = min(lo, lo - h), max(hi, hi - h)
    if isinstance(family, GaussianLocation):
        pad = 8.0 * family.sigma
        x_lo, x_hi = t_lo - pad, t_hi + pad
    else:
        x_lo, x_hi = 0.0, t_hi + abs(h)
    return GridSpec(t_lo=t_lo, t_hi=t_hi, x_lo=x_lo, x_hi=x_hi,
                    t_points=t_points, x_points=x_points)


def _check_coverage(family: Family, prior: Prior, h: float, grid: GridSpec) -> None:
    lo, hi = _finite_window(prior, 0.0)
    t_lo, t_hi = min(lo, lo - h), max(hi, hi - h)
    if grid.t_lo > t_lo or grid.t_hi < t_hi:
        warnings.warn("t-grid does not cover the prior and its shift",
                      CoverageWarning, stacklevel=3)
    if isinstance(family, GaussianLocation):
        pad = 8.0 * family.sigma
        if grid.x_lo > t_lo - pad or grid.x_hi < t_hi + pad:
            warnings.warn("x-grid does not cover 8 sigma around the parameter range",
                          CoverageWarning, stacklevel=3)
    else:
        if grid.x_lo > 0.0 or grid.x_hi < t_hi + abs(h):
            warnings.warn("x-grid does not cover the full uniform support",
                          CoverageWarning, stacklevel=3)


def mixture_hellinger_oracle(family: Family, prior: Prior, h: float,
                             grid: GridSpec) -> float:
    """Brute-force trapezoid evaluation of H^2(Mh, M0) at n = 1.

    Sums (sqrt(p_{t+h}(x) q(t+h)) - sqrt(p_t(x) q(t)))^2 over the (x, t)
    grid. Exists to validate the decomposition identity; not a computation
    path for bounds.
    """
    h = float(h)
    _check_coverage(family, prior, h, grid)
    ts = np.linspace(grid.t_lo, grid.t_hi, grid.t_points)
    xs = np.linspace(grid.x_lo, grid.x_hi, grid.x_points)
    q0 = _prior_density_grid(prior, ts)
    qh = _prior_density_grid(prior, ts + h)
    p0 = _family_density_grid(family, ts, xs)
    ph = _family_density_grid(family, ts + h, xs)
    diff = np.sqrt(ph * qh[:, None]) - np.sqrt(p0 * q0[:, None])
    inner = _trapezoid(diff * diff, (grid.x_hi - grid.x_lo) / (grid.x_points - 1), axis=1)
    return float(_trapezoid(inner, (grid.t_hi - grid.t_lo) / (grid.t_points - 1), axis=0))


def mixture_chi_sq_interpolated_grid(family: Family, prior: Prior, h: float,
                                     lam: float, grid: GridSpec) -> float:
    """2-D grid evaluation of chi^2(Mh || lam Mh + (1-lam) M0) at n = 1.

    Equals (1-lam)^2 int int (dMh - dM0)^2 / (lam dMh + (1-lam) dM0) over the
    region where the interpolated density is positive. This is the only
    computation path for the lambda-interpolated denominator; no
    tensorization identity exists for the interpolated mixture, so n > 1 is
    not offered here.
    """
    h = float(h)
    if not (0.0 <= lam <= 1.0):
        raise ValueError("lambda must lie in [0, 1]")
    _check_coverage(family, prior, h, grid)
    ts = np.linspace(grid.t_lo, grid.t_hi, grid.t_points)
    xs = np.linspace(grid.x_lo, grid.x_hi, grid.x_points)
    q0 = _prior_density_grid(prior, ts)
    qh = _prior_density_grid(prior, ts + h)
    g0 = _family_density_grid(family, ts, xs) * q0[:, None]
    gh = _family_density_grid(family, ts + h, xs) * qh[:, None]
    mix = lam * gh + (1.0 - lam) * g0
    num = (gh - g0) ** 2
    ratio = np.divide(num, mix, out=np.zeros_like(num), where=mix > 0.0)
    inner = _trapezoid(ratio, (grid.x_hi - grid.x_lo) / (grid.x_points - 1), axis=1)
    outer = float(_trapezoid(inner, (grid.t_hi - grid.t_lo) / (grid.t_points - 1), axis=0))
    return (1.0 - lam) ** 2 * outer
