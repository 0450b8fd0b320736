"""Lower-bound evaluators: the mixture Hellinger and chi-squared bounds, the
Kepler least-favorable-prior bound, the Gaussian-prior/arctan bound, the
refined two-point Hellinger bound, the scalar asymptotic constants, and the
density-estimation constant C(s, M, K).

Conventions. All bound values are >= 0 with exact clamping at zero. The
Kepler and arctan bounds are returned n-scaled (they bound
n E|T - max(theta,0)|^2), matching the figure axes; the mixture and
two-point bounds are un-scaled (they bound E|T - psi|^2 for the full
n-observation experiment).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple, Union

import numpy as np

from .mixtures import (GridSpec, MixtureSpec, default_grid,
                       mixture_chi_sq, mixture_chi_sq_interpolated_grid,
                       mixture_hellinger_sq)
from .models import Family, GaussianLocation, hellinger_sq_iid
from .numerics import (DEFAULT_QUAD, QuadratureSpec, SearchBox,
                       composite_simpson, integrate_piecewise, maximize_1d,
                       maximize_2d)
from .priors import (Prior, check_nice, prior_density, prior_dispersion,
                     prior_fisher_info, prior_support, solve_kepler)

_PI = math.pi
_SQRT_2PI = math.sqrt(2.0 * math.pi)
_Z_MAX = 12.0  # standard normal mass beyond is ~1e-33
_SIMPSON_NODES = 2049


class DegenerateKernelError(ValueError):
    """The kernel's s-th derivative vanishes at zero; C(s, M, K) undefined."""


@dataclass(frozen=True)
class Identity:
    """psi(theta) = theta."""


@dataclass(frozen=True)
class MaxZero:
    """psi(theta) = max(theta, 0)."""


@dataclass(frozen=True)
class PowerMax:
    """psi(theta) = max(theta^alpha, 0) = theta^alpha for theta > 0, else 0."""

    alpha: float

    def __post_init__(self):
        if not (0.0 < self.alpha <= 1.0):
            raise ValueError("alpha must lie in (0, 1]")


Functional = Union[Identity, MaxZero, PowerMax]


@dataclass(frozen=True)
class BoundResult:
    """A non-negative bound value, the optimizer arguments, and a method tag."""

    value: float
    argmax: Dict[str, float] = field(default_factory=dict)
    method: str = ""


def functional_eval(f: Functional, theta: float) -> float:
    theta = float(theta)
    if isinstance(f, Identity):
        return theta
    if isinstance(f, MaxZero):
        return max(theta, 0.0)
    if theta <= 0.0:
        return 0.0
    return theta ** f.alpha


def _functional_kinks(f: Functional) -> Tuple[float, ...]:
    return () if isinstance(f, Identity) else (0.0,)


def _require_nice(prior: Prior) -> None:
    report = check_nice(prior)
    if not report.is_nice:
        raise ValueError("prior is not nice: " + "; ".join(report.reasons))


def _psi_window(prior: Prior) -> Tuple[float, float]:
    lo, hi = prior_support(prior)
    if math.isinf(lo) or math.isinf(hi):
        disp = prior_dispersion(prior)
        center = prior.mu if hasattr(prior, "mu") else 0.0
        return center - 12.0 * disp, center + 12.0 * disp
    return lo, hi


def delta_psi_moments(prior: Prior, f: Functional, h: float,
                      quad: QuadratureSpec = DEFAULT_QUAD) -> Tuple[float, float]:
    """First and second prior moments of psi(t) - psi(t - h).

    Quadrature splits at the functional kinks (t = 0 for psi(t), t = h for
    psi(t - h)) and at the prior support endpoints, so no panel straddles a
    non-smooth point.
    """
    lo, hi = _psi_window(prior)
    kinks = [*(k for k in _functional_kinks(f)), *(k + h for k in _functional_kinks(f))]

    def dpsi(t: float) -> float:
        return functional_eval(f, t) - functional_eval(f, t - h)

    first = integrate_piecewise(lambda t: dpsi(t) * prior_density(prior, t),
                                lo, hi, kinks, quad, min_panels=8)
    second = integrate_piecewise(lambda t: dpsi(t) ** 2 * prior_density(prior, t),
                                 lo, hi, kinks, quad, min_panels=8)
    return first, second


def hellinger_mixture_terms(family: Family, n: int, prior: Prior, f: Functional,
                            h: float, quad: QuadratureSpec = DEFAULT_QUAD
                            ) -> Tuple[float, float]:
    """The pair (A, B) of the Hellinger mixture bound.

    A = |int (psi(t) - psi(t-h)) dQ|^2 / (4 H^2(M0, Mh)) is the term that
    recovers the van Trees value as h -> 0; B = int (psi(t)-psi(t-h))^2 dQ
    is the finite-shift penalty.
    """
    _require_nice(prior)
    h = float(h)
    if h == 0.0:
        raise ValueError("h must be nonzero")
    num, second = delta_psi_moments(prior, f, h, quad)
    h2 = mixture_hellinger_sq(MixtureSpec(family, n, prior, h, quad))
    if h2 < 1e-14:
        raise ValueError(f"mixture Hellinger distance degenerate (H^2={h2!r}) at h={h}")
    return num * num / (4.0 * h2), second


def hellinger_mixture_bound(family: Family, n: int, prior: Prior, f: Functional,
                            h: float, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Hellinger mixture bound [sqrt(A) - sqrt(B)]_+^2 at a fixed shift h."""
    a, b = hellinger_mixture_terms(family, n, prior, f, h, quad)
    root = math.sqrt(a) - math.sqrt(b)
    return root * root if root > 0.0 else 0.0


def hellinger_mixture_bound_sup(family: Family, n: int, prior: Prior, f: Functional,
                                h_lo: float, h_hi: float,
                                quad: QuadratureSpec = DEFAULT_QUAD) -> BoundResult:
    """Maximize the Hellinger mixture bound over |h| in [h_lo, h_hi], both signs."""
    if not (0.0 < h_lo < h_hi):
        raise ValueError("need 0 < h_lo < h_hi")

    def for_sign(sign: float) -> Tuple[float, float]:
        return maximize_1d(
            lambda h: hellinger_mixture_bound(family, n, prior, f, sign * h, quad),
            h_lo, h_hi)

    hp, vp = for_sign(1.0)
    hm, vm = for_sign(-1.0)
    if vp >= vm:
        return BoundResult(max(vp, 0.0), {"h": hp}, "hellinger-mixture")
    return BoundResult(max(vm, 0.0), {"h": -hm}, "hellinger-mixture")


def default_shift_range(prior: Prior) -> Tuple[float, float]:
    """Default |h| search window scaled by the prior's dispersion."""
    scale = prior_dispersion(prior)
    return 1e-4 * scale, 10.0 * scale


def chi2_mixture_bound(family: Family, n: int, prior: Prior, f: Functional,
                       h: float, lam: float,
                       quad: QuadratureSpec = DEFAULT_QUAD,
                       grid: Optional[GridSpec] = None) -> float:
    """Chi-squared mixture bound with the closed-form inner optimization.

    Evaluates [sqrt((1-lam){A - lam(A+B)}) - sqrt(lam^2 B)]_+^2 where A has
    the lambda-interpolated chi-squared denominator and B is the second
    shift moment; the value is zero when (1-lam)^2 A <= lam B. At lam = 0
    this reduces to A = |int dpsi dQ|^2 / chi^2(Mh||M0) (the mixture HCR
    form), computed by the decomposition path for any n; a Divergent
    denominator yields the trivial bound 0. For 0 < lam < 1 the denominator
    has no tensorization identity and is evaluated on a 2-D grid at n = 1
    only (API restriction).
    """
    h = float(h)
    lam = float(lam)
    if not (0.0 <= lam <= 1.0):
        raise ValueError("lambda must lie in [0, 1]")
    if h == 0.0:
        raise ValueError("h must be nonzero")
    if lam == 1.0:
        return 0.0
    num, second = delta_psi_moments(prior, f, h, quad)
    if num == 0.0:
        return 0.0
    if lam == 0.0:
        denom = mixture_chi_sq(MixtureSpec(family, n, prior, h, quad))
        if denom.is_divergent or denom.value <= 0.0:
            return 0.0
        return num * num / denom.value
    if n != 1:
        raise ValueError("lambda > 0 requires n = 1: the interpolated "
                         "chi-squared has no tensorization identity")
    if grid is None:
        grid = default_grid(family, prior, h)
    denom = mixture_chi_sq_interpolated_grid(family, prior, h, lam, grid)
    if denom <= 0.0:
        return 0.0
    a = num * num / denom
    b = second
    if (1.0 - lam) ** 2 * a <= lam * b:
        return 0.0
    root = math.sqrt((1.0 - lam) * (a - lam * (a + b))) - lam * math.sqrt(b)
    return root * root if root > 0.0 else 0.0


def van_trees_value(family: Family, n: int, prior: Prior, f: Functional,
                    quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Classical van Trees value (int grad psi dQ)^2 / (I(Q) + n int I dQ).

    Requires a regular (Gaussian) family and a nice prior. The a.e.
    derivative of max(theta, 0) is the indicator 1{theta > 0} (the kink at 0
    has prior measure zero); max(theta^alpha, 0) integrates via the
    substitution u = t^alpha, which removes the t^(alpha-1) singularity.
    """
    if not isinstance(family, GaussianLocation):
        raise ValueError("van Trees value requires the Gaussian family "
                         "(uniform family has divergent Fisher information)")
    if n < 1:
        raise ValueError("n must be a positive integer")
    _require_nice(prior)
    lo, hi = _psi_window(prior)
    if isinstance(f, Identity):
        num = 1.0
    elif isinstance(f, MaxZero):
        num = 0.0 if hi <= 0.0 else integrate_piecewise(
            lambda t: prior_density(prior, t), max(lo, 0.0), hi, (), quad,
            min_panels=8)
    else:
        num = 0.0 if hi <= 0.0 else integrate_piecewise(
            lambda u: prior_density(prior, u ** (1.0 / f.alpha)),
            0.0, hi ** f.alpha, (), quad, min_panels=8)
    denom = prior_fisher_info(prior).value + n / family.sigma ** 2
    return num * num / denom


def vt_kepler_bound(delta: float, n: int, sup_fisher: float) -> BoundResult:
    """n-scaled Kepler bound: max over a in [0,1] of
    n a^2 / (4 pi^2 delta^-2 / w_a^2 + n sup_fisher).

    The numerator mass constraint a selects a least-favorable constrained
    cosine prior whose minimum Fisher information 4 pi^2 / w_a^2 enters the
    denominator after dilation to the delta-neighborhood.
    """
    if not (delta > 0 and math.isfinite(delta)):
        raise ValueError("delta must be positive and finite")
    if n < 1:
        raise ValueError("n must be a positive integer")
    if not (sup_fisher > 0 and math.isfinite(sup_fisher)):
        raise ValueError("sup_fisher must be positive and finite")

    def objective(a: float) -> float:
        sol = solve_kepler(min(max(a, 0.0), 1.0))
        return n * a * a / (sol.min_fisher / delta**2 + n * sup_fisher)

    a_best, value = maximize_1d(objective, 0.0, 1.0)
    return BoundResult(max(value, 0.0), {"a": a_best}, "vt-kepler")


def _phi_vec(z: np.ndarray) -> np.ndarray:
    return np.exp(-0.5 * z * z) / _SQRT_2PI


def _gauss_expectation_simpson(f_vec, lo: float, hi: float,
                               nodes: int = _SIMPSON_NODES) -> float:
    """int_lo^hi f(z) phi(z) dz by composite Simpson on a fixed node count.

    Used for the arctan-bound integrands: they are bounded rational
    functions whose poles sit 1/xi2 off the real axis, where Gauss-Hermite
    rules lose accuracy badly for large xi2; a dense Simpson rule on the
    12-sigma window is uniformly accurate (~1e-10) and equally deterministic.
    """
    if lo >= hi:
        return 0.0
    zs = np.linspace(lo, hi, nodes)
    vals = f_vec(zs) * _phi_vec(zs)
    return composite_simpson(vals, (hi - lo) / (nodes - 1))


def diffeo_bound(delta: float, n: int, xi1: float, xi2: float) -> float:
    """Gaussian-prior/arctan bound at fixed (xi1, xi2), n-scaled.

    With g(z) = (1 + (xi1 + z xi2)^2)^-1:

        4 n xi2^2 |E[g(Z) 1{Z > -xi1/xi2}]|^2
        -------------------------------------- .
        pi^2 delta^-2 + 4 n xi2^2 E[g(Z)^2]

    The xi2^2 factor multiplies both the numerator and the E[g^2] term:
    both sides of the underlying ratio scale by 4 sigma^2/eta^2 = 4 xi2^2,
    which keeps the whole expression below the sigma^2 = 1 ceiling. The
    indicator expectation integrates from the kink upward only.
    """
    if not (delta > 0 and math.isfinite(delta)):
        raise ValueError("delta must be positive and finite")
    if n < 1:
        raise ValueError("n must be a positive integer")
    if not (xi2 > 0 and math.isfinite(xi2)):
        raise ValueError("xi2 must be positive and finite")
    xi1 = float(xi1)

    def g(z: np.ndarray) -> np.ndarray:
        u = xi1 + z * xi2
        return 1.0 / (1.0 + u * u)

    cut = -xi1 / xi2
    e_ind = _gauss_expectation_simpson(g, max(cut, -_Z_MAX), _Z_MAX)
    e_sq = _gauss_expectation_simpson(lambda z: g(z) ** 2, -_Z_MAX, _Z_MAX)
    scale = 4.0 * n * xi2 * xi2
    value = scale * e_ind * e_ind / (_PI * _PI / delta**2 + scale * e_sq)
    return max(value, 0.0)


DIFFEO_XI1_RANGE = (-10.0, 10.0)
DIFFEO_XI2_RANGE = (1e-3, 10.0)


def diffeo_bound_sup(delta: float, n: int,
                     box: Optional[SearchBox] = None) -> BoundResult:
    """Maximize the arctan bound over xi1 in [-10, 10], xi2 in (1e-3, 10].

    The xi2 axis is searched in log coordinates, giving the log-spaced
    coarse grid; pattern-search refinement then runs in (xi1, log xi2).
    """
    if box is None:
        box = SearchBox(intervals=(DIFFEO_XI1_RANGE,
                                   (math.log(DIFFEO_XI2_RANGE[0]),
                                    math.log(DIFFEO_XI2_RANGE[1]))))
    (x1, lx2), value = maximize_2d(
        lambda a, b: diffeo_bound(delta, n, a, math.exp(b)), box)
    return BoundResult(max(value, 0.0), {"xi1": x1, "xi2": math.exp(lx2)},
                       "diffeo")


def two_point_hellinger_bound(family: Family, n: int, f: Functional,
                              theta1: float, theta2: float) -> float:
    """Refined two-point bound [(1 - H^2_n)/4]_+ |psi(theta1) - psi(theta2)|^2.

    The squared Hellinger distance is taken at the n-fold product level via
    tensorization; once it reaches 1 the bracket is clamped to the trivial
    lower bound zero.
    """
    h2n = hellinger_sq_iid(family, theta1, theta2, n)
    bracket = (1.0 - h2n) / 4.0
    if bracket <= 0.0:
        return 0.0
    dpsi = functional_eval(f, theta1) - functional_eval(f, theta2)
    return bracket * dpsi * dpsi


def regular_twopoint_objective(eps: float) -> float:
    """(-1/4 + exp(-eps^2/8)/2) eps^2, maximized by the regular two-point constant."""
    return (-0.25 + 0.5 * math.exp(-eps * eps / 8.0)) * eps * eps


def uniform_twopoint_objective(eta: float) -> float:
    """4 [-1/4 + exp(-eta)/2]_+ eta^2 from the uniform-model two-point limit."""
    return 4.0 * max(-0.25 + 0.5 * math.exp(-eta), 0.0) * eta * eta


def uniform_diffeo_objective(c: float) -> float:
    """[c / (2 sqrt(2 - 2 exp(-c/2))) - c]_+^2 from the uniform diffeomorphism limit."""
    if c <= 0.0:
        return 0.0
    denom = 2.0 * math.sqrt(-2.0 * math.expm1(-c / 2.0))
    bracket = c / denom - c
    return bracket * bracket if bracket > 0.0 else 0.0


def lam_constant_regular() -> float:
    """The regular two-point asymptotic constant, approximately 0.28953."""
    return maximize_1d(regular_twopoint_objective, 0.0, 10.0)[1]


def lam_constant_uniform_twopoint() -> float:
    """The uniform-model two-point constant, approximately 0.0558."""
    return maximize_1d(uniform_twopoint_objective, 0.0, 10.0)[1]


def lam_constant_uniform_diffeo() -> float:
    """The uniform-model diffeomorphism constant, approximately 0.0635^2."""
    return maximize_1d(uniform_diffeo_objective, 1e-9, 10.0)[1]


@dataclass(frozen=True)
class PolyKernel:
    """Polynomial kernel on [-1, 1]: coeffs are ascending-degree coefficients.

    Valid kernels of order s integrate to one, annihilate the monomials
    u^k for 0 < k < s, and have a finite s-th moment.
    """

    coeffs: Tuple[float, ...]
    order: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("kernel order s must be >= 1")
        if not self.coeffs:
            raise ValueError("kernel needs at least one coefficient")

    def __call__(self, u: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * u + c
        return acc

    def derivative(self, k: int) -> "np.polynomial.Polynomial":
        return np.polynomial.Polynomial(self.coeffs).deriv(k)


def validate_kernel(kernel: PolyKernel, quad: QuadratureSpec = DEFAULT_QUAD) -> None:
    """Check the kernel moment conditions by quadrature."""
    total = integrate_piecewise(kernel, -1.0, 1.0, (), quad)
    if abs(total - 1.0) > 1e-10:
        raise ValueError(f"kernel must integrate to 1 on [-1,1]; got {total!r}")
    for k in range(1, kernel.order):
        mk = integrate_piecewise(lambda u, k=k: u**k * kernel(u), -1.0, 1.0, (0.0,), quad)
        if abs(mk) > 1e-8:
            raise ValueError(f"kernel moment of order {k} must vanish; got {mk!r}")


def density_lam_constant(s: int, M: float, kernel: PolyKernel,
                         quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """The density-estimation constant C(s, M, K).

    All kernel integrals are evaluated by quadrature (with splits at the
    kinks of |u|^s and at the sign changes of the s-th derivative); the
    polynomial derivatives are analytic.
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    if not (M > 0 and math.isfinite(M)):
        raise ValueError("M must be positive and finite")
    if kernel.order != s:
        raise ValueError(f"kernel order {kernel.order} does not match s={s}")
    validate_kernel(kernel, quad)

    deriv = kernel.derivative(s)
    ks0 = float(deriv(0.0))
    if abs(ks0) < 1e-12:
        raise DegenerateKernelError(
            "the kernel's s-th derivative vanishes at 0; C(s, M, K) is undefined")
    ks0 = abs(ks0)

    k_sq = integrate_piecewise(lambda u: kernel(u) ** 2, -1.0, 1.0, (), quad)
    m_s = integrate_piecewise(lambda u: kernel(u) * abs(u) ** s,
                              -1.0, 1.0, (0.0,), quad) / math.factorial(s - 1)
    roots = [float(r.real) for r in deriv.roots()
             if abs(r.imag) < 1e-12 and -1.0 < r.real < 1.0]
    k_ds_abs = integrate_piecewise(lambda u: abs(float(deriv(u))),
                                   -1.0, 1.0, roots, quad)

    exponent = 2.0 * s / (2.0 * s + 1.0)
    prefactor = (8.0 * s**exponent / (4.0 + 8.0 * s)
                 * _PI ** (-2.0 / (2.0 * s + 1.0))
                 * (ks0 / M) ** (2.0 * exponent)
                 * k_sq ** exponent)
    bracket = (M * k_sq / ks0
               - math.sqrt(_PI * _PI * (4.0 + 8.0 * s))
               * abs(m_s) * (1.0 + M * k_ds_abs / ks0))
    if bracket <= 0.0:
        return 0.0
    return prefactor * bracket * bracket
