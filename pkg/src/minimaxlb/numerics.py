"""Deterministic special functions, quadrature, root finding, and
derivative-free optimization shared by the rest of the package.

Everything here is a pure function of its inputs: no randomness, no global
state, bit-reproducible across runs. Optimizers are coarse-grid scans with
local refinement, so they only promise the best *found* value, never a
global-optimality certificate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence, Tuple

import numpy as np
from numpy.polynomial.hermite import hermgauss

_SQRT_2PI = math.sqrt(2.0 * math.pi)
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0  # 0.618..., inverse golden ratio


class BracketError(ValueError):
    """No sign change on the supplied bracket."""


class ToleranceNotMet(RuntimeError):
    """Adaptive quadrature exhausted its depth budget.

    Carries the best estimate obtained so far in ``estimate``.
    """

    def __init__(self, message: str, estimate: float):
        super().__init__(message)
        self.estimate = estimate


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and budgets for the adaptive Simpson integrator."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_depth: int = 60
    hermite_order: int = 80

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("abs_tol and rel_tol must be positive")
        if self.max_depth < 10:
            raise ValueError("max_depth must be at least 10")
        if self.hermite_order < 10:
            raise ValueError("hermite_order must be at least 10")


DEFAULT_QUAD = QuadratureSpec()


@dataclass(frozen=True)
class SearchBox:
    """Axis-aligned search region for the derivative-free optimizers."""

    intervals: Tuple[Tuple[float, float], ...]
    coarse_grid: int = 64
    refine_iters: int = 200

    def __post_init__(self):
        for lo, hi in self.intervals:
            if not lo < hi:
                raise ValueError(f"interval ({lo}, {hi}) must satisfy lo < hi")
        if self.coarse_grid < 3:
            raise ValueError("coarse_grid must be at least 3")
        if self.refine_iters < 0:
            raise ValueError("refine_iters must be non-negative")


def _require_finite(x: float, name: str) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"{name} must be finite, got {x!r}")
    return x


def normal_pdf(x: float) -> float:
    """Standard normal density phi(x) = exp(-x^2/2)/sqrt(2*pi)."""
    x = _require_finite(x, "x")
    return math.exp(-0.5 * x * x) / _SQRT_2PI


def normal_cdf(x: float) -> float:
    """Standard normal CDF via the complementary error function.

    Phi(x) = erfc(-x/sqrt(2))/2, accurate to ~1 ulp over the whole line.
    """
    x = _require_finite(x, "x")
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def gaussian_partial_second_moment(c: float) -> float:
    """E[Z^2 1{Z >= c}] for standard normal Z, in closed form.

    Integration by parts gives c*phi(c) + 1 - Phi(c). Accepts +-inf
    sentinels: c = -inf yields the full second moment 1, c = +inf yields 0.
    """
    c = float(c)
    if math.isnan(c):
        raise ValueError("c must not be NaN")
    if c == -math.inf:
        return 1.0
    if c == math.inf:
        return 0.0
    return c * normal_pdf(c) + 1.0 - normal_cdf(c)


def _simpson(fa: float, fm: float, fb: float, a: float, b: float) -> float:
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def integrate_adaptive(
    f: Callable[[float], float],
    a: float,
    b: float,
    spec: QuadratureSpec = DEFAULT_QUAD,
) -> float:
    """Adaptive Simpson integral of ``f`` over [a, b].

    Deterministic recursion with per-subinterval tolerance splitting; raises
    ToleranceNotMet (carrying the best estimate) if max_depth is exhausted.
    """
    a = _require_finite(a, "a")
    b = _require_finite(b, "b")
    if a > b:
        raise ValueError("integration bounds must satisfy a <= b")
    if a == b:
        return 0.0

    def ev(x: float) -> float:
        y = float(f(x))
        if not math.isfinite(y):
            raise ValueError(f"integrand returned non-finite value at x={x!r}")
        return y

    failed = False

    def rec(lo: float, hi: float, flo: float, fmid: float, fhi: float,
            whole: float, tol: float, depth: int) -> float:
        nonlocal failed
        m = 0.5 * (lo + hi)
        lm = 0.5 * (lo + m)
        rm = 0.5 * (m + hi)
        flm = ev(lm)
        frm = ev(rm)
        left = _simpson(flo, flm, fmid, lo, m)
        right = _simpson(fmid, frm, fhi, m, hi)
        err = left + right - whole
        if abs(err) <= 15.0 * tol or (hi - lo) <= abs(m) * 1e-15:
            return left + right + err / 15.0
        if depth <= 0:
            failed = True
            return left + right + err / 15.0
        half = 0.5 * tol
        return (rec(lo, m, flo, flm, fmid, left, half, depth - 1)
                + rec(m, hi, fmid, frm, fhi, right, half, depth - 1))

    fa, fm, fb = ev(a), ev(0.5 * (a + b)), ev(b)
    whole = _simpson(fa, fm, fb, a, b)
    # effective target: the looser of the absolute tolerance and the
    # relative one anchored at the crude whole-interval estimate
    tol = max(spec.abs_tol, spec.rel_tol * abs(whole))
    result = rec(a, b, fa, fm, fb, whole, tol, spec.max_depth)
    if failed:
        raise ToleranceNotMet(
            f"adaptive Simpson on [{a}, {b}] exhausted max_depth="
            f"{spec.max_depth}", result)
    return result


@lru_cache(maxsize=8)
def hermite_rule(order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes z and weights w with E[g(Z)] ~ sum(w * g(z)), Z ~ N(0,1).

    Physicists' Gauss-Hermite rule with the change of variables z = sqrt(2)x
    and weight normalization by sqrt(pi); sum(w) = 1 up to rounding.
    """
    if order < 2:
        raise ValueError("hermite order must be at least 2")
    x, w = hermgauss(order)
    return math.sqrt(2.0) * x, w / math.sqrt(math.pi)


def gauss_hermite_expectation(g: Callable[[float], float], order: int = 80) -> float:
    """Gauss-Hermite estimate of E[g(Z)] for standard normal Z."""
    z, w = hermite_rule(order)
    total = 0.0
    for zi, wi in zip(z, w):
        gi = float(g(zi))
        if not math.isfinite(gi):
            raise ValueError(f"g returned non-finite value at node z={zi!r}")
        total += wi * gi
    return total


def find_root_bisect(
    f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-13
) -> float:
    """Bisection root on [lo, hi]; requires f(lo)*f(hi) <= 0.

    Returns the midpoint of the final bracket of width <= tol. The flat
    endpoints of monotone maps are harmless: the bracket still shrinks.
    """
    lo = _require_finite(lo, "lo")
    hi = _require_finite(hi, "hi")
    if not (tol > 0):
        raise ValueError("tol must be positive")
    if lo > hi:
        raise ValueError("bracket must satisfy lo <= hi")
    flo = float(f(lo))
    fhi = float(f(hi))
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise BracketError(
            f"no sign change on [{lo}, {hi}]: f(lo)={flo!r}, f(hi)={fhi!r}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:  # bracket at floating-point resolution
            break
        fmid = float(f(mid))
        if fmid == 0.0:
            return mid
        if flo * fmid < 0.0:
            hi = mid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)


def _golden_max(
    f: Callable[[float], float], lo: float, hi: float, iters: int
) -> Tuple[float, float]:
    """Golden-section search for a maximum on [lo, hi]."""
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = float(f(c)), float(f(d))
    best_x, best_v = (c, fc) if fc >= fd else (d, fd)
    for _ in range(iters):
        if b - a <= 1e-14 * max(1.0, abs(a), abs(b)):
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = float(f(c))
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = float(f(d))
        if fc >= best_v:
            best_x, best_v = c, fc
        if fd >= best_v:
            best_x, best_v = d, fd
    return best_x, best_v


def maximize_1d(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    coarse_grid: int = 64,
    refine_iters: int = 200,
) -> Tuple[float, float]:
    """Coarse grid scan plus golden-section refinement around the best cell.

    Returns (argmax, max) of the best point found; the result is never below
    the best coarse-grid value. Deterministic.
    """
    lo = _require_finite(lo, "lo")
    hi = _require_finite(hi, "hi")
    if not lo < hi:
        raise ValueError("maximize_1d requires lo < hi")
    if coarse_grid < 3:
        raise ValueError("coarse_grid must be at least 3")
    xs = np.linspace(lo, hi, coarse_grid)
    vals = [float(f(x)) for x in xs]
    i = max(range(coarse_grid), key=lambda k: vals[k])
    best_x, best_v = float(xs[i]), vals[i]
    bl = float(xs[max(i - 1, 0)])
    br = float(xs[min(i + 1, coarse_grid - 1)])
    if br > bl:
        gx, gv = _golden_max(f, bl, br, refine_iters)
        if gv >= best_v:
            best_x, best_v = gx, gv
    return best_x, best_v


def maximize_2d(
    f: Callable[[float, float], float], box: SearchBox
) -> Tuple[Tuple[float, float], float]:
    """Coarse grid scan plus compass (pattern) search with shrinking steps.

    Returns ((x, y), max) of the best point found inside the box.
    """
    if len(box.intervals) != 2:
        raise ValueError("maximize_2d needs a two-axis SearchBox")
    (xlo, xhi), (ylo, yhi) = box.intervals
    xs = np.linspace(xlo, xhi, box.coarse_grid)
    ys = np.linspace(ylo, yhi, box.coarse_grid)
    best_x, best_y, best_v = float(xs[0]), float(ys[0]), -math.inf
    for x in xs:
        for y in ys:
            v = float(f(x, y))
            if v > best_v:
                best_x, best_y, best_v = float(x), float(y), v
    step_x = (xhi - xlo) / (box.coarse_grid - 1)
    step_y = (yhi - ylo) / (box.coarse_grid - 1)
    for _ in range(box.refine_iters):
        moved = False
        for dx, dy in ((step_x, 0.0), (-step_x, 0.0), (0.0, step_y), (0.0, -step_y)):
            cx = min(max(best_x + dx, xlo), xhi)
            cy = min(max(best_y + dy, ylo), yhi)
            v = float(f(cx, cy))
            if v > best_v:
                best_x, best_y, best_v = cx, cy, v
                moved = True
        if not moved:
            step_x *= 0.5
            step_y *= 0.5
            if step_x < 1e-14 * max(1.0, abs(best_x)) and \
               step_y < 1e-14 * max(1.0, abs(best_y)):
                break
    return (best_x, best_y), best_v


def composite_simpson(values: np.ndarray, h: float) -> float:
    """Composite Simpson rule over equally spaced samples (odd count)."""
    n = values.shape[0]
    if n < 3 or n % 2 == 0:
        raise ValueError("composite Simpson needs an odd number >= 3 of samples")
    return float(h / 3.0 * (values[0] + values[-1]
                            + 4.0 * values[1:-1:2].sum()
                            + 2.0 * values[2:-1:2].sum()))


def integrate_simpson_doubling(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    tol: float = 1e-12,
    start: int = 257,
    max_nodes: int = 66049,
) -> float:
    """Composite Simpson with node doubling until successive estimates agree.

    ``f`` must accept a numpy array. Deterministic alternative to the scalar
    adaptive routine for smooth vectorizable integrands.
    """
    if a == b:
        return 0.0
    if a > b:
        raise ValueError("bounds must satisfy a <= b")
    n = start
    xs = np.linspace(a, b, n)
    prev = composite_simpson(np.asarray(f(xs), dtype=float), (b - a) / (n - 1))
    while n < max_nodes:
        n = 2 * n - 1
        xs = np.linspace(a, b, n)
        cur = composite_simpson(np.asarray(f(xs), dtype=float), (b - a) / (n - 1))
        if abs(cur - prev) <= tol * max(1.0, abs(cur)):
            return cur
        prev = cur
    return prev


def split_interval(lo: float, hi: float, cuts: Sequence[float]) -> Tuple[Tuple[float, float], ...]:
    """Partition [lo, hi] at the interior cut points, sorted and deduplicated."""
    pts = sorted({lo, hi, *(c for c in cuts if lo < c < hi)})
    return tuple((pts[i], pts[i + 1]) for i in range(len(pts) - 1))


def integrate_piecewise(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    cuts: Sequence[float] = (),
    spec: QuadratureSpec = DEFAULT_QUAD,
    min_panels: int = 1,
) -> float:
    """Adaptive Simpson on [lo, hi] split at the given kink locations.

    min_panels > 1 additionally pre-splits the range uniformly so that
    localized mass far from the interval midpoint cannot hide from the
    initial Simpson stencil.
    """
    if hi <= lo:
        return 0.0
    all_cuts = list(cuts)
    if min_panels > 1:
        all_cuts.extend(np.linspace(lo, hi, min_panels + 1)[1:-1])
    return sum(integrate_adaptive(f, a, b, spec)
               for a, b in split_interval(lo, hi, all_cuts))
