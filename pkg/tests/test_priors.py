import math

import numpy as np
import pytest
from scipy import integrate, optimize

from minimaxlb.numerics import QuadratureSpec, integrate_adaptive
from minimaxlb.priors import (Cosine, GaussianPrior, KeplerCosine,
                              UniformPrior, check_nice, dilate,
                              kepler_prior_density, min_fisher_constrained,
                              prior_density, prior_fisher_info, prior_support,
                              solve_kepler)

PI2 = math.pi**2


def test_prior_density_examples():
    assert prior_density(Cosine(0.0, 1.0), 0.0) == 1.0
    assert prior_density(Cosine(0.0, 1.0), 1.0) == 0.0
    assert prior_density(Cosine(0.0, 1.0), -1.0) == 0.0
    assert prior_density(GaussianPrior(0.0, 1.0), 0.0) == pytest.approx(0.39894228, abs=1e-8)


@pytest.mark.parametrize("prior", [
    Cosine(0.0, 1.0),
    Cosine(2.0, 0.5),
    GaussianPrior(0.0, 1.0),
    GaussianPrior(-1.0, 3.0),
    UniformPrior(-1.0, 1.0),
    KeplerCosine.for_constraint(0.75),
    KeplerCosine.for_constraint(0.3, center=1.0, scale=0.4),
])
def test_density_normalizes(prior):
    lo, hi = prior_support(prior)
    if math.isinf(lo):
        mu, sd = prior.mu, prior.sigma
        lo, hi = mu - 12.0 * sd, mu + 12.0 * sd
    tight = QuadratureSpec(abs_tol=1e-13, rel_tol=1e-13)
    total = integrate_adaptive(lambda t: prior_density(prior, t), lo, hi, tight)
    assert total == pytest.approx(1.0, abs=1e-10)


def test_prior_fisher_info_values():
    assert prior_fisher_info(Cosine(0.0, 1.0)).value == pytest.approx(PI2, abs=1e-12)
    assert prior_fisher_info(Cosine(0.0, 2.0)).value == pytest.approx(PI2 / 4.0, abs=1e-12)
    assert prior_fisher_info(GaussianPrior(0.0, 2.0)).value == 0.25
    assert prior_fisher_info(UniformPrior(0.0, 1.0)).is_divergent


def test_solve_kepler_half():
    sol = solve_kepler(0.5)
    assert sol.y_a == 0.0
    assert sol.w_a == 2.0
    assert sol.min_fisher == pytest.approx(PI2, abs=1e-12)
    assert (sol.s_minus, sol.s_plus) == (-1.0, 1.0)


def test_solve_kepler_one():
    sol = solve_kepler(1.0)
    assert sol.y_a == 1.0
    assert sol.w_a == 1.0
    assert sol.min_fisher == pytest.approx(4.0 * PI2, abs=1e-12)
    assert (sol.s_minus, sol.s_plus) == (0.0, 1.0)


def test_solve_kepler_three_quarters_vs_brentq():
    sol = solve_kepler(0.75, tol=1e-13)
    oracle = optimize.brentq(lambda y: y + math.sin(math.pi * y) / math.pi - 0.5,
                             -1.0, 1.0, xtol=1e-14)
    assert sol.y_a == pytest.approx(oracle, abs=1e-12)
    assert sol.s_plus == 1.0
    assert sol.s_plus - sol.s_minus == pytest.approx(sol.w_a, abs=1e-15)


def test_kepler_residuals_dense():
    worst = 0.0
    for a in np.linspace(0.0, 1.0, 1000):
        sol = solve_kepler(float(a))
        res = abs(sol.y_a + math.sin(math.pi * sol.y_a) / math.pi - (2.0 * a - 1.0))
        worst = max(worst, res)
    assert worst <= 1e-12


def test_kepler_eta_oddness_convention():
    # t + sin(pi t)/pi is identical to the form t - sin(-pi t)/pi
    for t in np.linspace(-1.0, 1.0, 41):
        lhs = t + math.sin(math.pi * t) / math.pi
        rhs = t - math.sin(-math.pi * t) / math.pi
        assert lhs == rhs


def test_solve_kepler_validation():
    with pytest.raises(ValueError):
        solve_kepler(-0.1)
    with pytest.raises(ValueError):
        solve_kepler(1.1)


def test_min_fisher_constrained():
    assert min_fisher_constrained(0.5) == pytest.approx(PI2, abs=1e-9)
    assert min_fisher_constrained(1.0) == pytest.approx(4.0 * PI2, abs=1e-10)
    v = min_fisher_constrained(0.9)
    assert v >= PI2
    assert v == pytest.approx(min_fisher_constrained(0.1), abs=1e-10)


def test_min_fisher_monotone_in_constraint():
    grid = np.linspace(0.5, 1.0, 501)  # resolution 1e-3
    vals = [min_fisher_constrained(float(a)) for a in grid]
    assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))
    assert all(v > PI2 for v in vals[1:])  # pi^2 attained only at a = 1/2
    for a in (0.3, 0.8):
        assert min_fisher_constrained(a) == pytest.approx(
            min_fisher_constrained(1.0 - a), abs=1e-12)


def test_kepler_density():
    assert kepler_prior_density(0.5, 0.0) == pytest.approx(1.0, abs=1e-15)
    assert kepler_prior_density(1.0, -0.2) == 0.0
    assert kepler_prior_density(1.0, 1.2) == 0.0
    mass = integrate_adaptive(lambda t: kepler_prior_density(0.75, t), 0.0, 1.0)
    assert mass == pytest.approx(0.75, abs=1e-8)


def test_kepler_density_matches_cosine_at_half():
    for t in np.linspace(-1.0, 1.0, 101):
        assert kepler_prior_density(0.5, float(t)) == pytest.approx(
            prior_density(Cosine(0.0, 1.0), float(t)), abs=1e-12)


@pytest.mark.parametrize("a", [0.3, 0.75, 0.9])
def test_kepler_fisher_info_by_quadrature(a):
    sol = solve_kepler(a)
    w, c = sol.w_a, 0.5 * (sol.s_plus + sol.s_minus)
    amp, k = 2.0 / w, math.pi / w

    def integrand(t):
        # q = amp cos^2(k (t-c)), q' = -amp k sin(2 k (t-c))
        q = amp * math.cos(k * (t - c)) ** 2
        dq = -amp * k * math.sin(2.0 * k * (t - c))
        return dq * dq / q

    val, _ = integrate.quad(integrand, sol.s_minus, sol.s_plus, limit=200)
    assert val == pytest.approx(sol.min_fisher, abs=1e-6)


def test_dilate():
    d = dilate(Cosine(0.0, 1.0), 0.0, 2.0)
    assert d == Cosine(0.0, 2.0)
    assert prior_fisher_info(d).value == pytest.approx(PI2 / 4.0, abs=1e-12)
    assert dilate(GaussianPrior(0.0, 1.0), 3.0, 1.0) == GaussianPrior(3.0, 1.0)
    twice = dilate(dilate(Cosine(0.0, 1.0), 1.0, 2.0), 0.5, 3.0)
    once = dilate(Cosine(0.0, 1.0), 0.5 + 3.0 * 1.0, 6.0)
    assert twice == once
    kc = dilate(KeplerCosine.for_constraint(0.75), 0.0, 0.5)
    assert prior_fisher_info(kc).value == pytest.approx(
        4.0 * solve_kepler(0.75).min_fisher, abs=1e-9)
    with pytest.raises(ValueError):
        dilate(Cosine(0.0, 1.0), 0.0, 0.0)


def test_dilate_density_is_location_scale_map():
    base = KeplerCosine.for_constraint(0.8)
    moved = dilate(base, 1.5, 0.25)
    for t in np.linspace(1.0, 2.0, 17):
        expected = prior_density(base, (t - 1.5) / 0.25) / 0.25
        assert prior_density(moved, float(t)) == pytest.approx(expected, abs=1e-13)


def test_check_nice():
    assert check_nice(Cosine(0.0, 1.0)).is_nice
    assert check_nice(GaussianPrior(0.0, 1.0)).is_nice
    assert check_nice(KeplerCosine.for_constraint(0.6)).is_nice
    report = check_nice(UniformPrior(-1.0, 1.0))
    assert not report.is_nice
    assert report.reasons
