"""Command-line interface: evaluate bounds and risks, sweep parameter grids
to CSV, and emit self-contained SVG figures.

Output determinism: identical invocations produce byte-identical CSV and SVG
(shortest round-trip float formatting, no timestamps, fixed palettes). SVG
is written directly as polyline plots to keep the artifact dependency-free.

Exit codes: 0 success, 2 validation error, 3 numerical-tolerance failure.
"""
from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import bounds, estimators, mixtures, models, numerics, priors

CSV_COLUMNS = ("delta", "n", "bound_vt", "bound_diffeo", "bound_twopoint",
               "risk_constant", "risk_plugin", "risk_pretest")

SWEEP_METHODS = ("vt", "diffeo", "twopoint")
SWEEP_ESTIMATORS = ("constant", "plugin", "pretest")


@dataclass(frozen=True)
class SweepConfig:
    mode: str                      # "fixed-n-vary-delta" | "fixed-delta-vary-n"
    n_values: Tuple[int, ...]
    delta_values: Tuple[float, ...]
    sigma: float = 1.0
    methods: Tuple[str, ...] = SWEEP_METHODS
    estimators: Tuple[str, ...] = SWEEP_ESTIMATORS
    threshold: Optional[float] = None

    def __post_init__(self):
        if self.mode not in ("fixed-n-vary-delta", "fixed-delta-vary-n"):
            raise ValueError(f"unknown sweep mode {self.mode!r}")
        if not self.n_values or not self.delta_values:
            raise ValueError("sweep grids must be non-empty")
        if any(b <= a for a, b in zip(self.n_values, self.n_values[1:])):
            raise ValueError("n grid must be strictly increasing")
        if any(b <= a for a, b in zip(self.delta_values, self.delta_values[1:])):
            raise ValueError("delta grid must be strictly increasing")
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")
        for m in self.methods:
            if m not in SWEEP_METHODS:
                raise ValueError(f"unknown method {m!r}")
        for e in self.estimators:
            if e not in SWEEP_ESTIMATORS:
                raise ValueError(f"unknown estimator {e!r}")


def fmt(x: float) -> str:
    """Shortest round-trip decimal representation."""
    return repr(float(x))


def _write_text(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _csv(rows: Sequence[Sequence[str]], header: Sequence[str]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(row) for row in rows)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# argument parsing helpers

def parse_prior(spec: str) -> priors.Prior:
    """Parse 'cosine:c:w' | 'gaussian:mu:sigma' | 'kepler:a[:c:s]' | 'uniform:lo:hi'."""
    parts = spec.split(":")
    kind = parts[0].lower()
    args = [float(p) for p in parts[1:]]
    if kind == "cosine":
        c, w = (args + [0.0, 1.0][len(args):])[:2]
        return priors.Cosine(c, w)
    if kind == "gaussian":
        mu, sigma = (args + [0.0, 1.0][len(args):])[:2]
        return priors.GaussianPrior(mu, sigma)
    if kind == "kepler":
        if not args:
            raise ValueError("kepler prior needs the mass constraint a")
        a = args[0]
        c, s = (args[1:] + [0.0, 1.0][len(args) - 1:])[:2]
        return priors.KeplerCosine.for_constraint(a, c, s)
    if kind == "uniform":
        if len(args) != 2:
            raise ValueError("uniform prior needs lo and hi")
        return priors.UniformPrior(args[0], args[1])
    raise ValueError(f"unknown prior kind {kind!r}")


def parse_functional(name: str, alpha: Optional[float]) -> bounds.Functional:
    name = name.lower()
    if name == "identity":
        return bounds.Identity()
    if name == "maxzero":
        return bounds.MaxZero()
    if name == "powermax":
        if alpha is None:
            raise ValueError("powermax requires --alpha")
        return bounds.PowerMax(alpha)
    raise ValueError(f"unknown functional {name!r}")


def parse_family(name: str, sigma: float) -> models.Family:
    name = name.lower()
    if name == "gaussian":
        return models.GaussianLocation(sigma)
    if name == "uniform":
        return models.UniformScale()
    raise ValueError(f"unknown family {name!r}")


def parse_grid(spec: str) -> Tuple[float, ...]:
    """'log:lo:hi:count' for a log-spaced grid, else a comma list."""
    if spec.startswith("log:"):
        _, lo, hi, count = spec.split(":")
        lo, hi, count = float(lo), float(hi), int(count)
        if not (0 < lo < hi and count >= 2):
            raise ValueError("log grid needs 0 < lo < hi and count >= 2")
        return tuple(float(x) for x in np.geomspace(lo, hi, count))
    return tuple(float(x) for x in spec.split(","))


DEFAULT_DELTA_GRID = "log:1e-2:1e2:50"


# ---------------------------------------------------------------------------
# sweep computation

def _twopoint_sweep(n: int, delta: float) -> float:
    """n-scaled sup of the two-point bound for max(theta,0) under N(theta,1).

    The Hellinger distance depends only on the separation, so the supremum
    over pairs reduces to pairs (0, t); the bracket is positive only for
    t sqrt(n) below sqrt(8 log 2), which sizes the search window.
    """
    fam = models.GaussianLocation(1.0)
    f = bounds.MaxZero()
    t_max = min(delta * (1.0 - 1e-12), 3.0 / math.sqrt(n))
    _, value = numerics.maximize_1d(
        lambda t: n * bounds.two_point_hellinger_bound(fam, n, f, 0.0, t),
        t_max * 1e-6, t_max)
    return max(value, 0.0)


def sweep_row_values(n: int, delta: float, config: SweepConfig) -> Dict[str, float]:
    """All n-scaled bound and risk values at one grid point.

    A family sigma != 1 reduces to the unit problem: rescaling the data by
    1/sigma maps delta to delta/sigma and multiplies every n-scaled squared
    risk and bound by sigma^2.
    """
    s = config.sigma
    d = delta / s
    out: Dict[str, float] = {}
    if "vt" in config.methods:
        out["bound_vt"] = s * s * bounds.vt_kepler_bound(d, n, 1.0).value
    if "diffeo" in config.methods:
        out["bound_diffeo"] = s * s * bounds.diffeo_bound_sup(d, n).value
    if "twopoint" in config.methods:
        out["bound_twopoint"] = s * s * _twopoint_sweep(n, d)
    if "constant" in config.estimators:
        out["risk_constant"] = s * s * estimators.constant_local_minimax_risk(d, n)
    if "plugin" in config.estimators:
        out["risk_plugin"] = s * s * estimators.local_minimax_risk(
            estimators.PluginMLE(), d, n)
    if "pretest" in config.estimators:
        out["risk_pretest"] = s * s * estimators.local_minimax_risk(
            estimators.PreTest(config.threshold), d, n)
    return out


def run_sweep(config: SweepConfig) -> List[Dict[str, float]]:
    """Rows in grid order: outer loop over the fixed axis, inner over the varied."""
    rows = []
    if config.mode == "fixed-n-vary-delta":
        points = [(n, d) for n in config.n_values for d in config.delta_values]
    else:
        points = [(n, d) for d in config.delta_values for n in config.n_values]
    for n, d in points:
        row = {"delta": d, "n": n}
        row.update(sweep_row_values(n, d, config))
        rows.append(row)
    return rows


def rows_to_csv(rows: Sequence[Dict[str, float]]) -> str:
    body = []
    for row in rows:
        cells = []
        for col in CSV_COLUMNS:
            if col == "n":
                cells.append(str(int(row["n"])))
            elif col in row:
                cells.append(fmt(row[col]))
            else:
                cells.append("")
        body.append(cells)
    return _csv(body, CSV_COLUMNS)


# ---------------------------------------------------------------------------
# SVG rendering (self-contained polyline plots, log-log axes)

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
_Y_FLOOR = 1e-8


@dataclass(frozen=True)
class Series:
    label: str
    xs: Tuple[float, ...]
    ys: Tuple[float, ...]
    dashed: bool
    color: str


def _svg_header(width: int, height: int) -> List[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]


def _decade_ticks(lo: float, hi: float) -> List[float]:
    first = math.ceil(math.log10(lo) - 1e-12)
    last = math.floor(math.log10(hi) + 1e-12)
    return [10.0 ** k for k in range(first, last + 1)]


def render_loglog_svg(series: Sequence[Series], x_label: str, title: str) -> str:
    width, height = 880, 560
    ml, mr, mt, mb = 70, 210, 40, 50
    px_w, px_h = width - ml - mr, height - mt - mb
    xs_all = [x for s in series for x in s.xs]
    ys_all = [max(y, _Y_FLOOR) for s in series for y in s.ys]
    if not xs_all:
        raise ValueError("nothing to plot")
    x_lo, x_hi = min(xs_all), max(xs_all)
    y_lo, y_hi = min(ys_all), max(ys_all)
    if y_hi <= y_lo:
        y_hi = y_lo * 10.0

    def tx(x: float) -> float:
        return ml + px_w * (math.log10(x) - math.log10(x_lo)) / \
            (math.log10(x_hi) - math.log10(x_lo))

    def ty(y: float) -> float:
        y = max(y, _Y_FLOOR)
        return mt + px_h * (math.log10(y_hi) - math.log10(y)) / \
            (math.log10(y_hi) - math.log10(y_lo))

    out = _svg_header(width, height)
    out.append(f'<text x="{ml}" y="24" font-family="monospace" font-size="15">'
               f'{title}</text>')
    out.append(f'<rect x="{ml}" y="{mt}" width="{px_w}" height="{px_h}" '
               'fill="none" stroke="#000000" stroke-width="1"/>')
    for xt in _decade_ticks(x_lo, x_hi):
        px = tx(xt)
        out.append(f'<line x1="{px:.3f}" y1="{mt + px_h}" x2="{px:.3f}" '
                   f'y2="{mt + px_h + 5}" stroke="#000000"/>')
        out.append(f'<text x="{px:.3f}" y="{mt + px_h + 20}" font-family="monospace" '
                   f'font-size="11" text-anchor="middle">1e{int(round(math.log10(xt)))}</text>')
    for yt in _decade_ticks(max(y_lo, _Y_FLOOR), y_hi):
        py = ty(yt)
        out.append(f'<line x1="{ml - 5}" y1="{py:.3f}" x2="{ml}" y2="{py:.3f}" '
                   'stroke="#000000"/>')
        out.append(f'<text x="{ml - 8}" y="{py + 4:.3f}" font-family="monospace" '
                   f'font-size="11" text-anchor="end">1e{int(round(math.log10(yt)))}</text>')
    out.append(f'<text x="{ml + px_w / 2:.3f}" y="{height - 12}" '
               f'font-family="monospace" font-size="13" text-anchor="middle">'
               f'{x_label}</text>')
    for k, s in enumerate(series):
        pts = " ".join(f"{tx(x):.3f},{ty(y):.3f}" for x, y in zip(s.xs, s.ys))
        dash = ' stroke-dasharray="6,4"' if s.dashed else ""
        out.append(f'<polyline points="{pts}" fill="none" stroke="{s.color}" '
                   f'stroke-width="1.5"{dash}/>')
        ly = mt + 18 * (k + 1)
        lx = ml + px_w + 12
        out.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 26}" y2="{ly - 4}" '
                   f'stroke="{s.color}" stroke-width="1.5"{dash}/>')
        out.append(f'<text x="{lx + 32}" y="{ly}" font-family="monospace" '
                   f'font-size="12">{s.label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def sweep_svg(rows: Sequence[Dict[str, float]], config: SweepConfig) -> str:
    x_key = "delta" if config.mode == "fixed-n-vary-delta" else "n"
    group_key = "n" if x_key == "delta" else "delta"
    groups = sorted({row[group_key] for row in rows})
    series: List[Series] = []
    color_idx = 0
    columns = ([("bound_" + m, True) for m in config.methods]
               + [("risk_" + e, False) for e in config.estimators])
    for g in groups:
        sub = [r for r in rows if r[group_key] == g]
        sub.sort(key=lambda r: r[x_key])
        for col, dashed in columns:
            if col not in sub[0]:
                continue
            label = f"{col} ({group_key}={g:g})" if len(groups) > 1 else col
            series.append(Series(
                label=label,
                xs=tuple(r[x_key] for r in sub),
                ys=tuple(r[col] for r in sub),
                dashed=dashed,
                color=_PALETTE[color_idx % len(_PALETTE)]))
            color_idx += 1
    return render_loglog_svg(series, x_key, "n-scaled local minimax risk: "
                                            "bounds (dashed) vs estimators (solid)")


def kepler_svg(a_values: Sequence[float]) -> str:
    """Two-panel figure: constrained prior densities and min Fisher info vs a."""
    width, height = 880, 420
    out = _svg_header(width, height)
    ml, mt, pw, ph = 60, 50, 340, 300
    ts = np.linspace(-1.0, 1.0, 401)
    dens = {a: [priors.kepler_prior_density(a, float(t)) for t in ts] for a in a_values}
    d_max = max(max(v) for v in dens.values()) or 1.0
    out.append(f'<text x="{ml}" y="26" font-family="monospace" font-size="14">'
               'constrained cosine priors q_a(t)</text>')
    out.append(f'<rect x="{ml}" y="{mt}" width="{pw}" height="{ph}" fill="none" '
               'stroke="#000000"/>')
    for k, a in enumerate(a_values):
        pts = " ".join(
            f"{ml + pw * (t + 1.0) / 2.0:.3f},{mt + ph * (1.0 - v / (1.05 * d_max)):.3f}"
            for t, v in zip(ts, dens[a]))
        color = _PALETTE[k % len(_PALETTE)]
        out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                   'stroke-width="1.5"/>')
        out.append(f'<text x="{ml + pw + 8}" y="{mt + 16 * (k + 1)}" '
                   f'font-family="monospace" font-size="12" fill="{color}">'
                   f'a={a:g}</text>')
    ml2 = ml + pw + 120
    a_grid = np.linspace(0.0, 1.0, 101)
    fisher = [priors.min_fisher_constrained(float(a)) for a in a_grid]
    f_max = max(fisher)
    out.append(f'<text x="{ml2}" y="26" font-family="monospace" font-size="14">'
               'min Fisher information vs a</text>')
    out.append(f'<rect x="{ml2}" y="{mt}" width="{pw}" height="{ph}" fill="none" '
               'stroke="#000000"/>')
    pts = " ".join(
        f"{ml2 + pw * a:.3f},{mt + ph * (1.0 - v / (1.05 * f_max)):.3f}"
        for a, v in zip(a_grid, fisher))
    out.append(f'<polyline points="{pts}" fill="none" stroke="#1f77b4" '
               'stroke-width="1.5"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# subcommands

def cmd_kepler(args: argparse.Namespace) -> int:
    if args.a:
        a_values = [float(a) for a in args.a]
    else:
        count = int(args.grid) if args.grid else 101
        if count < 2:
            raise ValueError("kepler grid needs at least 2 points")
        a_values = [float(a) for a in np.linspace(0.0, 1.0, count)]
    rows = []
    for a in a_values:
        sol = priors.solve_kepler(a)
        rows.append((fmt(a), fmt(sol.y_a), fmt(sol.w_a), fmt(sol.min_fisher)))
    _write_text(args.out, _csv(rows, ("a", "y_a", "w_a", "min_fisher")))
    if args.svg:
        svg_as = [float(a) for a in (args.a or ["0.5", "0.75", "1.0"])]
        _write_text(args.svg, kepler_svg(svg_as))
    return 0


def _bound_dispatch(args: argparse.Namespace) -> Tuple[bounds.BoundResult, List[str]]:
    """Returns the n-scaled bound result and extra note lines."""
    family = parse_family(args.family, args.sigma)
    functional = parse_functional(args.functional, args.alpha)
    notes: List[str] = []
    n = int(args.n)
    method = args.method
    if method == "vt":
        sup_fisher = 1.0 / args.sigma**2
        return bounds.vt_kepler_bound(args.delta, n, sup_fisher), notes
    if method == "diffeo":
        if (args.xi1 is None) != (args.xi2 is None):
            raise ValueError("--xi1 and --xi2 must be given together")
        if args.xi1 is not None:
            value = bounds.diffeo_bound(args.delta, n, args.xi1, args.xi2)
            return bounds.BoundResult(value, {"xi1": args.xi1, "xi2": args.xi2},
                                      "diffeo"), notes
        return bounds.diffeo_bound_sup(args.delta, n), notes
    if method == "twopoint":
        if args.theta1 is None or args.theta2 is None:
            raise ValueError("twopoint requires --theta1 and --theta2")
        value = n * bounds.two_point_hellinger_bound(
            family, n, functional, args.theta1, args.theta2)
        return bounds.BoundResult(value, {"theta1": args.theta1,
                                          "theta2": args.theta2},
                                  "twopoint"), notes
    prior = parse_prior(args.prior) if args.prior else \
        priors.Cosine(0.0, args.delta if args.delta else 1.0)
    if method == "hellinger":
        if args.h is not None:
            value = n * bounds.hellinger_mixture_bound(family, n, prior,
                                                       functional, args.h)
            return bounds.BoundResult(value, {"h": args.h},
                                      "hellinger-mixture"), notes
        h_lo, h_hi = bounds.default_shift_range(prior)
        res = bounds.hellinger_mixture_bound_sup(family, n, prior, functional,
                                                 h_lo, h_hi)
        return bounds.BoundResult(n * res.value, res.argmax, res.method), notes
    if method == "chi2":
        if args.h is None:
            raise ValueError("chi2 requires --h")
        lam = args.lam if args.lam is not None else 0.0
        denom = mixtures.mixture_chi_sq(
            mixtures.MixtureSpec(family, n, prior, args.h))
        if lam == 0.0 and denom.is_divergent:
            notes.append("note=divergent denominator; trivial bound 0")
            return bounds.BoundResult(0.0, {"h": args.h, "lambda": lam},
                                      "chi2-mixture"), notes
        value = n * bounds.chi2_mixture_bound(family, n, prior, functional,
                                              args.h, lam)
        return bounds.BoundResult(value, {"h": args.h, "lambda": lam},
                                  "chi2-mixture"), notes
    if method == "vantrees":
        value = n * bounds.van_trees_value(family, n, prior, functional)
        return bounds.BoundResult(value, {}, "van-trees"), notes
    raise ValueError(f"unknown bound method {method!r}")


def cmd_bound(args: argparse.Namespace) -> int:
    result, notes = _bound_dispatch(args)
    lines = [f"method={result.method}", f"value={fmt(result.value)}"]
    lines += [f"{k}={fmt(v)}" for k, v in sorted(result.argmax.items())]
    lines += notes
    print("\n".join(lines))
    row = (fmt(args.delta if args.delta else math.nan), str(int(args.n)),
           args.method, fmt(result.value))
    _write_text(args.out, _csv([row], ("delta", "n", "method", "value")))
    return 0


def cmd_risk(args: argparse.Namespace) -> int:
    name = args.estimator.lower()
    n = int(args.n)
    if name == "constant":
        value = estimators.constant_local_minimax_risk(args.delta, n)
    elif name == "plugin":
        value = estimators.local_minimax_risk(estimators.PluginMLE(), args.delta, n)
    elif name == "pretest":
        value = estimators.local_minimax_risk(
            estimators.PreTest(args.threshold), args.delta, n)
    else:
        raise ValueError(f"unknown estimator {name!r}")
    print(f"value={fmt(value)}")
    row = (fmt(args.delta), str(n), name, fmt(value))
    _write_text(args.out, _csv([row], ("delta", "n", "estimator", "value")))
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    n_values = tuple(int(x) for x in str(args.n).split(","))
    delta_values = parse_grid(args.delta_grid)
    config = SweepConfig(
        mode=("fixed-n-vary-delta" if args.mode == "delta" else "fixed-delta-vary-n"),
        n_values=n_values,
        delta_values=tuple(sorted(delta_values)),
        sigma=args.sigma,
        methods=tuple(args.methods.split(",")) if args.methods else SWEEP_METHODS,
        estimators=(tuple(args.estimators.split(","))
                    if args.estimators else SWEEP_ESTIMATORS),
        threshold=args.threshold,
    )
    rows = run_sweep(config)
    _write_text(args.out, rows_to_csv(rows))
    if args.svg:
        _write_text(args.svg, sweep_svg(rows, config))
    return 0


def cmd_constants(args: argparse.Namespace) -> int:
    table = (
        ("regular_twopoint", bounds.regular_twopoint_objective, 0.0, 10.0),
        ("uniform_twopoint", bounds.uniform_twopoint_objective, 0.0, 10.0),
        ("uniform_diffeo", bounds.uniform_diffeo_objective, 1e-9, 10.0),
    )
    rows = []
    for name, objective, lo, hi in table:
        arg, value = numerics.maximize_1d(objective, lo, hi)
        print(f"{name}: value={fmt(value)} argmax={fmt(arg)}")
        rows.append((name, fmt(value), fmt(arg)))
    _write_text(args.out, _csv(rows, ("name", "value", "argmax")))
    return 0


def _selftest_checks() -> List[Tuple[str, bool, str]]:
    checks: List[Tuple[str, bool, str]] = []

    residuals = []
    for a in np.linspace(0.0, 1.0, 101):
        sol = priors.solve_kepler(float(a))
        residuals.append(abs(sol.y_a + math.sin(math.pi * sol.y_a) / math.pi
                             - (2.0 * a - 1.0)))
    worst = max(residuals)
    checks.append(("kepler-residual", worst <= 1e-12, f"max residual {worst:.2e}"))

    fam = models.GaussianLocation(1.0)
    worst = 0.0
    for n, m in ((1, 3), (2, 5), (10, 7)):
        h2m = models.hellinger_sq_iid(fam, 0.0, 0.4, m)
        h2n = models.hellinger_sq_iid(fam, 0.0, 0.4, n)
        h2mn = models.hellinger_sq_iid(fam, 0.0, 0.4, m + n)
        worst = max(worst, abs((1 - h2mn / 2) - (1 - h2m / 2) * (1 - h2n / 2)))
    checks.append(("hellinger-tensorization", worst <= 1e-12, f"max defect {worst:.2e}"))

    worst = 0.0
    cases = [
        (models.GaussianLocation(1.0), priors.GaussianPrior(0.0, 1.0), 0.1),
        (models.GaussianLocation(1.0), priors.Cosine(0.0, 1.0), 0.3),
        (models.GaussianLocation(0.5), priors.KeplerCosine.for_constraint(0.75), 0.2),
    ]
    for family, prior, h in cases:
        path = mixtures.mixture_hellinger_sq(mixtures.MixtureSpec(family, 1, prior, h))
        grid = mixtures.default_grid(family, prior, h)
        oracle = mixtures.mixture_hellinger_oracle(family, prior, h, grid)
        worst = max(worst, abs(path - oracle))
    checks.append(("hellinger-decomposition", worst <= 1e-6, f"max gap {worst:.2e}"))

    margin = math.inf
    for n in (10, 100):
        for d in np.geomspace(1e-2, 1e2, 10):
            cfg = SweepConfig("fixed-n-vary-delta", (n,), (float(d),))
            row = sweep_row_values(n, float(d), cfg)
            b = max(row["bound_vt"], row["bound_diffeo"], row["bound_twopoint"])
            r = min(row["risk_constant"], row["risk_plugin"], row["risk_pretest"])
            margin = min(margin, r - b)
    checks.append(("bound-dominance", margin >= -1e-9, f"min margin {margin:.3e}"))

    diffs = (abs(bounds.lam_constant_regular() - 0.28953),
             abs(bounds.lam_constant_uniform_twopoint() - 0.0558),
             abs(bounds.lam_constant_uniform_diffeo() - 0.0635**2))
    ok = diffs[0] <= 5e-4 and diffs[1] <= 5e-4 and diffs[2] <= 1e-4
    checks.append(("asymptotic-constants", ok,
                   "gaps " + ", ".join(f"{d:.1e}" for d in diffs)))

    worst = max(abs(numerics.normal_cdf(x) + numerics.normal_cdf(-x) - 1.0)
                for x in np.linspace(-8, 8, 161))
    checks.append(("normal-cdf-symmetry", worst <= 1e-15, f"max defect {worst:.2e}"))
    return checks


def cmd_selftest(args: argparse.Namespace) -> int:
    checks = _selftest_checks()
    failed = 0
    for name, ok, detail in checks:
        print(f"{'PASS' if ok else 'FAIL'} {name} ({detail})")
        failed += 0 if ok else 1
    return 0 if failed == 0 else 3


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minimaxlb",
        description="Minimax lower bounds, least-favorable priors, and exact "
                    "estimator risks for max(theta, 0) estimation.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kepler", help="solve the Kepler least-favorable geometry")
    p.add_argument("--a", action="append", help="mass constraint in [0,1]; repeatable")
    p.add_argument("--grid", help="number of a values on [0,1]")
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.add_argument("--svg", help="optional SVG output path")
    p.set_defaults(func=cmd_kepler)

    p = sub.add_parser("bound", help="evaluate one lower bound")
    p.add_argument("--method", required=True,
                   choices=("vt", "diffeo", "twopoint", "hellinger", "chi2",
                            "vantrees"))
    p.add_argument("--family", default="gaussian", choices=("gaussian", "uniform"))
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--prior", help="prior spec, e.g. cosine:0:1 or gaussian:0:1")
    p.add_argument("--functional", default="maxzero",
                   choices=("identity", "maxzero", "powermax"))
    p.add_argument("--alpha", type=float)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--delta", type=float, default=1.0)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--h", type=float)
    p.add_argument("--a", type=float)
    p.add_argument("--xi1", type=float)
    p.add_argument("--xi2", type=float)
    p.add_argument("--theta1", type=float)
    p.add_argument("--theta2", type=float)
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("risk", help="local minimax risk of a reference estimator")
    p.add_argument("--estimator", required=True,
                   choices=("constant", "plugin", "pretest"))
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--threshold", type=float)
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.set_defaults(func=cmd_risk)

    p = sub.add_parser("sweep", help="sweep a parameter grid to CSV/SVG")
    p.add_argument("--mode", default="delta", choices=("delta", "n"))
    p.add_argument("--n", default="100",
                   help="sample size or comma list (e.g. 10,100)")
    p.add_argument("--delta", dest="delta_grid", default=DEFAULT_DELTA_GRID,
                   help="delta grid: 'log:lo:hi:count' or comma list")
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--methods", help="comma subset of vt,diffeo,twopoint")
    p.add_argument("--estimators", help="comma subset of constant,plugin,pretest")
    p.add_argument("--threshold", type=float)
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.add_argument("--svg", help="optional SVG output path")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("constants", help="the three scalar asymptotic constants")
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("selftest", help="run the built-in invariant suite")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except numerics.ToleranceNotMet as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
