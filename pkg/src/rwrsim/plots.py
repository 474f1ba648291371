"""Static SVG figures for the command reports.

Figures are advisory companions to the CSV/JSON outputs; pass/fail always
lives in the summary JSON.  Rendering is deterministic (fixed hash salt, no
embedded dates) so reruns produce identical files.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

import numpy as np  # noqa: E402

plt.rcParams["svg.hashsalt"] = "rwrsim"
plt.rcParams["figure.figsize"] = (6.4, 4.2)
plt.rcParams["axes.grid"] = True
plt.rcParams["grid.alpha"] = 0.3

_META = {"Date": None}


def _finish(fig, path):
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata=_META)
    plt.close(fig)
    return str(path)


def scaling_plot(path, n_values, mean_v, mean_r, slope_v, slope_r):
    fig, ax = plt.subplots()
    n = np.asarray(n_values, dtype=float)
    ax.loglog(n, mean_v, "o", label=f"mean self-intersections (slope {slope_v:.3f})")
    ax.loglog(n, mean_r, "s", label=f"mean range (slope {slope_r:.3f})")
    for ys, slope in ((mean_v, slope_v), (mean_r, slope_r)):
        c = ys[0] / n[0] ** slope
        ax.loglog(n, c * n ** slope, "--", lw=1)
    ax.set_xlabel("walk length n")
    ax.set_ylabel("Monte Carlo mean")
    ax.legend()
    return _finish(fig, path)


def cf_plot(path, thetas, emp, emp_se, oracle, oracle_se):
    fig, ax = plt.subplots()
    thetas = np.asarray(thetas)
    ax.errorbar(thetas, [v.real for v in emp], yerr=emp_se, fmt="o",
                capsize=3, label="schema empirical CF")
    ax.errorbar(thetas, [v.real for v in oracle], yerr=oracle_se, fmt="s",
                capsize=3, label="limit-process oracle")
    ax.set_xlabel("theta")
    ax.set_ylabel("Re E exp(i theta G(1))")
    ax.legend()
    return _finish(fig, path)


def cdf_compare_plot(path, pairs):
    """Overlay empirical CDFs; ``pairs`` is [(label_a, a, label_b, b), ...]."""
    fig, axes = plt.subplots(1, len(pairs), figsize=(6.4 * len(pairs), 4.2),
                             squeeze=False)
    for ax, (la, a, lb, b) in zip(axes[0], pairs):
        for label, x in ((la, a), (lb, b)):
            xs = np.sort(x)
            ax.plot(xs, np.arange(1, xs.size + 1) / xs.size, label=label, lw=1)
        lo, hi = np.quantile(np.concatenate([a, b]), [0.005, 0.995])
        ax.set_xlim(lo, hi)
        ax.set_xlabel("value")
        ax.set_ylabel("empirical CDF")
        ax.legend()
    return _finish(fig, path)


def tail_plot(path, beta, us, scaled_tail, tail_se, constant, constant_se):
    fig, ax = plt.subplots()
    ax.errorbar(us, scaled_tail, yerr=tail_se, fmt="o-", capsize=3,
                label=f"u^{beta:g} * exceedance frequency")
    ax.axhline(constant, color="k", ls="--", label="independent constant estimate")
    ax.axhspan(constant - 2 * constant_se, constant + 2 * constant_se,
               color="k", alpha=0.15)
    ax.axhspan(constant / 2, constant * 2, color="tab:orange", alpha=0.08,
               label="factor-2 band")
    ax.set_xscale("log")
    ax.set_xlabel("threshold u")
    ax.set_ylabel("scaled tail")
    ax.legend()
    return _finish(fig, path)


def hill_sweep_plot(path, ks, estimates, beta, tol):
    fig, ax = plt.subplots()
    ax.semilogx(ks, estimates, "o-", label="Hill estimate")
    ax.axhline(beta, color="k", ls="--", label=f"target {beta:g}")
    ax.axhspan(beta - tol, beta + tol, color="k", alpha=0.12)
    ax.set_xlabel("order statistics k")
    ax.set_ylabel("tail index")
    ax.legend()
    return _finish(fig, path)


def holder_plot(path, grid_bits, stats_per_grid):
    fig, ax = plt.subplots()
    for g, stats in zip(grid_bits, stats_per_grid):
        xs = np.sort(np.asarray(stats))
        ax.plot(xs, np.arange(1, xs.size + 1) / xs.size,
                label=f"grid 2^-{g} (median {np.median(xs):.3f})", lw=1)
    ax.set_xlabel("weighted increment statistic")
    ax.set_ylabel("empirical CDF")
    ax.legend()
    return _finish(fig, path)


def feasible_plot(path, alphas, betas, branches):
    fig, ax = plt.subplots()
    branches = np.asarray(branches)
    for branch, color in (("beta<1", "tab:blue"), ("beta=1", "tab:green"),
                          ("beta>1", "tab:red")):
        m = branches == branch
        if m.any():
            ax.plot(np.asarray(alphas)[m], np.asarray(betas)[m], ".",
                    ms=2, color=color, label=branch)
    ax.set_xlabel("walk index alpha")
    ax.set_ylabel("scenery index beta")
    ax.legend(markerscale=6)
    return _finish(fig, path)
