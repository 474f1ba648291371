"""Grid discretizations of the limit objects.

The scaling limit is built from an index-``alpha`` Levy motion Y, its local
time on a spatial grid, and an independent bilateral index-``beta`` scenery
process W.  One copy of the limit building block is the Stieltjes sum
sum_bins L_t(bin) * dW(bin); averaging ``copies`` independent copies with a
copies**(-1/beta) normalization approximates the self-similar limit process.

Because the binned local time increments by dt/dx at the bin occupied at each
grid step, the Stieltjes sum telescopes into a running sum of scenery
increments evaluated along the visited bins.  The batch engine exploits that:
a full limit path costs one cumulative sum, exactly like the discrete reward
process, and the matrix form below stays available as a cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .keyed import derive_key
from .scenery import Scenery, keyed_scenery_values
from .stable import (
    SceneryLaw,
    StableLaw,
    sample_stable,
    sine_tail_integral,
    sine_tail_integral_closed,
    sup_tail_constant,
)

__all__ = [
    "LevyPath",
    "GridLocalTime",
    "sample_levy_path",
    "levy_stream_rng",
    "grid_local_time",
    "bin_scenery",
    "scenery_integral",
    "sample_averaged_path",
    "sample_averaged_values",
    "sample_averaged_sup",
    "limit_cf",
    "CfEstimate",
    "occupation_power_mean",
    "sup_tail_report",
    "holder_modulus",
    "holder_report",
    "sup_tail_constant",
    "sine_tail_integral",
    "sine_tail_integral_closed",
]

_LEVY_TAG = 0x4C455659
_ORACLE_TAG = 0x4F52434C
_OCC_TAG = 0x4F434355
_SCENERY_TAG = 0x5343  # shared with Scenery so object and batch routes agree


@dataclass(frozen=True)
class LevyPath:
    """Skeleton of the driving motion on the grid {0, dt, 2 dt, ...}."""

    values: np.ndarray   # cumulative, values[0] = 0
    dt: float
    law: StableLaw       # per-unit-time law (index, scale, skewness)

    @property
    def steps(self) -> int:
        return self.values.size - 1

    @property
    def horizon(self) -> float:
        return self.steps * self.dt


def _grid_steps(horizon: float, dt: float) -> int:
    k = int(round(horizon / dt))
    if k < 1 or abs(k * dt - horizon) > 1e-9 * max(1.0, horizon):
        raise ValueError(f"horizon {horizon} is not a multiple of dt {dt}")
    return k


def _step_law(law: StableLaw, dt: float) -> StableLaw:
    return StableLaw(law.index, law.scale * dt ** (1.0 / law.index), law.skewness)


def sample_levy_path(law: StableLaw, horizon: float, dt: float,
                     rng: np.random.Generator) -> LevyPath:
    """Exact-in-law skeleton: stable increments are exactly simulable."""
    k = _grid_steps(horizon, dt)
    inc = sample_stable(_step_law(law, dt), rng, k)
    values = np.zeros(k + 1, dtype=np.float64)
    np.cumsum(inc, out=values[1:])
    return LevyPath(values, dt, law)


def levy_stream_rng(master_seed: int, replica: int,
                    tag: int = _LEVY_TAG) -> np.random.Generator:
    """Generator for the driving-motion increments of one replica."""
    ss = np.random.SeedSequence([int(master_seed), int(replica), tag])
    return np.random.default_rng(ss)


def _checkpoint_index(t: float, dt: float) -> int:
    m = int(round(t / dt))
    if abs(m * dt - t) > 1e-9 * max(1.0, abs(t)) or m < 0:
        raise ValueError(f"checkpoint {t} is not on the dt = {dt} grid")
    return m


@dataclass(frozen=True)
class GridLocalTime:
    """Occupation density per spatial bin at each requested checkpoint.

    Row j holds L_{t_j}(bin) = (dt/dx) * #(grid times s < t_j with Y(s) in
    bin); counting left endpoints makes sum_bins L * dx equal t_j exactly.
    """

    checkpoints: tuple
    bins: np.ndarray
    density: np.ndarray   # (len(checkpoints), len(bins))
    dt: float
    dx: float

    def density_at(self, t: float, b: int) -> float:
        j = self.checkpoints.index(t)
        i = np.searchsorted(self.bins, b)
        if i < self.bins.size and self.bins[i] == b:
            return float(self.density[j, i])
        return 0.0

    def mass(self, t: float) -> float:
        j = self.checkpoints.index(t)
        return float(self.density[j].sum() * self.dx)


def grid_local_time(path: LevyPath, dx: float, checkpoints) -> GridLocalTime:
    """Bin the occupation measure of ``path`` at the given times."""
    if dx <= 0.0:
        raise ValueError(f"dx must be positive, got {dx}")
    checkpoints = tuple(float(t) for t in checkpoints)
    ms = [_checkpoint_index(t, path.dt) for t in checkpoints]
    if ms and max(ms) > path.steps:
        raise ValueError("checkpoint beyond the path horizon")
    visited = np.floor(path.values[:-1] / dx).astype(np.int64)
    bins, inverse = np.unique(visited, return_inverse=True)
    density = np.zeros((len(checkpoints), bins.size), dtype=np.float64)
    w = path.dt / dx
    for j, m in enumerate(ms):
        if m > 0:
            density[j] = np.bincount(inverse[:m], minlength=bins.size) * w
    return GridLocalTime(checkpoints, bins, density, path.dt, dx)


def bin_scenery(scenery_limit: StableLaw, dx: float, master_seed: int,
                replica: int = 0, copy: int = 0) -> Scenery:
    """Bilateral scenery increments over spatial bins of width ``dx``.

    Increment per bin is stable with index beta, scale sigma * dx**(1/beta)
    and the configured skewness, independent across bins on both half-axes.
    """
    law = SceneryLaw.exact_stable(
        scenery_limit.index,
        scenery_limit.scale * dx ** (1.0 / scenery_limit.index),
        scenery_limit.skewness,
    )
    return Scenery(law, master_seed, replica, copy)


def scenery_integral(lt: GridLocalTime, scen: Scenery, t: float) -> float:
    """Stieltjes sum sum_bins L_t(bin) * dW(bin) at a checkpoint of ``lt``."""
    j = lt.checkpoints.index(float(t))
    row = lt.density[j]
    occupied = row != 0.0
    if not occupied.any():
        return 0.0
    return float(np.dot(row[occupied], scen.values(lt.bins[occupied])))


def sample_averaged_path(walk_limit: StableLaw, scenery_limit: StableLaw,
                         horizon: float, dt: float, dx: float, copies: int,
                         master_seed: int, replica: int = 0,
                         tag: int = _LEVY_TAG) -> np.ndarray:
    """One path of the copies-averaged limit process on the full time grid.

    Returns values at times 0, dt, ..., horizon; entry 0 is exactly 0.  The
    per-copy driving motions come from one replica stream, the per-copy
    scenery from keyed streams, so the result is a pure function of
    (master_seed, replica) for fixed parameters.
    """
    if copies < 1:
        raise ValueError(f"copies must be >= 1, got {copies}")
    k = _grid_steps(horizon, dt)
    rng = levy_stream_rng(master_seed, replica, tag)
    inc = sample_stable(_step_law(walk_limit, dt), rng, (copies, k))
    y = np.zeros((copies, k), dtype=np.float64)
    np.cumsum(inc[:, :-1], axis=1, out=y[:, 1:])
    bins = np.floor(y / dx).astype(np.int64)
    step_law = SceneryLaw.exact_stable(
        scenery_limit.index, scenery_limit.scale * dx ** (1.0 / scenery_limit.index),
        scenery_limit.skewness)
    keys = np.array(
        [derive_key(_SCENERY_TAG, master_seed, replica, c) for c in range(copies)],
        dtype=np.uint64,
    ).reshape(-1, 1)
    svals = keyed_scenery_values(step_law, keys, bins)
    beta = scenery_limit.index
    weight = (dt / dx) * copies ** (-1.0 / beta)
    path = np.zeros(k + 1, dtype=np.float64)
    np.cumsum(svals.sum(axis=0), out=path[1:])
    path[1:] *= weight
    return path


def sample_averaged_values(walk_limit: StableLaw, scenery_limit: StableLaw,
                           checkpoints, dt: float, dx: float, copies: int,
                           master_seed: int, replica: int = 0) -> np.ndarray:
    """Averaged-process values at the checkpoints (multiples of dt)."""
    checkpoints = [float(t) for t in checkpoints]
    horizon = max(checkpoints)
    if horizon == 0.0:
        return np.zeros(len(checkpoints))
    ms = [_checkpoint_index(t, dt) for t in checkpoints]
    path = sample_averaged_path(walk_limit, scenery_limit, horizon, dt, dx,
                                copies, master_seed, replica)
    return path[ms]


def sample_averaged_sup(walk_limit: StableLaw, scenery_limit: StableLaw,
                        horizon: float, dt: float, dx: float, copies: int,
                        master_seed: int, replica: int = 0):
    """(sup over the grid of the path, sup of its absolute value)."""
    path = sample_averaged_path(walk_limit, scenery_limit, horizon, dt, dx,
                                copies, master_seed, replica)
    return float(path.max()), float(np.abs(path).max())


# ---------------------------------------------------------------------------
# Finite dimensional characteristic function of the limit process
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CfEstimate:
    """A characteristic function estimate with componentwise errors."""

    value: complex
    se_real: float
    se_imag: float
    reps: int

    def combined_gap(self, other: "CfEstimate"):
        """|difference| per component in units of combined standard error."""
        dr = abs(self.value.real - other.value.real)
        di = abs(self.value.imag - other.value.imag)
        sr = math.hypot(self.se_real, other.se_real)
        si = math.hypot(self.se_imag, other.se_imag)
        return (dr / sr if sr > 0 else math.inf if dr > 0 else 0.0,
                di / si if si > 0 else math.inf if di > 0 else 0.0)


def _field_exponent_terms(bins: np.ndarray, ms, thetas, beta: float,
                          nu: float, dt: float, dx: float) -> complex:
    """sum_bins |w|**beta (1 - i nu tan(pi beta/2) sgn w) dx for one path."""
    uniq, inverse = np.unique(bins, return_inverse=True)
    w = np.zeros(uniq.size, dtype=np.float64)
    scale = dt / dx
    for theta, m in zip(thetas, ms):
        if m > 0 and theta != 0.0:
            w += theta * scale * np.bincount(inverse[:m], minlength=uniq.size)
    mag = np.abs(w) ** beta
    re = float(mag.sum() * dx)
    if nu == 0.0 or beta == 2.0:
        return complex(re, 0.0)
    skew = nu * math.tan(math.pi * beta / 2.0)
    return complex(re, -float((skew * mag * np.sign(w)).sum() * dx))


def limit_cf(thetas, times, walk_limit: StableLaw, scenery_limit: StableLaw,
             dt: float, dx: float, reps: int, master_seed: int,
             n_boot: int = 200) -> CfEstimate:
    """Joint characteristic function of the limit process at the given
    (weight, time) pairs.

    The limit law has CF exp(-sigma**beta * E[integral]), with the integral
    over space of the weighted local-time combination; the expectation is
    estimated by averaging the grid integral over ``reps`` independent
    local-time fields, and the returned value is the exponential of that
    estimate with a bootstrap standard error.
    """
    thetas = np.asarray(thetas, dtype=np.float64)
    times = [float(t) for t in times]
    if thetas.size != len(times):
        raise ValueError("thetas and times must have the same length")
    if reps < 1:
        raise ValueError("reps must be >= 1")
    beta, sigma, nu = (scenery_limit.index, scenery_limit.scale,
                       scenery_limit.skewness)
    horizon = max(times) if times else 0.0
    if horizon == 0.0 or not np.any(thetas):
        return CfEstimate(1.0 + 0.0j, 0.0, 0.0, reps)
    ms = [_checkpoint_index(t, dt) for t in times]
    k = _grid_steps(horizon, dt)
    terms = np.empty(reps, dtype=np.complex128)
    for r in range(reps):
        rng = levy_stream_rng(master_seed, r, _ORACLE_TAG)
        inc = sample_stable(_step_law(walk_limit, dt), rng, k)
        y = np.zeros(k, dtype=np.float64)
        np.cumsum(inc[:-1], out=y[1:])
        bins = np.floor(y / dx).astype(np.int64)
        terms[r] = _field_exponent_terms(bins, ms, thetas, beta, nu, dt, dx)
    factor = sigma ** beta
    value = np.exp(-factor * terms.mean())
    boot_rng = np.random.default_rng(
        np.random.SeedSequence([int(master_seed), 0x424F4F54]))
    idx = boot_rng.integers(0, reps, size=(n_boot, reps))
    boot = np.exp(-factor * terms[idx].mean(axis=1))
    return CfEstimate(complex(value), float(boot.real.std(ddof=1)),
                      float(boot.imag.std(ddof=1)), reps)


def occupation_power_mean(walk_limit: StableLaw, power: float, horizon: float,
                          dt: float, dx: float, reps: int, master_seed: int,
                          tag: int = _OCC_TAG):
    """Monte Carlo mean and standard error of integral L_T(x)**power dx."""
    k = _grid_steps(horizon, dt)
    vals = np.empty(reps, dtype=np.float64)
    w = dt / dx
    for r in range(reps):
        rng = levy_stream_rng(master_seed, r, tag)
        inc = sample_stable(_step_law(walk_limit, dt), rng, k)
        y = np.zeros(k, dtype=np.float64)
        np.cumsum(inc[:-1], out=y[1:])
        bins = np.floor(y / dx).astype(np.int64)
        _, counts = np.unique(bins, return_counts=True)
        vals[r] = ((counts * w) ** power).sum() * dx
    return float(vals.mean()), float(vals.std(ddof=1) / math.sqrt(reps))


def sup_tail_report(walk_limit: StableLaw, scenery_limit: StableLaw,
                    horizon: float, dt: float, dx: float, copies: int,
                    replicas: int, master_seed: int,
                    survival_levels=(0.05, 0.02, 0.01, 0.005),
                    constant_reps: int = 2000) -> dict:
    """Both sides of the supremum tail asymptotics, with errors.

    Empirical side: u**beta times the exceedance frequency of the one-sided
    and absolute suprema over the chosen survival levels of the sample.
    Constant side: C_beta * (1+nu)/2 * E[int L_T**beta dx] (one-sided) and
    C_beta * E[int L_T**beta dx] (absolute), from an independent run.
    """
    beta, nu = scenery_limit.index, scenery_limit.skewness
    if not 0.0 < beta < 2.0:
        raise ValueError("the tail asymptotics need beta in (0, 2)")
    sup_pos = np.empty(replicas)
    sup_abs = np.empty(replicas)
    for r in range(replicas):
        sup_pos[r], sup_abs[r] = sample_averaged_sup(
            walk_limit, scenery_limit, horizon, dt, dx, copies, master_seed, r)
    occ_mean, occ_se = occupation_power_mean(
        walk_limit, beta, horizon, dt, dx, constant_reps, master_seed)
    c_beta = sup_tail_constant(beta, method="quadrature")
    report = {
        "beta": beta,
        "nu": nu,
        "horizon": horizon,
        "replicas": replicas,
        "constant_onesided": c_beta * 0.5 * (1.0 + nu) * occ_mean,
        "constant_onesided_se": c_beta * 0.5 * (1.0 + nu) * occ_se,
        "constant_abs": c_beta * occ_mean,
        "constant_abs_se": c_beta * occ_se,
        "levels": [],
        "sup_abs_samples": sup_abs,
        "sup_pos_samples": sup_pos,
    }
    for level in survival_levels:
        u = float(np.quantile(sup_abs, 1.0 - level))
        if u <= 0.0:
            continue
        n_pos = int((sup_pos >= u).sum())
        n_abs = int((sup_abs >= u).sum())
        report["levels"].append({
            "u": u,
            "survival": level,
            "tail_onesided": u ** beta * n_pos / replicas,
            "tail_onesided_se": u ** beta * math.sqrt(max(n_pos, 1)) / replicas,
            "tail_abs": u ** beta * n_abs / replicas,
            "tail_abs_se": u ** beta * math.sqrt(max(n_abs, 1)) / replicas,
        })
    return report


# ---------------------------------------------------------------------------
# Regularity of the averaged-process paths
# ---------------------------------------------------------------------------


def holder_modulus(paths: np.ndarray, dt: float, alpha: float,
                   eps: float) -> np.ndarray:
    """Weighted increment supremum per path.

    For each row, sup over grid pairs s < t with t - s < 1/e of
    |path(t) - path(s)| / ((t-s)**(1-1/alpha) * |log(t-s)|**(1/alpha + eps)).
    Pairs with t - s >= 1/e are excluded to keep the log weight positive.
    """
    paths = np.atleast_2d(np.asarray(paths, dtype=np.float64))
    n = paths.shape[1] - 1
    out = np.zeros(paths.shape[0], dtype=np.float64)
    for k in range(1, n + 1):
        gap = k * dt
        if gap >= 1.0 / math.e:
            break
        weight = gap ** (1.0 - 1.0 / alpha) * abs(math.log(gap)) ** (1.0 / alpha + eps)
        best = np.abs(paths[:, k:] - paths[:, :-k]).max(axis=1)
        np.maximum(out, best / weight, out=out)
    return out


def holder_report(walk_limit: StableLaw, scenery_limit: StableLaw,
                  grid_exponents, n_paths: int, dx_rule, copies: int,
                  master_seed: int, horizon: float = 0.5) -> dict:
    """Median weighted-increment statistic across dyadic grid refinements.

    The regularity statement needs a symmetric scenery when beta >= 1, so
    that precondition is enforced here rather than in the pure statistic.
    """
    beta, nu = scenery_limit.index, scenery_limit.skewness
    if not 0.0 < beta < 2.0:
        raise ValueError("the regularity check needs beta in (0, 2)")
    if beta >= 1.0 and nu != 0.0:
        raise ValueError("beta >= 1 requires a symmetric scenery (skewness 0)")
    eps = 0.0 if beta >= 1.0 else 0.5
    alpha = walk_limit.index
    out = {"eps": eps, "alpha": alpha, "beta": beta, "grids": []}
    for g in grid_exponents:
        dt = 2.0 ** (-g)
        dx = dx_rule(dt)
        stats = np.empty(n_paths)
        for r in range(n_paths):
            path = sample_averaged_path(walk_limit, scenery_limit, horizon,
                                        dt, dx, copies, master_seed, r)
            stats[r] = holder_modulus(path, dt, alpha, eps)[0]
        out["grids"].append({
            "grid_exponent": g,
            "dt": dt,
            "median": float(np.median(stats)),
            "q90": float(np.quantile(stats, 0.9)),
            "n_paths": n_paths,
        })
    return out
