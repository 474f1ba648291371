"""Batch front-end: configure, run seeded replica experiments, emit reports.

Each command writes four kinds of artifact into the output directory:
manifest.json (the effective config, seed, version and file checksums),
raw.csv (per-replica rows), summary.json (check statistics with pass/fail),
and SVG figures.  Replica work is distributed over a process pool, but every
replica derives its generators from (seed, replica index) alone, so the raw
CSV bytes do not depend on the worker count.

Exit codes: 0 success, 1 configuration error, 2 failed check under --strict.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__, plots
from .config import COMMANDS, ConfigError, ExperimentConfig, load_config, parse_config_text
from .limits import (
    holder_modulus,
    limit_cf,
    occupation_power_mean,
    sample_averaged_path,
    sample_averaged_sup,
    sample_averaged_values,
)
from .rwrs import (
    SchemaConfig,
    build_rwrs,
    feasibility_branch,
    sample_schema,
    schema_scenery,
    schema_walk_rng,
    self_similarity_exponent,
)
from .stable import WalkIncrementLaw, sample_walk_increments, sup_tail_constant
from .stats import (
    default_hill_k,
    empirical_cf,
    hill_estimator,
    ks_critical_value,
    ks_distance,
    loglog_slope,
)
from .walk import batch_walk_stats, generate_walk, local_time_field

_ENV_PREFIX = "RWRSIM_"
_CHUNK = 500


def _fmt(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def _write_csv(path: Path, header, rows):
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(x) for x in row) + "\n")


def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    h.update(path.read_bytes())
    return h.hexdigest()


def _chunks(total: int, size: int = _CHUNK):
    for lo in range(0, total, size):
        yield lo, min(lo + size, total)


def _run_tasks(fn, tasks, workers: int):
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))


def _limit_laws(cfg: ExperimentConfig):
    """Stable limit laws of the configured walk and scenery."""
    schema = _schema_config(cfg)
    return schema.limit_walk, schema.limit_scenery


def _schema_config(cfg: ExperimentConfig) -> SchemaConfig:
    return SchemaConfig(
        alpha=cfg.alpha, beta=cfg.beta, n=cfg.n, times=tuple(cfg.times),
        copies=cfg.copies, replicas=cfg.replicas, master_seed=cfg.seed,
        sigma=cfg.sigma, nu=cfg.nu, walk_kind=cfg.walk_kind,
        scenery_kind=cfg.scenery_kind, a_plus=cfg.a_plus, a_minus=cfg.a_minus)


def _grid(cfg: ExperimentConfig):
    dt = 2.0 ** (-cfg.dt_bits)
    dx = cfg.dx_factor * dt ** (1.0 / cfg.alpha)
    return dt, dx


# ---------------------------------------------------------------------------
# walk-scaling
# ---------------------------------------------------------------------------


def _walk_scaling_chunk(task):
    cfg_values, n, lo, hi = task
    cfg = ExperimentConfig(**cfg_values)
    law = (WalkIncrementLaw.simple_symmetric() if cfg.walk_kind == "simple"
           else WalkIncrementLaw.discrete_pareto(cfg.alpha))
    positions = np.zeros((hi - lo, n + 1), dtype=np.int64)
    for i, replica in enumerate(range(lo, hi)):
        rng = np.random.default_rng(np.random.SeedSequence([cfg.seed, n, replica]))
        np.cumsum(sample_walk_increments(law, rng, n), out=positions[i, 1:])
    st = batch_walk_stats(positions)
    return [(replica, n, int(st["v"][i]), int(st["r"][i]), int(st["m"][i]),
             int(st["sup_n"][i]))
            for i, replica in enumerate(range(lo, hi))]


def _cmd_walk_scaling(cfg: ExperimentConfig, outdir: Path):
    tasks = [(cfg.to_dict(), n, lo, hi)
             for n in cfg.n_grid for lo, hi in _chunks(cfg.replicas)]
    rows = [r for part in _run_tasks(_walk_scaling_chunk, tasks, cfg.workers)
            for r in part]
    rows.sort(key=lambda r: (r[1], r[0]))
    delta = self_similarity_exponent(cfg.alpha, cfg.beta)
    mean_v, mean_r, sup_med = [], [], []
    for n in cfg.n_grid:
        sub = np.array([(r[2], r[3], r[5]) for r in rows if r[1] == n], dtype=float)
        mean_v.append(sub[:, 0].mean())
        mean_r.append(sub[:, 1].mean())
        sup_med.append(float(np.median(sub[:, 2])) * n ** (-delta))
    slope_v, se_v = loglog_slope(list(zip(cfg.n_grid, mean_v)))
    slope_r, se_r = loglog_slope(list(zip(cfg.n_grid, mean_r)))
    want_v = 2.0 - 1.0 / cfg.alpha
    want_r = 1.0 / cfg.alpha
    sup_decreasing = all(b < a for a, b in zip(sup_med, sup_med[1:]))
    checks = [
        {"name": "self_intersection_slope", "value": slope_v, "stderr": se_v,
         "target": want_v, "tol": cfg.slope_tol,
         "pass": abs(slope_v - want_v) <= cfg.slope_tol},
        {"name": "range_slope", "value": slope_r, "stderr": se_r,
         "target": want_r, "tol": cfg.slope_tol,
         "pass": abs(slope_r - want_r) <= cfg.slope_tol},
        {"name": "rescaled_sup_local_time_median_decreasing",
         "value": sup_med, "pass": sup_decreasing},
    ]
    figures = [plots.scaling_plot(outdir / "fig_scaling.svg", cfg.n_grid,
                                  mean_v, mean_r, slope_v, slope_r)]
    extras = {}
    if cfg.dump_paths > 0:
        n0 = cfg.n_grid[0]
        law = (WalkIncrementLaw.simple_symmetric() if cfg.walk_kind == "simple"
               else WalkIncrementLaw.discrete_pareto(cfg.alpha))
        path_rows, lt_rows = [], []
        for replica in range(min(cfg.dump_paths, cfg.replicas)):
            rng = np.random.default_rng(
                np.random.SeedSequence([cfg.seed, n0, replica]))
            w = generate_walk(n0, law, rng)
            path_rows += [(replica, k, int(s)) for k, s in enumerate(w.positions)]
            fld = local_time_field(w, n0)
            lt_rows += [(replica, int(x), int(c))
                        for x, c in zip(fld.sites, fld.counts)]
        extras["paths.csv"] = (("replica", "k", "s_k"), path_rows)
        extras["local_times.csv"] = (("replica", "x", "count"), lt_rows)
    return ("replica,n,v_n,r_n,m_n,sup_local_time".split(","), rows,
            checks, figures, extras)


# ---------------------------------------------------------------------------
# schema-cf
# ---------------------------------------------------------------------------


def _schema_chunk(task):
    cfg_values, lo, hi = task
    cfg = ExperimentConfig(**cfg_values)
    schema = _schema_config(cfg)
    rows = []
    for replica in range(lo, hi):
        g = sample_schema(schema, replica)
        rows += [(replica, t, float(v)) for t, v in zip(schema.times, g)]
    return rows


def _cmd_schema_cf(cfg: ExperimentConfig, outdir: Path):
    tasks = [(cfg.to_dict(), lo, hi) for lo, hi in _chunks(cfg.replicas)]
    rows = [r for part in _run_tasks(_schema_chunk, tasks, cfg.workers)
            for r in part]
    rows.sort(key=lambda r: (r[0], r[1]))
    checks, figures = [], []
    if cfg.scenery_kind != "zero":
        t_check = cfg.times[-1]
        g_final = np.array([r[2] for r in rows if r[1] == t_check])
        dt, dx = _grid(cfg)
        walk_lim, scen_lim = _limit_laws(cfg)
        emp_vals, emp_ses, oracle_vals, oracle_ses = [], [], [], []
        for theta in cfg.thetas:
            emp, se_r, se_i = empirical_cf(g_final, theta)
            oracle = limit_cf([theta], [t_check], walk_lim, scen_lim, dt, dx,
                              cfg.oracle_reps, cfg.seed)
            z_re = abs(emp.real - oracle.value.real) / math.hypot(se_r, oracle.se_real)
            z_im = abs(emp.imag - oracle.value.imag) / math.hypot(se_i, oracle.se_imag)
            checks.append({
                "name": f"cf_match_theta_{theta:g}",
                "empirical": [emp.real, emp.imag],
                "empirical_se": [se_r, se_i],
                "oracle": [oracle.value.real, oracle.value.imag],
                "oracle_se": [oracle.se_real, oracle.se_imag],
                "z": [z_re, z_im], "tol": cfg.cf_gap_tol,
                "pass": bool(z_re <= cfg.cf_gap_tol and z_im <= cfg.cf_gap_tol),
            })
            emp_vals.append(emp)
            emp_ses.append(se_r)
            oracle_vals.append(oracle.value)
            oracle_ses.append(oracle.se_real)
        figures.append(plots.cf_plot(outdir / "fig_cf.svg", cfg.thetas,
                                     emp_vals, emp_ses, oracle_vals, oracle_ses))
    extras = {}
    if cfg.dump_paths > 0:
        schema = _schema_config(cfg)
        srows = []
        for replica in range(min(cfg.dump_paths, cfg.replicas)):
            rng = schema_walk_rng(schema, replica)
            w = generate_walk(schema.horizon, schema.walk_law, rng)
            sc = schema_scenery(schema, replica, 0)
            build_rwrs(w, sc)
            srows += [(replica, x, sc.at(x)) for x in sorted(sc._cache)]
        extras["scenery.csv"] = (("replica", "x", "value"), srows)
    return (["replica", "t", "value"], rows, checks, figures, extras)


# ---------------------------------------------------------------------------
# limit-selfsim
# ---------------------------------------------------------------------------

_SELFSIM_TIMES = (0.25, 0.5, 0.75, 1.0)


def _selfsim_chunk(task):
    cfg_values, lo, hi = task
    cfg = ExperimentConfig(**cfg_values)
    walk_lim, scen_lim = _limit_laws(cfg)
    dt, dx = _grid(cfg)
    rows = []
    for replica in range(lo, hi):
        vals = sample_averaged_values(walk_lim, scen_lim, _SELFSIM_TIMES, dt, dx,
                                      cfg.m_copies, cfg.seed, replica)
        rows += [(replica, t, float(v)) for t, v in zip(_SELFSIM_TIMES, vals)]
    return rows


def _cmd_limit_selfsim(cfg: ExperimentConfig, outdir: Path):
    half = cfg.replicas
    tasks = [(cfg.to_dict(), lo, hi) for lo, hi in _chunks(2 * half)]
    rows = [r for part in _run_tasks(_selfsim_chunk, tasks, cfg.workers)
            for r in part]
    rows.sort(key=lambda r: (r[0], r[1]))
    by_time = {t: np.array([r[2] for r in rows if r[1] == t])
               for t in _SELFSIM_TIMES}
    delta = self_similarity_exponent(cfg.alpha, cfg.beta)
    a_half = by_time[0.5][:half]
    b_scaled = 2.0 ** (-delta) * by_time[1.0][half:]
    d_ss, p_ss = ks_distance(a_half, b_scaled)
    incr = by_time[0.75][half:] - by_time[0.25][half:]
    d_si, p_si = ks_distance(incr, a_half)
    threshold = cfg.ks_slack * ks_critical_value(half, half, 0.01)
    checks = [
        {"name": "self_similarity_ks", "distance": d_ss, "p_value": p_ss,
         "threshold": threshold, "pass": d_ss <= threshold},
        {"name": "stationary_increments_ks", "distance": d_si, "p_value": p_si,
         "threshold": threshold, "pass": d_si <= threshold},
    ]
    figures = [plots.cdf_compare_plot(
        outdir / "fig_selfsim.svg",
        [("value(0.5)", a_half, "2^-delta value(1)", b_scaled),
         ("value(0.75)-value(0.25)", incr, "value(0.5)", a_half)])]
    return (["replica", "t", "value"], rows, checks, figures, {})


# ---------------------------------------------------------------------------
# tail-check
# ---------------------------------------------------------------------------


def _tail_chunk(task):
    cfg_values, lo, hi = task
    cfg = ExperimentConfig(**cfg_values)
    walk_lim, scen_lim = _limit_laws(cfg)
    dt, dx = _grid(cfg)
    rows = []
    for replica in range(lo, hi):
        sp, sa = sample_averaged_sup(walk_lim, scen_lim, 1.0, dt, dx,
                                     cfg.m_copies, cfg.seed, replica)
        rows.append((replica, sp, sa))
    return rows


def _cmd_tail_check(cfg: ExperimentConfig, outdir: Path):
    if not 0.0 < cfg.beta < 2.0:
        raise ConfigError("tail-check needs beta in (0, 2)")
    tasks = [(cfg.to_dict(), lo, hi) for lo, hi in _chunks(cfg.replicas)]
    rows = [r for part in _run_tasks(_tail_chunk, tasks, cfg.workers)
            for r in part]
    rows.sort(key=lambda r: r[0])
    sup_pos = np.array([r[1] for r in rows])
    sup_abs = np.array([r[2] for r in rows])
    walk_lim, _ = _limit_laws(cfg)
    const_dt = 2.0 ** (-max(cfg.dt_bits, 12))
    const_dx = cfg.dx_factor * const_dt ** (1.0 / cfg.alpha)
    occ, occ_se = occupation_power_mean(walk_lim, cfg.beta, 1.0, const_dt,
                                        const_dx, cfg.constant_reps, cfg.seed)
    c_beta = sup_tail_constant(cfg.beta, "quadrature")
    const_abs = c_beta * occ
    const_abs_se = c_beta * occ_se
    beta = cfg.beta
    n = sup_abs.size
    k_check = cfg.hill_k if cfg.hill_k > 0 else max(100, round(0.01 * n))
    hill = hill_estimator(sup_abs, k_check)
    k_sweep = sorted({max(10, k_check // 4), k_check // 2, k_check,
                      2 * k_check, default_hill_k(n)})
    hill_sweep = {k: hill_estimator(sup_abs, k) for k in k_sweep}
    levels = []
    for level in cfg.u_levels:
        u = float(np.quantile(sup_abs, 1.0 - level))
        n_abs = int((sup_abs >= u).sum())
        n_pos = int((sup_pos >= u).sum())
        levels.append({
            "survival": level, "u": u, "events_abs": n_abs, "events_pos": n_pos,
            "scaled_tail_abs": u ** beta * n_abs / n,
            "scaled_tail_abs_se": u ** beta * math.sqrt(max(n_abs, 1)) / n,
            "onesided_ratio": n_pos / n_abs if n_abs else float("nan"),
        })
    resolvable = [lv for lv in levels if lv["events_abs"] >= 50]
    deepest = resolvable[-1] if resolvable else levels[0]
    plateau_factor = deepest["scaled_tail_abs"] / const_abs
    ratio = deepest["onesided_ratio"]
    want_ratio = 0.5 * (1.0 + cfg.nu)
    checks = [
        {"name": "hill_tail_index", "value": hill, "k": k_check,
         "target": beta, "tol": cfg.hill_tol, "sweep": hill_sweep,
         "pass": abs(hill - beta) <= cfg.hill_tol},
        {"name": "onesided_over_twosided_ratio", "value": ratio,
         "u": deepest["u"], "target": want_ratio, "tol": cfg.ratio_tol,
         "pass": abs(ratio - want_ratio) <= cfg.ratio_tol},
        {"name": "plateau_vs_constant", "value": plateau_factor,
         "u": deepest["u"], "constant": const_abs, "constant_se": const_abs_se,
         "band": cfg.plateau_band,
         "pass": 1.0 / cfg.plateau_band <= plateau_factor <= cfg.plateau_band},
    ]
    figures = [
        plots.tail_plot(outdir / "fig_tail.svg", beta,
                        [lv["u"] for lv in levels],
                        [lv["scaled_tail_abs"] for lv in levels],
                        [lv["scaled_tail_abs_se"] for lv in levels],
                        const_abs, const_abs_se),
        plots.hill_sweep_plot(outdir / "fig_hill.svg", list(hill_sweep),
                              list(hill_sweep.values()), beta, cfg.hill_tol),
    ]
    summary_extra = {"levels": levels, "constant_abs": const_abs,
                     "constant_abs_se": const_abs_se,
                     "constant_onesided": 0.5 * (1 + cfg.nu) * const_abs}
    return (["replica", "sup_onesided", "sup_abs"], rows, checks, figures, {},
            summary_extra)


# ---------------------------------------------------------------------------
# holder-check
# ---------------------------------------------------------------------------


def _holder_chunk(task):
    cfg_values, grid_bit, lo, hi = task
    cfg = ExperimentConfig(**cfg_values)
    walk_lim, scen_lim = _limit_laws(cfg)
    eps = 0.0 if cfg.beta >= 1.0 else 0.5
    dt = 2.0 ** (-grid_bit)
    dx = cfg.dx_factor * dt ** (1.0 / cfg.alpha)
    rows = []
    for replica in range(lo, hi):
        path = sample_averaged_path(walk_lim, scen_lim, 0.5, dt, dx,
                                    cfg.m_copies, cfg.seed, replica)
        stat = float(holder_modulus(path, dt, cfg.alpha, eps)[0])
        rows.append((grid_bit, replica, stat))
    return rows


def _cmd_holder_check(cfg: ExperimentConfig, outdir: Path):
    if not 0.0 < cfg.beta < 2.0:
        raise ConfigError("holder-check needs beta in (0, 2)")
    if cfg.beta >= 1.0 and cfg.nu != 0.0:
        raise ConfigError("holder-check with beta >= 1 needs nu = 0")
    tasks = [(cfg.to_dict(), g, lo, hi)
             for g in cfg.grid_bits for lo, hi in _chunks(cfg.paths)]
    rows = [r for part in _run_tasks(_holder_chunk, tasks, cfg.workers)
            for r in part]
    rows.sort(key=lambda r: (r[0], r[1]))
    stats_per_grid = [np.array([r[2] for r in rows if r[0] == g])
                      for g in cfg.grid_bits]
    medians = [float(np.median(s)) for s in stats_per_grid]
    drift = abs(medians[-1] - medians[0]) / medians[0]
    checks = [{
        "name": "holder_median_stable",
        "medians": dict(zip([f"2^-{g}" for g in cfg.grid_bits], medians)),
        "relative_drift": drift, "tol": cfg.median_drift_tol,
        "eps": 0.0 if cfg.beta >= 1.0 else 0.5,
        "pass": drift <= cfg.median_drift_tol,
    }]
    figures = [plots.holder_plot(outdir / "fig_holder.svg", cfg.grid_bits,
                                 stats_per_grid)]
    return (["grid_bit", "path", "modulus"], rows, checks, figures, {})


# ---------------------------------------------------------------------------
# feasible-sweep
# ---------------------------------------------------------------------------


def _cmd_feasible_sweep(cfg: ExperimentConfig, outdir: Path):
    rng = np.random.default_rng(np.random.SeedSequence([cfg.seed, 0xFEA5]))
    rows = []
    violations = 0
    for i in range(cfg.sweep_count):
        alpha = float(rng.uniform(1.0 + 1e-9, 2.0))
        beta = float(rng.uniform(0.01, 2.0))
        h = self_similarity_exponent(alpha, beta)
        try:
            branch = feasibility_branch(alpha, beta)
        except RuntimeError:
            branch = "violation"
            violations += 1
        rows.append((i, alpha, beta, h, branch))
    checks = [{"name": "feasibility_violations", "value": violations,
               "count": cfg.sweep_count, "pass": violations == 0}]
    figures = [plots.feasible_plot(outdir / "fig_feasible.svg",
                                   [r[1] for r in rows], [r[2] for r in rows],
                                   [r[4] for r in rows])]
    return (["index", "alpha", "beta", "exponent", "branch"], rows, checks,
            figures, {})


_RUNNERS = {
    "walk-scaling": _cmd_walk_scaling,
    "schema-cf": _cmd_schema_cf,
    "limit-selfsim": _cmd_limit_selfsim,
    "tail-check": _cmd_tail_check,
    "holder-check": _cmd_holder_check,
    "feasible-sweep": _cmd_feasible_sweep,
}


def run_command(cfg: ExperimentConfig) -> dict:
    """Execute one command and write its artifacts; returns the summary."""
    outdir = Path(cfg.out)
    outdir.mkdir(parents=True, exist_ok=True)
    result = _RUNNERS[cfg.command](cfg, outdir)
    header, rows, checks, figures, extras = result[:5]
    summary_extra = result[5] if len(result) > 5 else {}
    raw_path = outdir / "raw.csv"
    _write_csv(raw_path, header, rows)
    extra_files = []
    for name, (hdr, erows) in extras.items():
        p = outdir / name
        _write_csv(p, hdr, erows)
        extra_files.append(p)
    summary = {
        "command": cfg.command,
        "seed": cfg.seed,
        "checks": checks,
        "pass": all(c.get("pass", True) for c in checks),
        **summary_extra,
    }
    summary_path = outdir / "summary.json"
    summary_path.write_text(json.dumps(summary, indent=2, sort_keys=True,
                                       default=_json_default) + "\n")
    produced = [raw_path, summary_path] + extra_files + [Path(f) for f in figures]
    manifest = {
        "command": cfg.command,
        "version": __version__,
        "seed": cfg.seed,
        "workers": cfg.workers,
        "config": cfg.canonical_text(),
        "outputs": {p.name: _sha256(p) for p in produced},
    }
    (outdir / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return summary


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj)}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rwrsim",
        description="Monte Carlo experiments for random walks in random scenery")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", help="path to a key = value config file")
    parser.add_argument("--seed", type=int, help="master seed (u64)")
    parser.add_argument("--workers", type=int, help="process pool size")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--strict", action="store_true", default=None,
                        help="exit 2 when any check fails")
    parser.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                        help="override any config key (repeatable)")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = ExperimentConfig(command=args.command)
        config_path = args.config or os.environ.get(_ENV_PREFIX + "CONFIG")
        if config_path:
            cfg = load_config(config_path, base=cfg)
            cfg.command = args.command
        env_lines = []
        for key in ("SEED", "WORKERS", "OUT", "STRICT"):
            val = os.environ.get(_ENV_PREFIX + key)
            if val is not None:
                env_lines.append(f"{key.lower()} = {val}")
        if env_lines:
            cfg = parse_config_text("\n".join(env_lines), base=cfg)
        flag_lines = []
        if args.seed is not None:
            flag_lines.append(f"seed = {args.seed}")
        if args.workers is not None:
            flag_lines.append(f"workers = {args.workers}")
        if args.out is not None:
            flag_lines.append(f"out = {args.out}")
        if args.strict is not None:
            flag_lines.append("strict = true")
        for item in args.set:
            if "=" not in item:
                raise ConfigError(f"--set needs KEY=VALUE, got {item!r}")
            flag_lines.append(item)
        if flag_lines:
            cfg = parse_config_text("\n".join(flag_lines), base=cfg)
        cfg.command = args.command
        _validate_for_command(cfg)
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    summary = run_command(cfg)
    for check in summary["checks"]:
        status = "PASS" if check.get("pass", True) else "FAIL"
        print(f"[{status}] {cfg.command}: {check['name']}")
    if not summary["pass"] and cfg.strict:
        return 2
    return 0


def _validate_for_command(cfg: ExperimentConfig):
    """Fail fast on parameter combinations a command cannot run."""
    if cfg.command in ("schema-cf", "limit-selfsim", "tail-check", "holder-check"):
        try:
            _schema_config(cfg)  # validates (alpha, beta, kinds) jointly
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    if (cfg.command in ("limit-selfsim", "tail-check", "holder-check")
            and cfg.scenery_kind == "zero"):
        raise ConfigError(f"{cfg.command} needs a scenery with a stable limit")
    if cfg.command == "walk-scaling" and len(cfg.n_grid) < 3:
        raise ConfigError("walk-scaling needs at least 3 n_grid values")
    if cfg.command == "tail-check":
        if not 0.0 < cfg.beta < 2.0:
            raise ConfigError("tail-check needs beta in (0, 2)")
        if not cfg.u_levels:
            raise ConfigError("tail-check needs at least one survival level")
    if cfg.command == "holder-check":
        if not 0.0 < cfg.beta < 2.0:
            raise ConfigError("holder-check needs beta in (0, 2)")
        if cfg.beta >= 1.0 and cfg.nu != 0.0:
            raise ConfigError("holder-check with beta >= 1 needs nu = 0")
        if len(cfg.grid_bits) < 2:
            raise ConfigError("holder-check needs at least 2 grid_bits values")


if __name__ == "__main__":
    sys.exit(main())
