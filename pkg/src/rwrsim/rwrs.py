"""Random walks in random scenery and the random rewards schema.

The cumulative reward process Z sums scenery values along the walk; its two
equivalent forms (path sum and local-time sum) are both implemented and kept
as a cross-check.  The schema aggregates ``copies`` independent rescaled
reward processes into one observation of the averaged process, normalized by
copies**(-1/beta).  All randomness is derived from (master seed, replica,
copy), so a replica's output does not depend on scheduling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .keyed import derive_key
from .scenery import Scenery, keyed_scenery_values
from .stable import SceneryLaw, StableLaw, WalkIncrementLaw, sample_walk_increments
from .walk import WalkPath, local_time_field

__all__ = [
    "RwrsPath",
    "SchemaConfig",
    "build_rwrs",
    "rwrs_value",
    "rwrs_local_time_form",
    "self_similarity_exponent",
    "feasibility_branch",
    "rescaled_rwrs",
    "sample_schema",
    "schema_walk_rng",
    "schema_scenery",
    "local_time_cf_exponent",
]

_WALK_TAG = 0x57414C4B
_SCENERY_TAG = 0x5343  # must match the Scenery class derivation

_BRANCH_TOL = 1e-9


@dataclass(frozen=True)
class RwrsPath:
    """Cumulative rewards at integer times along one (walk, scenery) pair."""

    values: np.ndarray
    walk: WalkPath
    scenery: Scenery

    def value(self, s) -> float:
        """Cumulative reward at time s, interpolated between integers."""
        s = self.walk._check_time(s)
        m = int(math.floor(s))
        frac = s - m
        v = float(self.values[m])
        if frac > 0.0:
            v += frac * (float(self.values[m + 1]) - v)
        return v


def build_rwrs(walk: WalkPath, scenery: Scenery) -> RwrsPath:
    """Assemble the reward path by summing scenery values along the walk."""
    vals = scenery.values(walk.positions)
    return RwrsPath(np.cumsum(vals), walk, scenery)


def rwrs_value(walk: WalkPath, scenery: Scenery, s) -> float:
    """Cumulative reward at one time; convenience over ``build_rwrs``."""
    return build_rwrs(walk, scenery).value(s)


def rwrs_local_time_form(walk: WalkPath, scenery: Scenery, s) -> float:
    """The reward value recomputed as sum over sites of
    local_time(x) * scenery(x), the dual of the path-sum form."""
    fld = local_time_field(walk, s)
    return float(np.dot(fld.counts, scenery.values(fld.sites)))


def self_similarity_exponent(alpha: float, beta: float) -> float:
    """1 - 1/alpha + 1/(alpha*beta), the scaling exponent of the limit."""
    if not 1.0 < alpha <= 2.0:
        raise ValueError(f"alpha must lie in (1, 2], got {alpha}")
    if not 0.0 < beta <= 2.0:
        raise ValueError(f"beta must lie in (0, 2], got {beta}")
    return 1.0 - 1.0 / alpha + 1.0 / (alpha * beta)


def feasibility_branch(alpha: float, beta: float) -> str:
    """Classify where the exponent sits and verify it is feasible.

    The verification is a theorem check: it can only trip on a genuine bug
    (or float pathology), so a failure raises rather than returning.
    """
    h = self_similarity_exponent(alpha, beta)
    if beta < 1.0:
        lo, hi = (beta + 1.0) / (2.0 * beta), 1.0 / beta
        ok = (h >= lo - _BRANCH_TOL) and (h < hi + _BRANCH_TOL)
        branch = "beta<1"
    elif beta == 1.0:
        ok = abs(h - 1.0) <= _BRANCH_TOL
        branch = "beta=1"
    else:
        lo, hi = 1.0 / beta, (beta + 1.0) / (2.0 * beta)
        ok = (h > lo - _BRANCH_TOL) and (h <= hi + _BRANCH_TOL)
        branch = "beta>1"
    if not ok:
        raise RuntimeError(
            f"exponent {h} escaped its feasible branch for alpha={alpha}, beta={beta}")
    return branch


def rescaled_rwrs(walk: WalkPath, scenery: Scenery, n: int, t: float) -> float:
    """n**(-delta) times the reward value at time n*t, with delta the
    self-similarity exponent of the pair's limit."""
    alpha = walk.law.index
    beta = scenery.law.limit_law.index if scenery.law.kind != "zero" else None
    if beta is None:
        raise ValueError("rescaling needs a scenery with a stable limit")
    delta = self_similarity_exponent(alpha, beta)
    return n ** (-delta) * rwrs_value(walk, scenery, n * t)


@dataclass(frozen=True)
class SchemaConfig:
    """Full description of one schema experiment."""

    alpha: float
    beta: float
    n: int
    times: tuple = (1.0,)
    copies: int | None = None
    replicas: int = 1
    master_seed: int = 0
    sigma: float = 1.0
    nu: float = 0.0
    walk_kind: str = "simple"
    scenery_kind: str = "stable"
    a_plus: float = 1.0
    a_minus: float = 1.0

    def __post_init__(self):
        feasibility_branch(self.alpha, self.beta)  # also validates the ranges
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.copies is None:
            object.__setattr__(self, "copies", int(math.ceil(math.sqrt(self.n))))
        if self.copies < 1:
            raise ValueError(f"copies must be >= 1, got {self.copies}")
        if self.replicas < 1:
            raise ValueError(f"replicas must be >= 1, got {self.replicas}")
        times = tuple(float(t) for t in self.times)
        if not times or any(t < 0.0 for t in times) or list(times) != sorted(times):
            raise ValueError("times must be sorted and non-negative")
        object.__setattr__(self, "times", times)
        self.walk_law  # force kind/index consistency checks
        self.scenery_law

    @property
    def delta(self) -> float:
        return self_similarity_exponent(self.alpha, self.beta)

    @property
    def horizon(self) -> int:
        return max(1, int(math.ceil(self.n * max(self.times))))

    @property
    def walk_law(self) -> WalkIncrementLaw:
        if self.walk_kind == "simple":
            if self.alpha != 2.0:
                raise ValueError("simple walk steps require alpha = 2")
            return WalkIncrementLaw.simple_symmetric()
        if self.walk_kind == "pareto":
            return WalkIncrementLaw.discrete_pareto(self.alpha)
        raise ValueError(f"unknown walk kind {self.walk_kind!r}")

    @property
    def scenery_law(self) -> SceneryLaw:
        if self.scenery_kind == "stable":
            return SceneryLaw.exact_stable(self.beta, self.sigma, self.nu)
        if self.scenery_kind == "pareto":
            return SceneryLaw.two_sided_pareto(self.beta, self.a_plus, self.a_minus)
        if self.scenery_kind == "zero":
            return SceneryLaw.degenerate_zero()
        raise ValueError(f"unknown scenery kind {self.scenery_kind!r}")

    @property
    def limit_scenery(self) -> StableLaw:
        """Stable law attracting the scenery sums (sigma, nu of the limit)."""
        return self.scenery_law.limit_law

    @property
    def limit_walk(self) -> StableLaw:
        return self.walk_law.limit_law


def schema_walk_rng(config: SchemaConfig, replica: int) -> np.random.Generator:
    """Generator feeding all walk increments of one replica."""
    ss = np.random.SeedSequence([config.master_seed, int(replica), _WALK_TAG])
    return np.random.default_rng(ss)


def schema_scenery(config: SchemaConfig, replica: int, copy: int) -> Scenery:
    """The scenery owned by one (replica, copy) pair."""
    return Scenery(config.scenery_law, config.master_seed, replica, copy)


def _replica_reward_grid(config: SchemaConfig, replica: int) -> np.ndarray:
    """Reward values on the integer time grid for one replica's copies."""
    rng = schema_walk_rng(config, replica)
    copies, horizon = config.copies, config.horizon
    steps = sample_walk_increments(config.walk_law, rng, (copies, horizon))
    positions = np.zeros((copies, horizon + 1), dtype=np.int64)
    np.cumsum(steps, axis=1, out=positions[:, 1:])
    keys = np.array(
        [derive_key(_SCENERY_TAG, config.master_seed, replica, c) for c in range(copies)],
        dtype=np.uint64,
    ).reshape(-1, 1)
    vals = keyed_scenery_values(config.scenery_law, keys, positions)
    return np.cumsum(vals, axis=1)


def sample_schema(config: SchemaConfig, replica: int) -> np.ndarray:
    """One observation of the averaged process at the config time grid.

    Averages the copies' rescaled reward values at each grid time with the
    copies**(-1/beta) normalization; deterministic given (config, replica).
    """
    z = _replica_reward_grid(config, replica)
    n, horizon = config.n, config.horizon
    s = np.asarray(config.times, dtype=np.float64) * n
    i0 = np.floor(s).astype(np.int64)
    frac = s - i0
    i1 = np.minimum(i0 + 1, horizon)
    z_at = z[:, i0] * (1.0 - frac) + z[:, i1] * frac
    d = n ** (-config.delta) * z_at
    return config.copies ** (-1.0 / config.beta) * d.sum(axis=0)


def local_time_cf_exponent(path: WalkPath, config: SchemaConfig,
                           thetas, times) -> complex:
    """The exponent statistic of one walk's conditional reward law.

    For weights theta_j at grid times t_j this is
    sigma**beta * n**(-delta*beta) * sum_x |w(x)|**beta *
    (1 - i*nu*tan(pi*beta/2)*sgn(w(x))) with w(x) = sum_j theta_j N_{n t_j}(x),
    using the (sigma, nu) of the scenery's stable limit.
    """
    thetas = np.asarray(thetas, dtype=np.float64)
    times = np.asarray(times, dtype=np.float64)
    if thetas.shape != times.shape:
        raise ValueError("thetas and times must have the same length")
    limit = config.limit_scenery
    beta, sigma, nu = limit.index, limit.scale, limit.skewness
    fields = [local_time_field(path, config.n * t) for t in times]
    all_sites = np.unique(np.concatenate([f.sites for f in fields]))
    w = np.zeros(all_sites.size, dtype=np.float64)
    for theta, fld in zip(thetas, fields):
        idx = np.searchsorted(all_sites, fld.sites)
        w[idx] += theta * fld.counts
    mag = np.abs(w) ** beta
    if beta == 2.0 or nu == 0.0:
        total = complex(mag.sum(), 0.0)
    else:
        skew = nu * math.tan(math.pi * beta / 2.0)
        total = complex(mag.sum(), -(skew * mag * np.sign(w)).sum())
    scale = sigma ** beta * config.n ** (-config.delta * beta)
    return scale * total
