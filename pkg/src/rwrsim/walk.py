"""Walk paths and their occupation functionals.

The quantities everything downstream is built from: the local time N_s(x),
the self-intersection count V_s, the range R_s and the running maximum M_n.
At integer times these are counting identities; between integers they are
linearly interpolated, the same rule the cumulative reward process uses.
Local times are kept sparse (site -> count), so memory follows the number of
visited sites rather than the horizon.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .stable import WalkIncrementLaw, sample_walk_increments

__all__ = [
    "WalkPath",
    "LocalTimeField",
    "generate_walk",
    "local_time",
    "local_time_field",
    "self_intersections",
    "visited_range",
    "max_abs",
    "batch_walk_stats",
]

_POSITION_LIMIT = 1 << 62


@dataclass(frozen=True)
class WalkPath:
    """Realized positions S_0..S_n with S_0 = 0."""

    positions: np.ndarray
    law: WalkIncrementLaw
    seed_info: tuple = field(default=())

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=np.int64)
        object.__setattr__(self, "positions", pos)
        if pos.ndim != 1 or pos.size < 1 or pos[0] != 0:
            raise ValueError("positions must be a 1-d sequence starting at 0")

    @property
    def horizon(self) -> int:
        return self.positions.size - 1

    def _check_time(self, s) -> float:
        s = float(s)
        if not 0.0 <= s <= self.horizon:
            raise ValueError(f"time {s} outside horizon [0, {self.horizon}]")
        return s


@dataclass(frozen=True)
class LocalTimeField:
    """Sparse local times at one (possibly non-integer) time."""

    sites: np.ndarray     # sorted, distinct
    counts: np.ndarray    # float64; integer-valued at integer times
    horizon: float

    def count_at(self, x: int) -> float:
        i = np.searchsorted(self.sites, x)
        if i < self.sites.size and self.sites[i] == x:
            return float(self.counts[i])
        return 0.0

    @property
    def total(self) -> float:
        return float(self.counts.sum())

    @property
    def self_intersections(self) -> float:
        return float((self.counts ** 2).sum())

    @property
    def range(self) -> int:
        return int(np.count_nonzero(self.counts))


def generate_walk(n: int, law: WalkIncrementLaw, rng: np.random.Generator,
                  seed_info: tuple = ()) -> WalkPath:
    """Path of length n+1 with i.i.d. increments from ``law``."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    positions = np.zeros(n + 1, dtype=np.int64)
    if n > 0:
        steps = sample_walk_increments(law, rng, n)
        np.cumsum(steps, out=positions[1:])
        if int(np.abs(positions).max()) >= _POSITION_LIMIT:
            raise OverflowError("walk position exceeds the 64-bit safety bound")
    return WalkPath(positions, law, seed_info)


def local_time_field(path: WalkPath, s) -> LocalTimeField:
    """All local times N_s(x) at time ``s``, interpolated if non-integer."""
    s = path._check_time(s)
    m = int(math.floor(s))
    frac = s - m
    sites, counts = np.unique(path.positions[: m + 1], return_counts=True)
    counts = counts.astype(np.float64)
    if frac > 0.0:
        nxt = int(path.positions[m + 1])
        i = np.searchsorted(sites, nxt)
        if i < sites.size and sites[i] == nxt:
            counts[i] += frac
        else:
            sites = np.insert(sites, i, nxt)
            counts = np.insert(counts, i, frac)
    return LocalTimeField(sites, counts, s)


def local_time(path: WalkPath, x: int, s) -> float:
    """N_s(x): visits to ``x`` up to time ``s``, linearly interpolated."""
    s = path._check_time(s)
    m = int(math.floor(s))
    c = float(np.count_nonzero(path.positions[: m + 1] == x))
    frac = s - m
    if frac > 0.0 and int(path.positions[m + 1]) == x:
        c += frac
    return c


def _interp_integer_functional(path: WalkPath, s, fn) -> float:
    s = path._check_time(s)
    m = int(math.floor(s))
    v0 = fn(m)
    frac = s - m
    if frac == 0.0:
        return float(v0)
    return float(v0 + frac * (fn(m + 1) - v0))


def self_intersections(path: WalkPath, s) -> float:
    """V_s = sum_x N_s(x)**2 at integer times, interpolated otherwise."""
    def at(m: int) -> float:
        _, counts = np.unique(path.positions[: m + 1], return_counts=True)
        return float((counts.astype(np.float64) ** 2).sum())
    return _interp_integer_functional(path, s, at)


def visited_range(path: WalkPath, s) -> float:
    """R_s = number of distinct visited sites, interpolated off integers."""
    def at(m: int) -> float:
        return float(np.unique(path.positions[: m + 1]).size)
    return _interp_integer_functional(path, s, at)


def max_abs(path: WalkPath, n: int) -> int:
    """Running maximum M_n = max_{k <= n} |S_k|."""
    n = int(n)
    path._check_time(n)
    return int(np.abs(path.positions[: n + 1]).max())


def batch_walk_stats(positions: np.ndarray) -> dict:
    """Occupation statistics for a batch of paths, one per row.

    Returns arrays over rows: ``v`` (self-intersections), ``r`` (range),
    ``m`` (max abs position) and ``sup_n`` (largest local time), computed by
    row-sorting, so a batch of B paths of length L costs O(B L log L).
    """
    pos = np.asarray(positions)
    if pos.ndim != 2:
        raise ValueError("positions must be 2-d (paths, times)")
    n_rows, length = pos.shape
    srt = np.sort(pos, axis=1)
    newrun = np.ones_like(srt, dtype=bool)
    newrun[:, 1:] = srt[:, 1:] != srt[:, :-1]
    starts = np.flatnonzero(newrun.ravel())
    lengths = np.diff(np.append(starts, pos.size)).astype(np.float64)
    rows = starts // length
    v = np.bincount(rows, weights=lengths ** 2, minlength=n_rows)
    r = newrun.sum(axis=1).astype(np.int64)
    sup_n = np.zeros(n_rows, dtype=np.float64)
    np.maximum.at(sup_n, rows, lengths)
    m = np.abs(pos).max(axis=1)
    return {"v": v, "r": r, "m": m, "sup_n": sup_n.astype(np.int64)}
