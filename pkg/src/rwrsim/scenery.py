"""Lazily realized i.i.d. sceneries indexed by the integer lattice.

A scenery is a deterministic function of (law, master seed, replica, copy):
the value at site x is produced by the keyed counter-based generator, so it
does not depend on the order in which sites are first visited and distinct
replicas or copies realize independent fields without coordination.
"""

from __future__ import annotations

import numpy as np

from .keyed import derive_key, encode_site, stream_ids, uniforms_from_streams
from .stable import SceneryLaw, scenery_values_from_uniforms

__all__ = ["Scenery", "keyed_scenery_values", "scenery_at", "cumulative_scenery"]

_SCENERY_TAG = 0x5343

_CHUNK = 1 << 20


def keyed_scenery_values(law: SceneryLaw, key, sites) -> np.ndarray:
    """Scenery values at ``sites`` for stream ``key`` (pure, vectorized).

    ``key`` may be a scalar or a column of per-row keys broadcast against a
    2-d ``sites`` array; this is the primitive the batch engines call.  The
    value at a site is a function of its stream id alone, so repeated sites
    are evaluated once and scattered back.
    """
    ids = stream_ids(key, encode_site(sites))
    if law.kind == "zero":
        return np.zeros(ids.shape, dtype=np.float64)
    uniq, inverse = np.unique(ids, return_inverse=True)
    u1 = uniforms_from_streams(uniq, 0)
    u2 = uniforms_from_streams(uniq, 1)
    vals = scenery_values_from_uniforms(law, u1, u2)
    return vals[inverse].reshape(ids.shape)


class Scenery:
    """One realization of the random field (xi_x), materialized on access."""

    def __init__(self, law: SceneryLaw, master_seed: int, replica: int = 0,
                 copy: int = 0):
        self.law = law
        self.master_seed = int(master_seed)
        self.replica = int(replica)
        self.copy = int(copy)
        self.key = derive_key(_SCENERY_TAG, master_seed, replica, copy)
        self._cache: dict[int, float] = {}

    def at(self, x: int) -> float:
        """Value at site ``x``; first access realizes and caches it."""
        x = int(x)
        v = self._cache.get(x)
        if v is None:
            v = float(keyed_scenery_values(self.law, self.key,
                                           np.array([x], dtype=np.int64))[0])
            self._cache[x] = v
        return v

    def values(self, sites) -> np.ndarray:
        """Values at an integer array of sites (repeats allowed).

        Every distinct site touched here ends up in the cache, and nothing
        else does, so after evaluating a walk the cache holds exactly the
        visited range.
        """
        sites = np.asarray(sites, dtype=np.int64)
        uniq, inverse = np.unique(sites, return_inverse=True)
        vals = np.empty(uniq.size, dtype=np.float64)
        missing = []
        for i, x in enumerate(uniq.tolist()):
            v = self._cache.get(x)
            if v is None:
                missing.append(i)
            else:
                vals[i] = v
        if missing:
            idx = np.array(missing, dtype=np.intp)
            fresh = keyed_scenery_values(self.law, self.key, uniq[idx])
            vals[idx] = fresh
            for i, v in zip(missing, fresh.tolist()):
                self._cache[int(uniq[i])] = v
        return vals[inverse].reshape(sites.shape)

    def cumulative(self, n: int) -> float:
        """Sum of the values over sites 0..n, computed without caching."""
        if n < 0:
            raise ValueError(f"n must be >= 0, got {n}")
        total = 0.0
        for lo in range(0, n + 1, _CHUNK):
            hi = min(lo + _CHUNK, n + 1)
            block = keyed_scenery_values(self.law, self.key,
                                         np.arange(lo, hi, dtype=np.int64))
            total += float(block.sum())
        return total

    @property
    def cache_size(self) -> int:
        return len(self._cache)

    def __repr__(self):
        return (f"Scenery({self.law.kind}, seed={self.master_seed}, "
                f"replica={self.replica}, copy={self.copy}, "
                f"realized={self.cache_size})")


def scenery_at(scenery: Scenery, x: int) -> float:
    return scenery.at(x)


def cumulative_scenery(scenery: Scenery, n: int) -> float:
    return scenery.cumulative(n)
