"""Counter-based keyed pseudorandom numbers.

Scenery values must be identical no matter in which order sites are first
visited, and independent replicas must be able to realize disjoint sceneries
in parallel.  A sequential generator cannot give that, so per-site randomness
is produced by a keyed 64-bit mixing function (the splitmix64 finalizer,
applied twice) evaluated at counter = encoded site index.  Everything here is
pure and vectorizes over numpy uint64 arrays.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_SLOT = 0xD1B54A32D192ED03

_U_GOLDEN = np.uint64(_GOLDEN)
_U_MIX1 = np.uint64(_MIX1)
_U_MIX2 = np.uint64(_MIX2)
_U_SLOT = np.uint64(_SLOT)
# 2**-53, float spacing used for the uint64 -> (0,1) map
_INV53 = 1.1102230246251565e-16


def mix64(x):
    """splitmix64 finalizer, elementwise on uint64 arrays (wraps mod 2**64)."""
    with np.errstate(over="ignore"):
        x = np.asarray(x, dtype=np.uint64)
        x = (x ^ (x >> np.uint64(30))) * _U_MIX1
        x = (x ^ (x >> np.uint64(27))) * _U_MIX2
        return x ^ (x >> np.uint64(31))


def derive_key(*parts: int) -> int:
    """Fold integers (master seed, replica, copy, role tag, ...) into one key.

    The chain is order sensitive, so (a, b) and (b, a) give unrelated keys.
    """
    k = 0x8E2AC6B1D53F0A97
    for p in parts:
        k = int(mix64(np.uint64(((k ^ (int(p) & _MASK)) * _GOLDEN) & _MASK)))
    return k


def encode_site(x) -> np.ndarray:
    """Map signed site indices on Z to unique uint64 counters (sign folding)."""
    x = np.asarray(x, dtype=np.int64)
    return np.where(x >= 0, 2 * x, -2 * x - 1).astype(np.uint64)


def stream_ids(key, counters) -> np.ndarray:
    """Injective-per-key stream identifiers for (key, counter) pairs.

    The downstream value is a pure function of the id, so deduplicating ids
    before the expensive transforms preserves every output bit.
    """
    with np.errstate(over="ignore"):
        key = np.asarray(key, dtype=np.uint64)
        counters = np.asarray(counters, dtype=np.uint64)
        return key ^ (counters * _U_GOLDEN)


def uniforms_from_streams(streams, slot: int) -> np.ndarray:
    """Keyed uniforms in the open interval (0, 1) for given stream ids."""
    with np.errstate(over="ignore"):
        bits = mix64(mix64(streams) + np.uint64(slot) * _U_SLOT)
    return ((bits >> np.uint64(11)).astype(np.float64) + 0.5) * _INV53


def uniforms(key, counters, slot: int) -> np.ndarray:
    """Keyed uniforms in (0, 1).

    ``key`` is a uint64 scalar or column broadcastable against ``counters``.
    ``slot`` selects one of several independent values per (key, counter);
    callers use it to get the 2-3 uniforms a sampling transform consumes.
    """
    return uniforms_from_streams(stream_ids(key, counters), slot)


def site_uniforms(key, sites, slot: int) -> np.ndarray:
    """Per-site keyed uniforms; ``sites`` are signed integers on Z."""
    return uniforms(key, encode_site(sites), slot)
