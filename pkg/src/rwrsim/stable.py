"""Strictly stable laws and the lattice laws attracted to them.

The parameterization is fixed throughout the package: a law with index ``b``,
scale ``s`` and skewness ``v`` has characteristic function

    E exp(iuX) = exp(-s**b * |u|**b * (1 - i*v*tan(pi*b/2)*sgn(u))).

Note the index-2 convention this implies: the Gaussian member has variance
``2*s**2``, not ``s**2``.  Sampling is exact in law: Chambers-Mallows-Stuck
for index < 2, a plain Gaussian draw for index 2.

The module also provides the two increment families used to drive walks and
sceneries from inside the attraction domains: symmetric +-1 steps and
two-sided discrete/continuous Pareto laws, each exposing the stable law its
normalized sums converge to.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import quad
from scipy.special import gamma as _gamma
from scipy.special import ndtri
from scipy.special import zeta as _zeta

__all__ = [
    "StableLaw",
    "WalkIncrementLaw",
    "SceneryLaw",
    "stable_cf",
    "sample_stable",
    "stable_from_uniforms",
    "sample_walk_increment",
    "sample_walk_increments",
    "sample_scenery_value",
    "sample_scenery_values",
    "scenery_values_from_uniforms",
    "sine_tail_integral",
    "sine_tail_integral_closed",
    "sup_tail_constant",
]


@dataclass(frozen=True)
class StableLaw:
    """Parameter triple (index, scale, skewness) of a strictly stable law."""

    index: float
    scale: float
    skewness: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.index <= 2.0:
            raise ValueError(f"index must lie in (0, 2], got {self.index}")
        if not self.scale > 0.0:
            raise ValueError(f"scale must be positive, got {self.scale}")
        if not -1.0 <= self.skewness <= 1.0:
            raise ValueError(f"skewness must lie in [-1, 1], got {self.skewness}")
        if self.index == 1.0 and self.skewness != 0.0:
            raise ValueError("index 1 requires skewness 0 (symmetric Cauchy only)")


def stable_cf(law: StableLaw, u):
    """Characteristic function of ``law`` at ``u`` (scalar or array)."""
    u = np.asarray(u, dtype=np.float64)
    b = law.index
    mag = (law.scale ** b) * np.abs(u) ** b
    if b == 2.0:
        # tan(pi) = 0: the skewness drops out
        out = np.exp(-mag) + 0.0j
    else:
        skew_term = law.skewness * math.tan(math.pi * b / 2.0) * np.sign(u)
        out = np.exp(-mag * (1.0 - 1j * skew_term))
    return out if out.ndim else complex(out)


def _cms(index: float, skewness: float, v, w):
    """Chambers-Mallows-Stuck transform of uniform angle ``v`` in
    (-pi/2, pi/2) and unit exponential ``w`` into a unit-scale stable draw."""
    if index == 1.0:
        # symmetric only (validated at construction)
        return np.tan(v)
    zeta = skewness * math.tan(math.pi * index / 2.0)
    b0 = math.atan(zeta) / index
    s0 = (1.0 + zeta * zeta) ** (1.0 / (2.0 * index))
    cos_v = np.cos(v)
    x = (
        s0
        * np.sin(index * (v + b0))
        / cos_v ** (1.0 / index)
        * (np.cos(v - index * (v + b0)) / w) ** ((1.0 - index) / index)
    )
    return x


def sample_stable(law: StableLaw, rng: np.random.Generator, size=None):
    """Draw from ``law`` using the caller-owned generator.

    Returns a float for ``size=None``, else an ndarray of that shape.
    """
    if law.index == 2.0:
        out = rng.normal(0.0, law.scale * math.sqrt(2.0), size=size)
    else:
        v = rng.uniform(-math.pi / 2.0, math.pi / 2.0, size=size)
        w = rng.standard_exponential(size=size)
        out = law.scale * _cms(law.index, law.skewness, v, w)
    return float(out) if size is None else out


def stable_from_uniforms(law: StableLaw, u1, u2):
    """Deterministic map of two uniforms in (0, 1) to a draw from ``law``.

    This is the transform behind keyed (counter-based) sceneries; for a given
    law it is a pure function, so equal uniforms give bit-equal values.
    """
    u1 = np.asarray(u1, dtype=np.float64)
    if law.index == 2.0:
        return law.scale * math.sqrt(2.0) * ndtri(u1)
    v = math.pi * (u1 - 0.5)
    w = -np.log(np.asarray(u2, dtype=np.float64))
    return law.scale * _cms(law.index, law.skewness, v, w)


# ---------------------------------------------------------------------------
# The oscillatory tail integral int_0^inf x**(-b) sin(x) dx and its inverse,
# the constant governing the power tails of suprema of stable integrals.
# ---------------------------------------------------------------------------


def sine_tail_integral(beta: float, half_periods: int = 48) -> float:
    """int_0^inf x**(-beta) sin x dx by quadrature over half-periods.

    The cell [0, pi] carries the integrable singularity and is evaluated by
    the power series of sin; the remaining alternating cells are integrated
    with adaptive quadrature and the alternating series is accelerated by
    repeated averaging of partial sums.
    """
    if not 0.0 < beta < 2.0:
        raise ValueError(f"beta must lie in (0, 2), got {beta}")
    # singular cell: int_0^pi x^(1-beta) * sum_m (-1)^m x^(2m) / (2m+1)! dx
    cell0 = 0.0
    term_sign = 1.0
    fact = 1.0
    for m in range(0, 40):
        if m > 0:
            fact *= (2 * m) * (2 * m + 1)
            term_sign = -term_sign
        p = 2 * m + 2 - beta
        t = term_sign * math.pi ** p / (fact * p)
        cell0 += t
        if abs(t) < 1e-18 * abs(cell0):
            break
    cells = [cell0]
    for k in range(1, half_periods):
        a, b = k * math.pi, (k + 1) * math.pi
        val, _ = quad(lambda x: x ** (-beta) * math.sin(x), a, b,
                      epsabs=1e-15, epsrel=1e-13, limit=200)
        cells.append(val)
    partial = np.cumsum(cells)
    # Euler-style acceleration of the alternating tail
    while partial.size > 1:
        partial = 0.5 * (partial[1:] + partial[:-1])
    return float(partial[0])


def sine_tail_integral_closed(beta: float) -> float:
    """Closed form of the same integral, pi / (2 * Gamma(beta) * sin(pi*beta/2)).

    This is the reflection of Gamma(1-beta) * cos(pi*beta/2) and stays regular
    across beta = 1, where it equals pi/2.
    """
    if not 0.0 < beta < 2.0:
        raise ValueError(f"beta must lie in (0, 2), got {beta}")
    return math.pi / (2.0 * _gamma(beta) * math.sin(math.pi * beta / 2.0))


def sup_tail_constant(beta: float, method: str = "quadrature") -> float:
    """Reciprocal of the sine tail integral (the supremum-tail constant)."""
    if method == "quadrature":
        return 1.0 / sine_tail_integral(beta)
    if method == "closed":
        return 1.0 / sine_tail_integral_closed(beta)
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# Walk increments
# ---------------------------------------------------------------------------

_ALIAS_CAP = 1 << 16
_TAIL_TARGET = 1e-12


@lru_cache(maxsize=32)
def _pareto_tables(index: float):
    """Signed alias table for the step law p(+-k) ~ k**(-index-1), k >= 1.

    Outcome 0 is the residual tail (mass < 1e-12 uncapped, or the exact
    Hurwitz-zeta tail at the size cap); outcomes 1..K are +k and K+1..2K are
    -k.  Tail magnitudes are drawn by inverse power law (bisection on the
    discrete survival function), so the overall law is exact up to float
    rounding whatever the table size.
    """
    z = float(_zeta(index + 1.0))
    k_cut = int(math.ceil((1.0 / (_TAIL_TARGET * index * z)) ** (1.0 / index)))
    k_cut = min(k_cut, _ALIAS_CAP)
    ks = np.arange(1, k_cut + 1, dtype=np.float64)
    half = ks ** (-index - 1.0) / (2.0 * z)
    tail_mass = float(_zeta(index + 1.0, k_cut + 1)) / z
    full = np.concatenate([[tail_mass], half, half])
    full /= full.sum()
    n = full.size
    scaled = full * n
    alias = np.zeros(n, dtype=np.int64)
    cut = np.ones(n, dtype=np.float64)
    order = np.argsort(scaled)
    small = [i for i in order.tolist() if scaled[i] < 1.0]
    large = [i for i in order.tolist() if scaled[i] >= 1.0]
    while small and large:
        s = small.pop()
        l = large.pop()
        cut[s] = scaled[s]
        alias[s] = l
        scaled[l] -= 1.0 - scaled[s]
        (small if scaled[l] < 1.0 else large).append(l)
    for i in small + large:
        cut[i] = 1.0
        alias[i] = i
    return k_cut, z, cut, alias


def _pareto_tail_magnitudes(index: float, k_cut: int, z: float,
                            u: np.ndarray) -> np.ndarray:
    """Exact inverse-CDF magnitudes conditioned on magnitude > k_cut."""
    s_cut = float(_zeta(index + 1.0, k_cut + 1))
    out = np.empty(u.size, dtype=np.int64)
    for i, ui in enumerate(u):
        target = ui * s_cut
        lo = k_cut  # S(lo) > target
        hi = max(2 * k_cut, 4)
        while float(_zeta(index + 1.0, hi + 1)) > target:
            lo, hi = hi, 2 * hi
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if float(_zeta(index + 1.0, mid + 1)) > target:
                lo = mid
            else:
                hi = mid
        out[i] = hi
    return out


@dataclass(frozen=True)
class WalkIncrementLaw:
    """Integer step law in the attraction domain of an index-``index`` law.

    ``simple`` is the +-1 walk (index 2); ``pareto`` puts mass proportional
    to |k|**(-index-1) on k = +-1, +-2, ... and requires index in (1, 2).
    """

    kind: str
    index: float

    def __post_init__(self):
        if self.kind == "simple":
            if self.index != 2.0:
                raise ValueError("simple symmetric steps have index 2")
        elif self.kind == "pareto":
            if not 1.0 < self.index < 2.0:
                raise ValueError(
                    f"pareto steps need index in (1, 2), got {self.index}")
        else:
            raise ValueError(f"unknown walk increment kind {self.kind!r}")

    @classmethod
    def simple_symmetric(cls) -> "WalkIncrementLaw":
        return cls("simple", 2.0)

    @classmethod
    def discrete_pareto(cls, index: float) -> "WalkIncrementLaw":
        return cls("pareto", float(index))

    @property
    def mass_norm(self) -> float:
        """Normalizer c with P(X = +-k) = c * k**(-index-1)."""
        if self.kind != "pareto":
            raise ValueError("mass_norm is defined for pareto steps only")
        return 1.0 / (2.0 * float(_zeta(self.index + 1.0)))

    def pmf(self, k) -> np.ndarray:
        """Probability mass at integer step(s) ``k``."""
        mag = np.abs(np.asarray(k)).astype(np.float64)
        if self.kind == "simple":
            return np.where(mag == 1.0, 0.5, 0.0)
        out = np.zeros_like(mag)
        on = mag >= 1.0
        out[on] = self.mass_norm * mag[on] ** (-self.index - 1.0)
        return out

    @property
    def limit_law(self) -> StableLaw:
        """Stable law of n**(-1/index) * S_n for sums S_n of these steps."""
        a = self.index
        if self.kind == "simple":
            # unit variance; exp(-u**2/2) means scale**2 = 1/2
            return StableLaw(2.0, math.sqrt(0.5), 0.0)
        chi = ((2.0 * self.mass_norm / a) * sine_tail_integral_closed(a)) ** (1.0 / a)
        return StableLaw(a, chi, 0.0)


def sample_walk_increments(law: WalkIncrementLaw, rng: np.random.Generator,
                           size) -> np.ndarray:
    """Vectorized i.i.d. steps from ``law``."""
    if law.kind == "simple":
        return rng.integers(0, 2, size=size, dtype=np.int64) * 2 - 1
    k_cut, z, cut, alias = _pareto_tables(law.index)
    n_out = cut.size
    flat = int(np.prod(size)) if not np.isscalar(size) else int(size)
    x = rng.random(flat)
    x *= n_out
    j = x.astype(np.int64)
    idx = np.where((x - j) < cut[j], j, alias[j])
    steps = np.where(idx <= k_cut, idx, k_cut - idx)
    tail = idx == 0
    if tail.any():
        n_tail = int(tail.sum())
        mags = _pareto_tail_magnitudes(law.index, k_cut, z, rng.random(n_tail))
        signs = rng.integers(0, 2, size=n_tail, dtype=np.int64) * 2 - 1
        steps[tail] = signs * mags
    return steps.reshape(size)


def sample_walk_increment(law: WalkIncrementLaw, rng: np.random.Generator) -> int:
    """One i.i.d. step from ``law``."""
    return int(sample_walk_increments(law, rng, 1)[0])


# ---------------------------------------------------------------------------
# Scenery values
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SceneryLaw:
    """Law of one scenery value.

    ``stable`` draws exactly from ``stable_params``; ``pareto`` is two-sided
    continuous Pareto with survival a_plus * u**(-index) on the right and
    a_minus * u**(-index) on the left, centered to mean zero when index > 1;
    ``zero`` is the degenerate all-zero law kept as a test fixture.
    """

    kind: str
    stable_params: StableLaw | None = None
    index: float = 0.0
    a_plus: float = 0.0
    a_minus: float = 0.0

    def __post_init__(self):
        if self.kind == "stable":
            if self.stable_params is None:
                raise ValueError("stable scenery needs stable_params")
        elif self.kind == "pareto":
            if not 0.0 < self.index < 2.0:
                raise ValueError(
                    f"pareto scenery needs index in (0, 2), got {self.index}")
            if self.a_plus < 0.0 or self.a_minus < 0.0 or self.a_plus + self.a_minus <= 0.0:
                raise ValueError("tail constants must be >= 0 with positive sum")
            if self.index == 1.0 and self.a_plus != self.a_minus:
                raise ValueError("index 1 requires symmetric tails (a_plus == a_minus)")
        elif self.kind != "zero":
            raise ValueError(f"unknown scenery kind {self.kind!r}")

    @classmethod
    def exact_stable(cls, index: float, scale: float, skewness: float = 0.0):
        return cls("stable", stable_params=StableLaw(index, scale, skewness))

    @classmethod
    def two_sided_pareto(cls, index: float, a_plus: float, a_minus: float):
        return cls("pareto", index=float(index), a_plus=float(a_plus),
                   a_minus=float(a_minus))

    @classmethod
    def degenerate_zero(cls):
        return cls("zero")

    @property
    def _pareto_floor(self) -> float:
        # magnitude support starts where the stated survival reaches one
        return (self.a_plus + self.a_minus) ** (1.0 / self.index)

    @property
    def _pareto_mean(self) -> float:
        """Mean of the uncentered two-sided Pareto (index > 1 only)."""
        b = self.index
        total = self.a_plus + self.a_minus
        p_pos = self.a_plus / total
        return self._pareto_floor * b / (b - 1.0) * (2.0 * p_pos - 1.0)

    @property
    def limit_law(self) -> StableLaw:
        """Stable law attracting n**(-1/index) * (xi_0 + ... + xi_n)."""
        if self.kind == "stable":
            return self.stable_params
        if self.kind == "zero":
            raise ValueError("the zero scenery has no stable limit law")
        b = self.index
        total = self.a_plus + self.a_minus
        sigma = (total * sine_tail_integral_closed(b)) ** (1.0 / b)
        nu = (self.a_plus - self.a_minus) / total
        return StableLaw(b, sigma, nu)


def scenery_values_from_uniforms(law: SceneryLaw, u1, u2) -> np.ndarray:
    """Deterministic map of uniform pairs in (0, 1) to scenery values."""
    u1 = np.asarray(u1, dtype=np.float64)
    u2 = np.asarray(u2, dtype=np.float64)
    if law.kind == "zero":
        return np.zeros_like(u1)
    if law.kind == "stable":
        return stable_from_uniforms(law.stable_params, u1, u2)
    b = law.index
    total = law.a_plus + law.a_minus
    mags = law._pareto_floor * u1 ** (-1.0 / b)
    signs = np.where(u2 * total < law.a_plus, 1.0, -1.0)
    vals = signs * mags
    if b > 1.0:
        vals = vals - law._pareto_mean
    return vals


def sample_scenery_values(law: SceneryLaw, rng: np.random.Generator,
                          size) -> np.ndarray:
    """Vectorized i.i.d. scenery values from the caller-owned generator."""
    if law.kind == "stable":
        out = sample_stable(law.stable_params, rng, size=size)
        return np.asarray(out)
    u1 = rng.random(size)
    u2 = rng.random(size)
    # rng.random covers [0, 1); shift off 0 where the transform needs (0, 1)
    u1 = np.maximum(u1, 1e-300)
    return scenery_values_from_uniforms(law, u1, u2)


def sample_scenery_value(law: SceneryLaw, rng: np.random.Generator) -> float:
    """One i.i.d. scenery value."""
    return float(sample_scenery_values(law, rng, 1)[0])
