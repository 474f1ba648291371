"""Estimators and test statistics shared by the verification checks."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SampleSet",
    "hill_estimator",
    "loglog_slope",
    "empirical_cf",
    "ks_distance",
    "ks_critical_value",
    "default_hill_k",
]


@dataclass(frozen=True)
class SampleSet:
    """A batch of real observations with a provenance label."""

    values: np.ndarray
    label: str = ""

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.ndim != 1 or vals.size == 0:
            raise ValueError("a sample set needs a non-empty 1-d value array")
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return self.values.size


def _values(samples) -> np.ndarray:
    if isinstance(samples, SampleSet):
        return samples.values
    vals = np.asarray(samples, dtype=np.float64)
    if vals.ndim != 1 or vals.size == 0:
        raise ValueError("estimators need a non-empty 1-d sample")
    return vals


def default_hill_k(n: int) -> int:
    """Default order-statistic count, ceil(n**0.6)."""
    return int(math.ceil(n ** 0.6))


def hill_estimator(samples, k: int) -> float:
    """Hill tail-index estimate from the top k order statistics.

    The reciprocal of the mean log excess of the k largest values over the
    (k+1)-th largest.  Samples must be positive; ties across the whole top
    of the sample make the estimate degenerate and raise.
    """
    x = _values(samples)
    n = x.size
    if not 2 <= k < n:
        raise ValueError(f"k must satisfy 2 <= k < {n}, got {k}")
    if (x <= 0.0).any():
        raise ValueError("hill_estimator needs strictly positive samples")
    top = np.sort(x)[-(k + 1):]
    mean_excess = float(np.mean(np.log(top[1:] / top[0])))
    if mean_excess <= 0.0:
        raise ValueError("degenerate sample: the top order statistics are tied")
    return 1.0 / mean_excess


def loglog_slope(pairs):
    """Least-squares slope of log(value) against log(n).

    ``pairs`` is a sequence of (n, value) with positive entries; returns
    (slope, standard_error).
    """
    pts = [(float(n), float(v)) for n, v in pairs]
    if len(pts) < 3:
        raise ValueError("need at least 3 (n, value) pairs")
    if any(n <= 0.0 or v <= 0.0 for n, v in pts):
        raise ValueError("log-log regression needs positive entries")
    x = np.log([n for n, _ in pts])
    y = np.log([v for _, v in pts])
    x_c = x - x.mean()
    sxx = float((x_c ** 2).sum())
    slope = float((x_c * y).sum() / sxx)
    resid = y - y.mean() - slope * x_c
    dof = len(pts) - 2
    se = math.sqrt(float((resid ** 2).sum()) / dof / sxx) if dof > 0 else 0.0
    return slope, se


def empirical_cf(samples, u: float):
    """Sample characteristic function at ``u`` with componentwise errors.

    Returns (value, se_real, se_imag); the value is the mean of exp(i u x).
    """
    x = _values(samples)
    z = np.exp(1j * u * x)
    n = x.size
    if n == 1:
        return complex(z[0]), 0.0, 0.0
    se_r = float(z.real.std(ddof=1) / math.sqrt(n))
    se_i = float(z.imag.std(ddof=1) / math.sqrt(n))
    return complex(z.mean()), se_r, se_i


def _kolmogorov_sf(y: float) -> float:
    """Asymptotic survival function of the two-sided statistic."""
    if y < 1.1e-16:
        return 1.0
    total = 0.0
    for j in range(1, 101):
        term = 2.0 * (-1.0) ** (j - 1) * math.exp(-2.0 * j * j * y * y)
        total += term
        if abs(term) < 1e-16:
            break
    return min(max(total, 0.0), 1.0)


def ks_distance(a, b):
    """Two-sample Kolmogorov-Smirnov distance and asymptotic p-value."""
    x = np.sort(_values(a))
    y = np.sort(_values(b))
    n1, n2 = x.size, y.size
    pooled = np.concatenate([x, y])
    cdf1 = np.searchsorted(x, pooled, side="right") / n1
    cdf2 = np.searchsorted(y, pooled, side="right") / n2
    d = float(np.abs(cdf1 - cdf2).max())
    en = math.sqrt(n1 * n2 / (n1 + n2))
    return d, _kolmogorov_sf(en * d)


def ks_critical_value(n1: int, n2: int, level: float = 0.01) -> float:
    """Asymptotic two-sample critical distance at the given level."""
    c = math.sqrt(-0.5 * math.log(level / 2.0))
    return c * math.sqrt((n1 + n2) / (n1 * n2))
