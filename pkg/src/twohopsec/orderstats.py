"""Order-statistic distributions of bottleneck relay channel gains.

Every distribution here derives from one parent: the bottleneck gain of a
relay toward the two endpoints, ``min(|h_S|^2, |h_D|^2)`` with unit-mean
exponential components, which is itself exponential with rate 2.  On top of
that parent we provide the j-th largest gain among ``n`` relays and the gain
of a relay drawn uniformly from the ``k`` best of ``n`` (the quantity that
drives the relay-selection analysis), plus brute-force sampling oracles so
the closed forms can be cross-checked empirically.

All CDF/PDF evaluators broadcast over ``x`` and accept scalars or arrays.
Binomial coefficients are taken in log space so the rank sums stay finite
for relay counts up to the thousands.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

__all__ = [
    "GainKind",
    "GainDistribution",
    "min_pair_cdf",
    "min_pair_pdf",
    "kth_largest_cdf",
    "kth_largest_pdf",
    "topk_random_cdf",
    "topk_random_pdf",
    "mixture_cdf",
    "sample_min_pair",
    "sample_kth_largest",
    "sample_topk_random",
]


def _validate_x(x):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("gain argument must be finite")
    return arr


def _validate_rank(value: int, n: int, name: str) -> None:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if not isinstance(value, (int, np.integer)):
        raise ValueError(f"{name} must be an integer, got {value!r}")
    if not 1 <= value <= n:
        raise ValueError(f"{name} must satisfy 1 <= {name} <= n, got {name}={value}, n={n}")


def _maybe_scalar(arr: np.ndarray, scalar: bool):
    return float(arr) if scalar else arr


def min_pair_cdf(x):
    """CDF of the bottleneck gain min of two unit-mean exponentials: 1 - e^{-2x}."""
    arr = _validate_x(x)
    out = np.where(arr > 0.0, -np.expm1(-2.0 * arr), 0.0)
    return _maybe_scalar(out, np.isscalar(x))


def min_pair_pdf(x):
    """Density of the bottleneck gain, 2 e^{-2x} on x > 0."""
    arr = _validate_x(x)
    out = np.where(arr >= 0.0, 2.0 * np.exp(-2.0 * arr), 0.0)
    return _maybe_scalar(out, np.isscalar(x))


def _binom_tail(x: np.ndarray, lo: int, n: int) -> np.ndarray:
    """P(Binomial(n, 1 - e^{-2x}) >= lo) with log-space terms.

    Exploits log(1-p) = -2x exactly.  Terms are nonnegative, so a plain
    float64 reduction over at most n+1 terms keeps relative error ~ n*eps.
    """
    if lo <= 0:
        return np.ones_like(x)
    if lo > n:
        return np.zeros_like(x)
    with np.errstate(divide="ignore"):
        log_p = np.log(-np.expm1(-2.0 * x))  # -inf at x = 0 is fine: exp -> 0
    i = np.arange(lo, n + 1)
    log_c = gammaln(n + 1) - gammaln(i + 1) - gammaln(n - i + 1)
    shape = (i.size,) + (1,) * x.ndim
    log_terms = (
        log_c.reshape(shape)
        + i.reshape(shape) * log_p[np.newaxis, ...]
        + (n - i).reshape(shape) * (-2.0 * x)[np.newaxis, ...]
    )
    return np.add.reduce(np.exp(log_terms), axis=0)


def kth_largest_cdf(x, j: int, n: int):
    """CDF of the j-th largest of n independent bottleneck gains.

    Equals the binomial tail sum_{i=n-j+1}^{n} C(n,i) (1-e^{-2x})^i e^{-2x(n-i)};
    for j = n it collapses to the minimum, 1 - e^{-2nx}.
    """
    _validate_rank(j, n, "j")
    arr = _validate_x(x)
    out = np.where(arr > 0.0, _binom_tail(np.maximum(arr, 0.0), n - j + 1, n), 0.0)
    return _maybe_scalar(out, np.isscalar(x))


def kth_largest_pdf(x, j: int, n: int):
    """Density of the j-th largest of n bottleneck gains.

    n!/((j-1)!(n-j)!) (1-e^{-2x})^{n-j} (e^{-2x})^{j-1} * 2e^{-2x}; the value
    at x = 0 is the right-sided limit (2n for j = n, else 0).
    """
    _validate_rank(j, n, "j")
    arr = _validate_x(x)
    log_coeff = gammaln(n + 1) - gammaln(j) - gammaln(n - j + 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        log_p = np.log(-np.expm1(-2.0 * arr))
        log_pdf = log_coeff + (n - j) * log_p + (j - 1) * (-2.0 * arr) + math.log(2.0) - 2.0 * arr
        vals = np.exp(log_pdf)
    if n > j:
        vals = np.where(arr == 0.0, 0.0, vals)
    else:
        vals = np.where(arr == 0.0, 2.0 * n, vals)
    out = np.where(arr >= 0.0, vals, 0.0)
    return _maybe_scalar(out, np.isscalar(x))


def topk_random_cdf(x, k: int, n: int):
    """CDF of the gain of a relay selected uniformly among the k largest of n.

    The uniform selection makes this the rank mixture (1/k) sum_{j=1}^{k} of
    the j-th-largest CDFs; k = 1 recovers the maximum, k = n the parent.
    """
    _validate_rank(k, n, "k")
    arr = _validate_x(x)
    pos = np.maximum(arr, 0.0)
    acc = np.zeros_like(pos)
    for j in range(1, k + 1):
        acc += _binom_tail(pos, n - j + 1, n)
    out = np.where(arr > 0.0, acc / k, 0.0)
    return _maybe_scalar(out, np.isscalar(x))


def topk_random_pdf(x, k: int, n: int):
    """Density matching ``topk_random_cdf``: the rank mixture of order-statistic densities."""
    _validate_rank(k, n, "k")
    arr = _validate_x(x)
    acc = np.zeros_like(arr, dtype=float)
    for j in range(1, k + 1):
        acc = acc + np.asarray(kth_largest_pdf(arr, j, n), dtype=float)
    out = acc / k
    return _maybe_scalar(out, np.isscalar(x))


def mixture_cdf(component_cdfs, x):
    """CDF of a variable selected uniformly among components: the plain mean.

    ``component_cdfs`` is a nonempty sequence of callables evaluating each
    component CDF at ``x``.
    """
    cdfs = list(component_cdfs)
    if not cdfs:
        raise ValueError("mixture requires at least one component CDF")
    arr = _validate_x(x)
    acc = np.zeros_like(arr, dtype=float)
    for f in cdfs:
        acc = acc + np.asarray(f(arr), dtype=float)
    out = acc / len(cdfs)
    return _maybe_scalar(out, np.isscalar(x))


def sample_min_pair(rng: np.random.Generator, size=None):
    """Brute-force bottleneck-gain draws: elementwise min of two Exp(1) draws."""
    shape = () if size is None else (size,)
    draws = rng.standard_exponential(shape + (2,))
    out = draws.min(axis=-1)
    return float(out) if size is None else out


def sample_kth_largest(n: int, j: int, rng: np.random.Generator, size=None):
    """Brute-force draws of the j-th largest of n bottleneck gains."""
    _validate_rank(j, n, "j")
    b = 1 if size is None else size
    gains = rng.standard_exponential((b, n, 2)).min(axis=-1)
    gains.sort(axis=1)
    out = gains[:, n - j]
    return float(out[0]) if size is None else out


def sample_topk_random(n: int, k: int, rng: np.random.Generator, size=None):
    """Sampling oracle for the top-k uniform selection.

    Draws n independent bottleneck gains (each the min of two unit-mean
    exponentials), orders them descending with ties broken by draw index,
    then returns the gain of a uniformly chosen relay among the k largest.
    Gains are consumed from ``rng`` first, the selection index second.
    """
    _validate_rank(k, n, "k")
    b = 1 if size is None else size
    gains = rng.standard_exponential((b, n, 2)).min(axis=-1)
    order = np.argsort(-gains, axis=1, kind="stable")
    pick = rng.integers(0, k, size=b)
    out = gains[np.arange(b), order[np.arange(b), pick]]
    return float(out[0]) if size is None else out


class GainKind(enum.Enum):
    """Which member of the bottleneck-gain family a distribution describes."""

    MIN_PAIR = "min_pair"
    KTH_LARGEST = "kth_largest"
    TOPK_RANDOM = "topk_random"


@dataclass(frozen=True)
class GainDistribution:
    """One distribution from the bottleneck-gain family, with sampling oracle.

    ``j_or_k`` is the rank for KTH_LARGEST, the selection-set size for
    TOPK_RANDOM, and ignored (validated as 1 <= j_or_k <= n) for MIN_PAIR.
    """

    kind: GainKind
    n: int
    j_or_k: int = 1

    def __post_init__(self):
        _validate_rank(self.j_or_k, self.n, "j_or_k")

    def cdf(self, x):
        if self.kind is GainKind.MIN_PAIR:
            return min_pair_cdf(x)
        if self.kind is GainKind.KTH_LARGEST:
            return kth_largest_cdf(x, self.j_or_k, self.n)
        return topk_random_cdf(x, self.j_or_k, self.n)

    def pdf(self, x):
        if self.kind is GainKind.MIN_PAIR:
            return min_pair_pdf(x)
        if self.kind is GainKind.KTH_LARGEST:
            return kth_largest_pdf(x, self.j_or_k, self.n)
        return topk_random_pdf(x, self.j_or_k, self.n)

    def sample(self, rng: np.random.Generator, size=None):
        if self.kind is GainKind.MIN_PAIR:
            return sample_min_pair(rng, size)
        if self.kind is GainKind.KTH_LARGEST:
            return sample_kth_largest(self.n, self.j_or_k, rng, size)
        return sample_topk_random(self.n, self.j_or_k, rng, size)
