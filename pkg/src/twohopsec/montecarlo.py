"""Monte Carlo estimation of outage probabilities and relay load balance.

Trials are vectorized in fixed-size batches.  Batch ``b`` draws everything
it needs, in a documented order, from its own RNG stream
``PCG64(SeedSequence(seed, spawn_key=(b,)))``; trial ``t`` lives in batch
``t // batch_size``.  Because the batch layout is independent of the worker
count and the reduction is pure counting, a run is reproducible bit-for-bit
for a given (params, trials, seed, batch_size) no matter how it is
parallelized.

Per-batch draw order (distance-dependent case; the equal-path-loss case
skips the position draws): relay positions, eavesdropper positions, gains
source->relays, gains destination->relays, the relay-selection uniform,
gains relays->selected relay, gains source->eavesdroppers, gains
relays->eavesdroppers.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .model import ConfigurationError, ProtocolParams
from .reports import BoundReport

__all__ = [
    "BATCH_SIZE",
    "EstimateReport",
    "ComparisonRow",
    "estimate",
    "load_balance",
    "wilson_interval",
    "compare",
]

BATCH_SIZE = 4096
_Z95 = 1.959963984540054


@dataclass(frozen=True, eq=False)
class EstimateReport:
    """Monte Carlo estimates with confidence intervals and load-balance metrics.

    ``jain_index`` / ``norm_entropy`` describe the selection histogram
    accumulated over all trials.  Because every trial redraws an independent
    network, relays are exchangeable and that histogram tends to uniform for
    any candidate-set size; the per-trial concentration that the candidate
    set actually controls shows up in ``conditional_jain`` /
    ``conditional_entropy``, the mean load-balance of the within-trial
    selection law (uniform over the candidate set, Jain index c/n).
    """

    params: ProtocolParams
    seed: int
    trials: int
    p_t_hat: float
    p_s_hat: float
    ci_t: tuple
    ci_s: tuple
    selection_histogram: np.ndarray
    jain_index: float
    norm_entropy: float
    no_candidate_rate: float
    conditional_jain: float
    conditional_entropy: float


@dataclass(frozen=True)
class ComparisonRow:
    """Bound-vs-simulation verdicts: estimate <= bound + 3*SE per metric."""

    t_pass: bool
    t_slack: float
    s_pass: bool
    s_slack: float

    @property
    def passed(self) -> bool:
        return self.t_pass and self.s_pass


def wilson_interval(successes: int, trials: int, z: float = _Z95) -> tuple:
    """Wilson score interval for a binomial proportion."""
    if trials < 1:
        raise ValueError("trials must be positive")
    p = successes / trials
    zz = z * z / trials
    center = (p + zz / 2.0) / (1.0 + zz)
    half = (z / (1.0 + zz)) * math.sqrt(p * (1.0 - p) / trials + zz / (4.0 * trials))
    return (max(0.0, center - half), min(1.0, center + half))


def load_balance(selection_histogram) -> tuple:
    """(Jain fairness index, normalized entropy) of relay selection counts.

    Jain = (sum f)^2 / (N * sum f^2) over all N relays; entropy is
    normalized by log N (defined as 1.0 for a single relay).  An all-zero
    histogram has no defined balance and yields (nan, nan).
    """
    f = np.asarray(selection_histogram, dtype=float)
    if f.size == 0:
        raise ValueError("histogram must be nonempty")
    total = float(f.sum())
    if total == 0:
        return (math.nan, math.nan)
    jain = total * total / (f.size * float(np.dot(f, f)))
    if f.size == 1:
        return (jain, 1.0)
    p = f[f > 0] / total
    entropy = float(-(p * np.log(p)).sum()) / math.log(f.size)
    return (jain, entropy)


def _batch_rng(seed: int, batch_index: int) -> np.random.Generator:
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(entropy=seed, spawn_key=(batch_index,)))
    )


def _run_batch(task) -> tuple:
    """Simulate one batch.

    Returns (t_outages, s_outages, no_candidate, histogram,
    sum of candidate counts, sum of log candidate counts), the last two over
    trials that selected a relay.
    """
    params, seed, batch_index, size = task
    n, m, k = params.n, params.m, params.k
    if n == 0:
        return size, 0, size, np.zeros(0, dtype=np.int64), 0, 0.0
    rng = _batch_rng(seed, batch_index)
    general = params.is_general
    alpha, delta, es, n0 = params.alpha, params.delta, params.es, params.n0
    idx = np.arange(size)

    def pl(d):
        return np.maximum(d, delta) ** (-alpha)

    if general:
        rel = rng.uniform(-0.5, 0.5, size=(size, n, 2))
        eav = rng.uniform(-0.5, 0.5, size=(size, m, 2)) if m else None
    g_sr = rng.standard_exponential((size, n))
    g_dr = rng.standard_exponential((size, n))
    pick_u = rng.random(size)
    g_rr = rng.standard_exponential((size, n))
    if m:
        g_se = rng.standard_exponential((size, m))
        g_re = rng.standard_exponential((size, n, m))

    # Candidate selection: best bottleneck gains inside the region.
    w = np.minimum(g_sr, g_dr)
    if general:
        in_region = np.hypot(rel[:, :, 0], rel[:, :, 1]) <= params.r
        region_count = in_region.sum(axis=1)
        w_eff = np.where(in_region, w, -np.inf)
    else:
        region_count = np.full(size, n)
        w_eff = w
    order = np.argsort(-w_eff, axis=1, kind="stable")
    c = np.minimum(k, region_count)
    no_cand = c == 0
    c_safe = np.maximum(c, 1)
    pick = np.minimum((pick_u * c_safe).astype(np.int64), c_safe - 1)
    jstar = order[idx, pick]

    # Jammer memberships: gain toward the hop's legitimate receiver below tau.
    mask1 = g_rr < params.tau
    mask1[idx, jstar] = False
    mask2 = g_dr < params.tau
    mask2[idx, jstar] = False

    if general:
        star_pos = rel[idx, jstar]
        d_rr = np.hypot(rel[:, :, 0] - star_pos[:, None, 0], rel[:, :, 1] - star_pos[:, None, 1])
        d_rd = np.hypot(rel[:, :, 0] - 0.5, rel[:, :, 1])
        d_sr = np.hypot(star_pos[:, 0] + 0.5, star_pos[:, 1])
        pl_rr, pl_rd = pl(d_rr), pl(d_rd)
        sig1 = es * g_sr[idx, jstar] * pl(d_sr)
        sig2 = es * g_dr[idx, jstar] * pl_rd[idx, jstar]
    else:
        pl_unit = max(1.0, delta) ** (-alpha)
        pl_rr = pl_rd = pl_unit
        sig1 = es * g_sr[idx, jstar] * pl_unit
        sig2 = es * g_dr[idx, jstar] * pl_unit

    noise = n0 / 2.0
    intf1 = es * np.sum(mask1 * g_rr * pl_rr, axis=1)
    intf2 = es * np.sum(mask2 * g_dr * pl_rd, axis=1)
    t_out = no_cand | (sig1 / (intf1 + noise) < params.gamma_r) | (
        sig2 / (intf2 + noise) < params.gamma_r
    )

    if m:
        if general:
            d_se = np.hypot(eav[:, :, 0] + 0.5, eav[:, :, 1])
            d_re = np.hypot(
                rel[:, :, None, 0] - eav[:, None, :, 0],
                rel[:, :, None, 1] - eav[:, None, :, 1],
            )
            pl_re = pl(d_re)
            sig_e1 = es * g_se * pl(d_se)
            sig_e2 = es * g_re[idx, jstar, :] * pl_re[idx, jstar, :]
        else:
            pl_re = pl_unit
            sig_e1 = es * g_se * pl_unit
            sig_e2 = es * g_re[idx, jstar, :] * pl_unit
        weighted = g_re * pl_re
        intf_e1 = es * np.einsum("bn,bnm->bm", mask1.astype(float), weighted)
        intf_e2 = es * np.einsum("bn,bnm->bm", mask2.astype(float), weighted)
        succ1 = sig_e1 / (intf_e1 + noise) >= params.gamma_e
        succ2 = sig_e2 / (intf_e2 + noise) >= params.gamma_e
        if general:
            succ1 |= d_se < params.d0
            succ2 |= d_re[idx, jstar, :] < params.d0
        s_out = np.any(succ1 | succ2, axis=1) & ~no_cand
        s_count = int(s_out.sum())
    else:
        s_count = 0

    selected = ~no_cand
    hist = np.bincount(jstar[selected], minlength=n).astype(np.int64)
    c_sel = c[selected]
    return (
        int(t_out.sum()),
        s_count,
        int(no_cand.sum()),
        hist,
        int(c_sel.sum()),
        float(np.log(c_sel).sum()),
    )


def estimate(
    params: ProtocolParams,
    trials: int,
    seed: int,
    workers: int = 1,
    batch_size: int = BATCH_SIZE,
) -> EstimateReport:
    """Estimate outage probabilities over ``trials`` independent protocol runs.

    Outage frequencies get Wilson 95% intervals; trials with an empty
    candidate set count as transmission outages and are also reported
    separately.  Reproducible for fixed (params, trials, seed, batch_size)
    regardless of ``workers``.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if seed < 0:
        raise ValueError("seed must be a nonnegative integer")
    if params.n0 == 0:
        raise ConfigurationError(
            "estimate requires n0 > 0: the jammer set is empty with positive probability"
        )
    n_batches = (trials + batch_size - 1) // batch_size
    tasks = [
        (params, seed, b, min(batch_size, trials - b * batch_size))
        for b in range(n_batches)
    ]
    if workers > 1 and n_batches > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_batch, tasks))
    else:
        results = [_run_batch(t) for t in tasks]

    t_count = sum(r[0] for r in results)
    s_count = sum(r[1] for r in results)
    nc_count = sum(r[2] for r in results)
    c_sum = sum(r[4] for r in results)
    log_c_sum = sum(r[5] for r in results)
    hist = np.zeros(params.n, dtype=np.int64)
    for r in results:
        hist += r[3]

    jain, entropy = load_balance(hist) if params.n else (math.nan, math.nan)
    n_selected = trials - nc_count
    if n_selected == 0:
        cond_jain = cond_entropy = math.nan
    else:
        cond_jain = c_sum / (params.n * n_selected)
        cond_entropy = (
            1.0 if params.n == 1 else (log_c_sum / n_selected) / math.log(params.n)
        )
    return EstimateReport(
        params=params,
        seed=seed,
        trials=trials,
        p_t_hat=t_count / trials,
        p_s_hat=s_count / trials,
        ci_t=wilson_interval(t_count, trials),
        ci_s=wilson_interval(s_count, trials),
        selection_histogram=hist,
        jain_index=jain,
        norm_entropy=entropy,
        no_candidate_rate=nc_count / trials,
        conditional_jain=cond_jain,
        conditional_entropy=cond_entropy,
    )


def _standard_error(ci: tuple) -> float:
    return (ci[1] - ci[0]) / (2.0 * _Z95)


def compare(estimates: EstimateReport, bounds: BoundReport) -> ComparisonRow:
    """Check estimate <= bound + 3*SE for both outage metrics.

    The SE is derived from the Wilson interval width so it stays positive
    at empirical frequencies of exactly 0 or 1.  A saturated secrecy bound
    compares as the trivial bound 1.
    """
    if estimates.params != bounds.params:
        raise ValueError("estimate and bound reports describe different parameter sets")
    se_t = _standard_error(estimates.ci_t)
    se_s = _standard_error(estimates.ci_s)
    t_slack = bounds.bound_t + 3.0 * se_t - estimates.p_t_hat
    s_slack = bounds.bound_s.effective + 3.0 * se_s - estimates.p_s_hat
    return ComparisonRow(
        t_pass=t_slack >= 0.0,
        t_slack=t_slack,
        s_pass=s_slack >= 0.0,
        s_slack=s_slack,
    )
