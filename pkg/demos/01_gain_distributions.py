#!/usr/bin/env python3
"""Walk through the relay-gain distribution family and validate it by sampling.

Every relay's usable channel quality is the weaker of its two endpoint links,
min(|h_S|^2, |h_D|^2): an exponential with rate 2.  The protocol cares about
order statistics of that gain across relays and, ultimately, about the gain of
a relay drawn uniformly from the k best.  This script evaluates the closed
forms and confronts each of them with brute-force sampling.
"""

import numpy as np
from scipy.stats import kstest

from twohopsec.orderstats import (
    kth_largest_cdf,
    min_pair_cdf,
    sample_kth_largest,
    sample_topk_random,
    topk_random_cdf,
)

rng = np.random.default_rng(2024)

print("=== bottleneck gain: min of two unit-mean exponentials ===")
for x in (0.1, 0.347, 1.0):
    print(f"  F(x={x:<5}) = {min_pair_cdf(x):.6f}")

print("\n=== j-th largest gain among n relays vs 1e5 brute-force draws ===")
print(f"  {'n':>3} {'j':>3} {'KS distance':>12}")
for n, j in ((3, 1), (5, 2), (8, 8)):
    draws = sample_kth_largest(n, j, rng, size=100_000)
    ks = kstest(draws, lambda x: kth_largest_cdf(x, j, n)).statistic
    print(f"  {n:>3} {j:>3} {ks:>12.4f}")

print("\n=== uniformly selected among the k best of n ===")
print("The selection CDF is the plain average of the top-k order-statistic")
print("CDFs; k = 1 is the maximum and k = n recovers the parent gain law.\n")
xs = np.array([0.2, 0.5, 1.0])
for n, k in ((5, 1), (5, 2), (5, 5)):
    vals = ", ".join(f"F({x}) = {float(topk_random_cdf(x, k, n)):.5f}" for x in xs)
    print(f"  n={n} k={k}:  {vals}")

print("\nk = n check: selection CDF minus parent CDF at x = 0.5 ->",
      f"{float(topk_random_cdf(0.5, 5, 5) - min_pair_cdf(0.5)):+.2e}")

draws = sample_topk_random(5, 2, rng, size=100_000)
ks = kstest(draws, lambda x: topk_random_cdf(x, 2, 5)).statistic
print(f"sampling oracle (n=5, k=2): KS distance over 1e5 draws = {ks:.4f}")
