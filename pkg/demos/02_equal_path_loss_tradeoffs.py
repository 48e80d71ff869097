#!/usr/bin/env python3
"""Equal-path-loss scenario: closed-form bounds, the tau window, and simulation.

With all node pairs at unit distance the protocol admits closed-form outage
bounds driven by the jamming threshold tau.  This script evaluates them for a
small network, derives the admissible tau window and the tolerable
eavesdropper count, and then cross-checks the bounds against Monte Carlo at
several thresholds.  It finishes with the load-balance/reliability tradeoff
in the candidate-set size k.
"""

import math

from twohopsec.bounds_equal import (
    max_eaves_equal,
    secrecy_bound_equal,
    secrecy_bound_equal_binomial_jammers,
    tau_max_equal,
    tau_min_equal,
    transmission_bound_equal,
    transmission_bound_equal_binomial_jammers,
)
from twohopsec.model import Case, ProtocolParams
from twohopsec.montecarlo import estimate

N, K, M = 5, 1, 1
GAMMA_R, GAMMA_E = 1.0, math.e - 1
EPS_T = EPS_S = 0.19

print(f"scenario: n={N} relays, m={M} eavesdropper, k={K}, "
      f"gamma_r={GAMMA_R}, gamma_e={GAMMA_E:.5f}")

tau_hi = tau_max_equal(N, K, GAMMA_R, EPS_T)
tau_lo = tau_min_equal(N, M, GAMMA_E, EPS_S)
tol = max_eaves_equal(N, K, GAMMA_R, GAMMA_E, EPS_T, EPS_S)
print(f"\nreliability cap:   tau <= {tau_hi:.6f}   (transmission outage <= {EPS_T})")
print(f"secrecy floor:     tau >= {tau_lo:.6f}   (secrecy outage <= {EPS_S})")
print("window feasible:  ", tau_lo <= tau_hi)
print(f"tolerable eavesdroppers: {tol.bound:.4f} (floor {tol.count})")
print("The window is empty here: one eavesdropper needs more jamming than the")
print("reliability target allows, matching the fractional tolerance above.")

print("\n=== bounds vs Monte Carlo (1e5 trials per row) ===")
print(f"  {'tau':>6} {'p_t_hat':>9} {'bound':>9} {'jam binomial':>12}"
      f"  {'p_s_hat':>9} {'bound':>9} {'jam binomial':>12}")
for tau in (0.05, 0.1, 0.3, 0.857):
    p = ProtocolParams(n=N, m=M, k=K, r=math.inf, tau=tau, gamma_r=GAMMA_R,
                       gamma_e=GAMMA_E, case=Case.EQUAL_PATH_LOSS)
    rep = estimate(p, 100_000, seed=11)
    bt = transmission_bound_equal(N, K, GAMMA_R, tau)
    bt2 = transmission_bound_equal_binomial_jammers(N, K, GAMMA_R, tau)
    bs = secrecy_bound_equal(N, M, GAMMA_E, tau)
    bs2 = secrecy_bound_equal_binomial_jammers(N, M, GAMMA_E, tau)
    print(f"  {tau:>6.3f} {rep.p_t_hat:>9.5f} {bt:>9.5f} {bt2:>12.5f}"
          f"  {rep.p_s_hat:>9.5f} {bs.effective:>9.5f} {bs2.effective:>12.5f}")
print("\nThe plain bounds substitute the MEAN jammer count; at small tau the")
print("simulation can exceed them.  The variant that keeps the jammer count")
print("binomial (last column of each block) stays above the estimates.")

print("\n=== candidate-set size: load balance vs reliability ===")
print(f"  {'k':>3} {'p_t_hat':>9} {'within-trial Jain':>18} {'histogram Jain':>15}")
for k in (1, 3, 5):
    p = ProtocolParams(n=N, m=0, k=k, r=math.inf, tau=0.8, gamma_r=1.0,
                       gamma_e=1.0, case=Case.EQUAL_PATH_LOSS)
    rep = estimate(p, 100_000, seed=5)
    print(f"  {k:>3} {rep.p_t_hat:>9.4f} {rep.conditional_jain:>18.3f} "
          f"{rep.jain_index:>15.4f}")
print("\nLarger k spreads each transmission over more relays (within-trial Jain")
print("= k/n) at the price of reliability; the across-trials histogram stays")
print("uniform for every k because each trial redraws an independent network.")
