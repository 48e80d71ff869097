import math

import mpmath as mp
import numpy as np
import pytest

from twohopsec.bounds_general import (
    GeometryIntegrals,
    QuadratureError,
    channel_survival_base,
    disc_square_overlap,
    geometry_integrals,
    max_eaves_general,
    nu_coeffs,
    secrecy_bound_general,
    tau_max_general,
    tau_min_general,
    transmission_bound_general,
    transmission_bound_general_tight,
)

mp.mp.dps = 40

ALPHA, DELTA = 2.0, 0.05
GEO = geometry_integrals(ALPHA, DELTA)


def grid_integral(cx, cy, alpha, delta, cells):
    """Independent midpoint-rule oracle on a cells x cells grid."""
    xs = (np.arange(cells) + 0.5) / cells - 0.5
    total = 0.0
    for chunk in np.array_split(xs, 8):
        d = np.hypot(xs[None, :] - cx, chunk[:, None] - cy)
        total += float(np.sum(np.maximum(d, delta) ** (-alpha)))
    return total / (cells * cells)


class TestGeometryIntegrals:
    def test_clamp_always_binding_is_exact(self):
        geo = geometry_integrals(2.0, 1.5)
        expected = 1.5**-2
        for v in (geo.midpoint, geo.endpoint, geo.corner):
            assert v == pytest.approx(expected, rel=1e-12)

    def test_endpoint_smaller_than_midpoint(self):
        # half the singular neighbourhood around the edge midpoint lies
        # outside the square
        assert GEO.endpoint < GEO.midpoint

    def test_corner_smallest(self):
        assert GEO.corner < GEO.endpoint

    def test_against_grid_oracle(self):
        for alpha, delta in ((2.0, 0.05), (3.0, 0.1), (4.0, 0.02)):
            geo = geometry_integrals(alpha, delta)
            for value, center in (
                (geo.midpoint, (0.0, 0.0)),
                (geo.endpoint, (0.5, 0.0)),
                (geo.corner, (0.5, 0.5)),
            ):
                oracle = grid_integral(center[0], center[1], alpha, delta, 2048)
                assert value == pytest.approx(oracle, rel=2e-4)

    def test_resolution_doubling_stable(self):
        a = geometry_integrals(ALPHA, DELTA, resolution=8)
        b = geometry_integrals(ALPHA, DELTA, resolution=16)
        for x, y in ((a.midpoint, b.midpoint), (a.endpoint, b.endpoint), (a.corner, b.corner)):
            assert abs(x - y) <= 1e-4 * abs(y)

    def test_non_convergence_raises(self):
        with pytest.raises(QuadratureError):
            geometry_integrals(2.0, 0.0433, resolution=8, max_resolution=8)

    def test_validation(self):
        with pytest.raises(ValueError):
            geometry_integrals(1.5, 0.05)
        with pytest.raises(ValueError):
            geometry_integrals(2.0, 0.0)
        with pytest.raises(ValueError):
            GeometryIntegrals(midpoint=-1.0, endpoint=1.0, corner=1.0,
                              alpha=2.0, delta=0.05, resolution=8)


class TestDiscSquareOverlap:
    def test_small_radius_is_disc_area(self):
        assert disc_square_overlap(0.3) == pytest.approx(math.pi * 0.09, rel=1e-14)

    def test_covering_radius(self):
        assert disc_square_overlap(math.sqrt(0.5)) == pytest.approx(1.0, abs=1e-12)
        assert disc_square_overlap(5.0) == 1.0

    def test_intermediate_against_grid(self):
        for r in (0.55, 0.6, 0.65):
            cells = 4000
            xs = (np.arange(cells) + 0.5) / cells - 0.5
            inside = (xs[None, :] ** 2 + xs[:, None] ** 2) <= r * r
            frac = inside.mean()
            assert disc_square_overlap(r) == pytest.approx(frac, abs=2e-3)


class TestSurvivalBase:
    def test_no_jamming(self):
        assert channel_survival_base(5, 1.0, 0.0, 0.3, 2.0) == 1.0

    def test_single_relay(self):
        assert channel_survival_base(1, 1.0, 2.0, 0.3, 2.0) == 1.0

    def test_point_value(self):
        assert channel_survival_base(2, 1.0, 0.1, 0.5, 2.0) == pytest.approx(
            0.9905288780989431, rel=1e-13
        )

    def test_infinite_radius(self):
        assert channel_survival_base(5, 1.0, 0.5, math.inf, 2.0) == 0.0


class TestNuCoeffs:
    def test_zero_radius(self):
        assert nu_coeffs(4, 2, 0.0) == (0.0, 0.0)

    def test_k_equals_n_upper_sum_empty(self):
        nu1, nu2 = nu_coeffs(4, 4, 0.25)
        assert nu2 == 0.0

    def test_hand_binomial_arithmetic(self):
        r = math.sqrt(0.25 / math.pi)  # pi r^2 = 0.25
        nu1, nu2 = nu_coeffs(4, 2, r)
        assert nu1 == pytest.approx(2.53125, rel=1e-9)
        assert nu2 == pytest.approx(0.203125, rel=1e-9)

    def test_region_probability_cap(self):
        with pytest.raises(ValueError, match="p_region"):
            nu_coeffs(4, 2, 0.7)
        nu1, nu2 = nu_coeffs(4, 2, 0.7, p_region=disc_square_overlap(0.7))
        assert nu1 > 0


def mp_transmission_general(n, k, p, gamma_r, tau, r, alpha, phi):
    u = mp.e ** (-mp.mpf(gamma_r) * tau * (n - 1) * (1 - mp.e**-mp.mpf(tau)) * (0.5 + r) ** alpha)
    s1 = mp.fsum(mp.binomial(n, l) * mp.mpf(p) ** l * (1 - mp.mpf(p)) ** (n - l) for l in range(1, k + 1))
    s2 = mp.fsum(mp.binomial(n, l) * mp.mpf(p) ** l * (1 - mp.mpf(p)) ** (n - l) for l in range(k + 1, n + 1))
    return float(1 - u ** mp.mpf(phi) * s1 - u ** (2 * mp.mpf(phi)) / k**2 * s2)


class TestTransmissionBoundGeneral:
    def test_zero_radius_certain_outage(self):
        assert transmission_bound_general(5, 2, 0.0, 1.0, 0.1, ALPHA, DELTA) == 1.0

    def test_zero_tau_direct_summation(self):
        n, k, r = 5, 2, 0.3
        p = math.pi * r * r
        s1 = sum(math.comb(n, l) * p**l * (1 - p) ** (n - l) for l in range(1, k + 1))
        s2 = sum(math.comb(n, l) * p**l * (1 - p) ** (n - l) for l in range(k + 1, n + 1))
        expected = 1 - s1 - s2 / (k * k)
        assert transmission_bound_general(n, k, r, 1.0, 0.0, ALPHA, DELTA) == pytest.approx(
            expected, abs=1e-12
        )

    def test_against_independent_evaluation(self):
        n, k, r, gr, tau = 5, 2, 0.3, 1.0, 0.1
        expected = mp_transmission_general(
            n, k, math.pi * r * r, gr, tau, r, ALPHA, GEO.hop_sum
        )
        assert transmission_bound_general(n, k, r, gr, tau, ALPHA, DELTA) == pytest.approx(
            expected, rel=1e-10
        )

    def test_radius_over_probability_cap(self):
        with pytest.raises(ValueError, match="p_region"):
            transmission_bound_general(5, 2, 0.8, 1.0, 0.1, ALPHA, DELTA)

    def test_tight_variant_never_looser(self):
        for tau in (0.0, 0.05, 0.2, 1.0):
            for k in (1, 2, 4):
                loose = transmission_bound_general(6, k, 0.3, 1.0, tau, ALPHA, DELTA)
                tight = transmission_bound_general_tight(6, k, 0.3, 1.0, tau, ALPHA, DELTA)
                assert tight <= loose + 1e-12

    def test_corollary_sentinel_full_coverage(self):
        # with the probability override at 1 and k = n the bound depends on
        # the radius only through the survival factor
        n, tau, gr = 5, 0.05, 1.0
        for r in (0.5, 0.6, 0.8):
            u = channel_survival_base(n, gr, tau, r, ALPHA)
            expected = 1.0 - u**GEO.hop_sum
            got = transmission_bound_general(n, n, r, gr, tau, ALPHA, DELTA, p_region=1.0)
            assert got == pytest.approx(expected, abs=1e-12)


class TestSecrecyBoundGeneral:
    def test_no_eavesdroppers(self):
        assert secrecy_bound_general(5, 0, 1.0, 0.5, 0.05, ALPHA, DELTA).value == 0.0

    def test_d0_zero_collapse(self):
        b = secrecy_bound_general(5, 3, 1.0, 0.7, 0.0, ALPHA, DELTA)
        assert b.value == pytest.approx(2 * 3 - 9, abs=1e-12)
        assert b.saturated

    def test_point_value(self):
        n, m, ge, tau, d0 = 5, 1, 1.0, 1.0, 0.05
        cap = math.pi * d0 * d0
        base = 1.0 / (1.0 + ge * GEO.corner * d0**ALPHA)
        w = cap + base ** ((n - 1) * (1 - math.exp(-tau))) * (1 - cap)
        expected = 2 * m * w - (m * w) ** 2
        got = secrecy_bound_general(n, m, ge, tau, d0, ALPHA, DELTA)
        assert got.value == pytest.approx(expected, rel=1e-12)


class TestTauWindowsGeneral:
    def test_tau_max_back_substitution(self):
        checked = 0
        for n in (5, 10):
            for k in (1, 2):
                for r in (0.2, 0.3):
                    for eps_t in (0.2, 0.3, 0.5):
                        tau_hi = tau_max_general(n, k, r, 1.0, ALPHA, DELTA, eps_t)
                        if tau_hi is None or math.isinf(tau_hi):
                            continue
                        bound = transmission_bound_general(n, k, r, 1.0, tau_hi, ALPHA, DELTA)
                        assert bound <= eps_t + 1e-9
                        checked += 1
        assert checked >= 8

    def test_degenerate_k_equals_n_linear_fallback(self):
        n = k = 5
        r, eps_t = 0.3, 0.3
        tau_hi = tau_max_general(n, k, r, 1.0, ALPHA, DELTA, eps_t)
        p = math.pi * r * r
        s1 = sum(math.comb(n, l) * p**l * (1 - p) ** (n - l) for l in range(1, n + 1))
        u_star = (1 - eps_t) / s1
        expected = math.sqrt(
            -math.log(u_star) / (1.0 * (n - 1) * GEO.hop_sum * (0.5 + r) ** ALPHA)
        )
        assert tau_hi == pytest.approx(expected, rel=1e-12)
        assert transmission_bound_general(n, k, r, 1.0, tau_hi, ALPHA, DELTA) <= eps_t + 1e-9

    def test_quadratic_limit_matches_linear_fallback(self):
        # the quadratic inversion degenerates continuously into the linear one
        nu1 = 2.4
        eps_t = 0.3
        k = 2
        linear = (1 - eps_t) * k * k / nu1
        nu2 = 1e-9
        quadratic = (
            k * k * math.sqrt(nu1 * nu1 + 4 * (1 - eps_t) * nu2) - k * k * nu1
        ) / (2 * nu2)
        assert quadratic == pytest.approx(linear, rel=1e-6)

    def test_zero_region_infeasible(self):
        assert tau_max_general(5, 2, 0.0, 1.0, ALPHA, DELTA, 0.3) is None

    def test_tau_min_back_substitution(self):
        # needs a large capture radius before jamming can matter in the bound
        n, m, ge, d0 = 5, 1, 1.0, 0.3
        for eps_s in (0.5, 0.8):
            tau_lo = tau_min_general(n, m, ge, d0, ALPHA, DELTA, eps_s)
            if tau_lo is None:
                continue
            bound = secrecy_bound_general(n, m, ge, tau_lo, d0, ALPHA, DELTA)
            assert bound.value <= eps_s + 1e-9

    def test_tau_min_d0_zero_surfaced_infeasible(self):
        assert tau_min_general(5, 1, 1.0, 0.0, ALPHA, DELTA, 0.19) is None

    def test_tau_min_budget_exhausted_by_capture(self):
        assert tau_min_general(5, 50, 1.0, 0.05, ALPHA, DELTA, 0.19) is None

    def test_capture_disc_parameter_error(self):
        with pytest.raises(ValueError):
            tau_min_general(5, 1, 1.0, 0.6, ALPHA, DELTA, 0.19)


class TestMaxEavesGeneral:
    def test_vanishing_budget(self):
        tol = max_eaves_general(5, 1, 0.3, 1.0, 1.0, 0.05, ALPHA, DELTA, 0.3, 1e-12)
        assert tol.bound == pytest.approx(0.0, abs=1e-5)
        assert tol.count == 0

    def test_small_capture_radius_limit(self):
        # d0 -> 0 with omega ~ 1: the bound approaches the secrecy budget
        eps_s = 0.3
        tol = max_eaves_general(5, 1, 0.3, 1.0, 1.0, 1e-9, ALPHA, DELTA, 0.3, eps_s)
        y = 1 - math.sqrt(1 - eps_s)
        assert tol.bound == pytest.approx(y, rel=1e-3)

    def test_desk_scale_structurally_infeasible_at_moderate_target(self):
        # The above-k relay mass is penalized by 1/k^2, so even with tau = 0
        # the transmission bound cannot reach 0.3 here; the tolerance result
        # is infeasible, not a value.
        n, k, r = 10, 2, 0.3
        floor_bound = transmission_bound_general(n, k, r, 1.0, 0.0, ALPHA, DELTA)
        assert floor_bound > 0.3
        assert tau_max_general(n, k, r, 1.0, ALPHA, DELTA, 0.3) is None
        assert max_eaves_general(n, k, r, 1.0, 1.0, 0.05, ALPHA, DELTA, 0.3, 0.3) is None

    def test_desk_scale_consistency_at_feasible_target(self):
        n, k, r, gr, ge, d0 = 10, 2, 0.3, 1.0, 1.0, 0.05
        eps_t = eps_s = 0.55
        tol = max_eaves_general(n, k, r, gr, ge, d0, ALPHA, DELTA, eps_t, eps_s)
        tau_hi = tau_max_general(n, k, r, gr, ALPHA, DELTA, eps_t)
        assert tol is not None and tau_hi is not None
        assert transmission_bound_general(n, k, r, gr, tau_hi, ALPHA, DELTA) <= eps_t + 1e-9
        if tol.count and tol.count >= 1:
            bound = secrecy_bound_general(n, tol.count, ge, tau_hi, d0, ALPHA, DELTA)
            assert bound.value <= eps_s + 1e-9

    def test_infeasible_propagates(self):
        assert max_eaves_general(5, 2, 0.0, 1.0, 1.0, 0.05, ALPHA, DELTA, 0.3, 0.3) is None
