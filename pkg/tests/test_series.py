"""Tests for the coefficient series, the CDF/UTP evaluators, and the
truncated coefficient blocks."""

import math

import numpy as np
import pytest

from kuiper_hoe.series import (
    DEFAULT_SERIES,
    Probability,
    SeriesConfig,
    Statistic,
    b_series,
    cdf_kn,
    cdf_vn,
    fun_a0,
    fun_aj,
    utp,
)

WIDE_CFG = SeriesConfig(j_max=50)


# --------------------------------------------------------------------------
# independent re-implementations used as oracles
# --------------------------------------------------------------------------

def kuiper_limit_a(c, terms=80):
    """Kuiper's classical limit CDF component, coded from its own series."""
    total = 1.0
    for j in range(1, terms + 1):
        total -= 2.0 * (4.0 * j * j * c * c - 1.0) * math.exp(-2.0 * j * j * c * c)
    return total


def kuiper_limit_b(c, terms=80):
    """Kuiper's classical 1/sqrt(n) correction, coded from its own series."""
    total = 0.0
    for j in range(1, terms + 1):
        total += (8.0 / 3.0) * c * j * j * (4.0 * j * j * c * c - 3.0) \
            * math.exp(-2.0 * j * j * c * c)
    return total


# Re-typed truncated coefficient sets: the coefficient of e^{-2 j^2 c^2}
# contributed by each order i, for j = 1 and j = 2.
def _b1_coeffs(c):
    return (
        -(8 * c**2 - 2),
        (8.0 / 3.0) * c * (4 * c**2 - 3),
        -(1.0 / 9.0) * (4 * c**2 * (16 * c**2 - 25) + 13),
        (32.0 / 81.0) * c * (8 * c**4 - 22 * c**2 + 9),
        (1.0 / 972.0) * (16 * c**4 * (-64 * c**2 + 281) - 3864 * c**2 + 363),
        (32.0 / 3645.0) * (16 * c**5 * (32 * c**2 - 211) + 5080 * c**3 - 1485 * c),
    )


def _b2_coeffs(c):
    return (
        -(32 * c**2 - 2),
        (32.0 / 3.0) * c * (16 * c**2 - 3),
        -(1.0 / 9.0) * (16 * c**2 * (256 * c**2 - 97) + 49),
        (64.0 / 81.0) * c * (1024 * c**4 - 656 * c**2 + 63),
        (1.0 / 972.0) * (256 * c**4 * (-4096 * c**2 + 4001) - 199776 * c**2 + 2403),
        (32.0 / 3645.0) * (1024 * c**5 * (2048 * c**2 - 2851)
                           + 964480 * c**3 - 63540 * c),
    )


def aj_oracle(j, c, n, k):
    coeffs = _b1_coeffs(c) if j == 1 else _b2_coeffs(c)
    total = 0.0
    scale = 1.0
    sqrt_n = math.sqrt(n)
    for i in range(k + 1):
        total -= coeffs[i] * scale
        scale /= sqrt_n
    return total


def a1_closed_k5(c, n):
    """One-shot transcription of the full order-5 block for A_1."""
    return ((8 * c**2 - 2)
            - (8.0 / (3.0 * math.sqrt(n))) * (4 * c**3 - 3 * c)
            + (1.0 / (9.0 * n)) * (64 * c**4 - 100 * c**2 + 13)
            - (32.0 / (81.0 * n**1.5)) * (8 * c**5 - 22 * c**3 + 9 * c)
            + (1.0 / (972.0 * n**2)) * (1024 * c**6 - 4496 * c**4
                                        + 3864 * c**2 - 363)
            - (32.0 / (3645.0 * n**2.5)) * (512 * c**7 - 3376 * c**5
                                            + 5080 * c**3 - 1485 * c))


def a2_closed_k5(c, n):
    """One-shot transcription of the full order-5 block for A_2."""
    return ((32 * c**2 - 2)
            - (32.0 / (3.0 * math.sqrt(n))) * (16 * c**3 - 3 * c)
            + (1.0 / (9.0 * n)) * (4096 * c**4 - 1552 * c**2 + 49)
            - (64.0 / (81.0 * n**1.5)) * (1024 * c**5 - 656 * c**3 + 63 * c)
            + (1.0 / (972.0 * n**2)) * (1048576 * c**6 - 1024256 * c**4
                                        + 199776 * c**2 - 2403)
            - (32.0 / (3645.0 * n**2.5)) * (2097152 * c**7 - 2919424 * c**5
                                            + 964480 * c**3 - 63540 * c))


# --------------------------------------------------------------------------
# b_series
# --------------------------------------------------------------------------

class TestBSeries:
    def test_limits_at_large_c(self):
        assert b_series(0, 10.0) == pytest.approx(1.0, abs=1e-12)
        assert b_series(1, 10.0) == pytest.approx(0.0, abs=1e-12)

    def test_b0_at_asymptotic_one_percent_point(self):
        # at the asymptotic 1% critical value, B_0 alone carries the CDF
        assert b_series(0, 2.0006) == pytest.approx(0.99, abs=5e-4)

    @pytest.mark.parametrize("i", range(6))
    @pytest.mark.parametrize("c", [0.8, 1.0, 1.5, 2.2])
    def test_extended_truncation_oracle(self, i, c):
        assert b_series(i, c) == pytest.approx(b_series(i, c, WIDE_CFG),
                                               abs=1e-12)

    @pytest.mark.parametrize("c", np.linspace(0.6, 3.0, 25).tolist())
    def test_matches_classical_limit_functions(self, c):
        assert b_series(0, c) == pytest.approx(kuiper_limit_a(c), abs=1e-12)
        assert b_series(1, c) == pytest.approx(kuiper_limit_b(c), abs=1e-12)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            b_series(6, 1.0)
        with pytest.raises(ValueError):
            b_series(-1, 1.0)
        with pytest.raises(ValueError):
            b_series(0, 0.0)
        with pytest.raises(ValueError):
            b_series(0, -1.0)


# --------------------------------------------------------------------------
# truncated coefficient blocks
# --------------------------------------------------------------------------

class TestCoefficientBlocks:
    def test_a0_values(self):
        for n in (1, 5, 17, 1000):
            assert fun_a0(n, 1) == -1.0
        assert fun_a0(1, 2) == pytest.approx(-1.0 + 1.0 / 18.0, abs=1e-15)
        assert fun_a0(1, 4) == pytest.approx(-1.0 + 1.0 / 18.0 - 1.0 / 648.0,
                                             abs=1e-15)

    def test_a1_hand_value(self):
        # (8 - 2) - 8*(4 - 3)/(3*2) at c=1, n=4, k=1
        assert fun_aj(1, 1.0, 4, 1) == pytest.approx(6.0 - 8.0 / 6.0, rel=1e-15)

    def test_a2_hand_value(self):
        # 30 - 32*13/(3*2) at c=1, n=4, k=1
        assert fun_aj(2, 1.0, 4, 1) == pytest.approx(30.0 - 32.0 * 13.0 / 6.0,
                                                     rel=1e-15)

    def test_invalid_j(self):
        with pytest.raises(ValueError):
            fun_aj(0, 1.0, 4, 1)
        with pytest.raises(ValueError):
            fun_aj(3, 1.0, 4, 1)

    def test_against_retyped_coefficients(self):
        rng = np.random.default_rng(42)
        for _ in range(100):
            j = int(rng.integers(1, 3))
            c = float(rng.uniform(0.5, 3.0))
            n = int(rng.integers(1, 2000))
            k = int(rng.integers(1, 6))
            got = fun_aj(j, c, n, k)
            want = aj_oracle(j, c, n, k)
            assert got == pytest.approx(want, rel=1e-12, abs=1e-12)

    @pytest.mark.parametrize("n", [4, 6, 10, 100])
    @pytest.mark.parametrize("c", [0.8, 1.2, 1.8, 2.6])
    def test_accumulation_equals_closed_form(self, n, c):
        # gated accumulation and the one-shot order-5 block are identities
        assert fun_aj(1, c, n, 5) == pytest.approx(a1_closed_k5(c, n),
                                                   rel=1e-13, abs=1e-10)
        assert fun_aj(2, c, n, 5) == pytest.approx(a2_closed_k5(c, n),
                                                   rel=1e-13, abs=1e-10)


# --------------------------------------------------------------------------
# CDF / UTP
# --------------------------------------------------------------------------

class TestCdf:
    def test_large_c_limit(self):
        # for k >= 2 the approximant saturates at 1 - 1/(18n) + 1/(648 n^2)
        n = 10
        limit = 1.0 - 1.0 / (18.0 * n) + 1.0 / (648.0 * n * n)
        assert float(cdf_kn(10.0, n, 5)) == pytest.approx(limit, abs=1e-9)

    def test_asymptotic_five_percent_point(self):
        assert float(cdf_kn(1.7469, 10**6, 1)) == pytest.approx(0.95, abs=5e-4)

    def test_table_values_round_trip(self):
        assert float(cdf_vn(0.5080, 10, 1)) == pytest.approx(0.95, abs=5e-4)
        assert float(cdf_vn(0.8948, 6, 5)) == pytest.approx(0.99, abs=1e-3)

    def test_cdf_vn_delegates_exactly(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            v = float(rng.uniform(0.2, 1.2))
            n = int(rng.integers(2, 500))
            k = int(rng.integers(1, 6))
            assert float(cdf_vn(v, n, k)) == float(cdf_kn(v * math.sqrt(n), n, k))

    _TAIL_DIP = pytest.mark.xfail(
        reason="the order-5 tail term makes the approximant dip by ~4e-8 "
               "beyond c=2.8 when n <= 7", strict=True)

    @pytest.mark.parametrize("n,k", [
        pytest.param(6, 5, marks=_TAIL_DIP),
        pytest.param(7, 5, marks=_TAIL_DIP),
        *[(n, k) for n in (6, 7, 10, 50, 10**6) for k in (1, 2, 3, 4, 5)
          if not (k == 5 and n in (6, 7))],
    ])
    def test_monotone_on_grid(self, n, k):
        grid = np.arange(1.0, 3.0001, 0.01)
        values = [float(cdf_kn(c, n, k)) for c in grid]
        assert all(b >= a for a, b in zip(values, values[1:]))

    @pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
    def test_limit_consistency_bound(self, k):
        n = 10**6
        for c in np.arange(0.8, 3.0, 0.2):
            gap = abs(float(cdf_kn(c, n, k)) - b_series(0, c))
            bound = 2.0 / math.sqrt(n) * max(abs(b_series(i, c))
                                             for i in range(6))
            assert gap <= bound

    def test_truncation_stability(self):
        for c in np.arange(0.8, 3.01, 0.2):
            for i in range(6):
                assert abs(b_series(i, c, SeriesConfig(j_max=10))
                           - b_series(i, c, SeriesConfig(j_max=50))) < 1e-12

    def test_clamping_flags(self):
        # far below the trust floor the raw series leaves [0, 1]
        p = cdf_kn(0.18, 4, 5)
        assert 0.0 <= float(p) <= 1.0
        assert p.clamped
        assert p.raw != float(p)

    def test_floor_warning(self):
        assert cdf_kn(0.5, 10, 3).warning is not None
        assert cdf_kn(0.7, 10, 3).warning is None


class TestUtp:
    def test_reference_table_value(self):
        assert float(utp(1.9721, 20, 3)) == pytest.approx(0.01, abs=1e-3)

    def test_far_tail(self):
        # order 1 has no constant residue, so the tail vanishes
        assert float(utp(50.0, 10, 1)) == pytest.approx(0.0, abs=1e-12)
        # higher orders keep the 1/(18n) - 1/(648 n^2) residue
        assert float(utp(50.0, 10, 5)) == pytest.approx(
            1.0 / 180.0 - 1.0 / 64800.0, abs=1e-12)

    @pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
    @pytest.mark.parametrize("n", [6, 10, 100])
    def test_truncated_matches_full_series(self, n, k):
        for c in np.arange(1.2, 3.01, 0.1):
            full = float(utp(c, n, k))
            trunc = float(utp(c, n, k, truncated=True))
            assert abs(full - trunc) < 1e-6

    def test_probability_type(self):
        p = utp(1.5, 10, 5)
        assert isinstance(p, Probability)
        assert 0.0 <= float(p) <= 1.0


class TestStatistic:
    def test_constructors_agree(self):
        s = Statistic.from_v(0.5, 16)
        assert s.c == pytest.approx(2.0, rel=1e-15)
        t = Statistic.from_c(2.0, 16)
        assert t.v == pytest.approx(0.5, rel=1e-15)

    def test_inconsistent_pair_rejected(self):
        with pytest.raises(ValueError):
            Statistic(n=16, v=0.5, c=1.9)


class TestSeriesAccuracy:
    """Characterization of the finite-n accuracy of the expansion against
    exact-statistic Monte Carlo (documented envelope, not the headline
    tolerance; see the acceptance suite)."""

    def test_tracks_exact_distribution_at_moderate_n(self, vn_mc):
        kn = vn_mc(10) * math.sqrt(10)
        sup = max(abs(float(cdf_kn(c, 10, 5))
                      - np.searchsorted(kn, c, side="right") / kn.size)
                  for c in np.arange(1.0, 2.41, 0.2))
        assert sup < 0.03

    def test_tracks_exact_distribution_at_large_n(self, vn_mc):
        kn = vn_mc(2000, reps=100_000) * math.sqrt(2000)
        sup = max(abs(float(cdf_kn(c, 2000, 5))
                      - np.searchsorted(kn, c, side="right") / kn.size)
                  for c in np.arange(1.0, 2.41, 0.2))
        assert sup < 0.005
