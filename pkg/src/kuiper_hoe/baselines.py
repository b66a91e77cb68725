"""Historical finite-sample formulas used for cross-checks and comparisons.

Covers Stephens' 1965 finite-n tail sum and small-v CDF, Stephens' 1970
modified statistic with its capacity-independent quantile, and a standard
asymptotic Kolmogorov-Smirnov tail for comparison runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .series import Probability, _check_capacity
from .solver import distance, fixed_point_solve, get_init_value, update_newton

__all__ = [
    "ModifiedStatistic",
    "stephens_utp",
    "stephens_cdf_small_v",
    "modified_statistic",
    "modified_quantile",
    "ks_utp_asymptotic",
]


@dataclass(frozen=True)
class ModifiedStatistic:
    """Stephens' modified Kuiper statistic T_n = V_n (sqrt(n) + 0.155 + 0.24/sqrt(n))."""

    t_n: float
    n: int


def stephens_utp(v: float, n: int) -> Probability:
    """Stephens' finite-n tail sum for Pr{V_n >= v}.

    Valid for v >= 1/2 when n is even and v >= 1/2 - 1/(2n) when n is odd.
    The lattice spacing in the summand is 1/n, matching y = v + t/n.
    Binomials go through log-gamma; raw factorials overflow for large n.
    Known to overestimate the tail slightly.
    """
    _check_capacity(n)
    floor = 0.5 if n % 2 == 0 else 0.5 - 0.5 / n
    if v < floor:
        raise ValueError(f"stephens_utp requires v >= {floor} for n={n}, got {v}")
    t_max = math.floor(n * (1.0 - v))
    if t_max < 0:
        return Probability(0.0)
    total = 0.0
    for t in range(t_max + 1):
        base = 1.0 - v - t / n
        y = v + t / n
        w = y ** (t - 3) * (y ** 3 * n - y * y * t * (3.0 - 2.0 / n) / n
                            - t * (t - 1) * (t - 2) / (n * n))
        log_binom = (math.lgamma(n + 1) - math.lgamma(t + 1)
                     - math.lgamma(n - t + 1))
        power = n - t - 1
        if base > 0.0:
            total += math.exp(log_binom + power * math.log(base)) * w
        elif power == 0:  # 0^0 = 1 on the lattice boundary
            total += math.exp(log_binom) * w
    return Probability(total)


def stephens_cdf_small_v(v: float, n: int) -> Probability:
    """Stephens' closed-form CDF Pr{V_n <= v} on the corner 1/n <= v <= 3/n.

    The first branch covers v <= 2/n; the second uses the two roots of
    t^2 - (nv - 1) t + (nv - 2)^2 / 2 = 0.  Both branches are evaluated in
    log space to dodge factorial overflow.
    """
    _check_capacity(n)
    if not (1.0 / n <= v <= 3.0 / n):
        raise ValueError(
            f"stephens_cdf_small_v is defined on [{1.0 / n:.6g}, {3.0 / n:.6g}] "
            f"for n={n}, got v={v}")
    w = n * v
    if w <= 2.0:
        if n == 1:
            return Probability(1.0)  # (v - 1)^0 with 1! in front
        x = v - 1.0 / n
        if x <= 0.0:
            return Probability(0.0)
        return Probability(math.exp(math.lgamma(n + 1) + (n - 1) * math.log(x)))
    disc = (w - 1.0) ** 2 - 2.0 * (w - 2.0) ** 2
    if disc < 0.0:
        raise ValueError(f"complex quadratic roots: discriminant {disc:.6g} < 0 "
                         f"at v={v}, n={n}")
    s = math.sqrt(disc)
    t1 = ((w - 1.0) - s) / 2.0
    t2 = ((w - 1.0) + s) / 2.0
    prefactor = math.exp(math.lgamma(n) - (n - 2) * math.log(n))
    bracket = t2 ** (n - 1) * (1.0 - t1) - t1 ** (n - 1) * (1.0 - t2)
    return Probability(prefactor * bracket / (t2 - t1))


def modified_statistic(v_n: float, n: int) -> ModifiedStatistic:
    """Stephens' modified statistic for a computed V_n."""
    if v_n < 0.0:
        raise ValueError(f"v_n must be nonnegative, got {v_n}")
    _check_capacity(n)
    sqrt_n = math.sqrt(n)
    return ModifiedStatistic(t_n=v_n * (sqrt_n + 0.155 + 0.24 / sqrt_n), n=n)


def _modified_residual(c: float, alpha: float) -> float:
    return (8.0 * c * c - 2.0) * math.exp(-2.0 * c * c) - alpha


def modified_quantile(alpha: float) -> float:
    """Capacity-independent quantile c solving (8c^2 - 2) e^{-2c^2} = alpha.

    Newton iteration seeded by bisection on [0.6, 3.0]; this is the limit
    of the order-1 critical value as n grows.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    c0 = get_init_value(_modified_residual, 0.6, 3.0, 0.05, alpha)
    return fixed_point_solve(update_newton, _modified_residual, distance,
                             1e-9, c0, alpha, max_iter=200)


def ks_utp_asymptotic(d: float, n: int) -> Probability:
    """Asymptotic two-sided Kolmogorov tail 2 sum_j (-1)^{j-1} e^{-2 j^2 n d^2}.

    Terms below 1e-12 are dropped; a vanishing exponent rate returns the
    limit value 1.
    """
    if d < 0.0:
        raise ValueError(f"statistic d must be nonnegative, got {d}")
    _check_capacity(n)
    rate = 2.0 * n * d * d
    if rate < 1e-8:
        return Probability(1.0)
    total = 0.0
    sign = 1.0
    j = 1
    while True:
        term = math.exp(-j * j * rate)
        if term < 1e-12:
            break
        total += sign * term
        sign = -sign
        j += 1
    return Probability(2.0 * total)
