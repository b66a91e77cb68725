"""Goodness-of-fit testing with the Kuiper statistic.

Computes the one-sided deviations D+ and D- between the empirical
distribution of a sample and a fully specified hypothesized CDF, their sum
V_n, and an accept/reject decision against the solved critical quantile.
"""

from __future__ import annotations

import builtins
import enum
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .series import Probability, SeriesConfig, DEFAULT_SERIES, utp
from .solver import SolverConfig, DEFAULT_SOLVER, kuiper_utq

__all__ = [
    "EdfScheme",
    "TiesWarning",
    "SampleSet",
    "TestResult",
    "edf_probs",
    "vn_from_probs",
    "compute_vn",
    "kuiper_test",
]


class TiesWarning(UserWarning):
    """The sample contains tied values; a continuous population has none."""


class EdfScheme(enum.Enum):
    """Plotting-position schemes for the empirical probability of the t-th
    order statistic.

    STEPHENS_MIXED pairs t/n for the upward deviation with (t-1)/n for the
    downward one, which reproduces the exact supremum statistic of the
    empirical step function.
    """

    SCHEME0 = "scheme0"                 # t/n
    SCHEME1 = "scheme1"                 # (t-1)/n
    SCHEME2 = "scheme2"                 # (t-0.5)/n
    SCHEME3 = "scheme3"                 # t/(n+1)
    SCHEME4 = "scheme4"                 # (t-0.375)/(n+0.25), ISO 5479 position
    STEPHENS_MIXED = "stephens_mixed"

    @classmethod
    def from_string(cls, name: str) -> "EdfScheme":
        try:
            return cls(name.strip().lower())
        except ValueError:
            valid = ", ".join(s.value for s in cls)
            raise ValueError(f"unknown EDF scheme {name!r}; expected one of {valid}")


@dataclass(frozen=True)
class SampleSet:
    """A finite real sample with its order statistics."""

    values: tuple
    sorted: tuple = field(init=False, repr=False)
    n: int = field(init=False)

    def __post_init__(self) -> None:
        vals = tuple(float(x) for x in self.values)
        if not vals:
            raise ValueError("sample must contain at least one value")
        object.__setattr__(self, "values", vals)
        srt = tuple(builtins.sorted(vals))
        object.__setattr__(self, "sorted", srt)
        object.__setattr__(self, "n", len(srt))
        if any(a == b for a, b in zip(srt, srt[1:])):
            warnings.warn("sample contains tied values; the test assumes a "
                          "continuous population", TiesWarning, stacklevel=2)


@dataclass(frozen=True)
class TestResult:
    d_plus: float
    d_minus: float
    v_n: float
    v_critical: float
    p_value: Probability
    reject: bool
    alpha: float
    k: int
    scheme: EdfScheme


def edf_probs(n: int, scheme: EdfScheme) -> list:
    """Plotting positions [q_1, ..., q_n] for a single scheme."""
    if n < 1:
        raise ValueError(f"sample capacity n must be >= 1, got {n}")
    if scheme is EdfScheme.STEPHENS_MIXED:
        raise ValueError("stephens_mixed pairs two plotting positions; "
                         "use compute_vn or vn_from_probs directly")
    t = np.arange(1.0, n + 1.0)
    if scheme is EdfScheme.SCHEME0:
        q = t / n
    elif scheme is EdfScheme.SCHEME1:
        q = (t - 1.0) / n
    elif scheme is EdfScheme.SCHEME2:
        q = (t - 0.5) / n
    elif scheme is EdfScheme.SCHEME3:
        q = t / (n + 1.0)
    else:
        q = (t - 0.375) / (n + 0.25)
    return q.tolist()


def vn_from_probs(q, scheme: EdfScheme = EdfScheme.STEPHENS_MIXED):
    """(D+, D-, V_n) from hypothesized CDF values at the order statistics.

    q must be the sorted sequence F(X_(1)), ..., F(X_(n)).  Deviations whose
    maximum is negative floor at zero: the supremum of an empirical step
    function against a CDF is never negative.
    """
    q = np.asarray(q, dtype=float)
    n = q.size
    t = np.arange(1.0, n + 1.0)
    if scheme is EdfScheme.STEPHENS_MIXED:
        d_plus = float((t / n - q).max())
        d_minus = float((q - (t - 1.0) / n).max())
    else:
        qhat = np.asarray(edf_probs(n, scheme))
        d_plus = float((qhat - q).max())
        d_minus = float((q - qhat).max())
    d_plus = max(d_plus, 0.0)
    d_minus = max(d_minus, 0.0)
    return d_plus, d_minus, d_plus + d_minus


def compute_vn(sample: SampleSet, hypothesized_cdf,
               scheme: EdfScheme = EdfScheme.STEPHENS_MIXED):
    """(D+, D-, V_n) of a sample against a fully specified CDF."""
    q = [float(hypothesized_cdf(x)) for x in sample.sorted]
    for x, qt in zip(sample.sorted, q):
        if not 0.0 <= qt <= 1.0:
            raise ValueError(f"hypothesized CDF returned {qt!r} at x={x!r}; "
                             f"a CDF must map into [0, 1]")
    return vn_from_probs(q, scheme)


def kuiper_test(sample: SampleSet, hypothesized_cdf, alpha: float = 0.05,
                k: int = 5, scheme: EdfScheme = EdfScheme.STEPHENS_MIXED,
                cfg: SolverConfig = DEFAULT_SOLVER,
                series_cfg: SeriesConfig = DEFAULT_SERIES) -> TestResult:
    """Run the Kuiper goodness-of-fit test at level alpha and order k.

    Rejects when V_n exceeds the solved critical quantile.  The reported
    p-value uses the full coefficient series; for a degenerate V_n of zero
    it is 1 by convention.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    d_plus, d_minus, v_n = compute_vn(sample, hypothesized_cdf, scheme)
    v_critical = kuiper_utq(alpha, sample.n, k, cfg)
    if v_n > 0.0:
        p_value = utp(v_n * math.sqrt(sample.n), sample.n, k, series_cfg)
    else:
        p_value = Probability(1.0)
    return TestResult(d_plus=d_plus, d_minus=d_minus, v_n=v_n,
                      v_critical=v_critical, p_value=p_value,
                      reject=v_n > v_critical, alpha=alpha, k=k, scheme=scheme)
