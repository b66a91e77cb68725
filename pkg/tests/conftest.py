"""Shared fixtures: cached Monte Carlo draws of the exact Kuiper statistic."""

import math

import numpy as np
import pytest


def exact_vn_samples(n: int, reps: int, seed: int) -> np.ndarray:
    """Sorted draws of the exact V_n statistic for uniform samples.

    The exact statistic pairs the t/n plotting position for the upward
    deviation with (t-1)/n for the downward one.
    """
    rng = np.random.default_rng(seed)
    out = np.empty(reps)
    t = np.arange(1.0, n + 1.0)
    chunk = max(1, 2_000_000 // n)
    done = 0
    while done < reps:
        m = min(chunk, reps - done)
        u = np.sort(rng.random((m, n)), axis=1)
        d_plus = (t / n - u).max(axis=1)
        d_minus = (u - (t - 1.0) / n).max(axis=1)
        out[done:done + m] = d_plus + d_minus
        done += m
    out.sort()
    return out


@pytest.fixture(scope="session")
def vn_mc():
    """Factory for cached exact-statistic Monte Carlo samples."""
    cache = {}

    def get(n: int, reps: int = 200_000, seed: int = 20240611) -> np.ndarray:
        key = (n, reps, seed)
        if key not in cache:
            cache[key] = exact_vn_samples(n, reps, seed)
        return cache[key]

    return get


def empirical_cdf(sorted_samples: np.ndarray, x: float) -> float:
    return np.searchsorted(sorted_samples, x, side="right") / sorted_samples.size


def empirical_tail(sorted_samples: np.ndarray, x: float) -> float:
    return 1.0 - empirical_cdf(sorted_samples, x)
