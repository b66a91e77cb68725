"""Fixed-point machinery for Kuiper critical values and tail quantiles.

The order-k upper tail equation is solved in its two-exponential form
either by direct contraction iteration on ``f_ctm`` or by Newton steps on
the log-residual ``f_nlm``.  A converged solve yields the pair
``(c, v = c / sqrt(n))``: the critical value of the scaled statistic and
the quantile of the raw one.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace

from .series import _check_capacity, _check_order, fun_a0, fun_aj

__all__ = [
    "BisectionBracket",
    "SolverConfig",
    "KuiperPair",
    "DEFAULT_SOLVER",
    "ConvergenceError",
    "DegenerateDerivativeError",
    "FixedPointDomainError",
    "BracketWarning",
    "distance",
    "update_direct",
    "update_newton",
    "fixed_point_solve",
    "get_init_value",
    "f_nlm",
    "f_ctm",
    "kuiper_pair_solver",
    "kuiper_utq",
    "kuiper_ltq",
    "kuiper_inv_cdf",
]


class ConvergenceError(RuntimeError):
    """Iteration cap reached before successive iterates got close enough."""

    def __init__(self, message: str, last_x: float | None = None,
                 last_distance: float | None = None) -> None:
        super().__init__(message)
        self.last_x = last_x
        self.last_distance = last_distance


class DegenerateDerivativeError(RuntimeError):
    """Forward-difference slope too close to zero for a Newton step."""


class FixedPointDomainError(ValueError):
    """A log or sqrt argument left its domain during iteration.

    ``argument`` names the failing expression: "alpha_gap" for
    alpha - 1 - A_0 (alpha incompatible with n at this order), and
    "tail_coefficient" or "radicand" for iterates outside the
    contraction basin.
    """

    def __init__(self, message: str, argument: str) -> None:
        super().__init__(message)
        self.argument = argument


class BracketWarning(UserWarning):
    """get_init_value saw no sign change over the supplied interval."""


@dataclass(frozen=True)
class BisectionBracket:
    """Search interval and resolution for the bisection initializer."""

    a: float = 0.6
    b: float = 3.0
    h: float = 0.05

    def __post_init__(self) -> None:
        if not self.a < self.b:
            raise ValueError(f"bracket must satisfy a < b, got [{self.a}, {self.b}]")
        if self.h <= 0.0:
            raise ValueError(f"bracket resolution h must be positive, got {self.h}")


@dataclass(frozen=True)
class SolverConfig:
    method: str = "newton"
    epsilon: float = 1e-5
    h: float = 1e-5
    c_guess: float = 1.8
    max_iter: int = 200
    use_bisection_init: bool = False
    bisection: BisectionBracket = field(default_factory=BisectionBracket)

    def __post_init__(self) -> None:
        if self.method not in ("direct", "newton"):
            raise ValueError(f"method must be 'direct' or 'newton', got {self.method!r}")
        if self.epsilon <= 0.0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.h <= 0.0:
            raise ValueError(f"h must be positive, got {self.h}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")


DEFAULT_SOLVER = SolverConfig()


@dataclass(frozen=True)
class KuiperPair:
    """A solved (critical value, quantile) pair at level alpha, capacity n,
    expansion order k, with the iteration count and the log-residual at the
    returned point."""

    c: float
    v: float
    alpha: float
    n: int
    k: int
    iterations: int
    residual: float


def distance(x: float, y: float) -> float:
    """Absolute difference, the scalar iteration metric."""
    return abs(x - y)


def _log_arguments(c: float, alpha: float, n: int, k: int) -> tuple[float, float]:
    """The two positive quantities whose logs enter the tail equation."""
    gap = alpha - 1.0 - fun_a0(n, k)
    if gap <= 0.0:
        raise FixedPointDomainError(
            f"alpha - 1 - A0 = {gap:.4g} <= 0: alpha={alpha} is not reachable "
            f"for n={n} at order k={k}", argument="alpha_gap")
    tail = fun_aj(1, c, n, k) + fun_aj(2, c, n, k) * math.exp(-6.0 * c * c)
    if tail <= 0.0:
        raise FixedPointDomainError(
            f"A1 + A2*exp(-6c^2) = {tail:.4g} <= 0 at c={c:.6g}: iterate left "
            f"the contraction basin", argument="tail_coefficient")
    return gap, tail


def f_nlm(c: float, alpha: float, n: int, k: int) -> float:
    """Log-form tail residual; zero exactly at the order-k quantile."""
    gap, tail = _log_arguments(c, alpha, n, k)
    return 2.0 * c * c + math.log(gap) - math.log(tail)


def f_ctm(c: float, alpha: float, n: int, k: int) -> float:
    """Contraction map whose fixed point is the order-k quantile."""
    gap, tail = _log_arguments(c, alpha, n, k)
    radicand = (math.log(tail) - math.log(gap)) / 2.0
    if radicand < 0.0:
        raise FixedPointDomainError(
            f"negative radicand {radicand:.4g} at c={c:.6g}", argument="radicand")
    return math.sqrt(radicand)


def update_direct(f, c: float, *params) -> float:
    """Direct update: the next iterate is f itself."""
    return f(c, *params)


def update_newton(f, c: float, *params, h: float = 1e-5) -> float:
    """One Newton step with a forward-difference slope of step h."""
    f0 = f(c, *params)
    slope = (f(c + h, *params) - f0) / h
    if abs(slope) < 1e-14:
        raise DegenerateDerivativeError(
            f"forward-difference slope {slope:.4g} at c={c:.6g} is too small")
    return c - f0 / slope


def fixed_point_solve(updater, f, dist, epsilon: float, x_guess: float,
                      *params, max_iter: int = 200) -> float:
    """Iterate x <- updater(f, x, *params) until dist(new, old) < epsilon.

    Args:
        updater: second-order function computing the next iterate.
        f: the function object handed through to the updater.
        dist: metric on successive iterates.
        epsilon: convergence tolerance on the iterate distance.
        x_guess: starting point.
        *params: extra arguments forwarded to the updater.
        max_iter: update cap.

    Returns:
        The last improved iterate.

    Raises:
        ConvergenceError: cap reached; carries the last iterate and distance.
    """
    x_improve = updater(f, x_guess, *params)
    iterations = 1
    while dist(x_improve, x_guess) >= epsilon:
        if iterations >= max_iter:
            raise ConvergenceError(
                f"no convergence after {iterations} updates: last iterate "
                f"{x_improve:.8g}, last distance {dist(x_improve, x_guess):.4g}",
                last_x=x_improve, last_distance=dist(x_improve, x_guess))
        x_guess = x_improve
        x_improve = updater(f, x_guess, *params)
        iterations += 1
    return x_improve


def get_init_value(f, a: float, b: float, h: float, *params) -> float:
    """Bisection preconditioner: a midpoint within h of the root of f.

    Assumes a single sign change of f on [a, b].  If f(a) and f(b) have the
    same sign (checked when both evaluate cleanly) a BracketWarning is
    emitted and the midpoint search still runs.
    """
    try:
        if f(a, *params) * f(b, *params) > 0.0:
            warnings.warn(
                f"no sign change of {getattr(f, '__name__', 'f')} on "
                f"[{a}, {b}]; initializer may be far from a root", BracketWarning,
                stacklevel=2)
    except FixedPointDomainError:
        pass  # endpoint outside the domain; bisection itself may still succeed
    delta = abs(a - b)
    x_guess = (a + b) / 2.0
    while delta > h:
        if f(x_guess, *params) * f(a, *params) > 0.0:
            a = x_guess
        else:
            b = x_guess
        delta /= 2.0
        x_guess = (a + b) / 2.0
    return x_guess


def _initial_value(cfg: SolverConfig, alpha: float, n: int, k: int) -> float:
    br = cfg.bisection
    return get_init_value(f_nlm, br.a, br.b, br.h, alpha, n, k)


def kuiper_pair_solver(alpha: float, n: int, k: int,
                       cfg: SolverConfig = DEFAULT_SOLVER) -> KuiperPair:
    """Solve the Kuiper pair (c, v) at level alpha, capacity n, order k.

    Dispatches to the direct contraction or the Newton iteration per
    cfg.method.  A domain error during iteration from the plain initial
    guess triggers one retry from the bisection initializer.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    _check_capacity(n)
    _check_order(k)

    if cfg.method == "direct":
        base_updater, func = update_direct, f_ctm
    else:
        def base_updater(f, c, *params):
            return update_newton(f, c, *params, h=cfg.h)
        func = f_nlm

    count = 0

    def counted(f, c, *params):
        nonlocal count
        count += 1
        return base_updater(f, c, *params)

    x0 = (_initial_value(cfg, alpha, n, k) if cfg.use_bisection_init
          else cfg.c_guess)
    try:
        c = fixed_point_solve(counted, func, distance, cfg.epsilon, x0,
                              alpha, n, k, max_iter=cfg.max_iter)
    except FixedPointDomainError:
        if cfg.use_bisection_init:
            raise
        x0 = _initial_value(cfg, alpha, n, k)
        c = fixed_point_solve(counted, func, distance, cfg.epsilon, x0,
                              alpha, n, k, max_iter=cfg.max_iter)

    return KuiperPair(c=c, v=c / math.sqrt(n), alpha=alpha, n=n, k=k,
                      iterations=count, residual=f_nlm(c, alpha, n, k))


def kuiper_utq(alpha: float, n: int, k: int,
               cfg: SolverConfig = DEFAULT_SOLVER) -> float:
    """Upper tail quantile of V_n; returns 0.0 outright for alpha >= 0.9999.

    Always solved with the Newton iteration.
    """
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must be in (0, 1], got {alpha}")
    if alpha >= 0.9999:
        return 0.0
    if cfg.method != "newton":
        cfg = replace(cfg, method="newton")
    return kuiper_pair_solver(alpha, n, k, cfg).v


def kuiper_ltq(alpha: float, n: int, k: int,
               cfg: SolverConfig = DEFAULT_SOLVER) -> float:
    """Lower tail quantile of V_n: 0.0 for alpha <= 0.0001, else the upper
    tail quantile at 1 - alpha (identical code path, hence exact duality)."""
    if alpha <= 0.0001:
        return 0.0
    return kuiper_utq(1.0 - alpha, n, k, cfg)


def kuiper_inv_cdf(x: float, n: int, k: int,
                   cfg: SolverConfig = DEFAULT_SOLVER) -> float:
    """Inverse CDF of V_n at probability x, via the upper tail at 1 - x."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"probability x must be in [0, 1], got {x}")
    return kuiper_utq(1.0 - x, n, k, cfg)
