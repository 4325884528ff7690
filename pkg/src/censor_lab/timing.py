"""Optimal re-stocking date.

The revenue over the unit interval is R(theta) = theta + (1 - theta) *
g_bar(theta); the first-order condition is solved exactly by scanning
R' for its first sign change, and the two simplified closed-form cases
(substitute profit models 1 + A*theta*exp(-alpha*theta) and
exp(alpha*theta)) are exposed separately in terms of alpha alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

from scipy.optimize import brentq

from .errors import ConvergenceError, DomainError
from .model import ModelParams
from .profit import g_bar

FD_STEP = 1e-6
ENDPOINT_MARGIN = 1e-9
SCAN_POINTS = 256
LOCAL_MAX_PROBE = 1e-4


@dataclass(frozen=True)
class TimingSolution:
    theta_star: float
    r_value: float
    foc_residual: float
    branch: str
    is_smallest_root: bool


def revenue(theta: float, params: ModelParams) -> float:
    """R(theta) = theta + (1 - theta) * g_bar(theta) on [0, 1]."""
    if not 0.0 <= theta <= 1.0:
        raise DomainError(f"theta must lie in [0, 1], got {theta}")
    return theta + (1.0 - theta) * g_bar(theta, params)


def g_bar_prime(theta: float, params: ModelParams) -> float:
    """Central finite difference of g_bar; the closed form has no theta derivative."""
    h = FD_STEP * max(theta, 1.0)
    h = min(h, 0.5 * theta)
    return (g_bar(theta + h, params) - g_bar(theta - h, params)) / (2.0 * h)


def _revenue_prime(theta: float, params: ModelParams) -> float:
    return 1.0 - g_bar(theta, params) + (1.0 - theta) * g_bar_prime(theta, params)


def solve_foc(params: ModelParams, tol: float = 1e-6) -> TimingSolution:
    """Smallest stationary point of R in (0, 1), verified to be a local max."""
    if tol <= 0.0:
        raise DomainError(f"tol must be positive, got {tol}")

    lo_end, hi_end = ENDPOINT_MARGIN, 1.0 - ENDPOINT_MARGIN
    n = SCAN_POINTS
    grid = [lo_end + (hi_end - lo_end) * i / (n - 1) for i in range(n)]
    values = [_revenue_prime(t, params) for t in grid]

    bracket = None
    for i in range(n - 1):
        if values[i] == 0.0:
            bracket = (grid[i], grid[i])
            break
        if values[i] * values[i + 1] < 0.0:
            bracket = (grid[i], grid[i + 1])
            break
    if bracket is None:
        raise ConvergenceError(
            f"no sign change of R' on (0, 1) for {params}; "
            "a root is guaranteed for valid inputs")

    if bracket[0] == bracket[1]:
        theta_star = bracket[0]
    else:
        theta_star = brentq(lambda t: _revenue_prime(t, params),
                            bracket[0], bracket[1], xtol=1e-12)

    r_star = revenue(theta_star, params)
    lo_probe = max(theta_star - LOCAL_MAX_PROBE, 0.0)
    hi_probe = min(theta_star + LOCAL_MAX_PROBE, 1.0)
    if not (revenue(lo_probe, params) < r_star and revenue(hi_probe, params) < r_star):
        raise ConvergenceError(
            f"stationary point {theta_star} is not a local maximum of R")

    gp = g_bar_prime(theta_star, params)
    residual = abs((g_bar(theta_star, params) - 1.0) / gp - (1.0 - theta_star))
    if residual > tol:
        raise ConvergenceError(
            f"FOC residual {residual:.3e} above tol {tol:.3e} at theta={theta_star}")

    return TimingSolution(theta_star=theta_star, r_value=r_star,
                          foc_residual=residual, branch="exact",
                          is_smallest_root=True)


def theta_case_i(alpha: float) -> float:
    """Low-variance closed form 1/2 - (sqrt(1 + alpha^2/4) - 1)/alpha.

    Written so the small-alpha cancellation never occurs; value lies in
    (0, 1/2) and decreases in alpha.
    """
    if not (math.isfinite(alpha) and alpha > 0.0):
        raise DomainError(f"alpha must be positive, got {alpha}")
    r = 0.25 * alpha * alpha
    # sqrt(1+r) - 1 == r / (sqrt(1+r) + 1)
    return 0.5 - (alpha / 4.0) / (math.sqrt(1.0 + r) + 1.0)


class CaseIIResult(NamedTuple):
    exact: float
    approx: Optional[float]


def theta_case_ii(alpha: float) -> CaseIIResult:
    """High-variance case: exact root of (1 - exp(-alpha*theta))/alpha = 1 - theta.

    The quadratic approximation 1/(1 + sqrt(1 - alpha/2)) is only
    defined for alpha < 2 and is returned as None otherwise.
    """
    if not (math.isfinite(alpha) and alpha > 0.0):
        raise DomainError(f"alpha must be positive, got {alpha}")

    def f(theta: float) -> float:
        return -math.expm1(-alpha * theta) / alpha - (1.0 - theta)

    exact = brentq(f, 0.0, 1.0, xtol=1e-15)
    approx = 1.0 / (1.0 + math.sqrt(1.0 - 0.5 * alpha)) if alpha < 2.0 else None
    return CaseIIResult(exact=exact, approx=approx)
