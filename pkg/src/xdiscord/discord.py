"""
Quantum discord of a canonical X state with measurement on qubit B.

The discord is the smallest of three branches: the two endpoint branches
``q0`` (sigma_z measurement) and ``q_pi2`` (sigma_x measurement), which have
closed forms, and the interior branch found by minimizing the conditional
entropy over ``theta`` in ``(0, pi/2)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .entropy import (
    cond_entropy,
    cond_entropy_d1,
    cond_entropy_d2_at_0,
    cond_entropy_d2_at_pi2,
    entropy_AB,
    entropy_B,
    xlogx,
)
from .xmatrix import RealXState

HALF_PI = math.pi / 2
N_GRID = 201
THETA_TOL = 1e-10
SLOPE_ZERO = 1e-12
TIE_TOL = 1e-12


class Branch(str, enum.Enum):
    Q0 = "Q0"
    QTHETA = "Qtheta"
    QPI2 = "Qpi/2"

    def __str__(self) -> str:
        return self.value


class InteriorMinimum(NamedTuple):
    theta: float
    s_cond: float


@dataclass(frozen=True)
class DiscordResult:
    q: float
    branch: Branch
    theta_opt: float
    q0: float
    q_pi2: float
    q_theta: Optional[float]
    n_interior_minima: int


def q0(state: RealXState) -> float:
    a, b, c, d = state.a, state.b, state.c, state.d
    return -entropy_AB(state) - float(xlogx(a) + xlogx(b) + xlogx(c) + xlogx(d))


def q_pi2(state: RealXState) -> float:
    a, b, c, d = state.a, state.b, state.c, state.d
    r = math.sqrt((a + b - c - d) ** 2 + 4 * state.w**2)
    return (
        -entropy_AB(state)
        - float(xlogx(a + c) + xlogx(b + d))
        - float(xlogx((1 + r) / 2) + xlogx(max((1 - r) / 2, 0.0)))
    )


def measurement_discord(state: RealXState, theta):
    return entropy_B(state) - entropy_AB(state) + cond_entropy(state, theta)


def _sign(x: float, zero: float = SLOPE_ZERO) -> int:
    if x > zero:
        return 1
    if x < -zero:
        return -1
    return 0


def _refine(state: RealXState, lo: float, hi: float, tol: float) -> float:
    # Bisection on the slope: negative at lo, positive at hi.
    lo, hi = float(lo), float(hi)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if cond_entropy_d1(state, mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def interior_minima(
    state: RealXState, n_grid: int = N_GRID, tol: float = THETA_TOL
) -> list[InteriorMinimum]:
    """All local minima of the conditional entropy strictly inside ``(0, pi/2)``.

    The slope is sampled on a uniform grid; just inside each endpoint its sign
    is that of the endpoint curvature (the slope itself vanishes there).
    Slopes within ``SLOPE_ZERO`` of zero count as flat, so a constant profile
    has no minima.
    """
    grid = np.linspace(0.0, HALF_PI, n_grid)
    slopes = np.asarray(cond_entropy_d1(state, grid), dtype=float)
    signs = [_sign(s) for s in slopes]
    signs[0] = _sign(cond_entropy_d2_at_0(state))
    signs[-1] = -_sign(cond_entropy_d2_at_pi2(state))

    found = []
    last_neg = None
    for i, sg in enumerate(signs):
        if sg < 0:
            last_neg = i
        elif sg > 0:
            if last_neg is not None:
                # Any flat run between them is bracketed by the outer points.
                theta = _refine(state, grid[last_neg], grid[i], tol)
                if 10 * tol < theta < HALF_PI - 10 * tol:
                    found.append(InteriorMinimum(theta, float(cond_entropy(state, theta))))
            last_neg = None
    return found


def q_theta_min(state: RealXState, n_grid: int = N_GRID) -> Optional[tuple[float, float]]:
    """Deepest interior minimum as ``(theta_opt, discord at theta_opt)``, or ``None``."""
    minima = interior_minima(state, n_grid)
    if not minima:
        return None
    best = min(minima, key=lambda m: m.s_cond)
    return best.theta, float(measurement_discord(state, best.theta))


def discord(state: RealXState, n_grid: int = N_GRID) -> DiscordResult:
    """Quantum discord as the minimum over the three branches.

    Near-ties between the interior branch and an endpoint go to the endpoint.
    """
    v0, vpi2 = q0(state), q_pi2(state)
    minima = interior_minima(state, n_grid)
    if vpi2 < v0:
        q, branch, theta = vpi2, Branch.QPI2, HALF_PI
    else:
        q, branch, theta = v0, Branch.Q0, 0.0
    q_th = None
    if minima:
        best = min(minima, key=lambda m: m.s_cond)
        q_th = float(measurement_discord(state, best.theta))
        if q_th < q - TIE_TOL:
            q, branch, theta = q_th, Branch.QTHETA, best.theta
    return DiscordResult(
        q=q,
        branch=branch,
        theta_opt=theta,
        q0=v0,
        q_pi2=vpi2,
        q_theta=q_th,
        n_interior_minima=len(minima),
    )


def false_discord(state: RealXState) -> float:
    """Two-branch estimate that ignores interior measurement angles."""
    return min(q0(state), q_pi2(state))
