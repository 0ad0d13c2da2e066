"""
Subdomain classification and boundary location along one-parameter families.

Along a family of states ``t -> rho(t)`` three points matter:

* the crossing point where the two endpoint branches are equal,
* the 0-boundary where the curvature of the conditional entropy at
  ``theta = 0`` changes sign,
* the pi/2-boundary, the same at ``theta = pi/2``.

The interior branch is optimal between the two curvature boundaries.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .discord import Branch, DiscordResult, discord, q0, q_pi2
from .entropy import cond_entropy_d2_at_0, cond_entropy_d2_at_pi2
from .xmatrix import RealXState, validate

log = logging.getLogger(__name__)

N_SCAN = 100
PARAM_TOL = 1e-9


class NoSignChangeError(ValueError):
    """The target function keeps one sign over the whole interval."""


class MultipleRootsError(ValueError):
    def __init__(self, message: str, brackets: list[tuple[float, float]]):
        super().__init__(message)
        self.brackets = brackets


@dataclass(frozen=True)
class FamilyCurve:
    evaluator: Callable[[float], RealXState]
    t_lo: float
    t_hi: float
    label: str = "t"

    def __call__(self, t: float) -> RealXState:
        return self.evaluator(t)


@dataclass(frozen=True)
class SubdomainLabel:
    branch: Branch
    d2_0_sign: int
    d2_pi2_sign: int
    result: DiscordResult | None = None

    def __str__(self) -> str:
        return str(self.branch)


def sufficient_sigma_z(state: RealXState) -> bool:
    # Measured qubit is B, so the populations pair as (a - c)(d - b).
    return (state.u + state.v) ** 2 <= (state.a - state.c) * (state.d - state.b)


def sufficient_sigma_x(state: RealXState) -> bool:
    return state.u + state.v >= abs(math.sqrt(state.a * state.d) - math.sqrt(state.b * state.c))


def no_intermediate_region(state: RealXState, tol: float = 1e-12) -> bool:
    return abs(state.a * state.c - state.b * state.d) < tol


def _sgn(x: float) -> int:
    x = float(x)
    return (x > 0) - (x < 0)


def classify(state: RealXState) -> SubdomainLabel:
    """Branch of the discord together with the endpoint curvature signs.

    The minimizer decides; curvature signs are advisory. When both endpoint
    curvatures are negative an interior minimum must exist, and a disagreement
    is logged.
    """
    res = discord(state)
    s0 = _sgn(cond_entropy_d2_at_0(state))
    spi2 = _sgn(cond_entropy_d2_at_pi2(state))
    if s0 < 0 and spi2 < 0 and res.branch is not Branch.QTHETA:
        log.info("curvature signs suggest an interior optimum but the minimizer chose %s", res.branch)
    elif res.branch is Branch.Q0 and s0 < 0:
        log.info("Q0 label with negative curvature at theta=0 (%s)", state)
    elif res.branch is Branch.QPI2 and spi2 < 0:
        log.info("Qpi/2 label with negative curvature at theta=pi/2 (%s)", state)
    return SubdomainLabel(res.branch, s0, spi2, res)


def _bisect(f: Callable[[float], float], lo: float, hi: float, flo: float, tol: float) -> float:
    slo = _sgn(flo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0:
            return mid
        if _sgn(fm) == slo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def find_roots(
    f: Callable[[float], float], lo: float, hi: float, n_scan: int = N_SCAN, tol: float = PARAM_TOL
) -> list[float]:
    """All roots of ``f`` bracketed by a uniform scan, refined by bisection."""
    ts = np.linspace(lo, hi, n_scan)
    vals = [float(f(t)) for t in ts]
    roots = []
    for i in range(n_scan - 1):
        f0, f1 = vals[i], vals[i + 1]
        if f0 == 0:
            roots.append(float(ts[i]))
        elif f0 * f1 < 0:
            roots.append(_bisect(f, float(ts[i]), float(ts[i + 1]), f0, tol))
    if vals[-1] == 0:
        roots.append(float(ts[-1]))
    return roots


def _single_root(f, curve: FamilyCurve, what: str, n_scan: int, tol: float) -> float:
    for t in (curve.t_lo, 0.5 * (curve.t_lo + curve.t_hi), curve.t_hi):
        report = validate(curve(t))
        if not report.valid:
            raise ValueError(f"{curve.label}={t}: {report}")
    roots = find_roots(f, curve.t_lo, curve.t_hi, n_scan, tol)
    if not roots:
        raise NoSignChangeError(
            f"{what}: no sign change for {curve.label} in [{curve.t_lo}, {curve.t_hi}]"
        )
    if len(roots) > 1:
        brackets = [(r - tol, r + tol) for r in roots]
        raise MultipleRootsError(f"{what}: {len(roots)} roots for {curve.label}: {roots}", brackets)
    return roots[0]


def crossing_point(curve: FamilyCurve, n_scan: int = N_SCAN, tol: float = PARAM_TOL) -> float:
    """Parameter value where the sigma_z and sigma_x branches are equal."""

    def gap(t):
        st = curve(t)
        return q0(st) - q_pi2(st)

    return _single_root(gap, curve, "crossing point", n_scan, tol)


def bifurcation_0(curve: FamilyCurve, n_scan: int = N_SCAN, tol: float = PARAM_TOL) -> float:
    return _single_root(lambda t: cond_entropy_d2_at_0(curve(t)), curve, "0-boundary", n_scan, tol)


def bifurcation_pi2(curve: FamilyCurve, n_scan: int = N_SCAN, tol: float = PARAM_TOL) -> float:
    return _single_root(
        lambda t: cond_entropy_d2_at_pi2(curve(t)), curve, "pi/2-boundary", n_scan, tol
    )
