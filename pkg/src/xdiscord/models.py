"""
Parameterized families of X states.

Temperatures are in energy units with Boltzmann's constant set to 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .discord import Branch
from .xmatrix import (
    BlochXState,
    InvalidStateError,
    RealXState,
    ValidityReport,
    bloch_residuals,
    canonicalize,
    from_bloch,
)


@dataclass(frozen=True)
class XYZParams:
    Jx: float
    Jy: float
    Jz: float
    B1: float
    B2: float
    T: float

    def __post_init__(self):
        if not self.T > 0:
            raise ValueError(f"temperature must be positive, got T={self.T}")
        if not all(math.isfinite(x) for x in (self.Jx, self.Jy, self.Jz, self.B1, self.B2)):
            raise ValueError("couplings and fields must be finite")


@dataclass(frozen=True)
class DipolarParams:
    D: float
    B0: float
    gamma1: float
    gamma2: float
    T: float

    def __post_init__(self):
        if self.D == 0:
            raise ValueError("dipolar constant D must be nonzero")
        if not self.T > 0:
            raise ValueError(f"temperature must be positive, got T={self.T}")


def horodecki(epsilon: float, m: float) -> RealXState:
    """Bell state mixed with the two product states |01> and |10>."""
    if not (0 <= epsilon <= 1 and 0 <= m <= 1):
        raise ValueError(f"need 0 <= epsilon, m <= 1 (got epsilon={epsilon}, m={m})")
    h = epsilon / 2
    return RealXState(a=h, b=(1 - epsilon) * m, c=(1 - epsilon) * (1 - m), d=h, u=h, v=0.0)


def phase_flip(s1: float, s2: float, c1: float, c2: float, c3: float, p: float) -> RealXState:
    """Output of a local phase-flip channel of strength ``p`` on both qubits."""
    if not 0 <= p <= 1:
        raise ValueError(f"need 0 <= p <= 1, got p={p}")
    from_bloch(BlochXState(s1, s2, c1, c2, c3))  # rejects invalid initial states
    k = (1 - p) ** 2
    return from_bloch(BlochXState(s1, s2, k * c1, k * c2, c3))


def _block(log_weight: float, beta: float, diag_field: float, coupling: float, radius: float):
    """Unnormalized 2x2 Gibbs block, scaled by exp(-max log weight).

    Returns (upper diagonal, lower diagonal, off-diagonal).
    """
    e = math.exp(-beta * radius)
    # (1 - exp(-beta R)) / R, with the R -> 0 limit beta
    g = -math.expm1(-beta * radius) / radius if radius > 0 else beta
    scale = 0.5 * math.exp(log_weight)
    big = (1 + e) + abs(diag_field) * g
    if radius > 0:
        # (1 + e) - |h| (1 - e) with 1 - |h| written without cancellation
        h = abs(diag_field) / radius
        small = (coupling / radius) * (coupling / (radius + abs(diag_field))) + e * (1 + h)
    else:
        small = 1 + e
    upper, lower = (big, small) if diag_field >= 0 else (small, big)
    return scale * upper, scale * lower, scale * coupling * g


def _xyz_blocks(params: XYZParams):
    beta = 1.0 / params.T
    Jx, Jy, Jz, B1, B2 = params.Jx, params.Jy, params.Jz, params.B1, params.B2
    r1 = math.hypot(B1 + B2, Jx - Jy)
    r2 = math.hypot(B1 - B2, Jx + Jy)
    l1 = beta * (Jz + r1) / 2
    l2 = beta * (-Jz + r2) / 2
    top = max(l1, l2)
    a, d, u = _block(l1 - top, beta, B1 + B2, Jx - Jy, r1)
    b, c, v = _block(l2 - top, beta, B1 - B2, Jx + Jy, r2)
    return a, b, c, d, u, v


def xyz_signed(params: XYZParams) -> tuple[float, float, float, float, float, float]:
    """Gibbs state elements ``(a, b, c, d, u, v)`` with signed off-diagonals."""
    a, b, c, d, u, v = _xyz_blocks(params)
    z = a + b + c + d
    return a / z, b / z, c / z, d / z, u / z, v / z


def xyz_thermal(params: XYZParams) -> RealXState:
    """Thermal state of the XYZ dimer in inhomogeneous longitudinal fields."""
    return canonicalize(RealXState(*xyz_signed(params)))


def xyz_partition(params: XYZParams) -> float:
    beta = 1.0 / params.T
    r1 = math.hypot(params.B1 + params.B2, params.Jx - params.Jy)
    r2 = math.hypot(params.B1 - params.B2, params.Jx + params.Jy)
    return 2 * (
        math.exp(beta * params.Jz / 2) * math.cosh(beta * r1 / 2)
        + math.exp(-beta * params.Jz / 2) * math.cosh(beta * r2 / 2)
    )


def xyz_correlators(params: XYZParams) -> BlochXState:
    """Spin correlators of the thermal state, keeping the signs of c1, c2."""
    beta = 1.0 / params.T
    Jx, Jy, Jz, B1, B2 = params.Jx, params.Jy, params.Jz, params.B1, params.B2
    r1 = math.hypot(B1 + B2, Jx - Jy)
    r2 = math.hypot(B1 - B2, Jx + Jy)
    l1 = beta * (Jz + r1) / 2
    l2 = beta * (-Jz + r2) / 2
    top = max(l1, l2)
    w1, w2 = math.exp(l1 - top), math.exp(l2 - top)
    e1, e2 = math.exp(-beta * r1), math.exp(-beta * r2)
    g1 = -math.expm1(-beta * r1) / r1 if r1 > 0 else beta
    g2 = -math.expm1(-beta * r2) / r2 if r2 > 0 else beta
    # 2 e^{+-beta Jz/2} sinh(beta R/2) X/R and cosh terms, rescaled by e^{-top}
    z = w1 * (1 + e1) + w2 * (1 + e2)
    sh1, sh2 = w1 * g1, w2 * g2
    return BlochXState(
        s1=((B1 + B2) * sh1 + (B1 - B2) * sh2) / z,
        s2=((B1 + B2) * sh1 - (B1 - B2) * sh2) / z,
        c1=((Jx - Jy) * sh1 + (Jx + Jy) * sh2) / z,
        c2=(-(Jx - Jy) * sh1 + (Jx + Jy) * sh2) / z,
        c3=(w1 * (1 + e1) - w2 * (1 + e2)) / z,
    )


def dipolar_xyz(params: DipolarParams) -> XYZParams:
    D = params.D
    return XYZParams(
        Jx=-D, Jy=-D, Jz=2 * D, B1=params.gamma1 * params.B0, B2=params.gamma2 * params.B0, T=params.T
    )


def dipolar(params: DipolarParams) -> RealXState:
    """Heteronuclear dipolar dimer stretched along the field axis."""
    return xyz_thermal(dipolar_xyz(params))


def dipolar_fields(D: float, B1: float, B2: float, T: float) -> RealXState:
    """Dipolar dimer addressed directly by its two normalized Zeeman fields."""
    if D == 0 or not T > 0:
        raise ValueError("need D != 0 and T > 0")
    return xyz_thermal(XYZParams(Jx=-D, Jy=-D, Jz=2 * D, B1=B1, B2=B2, T=T))


def in_tetrahedron(c1, c2, c3, tol: float = 0.0):
    """Membership of Bell-diagonal correlators in the physical tetrahedron."""
    return (np.abs(c1 + c2) <= 1 - c3 + tol) & (np.abs(c1 - c2) <= 1 + c3 + tol)


def bell_diagonal(c1: float, c2: float, c3: float) -> RealXState:
    if not in_tetrahedron(c1, c2, c3, tol=1e-12):
        r1, r2 = bloch_residuals(0.0, 0.0, c1, c2, c3)
        report = ValidityReport(
            violations={
                k: r for k, r in (("|c1+c2| <= 1-c3", r1), ("|c1-c2| <= 1+c3", r2)) if r < 0
            }
            or {"tetrahedron": min(r1, r2)}
        )
        raise InvalidStateError(report)
    return RealXState(
        a=(1 + c3) / 4,
        b=(1 - c3) / 4,
        c=(1 - c3) / 4,
        d=(1 + c3) / 4,
        u=abs(c1 - c2) / 4,
        v=abs(c1 + c2) / 4,
    )


def bell_subdomain_mask(c1, c2, c3):
    """Vectorized: True where sigma_z measurement is optimal."""
    return 2 * np.abs(c3) >= np.abs(c1 + c2) + np.abs(c1 - c2)


def bell_subdomain(c1: float, c2: float, c3: float) -> Branch:
    """Optimal branch for a Bell-diagonal state; never the interior one."""
    bell_diagonal(c1, c2, c3)
    return Branch.Q0 if bell_subdomain_mask(c1, c2, c3) else Branch.QPI2


# ---------------------------------------------------------------------------
# Registry used by the sweep engine and the command line.


@dataclass(frozen=True)
class Model:
    name: str
    params: tuple[str, ...]
    defaults: dict
    build: Callable[..., RealXState]


def _build_dipolar(D, B0, gamma1, gamma2, T, B1=None, B2=None):
    if B1 is not None or B2 is not None:
        B1 = gamma1 * B0 if B1 is None else B1
        B2 = gamma2 * B0 if B2 is None else B2
        return dipolar_fields(D, B1, B2, T)
    return dipolar(DipolarParams(D=D, B0=B0, gamma1=gamma1, gamma2=gamma2, T=T))


MODELS: dict[str, Model] = {
    "horodecki": Model(
        "horodecki", ("epsilon", "m"), {"epsilon": 0.228, "m": 0.1012}, horodecki
    ),
    "phase-flip": Model(
        "phase-flip",
        ("s1", "s2", "c1", "c2", "c3", "p"),
        {"s1": 0.65, "s2": 0.65, "c1": 0.249, "c2": 0.249, "c3": 0.5, "p": 0.0},
        phase_flip,
    ),
    "xyz": Model(
        "xyz",
        ("Jx", "Jy", "Jz", "B1", "B2", "T"),
        {"Jx": 1.0, "Jy": 1.0, "Jz": 1.02, "B1": 1.0, "B2": 1.0, "T": 0.8},
        lambda **kw: xyz_thermal(XYZParams(**kw)),
    ),
    "dipolar": Model(
        "dipolar",
        ("D", "B0", "gamma1", "gamma2", "T", "B1", "B2"),
        {"D": 1.0, "B0": 0.0, "gamma1": 1.0, "gamma2": 4.0, "T": 1.0, "B1": None, "B2": None},
        _build_dipolar,
    ),
    "bell": Model(
        "bell", ("c1", "c2", "c3"), {"c1": 0.3, "c2": 0.25, "c3": 0.0}, bell_diagonal
    ),
}


def build(model: str, **params) -> RealXState:
    spec = MODELS[model]
    unknown = set(params) - set(spec.params)
    if unknown:
        raise ValueError(f"unknown parameters for {model}: {sorted(unknown)}")
    return spec.build(**{**spec.defaults, **params})
