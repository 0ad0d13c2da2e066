"""
X-state representations of a two-qubit density matrix.

Three coordinate systems are used:

* ``ComplexXState``: the general seven-parameter X matrix with complex
  anti-diagonal entries ``u_re + i u_im`` (outer) and ``v_re + i v_im`` (inner).
* ``RealXState``: the canonical real non-negative form reached by local
  z-rotations. Every computation downstream works on this form.
* ``BlochXState``: spin correlators ``(s1, s2, c1, c2, c3)``.

Basis ordering is ``|00>, |01>, |10>, |11>``; qubit A is the first factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

TOL = 1e-9

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


class InvalidStateError(ValueError):
    """Raised when parameters do not describe a physical X state."""

    def __init__(self, report: "ValidityReport"):
        self.report = report
        super().__init__(str(report))


@dataclass(frozen=True)
class ComplexXState:
    a: float
    b: float
    c: float
    d: float
    u_re: float = 0.0
    u_im: float = 0.0
    v_re: float = 0.0
    v_im: float = 0.0

    def matrix(self) -> np.ndarray:
        u = complex(self.u_re, self.u_im)
        v = complex(self.v_re, self.v_im)
        return np.array(
            [
                [self.a, 0, 0, u],
                [0, self.b, v, 0],
                [0, v.conjugate(), self.c, 0],
                [u.conjugate(), 0, 0, self.d],
            ],
            dtype=complex,
        )


@dataclass(frozen=True)
class RealXState:
    a: float
    b: float
    c: float
    d: float
    u: float = 0.0
    v: float = 0.0

    def matrix(self) -> np.ndarray:
        a, b, c, d, u, v = self.a, self.b, self.c, self.d, self.u, self.v
        return np.array(
            [[a, 0, 0, u], [0, b, v, 0], [0, v, c, 0], [u, 0, 0, d]], dtype=float
        )

    def as_tuple(self) -> tuple[float, float, float, float, float, float]:
        return (self.a, self.b, self.c, self.d, self.u, self.v)

    @property
    def w(self) -> float:
        return abs(self.u) + abs(self.v)


@dataclass(frozen=True)
class BlochXState:
    s1: float
    s2: float
    c1: float
    c2: float
    c3: float

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.s1, self.s2, self.c1, self.c2, self.c3)


@dataclass
class ValidityReport:
    """Outcome of a domain check.

    ``violations`` maps constraint name to its (negative) residual beyond
    tolerance; ``adjustments`` lists within-tolerance fixes that
    :func:`canonicalize` applies.
    """

    violations: dict[str, float] = field(default_factory=dict)
    adjustments: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid

    def __str__(self) -> str:
        if self.valid:
            return "valid" + (f" ({'; '.join(self.adjustments)})" if self.adjustments else "")
        parts = [f"{name}: residual {res:.6g}" for name, res in self.violations.items()]
        return "invalid state: " + "; ".join(parts)


def _check(diag, off_outer2, off_inner2, tol=TOL) -> ValidityReport:
    a, b, c, d = diag
    report = ValidityReport()
    for name, x in zip("abcd", diag):
        if x < -tol:
            report.violations[f"{name} >= 0"] = x
        elif x < 0:
            report.adjustments.append(f"{name}={x:.3g} clamped to 0")
    trace = a + b + c + d
    if abs(trace - 1) > tol:
        report.violations["a+b+c+d = 1"] = -abs(trace - 1)
    elif trace != 1:
        report.adjustments.append(f"trace {trace!r} renormalized")
    res = a * d - off_outer2
    if res < -tol:
        report.violations["a*d >= |u|^2"] = res
    elif res < 0:
        report.adjustments.append(f"|u| reduced to sqrt(a*d) (residual {res:.3g})")
    res = b * c - off_inner2
    if res < -tol:
        report.violations["b*c >= |v|^2"] = res
    elif res < 0:
        report.adjustments.append(f"|v| reduced to sqrt(b*c) (residual {res:.3g})")
    return report


def validate(state: RealXState | ComplexXState, tol: float = TOL) -> ValidityReport:
    """Check membership in the physical domain; never raises."""
    if isinstance(state, ComplexXState):
        outer2 = state.u_re**2 + state.u_im**2
        inner2 = state.v_re**2 + state.v_im**2
    else:
        outer2, inner2 = state.u**2, state.v**2
    report = _check((state.a, state.b, state.c, state.d), outer2, inner2, tol)
    if isinstance(state, RealXState):
        # Negative off-diagonals are physical; canonicalize takes the modulus.
        report.adjustments += [f"{n} < 0 replaced by |{n}|" for n in "uv" if getattr(state, n) < 0]
    return report


def _sanitized(a, b, c, d, u, v) -> RealXState:
    a, b, c, d = (max(x, 0.0) for x in (a, b, c, d))
    t = a + b + c + d
    a, b, c, d = a / t, b / t, c / t, d / t
    u = min(abs(u), math.sqrt(a * d))
    v = min(abs(v), math.sqrt(b * c))
    return RealXState(a, b, c, d, u, v)


def canonicalize(state: ComplexXState | RealXState, tol: float = TOL) -> RealXState:
    """Map any X state to its real non-negative local-unitary representative.

    The phase rotation followed by the sign flips amounts to replacing each
    anti-diagonal entry by its modulus.
    """
    report = validate(state, tol)
    if not report.valid:
        raise InvalidStateError(report)
    if isinstance(state, ComplexXState):
        u = math.hypot(state.u_re, state.u_im)
        v = math.hypot(state.v_re, state.v_im)
    else:
        u, v = abs(state.u), abs(state.v)
    if not report.adjustments:
        return RealXState(state.a, state.b, state.c, state.d, u, v)
    return _sanitized(state.a, state.b, state.c, state.d, u, v)


def phase_unitary(phi1: float, phi2: float) -> np.ndarray:
    """``exp(-i phi1 sz / 2) (x) exp(-i phi2 sz / 2)``."""
    u1 = np.diag([np.exp(-0.5j * phi1), np.exp(0.5j * phi1)])
    u2 = np.diag([np.exp(-0.5j * phi2), np.exp(0.5j * phi2)])
    return np.kron(u1, u2)


def conjugate(state: ComplexXState, unitary: np.ndarray) -> ComplexXState:
    """Apply ``U rho U^dagger`` for a diagonal local unitary, staying in X form."""
    m = unitary @ state.matrix() @ unitary.conj().T
    return ComplexXState(
        m[0, 0].real, m[1, 1].real, m[2, 2].real, m[3, 3].real,
        m[0, 3].real, m[0, 3].imag, m[1, 2].real, m[1, 2].imag,
    )


def to_bloch(state: RealXState) -> BlochXState:
    a, b, c, d, u, v = state.as_tuple()
    return BlochXState(
        s1=a + b - c - d,
        s2=a - b + c - d,
        c1=2 * (v + u),
        c2=2 * (v - u),
        c3=a - b - c + d,
    )


def bloch_residuals(s1, s2, c1, c2, c3):
    """Slack of the two cone conditions; both must be >= 0 inside the domain.

    Works elementwise on arrays.
    """
    r1 = (1 - c3) ** 2 - (s1 - s2) ** 2 - (c1 + c2) ** 2
    r2 = (1 + c3) ** 2 - (s1 + s2) ** 2 - (c1 - c2) ** 2
    return r1, r2


def cylinder_residuals(s1, s2, c1, c2, c3):
    """Same two conditions after rotating by pi/4 about the c3 axis."""
    s1r = (s1 + s2) / math.sqrt(2)
    s2r = (-s1 + s2) / math.sqrt(2)
    c1r = (c1 + c2) / math.sqrt(2)
    c2r = (-c1 + c2) / math.sqrt(2)
    r1 = (c3 - 1) ** 2 / 2 - s2r**2 - c1r**2
    r2 = (c3 + 1) ** 2 / 2 - s1r**2 - c2r**2
    return r1, r2


def in_domain(s1, s2, c1, c2, c3, tol: float = 0.0):
    r1, r2 = bloch_residuals(s1, s2, c1, c2, c3)
    return (r1 >= -tol) & (r2 >= -tol)


def from_bloch(state: BlochXState, tol: float = TOL) -> RealXState:
    s1, s2, c1, c2, c3 = state.as_tuple()
    r1, r2 = bloch_residuals(s1, s2, c1, c2, c3)
    if r1 < -tol or r2 < -tol:
        report = ValidityReport()
        if r1 < -tol:
            report.violations["(1-c3)^2 >= (s1-s2)^2 + (c1+c2)^2"] = r1
        if r2 < -tol:
            report.violations["(1+c3)^2 >= (s1+s2)^2 + (c1-c2)^2"] = r2
        raise InvalidStateError(report)
    return canonicalize(
        RealXState(
            a=(1 + s1 + s2 + c3) / 4,
            b=(1 + s1 - s2 - c3) / 4,
            c=(1 - s1 + s2 - c3) / 4,
            d=(1 - s1 - s2 + c3) / 4,
            u=abs(c1 - c2) / 4,
            v=abs(c1 + c2) / 4,
        ),
        tol,
    )


def swap_parties(state: RealXState) -> RealXState:
    """Exchange qubits A and B, so that measuring B models measuring A."""
    return replace(state, b=state.c, c=state.b)


def state_from_dict(doc: dict) -> RealXState:
    """Parse a JSON state document (matrix or Bloch form) into canonical form."""
    matrix_keys = {"a", "b", "c", "d", "u_re", "u_im", "v_re", "v_im"}
    bloch_keys = {"s1", "s2", "c1", "c2", "c3"}
    keys = set(doc)
    has_matrix = bool(keys & matrix_keys)
    has_bloch = bool(keys & bloch_keys)
    if has_matrix == has_bloch:
        raise ValueError("state document must use exactly one of the matrix or Bloch forms")
    if has_matrix:
        unknown = keys - matrix_keys
        if unknown or not {"a", "b", "c", "d"} <= keys:
            raise ValueError(f"matrix form needs a, b, c, d (got {sorted(keys)})")
        return canonicalize(ComplexXState(**{k: float(x) for k, x in doc.items()}))
    if keys != bloch_keys:
        raise ValueError(f"Bloch form needs exactly {sorted(bloch_keys)} (got {sorted(keys)})")
    return from_bloch(BlochXState(**{k: float(x) for k, x in doc.items()}))


def pauli_expectations(rho: np.ndarray) -> BlochXState:
    """Correlators from traces against Pauli products; independent of the closed form."""
    ev = lambda op: float(np.real(np.trace(rho @ op)))  # noqa: E731
    return BlochXState(
        s1=ev(np.kron(PAULI_Z, PAULI_I)),
        s2=ev(np.kron(PAULI_I, PAULI_Z)),
        c1=ev(np.kron(PAULI_X, PAULI_X)),
        c2=ev(np.kron(PAULI_Y, PAULI_Y)),
        c3=ev(np.kron(PAULI_Z, PAULI_Z)),
    )


# The example state with an interior optimal measurement angle.
TILTED_STATE = RealXState(a=0.0783, b=0.125, c=0.125, d=0.6717, u=0.0, v=0.100)
MAXIMALLY_MIXED = RealXState(0.25, 0.25, 0.25, 0.25, 0.0, 0.0)
BELL_PHI_PLUS = RealXState(0.5, 0.0, 0.0, 0.5, 0.5, 0.0)
