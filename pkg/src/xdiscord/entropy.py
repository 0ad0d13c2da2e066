"""
Entropies of a canonical X state, in nats.

``cond_entropy`` is the post-measurement entropy of qubit A after a projective
measurement of qubit B along the direction with polar angle ``theta`` in the
x-z plane (azimuth 0, which is optimal when ``u, v >= 0``).
``cond_entropy_oracle`` computes the same quantity from the definition with
explicit matrices and an arbitrary azimuth, and is kept independent of the
closed forms on purpose.
"""

from __future__ import annotations

import math

import numpy as np

from .xmatrix import PAULI_I, PAULI_X, PAULI_Y, PAULI_Z, RealXState

CLAMP = 1e-12
_LIMIT_GAP = 1e-8
_ZERO_COEF = 1e-15


class Divergent(float):
    """An infinite second derivative, kept distinguishable from ordinary floats.

    It compares and orders like the signed infinity it wraps, so sign-based
    root bracketing keeps working.
    """

    def __new__(cls, sign: float):
        return super().__new__(cls, math.copysign(math.inf, sign))

    def __repr__(self) -> str:
        return f"Divergent({'+' if self > 0 else '-'}inf)"


def is_divergent(x) -> bool:
    return isinstance(x, Divergent)


def xlogx(x):
    """``x ln x`` with ``0 ln 0 = 0``; tiny negative inputs are treated as 0."""
    x = np.asarray(x, dtype=float)
    pos = x > 0
    out = np.zeros_like(x)
    np.multiply(x, np.log(x, where=pos, out=np.ones_like(x)), out=out, where=pos)
    return out if out.ndim else float(out)


def shannon(probs) -> float:
    return -float(np.sum(xlogx(np.asarray(probs, dtype=float))))


def entropy_B(state: RealXState) -> float:
    a, b, c, d = state.a, state.b, state.c, state.d
    return -float(xlogx(a + c) + xlogx(b + d))


def _block_eigs(x: float, y: float, off: float) -> tuple[float, float]:
    root = math.sqrt((x - y) ** 2 + 4 * off * off)
    return (x + y + root) / 2, (x + y - root) / 2


def total_eigenvalues(state: RealXState) -> tuple[float, ...]:
    return _block_eigs(state.a, state.d, state.u) + _block_eigs(state.b, state.c, state.v)


def entropy_AB(state: RealXState) -> float:
    return shannon(np.clip(total_eigenvalues(state), 0.0, None))


def _parts(state: RealXState):
    a, b, c, d = state.a, state.b, state.c, state.d
    w = state.w
    return a + b - c - d, a - b + c - d, a - b - c + d, w


def cond_terms(state: RealXState, theta):
    """Outcome probabilities and the four conditional eigenvalue weights."""
    s1, s2, c3, w = _parts(state)
    cos, sin = np.cos(theta), np.sin(theta)
    big1 = 0.5 * (1 + s2 * cos)
    big2 = 0.5 * (1 - s2 * cos)
    r12 = np.sqrt((s1 + c3 * cos) ** 2 + 4 * w * w * sin * sin)
    r34 = np.sqrt((s1 - c3 * cos) ** 2 + 4 * w * w * sin * sin)
    lam = (
        0.25 * (1 + s2 * cos + r12),
        0.25 * (1 + s2 * cos - r12),
        0.25 * (1 - s2 * cos + r34),
        0.25 * (1 - s2 * cos - r34),
    )
    # Round-off can push the smaller weights slightly negative.
    return big1, big2, tuple(np.maximum(x, 0.0) for x in lam)


def cond_entropy(state: RealXState, theta):
    """Conditional entropy of A given a measurement on B at polar angle ``theta``."""
    big1, big2, lam = cond_terms(state, theta)
    out = xlogx(big1) + xlogx(big2) - sum(xlogx(x) for x in lam)
    return out


def _dlogterm(lam, dlam):
    """``lam' (1 + ln lam)``, vanishing where ``lam`` does."""
    lam = np.asarray(lam, dtype=float)
    pos = lam > 0
    out = np.zeros(np.broadcast(lam, dlam).shape)
    logs = np.log(lam, where=pos, out=np.zeros_like(lam))
    np.copyto(out, np.asarray(dlam) * (1 + logs), where=np.broadcast_to(pos, out.shape))
    return out


def _safe_ratio(num, den):
    num, den = np.broadcast_arrays(np.asarray(num, dtype=float), np.asarray(den, dtype=float))
    out = np.zeros(num.shape)
    np.divide(num, den, out=out, where=den > 0)
    return out


def cond_entropy_d1(state: RealXState, theta):
    """First derivative of :func:`cond_entropy` with respect to ``theta``.

    Both endpoints are stationary and return exactly 0.
    """
    theta_arr = np.asarray(theta, dtype=float)
    s1, s2, c3, w = _parts(state)
    cos, sin = np.cos(theta_arr), np.sin(theta_arr)
    sin2 = np.sin(2 * theta_arr)
    big1, big2, lam = cond_terms(state, theta_arr)
    dbig1 = -0.5 * s2 * sin
    dbig2 = 0.5 * s2 * sin

    x12 = s1 + c3 * cos
    x34 = s1 - c3 * cos
    r12 = np.sqrt(x12**2 + 4 * w * w * sin * sin)
    r34 = np.sqrt(x34**2 + 4 * w * w * sin * sin)
    g12 = _safe_ratio(x12 * (-c3 * sin) + 2 * w * w * sin2, r12)
    g34 = _safe_ratio(x34 * (c3 * sin) + 2 * w * w * sin2, r34)
    dlam = (
        0.25 * (-s2 * sin + g12),
        0.25 * (-s2 * sin - g12),
        0.25 * (s2 * sin + g34),
        0.25 * (s2 * sin - g34),
    )
    out = _dlogterm(big1, dbig1) + _dlogterm(big2, dbig2)
    for lm, dl in zip(lam, dlam):
        out = out - _dlogterm(lm, dl)
    ends = (theta_arr <= 0) | (theta_arr >= math.pi / 2)
    out = np.where(ends, 0.0, out)
    return out if out.ndim else float(out)


def cond_entropy_d2_at_0(state: RealXState) -> float:
    """Second derivative of the conditional entropy at ``theta = 0``.

    The closed form is a linear combination of logarithms of ``a, b, c, d``
    and of the outcome probabilities. A vanishing population with a nonzero
    coefficient yields a :class:`Divergent` value.
    """
    a, b, c, d = state.a, state.b, state.c, state.d
    s1, s2, c3, w = _parts(state)
    w2 = w * w
    coef = {"a": (s2 + c3) / 4, "c": (s2 - c3) / 4, "b": (-s2 - c3) / 4, "d": (-s2 + c3) / 4}
    pops = {"a": a, "b": b, "c": c, "d": d}
    finite = 0.0
    for x, y in (("a", "c"), ("b", "d")):
        px, py = pops[x], pops[y]
        if w2 == 0:
            continue
        if abs(px - py) < _LIMIT_GAP:
            if px + py == 0:
                continue
            finite -= 0.5 * w2 * 2.0 / (px + py)
        else:
            coef[x] -= 0.5 * w2 / (px - py)
            coef[y] += 0.5 * w2 / (px - py)
    blocks = {"a+c": (a + c, -s2 / 2), "b+d": (b + d, s2 / 2)}
    divergence = 0.0
    for name, p in pops.items():
        k = coef[name]
        if abs(k) <= _ZERO_COEF:
            continue
        if p > 0:
            finite += k * math.log(p)
        else:
            divergence -= k
    for p, k in blocks.values():
        if abs(k) <= _ZERO_COEF:
            continue
        if p > 0:
            finite += k * math.log(p)
        else:
            divergence -= k
    if divergence != 0.0:
        return Divergent(divergence)
    return finite


def cond_entropy_d2_at_pi2(state: RealXState) -> float:
    """Second derivative of the conditional entropy at ``theta = pi/2``."""
    a, b, c, d = state.a, state.b, state.c, state.d
    s1, s2, c3, w = _parts(state)
    w2 = w * w
    r = math.sqrt(s1 * s1 + 4 * w2)
    if r == 0.0:
        return -c3 * c3
    cross = s1 * c3 / r
    lead = 8 * w2 / r**2 * ((a - c) * (b - d) + w2)
    plus = (s2 + cross) ** 2 / (2 * (1 + r))
    minus_num = (s2 - cross) ** 2
    gap = 1.0 - r
    if gap <= CLAMP:
        diverge = 0.0
        if minus_num > CLAMP:
            diverge = -1.0
        elif abs(lead) > CLAMP:
            diverge = lead
        if diverge:
            return Divergent(diverge)
        return s2 * s2 - plus
    # lead * ln((1+r)/(1-r)) / r, written with atanh for accuracy at small r
    return lead * 2 * math.atanh(r) / r + s2 * s2 - plus - minus_num / (2 * gap)


# ---------------------------------------------------------------------------
# Oracle: conditional entropy from the definition of a projective measurement.


def _ptrace_B(rho_ab: np.ndarray) -> np.ndarray:
    return np.einsum("...ijkj->...ik", rho_ab.reshape(rho_ab.shape[:-2] + (2, 2, 2, 2)))


def _entropy_2x2(m: np.ndarray) -> np.ndarray:
    tr = np.real(m[..., 0, 0] + m[..., 1, 1])
    det = np.real(m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0])
    disc = np.sqrt(np.clip(tr * tr / 4 - det, 0.0, None))
    e1 = np.clip(tr / 2 + disc, 0.0, None)
    e2 = np.clip(tr / 2 - disc, 0.0, None)
    return -(xlogx(e1) + xlogx(e2))


def cond_entropy_oracle(state: RealXState, theta, phi=0.0):
    """Average entropy of A after projecting B onto ``(1 +/- n.sigma)/2``.

    ``n = (sin t cos f, sin t sin f, cos t)``. Accepts broadcastable arrays.
    Returns ``sum_k p_k S(rho_A|k)`` in nats.
    """
    theta, phi = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
    rho = state.matrix().astype(complex)
    nx = np.sin(theta) * np.cos(phi)
    ny = np.sin(theta) * np.sin(phi)
    nz = np.cos(theta)
    n_sigma = (
        nx[..., None, None] * PAULI_X + ny[..., None, None] * PAULI_Y + nz[..., None, None] * PAULI_Z
    )
    total = np.zeros(theta.shape)
    for sign in (1.0, -1.0):
        proj = 0.5 * (PAULI_I + sign * n_sigma)
        op = np.einsum("ij,...kl->...ikjl", PAULI_I, proj).reshape(theta.shape + (4, 4))
        unnorm = _ptrace_B(op @ rho @ op)
        p = np.real(unnorm[..., 0, 0] + unnorm[..., 1, 1])
        safe = np.where(p > 0, p, 1.0)
        cond = unnorm / safe[..., None, None]
        total = total + np.where(p > 0, p * _entropy_2x2(cond), 0.0)
    return total if total.ndim else float(total)


def entropy_AB_oracle(state: RealXState) -> float:
    eig = np.linalg.eigvalsh(state.matrix())
    return shannon(np.clip(eig, 0.0, None))
