"""
Sweeps, phase diagrams, boundary searches and Monte-Carlo volumes.

Every grid point is an independent pure evaluation, so work can be fanned
out over processes; results are always returned in grid order.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import models
from .boundaries import (
    FamilyCurve,
    bifurcation_0,
    bifurcation_pi2,
    crossing_point,
    find_roots,
)
from .discord import discord, false_discord
from .entropy import cond_entropy, cond_entropy_d1, cond_entropy_d2_at_0, cond_entropy_d2_at_pi2
from .xmatrix import in_domain

LN2 = math.log(2)
ALL_COLUMNS = (
    "q", "q0", "q_pi2", "q_theta", "theta_opt", "branch", "d2_0", "d2_pi2", "false_discord",
)
# Columns carrying an entropy (or entropy per radian^2) that scale with the unit.
ENTROPY_COLUMNS = {"q", "q0", "q_pi2", "q_theta", "d2_0", "d2_pi2", "false_discord", "s_cond", "ds_cond"}
CHUNK = 1_000_000


@dataclass(frozen=True)
class Axis:
    name: str
    lo: float
    hi: float
    steps: int

    def __post_init__(self):
        if self.steps < 2:
            raise ValueError(f"axis {self.name}: need at least 2 steps")
        if not self.lo < self.hi:
            raise ValueError(f"axis {self.name}: need lo < hi")

    @classmethod
    def parse(cls, text: str) -> "Axis":
        """``name:lo:hi:steps``"""
        try:
            name, lo, hi, steps = text.split(":")
            return cls(name, float(lo), float(hi), int(steps))
        except ValueError as exc:
            raise ValueError(f"bad axis {text!r} (expected name:lo:hi:steps): {exc}") from None

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)


@dataclass(frozen=True)
class SweepSpec:
    model: str
    axes: tuple[Axis, ...]
    fixed: dict = field(default_factory=dict)
    columns: tuple[str, ...] = ALL_COLUMNS
    unit: str = "bits"

    def __post_init__(self):
        if self.model not in models.MODELS:
            raise ValueError(f"unknown model {self.model!r}; choose from {sorted(models.MODELS)}")
        known = models.MODELS[self.model].params
        for ax in self.axes:
            if ax.name not in known:
                raise ValueError(f"{ax.name!r} is not a parameter of {self.model} ({', '.join(known)})")
        bad = set(self.columns) - set(ALL_COLUMNS)
        if bad:
            raise ValueError(f"unknown columns {sorted(bad)}")
        if self.unit not in ("bits", "nats"):
            raise ValueError("unit must be 'bits' or 'nats'")

    def state(self, **point):
        return models.build(self.model, **{**self.fixed, **point})

    def curve(self, axis: Axis | None = None) -> FamilyCurve:
        axis = axis or self.axes[0]
        return FamilyCurve(lambda t: self.state(**{axis.name: t}), axis.lo, axis.hi, axis.name)

    def metadata(self) -> dict:
        return {
            "model": self.model,
            "fixed": self.fixed,
            "axes": [asdict(a) for a in self.axes],
            "columns": list(self.columns),
            "unit": self.unit,
        }


def to_unit(values: dict, unit: str) -> dict:
    if unit == "nats":
        return dict(values)
    return {
        k: (v / LN2 if k in ENTROPY_COLUMNS and isinstance(v, float) else v)
        for k, v in values.items()
    }


def evaluate(state, columns: Sequence[str] = ALL_COLUMNS) -> dict:
    """All requested quantities for one state, in nats."""
    out: dict = {}
    need_discord = set(columns) & {"q", "q0", "q_pi2", "q_theta", "theta_opt", "branch"}
    if need_discord:
        res = discord(state)
        out.update(
            q=res.q, q0=res.q0, q_pi2=res.q_pi2, q_theta=res.q_theta,
            theta_opt=float(res.theta_opt), branch=str(res.branch),
        )
    if "d2_0" in columns:
        out["d2_0"] = float(cond_entropy_d2_at_0(state))
    if "d2_pi2" in columns:
        out["d2_pi2"] = float(cond_entropy_d2_at_pi2(state))
    if "false_discord" in columns:
        out["false_discord"] = false_discord(state)
    return {k: out[k] for k in columns}


def _point(task):
    spec, point = task
    try:
        state = spec.state(**point)
    except ValueError as exc:
        raise ValueError(f"at {point}: {exc}") from None
    row = dict(point)
    row.update(to_unit(evaluate(state, spec.columns), spec.unit))
    return row


def _map(fn, tasks: list, jobs: int) -> list:
    if jobs <= 1 or len(tasks) < 2:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks, chunksize=max(1, len(tasks) // (8 * jobs))))


def grid_points(spec: SweepSpec) -> list[dict]:
    if len(spec.axes) == 1:
        ax = spec.axes[0]
        return [{ax.name: float(t)} for t in ax.values()]
    ax_x, ax_y = spec.axes
    return [
        {ax_x.name: float(x), ax_y.name: float(y)} for y in ax_y.values() for x in ax_x.values()
    ]


def sweep(spec: SweepSpec, jobs: int = 1) -> list[dict]:
    """One row per grid point, ordered by the axes (x fastest)."""
    return _map(_point, [(spec, p) for p in grid_points(spec)], jobs)


def phase_diagram(spec: SweepSpec, jobs: int = 1) -> list[dict]:
    if len(spec.axes) != 2:
        raise ValueError("phase diagram needs exactly two axes")
    diag = SweepSpec(spec.model, spec.axes, spec.fixed, ("branch",), spec.unit)
    return sweep(diag, jobs)


def _row_boundaries(task):
    spec, y = task
    ax_x, ax_y = spec.axes
    curve = FamilyCurve(
        lambda t: spec.state(**{ax_x.name: t, ax_y.name: y}), ax_x.lo, ax_x.hi, ax_x.name
    )

    def gap(t):
        st = curve(t)
        res = discord(st)
        return res.q0 - res.q_pi2

    return {
        ax_y.name: y,
        "t_pi2": find_roots(lambda t: cond_entropy_d2_at_pi2(curve(t)), ax_x.lo, ax_x.hi),
        "t_cross": find_roots(gap, ax_x.lo, ax_x.hi),
        "t_0": find_roots(lambda t: cond_entropy_d2_at_0(curve(t)), ax_x.lo, ax_x.hi),
    }


def refine_rows(spec: SweepSpec, jobs: int = 1) -> list[dict]:
    """Per-row boundary roots along the x axis of a phase diagram."""
    return _map(_row_boundaries, [(spec, float(y)) for y in spec.axes[1].values()], jobs)


def boundaries(spec: SweepSpec) -> dict:
    """Crossing point and both curvature boundaries along the single axis.

    Roots that cannot be bracketed are reported under ``errors``; the others
    are still returned.
    """
    curve = spec.curve()
    out: dict = {"axis": curve.label}
    errors = {}
    for key, fn in (("t_pi2", bifurcation_pi2), ("t_cross", crossing_point), ("t_0", bifurcation_0)):
        try:
            out[key] = fn(curve)
        except ValueError as exc:
            out[key] = None
            errors[key] = str(exc)
    out["errors"] = errors
    return out


def profile(state, points: int = 181) -> list[dict]:
    theta = np.linspace(0.0, math.pi / 2, points)
    s = np.asarray(cond_entropy(state, theta))
    ds = np.asarray(cond_entropy_d1(state, theta))
    return [{"theta": float(t), "s_cond": float(a), "ds_cond": float(b)} for t, a, b in zip(theta, s, ds)]


# ---------------------------------------------------------------------------
# Monte-Carlo volumes


@dataclass
class VolumeReport:
    space: str
    samples: int
    hits: int
    fraction: float
    stderr: float
    seed: int
    breakdown: dict = field(default_factory=dict)


def _volume_chunk(task):
    space, n, seed_seq = task
    rng = np.random.default_rng(seed_seq)
    if space == "hypercube5":
        x = rng.uniform(-1.0, 1.0, size=(5, n))
        return {"hits": int(np.count_nonzero(in_domain(*x)))}
    x = rng.uniform(-1.0, 1.0, size=(3, n))
    inside = models.in_tetrahedron(*x)
    q0_mask = inside & models.bell_subdomain_mask(*x)
    hits = int(np.count_nonzero(inside))
    n_q0 = int(np.count_nonzero(q0_mask))
    return {"hits": hits, "Q0": n_q0, "Qpi/2": hits - n_q0}


def volume(space: str, samples: int, seed: int, jobs: int = 1) -> VolumeReport:
    """Fraction of the enclosing cube occupied by the physical domain.

    ``hypercube5`` samples the five correlators; ``tetrahedron3`` samples the
    three Bell-diagonal correlators and also splits the hits by optimal branch.
    Chunks draw from spawned child seeds, so the result depends only on
    ``seed`` and ``samples``.
    """
    if space not in ("hypercube5", "tetrahedron3"):
        raise ValueError("space must be 'hypercube5' or 'tetrahedron3'")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    sizes = [CHUNK] * (samples // CHUNK) + ([samples % CHUNK] if samples % CHUNK else [])
    children = np.random.SeedSequence(seed).spawn(len(sizes))
    parts = _map(_volume_chunk, [(space, n, s) for n, s in zip(sizes, children)], jobs)
    total: dict = {}
    for part in parts:
        for k, v in part.items():
            total[k] = total.get(k, 0) + v
    hits = total.pop("hits")
    f = hits / samples
    return VolumeReport(
        space=space,
        samples=samples,
        hits=hits,
        fraction=f,
        stderr=math.sqrt(f * (1 - f) / samples),
        seed=seed,
        breakdown={k: v / samples for k, v in total.items()},
    )


# ---------------------------------------------------------------------------
# Output


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.12g}"
    return str(v)


def write_csv(rows: Iterable[dict], columns: Sequence[str], meta: dict | None, fh) -> None:
    if meta is not None:
        fh.write("# xdiscord " + json.dumps(meta, sort_keys=True) + "\n")
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(row.get(c)) for c in columns])


def csv_text(rows, columns, meta=None) -> str:
    buf = io.StringIO()
    write_csv(rows, columns, meta, buf)
    return buf.getvalue()


def _jsonable(v):
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    return v


def json_text(doc) -> str:
    return json.dumps(_jsonable(doc), indent=2, sort_keys=True) + "\n"
