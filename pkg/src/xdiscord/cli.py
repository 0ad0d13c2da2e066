"""Command line interface: ``xdiscord <command> [options]``."""

from __future__ import annotations

import argparse
import contextlib
import json
import logging
import sys

from . import models, scan
from .entropy import cond_entropy_d2_at_0, cond_entropy_d2_at_pi2
from .discord import discord
from .xmatrix import InvalidStateError, state_from_dict

MATRIX_FLAGS = ("a", "b", "c", "d", "u_re", "u_im", "v_re", "v_im")
BLOCH_FLAGS = ("s1", "s2", "c1", "c2", "c3")
MODEL_FLAGS = ("epsilon", "m", "p", "Jx", "Jy", "Jz", "B1", "B2", "T", "D", "B0", "gamma1", "gamma2")


class UsageError(Exception):
    pass


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--unit", choices=("bits", "nats"), default="bits")
    p.add_argument("--out", default="-", help="output path (default: standard output)")
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=None)


def _state_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("state input")
    g.add_argument("--state", metavar="JSON", help="state document (matrix or Bloch form)")
    for name in MATRIX_FLAGS:
        g.add_argument("--" + name.replace("_", "-"), dest=name, type=float)
    for name in BLOCH_FLAGS:
        g.add_argument("--" + name, dest=name, type=float)


def _model_flags(p: argparse.ArgumentParser, required: bool = False, bloch: bool = True) -> None:
    g = p.add_argument_group("model")
    g.add_argument("--model", choices=sorted(models.MODELS), required=required)
    g.add_argument("--params", metavar="JSON", help="model parameters as a JSON document")
    for name in MODEL_FLAGS + (BLOCH_FLAGS if bloch else ()):
        g.add_argument("--" + name, dest=name, type=float)


def _model_params(args) -> dict:
    params = {}
    if args.params:
        with open(args.params) as fh:
            params.update(json.load(fh))
    known = models.MODELS[args.model].params
    for name in MODEL_FLAGS + BLOCH_FLAGS:
        value = getattr(args, name, None)
        if value is not None:
            if name not in known:
                raise UsageError(f"--{name} is not a parameter of model {args.model}")
            params[name] = value
    return params


def _resolve_state(args):
    if getattr(args, "model", None):
        return models.build(args.model, **_model_params(args))
    stray = [n for n in MODEL_FLAGS if getattr(args, n, None) is not None]
    if stray or args.params:
        raise UsageError(f"model parameters given without --model: {stray or ['--params']}")
    if args.state:
        with open(args.state) as fh:
            return state_from_dict(json.load(fh))
    doc = {k: getattr(args, k) for k in MATRIX_FLAGS + BLOCH_FLAGS if getattr(args, k) is not None}
    if not doc:
        raise UsageError("no state given: use --state, inline matrix/Bloch flags, or --model")
    if any(k in doc for k in MATRIX_FLAGS):
        for k in ("u_re", "u_im", "v_re", "v_im"):
            doc.setdefault(k, 0.0)
    return state_from_dict(doc)


def _spec(args, n_axes: int) -> scan.SweepSpec:
    if not args.axis or len(args.axis) != n_axes:
        raise UsageError(f"need exactly {n_axes} --axis name:lo:hi:steps option(s)")
    columns = tuple(args.columns.split(",")) if getattr(args, "columns", None) else scan.ALL_COLUMNS
    return scan.SweepSpec(
        model=args.model,
        axes=tuple(scan.Axis.parse(a) for a in args.axis),
        fixed=_model_params(args),
        columns=columns,
        unit=args.unit,
    )


@contextlib.contextmanager
def _output(path: str):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def cmd_discord(args) -> None:
    state = _resolve_state(args)
    res = discord(state)
    row = scan.to_unit(
        {
            "q": res.q,
            "branch": str(res.branch),
            "theta_opt": float(res.theta_opt),
            "q0": res.q0,
            "q_pi2": res.q_pi2,
            "q_theta": res.q_theta,
            "n_interior_minima": res.n_interior_minima,
            "d2_0": float(cond_entropy_d2_at_0(state)),
            "d2_pi2": float(cond_entropy_d2_at_pi2(state)),
        },
        args.unit,
    )
    row["unit"] = args.unit
    row["state"] = dict(zip("abcduv", state.as_tuple()))
    with _output(args.out) as fh:
        if args.format == "csv":
            cols = [k for k in row if k != "state"]
            scan.write_csv([row], cols, None, fh)
        else:
            fh.write(scan.json_text(row))


def cmd_profile(args) -> None:
    state = _resolve_state(args)
    rows = [scan.to_unit(r, args.unit) for r in scan.profile(state, args.points)]
    meta = {"command": "profile", "state": dict(zip("abcduv", state.as_tuple())), "unit": args.unit}
    with _output(args.out) as fh:
        if args.format == "json":
            fh.write(scan.json_text({"meta": meta, "rows": rows}))
        else:
            scan.write_csv(rows, ("theta", "s_cond", "ds_cond"), meta, fh)


def cmd_sweep(args) -> None:
    spec = _spec(args, 1)
    rows = scan.sweep(spec, args.jobs)
    cols = (spec.axes[0].name,) + spec.columns
    with _output(args.out) as fh:
        if args.format == "json":
            fh.write(scan.json_text({"meta": spec.metadata(), "rows": rows}))
        else:
            scan.write_csv(rows, cols, {"command": "sweep", **spec.metadata()}, fh)


def cmd_boundaries(args) -> int:
    spec = _spec(args, 1)
    doc = scan.boundaries(spec)
    doc["meta"] = spec.metadata()
    with _output(args.out) as fh:
        if args.format == "csv":
            scan.write_csv([doc], ("axis", "t_pi2", "t_cross", "t_0"), {"command": "boundaries", **spec.metadata()}, fh)
        else:
            fh.write(scan.json_text(doc))
    for key, msg in doc["errors"].items():
        print(f"{key}: {msg}", file=sys.stderr)
    return 1 if doc["errors"] else 0


def cmd_phase_diagram(args) -> None:
    spec = _spec(args, 2)
    spec = scan.SweepSpec(spec.model, spec.axes, spec.fixed, ("branch",), spec.unit)
    rows = scan.phase_diagram(spec, args.jobs)
    x, y = (a.name for a in spec.axes)
    meta = {"command": "phase-diagram", **spec.metadata()}
    with _output(args.out) as fh:
        if args.format == "json":
            fh.write(scan.json_text({"meta": meta, "rows": rows}))
        else:
            scan.write_csv(rows, (x, y, "branch"), meta, fh)
    if args.refine_out:
        refined = scan.refine_rows(spec, args.jobs)
        flat = [
            {y: r[y], "kind": kind, x: t}
            for r in refined
            for kind in ("t_pi2", "t_cross", "t_0")
            for t in r[kind]
        ]
        with _output(args.refine_out) as fh:
            scan.write_csv(flat, (y, "kind", x), {"command": "phase-diagram --refine", **spec.metadata()}, fh)


def cmd_volume(args) -> None:
    seed = 0 if args.seed is None else args.seed
    rep = scan.volume(args.space, args.samples, seed, args.jobs)
    doc = {
        "space": rep.space,
        "samples": rep.samples,
        "hits": rep.hits,
        "fraction": rep.fraction,
        "stderr": rep.stderr,
        "seed": rep.seed,
        "breakdown": rep.breakdown,
    }
    with _output(args.out) as fh:
        if args.format == "csv":
            row = {k: v for k, v in doc.items() if k != "breakdown"}
            row.update({f"fraction_{k}": v for k, v in rep.breakdown.items()})
            scan.write_csv([row], list(row), None, fh)
        else:
            fh.write(scan.json_text(doc))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xdiscord", description="Quantum discord of two-qubit X states", allow_abbrev=False
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("discord", help="discord of a single state", allow_abbrev=False)
    _common(p)
    _state_flags(p)
    _model_flags(p, bloch=False)
    p.set_defaults(func=cmd_discord)

    p = sub.add_parser("profile", help="conditional entropy versus measurement angle", allow_abbrev=False)
    _common(p)
    _state_flags(p)
    _model_flags(p, bloch=False)
    p.add_argument("--points", type=int, default=181)
    p.set_defaults(func=cmd_profile)

    for name, func, help_ in (
        ("sweep", cmd_sweep, "discord columns along one model parameter"),
        ("boundaries", cmd_boundaries, "crossing point and curvature boundaries along one axis"),
        ("phase-diagram", cmd_phase_diagram, "branch label on a two-parameter grid"),
    ):
        p = sub.add_parser(name, help=help_, allow_abbrev=False)
        _common(p)
        _model_flags(p, required=True)
        p.add_argument("--axis", action="append", help="name:lo:hi:steps (repeat for two axes)")
        if name == "sweep":
            p.add_argument("--columns", help="comma separated subset of " + ",".join(scan.ALL_COLUMNS))
        if name == "phase-diagram":
            p.add_argument("--refine-out", help="also write per-row boundary roots to this CSV")
        p.set_defaults(func=func)

    p = sub.add_parser("volume", help="Monte-Carlo volume of the physical domain")
    _common(p)
    p.add_argument("--space", choices=("hypercube5", "tetrahedron3"), default="hypercube5")
    p.add_argument("--samples", type=int, default=10_000_000)
    p.set_defaults(func=cmd_volume)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args) or 0
    except InvalidStateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
