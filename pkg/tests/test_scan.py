import math

import numpy as np
import pytest

from xdiscord import scan
from xdiscord.discord import discord
from xdiscord.models import horodecki
from xdiscord.xmatrix import TILTED_STATE

LN2 = math.log(2)


def horodecki_spec(**kw):
    return scan.SweepSpec("horodecki", (scan.Axis("m", 0.1, 0.103, 31),), {"epsilon": 0.228}, **kw)


def test_axis_parse():
    ax = scan.Axis.parse("m:0.1:0.2:11")
    assert ax == scan.Axis("m", 0.1, 0.2, 11)
    assert ax.values()[[0, -1]].tolist() == [0.1, 0.2]
    for bad in ("m:0.1:0.2", "m:0.2:0.1:5", "m:0:1:1", "m:a:1:5"):
        with pytest.raises(ValueError):
            scan.Axis.parse(bad)


def test_spec_validation():
    with pytest.raises(ValueError, match="unknown model"):
        scan.SweepSpec("ising", (scan.Axis("m", 0, 1, 3),))
    with pytest.raises(ValueError, match="not a parameter"):
        scan.SweepSpec("horodecki", (scan.Axis("T", 0, 1, 3),))
    with pytest.raises(ValueError, match="columns"):
        horodecki_spec(columns=("q", "entropy"))
    with pytest.raises(ValueError, match="unit"):
        horodecki_spec(unit="shannons")


def test_sweep_rows_and_units():
    bits = scan.sweep(horodecki_spec())
    nats = scan.sweep(horodecki_spec(unit="nats"))
    assert [r["m"] for r in bits] == pytest.approx(np.linspace(0.1, 0.103, 31).tolist())
    for rb, rn in zip(bits, nats):
        for col in ("q", "q0", "q_pi2", "false_discord", "d2_0", "d2_pi2"):
            assert rb[col] == pytest.approx(rn[col] / LN2, rel=1e-14)
        assert rb["theta_opt"] == rn["theta_opt"]
        assert rb["branch"] == rn["branch"]
        assert rb["q0"] == pytest.approx(0.228, abs=1e-12)
    assert {r["branch"] for r in bits} == {"Qpi/2", "Qtheta", "Q0"}


def test_sweep_parallel_is_deterministic():
    spec = horodecki_spec(columns=("q", "branch"))
    assert scan.sweep(spec, jobs=1) == scan.sweep(spec, jobs=2)


def test_evaluate_subset():
    row = scan.evaluate(TILTED_STATE, ("branch", "theta_opt"))
    assert list(row) == ["branch", "theta_opt"]
    assert row["branch"] == "Qtheta"


def test_invalid_point_reports_location():
    spec = scan.SweepSpec("horodecki", (scan.Axis("m", 0.5, 1.5, 3),))
    with pytest.raises(ValueError, match="m"):
        scan.sweep(spec)


def test_phase_diagram_agrees_with_refined_boundaries():
    spec = scan.SweepSpec(
        "horodecki",
        (scan.Axis("m", 0.098, 0.105, 57), scan.Axis("epsilon", 0.226, 0.23, 3)),
    )
    cells = scan.phase_diagram(spec)
    assert len(cells) == 171
    dm = 0.007 / 56
    n_theta = 0
    for row in scan.refine_rows(spec):
        (t_pi2,), (t_x,), (t_0,) = row["t_pi2"], row["t_cross"], row["t_0"]
        assert t_pi2 < t_x < t_0
        for c in (c for c in cells if c["epsilon"] == row["epsilon"]):
            m = c["m"]
            if m < t_pi2 - dm:
                assert c["branch"] == "Qpi/2"
            elif m > t_0 + dm:
                assert c["branch"] == "Q0"
            elif t_pi2 + dm < m < t_0 - dm:
                assert c["branch"] == "Qtheta"
                n_theta += 1
    assert n_theta >= 3


def test_boundaries_document():
    spec = scan.SweepSpec("horodecki", (scan.Axis("m", 0.05, 0.2, 2),), {"epsilon": 0.228})
    doc = scan.boundaries(spec)
    assert doc["errors"] == {}
    assert (doc["t_pi2"], doc["t_cross"], doc["t_0"]) == pytest.approx((0.100997, 0.101234, 0.101474), abs=1e-5)
    spec = scan.SweepSpec("horodecki", (scan.Axis("m", 0.15, 0.2, 2),), {"epsilon": 0.228})
    doc = scan.boundaries(spec)
    assert set(doc["errors"]) == {"t_pi2", "t_cross", "t_0"}
    assert doc["t_cross"] is None


def test_profile():
    rows = scan.profile(TILTED_STATE, 91)
    assert rows[0]["theta"] == 0 and rows[-1]["theta"] == pytest.approx(math.pi / 2)
    i = int(np.argmin([r["s_cond"] for r in rows]))
    assert rows[i]["theta"] == pytest.approx(discord(TILTED_STATE).theta_opt, abs=math.pi / 180)


def test_volume_deterministic_and_chunked(monkeypatch):
    monkeypatch.setattr(scan, "CHUNK", 30_000)
    a = scan.volume("hypercube5", 100_000, seed=7)
    b = scan.volume("hypercube5", 100_000, seed=7, jobs=2)
    assert a == b
    assert a.seed == 7 and a.samples == 100_000
    assert a.fraction == pytest.approx(0.08, abs=4 * a.stderr + 0.005)
    assert scan.volume("hypercube5", 100_000, seed=8).hits != a.hits


def test_volume_tetrahedron_breakdown():
    rep = scan.volume("tetrahedron3", 200_000, seed=1)
    assert sum(rep.breakdown.values()) == pytest.approx(rep.fraction, abs=1e-15)
    assert rep.fraction == pytest.approx(1 / 3, abs=0.01)


def test_volume_rejects_bad_input():
    with pytest.raises(ValueError):
        scan.volume("sphere", 10, 0)
    with pytest.raises(ValueError):
        scan.volume("hypercube5", 0, 0)


def test_csv_format():
    rows = [{"m": 0.1, "q": 1 / 3, "branch": "Q0", "q_theta": None, "d2_0": float("inf")}]
    text = scan.csv_text(rows, ("m", "q", "branch", "q_theta", "d2_0"), {"model": "horodecki"})
    lines = text.splitlines()
    assert lines[0] == '# xdiscord {"model": "horodecki"}'
    assert lines[1] == "m,q,branch,q_theta,d2_0"
    assert lines[2] == "0.1,0.333333333333,Q0,,inf"


def test_json_handles_numpy_and_infinity():
    text = scan.json_text({"x": np.float64(0.5), "y": [float("-inf")]})
    assert '"x": 0.5' in text and '"-inf"' in text


def test_grid_order_x_fastest():
    spec = scan.SweepSpec("horodecki", (scan.Axis("m", 0, 1, 3), scan.Axis("epsilon", 0, 1, 2)))
    pts = scan.grid_points(spec)
    assert [p["m"] for p in pts[:3]] == [0, 0.5, 1]
    assert [p["epsilon"] for p in pts] == [0, 0, 0, 1, 1, 1]
