import json
import struct
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from plotkit.io import FormatError, read_norms, read_slices, read_snapshot
from plotkit.render import FigureSpec, render


def _write_snapshot(path, dims=2, n_x=64, n_y=32, t=1.5):
    # documented layout: magic, u32 version, u8 dims, u64 N, f64 header, fields
    l_x, l_y = 3.0, 2.0
    header = struct.pack("<4sIBQQddddd", b"ASBQ", 1, dims, n_x,
                         n_y if dims == 2 else 0, l_x,
                         l_y if dims == 2 else 0.0, 1.0, 1.0, t)
    x = -np.pi * l_x + 2 * np.pi * l_x / n_x * np.arange(1, n_x + 1)
    rng = np.random.default_rng(0)
    with open(path, "wb") as fh:
        fh.write(header)
        if dims == 1:
            eta = np.exp(-x ** 2)
            fh.write(eta.astype("<f8").tobytes())
            fh.write(np.zeros(n_x).astype("<f8").tobytes())
        else:
            y = -np.pi * l_y + 2 * np.pi * l_y / n_y * np.arange(1, n_y + 1)
            eta = np.exp(-(x[:, None] ** 2 + y[None, :] ** 2))
            vx = 0.1 * rng.standard_normal((n_x, n_y))
            fh.write(eta.astype("<f8").tobytes())
            fh.write(vx.astype("<f8").tobytes())
            fh.write(np.zeros((n_x, n_y)).astype("<f8").tobytes())
    return path


def _write_norms(path, n=20):
    cols = ["t", "eta_linf", "eta_l2", "eta_h1"]
    lines = [",".join(cols)]
    for i in range(n):
        t = 0.1 * i
        lines.append(f"{t},{1 + 0.1 * np.sin(t)},{0.5},{2 + t}")
    Path(path).write_text("\n".join(lines) + "\n")
    return path


def _write_slices(path, n_t=6, n_x=32):
    x = np.linspace(-3, 3, n_x)
    lines = ["t,axis,coord,eta,vx,vy"]
    for j in range(n_t):
        t = 0.5 * j
        for xi in x:
            eta = np.exp(-(xi - 0.3 * t) ** 2)
            lines.append(f"{t},x,{xi},{eta},0.0,0.0")
    Path(path).write_text("\n".join(lines) + "\n")
    return path


def test_read_snapshot_round_trip(tmp_path):
    snap = read_snapshot(_write_snapshot(tmp_path / "s.asbq"))
    assert snap["dims"] == 2
    assert snap["eta"].shape == (64, 32)
    assert snap["t"] == 1.5
    assert snap["x"][-1] == pytest.approx(np.pi * 3.0)


def test_read_snapshot_rejects_garbage(tmp_path):
    p = tmp_path / "bad.asbq"
    p.write_bytes(b"JUNKJUNKJUNK")
    with pytest.raises(FormatError, match="bad.asbq"):
        read_snapshot(p)


def test_read_norms_and_errors(tmp_path):
    cols = read_norms(_write_norms(tmp_path / "n.csv"))
    assert "eta_linf" in cols and len(cols["t"]) == 20
    (tmp_path / "empty.csv").write_text("")
    with pytest.raises(FormatError, match="empty"):
        read_norms(tmp_path / "empty.csv")
    (tmp_path / "text.csv").write_text("t,eta_linf\n0.0,abc\n")
    with pytest.raises(FormatError, match="eta_linf"):
        read_norms(tmp_path / "text.csv")


def test_read_slices_shapes(tmp_path):
    times, coords, values = read_slices(_write_slices(tmp_path / "sl.csv"))
    assert len(times) == 6
    assert values.shape == (6, 32)
    with pytest.raises(FormatError, match="axis"):
        read_slices(tmp_path / "sl.csv", axis="y")


@pytest.mark.parametrize("kind", ["surface", "waterfall", "series", "spectrum-fit"])
def test_render_all_kinds(tmp_path, kind):
    snap = _write_snapshot(tmp_path / "s.asbq", n_x=128, n_y=64)
    inputs = {"surface": snap, "spectrum-fit": snap,
              "series": _write_norms(tmp_path / "n.csv"),
              "waterfall": _write_slices(tmp_path / "sl.csv")}[kind]
    out = tmp_path / f"{kind}.png"
    spec = FigureSpec(kind, [str(inputs)], str(out),
                      columns=("eta_linf", "eta_h1"))
    assert render(spec) == str(out)
    assert out.exists() and out.stat().st_size > 2000


def _script(mod, *args):
    return subprocess.run([sys.executable, "-m", f"plotkit.{mod}", *args],
                          capture_output=True, text=True)


def test_scripts_render_and_fail_cleanly(tmp_path):
    snap = _write_snapshot(tmp_path / "s.asbq", n_x=128, n_y=64)
    res = _script("surface", "--in", str(snap), "--out", str(tmp_path / "a.png"),
                  "--title", "surface check")
    assert res.returncode == 0, res.stderr
    assert (tmp_path / "a.png").exists()

    norms = _write_norms(tmp_path / "n.csv")
    res = _script("series", "--in", str(norms), "--out", str(tmp_path / "b.png"),
                  "--columns", "eta_linf,eta_h1")
    assert res.returncode == 0, res.stderr

    slices = _write_slices(tmp_path / "sl.csv")
    res = _script("waterfall", "--in", str(slices), "--out", str(tmp_path / "c.png"))
    assert res.returncode == 0, res.stderr

    res = _script("spectrum_fit", "--in", str(snap), "--out", str(tmp_path / "d.png"))
    assert res.returncode == 0, res.stderr

    (tmp_path / "empty.csv").write_text("")
    res = _script("series", "--in", str(tmp_path / "empty.csv"),
                  "--out", str(tmp_path / "e.png"))
    assert res.returncode == 2
    assert "empty" in res.stderr


def test_render_rejects_unknown_kind(tmp_path):
    with pytest.raises(FormatError, match="kind"):
        render(FigureSpec("pie", ["x"], str(tmp_path / "x.png")))
