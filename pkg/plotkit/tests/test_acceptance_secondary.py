"""Secondary acceptance: render every figure kind from a real preset run.

The solver is exercised through its CLI only; outputs are consumed through
the documented file formats.
"""

import json
import shutil
import subprocess
import sys

import numpy as np
import pytest

from plotkit.io import read_slices, read_snapshot
from plotkit.render import FigureSpec, render


@pytest.fixture(scope="module")
def preset_outputs(tmp_path_factory):
    out = tmp_path_factory.mktemp("km09_run")
    if shutil.which("asbq"):
        cmd = ["asbq"]
    else:
        cmd = [sys.executable, "-m", "asbq.cli"]
    res = subprocess.run(cmd + ["run", "--preset", "cavitation_k-0.9_a1_desk",
                                "--out-dir", str(out)],
                         capture_output=True, text=True)
    assert res.returncode == 0, res.stderr[-2000:]
    return out


def test_renders_all_kinds_from_preset_outputs(preset_outputs, tmp_path):
    out = preset_outputs
    report = json.loads((out / "report.json").read_text())
    assert report["report"]["status"] == "completed"

    made = []
    made.append(render(FigureSpec("surface", [str(out / "snapshot_t4.asbq")],
                                  str(tmp_path / "surface.png"), field="eta")))
    made.append(render(FigureSpec("waterfall", [str(out / "slices.csv")],
                                  str(tmp_path / "waterfall.png"),
                                  field="eta", axis="x",
                                  title="gap closing and recombination")))
    made.append(render(FigureSpec("series", [str(out / "norms.csv")],
                                  str(tmp_path / "series.png"),
                                  columns=("eta_linf", "eta_min"))))
    made.append(render(FigureSpec("spectrum-fit",
                                  [str(out / "snapshot_final.asbq")],
                                  str(tmp_path / "spectrum.png"), field="eta")))
    for path in made:
        import os
        assert os.path.getsize(path) > 2000


def test_waterfall_data_shows_gap_closing_sequence(preset_outputs):
    # the depression fills through inward-moving peaks, collides into a high
    # central peak, then drops into a secondary valley
    times, coords, values = read_slices(preset_outputs / "slices.csv",
                                        axis="x", field="eta")
    center = np.argmin(np.abs(coords))
    middle = values[:, center]
    assert middle[0] == pytest.approx(-0.9, abs=0.01)
    i_peak = int(np.argmax(middle))
    assert middle[i_peak] > 0.5, "no central collision peak"
    after = middle[i_peak:]
    assert after.min() < 0.0, "no secondary valley after the peak"
    # before the collision the gap is flanked by inward peaks: the slice max
    # away from the center exceeds the center value early on
    early = values[len(times) // 8]
    assert early.max() > early[center] + 0.2


def test_snapshot_times_match_requested(preset_outputs):
    snap = read_snapshot(preset_outputs / "snapshot_t4.asbq")
    assert snap["t"] == pytest.approx(4.0, abs=0.01)
