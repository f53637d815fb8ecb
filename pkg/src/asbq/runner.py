"""Run orchestration: build initial data, evolve with diagnostics and stop
policies, and persist snapshots, series, fits and a machine-readable report.
"""

import json
import logging
import struct
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .config import ExperimentConfig
from .diagnostics import SeriesRecorder, SliceRecorder
from .evolve import EvolveConfig, IntegrationFault, evolve
from .grid import TorusGrid, make_grid
from .model import ModelParams, ModelRHS, WaveState
from .solitary import SolitaryProfile, build_initial_data, solve_profile
from .tracker import TrackerCallback, write_fit_csv

logger = logging.getLogger("asbq")

SNAPSHOT_MAGIC = b"ASBQ"
SNAPSHOT_VERSION = 1
_HEADER = "<4sIBQQddddd"  # magic, version, dims, n_x, n_y, l_x, l_y, eps_nl, eps_disp, t


def write_snapshot(path, state: WaveState, params: ModelParams) -> None:
    g = state.grid
    n_y = g.n_y if g.dims == 2 else 0
    l_y = g.l_y if g.dims == 2 else 0.0
    header = struct.pack(_HEADER, SNAPSHOT_MAGIC, SNAPSHOT_VERSION, g.dims,
                         g.n_x, n_y, g.l_x, l_y,
                         params.eps_nl, params.eps_disp, state.t)
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(np.ascontiguousarray(state.eta.physical, dtype="<f8").tobytes())
        fh.write(np.ascontiguousarray(state.vx.physical, dtype="<f8").tobytes())
        if g.dims == 2:
            fh.write(np.ascontiguousarray(state.vy.physical, dtype="<f8").tobytes())


def read_snapshot(path) -> tuple[WaveState, ModelParams]:
    with open(path, "rb") as fh:
        raw = fh.read()
    head_size = struct.calcsize(_HEADER)
    if len(raw) < head_size:
        raise ValueError(f"{path}: truncated snapshot header")
    (magic, version, dims, n_x, n_y, l_x, l_y,
     eps_nl, eps_disp, t) = struct.unpack(_HEADER, raw[:head_size])
    if magic != SNAPSHOT_MAGIC:
        raise ValueError(f"{path}: bad magic {magic!r}")
    if version != SNAPSHOT_VERSION:
        raise ValueError(f"{path}: unsupported version {version}")
    n_fields = 2 if dims == 1 else 3
    n_nodes = n_x if dims == 1 else n_x * n_y
    need = head_size + 8 * n_fields * n_nodes
    if len(raw) != need:
        raise ValueError(f"{path}: expected {need} bytes, got {len(raw)}")
    body = np.frombuffer(raw, dtype="<f8", offset=head_size)
    if dims == 1:
        grid = make_grid(1, int(n_x), float(l_x))
        eta, vx = body[:n_x], body[n_x:]
        state = WaveState.from_arrays(grid, t, eta, vx)
    else:
        grid = make_grid(2, int(n_x), float(l_x), int(n_y), float(l_y))
        shape = (n_x, n_y)
        eta = body[:n_nodes].reshape(shape)
        vx = body[n_nodes:2 * n_nodes].reshape(shape)
        vy = body[2 * n_nodes:].reshape(shape)
        state = WaveState.from_arrays(grid, t, eta, vx, vy)
    return state, ModelParams(eps_nl, eps_disp)


class _SnapshotWriter:
    """Callback writing snapshots at preassigned steps."""

    def __init__(self, out_dir: Path, params: ModelParams,
                 times, dt: float, n_steps: int):
        self.out_dir = out_dir
        self.params = params
        self.by_step: dict[int, float] = {}
        for t in times:
            step = min(n_steps, int(round(t / dt)))
            self.by_step.setdefault(step, t)
        self.steps = set(self.by_step)
        self.written: list[str] = []

    def __call__(self, step: int, state) -> None:
        t_req = self.by_step.get(step)
        if t_req is None:
            return None
        name = f"snapshot_t{t_req:g}.asbq"
        write_snapshot(self.out_dir / name, state, self.params)
        self.written.append(name)
        return None


class _ProgressLogger:
    def __init__(self, n_steps: int):
        self.stride = max(1, n_steps // 10)
        self.n_steps = n_steps
        self.t0 = time.perf_counter()

    def __call__(self, step: int, state) -> None:
        if step:
            rate = step / (time.perf_counter() - self.t0)
            logger.info("step %d/%d (t = %.4g, %.1f steps/s)",
                        step, self.n_steps, state.t, rate)
        return None


@dataclass
class RunReport:
    preset: str | None
    status: str                      # completed | stopped | fault
    out_dir: str
    final_t: float
    steps_run: int
    wall_time_s: float
    stop_event: dict | None = None
    fault: str | None = None
    warnings: list = field(default_factory=list)
    outputs: dict = field(default_factory=dict)
    profile_residual: float | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def _resolve_profile(config: ExperimentConfig, grid: TorusGrid) -> SolitaryProfile | None:
    spec = config.initial_data
    if spec["kind"] not in ("gaussian_on_eta", "gaussian_on_vx",
                            "gaussian_on_vy", "cos_deform"):
        return None
    path = spec.get("profile_path")
    if path:
        profile = SolitaryProfile.load(path)
        if profile.c != spec["c"] or profile.eps != config.model.eps_nl:
            raise ValueError(
                f"profile file {path} has (c, eps) = ({profile.c}, {profile.eps}), "
                f"config wants ({spec['c']}, {config.model.eps_nl})")
        if profile.grid.n_x != grid.n_x or profile.grid.l_x != grid.l_x:
            raise ValueError(f"profile file {path} does not match the run grid")
        return profile
    line = make_grid(1, grid.n_x, grid.l_x)
    logger.info("constructing solitary profile c = %g", spec["c"])
    return solve_profile(spec["c"], config.model.eps_nl, line)


def initial_state(config: ExperimentConfig, grid: TorusGrid) -> tuple[WaveState, float | None]:
    spec = config.initial_data
    if spec["kind"] == "file":
        state, params = read_snapshot(spec["path"])
        if state.grid.shape != grid.shape:
            raise ValueError(
                f"snapshot grid {state.grid.shape} != config grid {grid.shape}")
        if (params.eps_nl, params.eps_disp) != (config.model.eps_nl, config.model.eps_disp):
            raise ValueError("snapshot model parameters differ from the config")
        return state, None
    profile = _resolve_profile(config, grid)
    state = build_initial_data(grid, spec, profile)
    return state, (profile.residual_norm if profile else None)


def run(config: ExperimentConfig, out_dir=None) -> RunReport:
    """Execute one configured experiment; all artifacts land in ``out_dir``."""
    out = Path(out_dir) if out_dir is not None else Path(config.output.directory)
    out.mkdir(parents=True, exist_ok=True)

    if config.grid.dims == 1:
        grid = make_grid(1, config.grid.n_x, config.grid.l_x)
    else:
        grid = make_grid(2, config.grid.n_x, config.grid.l_x,
                         config.grid.n_y, config.grid.l_y)
    params = ModelParams(config.model.eps_nl, config.model.eps_disp)
    state, prof_residual = initial_state(config, grid)

    econf = EvolveConfig(config.time.t_end, config.time.n_steps,
                         callback_stride=config.diagnostics.series_stride)
    series = SeriesRecorder(params, stride=config.diagnostics.series_stride,
                            normalize=config.diagnostics.normalize)
    slices = SliceRecorder(axes=config.diagnostics.slice_axes,
                           stride=config.diagnostics.slice_stride)
    snaps = _SnapshotWriter(out, params, config.output.snapshot_times,
                            econf.dt, econf.n_steps)
    callbacks = [series, slices, snaps, _ProgressLogger(econf.n_steps)]

    tracker = None
    if config.tracking.enabled:
        tr = config.tracking
        tracker = TrackerCallback(fields=tr.fields, axes=tr.axes,
                                  window=tr.window, stride=tr.stride,
                                  kappa_stop=tr.kappa_stop, stop=tr.stop,
                                  stop_fields=tr.stop_fields)
        callbacks.append(tracker)

    rhs = ModelRHS(grid, params)
    status = "completed"
    stop_event = None
    fault_msg = None
    t0 = time.perf_counter()
    try:
        final, log = evolve(state, econf, rhs, callbacks)
        if log.stop_event is not None:
            status = "stopped"
            stop_event = log.stop_event
        steps_run = log.steps_run
    except IntegrationFault as fault:
        status = "fault"
        fault_msg = str(fault)
        final = fault.last_good if fault.last_good is not None else state
        steps_run = fault.step
    wall = time.perf_counter() - t0

    outputs = {}
    series.write_csv(out / "norms.csv")
    outputs["norms"] = "norms.csv"
    slices.write_csv(out / "slices.csv")
    outputs["slices"] = "slices.csv"
    if tracker is not None:
        write_fit_csv(out / "fits.csv", tracker.history)
        outputs["fits"] = "fits.csv"
    write_snapshot(out / "snapshot_final.asbq", final, params)
    outputs["snapshots"] = snaps.written + ["snapshot_final.asbq"]

    report = RunReport(preset=config.preset, status=status, out_dir=str(out),
                       final_t=final.t, steps_run=steps_run, wall_time_s=wall,
                       stop_event=stop_event, fault=fault_msg,
                       warnings=series.warnings, outputs=outputs,
                       profile_residual=prof_residual)
    with open(out / "report.json", "w") as fh:
        json.dump({"report": report.to_dict(), "config": config.to_dict()},
                  fh, indent=2, sort_keys=True)
    logger.info("run %s: %s in %.1f s (final t = %.6g)",
                config.preset or "<config>", status, wall, final.t)
    return report
