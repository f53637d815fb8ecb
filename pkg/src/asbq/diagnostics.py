"""Time-series diagnostics: norms, conserved quantities, resolution monitors,
extrema, and axis slices for waterfall output."""

import csv
from dataclasses import dataclass, fields as dc_fields

import numpy as np

from .grid import SpectralField, h1_seminorm, lp_norm
from .model import ModelParams, WaveState, cavitation_indicator

# fraction of the wavenumber range counted as the spectral tail, and the
# tail-to-peak modulus ratio above which a run is flagged under-resolved
TAIL_BAND = 0.9
TAIL_WARN_RATIO = 1e-6


@dataclass
class NormRecord:
    t: float
    eta_linf: float
    eta_l2: float
    eta_l4: float
    eta_h1: float
    vx_linf: float
    vx_l2: float
    vx_l4: float
    vx_h1: float
    vy_linf: float
    vy_l2: float
    vy_l4: float
    vy_h1: float
    eta_min: float
    cavitation: float
    eta_mean: float
    vx_mean: float
    vy_mean: float
    curl_l2: float
    tail_ratio: float

    @classmethod
    def header(cls) -> tuple:
        return tuple(f.name for f in dc_fields(cls))

    def row(self) -> tuple:
        return tuple(getattr(self, f.name) for f in dc_fields(self))


def _field_norms(f: SpectralField) -> tuple[float, float, float, float]:
    return (lp_norm(f, "inf"), lp_norm(f, 2), lp_norm(f, 4), h1_seminorm(f))


def curl_l2(state: WaveState) -> float:
    """L^2 norm of dvx/dy - dvy/dx (0 by definition in 1D)."""
    g = state.grid
    if g.dims == 1:
        return 0.0
    kx = g.kx_deriv[:, None]
    ky = g.ky_deriv[None, :]
    c = 1j * (ky * state.vx.spectral - kx * state.vy.spectral)
    return float(np.sqrt(g.volume * np.sum(np.abs(c) ** 2)))


def tail_ratio(state: WaveState) -> float:
    """Max coefficient modulus in the outer wavenumber band over the global
    max, taken over all state fields; a proxy for spatial resolution."""
    g = state.grid
    if g.dims == 1:
        band = np.abs(g.kx) >= TAIL_BAND * (g.n_x // 2) / g.l_x
    else:
        band = ((np.abs(g.kx)[:, None] >= TAIL_BAND * (g.n_x // 2) / g.l_x)
                | (np.abs(g.ky)[None, :] >= TAIL_BAND * (g.n_y // 2) / g.l_y))
    worst = 0.0
    for f in state.fields().values():
        mod = np.abs(f.spectral)
        peak = float(np.max(mod))
        if peak > 0:
            worst = max(worst, float(np.max(mod[band])) / peak)
    return worst


def record(state: WaveState, params: ModelParams) -> NormRecord:
    eta, vx = state.eta, state.vx
    e = _field_norms(eta)
    x = _field_norms(vx)
    if state.grid.dims == 2:
        y = _field_norms(state.vy)
        vy_mean = float(np.mean(state.vy.physical))
    else:
        y = (0.0, 0.0, 0.0, 0.0)
        vy_mean = 0.0
    return NormRecord(
        t=state.t,
        eta_linf=e[0], eta_l2=e[1], eta_l4=e[2], eta_h1=e[3],
        vx_linf=x[0], vx_l2=x[1], vx_l4=x[2], vx_h1=x[3],
        vy_linf=y[0], vy_l2=y[1], vy_l4=y[2], vy_h1=y[3],
        eta_min=float(np.min(eta.physical)),
        cavitation=cavitation_indicator(state, params),
        eta_mean=float(np.mean(eta.physical)),
        vx_mean=float(np.mean(vx.physical)),
        vy_mean=vy_mean,
        curl_l2=curl_l2(state),
        tail_ratio=tail_ratio(state),
    )


def axis_slice(state: WaveState, axis: str = "x") -> dict:
    """Fields sampled along a coordinate axis through the origin node."""
    g = state.grid
    if g.dims == 1:
        if axis != "x":
            raise ValueError("1D states only have the x axis")
        return {"coord": g.x.copy(), "eta": state.eta.physical.copy(),
                "vx": state.vx.physical.copy(), "vy": np.zeros(g.n_x)}
    if axis == "x":
        j = g.origin_index("y")
        return {"coord": g.x.copy(), "eta": state.eta.physical[:, j].copy(),
                "vx": state.vx.physical[:, j].copy(),
                "vy": state.vy.physical[:, j].copy()}
    if axis == "y":
        i = g.origin_index("x")
        return {"coord": g.y.copy(), "eta": state.eta.physical[i, :].copy(),
                "vx": state.vx.physical[i, :].copy(),
                "vy": state.vy.physical[i, :].copy()}
    raise ValueError(f"unknown axis {axis!r}")


_NORMALIZED_COLUMNS = ("eta_linf", "eta_l2", "eta_l4", "eta_h1",
                       "vx_linf", "vx_l2", "vx_l4", "vx_h1",
                       "vy_linf", "vy_l2", "vy_l4", "vy_h1")


class SeriesRecorder:
    """Evolution callback accumulating NormRecords."""

    def __init__(self, params: ModelParams, stride: int = 1, normalize: bool = False):
        self.params = params
        self.stride = max(1, int(stride))
        self.normalize = normalize
        self.records: list[NormRecord] = []
        self.warnings: list[dict] = []

    def __call__(self, step: int, state) -> None:
        rec = record(state, self.params)
        self.records.append(rec)
        if rec.tail_ratio > TAIL_WARN_RATIO:
            self.warnings.append({"kind": "under_resolved", "t": rec.t,
                                  "tail_ratio": rec.tail_ratio})
        return None

    def write_csv(self, path) -> None:
        header = NormRecord.header()
        rows = [list(r.row()) for r in self.records]
        if self.normalize and rows:
            base = dict(zip(header, rows[0]))
            for name in _NORMALIZED_COLUMNS:
                idx = header.index(name)
                ref = base[name]
                if abs(ref) > 1e-300:
                    for row in rows:
                        row[idx] = row[idx] / ref
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            for row in rows:
                writer.writerow([format(v, ".17g") for v in row])


class SliceRecorder:
    """Evolution callback storing axis slices for waterfall plots."""

    def __init__(self, axes=("x",), stride: int = 1):
        self.axes = tuple(axes)
        self.stride = max(1, int(stride))
        self.rows: list[tuple] = []

    def __call__(self, step: int, state) -> None:
        for axis in self.axes:
            if axis == "y" and state.grid.dims == 1:
                continue
            data = axis_slice(state, axis)
            for coord, eta, vx, vy in zip(data["coord"], data["eta"],
                                          data["vx"], data["vy"]):
                self.rows.append((state.t, axis, coord, eta, vx, vy))
        return None

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(("t", "axis", "coord", "eta", "vx", "vy"))
            for row in self.rows:
                writer.writerow([format(row[0], ".17g"), row[1]]
                                + [format(v, ".17g") for v in row[2:]])
