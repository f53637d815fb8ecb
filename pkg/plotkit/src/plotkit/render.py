"""Figure rendering for the four output kinds."""

from dataclasses import dataclass, field as dc_field

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .io import FormatError, read_norms, read_slices, read_snapshot, spectrum_line

FIGSIZE = (6.4, 4.2)


@dataclass
class FigureSpec:
    kind: str                 # surface | waterfall | series | spectrum-fit
    inputs: list
    out: str
    title: str = ""
    field: str = "eta"
    axis: str = "x"
    columns: tuple = ()
    options: dict = dc_field(default_factory=dict)


def _decimate(arr, limit):
    step = max(1, arr.shape[0] // limit)
    return arr[::step], step


def render_surface(spec: FigureSpec) -> str:
    snap = read_snapshot(spec.inputs[0])
    if snap["dims"] != 2:
        raise FormatError(f"{spec.inputs[0]}: surface plots need a 2D snapshot")
    vals = snap[spec.field] if spec.field in snap else None
    if vals is None:
        raise FormatError(f"{spec.inputs[0]}: no field {spec.field!r}")
    x, sx = _decimate(snap["x"], 256)
    y, sy = _decimate(snap["y"], 256)
    grid = vals[::sx, ::sy]
    fig = plt.figure(figsize=FIGSIZE)
    ax = fig.add_subplot(projection="3d")
    xx, yy = np.meshgrid(x, y, indexing="ij")
    ax.plot_surface(xx, yy, grid, cmap="viridis", rstride=1, cstride=1,
                    linewidth=0, antialiased=False)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_zlabel(spec.field)
    ax.set_title(spec.title or f"{spec.field} at t = {snap['t']:g}")
    fig.savefig(spec.out, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return spec.out


def render_waterfall(spec: FigureSpec) -> str:
    times, coords, values = read_slices(spec.inputs[0], axis=spec.axis,
                                        field=spec.field)
    max_lines = int(spec.options.get("max_lines", 60))
    step = max(1, len(times) // max_lines)
    fig = plt.figure(figsize=FIGSIZE)
    ax = fig.add_subplot(projection="3d")
    for j in range(0, len(times), step):
        ax.plot(coords, np.full_like(coords, times[j]), values[j],
                color="steelblue", lw=0.7)
    ax.set_xlabel(spec.axis)
    ax.set_ylabel("t")
    ax.set_zlabel(spec.field)
    ax.view_init(elev=35, azim=-70)
    ax.set_title(spec.title or f"{spec.field} on the {spec.axis}-axis")
    fig.savefig(spec.out, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return spec.out


def render_series(spec: FigureSpec) -> str:
    cols = read_norms(spec.inputs[0])
    names = spec.columns or ("eta_linf",)
    fig, ax = plt.subplots(figsize=FIGSIZE)
    for name in names:
        if name not in cols:
            raise FormatError(f"{spec.inputs[0]}: missing column {name!r}")
        ax.plot(cols["t"], cols[name], lw=1.2, label=name)
    ax.set_xlabel("t")
    ax.legend(frameon=False)
    if spec.title:
        ax.set_title(spec.title)
    fig.savefig(spec.out, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return spec.out


def render_spectrum_fit(spec: FigureSpec) -> str:
    snap = read_snapshot(spec.inputs[0])
    k, mod = spectrum_line(snap, field=spec.field, axis=spec.axis)
    floor = 100 * np.finfo(float).eps * mod.max()
    lo = float(spec.options.get("lo_frac", 0.0625)) * k.max()
    hi = float(spec.options.get("hi_frac", 0.5)) * k.max()
    keep = (mod > floor) & (k >= lo) & (k <= hi)
    if np.count_nonzero(keep) < 16:
        raise FormatError(f"{spec.inputs[0]}: too few usable modes to fit")
    design = np.column_stack([np.ones(keep.sum()), -np.log(k[keep]), -k[keep]])
    coef, *_ = np.linalg.lstsq(design, np.log(mod[keep]), rcond=None)
    amp, mu_plus_1, delta = coef
    fitted = np.exp(amp) * k ** (-mu_plus_1) * np.exp(-delta * k)

    fig, ax = plt.subplots(figsize=FIGSIZE)
    shown = mod > floor / 10
    ax.semilogy(k[shown], mod[shown], lw=0.8, label=f"|{spec.field}^|")
    ax.semilogy(k[keep], fitted[keep], "r--", lw=1.4,
                label=f"fit: delta={delta:.4g}, mu={mu_plus_1 - 1:.3g}")
    ax.set_xlabel(f"k_{spec.axis}")
    ax.set_ylabel("coefficient modulus")
    ax.legend(frameon=False)
    ax.set_title(spec.title or f"spectrum of {spec.field} at t = {snap['t']:g}")
    fig.savefig(spec.out, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return spec.out


_RENDERERS = {
    "surface": render_surface,
    "waterfall": render_waterfall,
    "series": render_series,
    "spectrum-fit": render_spectrum_fit,
}


def render(spec: FigureSpec) -> str:
    """Render one figure; returns the written path."""
    if spec.kind not in _RENDERERS:
        raise FormatError(f"unknown figure kind {spec.kind!r}")
    return _RENDERERS[spec.kind](spec)
