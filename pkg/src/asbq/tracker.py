"""Analyticity-strip tracking from Fourier-coefficient decay.

A complex-plane singularity of strength mu at distance delta below the real
axis makes the coefficient modulus decay like |u_hat(k)| ~ C * k^-(mu+1) *
exp(-delta*k) for large k.  Fitting log|u_hat| = C - (mu+1)*log k - delta*k
over a window of resolved modes gives delta(t) and mu(t) per field and axis;
delta reaching the grid spacing signals loss of analyticity and stops a run.

mu is an algebraic correction to an exponential decay and is numerically
fragile; it is reported but only delta drives any decision.
"""

import csv
from dataclasses import dataclass

import numpy as np

from .grid import SpectralField, TorusGrid


class FitUnavailableError(ValueError):
    """Too few usable modes to attempt a fit (distinct from a bad fit)."""


@dataclass(frozen=True)
class WindowPolicy:
    """Fit window as fractions of the largest resolved wavenumber, after
    dropping modes within the rounding floor."""

    lo_frac: float = 0.125
    hi_frac: float = 0.75
    floor_factor: float = 100.0
    min_modes: int = 16

    def __post_init__(self):
        if not 0 <= self.lo_frac < self.hi_frac <= 1:
            raise ValueError("need 0 <= lo_frac < hi_frac <= 1")
        if self.min_modes < 3:
            raise ValueError("min_modes must be >= 3 (three fit parameters)")


@dataclass
class SingularityFit:
    field: str
    axis: str
    t: float
    delta: float
    mu: float
    amplitude: float
    k_lo: float
    k_hi: float
    quality: float
    n_modes: int

    @property
    def reliable(self) -> bool:
        return np.isfinite(self.quality) and self.quality <= 0.5

    CSV_HEADER = ("t", "field", "axis", "delta", "mu", "C", "k_lo", "k_hi", "quality")

    def csv_row(self) -> tuple:
        return (self.t, self.field, self.axis, self.delta, self.mu,
                self.amplitude, self.k_lo, self.k_hi, self.quality)


def axis_modulus(f: SpectralField, axis: str = "x") -> tuple[np.ndarray, np.ndarray]:
    """Positive-wavenumber coefficient moduli along one spectral axis.

    In 2D the orthogonal index is held at 0; the Nyquist and zero modes are
    excluded, so N/2 - 1 values come back.
    """
    g = f.grid
    coeffs = f.spectral
    if g.dims == 1:
        if axis != "x":
            raise ValueError("1D spectra only have the x axis")
        line = coeffs[1:g.n_x // 2]
        k = g.kx[1:g.n_x // 2]
    elif axis == "x":
        line = coeffs[1:g.n_x // 2, 0]
        k = g.kx[1:g.n_x // 2]
    elif axis == "y":
        line = coeffs[0, 1:g.n_y // 2]
        k = g.ky[1:g.n_y // 2]
    else:
        raise ValueError(f"unknown axis {axis!r}")
    return k.copy(), np.abs(line)


def fit_ssf(k: np.ndarray, modulus: np.ndarray,
            window: WindowPolicy | None = None,
            t: float = np.nan, field: str = "", axis: str = "x") -> SingularityFit:
    """Least-squares fit of log|u_hat| = C - (mu+1)*log k - delta*k.

    Raises FitUnavailableError when fewer than ``window.min_modes`` usable
    modes remain after windowing and flooring.
    """
    window = window or WindowPolicy()
    k = np.asarray(k, dtype=np.float64)
    modulus = np.asarray(modulus, dtype=np.float64)
    if k.shape != modulus.shape or k.ndim != 1:
        raise ValueError("k and modulus must be 1D arrays of equal length")

    peak = float(np.max(modulus)) if modulus.size else 0.0
    if peak <= 0:
        raise FitUnavailableError("all moduli vanish")
    floor = window.floor_factor * np.finfo(np.float64).eps * peak
    k_top = float(np.max(k))
    keep = ((modulus > floor)
            & (k >= window.lo_frac * k_top)
            & (k <= window.hi_frac * k_top))
    n = int(np.count_nonzero(keep))
    if n < window.min_modes:
        raise FitUnavailableError(
            f"{n} usable modes in the window (need {window.min_modes})")

    kk = k[keep]
    y = np.log(modulus[keep])
    design = np.column_stack([np.ones_like(kk), -np.log(kk), -kk])
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    amplitude, mu_plus_1, delta = coef
    resid = y - design @ coef
    quality = float(np.sqrt(np.mean(resid ** 2)))
    return SingularityFit(field=field, axis=axis, t=float(t),
                          delta=float(delta), mu=float(mu_plus_1 - 1.0),
                          amplitude=float(amplitude),
                          k_lo=float(kk[0]), k_hi=float(kk[-1]),
                          quality=quality, n_modes=n)


def stop_check(fit: SingularityFit, grid: TorusGrid, kappa_stop: float = 1.0) -> bool:
    """Stop once delta is at or below kappa_stop grid spacings: the
    singularity distance is no longer resolvable."""
    return fit.delta <= kappa_stop * grid.h_x


class TrackerCallback:
    """Evolution callback: fit tracked fields/axes at a stride, keep the
    history, and optionally request a stop when any reliable fit crosses
    the resolvability threshold."""

    def __init__(self, fields=("eta",), axes=("x",), window: WindowPolicy | None = None,
                 stride: int = 1, kappa_stop: float = 1.0, stop: bool = True,
                 stop_fields=None):
        self.fields = tuple(fields)
        self.axes = tuple(axes)
        self.window = window or WindowPolicy()
        self.stride = max(1, int(stride))
        self.kappa_stop = float(kappa_stop)
        self.stop = stop
        self.stop_fields = tuple(stop_fields) if stop_fields is not None else self.fields
        self.history: list[SingularityFit] = []

    def __call__(self, step: int, state) -> dict | None:
        decision = None
        for name, f in state.fields().items():
            if name not in self.fields:
                continue
            for axis in self.axes:
                if axis == "y" and state.grid.dims == 1:
                    continue
                k, mod = axis_modulus(f, axis)
                try:
                    fit = fit_ssf(k, mod, self.window, t=state.t,
                                  field=name, axis=axis)
                except FitUnavailableError:
                    continue
                self.history.append(fit)
                if (self.stop and decision is None and name in self.stop_fields
                        and fit.reliable
                        and stop_check(fit, state.grid, self.kappa_stop)):
                    decision = {"type": "stop", "policy": "delta_fit",
                                "field": name, "axis": axis,
                                "delta": fit.delta,
                                "threshold": self.kappa_stop * state.grid.h_x}
        return decision


def write_fit_csv(path, history) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SingularityFit.CSV_HEADER)
        for fit in history:
            writer.writerow([_fmt(v) for v in fit.csv_row()])


def read_fit_csv(path) -> list[SingularityFit]:
    out = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != SingularityFit.CSV_HEADER:
            raise ValueError(f"{path}: unexpected fit CSV header {header}")
        for row in reader:
            t, field, axis, delta, mu, amp, k_lo, k_hi, quality = row
            out.append(SingularityFit(field=field, axis=axis, t=float(t),
                                      delta=float(delta), mu=float(mu),
                                      amplitude=float(amp), k_lo=float(k_lo),
                                      k_hi=float(k_hi), quality=float(quality),
                                      n_modes=0))
    return out


def _fmt(v):
    return format(v, ".17g") if isinstance(v, float) else v


def estimate_vanishing_time(times, deltas, tail_factor: float = 3.0,
                            min_points: int = 4, gap_factor: float = 4.0) -> float:
    """Zero-crossing estimate for a decaying delta(t) series.

    Quality gating leaves holes in a fit history; only the trailing stretch
    after the last large time gap (> ``gap_factor`` x the median spacing)
    reflects the final approach to breakdown.  Within that stretch a
    least-squares line through the tail (points with delta <=
    ``tail_factor`` * final delta, at least ``min_points`` when available)
    is extrapolated to zero.

    Returns NaN when there are too few points or the tail is not decreasing.
    """
    t = np.asarray(times, dtype=np.float64)
    d = np.asarray(deltas, dtype=np.float64)
    if t.size != d.size or t.size < 3:
        return float("nan")
    spacing = np.diff(t)
    gaps = np.where(spacing > gap_factor * np.median(spacing))[0]
    start = gaps[-1] + 1 if gaps.size else 0
    t, d = t[start:], d[start:]
    if t.size < 3:
        return float("nan")
    sel = np.where(d <= tail_factor * d[-1])[0]
    lo = sel[0] if sel.size else 0
    lo = min(lo, t.size - min_points)
    lo = max(lo, 0)
    tt, dd = t[lo:], d[lo:]
    slope, intercept = np.polyfit(tt, dd, 1)
    if slope >= 0:
        return float("nan")
    return float(-intercept / slope)
