"""Fixed-step classical RK4 evolution with callback hooks and stop policies.

One evolution is sequential; callbacks receive read-only state snapshots at
their stride (plus step 0 and the final step).  A callback may return a dict
to request a stop; the NaN guard runs every step.  On any stop or fault the
most recent materialized snapshot is kept as the last good state.
"""

import time
from dataclasses import dataclass, field

import numpy as np

from ._fft import irfft, irfftn
from .grid import SpectralField, hermitian_full
from .model import ModelRHS, Tendency, WaveState


class IntegrationFault(RuntimeError):
    """Non-finite values appeared while stepping."""

    def __init__(self, step: int, t: float, last_good: WaveState | None = None):
        super().__init__(f"non-finite state at step {step} (t = {t:.6g})")
        self.step = step
        self.t = t
        self.last_good = last_good


@dataclass
class EvolveConfig:
    """Fixed step count N_t over [0, t_end]; dt = t_end / N_t."""

    t_end: float
    n_steps: int
    callback_stride: int | None = None

    def __post_init__(self):
        if self.n_steps < 1:
            raise ValueError(f"n_steps must be >= 1, got {self.n_steps}")
        if not self.t_end > 0:
            raise ValueError(f"t_end must be > 0, got {self.t_end}")
        if self.callback_stride is None:
            self.callback_stride = max(1, self.n_steps // 200)
        if self.callback_stride < 1:
            raise ValueError("callback_stride must be >= 1")

    @property
    def dt(self) -> float:
        return self.t_end / self.n_steps


@dataclass
class EventLog:
    """What happened during an evolution run."""

    records: list = field(default_factory=list)
    stop_event: dict | None = None
    steps_run: int = 0
    wall_time_s: float = 0.0


def rk4_update(y, t: float, dt: float, f):
    """One classical 4-stage Runge-Kutta step of y' = f(t, y)."""
    k1 = f(t, y)
    k2 = f(t + 0.5 * dt, y + (0.5 * dt) * k1)
    k3 = f(t + 0.5 * dt, y + (0.5 * dt) * k2)
    k4 = f(t + dt, y + dt * k3)
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _finite(arr: np.ndarray) -> bool:
    # a single non-finite entry makes the sum non-finite
    return bool(np.isfinite(arr.sum()))


def _rk4_half_step(yh: np.ndarray, dt: float, half) -> np.ndarray:
    """RK4 step on a spectral stack, minimizing temporary-array traffic.

    Mutates and returns ``yh``; algebraically identical to rk4_update.
    """
    k1 = half(yh)
    yt = yh + (0.5 * dt) * k1
    k2 = half(yt)
    np.multiply(k2, 0.5 * dt, out=yt)
    yt += yh
    k3 = half(yt)
    np.multiply(k3, dt, out=yt)
    yt += yh
    k4 = half(yt)
    k2 += k3
    k2 *= 2.0
    k2 += k1
    k2 += k4
    k2 *= dt / 6.0
    yh += k2
    return yh


def rk4_step(state: WaveState, dt: float, rhs) -> WaveState:
    """Advance a WaveState by one RK4 step of the tendency ``rhs``.

    ``dt`` may be negative (used by reversal checks) but not zero.
    """
    if dt == 0:
        raise ValueError("dt must be nonzero")
    grid = state.grid

    def f(t, y):
        s = WaveState.from_arrays(grid, t, *y)
        td = rhs(s)
        parts = [td.eta, td.vx] + ([td.vy] if grid.dims == 2 else [])
        return np.stack(parts)

    parts = [state.eta.physical, state.vx.physical]
    if grid.dims == 2:
        parts.append(state.vy.physical)
    y1 = rk4_update(np.stack(parts), state.t, dt, f)
    if not _finite(y1):
        raise IntegrationFault(step=1, t=state.t + dt, last_good=state)
    return WaveState.from_arrays(grid, state.t + dt, *y1)


def materialize(grid, yh: np.ndarray, t: float) -> WaveState:
    """Build a WaveState (both representations primed) from an rfft stack."""
    ntot = np.prod(grid.shape)
    fields = []
    for comp in yh:
        if grid.dims == 1:
            phys = irfft(comp, grid.n_x)
            full = hermitian_full(comp, grid.n_x) / ntot
        else:
            phys = irfftn(comp, grid.shape)
            full = hermitian_full(comp, grid.n_y) / ntot
        fields.append(SpectralField(grid, physical=phys, spectral=full))
    vy = fields[2] if grid.dims == 2 else None
    return WaveState(t, fields[0], fields[1], vy)


def evolve(state: WaveState, config: EvolveConfig, rhs, callbacks=()) -> tuple[WaveState, EventLog]:
    """Run ``config.n_steps`` RK4 steps (or fewer if a callback stops the run).

    ``rhs`` is either a ModelRHS (fast half-spectrum path) or any callable
    WaveState -> Tendency.  Callbacks are ``cb(step, state) -> dict | None``;
    an optional ``cb.stride`` attribute overrides the config stride.  A dict
    return value stops the run and is recorded in the event log.
    """
    log = EventLog()
    t0 = time.perf_counter()
    dt = config.dt

    fast = isinstance(rhs, ModelRHS)
    if fast:
        yh = rhs.half_from_state(state)
        current = state
    else:
        current = state

    def snapshot(step: int) -> WaveState:
        if fast:
            return materialize(state.grid, yh, state.t + step * dt)
        return current

    def fires(cb, step: int) -> bool:
        steps = getattr(cb, "steps", None)
        if steps is not None:
            return step in steps
        stride = getattr(cb, "stride", None) or config.callback_stride
        return step % stride == 0 or step == config.n_steps

    def fire_callbacks(step: int, snap: WaveState) -> dict | None:
        for cb in callbacks:
            if fires(cb, step):
                decision = cb(step, snap)
                if decision is not None:
                    decision = dict(decision)
                    decision.setdefault("step", step)
                    decision.setdefault("t", snap.t)
                    return decision
        return None

    last_good = snapshot(0)
    decision = fire_callbacks(0, last_good)
    if decision is not None:
        log.stop_event = decision
        log.records.append({"type": "stop", **decision})
        log.wall_time_s = time.perf_counter() - t0
        return last_good, log

    for step in range(1, config.n_steps + 1):
        if fast:
            yh = _rk4_half_step(yh, dt, rhs.half)
            if not _finite(yh):
                log.steps_run = step
                log.records.append({"type": "fault", "step": step,
                                    "t": state.t + step * dt})
                log.wall_time_s = time.perf_counter() - t0
                raise IntegrationFault(step, state.t + step * dt, last_good)
        else:
            try:
                current = rk4_step(current, dt, rhs)
            except IntegrationFault as fault:
                log.steps_run = step
                log.records.append({"type": "fault", "step": step, "t": fault.t})
                log.wall_time_s = time.perf_counter() - t0
                raise IntegrationFault(step, fault.t, last_good) from None

        fire = step == config.n_steps or any(fires(cb, step) for cb in callbacks)
        if fire:
            snap = snapshot(step)
            last_good = snap
            decision = fire_callbacks(step, snap)
            if decision is not None:
                log.stop_event = decision
                log.records.append({"type": "stop", **decision})
                log.steps_run = step
                log.wall_time_s = time.perf_counter() - t0
                return snap, log

    log.steps_run = config.n_steps
    log.wall_time_s = time.perf_counter() - t0
    return snapshot(config.n_steps), log
