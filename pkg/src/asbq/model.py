"""Right-hand side of the Amick-Schonbek system in 1D and 2D.

The system evolved here is

    eta_t = -div v - eps_nl * div(eta v)
    (1 - eps_disp * Lap) v_t = -grad eta - (eps_nl/2) * grad |v|^2

with split nonlinearity / dispersion coefficients: eps_nl = eps_disp = eps
is the Boussinesq-scaled system, eps_nl = 1 with small eps_disp is the
rescaled form used for small-dispersion experiments.  Products are formed
pointwise on the grid and derivatives on the coefficients (pseudospectral),
and the velocity equation's Helmholtz operator is inverted spectrally so the
whole tendency is explicit.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ._fft import rfft, irfft, rfftn, irfftn
from .grid import SpectralField, TorusGrid


@dataclass(frozen=True)
class ModelParams:
    """Pair of dimensionless coefficients (eps_nl, eps_disp), both >= 0."""

    eps_nl: float
    eps_disp: float

    def __post_init__(self):
        if self.eps_nl < 0:
            raise ValueError(f"eps_nl must be >= 0, got {self.eps_nl}")
        if self.eps_disp < 0:
            raise ValueError(f"eps_disp must be >= 0, got {self.eps_disp}")

    @classmethod
    def scaled(cls, eps: float) -> "ModelParams":
        """Both coefficients equal to eps (the long-wave scaled system)."""
        return cls(eps, eps)

    @classmethod
    def weak_dispersion(cls, eps_disp: float) -> "ModelParams":
        """Order-one nonlinearity with small dispersion (hydrodynamic rescaling)."""
        return cls(1.0, eps_disp)


@dataclass
class WaveState:
    """Surface elevation and horizontal velocity on one grid at time t."""

    t: float
    eta: SpectralField
    vx: SpectralField
    vy: SpectralField | None = None

    def __post_init__(self):
        g = self.eta.grid
        if self.vx.grid is not g:
            raise ValueError("eta and vx must share one grid")
        if g.dims == 2:
            if self.vy is None or self.vy.grid is not g:
                raise ValueError("2D states need vy on the same grid")
        elif self.vy is not None:
            raise ValueError("1D states have no vy component")

    @property
    def grid(self) -> TorusGrid:
        return self.eta.grid

    @classmethod
    def from_arrays(cls, grid: TorusGrid, t: float, eta, vx, vy=None) -> "WaveState":
        f = lambda a: SpectralField.from_physical(grid, a)
        return cls(t, f(eta), f(vx), f(vy) if grid.dims == 2 else None)

    def fields(self) -> dict:
        out = {"eta": self.eta, "vx": self.vx}
        if self.vy is not None:
            out["vy"] = self.vy
        return out


class Tendency(NamedTuple):
    eta: np.ndarray
    vx: np.ndarray
    vy: np.ndarray | None


class ModelRHS:
    """Tendency operator bound to a grid and parameter pair.

    ``__call__`` maps a WaveState to physical tendency arrays; ``half`` is
    the hot path used by the integrator and works on a stack of rfft-layout
    spectra (eta, vx[, vy]) without materializing intermediate states.
    """

    def __init__(self, grid: TorusGrid, params: ModelParams):
        if params.eps_disp == 0:
            raise ValueError(
                "eps_disp = 0 is the dispersionless shallow-water limit, "
                "which develops shocks and is not supported by this scheme")
        self.grid = grid
        self.params = params
        nx, lx = grid.n_x, grid.l_x
        kx = grid.kx_deriv
        if grid.dims == 1:
            nh = nx // 2 + 1
            kxh = kx[:nh].copy()
            self._dx = 1j * kxh
            self._helm = 1.0 / (1.0 + params.eps_disp * (grid.kx[:nh] ** 2))
            self.n_fields = 2
        else:
            ny = grid.n_y
            nh = ny // 2 + 1
            ky_half = np.rint(np.fft.rfftfreq(ny) * ny) / grid.l_y
            ky_half_deriv = ky_half.copy()
            ky_half_deriv[-1] = 0.0  # Nyquist
            self._dx = 1j * kx[:, None]
            self._dy = 1j * ky_half_deriv[None, :]
            k2 = grid.kx[:, None] ** 2 + ky_half[None, :] ** 2
            self._helm = 1.0 / (1.0 + params.eps_disp * k2)
            self.n_fields = 3
        self._shape = grid.shape

    def half_from_state(self, state: WaveState) -> np.ndarray:
        arrs = [state.eta.physical, state.vx.physical]
        if self.grid.dims == 2:
            arrs.append(state.vy.physical)
        if self.grid.dims == 1:
            return np.stack([rfft(a) for a in arrs])
        return np.stack([rfftn(a) for a in arrs])

    def half(self, yh: np.ndarray) -> np.ndarray:
        enl, half_enl = self.params.eps_nl, 0.5 * self.params.eps_nl
        if self.grid.dims == 1:
            eh, vh = yh
            n = self._shape[0]
            eta = irfft(eh, n)
            v = irfft(vh, n)
            flux_h = rfft(eta * v)
            q_h = rfft(v * v)
            eta_t = -self._dx * (vh + enl * flux_h)
            v_t = -self._dx * (eh + half_enl * q_h) * self._helm
            return np.stack([eta_t, v_t])
        eh, vxh, vyh = yh
        eta = irfftn(eh, self._shape)
        vx = irfftn(vxh, self._shape)
        vy = irfftn(vyh, self._shape)
        fx_h = rfftn(eta * vx)
        fy_h = rfftn(eta * vy)
        q_h = rfftn(vx * vx + vy * vy)
        eta_t = -(self._dx * (vxh + enl * fx_h) + self._dy * (vyh + enl * fy_h))
        s = (eh + half_enl * q_h) * self._helm
        return np.stack([eta_t, -self._dx * s, -self._dy * s])

    def __call__(self, state: WaveState) -> Tendency:
        yh = self.half_from_state(state)
        out = self.half(yh)
        if self.grid.dims == 1:
            return Tendency(irfft(out[0], self._shape[0]),
                            irfft(out[1], self._shape[0]), None)
        return Tendency(irfftn(out[0], self._shape),
                        irfftn(out[1], self._shape),
                        irfftn(out[2], self._shape))


def rhs_1d(state: WaveState, params: ModelParams) -> Tendency:
    if state.grid.dims != 1:
        raise ValueError("rhs_1d needs a 1D state")
    return ModelRHS(state.grid, params)(state)


def rhs_2d(state: WaveState, params: ModelParams) -> Tendency:
    if state.grid.dims != 2:
        raise ValueError("rhs_2d needs a 2D state")
    return ModelRHS(state.grid, params)(state)


def cavitation_indicator(state: WaveState, params: ModelParams) -> float:
    """Grid minimum of 1 + eps_nl*eta (total depth proxy; may go negative)."""
    return float(1.0 + params.eps_nl * np.min(state.eta.physical))
