"""Periodic grids and discrete Fourier calculus.

Grids live on the torus [-pi*L, pi*L) per direction with nodes
x_n = -pi*L + n*2*pi*L/N for n = 1..N, and wavenumbers k = n/L in signed FFT
ordering (0, 1, ..., N/2-1, -N/2, ..., -1).  Mode counts are powers of two.
The Nyquist mode is zeroed in odd-order derivative multipliers so that
differentiation maps real fields to real fields.

Spectral coefficients follow the "forward" normalization: u_hat = FFT(u)/N,
so that Parseval reads  integral |u|^2 dx = (2*pi*L_x)(2*pi*L_y) * sum |u_hat|^2.
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ._fft import fftn, ifftn


def _is_pow2(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def _nodes(n: int, l: float) -> np.ndarray:
    # x_n = -pi*L + n*h, n = 1..N, h = 2*pi*L/N
    h = 2.0 * np.pi * l / n
    return -np.pi * l + h * np.arange(1, n + 1)


def _wavenumbers(n: int, l: float) -> np.ndarray:
    # signed integer mode index divided by L
    modes = np.fft.fftfreq(n) * n
    return np.rint(modes) / l


@dataclass(eq=False)
class TorusGrid:
    """Rectangular periodic grid with node and wavenumber metadata."""

    dims: int
    n_x: int
    l_x: float
    n_y: int | None = None
    l_y: float | None = None
    x: np.ndarray = field(init=False, repr=False)
    y: np.ndarray | None = field(init=False, repr=False, default=None)
    kx: np.ndarray = field(init=False, repr=False)
    ky: np.ndarray | None = field(init=False, repr=False, default=None)

    def __post_init__(self):
        self.x = _nodes(self.n_x, self.l_x)
        self.kx = _wavenumbers(self.n_x, self.l_x)
        if self.dims == 2:
            self.y = _nodes(self.n_y, self.l_y)
            self.ky = _wavenumbers(self.n_y, self.l_y)

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.n_x,) if self.dims == 1 else (self.n_x, self.n_y)

    @property
    def h_x(self) -> float:
        return 2.0 * np.pi * self.l_x / self.n_x

    @property
    def h_y(self) -> float:
        if self.dims == 1:
            raise ValueError("h_y undefined on a 1D grid")
        return 2.0 * np.pi * self.l_y / self.n_y

    @property
    def cell_measure(self) -> float:
        """Quadrature weight of one node (h_x in 1D, h_x*h_y in 2D)."""
        return self.h_x if self.dims == 1 else self.h_x * self.h_y

    @property
    def volume(self) -> float:
        return 2.0 * np.pi * self.l_x if self.dims == 1 else \
            (2.0 * np.pi * self.l_x) * (2.0 * np.pi * self.l_y)

    @cached_property
    def kx_deriv(self) -> np.ndarray:
        """kx with the Nyquist mode zeroed (odd-order derivative multiplier)."""
        k = self.kx.copy()
        k[self.n_x // 2] = 0.0
        k.setflags(write=False)
        return k

    @cached_property
    def ky_deriv(self) -> np.ndarray:
        if self.dims == 1:
            raise ValueError("ky undefined on a 1D grid")
        k = self.ky.copy()
        k[self.n_y // 2] = 0.0
        k.setflags(write=False)
        return k

    @cached_property
    def k_squared(self) -> np.ndarray:
        """|k|^2 on the full spectral layout (Nyquist included)."""
        if self.dims == 1:
            return self.kx ** 2
        return self.kx[:, None] ** 2 + self.ky[None, :] ** 2

    @cached_property
    def k_squared_deriv(self) -> np.ndarray:
        """|k|^2 built from the Nyquist-zeroed wavenumbers."""
        if self.dims == 1:
            return self.kx_deriv ** 2
        return self.kx_deriv[:, None] ** 2 + self.ky_deriv[None, :] ** 2

    def axis_index(self, axis: str) -> int:
        if axis == "x":
            return 0
        if axis == "y":
            if self.dims == 1:
                raise ValueError("axis 'y' undefined on a 1D grid")
            return 1
        raise ValueError(f"unknown axis {axis!r}")

    def origin_index(self, axis: str) -> int:
        """Index of the node sitting exactly at coordinate 0 on the axis."""
        n = self.n_x if axis == "x" else self.n_y
        self.axis_index(axis)
        return n // 2 - 1


def make_grid(dims: int, n_x: int, l_x: float,
              n_y: int | None = None, l_y: float | None = None) -> TorusGrid:
    """Build a TorusGrid, validating mode counts and scale factors.

    Parameters
    ----------
    dims : 1 or 2
    n_x, n_y : mode counts, powers of two >= 4 (n_y only in 2D)
    l_x, l_y : half-period scale factors > 0; the domain is [-pi*L, pi*L)
    """
    if dims not in (1, 2):
        raise ValueError(f"dims must be 1 or 2, got {dims}")
    if not isinstance(n_x, (int, np.integer)) or not _is_pow2(int(n_x)) or n_x < 4:
        raise ValueError(f"n_x must be a power of two >= 4, got {n_x}")
    if not l_x > 0:
        raise ValueError(f"l_x must be positive, got {l_x}")
    if dims == 1:
        if n_y is not None or l_y is not None:
            raise ValueError("n_y/l_y are not allowed on a 1D grid")
        return TorusGrid(1, int(n_x), float(l_x))
    if n_y is None or l_y is None:
        raise ValueError("2D grids require n_y and l_y")
    if not isinstance(n_y, (int, np.integer)) or not _is_pow2(int(n_y)) or n_y < 4:
        raise ValueError(f"n_y must be a power of two >= 4, got {n_y}")
    if not l_y > 0:
        raise ValueError(f"l_y must be positive, got {l_y}")
    return TorusGrid(2, int(n_x), float(l_x), int(n_y), float(l_y))


class SpectralField:
    """Real field with lazily synchronized physical and spectral data.

    Whichever representation is missing is computed on first access and
    cached; instances are treated as immutable once built.
    """

    __slots__ = ("grid", "_physical", "_spectral")

    def __init__(self, grid: TorusGrid, physical=None, spectral=None):
        if physical is None and spectral is None:
            raise ValueError("need at least one representation")
        if physical is not None:
            physical = np.asarray(physical, dtype=np.float64)
            if physical.shape != grid.shape:
                raise ValueError(
                    f"physical shape {physical.shape} != grid shape {grid.shape}")
            physical = physical.copy()
            physical.setflags(write=False)
        if spectral is not None:
            spectral = np.asarray(spectral, dtype=np.complex128)
            if spectral.shape != grid.shape:
                raise ValueError(
                    f"spectral shape {spectral.shape} != grid shape {grid.shape}")
            spectral = spectral.copy()
            spectral.setflags(write=False)
        self.grid = grid
        self._physical = physical
        self._spectral = spectral

    @classmethod
    def from_physical(cls, grid: TorusGrid, values) -> "SpectralField":
        return cls(grid, physical=values)

    @classmethod
    def from_spectral(cls, grid: TorusGrid, coefficients) -> "SpectralField":
        return cls(grid, spectral=coefficients)

    @property
    def physical(self) -> np.ndarray:
        if self._physical is None:
            p = ifftn(self._spectral, norm="forward").real
            p.setflags(write=False)
            self._physical = p
        return self._physical

    @property
    def spectral(self) -> np.ndarray:
        if self._spectral is None:
            s = fftn(self._physical, norm="forward")
            s.setflags(write=False)
            self._spectral = s
        return self._spectral


def hermitian_full(half: np.ndarray, n_last: int) -> np.ndarray:
    """Expand an rfft-layout array (real input transform, nonnegative
    frequencies along the last axis) to the full signed layout of fftn."""
    out_shape = half.shape[:-1] + (n_last,)
    full = np.empty(out_shape, dtype=np.complex128)
    n_half = half.shape[-1]
    full[..., :n_half] = half
    cols = np.arange(n_last - n_half, 0, -1)
    mirror = np.conj(half[..., cols])
    if half.ndim == 2:
        rows = np.concatenate(([0], np.arange(half.shape[0] - 1, 0, -1)))
        mirror = mirror[rows]
    full[..., n_half:] = mirror
    return full


def spectral_derivative(f: SpectralField, direction: str, order: int) -> SpectralField:
    """Differentiate by multiplying coefficients with (i*k)^order.

    Odd orders zero the Nyquist mode so the result of differentiating a real
    field stays real.
    """
    if order not in (1, 2):
        raise ValueError(f"order must be 1 or 2, got {order}")
    g = f.grid
    ax = g.axis_index(direction)
    if direction == "x":
        k = g.kx_deriv if order == 1 else g.kx
    else:
        k = g.ky_deriv if order == 1 else g.ky
    mult = (1j * k) ** order
    if g.dims == 2:
        mult = mult[:, None] if ax == 0 else mult[None, :]
    return SpectralField.from_spectral(g, f.spectral * mult)


def helmholtz_inverse(f: SpectralField, eps_disp: float) -> SpectralField:
    """Apply (1 - eps_disp * Laplacian)^-1, i.e. divide coefficients by
    1 + eps_disp*|k|^2.  The identity when eps_disp = 0."""
    if eps_disp < 0:
        raise ValueError(f"eps_disp must be >= 0, got {eps_disp}")
    if eps_disp == 0:
        return f
    g = f.grid
    return SpectralField.from_spectral(g, f.spectral / (1.0 + eps_disp * g.k_squared))


def lp_norm(f: SpectralField, p) -> float:
    """Grid L^p norm: max of |f| for p = inf, (cell * sum |f|^p)^(1/p) else."""
    vals = f.physical
    if p in ("inf", np.inf):
        return float(np.max(np.abs(vals)))
    if p in (2, 4):
        return float((f.grid.cell_measure * np.sum(np.abs(vals) ** p)) ** (1.0 / p))
    raise ValueError(f"unsupported p {p!r}; expected 2, 4 or 'inf'")


def l2_norm_parseval(f: SpectralField) -> float:
    return float(np.sqrt(f.grid.volume * np.sum(np.abs(f.spectral) ** 2)))


def h1_seminorm(f: SpectralField) -> float:
    """L^2 norm of the gradient, evaluated via Parseval.

    Uses the Nyquist-zeroed wavenumbers so the value agrees with the
    quadrature of |grad f|^2 computed through spectral_derivative.
    """
    g = f.grid
    return float(np.sqrt(g.volume * np.sum(g.k_squared_deriv * np.abs(f.spectral) ** 2)))


def norm_functionals(f: SpectralField, requests=(2, 4, "inf", "h1")) -> dict:
    """Evaluate a batch of norms; keys of the result mirror the requests."""
    out = {}
    for req in requests:
        if req == "h1":
            out[req] = h1_seminorm(f)
        else:
            out[req] = lp_norm(f, req)
    return out
