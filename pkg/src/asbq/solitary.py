"""Solitary-wave profiles and the perturbed initial-data families.

Traveling waves eta = Q(x - c*t), v = V(x - c*t) of the 1D system reduce,
after integrating both equations with decay at infinity, to the algebraic
relation Q = V/(c - eps*V) together with Q = c*V - eps*V^2/2 - eps*c*V''.
Eliminating Q gives one scalar profile equation

    R(V) = eps*c*V'' - c*V + eps*V^2/2 + V/(c - eps*V) = 0,

solved here by Newton iteration in coefficient space (matrix-free Jacobian,
GMRES with a constant-coefficient spectral preconditioner), seeded by a
sech^2 ansatz and falling back to continuation in c from near the existence
threshold c = 1.
"""

import struct
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq
from scipy.sparse.linalg import LinearOperator, lgmres

from ._fft import rfft, irfft
from .grid import TorusGrid, make_grid
from .model import WaveState

PROFILE_MAGIC = b"ASPW"
PROFILE_VERSION = 1


class ConstructionError(RuntimeError):
    """Newton iteration failed to reach the residual target."""

    def __init__(self, msg: str, last_residual: float):
        super().__init__(msg)
        self.last_residual = last_residual


@dataclass
class SolitaryProfile:
    """Elevation/velocity profile pair of a right-moving solitary wave."""

    c: float
    eps: float
    grid: TorusGrid
    eta: np.ndarray
    v: np.ndarray
    residual_norm: float

    @property
    def amplitude(self) -> float:
        return float(np.max(self.eta))

    def save(self, path):
        header = struct.pack("<4sBddQd", PROFILE_MAGIC, PROFILE_VERSION,
                             self.c, self.eps, self.grid.n_x, self.grid.l_x)
        with open(path, "wb") as fh:
            fh.write(header)
            fh.write(np.ascontiguousarray(self.eta, dtype="<f8").tobytes())
            fh.write(np.ascontiguousarray(self.v, dtype="<f8").tobytes())

    @classmethod
    def load(cls, path) -> "SolitaryProfile":
        with open(path, "rb") as fh:
            raw = fh.read()
        head_size = struct.calcsize("<4sBddQd")
        if len(raw) < head_size:
            raise ValueError(f"{path}: truncated profile header")
        magic, version, c, eps, n_x, l_x = struct.unpack("<4sBddQd", raw[:head_size])
        if magic != PROFILE_MAGIC:
            raise ValueError(f"{path}: bad magic {magic!r}")
        if version != PROFILE_VERSION:
            raise ValueError(f"{path}: unsupported version {version}")
        need = head_size + 2 * 8 * n_x
        if len(raw) != need:
            raise ValueError(f"{path}: expected {need} bytes, got {len(raw)}")
        body = np.frombuffer(raw, dtype="<f8", offset=head_size)
        grid = make_grid(1, int(n_x), float(l_x))
        eta = body[:n_x].astype(np.float64)
        v = body[n_x:].astype(np.float64)
        res = profile_residual(v, c, eps, grid)
        return cls(c, eps, grid, eta, v, float(np.max(np.abs(res))))


def decay_rate(c: float, eps: float) -> float:
    """Far-field exponential rate of V: sqrt((c^2 - 1)/(eps*c^2))."""
    return float(np.sqrt((c * c - 1.0) / (eps * c * c)))


def crest_amplitude(c: float, eps: float) -> float:
    """Peak of V from the first integral of the profile equation.

    (V')^2/2 integrates R(V); the homoclinic orbit turns where
    c*V^2/2 - eps*V^3/6 + V/eps + (c/eps^2)*log(1 - eps*V/c) returns to 0.
    """
    def g(v):
        return (c * v * v / 2.0 - eps * v ** 3 / 6.0 + v / eps
                + (c / eps ** 2) * np.log1p(-eps * v / c))

    v_lo = 1e-8 * (c - 1.0 / c) / eps
    v_hi = (c / eps) * (1.0 - 1e-12)
    if g(v_lo) <= 0 or g(v_hi) >= 0:
        # fall back to the weakly nonlinear estimate
        return 3.0 * c * (c * c - 1.0) / (eps * (c * c + 2.0))
    return float(brentq(g, v_lo, v_hi, xtol=1e-14, rtol=1e-15))


def _second_derivative(v: np.ndarray, grid: TorusGrid) -> np.ndarray:
    nh = grid.n_x // 2 + 1
    k = grid.kx[:nh]
    return irfft(rfft(v) * (-(k * k)), grid.n_x)


def profile_residual(v: np.ndarray, c: float, eps: float, grid: TorusGrid) -> np.ndarray:
    """R(V) = eps*c*V'' - c*V + eps*V^2/2 + V/(c - eps*V); zero iff V is a profile."""
    if not c > 1:
        raise ValueError(f"profiles exist for c > 1, got c = {c}")
    if not eps > 0:
        raise ValueError(f"eps must be > 0, got {eps}")
    pole = np.max(eps * v)
    if pole >= c:
        i = int(np.argmax(eps * v))
        raise ValueError(
            f"eps*V reaches {pole:.6g} >= c at x = {grid.x[i]:.6g}; "
            "Q = V/(c - eps*V) has a pole")
    return (eps * c * _second_derivative(v, grid) - c * v
            + eps * v * v / 2.0 + v / (c - eps * v))


def _symmetrize(v: np.ndarray) -> np.ndarray:
    # even reflection about x = 0 (node layout: x=0 at index N/2-1,
    # the boundary node x = pi*L at index N-1 is its own mirror)
    out = v.copy()
    out[:-1] = 0.5 * (v[:-1] + v[:-1][::-1])
    return out


def _center(v: np.ndarray, grid: TorusGrid) -> np.ndarray:
    return np.roll(v, grid.n_x // 2 - 1 - int(np.argmax(v)))


def _newton(v0: np.ndarray, c: float, eps: float, grid: TorusGrid,
            tol_rel: float, max_iter: int) -> tuple[np.ndarray, float]:
    n = grid.n_x
    nh = n // 2 + 1
    k2 = grid.kx[:nh] ** 2
    precond_mult = 1.0 / (-eps * c * k2 - c + 1.0 / c)
    crest = crest_amplitude(c, eps)

    v = _symmetrize(v0.copy())
    res = profile_residual(v, c, eps, grid)
    rnorm = float(np.max(np.abs(res)))
    for _ in range(max_iter):
        # scale the target by the expected crest so a collapse toward the
        # trivial branch V = 0 cannot masquerade as convergence
        target = tol_rel * max(float(np.max(np.abs(v))), 0.5 * crest)
        if rnorm <= target:
            return v, rnorm
        diag = -c + eps * v + c / (c - eps * v) ** 2

        def matvec(w):
            return eps * c * _second_derivative(w, grid) + diag * w

        def apply_precond(w):
            return irfft(rfft(w) * precond_mult, n)

        jac = LinearOperator((n, n), matvec=matvec, dtype=np.float64)
        pre = LinearOperator((n, n), matvec=apply_precond, dtype=np.float64)
        dv, _info = lgmres(jac, -res, M=pre, rtol=1e-9, atol=0.0, maxiter=50)
        if not np.all(np.isfinite(dv)):
            raise ConstructionError(f"linear solve diverged at c = {c}", rnorm)
        accepted = False
        for alpha in (1.0, 0.5, 0.25, 0.1, 0.03):
            trial = _symmetrize(v + alpha * dv)
            if np.max(eps * trial) >= 0.999 * c:
                continue
            if np.max(trial) < 0.25 * np.max(v):
                continue  # heading for the trivial branch
            trial_res = profile_residual(trial, c, eps, grid)
            trial_norm = float(np.max(np.abs(trial_res)))
            if trial_norm < rnorm or trial_norm <= target:
                v, res, rnorm = trial, trial_res, trial_norm
                accepted = True
                break
        if not accepted:
            raise ConstructionError(
                f"Newton step rejected at c = {c} (residual {rnorm:.3e})", rnorm)
    if rnorm <= tol_rel * float(np.max(np.abs(v))):
        return v, rnorm
    raise ConstructionError(
        f"Newton did not converge at c = {c} in {max_iter} iterations "
        f"(residual {rnorm:.3e})", rnorm)


def _seed(c: float, eps: float, grid: TorusGrid) -> np.ndarray:
    lam = decay_rate(c, eps)
    amp = crest_amplitude(c, eps)
    return amp / np.cosh(0.5 * lam * grid.x) ** 2


def solve_profile(c: float, eps: float, grid: TorusGrid, seed=None,
                  tol_rel: float = 1e-11, max_iter: int = 60) -> SolitaryProfile:
    """Construct the profile pair for speed c > 1 on a 1D grid.

    Newton iteration from a sech^2 seed; on failure, continuation in c from
    1.05 upward reusing each converged profile as the next seed.
    """
    if grid.dims != 1:
        raise ValueError("profiles are constructed on 1D grids")
    if not c > 1:
        raise ValueError(f"solitary waves exist for c > 1, got c = {c}")
    if not eps > 0:
        raise ValueError(f"eps must be > 0, got {eps}")
    lam = decay_rate(c, eps)
    tail = np.exp(-lam * np.pi * grid.l_x)
    if tail >= 1e-12:
        warnings.warn(
            f"grid may be short for c = {c}: boundary tail ~ {tail:.2e} "
            "(>= 1e-12); consider a larger l_x", stacklevel=2)

    crest = crest_amplitude(c, eps)

    def converged(v_arr: np.ndarray) -> bool:
        # reject solutions that left the solitary branch
        return abs(float(np.max(v_arr)) - crest) <= 0.05 * crest

    v = None
    try:
        v0 = _seed(c, eps, grid) if seed is None else np.asarray(seed, dtype=np.float64)
        cand, rnorm = _newton(v0, c, eps, grid, tol_rel, max_iter)
        if converged(cand):
            v = cand
        elif seed is not None:
            raise ConstructionError(
                f"iteration left the solitary branch (max V = {np.max(cand):.3g}, "
                f"expected {crest:.3g})", rnorm)
    except ConstructionError:
        if seed is not None:
            raise
    if v is None:
        # continuation ladder: geometric steps in (c - 1) starting at 1.05,
        # subdividing a step when a rung fails to converge
        ladder = []
        step = min(0.05, (c - 1.0) / 2.0)
        ck = 1.0 + step
        while ck < c:
            ladder.append(ck)
            step *= 1.5
            ck += step
        ladder.append(c)
        v = _seed(ladder[0], eps, grid)
        c_prev = ladder[0]
        pending = list(ladder)
        attempts = 0
        while pending:
            ck = pending[0]
            try:
                v_next, rnorm = _newton(v, ck, eps, grid, tol_rel, max_iter)
                if abs(float(np.max(v_next)) - crest_amplitude(ck, eps)) \
                        > 0.05 * crest_amplitude(ck, eps):
                    raise ConstructionError(
                        f"rung c = {ck} left the solitary branch", rnorm)
            except ConstructionError:
                attempts += 1
                if attempts > 40 or ck - c_prev < 1e-4:
                    raise
                pending.insert(0, 0.5 * (c_prev + ck))
                continue
            v, c_prev = v_next, ck
            pending.pop(0)

    v = _center(v, grid)
    v = _symmetrize(v)
    res = profile_residual(v, c, eps, grid)
    rnorm = float(np.max(np.abs(res)))
    eta = v / (c - eps * v)
    return SolitaryProfile(c, eps, grid, eta, v, rnorm)


def fourier_shift(values: np.ndarray, shift: float, grid: TorusGrid) -> np.ndarray:
    """Evaluate the trigonometric interpolant of a 1D field at x + shift."""
    nh = grid.n_x // 2 + 1
    k = grid.kx[:nh]
    mult = np.exp(1j * k * shift)
    mult[-1] = np.cos(k[-1] * shift)  # real interpolant at Nyquist
    return irfft(rfft(values) * mult, grid.n_x)


def line_extend(profile: SolitaryProfile, grid2d: TorusGrid) -> WaveState:
    """Extend a 1D profile constantly in y: a line solitary wave at t = 0."""
    if grid2d.dims != 2:
        raise ValueError("line_extend needs a 2D grid")
    if grid2d.n_x != profile.grid.n_x or grid2d.l_x != profile.grid.l_x:
        raise ValueError(
            f"grid mismatch: profile on (n_x={profile.grid.n_x}, l_x={profile.grid.l_x}), "
            f"target (n_x={grid2d.n_x}, l_x={grid2d.l_x})")
    ones = np.ones((1, grid2d.n_y))
    eta = profile.eta[:, None] * ones
    vx = profile.v[:, None] * ones
    vy = np.zeros(grid2d.shape)
    return WaveState.from_arrays(grid2d, 0.0, eta, vx, vy)


def _bump(grid: TorusGrid, alpha: float) -> np.ndarray:
    if alpha <= 0:
        raise ValueError(f"alpha must be > 0, got {alpha}")
    if grid.dims == 1:
        return np.exp(-grid.x ** 2)
    return np.exp(-(grid.x[:, None] ** 2 + alpha * grid.y[None, :] ** 2))


def gaussian_on_eta(profile: SolitaryProfile, grid2d: TorusGrid,
                    amp: float, alpha: float = 1.0) -> WaveState:
    state = line_extend(profile, grid2d)
    eta = state.eta.physical + amp * _bump(grid2d, alpha)
    return WaveState.from_arrays(grid2d, 0.0, eta, state.vx.physical, state.vy.physical)


def gaussian_on_vx(profile: SolitaryProfile, grid2d: TorusGrid,
                   amp: float, alpha: float = 1.0) -> WaveState:
    state = line_extend(profile, grid2d)
    vx = state.vx.physical + amp * _bump(grid2d, alpha)
    return WaveState.from_arrays(grid2d, 0.0, state.eta.physical, vx, state.vy.physical)


def gaussian_on_vy(profile: SolitaryProfile, grid2d: TorusGrid,
                   amp: float, alpha: float = 1.0) -> WaveState:
    state = line_extend(profile, grid2d)
    vy = state.vy.physical + amp * _bump(grid2d, alpha)
    return WaveState.from_arrays(grid2d, 0.0, state.eta.physical, state.vx.physical, vy)


def cos_deform(profile: SolitaryProfile, grid2d: TorusGrid, a: float) -> WaveState:
    """eta(x, y) = Q(x + a*cos y), velocities unperturbed.

    The deformed elevation is evaluated by Fourier interpolation of the 1D
    profile at the shifted nodes, row by row in y.
    """
    if grid2d.dims != 2:
        raise ValueError("cos_deform needs a 2D grid")
    if abs(a) >= np.pi * grid2d.l_x:
        raise ValueError(
            f"deformation amplitude {a} exceeds the half-period {np.pi * grid2d.l_x:.6g}")
    state = line_extend(profile, grid2d)
    eta = np.empty(grid2d.shape)
    for j, yj in enumerate(grid2d.y):
        eta[:, j] = fourier_shift(profile.eta, a * np.cos(yj), profile.grid)
    return WaveState.from_arrays(grid2d, 0.0, eta, state.vx.physical, state.vy.physical)


def cavitation(grid: TorusGrid, kappa: float, alpha: float = 1.0) -> WaveState:
    """Depression data kappa*exp(-(x^2 + alpha*y^2)) with zero velocity (kappa < 0)."""
    if not kappa < 0:
        raise ValueError(f"cavitation data needs kappa < 0, got {kappa}")
    return _pulse(grid, kappa, alpha)


def localized(grid: TorusGrid, kappa: float, alpha: float = 1.0) -> WaveState:
    """Elevation hump kappa*exp(-(x^2 + alpha*y^2)) with zero velocity (kappa > 0)."""
    if not kappa > 0:
        raise ValueError(f"localized data needs kappa > 0, got {kappa}")
    return _pulse(grid, kappa, alpha)


def _pulse(grid: TorusGrid, kappa: float, alpha: float) -> WaveState:
    eta = kappa * _bump(grid, alpha)
    zeros = np.zeros(grid.shape)
    if grid.dims == 1:
        return WaveState.from_arrays(grid, 0.0, eta, zeros)
    return WaveState.from_arrays(grid, 0.0, eta, zeros, zeros.copy())


_PROFILE_KINDS = {"gaussian_on_eta", "gaussian_on_vx", "gaussian_on_vy", "cos_deform"}


def build_initial_data(grid: TorusGrid, spec: dict,
                       profile: SolitaryProfile | None = None) -> WaveState:
    """Dispatch an initial-data spec dict to the builder functions.

    ``spec["kind"]`` selects the family; profile-based kinds require the
    matching 1D profile to be passed in.
    """
    kind = spec.get("kind")
    if kind in _PROFILE_KINDS:
        if grid.dims != 2:
            raise ValueError(f"{kind} initial data needs a 2D grid")
        if profile is None:
            raise ValueError(f"{kind} initial data needs a solitary profile")
        if kind == "cos_deform":
            return cos_deform(profile, grid, spec["a"])
        builder = {"gaussian_on_eta": gaussian_on_eta,
                   "gaussian_on_vx": gaussian_on_vx,
                   "gaussian_on_vy": gaussian_on_vy}[kind]
        return builder(profile, grid, spec["amp"], spec.get("alpha", 1.0))
    if kind == "cavitation":
        return cavitation(grid, spec["kappa"], spec.get("alpha", 1.0))
    if kind == "localized":
        return localized(grid, spec["kappa"], spec.get("alpha", 1.0))
    raise ValueError(f"unknown initial-data kind {kind!r}")
