"""Declarative experiment configs (strict JSON schema) and named presets.

A config document fully determines a run: grid, model coefficients, initial
data, time stepping, diagnostics cadence, singularity tracking, and outputs.
Presets are plain config dicts; loading one goes through the same parser and
validation as a user file.
"""

import json
from dataclasses import asdict, dataclass, field

from .tracker import WindowPolicy


class ConfigError(ValueError):
    """Schema violation, reported with a path-qualified message."""


@dataclass
class GridSpec:
    dims: int
    n_x: int
    l_x: float
    n_y: int | None = None
    l_y: float | None = None


@dataclass
class TimeSpec:
    t_end: float
    n_steps: int


@dataclass
class ModelSpec:
    eps_nl: float
    eps_disp: float


@dataclass
class DiagnosticsSpec:
    series_stride: int
    slice_stride: int
    slice_axes: tuple = ("x",)
    normalize: bool = False


@dataclass
class TrackingSpec:
    enabled: bool = False
    fields: tuple = ("eta",)
    axes: tuple = ("x",)
    stride: int = 1
    kappa_stop: float = 1.0
    stop: bool = True
    stop_fields: tuple | None = None
    window: WindowPolicy = field(default_factory=WindowPolicy)


@dataclass
class OutputSpec:
    directory: str = "."
    snapshot_times: tuple = ()


@dataclass
class ExperimentConfig:
    grid: GridSpec
    model: ModelSpec
    initial_data: dict
    time: TimeSpec
    diagnostics: DiagnosticsSpec
    tracking: TrackingSpec
    output: OutputSpec
    preset: str | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["preset"] is None:
            del d["preset"]
        for key in ("n_y", "l_y"):
            if d["grid"][key] is None:
                del d["grid"][key]
        if d["tracking"]["stop_fields"] is None:
            del d["tracking"]["stop_fields"]
        for key in ("fields", "axes", "stop_fields"):
            if key in d["tracking"]:
                d["tracking"][key] = list(d["tracking"][key])
        d["diagnostics"]["slice_axes"] = list(d["diagnostics"]["slice_axes"])
        d["output"]["snapshot_times"] = list(d["output"]["snapshot_times"])
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _check_keys(obj: dict, path: str, required: tuple, optional: tuple = ()):
    if not isinstance(obj, dict):
        raise ConfigError(f"{path}: expected an object")
    allowed = set(required) | set(optional)
    for key in obj:
        if key not in allowed:
            raise ConfigError(f"{path}.{key}: unknown key")
    for key in required:
        if key not in obj:
            raise ConfigError(f"{path}.{key}: missing required key")


def _number(obj, key, path, *, positive=False, nonnegative=False):
    val = obj[key]
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise ConfigError(f"{path}.{key}: expected a number")
    if positive and not val > 0:
        raise ConfigError(f"{path}.{key}: must be > 0")
    if nonnegative and val < 0:
        raise ConfigError(f"{path}.{key}: must be >= 0")
    return float(val)


def _integer(obj, key, path, *, minimum=None):
    val = obj[key]
    if isinstance(val, bool) or not isinstance(val, int):
        raise ConfigError(f"{path}.{key}: expected an integer")
    if minimum is not None and val < minimum:
        raise ConfigError(f"{path}.{key}: must be >= {minimum}")
    return val


def _string_list(obj, key, path, allowed):
    val = obj[key]
    if not isinstance(val, list) or not all(isinstance(v, str) for v in val):
        raise ConfigError(f"{path}.{key}: expected a list of strings")
    for v in val:
        if v not in allowed:
            raise ConfigError(f"{path}.{key}: {v!r} not one of {sorted(allowed)}")
    return tuple(val)


_INITIAL_KINDS = {
    "gaussian_on_eta": (("kind", "c", "amp"), ("alpha", "profile_path")),
    "gaussian_on_vx": (("kind", "c", "amp"), ("alpha", "profile_path")),
    "gaussian_on_vy": (("kind", "c", "amp"), ("alpha", "profile_path")),
    "cos_deform": (("kind", "c", "a"), ("profile_path",)),
    "cavitation": (("kind", "kappa"), ("alpha",)),
    "localized": (("kind", "kappa"), ("alpha",)),
    "file": (("kind", "path"), ()),
}

_PROFILE_KINDS = ("gaussian_on_eta", "gaussian_on_vx", "gaussian_on_vy", "cos_deform")


def _parse_initial_data(obj: dict, path: str, dims: int) -> dict:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ConfigError(f"{path}.kind: missing required key")
    kind = obj["kind"]
    if kind not in _INITIAL_KINDS:
        raise ConfigError(f"{path}.kind: unknown kind {kind!r}")
    required, optional = _INITIAL_KINDS[kind]
    _check_keys(obj, path, required, optional)
    out = {"kind": kind}
    if kind in _PROFILE_KINDS:
        if dims != 2:
            raise ConfigError(f"{path}.kind: {kind!r} requires a 2D grid")
        out["c"] = _number(obj, "c", path)
        if out["c"] <= 1:
            raise ConfigError(f"{path}.c: solitary waves need c > 1")
        if kind == "cos_deform":
            out["a"] = _number(obj, "a", path)
        else:
            out["amp"] = _number(obj, "amp", path)
            if "alpha" in obj:
                out["alpha"] = _number(obj, "alpha", path, positive=True)
            else:
                out["alpha"] = 1.0
        if "profile_path" in obj:
            if not isinstance(obj["profile_path"], str):
                raise ConfigError(f"{path}.profile_path: expected a string")
            out["profile_path"] = obj["profile_path"]
    elif kind in ("cavitation", "localized"):
        out["kappa"] = _number(obj, "kappa", path)
        if kind == "cavitation" and not out["kappa"] < 0:
            raise ConfigError(f"{path}.kappa: cavitation data needs kappa < 0")
        if kind == "localized" and not out["kappa"] > 0:
            raise ConfigError(f"{path}.kappa: localized data needs kappa > 0")
        out["alpha"] = _number(obj, "alpha", path, positive=True) if "alpha" in obj else 1.0
    else:  # file
        if not isinstance(obj["path"], str):
            raise ConfigError(f"{path}.path: expected a string")
        out["path"] = obj["path"]
    return out


def from_dict(doc: dict) -> ExperimentConfig:
    _check_keys(doc, "config",
                ("grid", "model", "initial_data", "time"),
                ("diagnostics", "tracking", "output", "preset"))

    gobj = doc["grid"]
    _check_keys(gobj, "grid", ("dims", "n_x", "l_x"), ("n_y", "l_y"))
    dims = _integer(gobj, "dims", "grid")
    if dims not in (1, 2):
        raise ConfigError("grid.dims: must be 1 or 2")
    n_x = _integer(gobj, "n_x", "grid", minimum=4)
    l_x = _number(gobj, "l_x", "grid", positive=True)
    n_y = l_y = None
    if dims == 2:
        if "n_y" not in gobj or "l_y" not in gobj:
            raise ConfigError("grid.n_y: required for 2D grids (with grid.l_y)")
        n_y = _integer(gobj, "n_y", "grid", minimum=4)
        l_y = _number(gobj, "l_y", "grid", positive=True)
    elif "n_y" in gobj or "l_y" in gobj:
        raise ConfigError("grid.n_y: not allowed for 1D grids")
    grid = GridSpec(dims, n_x, l_x, n_y, l_y)

    mobj = doc["model"]
    _check_keys(mobj, "model", ("eps_nl", "eps_disp"))
    model = ModelSpec(_number(mobj, "eps_nl", "model", nonnegative=True),
                      _number(mobj, "eps_disp", "model"))
    if not model.eps_disp > 0:
        raise ConfigError("model.eps_disp: must be > 0 "
                          "(the dispersionless limit is not integrable by this scheme)")

    tobj = doc["time"]
    _check_keys(tobj, "time", ("t_end", "n_steps"))
    tspec = TimeSpec(_number(tobj, "t_end", "time", positive=True),
                     _integer(tobj, "n_steps", "time", minimum=1))

    initial = _parse_initial_data(doc["initial_data"], "initial_data", dims)
    if initial["kind"] in _PROFILE_KINDS and model.eps_nl != model.eps_disp:
        raise ConfigError("initial_data.kind: solitary-wave data requires "
                          "eps_nl == eps_disp")

    dobj = doc.get("diagnostics", {})
    _check_keys(dobj, "diagnostics", (),
                ("series_stride", "slice_stride", "slice_axes", "normalize"))
    series_stride = (_integer(dobj, "series_stride", "diagnostics", minimum=1)
                     if "series_stride" in dobj else max(1, tspec.n_steps // 200))
    slice_stride = (_integer(dobj, "slice_stride", "diagnostics", minimum=1)
                    if "slice_stride" in dobj else max(1, tspec.n_steps // 100))
    axes_allowed = {"x", "y"} if dims == 2 else {"x"}
    slice_axes = (_string_list(dobj, "slice_axes", "diagnostics", axes_allowed)
                  if "slice_axes" in dobj else ("x",))
    normalize = dobj.get("normalize", False)
    if not isinstance(normalize, bool):
        raise ConfigError("diagnostics.normalize: expected a boolean")
    diagnostics = DiagnosticsSpec(series_stride, slice_stride, slice_axes, normalize)

    kobj = doc.get("tracking", {})
    _check_keys(kobj, "tracking", (),
                ("enabled", "fields", "axes", "stride", "kappa_stop", "stop",
                 "stop_fields", "window"))
    enabled = kobj.get("enabled", False)
    if not isinstance(enabled, bool):
        raise ConfigError("tracking.enabled: expected a boolean")
    fields_allowed = {"eta", "vx"} | ({"vy"} if dims == 2 else set())
    tfields = (_string_list(kobj, "fields", "tracking", fields_allowed)
               if "fields" in kobj else ("eta",))
    taxes = (_string_list(kobj, "axes", "tracking", axes_allowed)
             if "axes" in kobj else ("x",))
    tstride = (_integer(kobj, "stride", "tracking", minimum=1)
               if "stride" in kobj else max(1, tspec.n_steps // 20))
    kappa = (_number(kobj, "kappa_stop", "tracking", positive=True)
             if "kappa_stop" in kobj else 1.0)
    stop = kobj.get("stop", True)
    if not isinstance(stop, bool):
        raise ConfigError("tracking.stop: expected a boolean")
    stop_fields = (_string_list(kobj, "stop_fields", "tracking", fields_allowed)
                   if "stop_fields" in kobj else None)
    wobj = kobj.get("window", {})
    _check_keys(wobj, "tracking.window", (),
                ("lo_frac", "hi_frac", "floor_factor", "min_modes"))
    try:
        window = WindowPolicy(
            lo_frac=_number(wobj, "lo_frac", "tracking.window") if "lo_frac" in wobj else 0.125,
            hi_frac=_number(wobj, "hi_frac", "tracking.window") if "hi_frac" in wobj else 0.75,
            floor_factor=(_number(wobj, "floor_factor", "tracking.window", positive=True)
                          if "floor_factor" in wobj else 100.0),
            min_modes=(_integer(wobj, "min_modes", "tracking.window", minimum=3)
                       if "min_modes" in wobj else 16))
    except ValueError as exc:
        raise ConfigError(f"tracking.window: {exc}") from None
    tracking = TrackingSpec(enabled, tfields, taxes, tstride, kappa, stop,
                            stop_fields, window)

    oobj = doc.get("output", {})
    _check_keys(oobj, "output", (), ("directory", "snapshot_times"))
    directory = oobj.get("directory", ".")
    if not isinstance(directory, str):
        raise ConfigError("output.directory: expected a string")
    snap_times = oobj.get("snapshot_times", [])
    if (not isinstance(snap_times, list)
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool)
                       for v in snap_times)):
        raise ConfigError("output.snapshot_times: expected a list of numbers")
    for v in snap_times:
        if v < 0 or v > tspec.t_end:
            raise ConfigError(f"output.snapshot_times: {v} outside [0, t_end]")
    output = OutputSpec(directory, tuple(float(v) for v in snap_times))

    preset = doc.get("preset")
    if preset is not None and not isinstance(preset, str):
        raise ConfigError("preset: expected a string")

    return ExperimentConfig(grid, model, initial, tspec, diagnostics,
                            tracking, output, preset)


def parse_config(text: str) -> ExperimentConfig:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc}") from None
    return from_dict(doc)


# ---------------------------------------------------------------------------
# Preset table: one entry per documented experiment, plus _desk variants
# shrunk by factors 4-16 for workstation budgets (tolerances widen with them).
# ---------------------------------------------------------------------------

def _grid2(n_x, n_y, l_x, l_y):
    return {"dims": 2, "n_x": n_x, "n_y": n_y, "l_x": l_x, "l_y": l_y}


def _c2_base(init, name, t_end=20.0, n_steps=10_000, desk=False):
    grid = _grid2(1024, 128, 10.0, 3.0) if desk else _grid2(4096, 128, 10.0, 3.0)
    return {
        "preset": name,
        "grid": grid,
        "model": {"eps_nl": 1.0, "eps_disp": 1.0},
        "initial_data": init,
        "time": {"t_end": t_end, "n_steps": n_steps},
        "output": {"snapshot_times": [0.0, t_end]},
    }


def _c11_base(init, name, desk=False):
    grid = _grid2(4096, 128, 40.0, 3.0) if desk else _grid2(16384, 128, 40.0, 3.0)
    n_steps = 10_000 if desk else 20_000
    return {
        "preset": name,
        "grid": grid,
        "model": {"eps_nl": 1.0, "eps_disp": 1.0},
        "initial_data": init,
        "time": {"t_end": 100.0, "n_steps": n_steps},
        "output": {"snapshot_times": [0.0, 100.0]},
    }


def _tracked(cfg, n_steps, fields=("eta",), axes=("x", "y"), stop_fields=None,
             kappa_stop=1.0):
    # fit on the lower spectral half: near breakdown the unfiltered top-half
    # modes carry aliasing, and the fit window must stay on resolved modes
    cfg["tracking"] = {
        "enabled": True,
        "fields": list(fields),
        "axes": list(axes),
        "stride": max(1, n_steps // 300),
        "kappa_stop": kappa_stop,
        "stop": True,
        "window": {"lo_frac": 0.0625, "hi_frac": 0.5},
    }
    if stop_fields is not None:
        cfg["tracking"]["stop_fields"] = list(stop_fields)
    return cfg


def _preset_dicts() -> dict:
    p = {}

    p["c2_line"] = _c2_base({"kind": "cos_deform", "c": 2.0, "a": 0.0}, "c2_line")
    p["c2_gauss_plus"] = _c2_base(
        {"kind": "gaussian_on_eta", "c": 2.0, "amp": 0.3, "alpha": 1.0}, "c2_gauss_plus")
    p["c2_gauss_minus"] = _c2_base(
        {"kind": "gaussian_on_eta", "c": 2.0, "amp": -0.3, "alpha": 1.0}, "c2_gauss_minus")
    p["c2_gauss_vx"] = _c2_base(
        {"kind": "gaussian_on_vx", "c": 2.0, "amp": 0.1, "alpha": 1.0}, "c2_gauss_vx")
    p["c2_gauss_vy"] = _c2_base(
        {"kind": "gaussian_on_vy", "c": 2.0, "amp": 0.1, "alpha": 1.0}, "c2_gauss_vy")
    p["c2_cos"] = _c2_base({"kind": "cos_deform", "c": 2.0, "a": 0.4}, "c2_cos")

    p["c11_gauss"] = _c11_base(
        {"kind": "gaussian_on_eta", "c": 1.1, "amp": 0.01, "alpha": 1.0}, "c11_gauss")
    p["c11_cos"] = _c11_base({"kind": "cos_deform", "c": 1.1, "a": 0.4}, "c11_cos")

    p["cavitation_1d"] = _tracked({
        "preset": "cavitation_1d",
        "grid": {"dims": 1, "n_x": 16384, "l_x": 5.0},
        "model": {"eps_nl": 1.0, "eps_disp": 1.0},
        "initial_data": {"kind": "cavitation", "kappa": -1.0, "alpha": 1.0},
        "time": {"t_end": 5.0, "n_steps": 20_000},
        "output": {"snapshot_times": [0.0]},
    }, 20_000, fields=("eta", "vx"), axes=("x",), stop_fields=("eta",))

    p["cavitation_k-0.9_a1"] = _tracked({
        "preset": "cavitation_k-0.9_a1",
        "grid": _grid2(4096, 4096, 5.0, 5.0),
        "model": {"eps_nl": 1.0, "eps_disp": 1.0},
        "initial_data": {"kind": "cavitation", "kappa": -0.9, "alpha": 1.0},
        "time": {"t_end": 10.0, "n_steps": 10_000},
        "output": {"snapshot_times": [0.0, 2.5, 4.0, 5.1, 10.0]},
    }, 10_000)

    p["cavitation_k-1_a1"] = _tracked({
        "preset": "cavitation_k-1_a1",
        "grid": _grid2(4096, 4096, 3.0, 3.0),
        "model": {"eps_nl": 1.0, "eps_disp": 1.0},
        "initial_data": {"kind": "cavitation", "kappa": -1.0, "alpha": 1.0},
        "time": {"t_end": 4.5, "n_steps": 10_000},
        "output": {"snapshot_times": [0.0, 4.0]},
    }, 10_000, fields=("eta", "vx"), stop_fields=("eta",))

    p["cavitation_k-1_a0.5"] = _tracked({
        "preset": "cavitation_k-1_a0.5",
        "grid": _grid2(8192, 2048, 3.0, 3.0),
        "model": {"eps_nl": 1.0, "eps_disp": 1.0},
        "initial_data": {"kind": "cavitation", "kappa": -1.0, "alpha": 0.5},
        "time": {"t_end": 4.5, "n_steps": 10_000},
        "output": {"snapshot_times": [0.0, 4.0]},
    }, 10_000, fields=("eta", "vx"), stop_fields=("eta",))

    p["localized_k1"] = {
        "preset": "localized_k1",
        "grid": _grid2(4096, 4096, 5.0, 5.0),
        "model": {"eps_nl": 1.0, "eps_disp": 1.0},
        "initial_data": {"kind": "localized", "kappa": 1.0, "alpha": 1.0},
        "time": {"t_end": 10.0, "n_steps": 10_000},
        "output": {"snapshot_times": [0.0, 5.0, 10.0]},
    }
    p["localized_k10"] = {
        "preset": "localized_k10",
        "grid": _grid2(4096, 4096, 5.0, 5.0),
        "model": {"eps_nl": 1.0, "eps_disp": 1.0},
        "initial_data": {"kind": "localized", "kappa": 10.0, "alpha": 1.0},
        "time": {"t_end": 8.0, "n_steps": 10_000},
        "output": {"snapshot_times": [0.0, 2.0, 4.0, 6.92, 8.0]},
    }
    p["dsw_eps1e-2"] = {
        "preset": "dsw_eps1e-2",
        "grid": _grid2(4096, 4096, 5.0, 5.0),
        "model": {"eps_nl": 1.0, "eps_disp": 0.01},
        "initial_data": {"kind": "localized", "kappa": 1.0, "alpha": 1.0},
        "time": {"t_end": 5.0, "n_steps": 10_000},
        "output": {"snapshot_times": [0.0, 5.0]},
    }

    # workstation-scale variants
    p["c2_line_desk"] = _c2_base({"kind": "cos_deform", "c": 2.0, "a": 0.0},
                                 "c2_line_desk", t_end=5.0, n_steps=1250, desk=True)
    p["c2_gauss_plus_desk"] = _c2_base(
        {"kind": "gaussian_on_eta", "c": 2.0, "amp": 0.3, "alpha": 1.0},
        "c2_gauss_plus_desk", n_steps=5000, desk=True)
    p["c2_gauss_minus_desk"] = _c2_base(
        {"kind": "gaussian_on_eta", "c": 2.0, "amp": -0.3, "alpha": 1.0},
        "c2_gauss_minus_desk", n_steps=5000, desk=True)
    p["c2_gauss_vx_desk"] = _c2_base(
        {"kind": "gaussian_on_vx", "c": 2.0, "amp": 0.1, "alpha": 1.0},
        "c2_gauss_vx_desk", n_steps=5000, desk=True)
    p["c2_gauss_vy_desk"] = _c2_base(
        {"kind": "gaussian_on_vy", "c": 2.0, "amp": 0.1, "alpha": 1.0},
        "c2_gauss_vy_desk", n_steps=5000, desk=True)
    p["c2_cos_desk"] = _c2_base({"kind": "cos_deform", "c": 2.0, "a": 0.4},
                                "c2_cos_desk", n_steps=5000, desk=True)
    p["c11_gauss_desk"] = _c11_base(
        {"kind": "gaussian_on_eta", "c": 1.1, "amp": 0.01, "alpha": 1.0},
        "c11_gauss_desk", desk=True)
    p["c11_cos_desk"] = _c11_base({"kind": "cos_deform", "c": 1.1, "a": 0.4},
                                  "c11_cos_desk", desk=True)

    p["cavitation_1d_desk"] = _tracked({
        "preset": "cavitation_1d_desk",
        "grid": {"dims": 1, "n_x": 4096, "l_x": 5.0},
        "model": {"eps_nl": 1.0, "eps_disp": 1.0},
        "initial_data": {"kind": "cavitation", "kappa": -1.0, "alpha": 1.0},
        "time": {"t_end": 5.0, "n_steps": 6000},
        "output": {"snapshot_times": [0.0]},
    }, 6000, fields=("eta", "vx"), axes=("x",), stop_fields=("eta",))

    p["cavitation_k-0.9_a1_desk"] = _tracked({
        "preset": "cavitation_k-0.9_a1_desk",
        "grid": _grid2(512, 512, 5.0, 5.0),
        "model": {"eps_nl": 1.0, "eps_disp": 1.0},
        "initial_data": {"kind": "cavitation", "kappa": -0.9, "alpha": 1.0},
        "time": {"t_end": 10.0, "n_steps": 2500},
        "output": {"snapshot_times": [0.0, 2.5, 4.0, 5.1, 10.0]},
    }, 2500)
    # at 2^9 the almost-cusp transient near t = 4 dips the fitted delta below
    # the coarse resolvability threshold; the full grid stays clear of it, so
    # the desk variant records fits without halting
    p["cavitation_k-0.9_a1_desk"]["tracking"]["stop"] = False

    p["cavitation_k-1_a1_desk"] = _tracked({
        "preset": "cavitation_k-1_a1_desk",
        "grid": _grid2(1024, 1024, 3.0, 3.0),
        "model": {"eps_nl": 1.0, "eps_disp": 1.0},
        "initial_data": {"kind": "cavitation", "kappa": -1.0, "alpha": 1.0},
        "time": {"t_end": 4.5, "n_steps": 3000},
        "output": {"snapshot_times": [0.0, 4.0]},
    }, 3000, fields=("eta", "vx"), stop_fields=("eta",))

    p["cavitation_k-1_a0.5_desk"] = _tracked({
        "preset": "cavitation_k-1_a0.5_desk",
        "grid": _grid2(1024, 512, 3.0, 3.0),
        "model": {"eps_nl": 1.0, "eps_disp": 1.0},
        "initial_data": {"kind": "cavitation", "kappa": -1.0, "alpha": 0.5},
        "time": {"t_end": 4.5, "n_steps": 3000},
        "output": {"snapshot_times": [0.0, 4.0]},
    }, 3000, fields=("eta", "vx"), stop_fields=("eta",))

    p["localized_k1_desk"] = {
        "preset": "localized_k1_desk",
        "grid": _grid2(512, 512, 5.0, 5.0),
        "model": {"eps_nl": 1.0, "eps_disp": 1.0},
        "initial_data": {"kind": "localized", "kappa": 1.0, "alpha": 1.0},
        "time": {"t_end": 10.0, "n_steps": 2500},
        "output": {"snapshot_times": [0.0, 5.0, 10.0]},
    }
    # the desk window ends just past the annular touchdown: at this grid the
    # subsequent near-cavitation stage re-deepens the hole, which the full
    # resolution does not do before t = 8
    p["localized_k10_desk"] = {
        "preset": "localized_k10_desk",
        "grid": _grid2(512, 512, 5.0, 5.0),
        "model": {"eps_nl": 1.0, "eps_disp": 1.0},
        "initial_data": {"kind": "localized", "kappa": 10.0, "alpha": 1.0},
        "time": {"t_end": 7.2, "n_steps": 3600},
        "output": {"snapshot_times": [0.0, 2.0, 4.0, 6.92, 7.2]},
    }
    p["dsw_eps1e-2_desk"] = {
        "preset": "dsw_eps1e-2_desk",
        "grid": _grid2(1024, 1024, 5.0, 5.0),
        "model": {"eps_nl": 1.0, "eps_disp": 0.01},
        "initial_data": {"kind": "localized", "kappa": 1.0, "alpha": 1.0},
        "time": {"t_end": 5.0, "n_steps": 2000},
        "output": {"snapshot_times": [0.0, 5.0]},
    }
    return p


_PRESETS = _preset_dicts()


def preset_names() -> list[str]:
    return sorted(_PRESETS)


def preset_dict(name: str) -> dict:
    if name not in _PRESETS:
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(preset_names())}")
    return json.loads(json.dumps(_PRESETS[name]))


def preset_config(name: str) -> ExperimentConfig:
    return from_dict(preset_dict(name))
