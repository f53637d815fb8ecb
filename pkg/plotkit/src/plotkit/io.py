"""Readers for the solver's documented output formats.

Implemented against the published byte/CSV layouts only; this package never
imports the solver.
"""

import csv
import struct

import numpy as np

SNAPSHOT_HEADER = "<4sIBQQddddd"


class FormatError(ValueError):
    """Input does not match a documented format; message names the file."""


def read_snapshot(path):
    """Read an .asbq snapshot.

    Returns a dict with t, dims, axis coordinate arrays (x, y), model
    parameters, and the fields eta, vx (and vy in 2D).
    """
    with open(path, "rb") as fh:
        raw = fh.read()
    head = struct.calcsize(SNAPSHOT_HEADER)
    if len(raw) < head:
        raise FormatError(f"{path}: truncated snapshot header")
    (magic, version, dims, n_x, n_y, l_x, l_y,
     eps_nl, eps_disp, t) = struct.unpack(SNAPSHOT_HEADER, raw[:head])
    if magic != b"ASBQ":
        raise FormatError(f"{path}: bad magic {magic!r}")
    if version != 1:
        raise FormatError(f"{path}: unsupported snapshot version {version}")
    n_fields = 2 if dims == 1 else 3
    n_nodes = n_x if dims == 1 else n_x * n_y
    if len(raw) != head + 8 * n_fields * n_nodes:
        raise FormatError(f"{path}: payload size does not match the header")
    body = np.frombuffer(raw, dtype="<f8", offset=head)
    x = -np.pi * l_x + 2 * np.pi * l_x / n_x * np.arange(1, n_x + 1)
    out = {"t": t, "dims": dims, "l_x": l_x, "x": x,
           "eps_nl": eps_nl, "eps_disp": eps_disp}
    if dims == 1:
        out["eta"] = body[:n_x]
        out["vx"] = body[n_x:]
    else:
        y = -np.pi * l_y + 2 * np.pi * l_y / n_y * np.arange(1, n_y + 1)
        out.update(l_y=l_y, y=y)
        shape = (n_x, n_y)
        out["eta"] = body[:n_nodes].reshape(shape)
        out["vx"] = body[n_nodes:2 * n_nodes].reshape(shape)
        out["vy"] = body[2 * n_nodes:].reshape(shape)
    return out


def _read_csv(path, required):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise FormatError(f"{path}: empty CSV")
    header = rows[0]
    for col in required:
        if col not in header:
            raise FormatError(f"{path}: missing column {col!r}")
    if len(rows) == 1:
        raise FormatError(f"{path}: no data rows")
    return header, rows[1:]


def read_norms(path):
    """Norm series CSV -> dict of column name to float array."""
    header, rows = _read_csv(path, ("t",))
    cols = {name: np.empty(len(rows)) for name in header}
    for i, row in enumerate(rows):
        if len(row) != len(header):
            raise FormatError(f"{path}: row {i + 2} has {len(row)} fields")
        for name, val in zip(header, row):
            try:
                cols[name][i] = float(val)
            except ValueError:
                raise FormatError(f"{path}: column {name!r} row {i + 2} "
                                  f"is not a number") from None
    return cols


def read_slices(path, axis="x", field="eta"):
    """Slice CSV -> (times, coords, values) with values shaped (n_t, n_coord)."""
    header, rows = _read_csv(path, ("t", "axis", "coord", field))
    i_t, i_ax = header.index("t"), header.index("axis")
    i_c, i_f = header.index("coord"), header.index(field)
    by_t = {}
    for i, row in enumerate(rows):
        if row[i_ax] != axis:
            continue
        try:
            t, c, v = float(row[i_t]), float(row[i_c]), float(row[i_f])
        except ValueError:
            raise FormatError(f"{path}: column {field!r} row {i + 2} "
                              f"is not a number") from None
        by_t.setdefault(t, []).append((c, v))
    if not by_t:
        raise FormatError(f"{path}: no rows for axis {axis!r}")
    times = sorted(by_t)
    coords = np.array([c for c, _ in sorted(by_t[times[0]])])
    values = np.empty((len(times), len(coords)))
    for j, t in enumerate(times):
        pairs = sorted(by_t[t])
        if len(pairs) != len(coords):
            raise FormatError(f"{path}: ragged slice at t = {t}")
        values[j] = [v for _, v in pairs]
    return np.array(times), coords, values


def spectrum_line(snap, field="eta", axis="x"):
    """Positive-wavenumber DFT moduli of a snapshot field along an axis."""
    if field not in snap:
        raise FormatError(f"snapshot has no field {field!r}")
    vals = snap[field]
    if snap["dims"] == 1:
        if axis != "x":
            raise FormatError("1D snapshots only have the x axis")
        coeffs = np.fft.fft(vals) / vals.size
        n, scale = vals.shape[0], snap["l_x"]
        line = coeffs[1:n // 2]
    else:
        coeffs = np.fft.fft2(vals) / vals.size
        if axis == "x":
            n, scale = vals.shape[0], snap["l_x"]
            line = coeffs[1:n // 2, 0]
        elif axis == "y":
            n, scale = vals.shape[1], snap["l_y"]
            line = coeffs[0, 1:n // 2]
        else:
            raise FormatError(f"unknown axis {axis!r}")
    k = np.arange(1, n // 2) / scale
    return k, np.abs(line)
