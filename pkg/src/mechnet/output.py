"""CSV tables and dependency-free heatmap images.

Heatmaps are binary PPM (P6) files. Cells are colored on a fixed
dark-blue -> purple -> orange -> pale-yellow ramp scaled linearly between the
minimum and maximum finite value of the field; a constant field maps to the
low end. Unstable or failed grid points are painted ``SENTINEL`` (pure
green), a color the ramp never produces.
"""

import csv
import math

import numpy as np

SENTINEL = (0, 255, 0)
RAMP = np.array([
    (13, 8, 135),
    (126, 3, 168),
    (204, 71, 120),
    (248, 149, 64),
    (240, 249, 33),
], dtype=float)


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, str):
        return x
    x = float(x)
    if math.isnan(x):
        return "nan"
    return f"{x:.17e}"


def table_columns(table, diagnostics=None):
    first = table[0]
    if diagnostics is None:
        diagnostics = any(r.residual is not None or not r.stable for r in table)
    cols = list(first.axes) + list(first.values)
    if diagnostics:
        cols += ["stable", "residual", "error"]
    return cols, diagnostics


def write_csv(table, fh, diagnostics=None):
    """Write ``table`` to an open text stream; see :func:`emit_csv`."""
    if not table:
        raise ValueError("refusing to write an empty table")
    cols, diagnostics = table_columns(table, diagnostics)
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(cols)
    for row in table:
        rec = [_fmt(v) for v in row.axes.values()] + [_fmt(v) for v in row.values.values()]
        if diagnostics:
            rec += [_fmt(row.stable), _fmt(row.residual), row.error or ""]
        w.writerow(rec)


def emit_csv(table, path, diagnostics=None):
    """Write ``table`` as comma-separated text with a header row and LF endings."""
    if not table:
        raise ValueError("refusing to write an empty table")
    try:
        with open(path, "w", newline="") as fh:
            write_csv(table, fh, diagnostics)
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc}") from exc


def colorize(values):
    """Map a 2-D float array to RGB bytes; NaN cells get ``SENTINEL``."""
    values = np.asarray(values, dtype=float)
    finite = np.isfinite(values)
    rgb = np.empty(values.shape + (3,), dtype=np.uint8)
    rgb[...] = SENTINEL
    if finite.any():
        lo, hi = values[finite].min(), values[finite].max()
        span = hi - lo
        t = np.zeros_like(values) if span <= 0 else (values - lo) / span
        t = np.clip(np.where(finite, t, 0.0), 0.0, 1.0)
        pos = t * (len(RAMP) - 1)
        i = np.minimum(pos.astype(int), len(RAMP) - 2)
        frac = (pos - i)[..., None]
        col = RAMP[i] * (1 - frac) + RAMP[i + 1] * frac
        rgb[finite] = np.rint(col[finite]).astype(np.uint8)
    return rgb


def emit_heatmap(grid, path, cell=8):
    """Write a ``(n1, n2)`` grid as a PPM image.

    ``axis1`` runs left to right and ``axis2`` bottom to top, matching the
    usual density-plot orientation. Each grid cell becomes a ``cell x cell``
    block of pixels.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 2:
        raise ValueError("heatmap needs a two-axis grid")
    img = colorize(grid.T[::-1])
    img = np.repeat(np.repeat(img, cell, axis=0), cell, axis=1)
    h, w = img.shape[:2]
    try:
        with open(path, "wb") as fh:
            fh.write(f"P6\n{w} {h}\n255\n".encode("ascii"))
            fh.write(img.tobytes())
    except OSError as exc:
        raise OSError(f"cannot write heatmap to {path}: {exc}") from exc


def read_ppm(path):
    """Read a P6 file written by :func:`emit_heatmap` into an ``(h, w, 3)`` array."""
    with open(path, "rb") as fh:
        data = fh.read()
    parts = data.split(b"\n", 3)
    if parts[0] != b"P6":
        raise ValueError("not a binary PPM file")
    w, h = (int(x) for x in parts[1].split())
    return np.frombuffer(parts[3], dtype=np.uint8).reshape(h, w, 3)
