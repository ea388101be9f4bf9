"""Grid evaluation of either scheme with a deterministic row order."""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .cascaded import entanglement_report
from .config import point_params
from .pulse import e12

log = logging.getLogger(__name__)


@dataclass
class ResultRow:
    axes: dict
    values: dict
    stable: bool = True
    residual: Optional[float] = None
    error: Optional[str] = None
    extra: dict = field(default_factory=dict, repr=False)


def _evaluate(spec, point):
    try:
        params = point_params(spec, point)
    except ValueError as exc:
        return ResultRow(dict(zip((a.name for a in spec.axes), point)),
                         {k: np.nan for k in spec.outputs}, stable=False, error=str(exc))
    axes = dict(zip((a.name for a in spec.axes), point))
    if spec.scheme == "B":
        pp = params.pulse_params()
        vals = {"E_12": e12(pp), "r": pp.r, "W": pp.W, "R": pp.R}
        return ResultRow(axes, {k: vals[k] for k in spec.outputs})
    try:
        rep = entanglement_report(params)
    except (RuntimeError, ArithmeticError, np.linalg.LinAlgError) as exc:
        log.debug("point %s failed: %s", point, exc)
        return ResultRow(axes, {k: np.nan for k in spec.outputs}, stable=False,
                         error=f"{type(exc).__name__}: {exc}")
    if not rep.stable:
        return ResultRow(axes, {k: np.nan for k in spec.outputs}, stable=False)
    vals = {k: float(getattr(rep, k)) for k in spec.outputs}
    return ResultRow(axes, vals, stable=True, residual=rep.residual,
                     extra={"physical": rep.physical})


def grid_points(spec):
    """All grid points in row-major order (``axis1`` outer, ``axis2`` inner)."""
    return list(itertools.product(*(ax.values() for ax in spec.axes)))


def run_sweep(spec, threads=1):
    """Evaluate ``spec`` on its grid.

    Points are dispatched to a thread pool; ``map`` returns results in
    submission order, so the table is row-major whatever the thread count.
    Per-point failures are recorded in the row, never raised.
    """
    points = grid_points(spec)
    if threads <= 1:
        return [_evaluate(spec, p) for p in points]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda p: _evaluate(spec, p), points))


def as_grid(table, spec, field_name):
    """Reshape one output column into an ``(n1, n2)`` array (NaN where unstable)."""
    shape = tuple(ax.steps for ax in spec.axes)
    return np.array([row.values[field_name] for row in table], dtype=float).reshape(shape)
