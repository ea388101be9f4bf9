"""Flat ``key = value`` configuration files.

One assignment per line, ``#`` starts a comment. Keys map onto the fields of
:class:`~mechnet.cascaded.CascadedParams` (scheme A) or
:class:`~mechnet.pulse.PulseLabParams` plus direct ``r``/``W``/``R``
overrides (scheme B). Angular rates are stored in rad/s; any rate key also
accepts the suffix ``_hz`` (value in Hz, multiplied by 2*pi). Scheme-A rates
and detunings further accept ``_per_omega_b`` (value in units of ``omega_b``).

Sweep files add ``scheme``, ``axis1``, ``axis2`` and ``outputs``::

    scheme = A
    axis1 = delta_c_tilde_per_omega_b 0 2 41
    axis2 = delta_1_per_omega_b -2 0 41
    outputs = E_a1b, E_mb
"""

import dataclasses
import math
import os
from dataclasses import dataclass, field
from typing import Optional

from .cascaded import CascadedParams
from .pulse import PulseLabParams, PulseParams
from .units import TWO_PI


class ConfigError(ValueError):
    def __init__(self, message, line=None, key=None):
        self.line = line
        self.key = key
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


CASCADED_RATES = ("omega_b", "omega_m", "kappa_c", "kappa_a", "gamma_b", "gamma_m",
                  "g_c", "g", "delta_c_tilde", "delta_1", "target_Gc_abs", "target_G2_abs")
CASCADED_PLAIN = ("eta", "T1", "T2", "wavelength_c", "wavelength_a1", "wavelength_a2")

PULSE_RATES = ("g0_blue", "kappa_blue", "omega_mech_blue", "g0_red", "kappa_red", "omega_mech_red")
PULSE_PLAIN = ("power_blue", "power_red", "tau_b", "tau_r", "wavelength", "fiber_loss",
               "distance", "r", "W", "R")

SWEEP_KEYS = ("scheme", "axis1", "axis2", "outputs")

REPORT_FIELDS_A = ("E_cb", "E_a1b", "E_mb", "dn_b", "dn_a1", "dn_m")
REPORT_FIELDS_B = ("E_12", "r", "W", "R")


def documented_keys(scheme="A"):
    """Every key accepted for ``scheme``, including suffixed variants."""
    if scheme == "A":
        keys = list(CASCADED_PLAIN)
        for k in CASCADED_RATES:
            keys += [k, k + "_hz"]
            if k != "omega_b":
                keys.append(k + "_per_omega_b")
    else:
        keys = list(PULSE_PLAIN)
        for k in PULSE_RATES:
            keys += [k, k + "_hz"]
    return keys


def _canonical(key, scheme):
    """Split ``key`` into ``(field, unit)`` with unit in {"", "hz", "per_omega_b"}."""
    rates = CASCADED_RATES if scheme == "A" else PULSE_RATES
    plain = CASCADED_PLAIN if scheme == "A" else PULSE_PLAIN
    if key in rates or key in plain:
        return key, ""
    if key.endswith("_hz") and key[:-3] in rates:
        return key[:-3], "hz"
    if scheme == "A" and key.endswith("_per_omega_b"):
        base = key[: -len("_per_omega_b")]
        if base in rates and base != "omega_b":
            return base, "per_omega_b"
    return None, None


def read_lines(source):
    """Parse ``key = value`` text (or a path to it) into ``{key: (value, line)}``."""
    if isinstance(source, (str, os.PathLike)) and os.path.exists(source):
        with open(source) as fh:
            text = fh.read()
    else:
        text = str(source) if source is not None else ""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", line=lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        if not key or not value:
            raise ConfigError(f"empty key or value in {raw.strip()!r}", line=lineno)
        if key in out:
            raise ConfigError(f"duplicate key {key!r}", line=lineno, key=key)
        out[key] = (value, lineno)
    return out


def _number(value, key, line):
    try:
        x = float(value)
    except ValueError:
        raise ConfigError(f"{key}: not a number: {value!r}", line=line, key=key) from None
    if not math.isfinite(x):
        raise ConfigError(f"{key}: must be finite", line=line, key=key)
    return x


def _resolve(entries, scheme):
    """Convert raw entries to canonical field values (rad/s for rates)."""
    values, per_wb = {}, {}
    for key, (raw, line) in entries.items():
        name, unit = _canonical(key, scheme)
        if name is None:
            raise ConfigError(f"unknown key {key!r}", line=line, key=key)
        if name in values or name in per_wb:
            raise ConfigError(f"{name} given more than once", line=line, key=key)
        x = _number(raw, key, line)
        if unit == "hz":
            x *= TWO_PI
        if unit == "per_omega_b":
            per_wb[name] = (x, key, line)
        else:
            values[name] = (x, key, line)
    if per_wb:
        omega_b = values["omega_b"][0] if "omega_b" in values else CascadedParams.omega_b
        for name, (x, key, line) in per_wb.items():
            values[name] = (x * omega_b, key, line)
    return values


def _build(cls, values):
    try:
        return cls(**{k: v[0] for k, v in values.items()})
    except ValueError as exc:
        # dataclass validators name the field first in their messages
        bad = str(exc).split()[0]
        key, line = next(((v[1], v[2]) for k, v in values.items() if k == bad), (bad, None))
        raise ConfigError(f"invalid value for {key}: {exc}", line=line, key=key) from None


@dataclass(frozen=True)
class PulseSetup:
    """Scheme-B inputs: laboratory pulses, optionally overridden by ``r``, ``W``, ``R``."""

    lab: PulseLabParams = field(default_factory=PulseLabParams)
    r: Optional[float] = None
    W: Optional[float] = None
    R: Optional[float] = None

    def pulse_params(self):
        derived = self.lab.to_pulse_params()
        return PulseParams(
            r=derived.r if self.r is None else self.r,
            W=derived.W if self.W is None else self.W,
            R=derived.R if self.R is None else self.R,
        )


def cascaded_from_values(values):
    return _build(CascadedParams, values)


def pulse_from_values(values):
    direct = {k: values.pop(k) for k in ("r", "W", "R") if k in values}
    lab = _build(PulseLabParams, values)
    setup = PulseSetup(lab, **{k: v[0] for k, v in direct.items()})
    try:
        setup.pulse_params()
    except ValueError as exc:
        key = next((v[1] for v in direct.values()), None)
        line = next((v[2] for v in direct.values()), None)
        raise ConfigError(f"invalid pulse parameters: {exc}", line=line, key=key) from None
    return setup


@dataclass(frozen=True)
class Axis:
    name: str
    min: float
    max: float
    steps: int

    def values(self):
        if self.steps == 1:
            return [self.min]
        return [self.min + (self.max - self.min) * i / (self.steps - 1) for i in range(self.steps)]

    def with_steps(self, steps):
        return dataclasses.replace(self, steps=steps)


@dataclass(frozen=True)
class SweepSpec:
    scheme: str
    axis1: Axis
    axis2: Optional[Axis] = None
    fixed: dict = field(default_factory=dict)
    outputs: tuple = ()

    @property
    def axes(self):
        return (self.axis1,) if self.axis2 is None else (self.axis1, self.axis2)


def _axis(raw, line, key, scheme):
    parts = raw.split()
    if len(parts) != 4:
        raise ConfigError(f"{key}: expected 'name min max steps'", line=line, key=key)
    name = parts[0]
    if _canonical(name, scheme)[0] is None:
        raise ConfigError(f"{key}: unknown sweep parameter {name!r}", line=line, key=key)
    lo, hi = _number(parts[1], key, line), _number(parts[2], key, line)
    try:
        steps = int(parts[3])
    except ValueError:
        raise ConfigError(f"{key}: steps must be an integer", line=line, key=key) from None
    if steps < 2:
        raise ConfigError(f"{key}: need at least 2 steps", line=line, key=key)
    if not lo < hi:
        raise ConfigError(f"{key}: min must be below max", line=line, key=key)
    return Axis(name, lo, hi, steps)


def sweep_from_entries(entries):
    entries = dict(entries)
    scheme_raw, line = entries.pop("scheme", ("A", None))
    scheme = scheme_raw.upper()
    if scheme not in ("A", "B"):
        raise ConfigError("scheme must be A or B", line=line, key="scheme")
    if "axis1" not in entries:
        raise ConfigError("sweep needs axis1", key="axis1")
    axis1 = _axis(*entries.pop("axis1"), "axis1", scheme)
    axis2 = _axis(*entries.pop("axis2"), "axis2", scheme) if "axis2" in entries else None
    if axis2 is not None and _canonical(axis2.name, scheme)[0] == _canonical(axis1.name, scheme)[0]:
        raise ConfigError("axis1 and axis2 sweep the same parameter", key="axis2")
    allowed = REPORT_FIELDS_A if scheme == "A" else REPORT_FIELDS_B
    if "outputs" in entries:
        raw, line = entries.pop("outputs")
        outputs = tuple(s.strip() for s in raw.split(",") if s.strip())
        for o in outputs:
            if o not in allowed:
                raise ConfigError(f"outputs: unknown field {o!r}", line=line, key="outputs")
    else:
        outputs = allowed if scheme == "A" else ("E_12",)
    # validate the fixed part now so a bad key fails before the sweep starts
    _point(scheme, {k: v[0] for k, v in entries.items()}, {})
    fixed = {k: v[0] for k, v in entries.items()}
    return SweepSpec(scheme, axis1, axis2, fixed, outputs)


def _point(scheme, fixed, overrides):
    entries = {k: (v, None) for k, v in fixed.items()}
    for k, v in overrides.items():
        name = _canonical(k, scheme)[0]
        for other in list(entries):
            if _canonical(other, scheme)[0] == name:
                del entries[other]
        entries[k] = (repr(float(v)), None)
    values = _resolve(entries, scheme)
    if scheme == "A":
        return cascaded_from_values(values)
    return pulse_from_values(values)


def point_params(spec, axis_values):
    """Parameter object for one grid point of ``spec``."""
    overrides = {ax.name: val for ax, val in zip(spec.axes, axis_values)}
    return _point(spec.scheme, spec.fixed, overrides)


def parse_config(source, kind="cascaded"):
    """Parse a config file or string.

    ``kind`` is ``"cascaded"`` (returns :class:`CascadedParams`), ``"pulse"``
    (returns :class:`PulseSetup`) or ``"sweep"`` (returns :class:`SweepSpec`).
    """
    entries = read_lines(source)
    if kind == "sweep":
        return sweep_from_entries(entries)
    scheme = {"cascaded": "A", "pulse": "B"}.get(kind)
    if scheme is None:
        raise ValueError(f"unknown config kind {kind!r}")
    values = _resolve(entries, scheme)
    return cascaded_from_values(values) if scheme == "A" else pulse_from_values(values)


def serialize(obj):
    """Inverse of :func:`parse_config` using canonical (rad/s, SI) keys."""
    lines = []
    if isinstance(obj, CascadedParams):
        for f in dataclasses.fields(obj):
            lines.append(f"{f.name} = {getattr(obj, f.name)!r}")
    elif isinstance(obj, PulseSetup):
        for f in dataclasses.fields(obj.lab):
            lines.append(f"{f.name} = {getattr(obj.lab, f.name)!r}")
        for k in ("r", "W", "R"):
            if getattr(obj, k) is not None:
                lines.append(f"{k} = {getattr(obj, k)!r}")
    elif isinstance(obj, SweepSpec):
        lines.append(f"scheme = {obj.scheme}")
        for label, ax in (("axis1", obj.axis1), ("axis2", obj.axis2)):
            if ax is not None:
                lines.append(f"{label} = {ax.name} {ax.min!r} {ax.max!r} {ax.steps}")
        lines.append("outputs = " + ", ".join(obj.outputs))
        for k, v in obj.fixed.items():
            lines.append(f"{k} = {v}")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return "\n".join(lines) + "\n"


def schema(scheme="A"):
    """Human-readable key listing used by ``--help``."""
    if scheme == "A":
        defaults = CascadedParams()
        rates, plain = CASCADED_RATES, CASCADED_PLAIN
    else:
        defaults = PulseLabParams()
        rates, plain = PULSE_RATES, PULSE_PLAIN
    rows = []
    for k in rates:
        suffix = "  (also _hz" + (", _per_omega_b" if scheme == "A" and k != "omega_b" else "") + ")"
        rows.append(f"  {k} [rad/s] = {getattr(defaults, k):.6g}{suffix}")
    for k in plain:
        dv = getattr(defaults, k, None)
        rows.append(f"  {k} = {'derived' if dv is None else format(dv, '.6g')}")
    return "\n".join(rows)
