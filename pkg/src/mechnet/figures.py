"""Canned sweeps for the reference figures.

``2a``-``2d``: entanglement versus detunings / waveguide efficiency at 10 mK.
``3a``-``3f``: entanglement and excitation numbers versus the two bath
temperatures (0 to 200 mK) at ``eta = 0.9``, ``delta_c_tilde = 0.75 omega_b``,
``delta_1 = -omega_b``. ``6``: pulsed-scheme entanglement versus channel
reflectivity for three (r, W) pairs.
"""

from .config import Axis, SweepSpec

FIG2_FIXED = {"eta": "1.0"}
FIG3_FIXED = {"eta": "0.9", "delta_c_tilde_per_omega_b": "0.75", "delta_1_per_omega_b": "-1.0"}

# (r, W) pairs of the solid, dashed and dot-dashed curves
FIG6_CURVES = ((2.18, 0.95), (1.44, 0.80), (0.95, 0.55))

_FIELD = {
    "2a": "E_a1b", "2b": "E_mb", "2c": "E_a1b", "2d": "E_mb",
    "3a": "E_cb", "3b": "E_a1b", "3c": "E_mb",
    "3d": "dn_b", "3e": "dn_a1", "3f": "dn_m",
}

FIGURE_IDS = tuple(_FIELD) + ("6",)


def field_for(fig_id):
    return _FIELD.get(fig_id, "E_12")


def figure_spec(fig_id, steps=41):
    """Sweep specification for figure ``fig_id`` on a ``steps``-point grid per axis."""
    if fig_id in ("2a", "2b"):
        return SweepSpec(
            "A",
            Axis("delta_c_tilde_per_omega_b", 0.0, 2.0, steps),
            Axis("delta_1_per_omega_b", -2.0, 0.0, steps),
            dict(FIG2_FIXED), (_FIELD[fig_id],),
        )
    if fig_id in ("2c", "2d"):
        return SweepSpec(
            "A",
            Axis("delta_c_tilde_per_omega_b", 0.0, 2.0, steps),
            Axis("eta", 0.0, 1.0, steps),
            {"delta_1_per_omega_b": "-1.0"}, (_FIELD[fig_id],),
        )
    if fig_id in _FIELD:
        return SweepSpec(
            "A", Axis("T1", 0.0, 0.2, steps), Axis("T2", 0.0, 0.2, steps),
            dict(FIG3_FIXED), (_FIELD[fig_id],),
        )
    if fig_id == "6":
        return [
            SweepSpec("B", Axis("R", 0.0, 1.0, steps), None, {"r": repr(r), "W": repr(w)}, ("E_12",))
            for r, w in FIG6_CURVES
        ]
    raise KeyError(f"unknown figure id {fig_id!r}; choose from {', '.join(FIGURE_IDS)}")
