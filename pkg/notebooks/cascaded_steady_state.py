"""
Cascaded steady state: megahertz to gigahertz entanglement
==========================================================

A 10 MHz resonator ``b`` sits in an optomechanical cavity ``c``. The cavity
output runs down a waveguide into a pair of whispering-gallery modes
``a1, a2`` that talk to an 8.2 GHz phonon ``m`` through a three-wave
(Brillouin) interaction. We solve the linearized steady state and look at
how entanglement with ``b`` spreads downstream.

Run from the repository root::

    python3 notebooks/cascaded_steady_state.py

Heatmaps land in ``notebooks/out``.
"""

from pathlib import Path

import numpy as np

from mechnet.cascaded import CascadedParams, build_drift, check_stability, entanglement_report, solve_steady_state
from mechnet.config import SweepSpec
from mechnet.figures import figure_spec
from mechnet.output import emit_heatmap
from mechnet.sweep import as_grid, run_sweep

OUT = Path(__file__).with_name("out")
OUT.mkdir(exist_ok=True)

###############################################################################
# The reference operating point
# -----------------------------
# Defaults: ``kappa = 2 omega_b``, both effective couplings at 3 MHz, the
# upstream cavity driven on the red sideband and ``a1`` on the blue one.

p = CascadedParams()
ss = solve_steady_state(p)
print("|G_1|/2pi = %.3f MHz, |G_m|/2pi = %.3f MHz" % (abs(ss.G_1) / 2e6 / np.pi, abs(ss.G_m) / 2e6 / np.pi))
print(check_stability(build_drift(p, ss)))

rep = entanglement_report(p)
for name in ("E_cb", "E_a1b", "E_mb", "dn_b", "dn_a1", "dn_m"):
    print(f"{name:6s} {getattr(rep, name):.4f}")
print("Lyapunov residual %.1e, physical: %s" % (rep.residual, rep.physical))

###############################################################################
# Detuning maps
# -------------
# Sweep the upstream detuning against the ``a1`` detuning, both in units of
# ``omega_b``. This takes a few seconds for the 41 x 41 grid.

spec = figure_spec("2a", 41)
spec = SweepSpec(spec.scheme, spec.axis1, spec.axis2, spec.fixed, ("E_a1b", "E_mb"))
table = run_sweep(spec)
dc = np.array(spec.axis1.values())
d1 = np.array(spec.axis2.values())

for field in ("E_a1b", "E_mb"):
    grid = as_grid(table, spec, field)
    emit_heatmap(grid, OUT / f"{field}_detunings.ppm")
    i, j = np.unravel_index(np.nanargmax(grid), grid.shape)
    print(f"{field}: max {grid[i, j]:.3f} at delta_c~ = {dc[i]:.2f}, delta_1 = {d1[j]:.2f}")

###############################################################################
# The optical mode ``a1`` and the phonon share the entanglement. Along the
# ``delta_c~ = omega_b`` column, ``E_mb`` peaks on the sideband while
# ``E_a1b`` shows two lobes pushed apart by the ``a1``-``m`` hybridization.

col = np.argmin(abs(dc - 1.0))
for k in range(0, 41, 4):
    a, m = as_grid(table, spec, "E_a1b")[col, k], as_grid(table, spec, "E_mb")[col, k]
    print(f"delta_1 = {d1[k]:+.2f}   E_a1b {a:.3f} {'#' * int(60 * a)}")
    print(f"                 E_mb  {m:.3f} {'*' * int(60 * m)}")

###############################################################################
# Temperature
# -----------
# ``T1`` heats the upstream side, ``T2`` the downstream side. Nothing flows
# back up the waveguide, so ``E_cb`` cannot depend on ``T2``.

base = CascadedParams(eta=0.9, delta_c_tilde=0.75 * p.omega_b, delta_1=-p.omega_b)
for t2 in (0.0, 0.05, 0.1, 0.15, 0.2):
    r = entanglement_report(base.replace(T2=t2))
    print(f"T2 = {t2:.2f} K   E_cb {r.E_cb:.4f}   E_mb {r.E_mb:.4f}   dn_m {r.dn_m:.3f}")

spec = figure_spec("3c", 21)
emit_heatmap(as_grid(run_sweep(spec), spec, "E_mb"), OUT / "E_mb_temperatures.ppm")
