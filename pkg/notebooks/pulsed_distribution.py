"""
Pulsed entanglement distribution over fiber
===========================================

A blue-detuned pulse on an optomechanical crystal squeezes its 5.3 GHz
resonator ``b1`` with an outgoing optical mode. The light crosses a fiber
(a beam splitter with reflectivity ``R``) and a red-detuned pulse swaps it
into a 100 MHz resonator ``b2``. Everything is closed form.
"""

import numpy as np

from mechnet.config import PulseSetup
from mechnet.pulse import PulseLabParams, PulseParams, e12, e12_curve, loss_from_distance

###############################################################################
# From laboratory numbers to (r, W)
# ---------------------------------

lab = PulseLabParams()
p = lab.to_pulse_params()
print("G_blue/2pi = %.3f MHz  ->  r = %.3f" % (lab.blue_coupling() / 2e6 / np.pi, p.r))
print("G_red/2pi  = %.3f MHz  ->  W = %.3f" % (lab.red_coupling() / 2e6 / np.pi, p.W))
print("E_12 with a lossless channel: %.4f (2r = %.4f)" % (e12(p), 2 * p.r))

###############################################################################
# Entanglement versus channel reflectivity
# ----------------------------------------
# Three (r, W) pairs. The bigger the squeezing the more entanglement at
# ``R = 0``, and every curve dies at ``R = 1``.

refl = np.linspace(0, 1, 11)
pairs = [(2.18, 0.95), (1.44, 0.80), (0.95, 0.55)]
curves = {pair: e12_curve(*pair, refl) for pair in pairs}
print("   R  " + "".join(f"  r={r:.2f},W={w:.2f}" for r, w in pairs))
for i, R in enumerate(refl):
    print(f"{R:5.2f} " + "".join(f"  {curves[pair][i]:14.4f}" for pair in pairs))

###############################################################################
# Kilometers of fiber
# -------------------
# At 0.2 dB/km, how far does the best curve carry entanglement?

for km in (0, 5, 10, 25, 50, 100):
    R = loss_from_distance(km)
    print(f"{km:4d} km  R = {R:.3f}  E_12 = {e12(PulseParams(p.r, p.W, R)):.4f}")

###############################################################################
# The same through the configuration layer, as the CLI does it

setup = PulseSetup(PulseLabParams(distance=10.0))
print(setup.pulse_params())
