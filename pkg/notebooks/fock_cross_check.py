"""
Checking the Gaussian formulas in Fock space
============================================

The pulsed-scheme covariance matrix is derived with Gaussian algebra. Here
the same channel is built from scratch in a truncated Fock space: squeeze,
mix the optical mode with a vacuum ancilla on a beam splitter, trace, then
swap onto a fresh resonator. No Gaussian assumption enters.
"""

import time

import numpy as np

from mechnet import fock
from mechnet.pulse import PulseParams, e12, subsystem_cm

###############################################################################
# A single point

r, W, R = 0.8, 0.95, 0.2
dim = fock.tmsv_dimension(r)
print("truncation", dim, "tail", fock.tmsv_tail(r, dim))

t0 = time.perf_counter()
rho = fock.mechanical_pair(r, W, R, dim)
print("pipeline %.2fs, trace %.12f, min eigenvalue %.1e"
      % (time.perf_counter() - t0, rho.trace(), rho.min_eigenvalue()))

v_num = fock.numeric_cm(rho).matrix
v_ana = subsystem_cm(PulseParams(r, W, R)).matrix
np.set_printoptions(precision=5, suppress=True)
print(v_num)
print("max |V_fock - V_gauss| = %.1e" % np.abs(v_num - v_ana).max())
print("E_N: Fock %.6f, Gaussian %.6f" % (fock.numeric_log_negativity(rho), e12(PulseParams(r, W, R))))

###############################################################################
# The series form
# ---------------
# The density matrix also has an explicit quadruple sum. Compare a corner of
# it with the channel pipeline.

series = fock.closed_form_mechanical_pair(r, R, W, 8)
idx = np.ix_(*[np.arange(7)] * 4)
print("series vs pipeline: %.1e" % np.abs(series.data[idx] - rho.data[idx]).max())

###############################################################################
# Truncation matters: with too few levels the tail is refused

try:
    fock.tmsv(r, 6)
except fock.TruncationTooSmall as exc:
    print("refused:", exc)
