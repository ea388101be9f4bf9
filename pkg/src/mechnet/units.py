"""Physical constants and laboratory-to-model conversions.

All angular frequencies are in rad/s. Helpers that accept frequencies in Hz
say so in their name.
"""

from dataclasses import dataclass

import numpy as np
from scipy import constants as _const

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class PhysicalQuantities:
    hbar: float = _const.hbar
    k_boltzmann: float = _const.k
    speed_of_light: float = _const.c


PHYSICAL = PhysicalQuantities()


def hz(value):
    """Convert a frequency in Hz to an angular frequency in rad/s."""
    return TWO_PI * value


def optical_angular_frequency(wavelength):
    """Angular frequency (rad/s) of light with vacuum ``wavelength`` in meters."""
    if wavelength <= 0:
        raise ValueError(f"wavelength must be positive, got {wavelength}")
    return TWO_PI * PHYSICAL.speed_of_light / wavelength


def thermal_occupation(omega, temperature):
    """Bose-Einstein mean occupation of a mode at angular frequency ``omega``.

    Returns exactly 0 at zero temperature. Large ``hbar*omega/kT`` ratios are
    handled with ``expm1`` so optical modes at cryogenic temperatures come
    out as tiny positive numbers (or 0.0 on underflow), never NaN.
    """
    if omega <= 0:
        raise ValueError(f"omega must be positive, got {omega}")
    if temperature < 0:
        raise ValueError(f"temperature must be non-negative, got {temperature}")
    if temperature == 0:
        return 0.0
    # divide in two steps: k_B * T underflows to 0 for denormal temperatures
    x = PHYSICAL.hbar * omega / PHYSICAL.k_boltzmann / temperature
    if x > 700.0:
        return 0.0
    return 1.0 / np.expm1(x)


def drive_amplitude(power, drive_omega, kappa):
    """Cavity drive rate ``sqrt(kappa * P / (hbar * omega_l))``."""
    if power < 0:
        raise ValueError(f"power must be non-negative, got {power}")
    if drive_omega <= 0 or kappa <= 0:
        raise ValueError("drive_omega and kappa must be positive")
    return float(np.sqrt(kappa * power / (PHYSICAL.hbar * drive_omega)))


def pulse_coupling(power, wavelength, kappa, detuning, g0):
    """Linearized coupling ``G = g0 |<c>|`` for a cavity driven at ``detuning``.

    The intracavity amplitude is ``|<c>| = eps / |kappa/2 + i*detuning|`` with
    ``eps`` from :func:`drive_amplitude`.
    """
    eps = drive_amplitude(power, optical_angular_frequency(wavelength), kappa)
    amplitude = eps / abs(0.5 * kappa + 1j * detuning)
    return g0 * amplitude
