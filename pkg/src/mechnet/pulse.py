"""Pulsed gigahertz-to-megahertz entanglement distribution.

A blue-detuned pulse creates a two-mode squeezed state between the gigahertz
resonator ``b1`` and an outgoing optical temporal mode. The optical mode
crosses a lossy channel (beam splitter with reflectivity ``R``), then a
red-detuned pulse swaps it onto the megahertz resonator ``b2`` with
efficiency ``W``. Everything here is closed form.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from . import units
from .gaussian import CovarianceMatrix


@dataclass(frozen=True)
class PulseParams:
    r: float
    W: float
    R: float = 0.0

    def __post_init__(self):
        if self.r < 0:
            raise ValueError(f"squeeze parameter r must be >= 0, got {self.r}")
        if not 0.0 <= self.W <= 1.0:
            raise ValueError(f"transfer efficiency W must lie in [0, 1], got {self.W}")
        if not 0.0 <= self.R <= 1.0:
            raise ValueError(f"reflectivity R must lie in [0, 1], got {self.R}")

    @property
    def T(self):
        return 1.0 - self.R


@dataclass(frozen=True)
class PulseLabParams:
    """Laboratory description of the two pulses (rates in rad/s, SI otherwise).

    Defaults are an optomechanical crystal (blue pulse) feeding a
    microresonator (red pulse) over telecom fiber.
    """

    g0_blue: float = units.hz(825e3)
    kappa_blue: float = units.hz(1.3e9)
    omega_mech_blue: float = units.hz(5.3e9)
    power_blue: float = 0.4e-6
    tau_b: float = 10e-6
    g0_red: float = units.hz(1.7e3)
    kappa_red: float = units.hz(20e6)
    omega_mech_red: float = units.hz(100e6)
    power_red: float = 33.5e-6
    tau_r: float = 10e-6
    wavelength: float = 1550e-9
    fiber_loss: float = 0.2
    distance: float = 0.0

    def __post_init__(self):
        for name in ("g0_blue", "kappa_blue", "omega_mech_blue", "g0_red",
                     "kappa_red", "omega_mech_red", "tau_b", "tau_r", "wavelength"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        for name in ("power_blue", "power_red", "fiber_loss", "distance"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    def blue_coupling(self):
        # sideband drive: |detuning| equals the mechanical frequency
        return units.pulse_coupling(self.power_blue, self.wavelength, self.kappa_blue,
                                    self.omega_mech_blue, self.g0_blue)

    def red_coupling(self):
        return units.pulse_coupling(self.power_red, self.wavelength, self.kappa_red,
                                    self.omega_mech_red, self.g0_red)

    def to_pulse_params(self):
        g_b = self.blue_coupling()
        g_r = self.red_coupling()
        for label, g, kappa in (("blue", g_b, self.kappa_blue), ("red", g_r, self.kappa_red)):
            if g > kappa / 10:
                warnings.warn(
                    f"{label} pulse coupling G={g:.3e} rad/s exceeds kappa/10; "
                    "adiabatic elimination of the cavity is questionable",
                    stacklevel=2,
                )
        return PulseParams(
            r=squeeze_parameter(g_b, self.kappa_blue, self.tau_b),
            W=transfer_efficiency(g_r, self.kappa_red, self.tau_r),
            R=loss_from_distance(self.distance, self.fiber_loss),
        )


def effective_rate(g_eff, kappa):
    """Adiabatic-elimination rate ``2 G^2 / kappa``."""
    return 2.0 * g_eff ** 2 / kappa


def squeeze_parameter(g_eff, kappa, tau):
    """Two-mode squeezing ``r`` defined by ``cosh r = exp(rate * tau)``."""
    x = effective_rate(g_eff, kappa) * tau
    # arccosh(e^x) = x + ln(1 + sqrt(1 - e^{-2x})), finite for any x
    return float(x + np.log1p(np.sqrt(-np.expm1(-2.0 * x))))


def transfer_efficiency(g_eff, kappa, tau):
    """State-swap efficiency ``W = 1 - exp(-2 * rate * tau)``."""
    return float(-np.expm1(-2.0 * effective_rate(g_eff, kappa) * tau))


def squeezing_coefficients(rate_tau):
    """Heisenberg coefficients ``(e^{x}, sqrt(e^{2x} - 1))`` of the squeezing map.

    ``b(tau) = u b(0) + i v C_in^dag`` preserves the commutator iff
    ``u^2 - v^2 = 1``.
    """
    return float(np.exp(rate_tau)), float(np.sqrt(np.expm1(2.0 * rate_tau)))


def swap_coefficients(rate_tau):
    """Heisenberg coefficients ``(e^{-x}, sqrt(1 - e^{-2x}))`` of the swap map.

    Norm preservation requires ``u^2 + v^2 = 1``.
    """
    return float(np.exp(-rate_tau)), float(np.sqrt(-np.expm1(-2.0 * rate_tau)))


def loss_from_distance(distance, fiber_loss=0.2):
    """Beam-splitter reflectivity equivalent to ``distance`` km of fiber (dB/km)."""
    if distance < 0:
        raise ValueError(f"distance must be non-negative, got {distance}")
    return float(-np.expm1(-fiber_loss * distance / 10.0 * np.log(10.0)))


def _entries(p):
    x = p.W * p.T
    a = 0.5 * np.cosh(2 * p.r)
    b = x * np.sinh(p.r) ** 2 + 0.5
    c = 0.5 * np.sqrt(x) * np.sinh(2 * p.r)
    return a, b, c


def subsystem_cm(p):
    """Covariance matrix of the two mechanical modes ``(b1, b2)``."""
    a, b, c = _entries(p)
    v = np.array([
        [a, 0, -c, 0],
        [0, a, 0, c],
        [-c, 0, b, 0],
        [0, c, 0, b],
    ])
    return CovarianceMatrix(v)


def e12(p):
    """Logarithmic negativity between ``b1`` and ``b2``.

    Equal to ``log_negativity(subsystem_cm(p))``, but evaluated from ``r`` and
    ``WT`` directly: with ``s = sinh^2 r`` the product ``ab - c^2`` reduces to
    ``(1 + 2s(1 - WT))/4``, which keeps the result accurate for large ``r``
    where the matrix entries grow like ``e^{2r}``.
    """
    x = p.W * p.T
    s = np.sinh(p.r) ** 2
    a = 0.5 + s
    b = x * s + 0.5
    c2 = x * s * (1.0 + s)
    gram = 0.25 * (1.0 + 2.0 * s * (1.0 - x))
    nu = 2.0 * gram / ((a + b) + np.sqrt((a - b) ** 2 + 4.0 * c2))
    return float(max(0.0, -np.log(2.0 * nu)))


def e12_curve(r, W, reflectivities):
    """``e12`` along an array of reflectivities at fixed ``r`` and ``W``."""
    return np.array([e12(PulseParams(r, W, float(R))) for R in reflectivities])
