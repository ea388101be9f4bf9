import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, strategies as st

from mechnet import units
from mechnet.units import drive_amplitude, hz, pulse_coupling, thermal_occupation

from conftest import mp_constants


def bose_mp(omega, temperature):
    hbar, kb, _ = mp_constants()
    return 1 / (mp.exp(hbar * mp.mpf(omega) / (kb * mp.mpf(temperature))) - 1)


def test_physical_constants_are_codata():
    assert units.PHYSICAL.hbar == pytest.approx(1.054571817e-34, rel=1e-12)
    assert units.PHYSICAL.k_boltzmann == pytest.approx(1.380649e-23, rel=1e-12)
    assert units.PHYSICAL.speed_of_light == 299792458.0
    with pytest.raises(Exception):
        units.PHYSICAL.hbar = 1.0


def test_thermal_occupation_zero_temperature():
    assert thermal_occupation(hz(10e6), 0.0) == 0.0


def test_thermal_occupation_megahertz_at_10mK(hp):
    hbar, kb, _ = mp_constants()
    x = hbar * mp.mpf(hz(10e6)) / (kb * mp.mpf("0.01"))
    assert float(x) == pytest.approx(0.04799, abs=1e-5)
    expected = float(bose_mp(hz(10e6), 0.01))
    assert expected == pytest.approx(20.34, abs=0.01)
    assert thermal_occupation(hz(10e6), 0.01) == pytest.approx(expected, rel=1e-12)


def test_thermal_occupation_gigahertz_at_10mK(hp):
    n = thermal_occupation(hz(8.2e9), 0.01)
    assert n < 1e-16
    assert n == pytest.approx(float(bose_mp(hz(8.2e9), 0.01)), rel=1e-10)


def test_thermal_occupation_optical_is_zero_not_nan():
    n = thermal_occupation(units.optical_angular_frequency(1550e-9), 0.01)
    assert n == 0.0


@pytest.mark.parametrize("omega", [0.0, -1.0])
def test_thermal_occupation_rejects_nonpositive_frequency(omega):
    with pytest.raises(ValueError):
        thermal_occupation(omega, 0.01)


@given(st.floats(1e-3, 1.0), st.floats(1e-3, 1.0))
def test_thermal_occupation_monotone_in_temperature(t1, t2):
    if t1 == t2:
        return
    lo, hi = sorted((t1, t2))
    assert thermal_occupation(hz(10e6), lo) < thermal_occupation(hz(10e6), hi)


@given(st.floats(1e6, 1e10), st.floats(1e6, 1e10))
def test_thermal_occupation_decreasing_in_frequency(f1, f2):
    if abs(f1 - f2) < 1e-6 * f1:
        return
    lo, hi = sorted((f1, f2))
    assert thermal_occupation(hz(lo), 0.05) > thermal_occupation(hz(hi), 0.05)


def test_drive_amplitude_zero_power():
    assert drive_amplitude(0.0, 1e15, 1e9) == 0.0


@pytest.mark.parametrize("power, kappa_hz, expected", [
    (0.4e-6, 1.3e9, 1.596e11),
    (33.5e-6, 20e6, 1.81e11),
])
def test_drive_amplitude_lab_values(hp, power, kappa_hz, expected):
    hbar, _, c = mp_constants()
    omega_l = 2 * mp.pi * c / mp.mpf("1550e-9")
    oracle = mp.sqrt(2 * mp.pi * mp.mpf(kappa_hz) * mp.mpf(power) / (hbar * omega_l))
    got = drive_amplitude(power, units.optical_angular_frequency(1550e-9), hz(kappa_hz))
    assert got == pytest.approx(float(oracle), rel=1e-12)
    assert got == pytest.approx(expected, rel=0.01)


def test_drive_amplitude_negative_power():
    with pytest.raises(ValueError):
        drive_amplitude(-1e-6, 1e15, 1e9)


@given(st.floats(1e-12, 1e-2))
def test_drive_amplitude_scales_as_sqrt_power(p):
    w, k = units.optical_angular_frequency(1550e-9), hz(1e6)
    assert drive_amplitude(4 * p, w, k) == pytest.approx(2 * drive_amplitude(p, w, k), rel=1e-12)


def test_pulse_coupling_blue_lab_values():
    g = pulse_coupling(0.4e-6, 1550e-9, hz(1.3e9), hz(5.3e9), hz(825e3))
    assert g / (2 * np.pi) == pytest.approx(3.93e6, rel=0.01)


def test_pulse_coupling_red_lab_values(hp):
    hbar, _, c = mp_constants()
    kappa, delta, g0 = (2 * mp.pi * mp.mpf(x) for x in ("20e6", "100e6", "1.7e3"))
    eps = mp.sqrt(kappa * mp.mpf("33.5e-6") / (hbar * 2 * mp.pi * c / mp.mpf("1550e-9")))
    oracle = g0 * eps / mp.sqrt((kappa / 2) ** 2 + delta ** 2)
    g = pulse_coupling(33.5e-6, 1550e-9, hz(20e6), hz(100e6), hz(1.7e3))
    assert g == pytest.approx(float(oracle), rel=1e-12)
    assert g / (2 * np.pi) == pytest.approx(0.49e6, rel=0.02)


def test_pulse_coupling_zero_power():
    assert pulse_coupling(0.0, 1550e-9, hz(1e9), hz(1e9), hz(1e3)) == 0.0


@given(st.floats(-1e11, 1e11))
def test_pulse_coupling_peaks_on_resonance(delta):
    args = (1e-6, 1550e-9, hz(1e8))
    assert pulse_coupling(*args, delta, hz(1e3)) <= pulse_coupling(*args, 0.0, hz(1e3))


@pytest.mark.parametrize("temperature", [5e-324, 2.2250738585e-313, 1e-300])
def test_thermal_occupation_denormal_temperature(temperature):
    assert thermal_occupation(hz(10e6), temperature) == 0.0
