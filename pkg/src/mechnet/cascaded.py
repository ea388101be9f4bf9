"""Cascaded megahertz-to-gigahertz scheme in the linearized steady state.

Mode order everywhere is ``(c, b, a1, a2, m)``: the upstream cavity and its
megahertz resonator, then the downstream pair of optical whispering-gallery
modes and the gigahertz phonon mode. Quadratures are interleaved, so the
drift, diffusion and covariance matrices are 10x10.

The upstream output reaches ``a1`` through a waveguide of efficiency ``eta``
and nothing flows back, which makes the drift matrix block lower triangular.
"""

from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from . import units
from .gaussian import (
    CovarianceMatrix,
    check_physicality,
    excitation_number,
    extract_bipartite,
    log_negativity,
)

MODES = ("c", "b", "a1", "a2", "m")
MODE_INDEX = {name: i for i, name in enumerate(MODES)}


class NonConvergence(RuntimeError):
    """Steady-state amplitudes could not be found."""


class Unstable(RuntimeError):
    """Drift matrix has an eigenvalue with non-negative real part."""


class SingularSystem(np.linalg.LinAlgError):
    """Vectorized Lyapunov system is rank deficient."""


_OMEGA_B = units.hz(10e6)


@dataclass(frozen=True)
class CascadedParams:
    """Parameters of the cascaded system, rates in rad/s.

    ``delta_2`` is fixed at zero (resonant pump on ``a2``) and the phonon
    detuning equals ``delta_1``. The defaults are the reference operating
    point: 10 MHz / 8.2 GHz resonators, ``kappa = 2 omega_b``, coupling
    targets ``|G_c|/2pi = |G_2|/2pi = 3 MHz`` and 10 mK on both sides.
    """

    omega_b: float = _OMEGA_B
    omega_m: float = units.hz(8.2e9)
    kappa_c: float = 2.0 * _OMEGA_B
    kappa_a: float = 2.0 * _OMEGA_B
    gamma_b: float = 1e-4 * _OMEGA_B
    gamma_m: float = 0.5 * _OMEGA_B
    g_c: float = units.hz(100.0)
    g: float = units.hz(20.0)
    delta_c_tilde: float = _OMEGA_B
    delta_1: float = -_OMEGA_B
    eta: float = 1.0
    target_Gc_abs: float = units.hz(3e6)
    target_G2_abs: float = units.hz(3e6)
    T1: float = 0.01
    T2: float = 0.01
    wavelength_c: float = 1550e-9
    wavelength_a1: float = 1550e-9
    wavelength_a2: float = 1550e-9

    def __post_init__(self):
        for name in ("omega_b", "omega_m", "kappa_c", "kappa_a", "gamma_b", "gamma_m",
                     "wavelength_c", "wavelength_a1", "wavelength_a2"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        for name in ("g_c", "g", "target_Gc_abs", "target_G2_abs", "T1", "T2"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative, got {getattr(self, name)}")
        if not 0.0 <= self.eta <= 1.0:
            raise ValueError(f"eta must lie in [0, 1], got {self.eta}")

    @property
    def delta_2(self):
        return 0.0

    @property
    def delta_m(self):
        return self.delta_1

    def replace(self, **changes):
        return replace(self, **changes)


@dataclass(frozen=True)
class SteadyState:
    avg_c: complex
    avg_b: complex
    avg_a1: complex
    avg_a2: complex
    avg_m: complex
    G_c: complex
    G_1: complex
    G_2: complex
    G_m: complex
    epsilon: float
    epsilon_2: float
    iterations: int = 0


def _pair(p, a2, feed):
    # a1 and m are linear in each other once a2 is fixed
    lhs = np.array([
        [1j * p.delta_1 + 0.5 * p.kappa_a, 1j * p.g * a2],
        [1j * p.g * np.conj(a2), 1j * p.delta_m + 0.5 * p.gamma_m],
    ])
    return np.linalg.solve(lhs, np.array([feed, 0.0]))


def steady_state_residuals(p, ss):
    """Residuals of the five mean-field equations, each scaled by its largest term."""
    k2c, k2a = 0.5 * p.kappa_c, 0.5 * p.kappa_a
    feed = (np.sqrt(p.kappa_a * p.kappa_c * p.eta) * ss.avg_c
            - np.sqrt(p.eta * p.kappa_a / p.kappa_c) * ss.epsilon)
    rows = [
        (-(1j * p.delta_c_tilde + k2c) * ss.avg_c, ss.epsilon),
        (-(1j * p.omega_b + 0.5 * p.gamma_b) * ss.avg_b, 1j * p.g_c * abs(ss.avg_c) ** 2),
        (-(1j * p.delta_1 + k2a) * ss.avg_a1, -1j * p.g * ss.avg_a2 * ss.avg_m, feed),
        (-(1j * p.delta_2 + k2a) * ss.avg_a2, -1j * p.g * ss.avg_a1 * np.conj(ss.avg_m),
         ss.epsilon_2),
        (-(1j * p.delta_m + 0.5 * p.gamma_m) * ss.avg_m,
         -1j * p.g * ss.avg_a1 * np.conj(ss.avg_a2)),
    ]
    out = []
    for terms in rows:
        scale = max(abs(t) for t in terms)
        out.append(abs(sum(terms)) / scale if scale > 0 else 0.0)
    return np.array(out)


def solve_steady_state(p, tol=1e-12, max_iter=10_000, damping=0.5):
    """Mean-field amplitudes for the requested coupling targets.

    The drives ``epsilon`` and ``epsilon_2`` are taken real and positive and
    sized so that ``g_c |<c>|`` and ``g |<a2>|`` hit ``target_Gc_abs`` and
    ``target_G2_abs``. ``<a2>`` is found by damped fixed-point iteration
    around the exact linear solve for ``(<a1>, <m>)``.
    """
    if p.target_Gc_abs > 0 and p.g_c == 0:
        raise NonConvergence("target |G_c| > 0 is unreachable with g_c = 0")
    if p.target_G2_abs > 0 and p.g == 0:
        raise NonConvergence("target |G_2| > 0 is unreachable with g = 0")

    abs_c = p.target_Gc_abs / p.g_c if p.target_Gc_abs > 0 else 0.0
    chi_c = 0.5 * p.kappa_c + 1j * p.delta_c_tilde
    eps = abs_c * abs(chi_c)
    avg_c = eps / chi_c
    avg_b = 1j * p.g_c * abs_c ** 2 / (1j * p.omega_b + 0.5 * p.gamma_b)
    feed = (np.sqrt(p.kappa_a * p.kappa_c * p.eta) * avg_c
            - np.sqrt(p.eta * p.kappa_a / p.kappa_c) * eps)

    abs_a2 = p.target_G2_abs / p.g if p.target_G2_abs > 0 else 0.0
    k2a = 0.5 * p.kappa_a
    a2 = complex(abs_a2)
    eps2 = k2a * abs_a2
    for it in range(1, max_iter + 1):
        a1, m = _pair(p, a2, feed)
        back = -1j * p.g * a1 * np.conj(m)
        # eps2 real, |eps2 + back| = k2a*|a2|, taking the positive root
        rad = (k2a * abs_a2) ** 2 - back.imag ** 2
        if rad < 0:
            raise NonConvergence("back-action exceeds the a2 drive; |G_2| target unreachable")
        eps2 = -back.real + np.sqrt(rad)
        if eps2 < 0:
            raise NonConvergence("no positive a2 drive reaches the |G_2| target")
        a2_new = (eps2 + back) / k2a
        step = a2_new - a2
        a2 = a2 + (1.0 - damping) * step
        if abs(step) <= tol * max(abs(a2), 1e-300):
            break
    else:
        raise NonConvergence(f"a2 fixed point not converged after {max_iter} iterations")

    # final consistent solve so every equation holds at the returned a2
    a2 = a2_new
    a1, m = _pair(p, a2, feed)
    back = -1j * p.g * a1 * np.conj(m)
    eps2 = (k2a * a2 - back).real

    return SteadyState(
        avg_c=complex(avg_c), avg_b=complex(avg_b), avg_a1=complex(a1),
        avg_a2=complex(a2), avg_m=complex(m),
        G_c=complex(p.g_c * avg_c), G_1=complex(p.g * a1),
        G_2=complex(p.g * a2), G_m=complex(p.g * m),
        epsilon=float(eps), epsilon_2=float(eps2), iterations=it,
    )


def build_drift(p, ss):
    """10x10 drift matrix of the quadrature fluctuations."""
    gc, g1, g2, gm = ss.G_c, ss.G_1, ss.G_2, ss.G_m
    kc, ka = 0.5 * p.kappa_c, 0.5 * p.kappa_a
    dc, d1, d2, dm = p.delta_c_tilde, p.delta_1, p.delta_2, p.delta_m
    wb = p.omega_b
    fb = np.sqrt(p.kappa_a * p.kappa_c * p.eta)
    hb, hm = 0.5 * p.gamma_b, 0.5 * p.gamma_m
    a = np.array([
        [-kc, dc, -2 * gc.imag, 0, 0, 0, 0, 0, 0, 0],
        [-dc, -kc, 2 * gc.real, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, -hb, wb, 0, 0, 0, 0, 0, 0],
        [2 * gc.real, 2 * gc.imag, -wb, -hb, 0, 0, 0, 0, 0, 0],
        [fb, 0, 0, 0, -ka, d1, gm.imag, gm.real, g2.imag, g2.real],
        [0, fb, 0, 0, -d1, -ka, -gm.real, gm.imag, -g2.real, g2.imag],
        [0, 0, 0, 0, -gm.imag, gm.real, -ka, d2, g1.imag, -g1.real],
        [0, 0, 0, 0, -gm.real, -gm.imag, -d2, -ka, -g1.real, -g1.imag],
        [0, 0, 0, 0, -g2.imag, g2.real, g1.imag, -g1.real, -hm, dm],
        [0, 0, 0, 0, -g2.real, -g2.imag, -g1.real, -g1.imag, -dm, -hm],
    ], dtype=float)
    return a


def occupations(p):
    """Thermal occupations ``(n_c, n_b, n_a1, n_a2, n_m)``.

    Upstream modes sit at ``T1``, downstream modes at ``T2``.
    """
    n_c = units.thermal_occupation(units.optical_angular_frequency(p.wavelength_c), p.T1)
    n_b = units.thermal_occupation(p.omega_b, p.T1)
    n_a1 = units.thermal_occupation(units.optical_angular_frequency(p.wavelength_a1), p.T2)
    n_a2 = units.thermal_occupation(units.optical_angular_frequency(p.wavelength_a2), p.T2)
    n_m = units.thermal_occupation(p.omega_m, p.T2)
    return n_c, n_b, n_a1, n_a2, n_m


def build_diffusion(p):
    """10x10 diffusion matrix, including the ``c``/``a1`` input-noise correlation."""
    n_c, n_b, n_a1, n_a2, n_m = occupations(p)
    diag = [
        p.kappa_c * (n_c + 0.5),
        p.gamma_b * (n_b + 0.5),
        p.kappa_a * ((1 - p.eta) * (n_c + 0.5) + p.eta * (n_a1 + 0.5)),
        p.kappa_a * (n_a2 + 0.5),
        p.gamma_m * (n_m + 0.5),
    ]
    d = np.diag(np.repeat(diag, 2))
    cross = -np.sqrt(p.kappa_a * p.kappa_c * p.eta) * (n_c + 0.5)
    d[0, 4] = d[4, 0] = d[1, 5] = d[5, 1] = cross
    return d


@dataclass(frozen=True)
class Stability:
    full: bool
    upstream: bool
    downstream: bool

    def __bool__(self):
        return self.full


def _all_decaying(m):
    try:
        ev = np.linalg.eigvals(m)
    except np.linalg.LinAlgError as exc:
        raise np.linalg.LinAlgError(f"eigenvalue computation failed: {exc}") from exc
    return bool(np.all(ev.real < 0))


def check_stability(a):
    """Routh-Hurwitz style check on the full drift matrix and both subsystems."""
    a = np.asarray(a, dtype=float)
    return Stability(
        full=_all_decaying(a),
        upstream=_all_decaying(a[:4, :4]),
        downstream=_all_decaying(a[4:, 4:]),
    )


def lyapunov_residual(a, v, d):
    """Relative Frobenius residual ``|AV + VA^T + D| / |D|``."""
    a, v, d = (np.asarray(x, dtype=float) for x in (a, v, d))
    return float(np.linalg.norm(a @ v + v @ a.T + d) / np.linalg.norm(d))


def solve_lyapunov(a, d, check=True):
    """Steady-state covariance from ``A V + V A^T + D = 0``.

    Solved as the dense Kronecker system ``(I (x) A + A (x) I) vec V = -vec D``.
    """
    a = np.asarray(a, dtype=float)
    d = np.asarray(d, dtype=float)
    n = a.shape[0]
    if check and not _all_decaying(a):
        raise Unstable("drift matrix has eigenvalues with non-negative real part")
    eye = np.eye(n)
    op = np.kron(eye, a) + np.kron(a, eye)
    try:
        # column-major vec: vec(AV) = (I kron A) vec V, vec(VA^T) = (A kron I) vec V
        vec = np.linalg.solve(op, -d.reshape(-1, order="F"))
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(str(exc)) from exc
    v = vec.reshape(n, n, order="F")
    return CovarianceMatrix(v)


@dataclass
class Report:
    stable: bool
    E_cb: Optional[float] = None
    E_a1b: Optional[float] = None
    E_mb: Optional[float] = None
    dn_b: Optional[float] = None
    dn_a1: Optional[float] = None
    dn_m: Optional[float] = None
    residual: Optional[float] = None
    physical: Optional[bool] = None
    stability: Optional[Stability] = None
    steady: Optional[SteadyState] = field(default=None, repr=False)
    cm: Optional[CovarianceMatrix] = field(default=None, repr=False)


def entanglement_report(p):
    """Entanglement and excitation numbers at one parameter point.

    Unstable points come back with ``stable=False`` and the entanglement
    fields left as ``None``.
    """
    ss = solve_steady_state(p)
    a = build_drift(p, ss)
    stab = check_stability(a)
    if not stab.full:
        return Report(stable=False, stability=stab, steady=ss)
    d = build_diffusion(p)
    v = solve_lyapunov(a, d, check=False)
    ib, ic, ia1, im = (MODE_INDEX[k] for k in ("b", "c", "a1", "m"))
    return Report(
        stable=True,
        E_cb=log_negativity(extract_bipartite(v, ic, ib)),
        E_a1b=log_negativity(extract_bipartite(v, ia1, ib)),
        E_mb=log_negativity(extract_bipartite(v, im, ib)),
        dn_b=excitation_number(v, ib),
        dn_a1=excitation_number(v, ia1),
        dn_m=excitation_number(v, im),
        residual=lyapunov_residual(a, v, d),
        physical=check_physicality(v),
        stability=stab,
        steady=ss,
        cm=v,
    )
