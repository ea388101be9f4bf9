import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings, strategies as st

from mechnet.cascaded import (
    MODE_INDEX, CascadedParams, NonConvergence, SingularSystem, Unstable, build_diffusion,
    build_drift, check_stability, entanglement_report, lyapunov_residual, occupations,
    solve_lyapunov, solve_steady_state, steady_state_residuals,
)
from mechnet.gaussian import check_physicality, extract_bipartite
from mechnet.units import hz, thermal_occupation

REF = CascadedParams()
WB = REF.omega_b


def operator_drift(p, ss):
    """Drift assembled from the linearized ladder-operator equations.

    Each mode's fluctuation obeys ``d(da_i)/dt = sum_j M_ij da_j + N_ij da_j^dag``;
    the quadrature drift is ``L [[M, N], [N*, M*]] L^-1`` with
    ``X = (a + a^dag)/sqrt 2``, ``Y = -i(a - a^dag)/sqrt 2``.
    """
    c, b, a1, a2, m = range(5)
    M = np.zeros((5, 5), complex)
    N = np.zeros((5, 5), complex)
    M[c, c] = -(1j * p.delta_c_tilde + p.kappa_c / 2)
    M[c, b] = N[c, b] = 1j * ss.G_c
    M[b, b] = -(1j * p.omega_b + p.gamma_b / 2)
    M[b, c] = 1j * np.conj(ss.G_c)
    N[b, c] = 1j * ss.G_c
    M[a1, a1] = -(1j * p.delta_1 + p.kappa_a / 2)
    M[a1, c] = np.sqrt(p.kappa_a * p.kappa_c * p.eta)
    M[a1, m] = -1j * ss.G_2
    M[a1, a2] = -1j * ss.G_m
    M[a2, a2] = -(1j * p.delta_2 + p.kappa_a / 2)
    N[a2, m] = -1j * ss.G_1
    M[a2, a1] = -1j * np.conj(ss.G_m)
    M[m, m] = -(1j * p.delta_m + p.gamma_m / 2)
    N[m, a2] = -1j * ss.G_1
    M[m, a1] = -1j * np.conj(ss.G_2)
    big = np.block([[M, N], [N.conj(), M.conj()]])
    L = np.zeros((10, 10), complex)
    for i in range(5):
        L[2 * i, i] = L[2 * i, 5 + i] = 1 / np.sqrt(2)
        L[2 * i + 1, i] = -1j / np.sqrt(2)
        L[2 * i + 1, 5 + i] = 1j / np.sqrt(2)
    out = L @ big @ np.linalg.inv(L)
    assert np.abs(out.imag).max() < 1e-6 * np.abs(out).max()
    return out.real


def noise_diffusion(p):
    """Diffusion ``B N B^T`` from the physical input-noise sources.

    ``a1`` sees the upstream input noise with amplitude ``-sqrt(eta kappa_a)``
    and a vacuum port with ``sqrt((1 - eta) kappa_a)``.
    """
    n_c, n_b, n_a1, n_a2, n_m = occupations(p)
    # sources: c_in, b_in, a1_vac, a2_in, m_in
    rates = np.zeros((5, 5))
    rates[0, 0] = np.sqrt(p.kappa_c)
    rates[1, 1] = np.sqrt(p.gamma_b)
    rates[2, 0] = -np.sqrt(p.eta * p.kappa_a)
    rates[2, 2] = np.sqrt((1 - p.eta) * p.kappa_a)
    rates[3, 3] = np.sqrt(p.kappa_a)
    rates[4, 4] = np.sqrt(p.gamma_m)
    occ = np.array([n_c, n_b, n_a1, n_a2, n_m]) + 0.5
    return np.kron(rates @ np.diag(occ) @ rates.T, np.eye(2))


def test_reference_steady_state():
    ss = solve_steady_state(REF)
    assert steady_state_residuals(REF, ss).max() < 1e-10
    assert abs(ss.G_c) == pytest.approx(hz(3e6), rel=1e-12)
    assert abs(ss.G_2) == pytest.approx(hz(3e6), rel=1e-10)
    assert hz(1e4) < abs(ss.G_1) < hz(1e7)
    assert ss.epsilon > 0 and ss.epsilon_2 > 0


def test_no_feed_no_upstream_drive():
    p = REF.replace(eta=0.0, target_Gc_abs=0.0)
    ss = solve_steady_state(p)
    assert ss.avg_a1 == 0 and ss.avg_m == 0
    assert ss.G_1 == 0 and ss.G_m == 0


@pytest.mark.parametrize("kw", [{"g": 0.0}, {"g_c": 0.0}])
def test_unreachable_targets(kw):
    with pytest.raises(NonConvergence):
        solve_steady_state(REF.replace(**kw))


def test_iteration_budget():
    with pytest.raises(NonConvergence):
        solve_steady_state(REF, max_iter=1)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.0, 2.0), st.floats(-2.0, 0.0), st.floats(0.0, 1.0))
def test_steady_state_residuals_small(dc, d1, eta):
    p = REF.replace(delta_c_tilde=dc * WB, delta_1=d1 * WB, eta=eta)
    assert steady_state_residuals(p, solve_steady_state(p)).max() < 1e-10


@pytest.mark.parametrize("kw", [{"eta": 1.5}, {"kappa_a": 0.0}, {"T1": -1.0}])
def test_params_validation(kw):
    with pytest.raises(ValueError):
        CascadedParams(**kw)


def test_drift_without_couplings():
    p = REF.replace(eta=0.0, target_Gc_abs=0.0, target_G2_abs=0.0)
    a = build_drift(p, solve_steady_state(p))
    rates = [p.kappa_c, p.gamma_b, p.kappa_a, p.kappa_a, p.gamma_m]
    freqs = [p.delta_c_tilde, p.omega_b, p.delta_1, p.delta_2, p.delta_m]
    expected = scipy.linalg.block_diag(*[
        np.array([[-k / 2, w], [-w, -k / 2]]) for k, w in zip(rates, freqs)])
    np.testing.assert_array_equal(a, expected)


def test_drift_feed_through_only():
    p = REF.replace(eta=1.0, target_Gc_abs=0.0, target_G2_abs=0.0)
    a = build_drift(p, solve_steady_state(p))
    off = a.copy()
    for i in range(5):
        off[2 * i:2 * i + 2, 2 * i:2 * i + 2] = 0
    rows, cols = np.nonzero(off)
    assert list(zip(rows, cols)) == [(4, 0), (5, 1)]
    assert off[4, 0] == off[5, 1] == pytest.approx(np.sqrt(p.kappa_a * p.kappa_c))


@settings(max_examples=20, deadline=None)
@given(st.floats(0.0, 2.0), st.floats(-2.0, 0.0), st.floats(0.0, 1.0))
def test_drift_matches_operator_equations(dc, d1, eta):
    p = REF.replace(delta_c_tilde=dc * WB, delta_1=d1 * WB, eta=eta)
    ss = solve_steady_state(p)
    a = build_drift(p, ss)
    np.testing.assert_allclose(a, operator_drift(p, ss), atol=1e-8 * np.abs(a).max())


def test_drift_is_block_lower_triangular():
    a = build_drift(REF, solve_steady_state(REF))
    assert np.all(a[:4, 4:] == 0)


def test_diffusion_zero_eta_has_no_correlation():
    d = build_diffusion(REF.replace(eta=0.0))
    assert np.all(d[:4, 4:] == 0) and np.all(d[4:, :4] == 0)


def test_diffusion_zero_temperature():
    p = REF.replace(T1=0.0, T2=0.0)
    d = build_diffusion(p)
    expected = np.diag(np.repeat([p.kappa_c, p.gamma_b, p.kappa_a, p.kappa_a, p.gamma_m], 2) / 2)
    cross = -np.sqrt(p.kappa_a * p.kappa_c) / 2
    expected[0, 4] = expected[4, 0] = expected[1, 5] = expected[5, 1] = cross
    np.testing.assert_allclose(d, expected, rtol=1e-15)


def test_diffusion_mechanical_bath():
    d = build_diffusion(REF)
    assert d[2, 2] == d[3, 3] == pytest.approx(REF.gamma_b * 20.84, rel=5e-3)
    assert d[2, 2] == pytest.approx(REF.gamma_b * (thermal_occupation(WB, 0.01) + 0.5), rel=1e-14)


@pytest.mark.parametrize("eta", [0.0, 0.3, 1.0])
def test_diffusion_matches_noise_sources(eta):
    # optical occupations vanish, so the weighting of the a1 inputs is immaterial
    p = REF.replace(eta=eta)
    np.testing.assert_allclose(build_diffusion(p), noise_diffusion(p), rtol=1e-14, atol=1e-20)


def test_diffusion_is_positive_semidefinite():
    assert np.linalg.eigvalsh(build_diffusion(REF)).min() > -1e-9 * REF.kappa_a


def test_stability_trivial():
    assert check_stability(-np.eye(10)) == check_stability(-np.eye(10))
    s = check_stability(-np.eye(10))
    assert s.full and s.upstream and s.downstream
    s = check_stability(np.eye(10))
    assert not (s.full or s.upstream or s.downstream)


def test_stability_reference_point():
    s = check_stability(build_drift(REF, solve_steady_state(REF)))
    assert s.full and s.upstream and s.downstream


def test_lyapunov_trivial():
    v = solve_lyapunov(-0.5 * np.eye(10), np.eye(10))
    np.testing.assert_allclose(v.matrix, np.eye(10), atol=1e-14)


def test_lyapunov_single_mode():
    gamma, omega, n = 0.3, 2.0, 4.0
    a = np.array([[-gamma / 2, omega], [-omega, -gamma / 2]])
    v = solve_lyapunov(a, gamma * (n + 0.5) * np.eye(2))
    np.testing.assert_allclose(v.matrix, (n + 0.5) * np.eye(2), rtol=1e-13, atol=1e-15)


def test_lyapunov_matches_scipy():
    a = build_drift(REF, solve_steady_state(REF))
    d = build_diffusion(REF)
    v = solve_lyapunov(a, d).matrix
    ref = scipy.linalg.solve_continuous_lyapunov(a, -d)
    np.testing.assert_allclose(v, ref, atol=1e-9 * np.abs(ref).max())
    assert lyapunov_residual(a, v, d) < 1e-9


def test_lyapunov_errors():
    with pytest.raises(Unstable):
        solve_lyapunov(np.eye(2), np.eye(2))
    # eigenvalues +-i sum to zero: the Kronecker operator is singular
    rot = np.array([[0.0, 1.0], [-1.0, 0.0]])
    with pytest.raises(SingularSystem):
        solve_lyapunov(rot, np.eye(2), check=False)


def test_reference_report():
    rep = entanglement_report(REF)
    assert rep.stable and rep.physical
    assert rep.residual < 1e-9
    assert check_physicality(rep.cm, 1e-8)
    for name in ("E_cb", "E_a1b", "E_mb"):
        assert getattr(rep, name) > 0
    assert rep.dn_b > 0 and rep.dn_a1 >= 0 and rep.dn_m >= 0


def test_zero_eta_decouples_downstream():
    rep = entanglement_report(REF.replace(eta=0.0))
    assert rep.E_a1b < 1e-10 and rep.E_mb < 1e-10


def test_no_dispersive_coupling():
    rep = entanglement_report(REF.replace(g_c=0.0, target_Gc_abs=0.0))
    assert rep.E_cb < 1e-10 and rep.E_a1b < 1e-10 and rep.E_mb < 1e-10


def test_mechanical_entanglement_positive():
    p = REF.replace(eta=0.9, delta_c_tilde=0.75 * WB, delta_1=-WB)
    assert entanglement_report(p).E_mb > 0


def test_unstable_point_reported():
    # strong coupling on the blue side drives the upstream pair unstable
    p = REF.replace(delta_c_tilde=-WB)
    rep = entanglement_report(p)
    assert not rep.stable and rep.E_cb is None
    assert not rep.stability.upstream


@settings(max_examples=15, deadline=None)
@given(st.floats(0.0, 0.2), st.floats(0.1, 2.0), st.floats(0.1, 1.0), st.floats(0.5, 5.0))
def test_upstream_block_ignores_downstream(t2, g_scale, gm_scale, g2_mhz):
    base = entanglement_report(REF).cm.matrix[:4, :4]
    p = REF.replace(T2=t2, g=REF.g * g_scale, gamma_m=REF.gamma_m * gm_scale,
                    target_G2_abs=hz(g2_mhz * 1e6))
    rep = entanglement_report(p)
    assert rep.stable
    np.testing.assert_allclose(rep.cm.matrix[:4, :4], base, rtol=0, atol=1e-12 * np.abs(base).max())


def test_downstream_heating_grows_with_t2():
    temps = [0.0, 0.05, 0.1, 0.2]
    dn_m = [entanglement_report(REF.replace(T2=t)).dn_m for t in temps]
    assert np.all(np.diff(dn_m) > 0)


def test_cm_of_cb_is_mode_pair():
    rep = entanglement_report(REF)
    sub = extract_bipartite(rep.cm, MODE_INDEX["c"], MODE_INDEX["b"]).matrix
    np.testing.assert_array_equal(sub, rep.cm.matrix[:4, :4])


def test_detuning_structure_along_sideband_column():
    d1 = np.linspace(-2.0, 0.0, 41)
    reps = [entanglement_report(REF.replace(delta_1=x * WB)) for x in d1]
    e_mb = np.array([r.E_mb for r in reps])
    e_a1b = np.array([r.E_a1b for r in reps])
    step = d1[1] - d1[0]
    assert abs(d1[np.argmax(e_mb)] + 1.0) <= step + 1e-12
    # a1 hybridizes with m: E_a1b dips where E_mb peaks, with lobes either side
    k = np.argmin(abs(d1 + 1.0))
    assert e_a1b[k] < e_a1b[:k].max() and e_a1b[k] < e_a1b[k + 1:].max()
