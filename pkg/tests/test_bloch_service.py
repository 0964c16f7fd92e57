"""
Tests for the Floquet linear-algebra engine
"""
import numpy as np
import pytest

from src.models.states import E_MINUS as EM, E_PLUS as EP, G_MINUS as GM, G_PLUS as GP
from src.utils.exceptions import DegenerateSteadyStateError, ResonantDegeneracyError
from src.utils.validators import density_matrix_defects

MINUS_FOUR_51 = -4.0 / 51.0


def random_density_matrix(rng: np.random.Generator) -> np.ndarray:
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


def lindblad_generator(params, g_minus: complex, g_plus: complex, phase: complex) -> np.ndarray:
    """Rotating-frame Hamiltonian plus four independent decay channels, row-major vectorized"""
    B, Bp, D = params.B, params.B_prime, params.Delta
    G = complex(params.G)
    H = np.diag([2 * Bp - D, 2 * Bp - D - 2 * B, 2 * Bp, 0.0]).astype(complex)
    for (a, b), value in {
        (EP, GP): G,
        (EM, GM): G,
        (EP, GM): g_minus * phase,
        (EM, GP): g_plus * phase,
    }.items():
        H[a, b] -= value
        H[b, a] -= np.conj(value)

    identity = np.eye(4)
    L = -1j * (np.kron(H, identity) - np.kron(identity, H.T))
    for low, high, rate in ((GP, EP, params.gamma2), (GM, EM, params.gamma2),
                            (GP, EM, params.gamma1), (GM, EP, params.gamma1)):
        J = np.zeros((4, 4))
        J[low, high] = np.sqrt(rate)
        JdJ = J.T @ J
        L += np.kron(J, J) - 0.5 * np.kron(JdJ, identity) - 0.5 * np.kron(identity, JdJ.T)
    return L


def transcribed_rhs(r: np.ndarray, params, gm: complex, gp: complex, u: complex) -> dict:
    """The nine listed equations written element by element"""
    B, Bp, D = params.B, params.B_prime, params.Delta
    G = complex(params.G)
    Gc = G.conjugate()
    Gamma = 0.5 * (params.gamma1 + params.gamma2)
    Gamma_ee = params.gamma1 + params.gamma2
    uc = np.conj(u)
    out = {
        (EP, GM): -(1j * (-D + 2 * Bp) + Gamma) * r[EP, GM]
        + 1j * (gm * u * (r[GM, GM] - r[EP, EP]) + G * r[GP, GM] - G * r[EP, EM]),
        (EM, GP): -(1j * (-D - 2 * B) + Gamma) * r[EM, GP]
        + 1j * (gp * u * (r[GP, GP] - r[EM, EM]) + G * r[GM, GP] - G * r[EM, EP]),
        (EP, GP): -(-1j * D + Gamma) * r[EP, GP]
        + 1j * (G * (r[GP, GP] - r[EP, EP]) + gm * u * r[GM, GP] - gp * u * r[EP, EM]),
        (EM, GM): -(1j * (-D - 2 * B + 2 * Bp) + Gamma) * r[EM, GM]
        + 1j * (gp * u * r[GP, GM] - gm * u * r[EM, EP] + G * (r[GM, GM] - r[EM, EM])),
        (GP, GM): -(2j * Bp) * r[GP, GM]
        + 1j * (Gc * r[EP, GM] - G * r[GP, EM] + np.conj(gp) * uc * r[EM, GM] - gm * u * r[GP, EP]),
        (EP, EM): -(2j * B + Gamma_ee) * r[EP, EM]
        - 1j * (Gc * r[EP, GM] - G * r[GP, EM] + np.conj(gp) * uc * r[EP, GP] - gm * u * r[GM, EM]),
    }
    x = np.conj(gm) * uc * r[EP, GM] + Gc * r[EM, GM]
    out[(GM, GM)] = params.gamma2 * r[EM, EM] + params.gamma1 * r[EP, EP] + 1j * (x - np.conj(x))
    y = gp * u * r[GP, EM] + G * r[GM, EM]
    out[(EM, EM)] = -Gamma_ee * r[EM, EM] + 1j * (y - np.conj(y))
    z = gm * u * r[GM, EP] + G * r[GP, EP]
    out[(EP, EP)] = -Gamma_ee * r[EP, EP] + 1j * (z - np.conj(z))
    return out


def test_blocks_match_transcribed_equations(bloch, fig2_params, draw_params):
    rng = np.random.default_rng(31)
    for params in [fig2_params] + [draw_params(rng) for _ in range(20)]:
        blocks = bloch.assemble(params)
        rho = random_density_matrix(rng)
        gm, gp = complex(*rng.normal(size=2)), complex(*rng.normal(size=2))
        u = np.exp(-1j * rng.uniform(0, 2 * np.pi))

        derivative = (blocks.generator(gm, gp, u) @ rho.reshape(16)).reshape(4, 4)
        for (a, b), expected in transcribed_rhs(rho, params, gm, gp, u).items():
            assert derivative[a, b] == pytest.approx(expected, abs=1e-12)
            assert derivative[b, a] == pytest.approx(np.conj(expected), abs=1e-12)


def test_blocks_match_lindblad_form(bloch, fig2_params, draw_params):
    rng = np.random.default_rng(32)
    for params in [fig2_params] + [draw_params(rng) for _ in range(20)]:
        blocks = bloch.assemble(params)
        gm, gp = complex(*rng.normal(size=2)), complex(*rng.normal(size=2))
        u = np.exp(-1j * rng.uniform(0, 2 * np.pi))

        np.testing.assert_allclose(
            blocks.generator(gm, gp, u), lindblad_generator(params, gm, gp, u), rtol=0, atol=1e-12
        )


def test_trace_is_conserved(bloch, draw_params):
    rng = np.random.default_rng(33)
    for _ in range(20):
        blocks = bloch.assemble(draw_params(rng))
        trace_row = np.eye(4).reshape(16)
        for matrix in (blocks.L0, blocks.V_minus, blocks.W_minus, blocks.V_plus, blocks.W_plus):
            assert np.max(np.abs(trace_row @ matrix)) < 1e-13


def test_probe_blocks_are_per_unit_amplitude(bloch, fig2_params):
    blocks = bloch.assemble(fig2_params)
    u = np.exp(-0.3j)
    single = blocks.generator(1e-3, 2e-3, u) - blocks.L0
    double = blocks.generator(2e-3, 4e-3, u) - blocks.L0

    np.testing.assert_allclose(double, 2 * single, atol=1e-15)
    assert np.allclose(bloch.assemble(fig2_params).L0, blocks.L0)


def test_null_space_is_one_dimensional(bloch, fig2_params):
    singular = np.linalg.svd(bloch.assemble(fig2_params).L0, compute_uv=False)

    assert singular[-1] / singular[0] < 1e-12
    assert singular[-2] / singular[0] > 1e-8


def test_steady_state_default_parameters(bloch, fig2_params):
    rho0 = bloch.steady_state_zeroth(fig2_params)

    assert rho0.populations == pytest.approx((0.0049020, 0.0049020, 0.4950980, 0.4950980), abs=1e-7)
    assert rho0.element(GP, EP) == pytest.approx(-0.039216 - 0.029412j, abs=1e-6)


def test_steady_state_matches_closed_form(bloch, analytic, draw_params):
    rng = np.random.default_rng(34)
    for _ in range(100):
        params = draw_params(rng)
        rho0 = bloch.steady_state_zeroth(params)
        state = analytic.zeroth_order(params)

        assert rho0.populations == pytest.approx(state.populations, abs=1e-10)
        assert rho0.element(GP, EP) == pytest.approx(state.coh_g_plus_e_plus, abs=1e-10)
        assert rho0.element(GM, EM) == pytest.approx(state.coh_g_minus_e_minus, abs=1e-10)
        assert np.max(np.abs(bloch.assemble(params).L0 @ rho0.vector)) < 1e-10


def test_steady_state_is_a_density_matrix(bloch, draw_params):
    rng = np.random.default_rng(35)
    for _ in range(50):
        rho0 = bloch.steady_state_zeroth(draw_params(rng))

        assert np.max(np.abs(rho0.matrix - rho0.matrix.conj().T)) < 1e-12
        assert rho0.trace == pytest.approx(1.0, abs=1e-12)
        assert rho0.eigenvalues().min() >= -1e-10


def test_symmetric_populations_when_control_detuning_matches_splitting(bloch, fig2_params):
    rho0 = bloch.steady_state_zeroth(fig2_params.replace(Delta=4.0, delta=-1.0))
    e_plus, e_minus, g_plus, g_minus = rho0.populations

    assert g_plus == pytest.approx(g_minus, abs=1e-12)
    assert e_plus == pytest.approx(e_minus, abs=1e-12)


def test_degenerate_steady_state_detected(bloch, fig2_params):
    with pytest.raises(DegenerateSteadyStateError):
        bloch.steady_state_zeroth(fig2_params.replace(G=1e-12))


def test_sideband_response_at_two_photon_resonance(bloch, fig2_params):
    response = bloch.sideband_response(fig2_params)

    assert response.rho_ep_gm.real == pytest.approx(MINUS_FOUR_51, abs=1e-10)
    assert abs(response.rho_ep_gm.imag) < 1e-10


def test_sideband_sweep_matches_closed_form(bloch, analytic, fig2_params):
    for d in np.linspace(-10.0, 20.0, 121):
        params = fig2_params.replace(delta=d)
        if abs(d - params.Delta + 2 * params.B_prime) < 1e-9:
            continue
        numeric = bloch.sideband_response(params)
        closed = analytic.first_order(params)
        np.testing.assert_allclose(numeric.rho_ep_gm, closed.rho_ep_gm, rtol=1e-10, atol=1e-14)
        np.testing.assert_allclose(numeric.rho_em_gp, closed.rho_em_gp, rtol=1e-10, atol=1e-14)


def test_oracle_equivalence_random_draws(bloch, analytic, draw_params):
    rng = np.random.default_rng(36)
    for _ in range(500):
        params = draw_params(rng, min_beat=0.01)
        numeric = bloch.sideband_response(params)
        closed = analytic.first_order(params)

        np.testing.assert_allclose(numeric.rho_ep_gm, closed.rho_ep_gm, rtol=1e-9, atol=1e-13)
        np.testing.assert_allclose(numeric.rho_em_gp, closed.rho_em_gp, rtol=1e-9, atol=1e-13)
        for mine, theirs in ((numeric.term_coh_pp, closed.term_coh_pp),
                             (numeric.term_coh_mm, closed.term_coh_mm),
                             (numeric.term_pop, closed.term_pop)):
            assert abs(mine - theirs) <= 1e-9 * abs(closed.rho_ep_gm) + 1e-13


def test_harmonics_are_hermitian_partners(bloch, fig2_params):
    harmonics = bloch.harmonics(fig2_params.replace(delta=4.05))
    response = bloch.sideband_response(fig2_params.replace(delta=4.05))

    np.testing.assert_allclose(harmonics.minus_double_prime, harmonics.minus_prime.conj().T, atol=1e-12)
    np.testing.assert_allclose(harmonics.plus_double_prime, harmonics.plus_prime.conj().T, atol=1e-12)
    assert harmonics.minus_prime[EP, GM] == pytest.approx(response.rho_ep_gm, abs=1e-12)
    assert harmonics.plus_prime[EM, GP] == pytest.approx(response.rho_em_gp, abs=1e-12)
    assert np.trace(harmonics.minus_prime) == pytest.approx(0, abs=1e-12)


def test_resonant_degeneracy_rejected(bloch, fig2_params):
    # omega12 = delta - Delta + 2B' = 0
    with pytest.raises(ResonantDegeneracyError):
        bloch.sideband_response(fig2_params.replace(delta=-8.0))
    with pytest.raises(ResonantDegeneracyError):
        bloch.harmonics(fig2_params.replace(B=3.0, B_prime=3.0, Delta=0.0, delta=-6.0))


def test_density_matrix_defects(bloch, fig2_params):
    assert density_matrix_defects(bloch.steady_state_zeroth(fig2_params).matrix, 1e-10) == []

    bad = np.diag([0.7, 0.5, -0.1, 0.0]).astype(complex)
    bad[0, 1] = 0.2
    defects = density_matrix_defects(bad, 1e-10)
    assert len(defects) == 3
    assert defects[0].startswith("not Hermitian")
    assert "trace" in defects[1]
    assert "negative eigenvalue" in defects[2]
