"""Dense-matrix oracle: algebraic identities and parameter-space equivalence."""

import numpy as np
import pytest

from rotinv import dense
from rotinv.maps import breuer_map, partial_time_reversal, pi_project, PureProductState
from rotinv.states import (
    AlphaVector,
    BetaVector,
    SpinPair,
    alpha_to_beta,
    beta_to_alpha,
    build_l_matrix,
    maximally_mixed,
)

SMALL = [SpinPair(2, 2), SpinPair(4, 4), SpinPair(4, 6), SpinPair(6, 6), SpinPair(6, 8)]


def random_state(system, rng):
    raw = rng.random(system.n1) + 1e-3
    return AlphaVector(system, raw / (system.norm_weights() @ raw))


class TestCoupledBasis:
    def test_unitarity(self):
        for system in SMALL:
            u = dense.coupled_basis(system)
            assert np.abs(u @ u.T - np.eye(system.dim)).max() < 1e-12

    def test_stretched_column_is_product_state(self):
        for system in (SpinPair(4, 6), SpinPair(6, 6)):
            u = dense.coupled_basis(system)
            # first column of the last J block: |Jmax, Jmax> = |j1 j1>|j2 j2> = e_0
            col = system.dim - (system.j1.twice + system.j2.twice + 1)
            vec = u[:, col]
            expected = np.zeros(system.dim)
            expected[0] = 1.0
            assert np.abs(vec - expected).max() < 1e-12

    def test_two_qubit_singlet(self):
        u = dense.coupled_basis(SpinPair(2, 2))
        singlet = u[:, 0]  # J = 0 block comes first
        expected = np.array([0.0, 1.0, -1.0, 0.0]) / np.sqrt(2)
        assert min(
            np.abs(singlet - expected).max(), np.abs(singlet + expected).max()
        ) < 1e-12


class TestProjectors:
    def test_idempotent_hermitian_trace(self):
        system = SpinPair(4, 6)
        total = np.zeros((system.dim, system.dim))
        for j in system.j_values():
            p = dense.projector(system, j)
            assert np.abs(p @ p - p).max() < 1e-12
            assert np.abs(p - p.T).max() < 1e-14
            assert abs(np.trace(p) - (j.twice + 1)) < 1e-12
            total = total + p
        assert np.abs(total - np.eye(system.dim)).max() < 1e-12

    def test_invalid_j_rejected(self):
        with pytest.raises(ValueError):
            dense.projector(SpinPair(4, 6), 0)


class TestTensorOperators:
    def test_q0_is_scaled_identity(self):
        for system in (SpinPair(4, 4), SpinPair(6, 8)):
            q0 = dense.invariant_q(system, 0)
            assert np.abs(q0 - np.eye(system.dim) / np.sqrt(system.dim)).max() < 1e-14

    def test_traceless_and_hermitian(self):
        system = SpinPair(6, 8)
        for k in range(1, 6):
            q = dense.invariant_q(system, k)
            assert abs(np.trace(q)) < 1e-12
            assert np.abs(q - q.conj().T).max() < 1e-12

    def test_orthogonality_normalization(self):
        # Tr(Q_K Q_K') = (2K+1) delta
        system = SpinPair(4, 6)
        for k in range(4):
            for kp in range(4):
                val = np.trace(dense.invariant_q(system, k) @ dense.invariant_q(system, kp))
                expected = (2 * k + 1) if k == kp else 0.0
                assert abs(val - expected) < 1e-12

    def test_rotation_invariance(self):
        system = SpinPair(4, 6)
        for axis in (0, 1, 2):
            r = dense.product_rotation(system, axis, 0.7)
            for k in range(4):
                q = dense.invariant_q(system, k)
                assert np.abs(r @ q - q @ r).max() < 1e-9

    def test_theta1_sign_rule(self):
        # theta_1(Q_K) = (-1)**K Q_K via dense V conjugation
        system = SpinPair(6, 8)
        for k in range(6):
            q = dense.invariant_q(system, k).astype(complex)
            image = dense.theta1(q, system)
            assert np.abs(image - (-1) ** k * q).max() < 1e-12

    def test_invalid_k_rejected(self):
        with pytest.raises(ValueError):
            dense.invariant_q(SpinPair(4, 4), 4)


class TestAssembleExtract:
    def test_round_trip(self):
        rng = np.random.default_rng(3)
        for system in (SpinPair(4, 6), SpinPair(6, 8)):
            beta = alpha_to_beta(random_state(system, rng))
            back = dense.extract_beta(dense.from_beta(beta), system)
            assert np.abs(back.as_array() - beta.as_array()).max() < 1e-10

    def test_maximally_mixed(self):
        system = SpinPair(4, 4)
        rho = np.eye(16, dtype=complex) / 16
        beta = dense.extract_beta(rho, system)
        assert np.abs(beta.as_array() - np.array([1, 0, 0, 0])).max() < 1e-12

    def test_extraction_equals_l_alpha(self):
        rng = np.random.default_rng(4)
        for system in SMALL:
            l = build_l_matrix(system).values
            alpha = random_state(system, rng)
            beta = dense.extract_beta(dense.from_alpha(alpha), system)
            assert np.abs(beta.as_array() - l @ alpha.as_array()).max() < 1e-10

    def test_non_invariant_input_reported(self):
        system = SpinPair(4, 4)
        rho = np.zeros((16, 16), dtype=complex)
        rho[0, 0] = 0.5
        rho[1, 1] = 0.5
        rho[0, 1] = rho[1, 0] = 0.25
        with pytest.raises(dense.NonInvariantError) as err:
            dense.extract_beta(rho, system)
        assert isinstance(err.value.projected_beta, BetaVector)


class TestTimeReversal:
    def test_v_is_pi_rotation_about_y(self):
        for n in (2, 3, 4, 7):
            v = dense.time_reversal(n)
            assert np.abs(v @ v.T - np.eye(n)).max() < 1e-14
            jy = dense.spin_operators(n)[1]
            vals, vecs = np.linalg.eigh(jy)
            expected = (vecs * np.exp(-1j * np.pi * vals)) @ vecs.conj().T
            assert np.abs(expected - v).max() < 1e-12

    def test_theta1_spectrum_equals_partial_transpose(self):
        rng = np.random.default_rng(9)
        for system in (SpinPair(4, 6), SpinPair(6, 6)):
            rho = dense.from_alpha(random_state(system, rng))
            s1 = dense.spectrum(dense.theta1(rho, system))
            s2 = dense.spectrum(dense.partial_transpose_1(rho, system))
            assert np.abs(s1 - s2).max() < 1e-10

    def test_theta1_matches_parameter_space(self):
        rng = np.random.default_rng(10)
        system = SpinPair(6, 8)
        beta = alpha_to_beta(random_state(system, rng))
        rho = dense.from_beta(beta)
        image = dense.extract_beta(dense.theta1(rho, system), system)
        expected = partial_time_reversal(beta)
        assert np.abs(image.as_array() - expected.as_array()).max() < 1e-10


class TestBreuerDense:
    def test_identity_image_spectrum(self):
        for system in (SpinPair(4, 4), SpinPair(6, 9)):
            rho = np.eye(system.dim, dtype=complex) / system.dim
            image = dense.breuer_phi1(rho, system)
            vals = dense.spectrum(image)
            expected = (system.n1 - 2) / system.dim
            assert np.abs(vals - expected).max() < 1e-12

    def test_invariant_input_simplified_form(self):
        # for theta_1-invariant rho: Phi_1(rho) = 1/n2 - 2 rho
        rng = np.random.default_rng(12)
        system = SpinPair(6, 8)
        beta = alpha_to_beta(random_state(system, rng))
        from rotinv.maps import symmetrize

        inv = dense.from_beta(symmetrize(beta))
        image = dense.breuer_phi1(inv, system)
        expected = np.eye(system.dim) / system.n2 - 2 * inv
        assert np.abs(image - expected).max() < 1e-12

    def test_min_eigenvalue_sign_agrees_with_parameter_space(self):
        rng = np.random.default_rng(13)
        for system in (SpinPair(4, 6), SpinPair(6, 8)):
            for _ in range(10):
                beta = alpha_to_beta(random_state(system, rng))
                rho = dense.from_beta(beta)
                min_eig, residual = dense.min_eigenvalue(dense.breuer_phi1(rho, system))
                assert residual < 1e-12
                min_alpha = min(beta_to_alpha(breuer_map(beta)).coords)
                assert (min_eig < -1e-10) == (min_alpha < -1e-10)


class TestTwirl:
    def test_identity_on_invariant_states(self):
        rng = np.random.default_rng(14)
        system = SpinPair(4, 6)
        alpha = random_state(system, rng)
        twirled = dense.twirl_alpha(dense.from_alpha(alpha), system)
        assert np.abs(twirled.as_array() - alpha.as_array()).max() < 1e-12

    def test_matches_pi_project_on_products(self):
        rng = np.random.default_rng(15)
        system = SpinPair(4, 6)
        for _ in range(5):
            a1 = rng.normal(size=4) + 1j * rng.normal(size=4)
            a2 = rng.normal(size=6) + 1j * rng.normal(size=6)
            a1, a2 = a1 / np.linalg.norm(a1), a2 / np.linalg.norm(a2)
            prod = PureProductState(system, tuple(a1), tuple(a2))
            vec = np.kron(a1, a2)
            rho = np.outer(vec, vec.conj())
            alpha = dense.twirl_alpha(rho, system)
            beta = alpha_to_beta(alpha)
            assert np.abs(beta.as_array() - pi_project(prod).as_array()).max() < 1e-10

    def test_point_e_from_dense_twirl(self):
        from rotinv import geometry

        system = SpinPair(4, 6)
        prod = PureProductState.basis_state(system, -0.5, 2.5)
        vec = np.kron(np.array(prod.amps1), np.array(prod.amps2))
        rho = np.outer(vec, vec.conj())
        beta = alpha_to_beta(dense.twirl_alpha(rho, system))
        expected = geometry.named_points_4xn(6)["E"].beta
        assert np.abs(beta.as_array() - expected.as_array()).max() < 1e-12
