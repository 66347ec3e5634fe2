import dataclasses

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dirac_disquant.algebra import (
    Bilinears,
    SpinorParams,
    bilinears_closed_form,
    bilinears_matrix,
    build_gamma_basis,
    n_from_xi,
    random_spinor_params,
    spin_from_xi,
    spinor_from_params,
    spinor_rotor_matrices,
    xi_from_bilinears,
)
from dirac_disquant.errors import (
    DomainError,
    LightlikeFluxError,
    NumericConsistencyError,
)
from dirac_disquant.minkowski import mdot

from conftest import expm_taylor, unit3


class TestGammaBasis:
    def test_anticommutation(self, basis_z):
        g = basis_z
        eye = np.eye(4)
        for k in range(4):
            for l in range(4):
                resid = np.abs(g.gamma[l] @ g.gamma[k] + g.gamma[k] @ g.gamma[l]
                               - 2 * g.metric[k, l] * eye).max()
                assert resid < 1e-12

    def test_pauli_relation(self, basis_z):
        g = basis_z
        eye = np.eye(4)
        cyclic = {(0, 1): 2, (1, 2): 0, (2, 0): 1}
        for a in range(3):
            assert np.abs(g.sigma[a] @ g.sigma[a] - eye).max() < 1e-12
        for (a, b), c in cyclic.items():
            assert np.abs(g.sigma[a] @ g.sigma[b] - 1j * g.sigma[c]).max() < 1e-12
            assert np.abs(g.sigma[b] @ g.sigma[a] + 1j * g.sigma[c]).max() < 1e-12

    def test_gamma5_relations(self, basis_z):
        g = basis_z
        assert np.abs(g.gamma5 @ g.gamma5 + np.eye(4)).max() < 1e-12
        for a in range(3):
            assert np.abs(g.gamma5 @ g.sigma[a] - g.sigma[a] @ g.gamma5).max() < 1e-12
            assert np.abs(g.gamma[0] @ g.gamma[a + 1]
                          + 1j * g.gamma5 @ g.sigma[a]).max() < 1e-12
        assert np.abs(g.gamma[0] @ g.gamma5 + g.gamma5 @ g.gamma[0]).max() < 1e-12

    def test_hermiticity(self, basis_z):
        g = basis_z
        assert np.abs(g.gamma[0].conj().T - g.gamma[0]).max() < 1e-12
        for a in (1, 2, 3):
            assert np.abs(g.gamma[a].conj().T + g.gamma[a]).max() < 1e-12

    def test_proper_representation_projector(self, basis_z):
        assert np.abs(basis_z.pi_projector - np.diag([1.0, 0, 0, 0])).max() < 1e-14

    @pytest.mark.parametrize("seed", range(6))
    def test_projector_invariants_random_z(self, seed):
        z = unit3(np.random.default_rng(seed))
        g = build_gamma_basis(z)
        pi = g.pi_projector
        assert np.abs(pi @ pi - pi).max() < 1e-14
        assert np.abs(g.gamma[0] @ pi - pi).max() < 1e-14
        assert np.abs(g.sigma_dot(z) @ pi - pi).max() < 1e-14
        assert np.abs(pi @ g.gamma5 @ pi).max() < 1e-14
        for a in range(3):
            assert np.abs(pi @ g.sigma[a] @ pi - z[a] * pi).max() < 1e-14
        assert abs(np.trace(pi) - 1.0) < 1e-14

    def test_non_unit_z_rejected(self):
        with pytest.raises(DomainError):
            build_gamma_basis((0.0, 0.0, 2.0))


class TestSpinor:
    def test_identity_exponentials(self, basis_z):
        p = SpinorParams(1.0, 0.0, 0.0, np.zeros(3), (0, 0, 1), (0, 0, 1))
        b = bilinears_matrix(spinor_from_params(p, basis_z), basis_z)
        assert abs(b.scalar - 1.0) < 1e-14
        assert np.abs(b.j - [1, 0, 0, 0]).max() < 1e-14

    def test_scalar_closed_form(self, basis_z):
        for kappa in (0.0, 0.4, -1.2, np.pi / 2):
            p = SpinorParams(2.0, kappa, 0.1, np.zeros(3), (0, 1, 0), (0, 0, 1))
            b = bilinears_matrix(spinor_from_params(p, basis_z), basis_z)
            assert abs(b.scalar - 4.0 * np.cos(kappa)) < 1e-12

    @pytest.mark.parametrize("seed", range(12))
    def test_against_taylor_series_oracle(self, seed):
        rng = np.random.default_rng(seed)
        p = random_spinor_params(rng)
        g = build_gamma_basis(p.z)
        closed = spinor_from_params(p, g).components

        eye = np.eye(4, dtype=complex)
        arg1 = 1j * p.phi * eye + 0.5 * p.kappa * g.gamma5
        arg2 = -0.5j * g.gamma5 @ g.sigma_dot(p.eta)
        arg3 = 0.5j * np.pi * g.sigma_dot(p.n)
        oracle = (p.amplitude
                  * expm_taylor(arg1) @ expm_taylor(arg2) @ expm_taylor(arg3)
                  @ g.pi_column)
        assert np.abs(closed - oracle).max() < 1e-10

    def test_matrix_reconstruction_is_projector_multiple(self, basis_z):
        p = SpinorParams(1.3, 0.2, -0.5, (0.4, 0.1, -0.2), (0, 0, 1), (0, 0, 1))
        s = spinor_from_params(p, basis_z)
        m = s.matrix(basis_z)
        # psi = M Pi: right-multiplying by Pi changes nothing.
        assert np.abs(m @ basis_z.pi_projector - m).max() < 1e-12


class TestBilinears:
    def test_rest_frame(self, basis_z):
        p = SpinorParams(1.0, 0.0, 0.0, np.zeros(3), (0, 0, 1), (0, 0, 1))
        b = bilinears_matrix(spinor_from_params(p, basis_z), basis_z)
        assert np.abs(b.j - [1, 0, 0, 0]).max() < 1e-14
        assert abs(b.S[0]) < 1e-14

    def test_pure_boost_flux(self, basis_z):
        eta = 1.3
        p = SpinorParams(1.0, 0.0, 0.0, (eta, 0, 0), (0, 0, 1), (0, 0, 1))
        b = bilinears_matrix(spinor_from_params(p, basis_z), basis_z)
        assert np.abs(b.j - [np.cosh(eta), np.sinh(eta), 0, 0]).max() < 1e-12

    def test_boost_along_spin(self, basis_z):
        p = SpinorParams(1.0, 0.0, 0.0, (0, 0, 2.0), (0, 0, 1), (0, 0, 1))
        b = bilinears_closed_form(p)
        assert abs(b.S[0] - np.sinh(2.0)) < 1e-12
        assert abs(b.S[3] - np.cosh(2.0)) < 1e-12

    def test_closed_form_eta_zero_limit(self):
        p = SpinorParams(1.0, 0.0, 0.0, np.zeros(3), (0, 1, 0), (0, 0, 1))
        b = bilinears_closed_form(p)
        assert np.abs(b.j - [1, 0, 0, 0]).max() == 0.0
        assert np.abs(b.S[1:] - p.xi).max() == 0.0

    @pytest.mark.parametrize("seed", range(40))
    def test_matrix_equals_closed_form(self, seed):
        p = random_spinor_params(np.random.default_rng(seed))
        g = build_gamma_basis(p.z)
        bm = bilinears_matrix(spinor_from_params(p, g), g)
        bc = bilinears_closed_form(p)
        scale = max(np.abs(bc.j).max(), np.abs(bc.S).max())
        assert np.abs(bm.j - bc.j).max() / scale < 1e-10
        assert np.abs(bm.S - bc.S).max() / scale < 1e-10
        assert abs(bm.scalar - bc.scalar) / scale < 1e-10
        assert abs(bm.rho - p.amplitude ** 2) / p.amplitude ** 2 < 1e-12

    @given(st.integers(min_value=0, max_value=10 ** 6))
    @settings(max_examples=60, deadline=None)
    def test_flux_spin_identities_property(self, seed):
        p = random_spinor_params(np.random.default_rng(seed))
        g = build_gamma_basis(p.z)
        b = bilinears_matrix(spinor_from_params(p, g), g)
        a4 = p.amplitude ** 4
        assert abs(mdot(b.S, b.S) + mdot(b.j, b.j)) < 1e-10 * a4
        assert abs(mdot(b.j, b.S)) < 1e-10 * a4

    def test_flux_timelike_future(self):
        for seed in range(20):
            p = random_spinor_params(np.random.default_rng(seed))
            b = bilinears_closed_form(p)
            assert b.j[0] >= b.rho > 0

    def test_consistency_guard_fires_on_broken_basis(self, basis_z):
        # A deliberately non-Hermitian gamma^0 leaks imaginary parts.
        bad = dataclasses.replace(
            basis_z, gamma=np.array([basis_z.gamma[0] + 0.1j * np.eye(4),
                                     *basis_z.gamma[1:]]))
        p = SpinorParams(1.0, 0.3, 0.2, (0.5, 0, 0), (0, 0, 1), (0, 0, 1))
        s = spinor_from_params(p, basis_z)
        with pytest.raises(NumericConsistencyError):
            bilinears_matrix(s, bad)


class TestXiMaps:
    def test_rest_frame_extraction(self):
        b = Bilinears(scalar=1.0, j=np.array([1.0, 0, 0, 0]),
                      S=np.array([0.0, 0, 0, 1]), rho=1.0)
        assert np.abs(xi_from_bilinears(b) - [0, 0, 1]).max() < 1e-14

    @pytest.mark.parametrize("seed", range(25))
    def test_roundtrip_through_spin(self, seed):
        rng = np.random.default_rng(seed)
        p = random_spinor_params(rng)
        b = bilinears_closed_form(p)
        xi = xi_from_bilinears(b)
        assert abs(np.linalg.norm(xi) - 1.0) < 1e-10
        assert np.abs(xi - p.xi).max() < 1e-10
        s_back = spin_from_xi(xi, b.j, b.rho)
        assert np.abs(s_back - b.S).max() / np.abs(b.S).max() < 1e-12

    def test_lightlike_flux_rejected(self):
        b = Bilinears(scalar=0.0, j=np.array([1.0, 1.0, 0, 0]),
                      S=np.zeros(4), rho=0.0)
        with pytest.raises(LightlikeFluxError):
            xi_from_bilinears(b)

    @pytest.mark.parametrize("seed", range(25))
    def test_n_inversion(self, seed):
        rng = np.random.default_rng(seed)
        z = unit3(rng)
        xi = unit3(rng)
        if 1.0 + np.dot(xi, z) < 1e-6:
            xi = -xi
        n = n_from_xi(xi, z)
        assert abs(np.linalg.norm(n) - 1.0) < 1e-12
        assert np.abs(2 * n * np.dot(n, z) - z - xi).max() < 1e-10

    def test_n_inversion_antipodal_rejected(self):
        with pytest.raises(DomainError):
            n_from_xi(np.array([0.0, 0, -1]), np.array([0.0, 0, 1]))
