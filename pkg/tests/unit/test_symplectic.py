"""
Unit tests for symplectic algebra: physicality, spectra, Williamson form and purification
"""

import pytest
import math

import numpy as np

from src.models import StdTwoModeState, StateClass, CaseTag
from src.core import NonPhysicalStateError, NotApplicableError
from src.core.symplectic import (
    omega, is_physical, is_entangled, invariants_of, determinant, symplectic_eigenvalues,
    generic_symplectic_spectrum, is_glems, classify, williamson, residuals, sign_variants,
    symplectic_inverse, symmetric_squeezing, purification
)
from tests.utils import StateGenerator

SQRT97 = math.sqrt(97)


@pytest.mark.unit
class TestOmega:
    """Test the symplectic form"""

    def test_single_mode(self):
        assert np.array_equal(omega(1), np.array([[0.0, 1.0], [-1.0, 0.0]]))

    def test_two_modes_is_direct_sum(self):
        om = omega(2)
        assert np.array_equal(om[:2, :2], omega(1))
        assert np.array_equal(om[2:, 2:], omega(1))
        assert not om[:2, 2:].any()

    @pytest.mark.parametrize("n_modes", [1, 2, 3, 5])
    def test_orthogonal(self, n_modes):
        om = omega(n_modes)
        assert np.array_equal(om @ om.T, np.eye(2 * n_modes))

    def test_rejects_zero_modes(self):
        with pytest.raises(ValueError):
            omega(0)


@pytest.mark.unit
class TestPhysicality:
    """Test physicality and entanglement tests"""

    def test_rho4_physical_on_boundary(self, rho4):
        """Test rho4 saturates the first physicality inequality"""
        a, b, kx, kp = rho4.as_tuple()
        lhs = (a * b - kx ** 2) * (a * b - kp ** 2) + 1
        rhs = a ** 2 + b ** 2 - 2 * kx * kp

        assert lhs == pytest.approx(rhs, abs=1e-12)
        assert is_physical(rho4)

    def test_violates_second_inequality(self):
        """Test a state breaking ab - kx^2 >= 1 is not physical"""
        assert not is_physical(StdTwoModeState(a=1.0, b=1.0, kx=0.5, kp=0.5))

    def test_case2a_physical(self, case2a_state):
        """Test the case-2a example is physical"""
        assert is_physical(case2a_state)

    def test_rho6_entangled(self, rho6_tilde):
        """Test rho6 is entangled"""
        assert is_entangled(rho6_tilde)

    def test_product_state_separable(self):
        """Test an uncorrelated state is separable"""
        assert not is_entangled(StdTwoModeState(a=2.0, b=2.0, kx=0.0, kp=0.0))

    def test_symmetric_squeezed_thermal_entangled(self, sym_sqth):
        """Test the symmetric squeezed thermal state is entangled"""
        assert is_entangled(sym_sqth)

    def test_entanglement_requires_physical(self):
        """Test the entanglement test rejects non-physical states"""
        with pytest.raises(NonPhysicalStateError):
            is_entangled(StdTwoModeState(a=1.0, b=1.0, kx=0.5, kp=0.5))


@pytest.mark.unit
class TestSpectrum:
    """Test symplectic eigenvalues and invariants"""

    def test_rho6_spectrum(self, rho6_tilde):
        """Test the symplectic spectrum of rho6"""
        nu1, nu2 = symplectic_eigenvalues(rho6_tilde)
        assert nu1 == pytest.approx(math.sqrt(6), abs=1e-12)
        assert nu2 == pytest.approx(1.0, abs=1e-12)

    def test_case2a_spectrum(self, case2a_state):
        """Test the symplectic spectrum of the case-2a example"""
        nu1, nu2 = symplectic_eigenvalues(case2a_state)
        assert nu1 == pytest.approx(math.sqrt(19 / 3), abs=1e-12)
        assert nu2 == pytest.approx(math.sqrt(4 / 3), abs=1e-12)

    def test_pure_spectrum(self, pure_tmsv):
        """Test pure states have unit symplectic eigenvalues"""
        assert symplectic_eigenvalues(pure_tmsv) == pytest.approx((1.0, 1.0), abs=1e-12)

    def test_non_physical_rejected(self):
        """Test the spectrum rejects non-physical states"""
        with pytest.raises(NonPhysicalStateError):
            symplectic_eigenvalues(StdTwoModeState(a=1.0, b=1.0, kx=0.5, kp=0.5))

    def test_agrees_with_eigensolver(self, rng):
        """Test the closed-form spectrum agrees with the eigensolver"""
        for s in StateGenerator.random_physical_states(rng, 200):
            nu1, nu2 = symplectic_eigenvalues(s)
            generic = generic_symplectic_spectrum(s.covariance_matrix())

            assert nu1 >= nu2 >= 1 - 1e-12
            assert generic == pytest.approx(np.array([nu1, nu2]), abs=1e-10)

    def test_spectrum_below_local_purity(self, rng):
        """Test the global spectrum lies below the local one"""
        for s in StateGenerator.random_physical_states(rng, 200):
            nu1, nu2 = symplectic_eigenvalues(s)
            assert math.sqrt(nu1 * nu2) < math.sqrt(s.a * s.b)

    def test_rho6_m_tilde(self, rho6_tilde):
        """Test the invariant M-tilde of rho6"""
        inv = invariants_of(rho6_tilde)
        assert inv.m_tilde == pytest.approx((3 - SQRT97) / (4 * math.sqrt(2)), abs=1e-12)

    def test_symmetric_squeezed_thermal_degenerate(self, sym_sqth):
        """Test all off-diagonal invariants vanish for symmetric squeezed thermal states"""
        inv = invariants_of(sym_sqth)
        assert inv.m == 0.0
        assert inv.m_tilde == 0.0
        assert inv.d == 0.0

    def test_case2a_m_tilde_vanishes(self, case2a_state):
        """Test M-tilde vanishes on the case-2a condition"""
        assert invariants_of(case2a_state).m_tilde == pytest.approx(0.0, abs=1e-15)

    def test_discriminant_identity(self, rng):
        """Test D equals Delta^2 - 4 det on random states"""
        for s in StateGenerator.random_physical_states(rng, 200):
            inv = invariants_of(s)
            assert inv.d == pytest.approx(inv.delta ** 2 - 4 * determinant(s), abs=1e-10 * inv.delta ** 2)


@pytest.mark.unit
class TestClassify:
    """Test state classification"""

    @pytest.mark.parametrize("entry_id,expected", [
        ("rho4", StateClass.GLEMS4),
        ("rho5", StateClass.GLEMS5),
        ("rho6_tilde", StateClass.GLEMS6),
        ("case2a", StateClass.GENERIC),
        ("sym_sqth_sqrt6", StateClass.SYM_SQTH),
        ("pure_tmsv", StateClass.PURE),
        ("sym_glems", StateClass.SYM_GLEMS),
        ("asym_sqth_glems", StateClass.ASYM_SQTH_GLEMS),
    ])
    def test_catalog_classes(self, entry_id, expected):
        """Test the class of each catalog state"""
        from src.core import get_entry
        assert classify(get_entry(entry_id).state) is expected

    def test_glems7_from_mirrored_rho6(self, rho6_tilde):
        """Test mirroring rho6 gives a class-7 GLEMS"""
        assert classify(rho6_tilde.swapped()) is StateClass.GLEMS7

    def test_is_glems(self, rho6_tilde, case2a_state):
        """Test the GLEMS predicate"""
        assert is_glems(rho6_tilde)
        assert not is_glems(case2a_state)


@pytest.mark.unit
class TestWilliamson:
    """Test the closed-form Williamson decomposition"""

    def _assert_normal_form(self, s, dec, tol=1e-10):
        symplectic_residual, normal_residual = residuals(s, dec)
        assert symplectic_residual < tol
        assert normal_residual < tol

    @pytest.mark.parametrize("state,case_tag", [
        ((2.0, 2.0, 1.6, 0.5), CaseTag.SYM),
        ((2 * math.sqrt(2), math.sqrt(2), math.sqrt(2), 1 / math.sqrt(2)), CaseTag.CASE_2A),
        ((2 * math.sqrt(2), math.sqrt(2), (SQRT97 + 1) / 8, (SQRT97 - 1) / 8), CaseTag.CASE_2B),
        ((math.sqrt(2), 2 * math.sqrt(2), math.sqrt(2), 1 / math.sqrt(2)), CaseTag.CASE_3A),
        ((math.sqrt(2), 2 * math.sqrt(2), (SQRT97 + 1) / 8, (SQRT97 - 1) / 8), CaseTag.CASE_3B),
    ])
    def test_case_dispatch(self, state, case_tag):
        """Test each Williamson case is dispatched and reaches the normal form"""
        s = StdTwoModeState(*state)
        dec = williamson(s)

        assert dec.case_tag is case_tag
        self._assert_normal_form(s, dec)

    def test_rho4_normal_form(self, rho4):
        """Test the normal form of rho4"""
        dec = williamson(rho4)
        normal = dec.s_matrix @ rho4.covariance_matrix() @ dec.s_matrix.T

        assert normal == pytest.approx(np.diag([math.sqrt(7)] * 2 + [1.0] * 2), abs=1e-12)

    def test_case2a_entries(self, case2a_state):
        """Test the case-2a example reaches the normal form"""
        dec = williamson(case2a_state)
        assert dec.case_tag is CaseTag.CASE_2A
        self._assert_normal_form(case2a_state, dec)

    def test_symmetric_squeezing_factors(self):
        """Test the symmetric squeezing factors"""
        z_a, z_b = symmetric_squeezing(2.0, 1.6, 0.5)
        assert z_a == pytest.approx(2.4 ** 0.25)
        assert z_b == pytest.approx(6.25 ** 0.25)

    def test_symmetric_beam_splitter_structure(self, sym_glems):
        """Test the symmetric S is a squeezed beam splitter"""
        dec = williamson(sym_glems)
        z_a, z_b = symmetric_squeezing(sym_glems.a, sym_glems.kx, sym_glems.kp)
        x1, x2, x3, x4, x5, x6, x7, x8 = dec.x

        assert x1 == pytest.approx(1 / (z_a * math.sqrt(2)))
        assert x2 == pytest.approx(x1)
        assert x6 == pytest.approx(-x5)
        assert x8 == pytest.approx(-x7)

    def test_canonical_signs(self, rng):
        """Test the canonical sign choice for a > b"""
        for s in StateGenerator.random_physical_states(rng, 100):
            if s.a < s.b:
                continue
            x = williamson(s).x
            assert x[3] > 0
            assert x[7] > 0

    def test_sign_variants(self, rho6_tilde):
        """Test all four sign variants reach the normal form"""
        dec = williamson(rho6_tilde)
        variants = sign_variants(dec)

        assert len(variants) == 4
        assert np.array_equal(variants[0].s_matrix, dec.s_matrix)
        for variant in variants:
            self._assert_normal_form(rho6_tilde, variant)

    def test_random_states(self, rng):
        """Test random states reach the normal form with every sign variant"""
        for s in StateGenerator.random_physical_states(rng, 500):
            dec = williamson(s)
            for variant in sign_variants(dec):
                self._assert_normal_form(s, variant)

    @pytest.mark.parametrize("mirror", [False, True])
    def test_case2a_collar_residuals(self, mirror):
        """Test states inside the 2a/3a tolerance collar keep their tag and still reach 1e-10"""
        s = StdTwoModeState(
            a=4.974307136785661, b=1.1573349262866617, kx=0.5345779113103298, kp=0.12437625435664715
        )
        if mirror:
            s = s.swapped()
        dec = williamson(s)

        assert dec.case_tag is (CaseTag.CASE_3A if mirror else CaseTag.CASE_2A)
        self._assert_normal_form(s, dec)
        assert (dec.nu1, dec.nu2) == pytest.approx(symplectic_eigenvalues(s), abs=1e-10)

    def test_non_standard_rejected(self):
        """Test kp = 0 is rejected"""
        with pytest.raises(NotApplicableError):
            williamson(StdTwoModeState(a=2.0, b=2.0, kx=0.5, kp=0.0))

    def test_non_physical_rejected(self):
        """Test the decomposition rejects non-physical states"""
        with pytest.raises(NonPhysicalStateError):
            williamson(StdTwoModeState(a=1.0, b=1.0, kx=0.5, kp=0.5))

    def test_symplectic_inverse(self, rho6_tilde):
        """Test the symplectic inverse of S"""
        s_matrix = williamson(rho6_tilde).s_matrix
        assert symplectic_inverse(s_matrix) @ s_matrix == pytest.approx(np.eye(4), abs=1e-12)


@pytest.mark.unit
class TestPurification:
    """Test the purification construction"""

    def _assert_pure(self, p):
        spectrum = generic_symplectic_spectrum(p.assembled())
        assert spectrum == pytest.approx(np.ones(len(spectrum)), abs=1e-9)

    def test_pure_state_rank_zero(self, pure_tmsv):
        """Test pure states need no purifying modes"""
        p = purification(pure_tmsv)

        assert p.rank == 0
        assert p.gamma_abe.shape == (4, 0)
        assert np.array_equal(p.assembled(), pure_tmsv.covariance_matrix())

    def test_rho6_single_mode_purification(self, rho6_tilde):
        """Test the single-mode purification of rho6"""
        dec = williamson(rho6_tilde)
        p = purification(rho6_tilde, dec)

        assert p.rank == 1
        assert p.gamma_e == pytest.approx(math.sqrt(6) * np.eye(2), abs=1e-12)
        top = dec.s_matrix @ p.gamma_abe
        assert top[:2] == pytest.approx(math.sqrt(5) * np.diag([1.0, -1.0]), abs=1e-12)
        assert top[2:] == pytest.approx(np.zeros((2, 2)), abs=1e-12)
        self._assert_pure(p)

    def test_two_mode_purification(self, case2a_state):
        """Test non-GLEMS states get a two-mode purification"""
        p = purification(case2a_state)

        assert p.rank == 2
        assert p.gamma_abe.shape == (4, 4)
        self._assert_pure(p)

    def test_marginal_is_exact(self, rng):
        """Test the purification keeps the original CM as its AB block"""
        for s in StateGenerator.random_physical_states(rng, 50):
            p = purification(s)
            assert np.array_equal(p.assembled()[:4, :4], s.covariance_matrix())

    def test_random_glems_are_pure(self, rng):
        """Test GLEMS purifications are pure"""
        for _ in range(50):
            p = purification(StateGenerator.random_glems(rng))
            assert p.rank == 1
            self._assert_pure(p)
