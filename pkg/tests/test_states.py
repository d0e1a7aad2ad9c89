import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phaseclone.linalg import DimensionError, Ket
from phaseclone.states import (
    MubLabel,
    PhaseVector,
    UnsupportedDimensionError,
    gram_residual,
    is_prime,
    is_unbiased,
    mub_basis,
    mub_state,
    phase_state,
    random_phase_vector,
    standard_basis,
    symmetric_pair,
    unbiasedness_residual,
)

MUB_DIMS = (3, 5, 7, 11, 13)


class TestPhaseState:
    def test_all_zero_phases(self):
        psi = phase_state(PhaseVector(2, (0.0, 0.0)))
        np.testing.assert_allclose(psi.amps, np.array([1, 1]) / math.sqrt(2), atol=1e-15)

    def test_pi_phase_gives_real_minus(self):
        psi = phase_state(PhaseVector(2, (0.0, math.pi)))
        np.testing.assert_allclose(psi.amps, np.array([1, -1]) / math.sqrt(2), atol=1e-15)

    def test_quarter_turns_d4(self):
        psi = phase_state(PhaseVector(4, (0.0, math.pi / 2, math.pi, 3 * math.pi / 2)))
        np.testing.assert_allclose(psi.amps, np.array([1, 1j, -1, -1j]) / 2, atol=1e-15)

    @given(st.integers(2, 16), st.integers(0, 10_000))
    @settings(max_examples=100, deadline=None)
    def test_amplitude_moduli_all_equal(self, d, seed):
        psi = phase_state(random_phase_vector(d, seed))
        assert np.abs(np.abs(psi.amps) - 1.0 / math.sqrt(d)).max() < 1e-15
        # phases[0] = 0 pins the first amplitude on the positive real axis
        assert psi.amps[0] == 1.0 / math.sqrt(d)

    def test_phase_vector_validation(self):
        with pytest.raises(ValueError):
            PhaseVector(2, (0.1, 0.0))  # first phase not zero
        with pytest.raises(ValueError):
            PhaseVector(2, (0.0, 2 * math.pi))  # outside [0, 2*pi)
        with pytest.raises(ValueError):
            PhaseVector(3, (0.0, 1.0))  # wrong length
        with pytest.raises(ValueError):
            PhaseVector(1, (0.0,))


class TestRandomPhaseVector:
    def test_deterministic_for_fixed_seed(self):
        assert random_phase_vector(3, 42) == random_phase_vector(3, 42)

    def test_distinct_seeds_differ(self):
        assert random_phase_vector(3, 0) != random_phase_vector(3, 1)

    def test_first_phase_always_zero(self):
        for seed in range(50):
            assert random_phase_vector(5, seed).phases[0] == 0.0

    def test_rejects_small_dimension(self):
        with pytest.raises(ValueError):
            random_phase_vector(1, 0)

    def test_mean_matches_uniform_distribution(self):
        # mean of U[0, 2*pi) is pi; 10^5 draws put 3 sigma at ~0.017
        n = 100_000
        total = 0.0
        for seed in range(n):
            total += random_phase_vector(2, seed).phases[1]
        sigma_mean = (2 * math.pi / math.sqrt(12.0)) / math.sqrt(n)
        assert abs(total / n - math.pi) < 3 * sigma_mean


class TestSymmetricPair:
    def test_equal_indices_give_product_state(self):
        psi = symmetric_pair(2, 0, 0)
        np.testing.assert_array_equal(psi.amps, np.array([1, 0, 0, 0], dtype=complex))

    def test_distinct_indices_give_symmetric_superposition(self):
        psi = symmetric_pair(2, 0, 1)
        expected = np.array([0, 1, 1, 0]) / math.sqrt(2)
        np.testing.assert_allclose(psi.amps, expected, atol=1e-15)

    def test_symmetric_in_arguments(self):
        np.testing.assert_array_equal(symmetric_pair(3, 2, 1).amps, symmetric_pair(3, 1, 2).amps)

    def test_swap_of_factors_is_exact_identity(self):
        for d in (2, 3, 5):
            for j in range(d):
                for l in range(d):
                    amps = symmetric_pair(d, j, l).amps
                    swapped = amps.reshape(d, d).T.reshape(-1)
                    np.testing.assert_array_equal(amps, swapped)

    def test_normalized(self):
        for j, l in [(0, 0), (0, 2), (3, 1)]:
            symmetric_pair(4, j, l).require_normalized()

    def test_index_out_of_range(self):
        with pytest.raises(DimensionError):
            symmetric_pair(2, 0, 2)


class TestMubConstruction:
    def test_first_basis_first_state_is_uniform(self):
        psi = mub_state(MubLabel(3, 0, 0))
        np.testing.assert_allclose(psi.amps, np.ones(3) / math.sqrt(3), atol=1e-15)

    def test_first_basis_second_state(self):
        # exponents t*(d-j) mod 3 for t=1: (0, 2, 1)
        w = np.exp(2j * math.pi / 3)
        psi = mub_state(MubLabel(3, 0, 1))
        np.testing.assert_allclose(psi.amps, np.array([1, w**2, w]) / math.sqrt(3), atol=1e-15)

    def test_cross_basis_overlaps_d3(self):
        b0, b1 = mub_basis(3, 0), mub_basis(3, 1)
        for a in b0:
            for b in b1:
                assert abs(np.vdot(a.amps, b.amps)) ** 2 == pytest.approx(1 / 3, abs=1e-12)

    def test_bases_orthonormal(self):
        for d in (3, 5, 7):
            for l in range(d):
                assert gram_residual(mub_basis(d, l)) < 1e-12

    def test_unbiased_against_standard_basis(self):
        for l in range(3):
            for psi in mub_basis(3, l):
                np.testing.assert_allclose(np.abs(psi.amps) ** 2, np.full(3, 1 / 3), atol=1e-15)

    def test_every_mub_state_is_a_phase_state(self):
        # constant amplitude modulus is what makes them optimally cloneable
        for d in MUB_DIMS:
            for l in range(d):
                for psi in mub_basis(d, l):
                    assert np.abs(np.abs(psi.amps) - 1 / math.sqrt(d)).max() < 1e-15

    def test_full_prime_family_pairwise_unbiased(self):
        for d in MUB_DIMS:
            bases = [mub_basis(d, l) for l in range(d)] + [standard_basis(d)]
            for i in range(len(bases)):
                for k in range(i + 1, len(bases)):
                    assert unbiasedness_residual(bases[i], bases[k]) < 1e-10

    def test_rejects_two_level_systems(self):
        with pytest.raises(UnsupportedDimensionError):
            mub_basis(2, 0)

    @pytest.mark.parametrize("d", [4, 6, 9, 15])
    def test_rejects_non_primes(self, d):
        with pytest.raises(UnsupportedDimensionError):
            mub_state(MubLabel(d, 0, 0))

    def test_label_range_validation(self):
        with pytest.raises(ValueError):
            MubLabel(3, 3, 0)
        with pytest.raises(ValueError):
            MubLabel(3, 0, -1)


class TestStandardBasisAndUnbiasedness:
    def test_standard_basis(self):
        basis = standard_basis(3)
        assert len(basis) == 3
        for j, psi in enumerate(basis):
            expected = np.zeros(3)
            expected[j] = 1.0
            np.testing.assert_array_equal(psi.amps, expected)

    def test_textbook_qubit_pair(self):
        plus = Ket((2,), np.array([1, 1]) / math.sqrt(2))
        minus = Ket((2,), np.array([1, -1]) / math.sqrt(2))
        assert is_unbiased(standard_basis(2), [plus, minus])

    def test_basis_not_unbiased_with_itself(self):
        assert not is_unbiased(standard_basis(2), standard_basis(2))

    def test_d5_family_all_pairs(self):
        bases = [mub_basis(5, l) for l in range(5)] + [standard_basis(5)]
        for i in range(len(bases)):
            for k in range(i + 1, len(bases)):
                assert is_unbiased(bases[i], bases[k], tol=1e-10)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            is_unbiased(standard_basis(2), standard_basis(3))

    def test_empty_basis_rejected(self):
        with pytest.raises(ValueError):
            is_unbiased([], standard_basis(2))


@pytest.mark.parametrize(
    "n,expected",
    [(1, False), (2, True), (3, True), (4, False), (13, True), (49, False), (61, True)],
)
def test_is_prime(n, expected):
    assert is_prime(n) is expected
