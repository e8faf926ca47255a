import numpy as np
import pytest

from qcorr import (
    bloch_projectors,
    classical_correlated,
    example_extension,
    example_separable,
    measured_mutual_information,
    mutual_information,
    pinch,
    random_density,
    validate_density,
)
from qcorr.errors import DimensionMismatch, NotDensity, NotProbability, OutOfRange
from qcorr.linalg import partial_trace
from qcorr.states import Ket, ket

from conftest import classical_state


class TestValidateDensity:
    def test_maximally_mixed_two_qubits(self):
        state = validate_density(np.eye(4) / 4, (2, 2))
        assert state.dims == (2, 2)

    def test_rejects_negative_eigenvalue(self):
        with pytest.raises(NotDensity):
            validate_density(np.diag([1.0, -0.2, 0.2, 0.0]), (2, 2))

    def test_rejects_wrong_dims(self):
        with pytest.raises(DimensionMismatch):
            validate_density(np.eye(4) / 4, (2, 3))

    def test_accepts_expanded_mixture(self):
        # direct expansion of 0.3 |00><00| + 0.7 |++><++|
        expected = np.full((4, 4), 0.7 * 0.25, dtype=complex)
        expected[0, 0] += 0.3
        state = validate_density(expected, (2, 2))
        assert np.allclose(state.matrix, expected, atol=1e-14)
        assert np.allclose(example_separable(0.3).matrix, expected, atol=1e-14)

    def test_clips_tiny_negative_eigenvalues(self):
        m = np.diag([1.0 + 5e-11, -5e-11, 0.0, 0.0])
        state = validate_density(m, (2, 2))
        vals = np.linalg.eigvalsh(state.matrix)
        assert vals.min() >= 0.0
        assert abs(state.matrix.trace() - 1.0) < 1e-14


class TestExampleSeparable:
    def test_p_one_is_zz_projector(self):
        expected = np.zeros((4, 4), dtype=complex)
        expected[0, 0] = 1.0
        assert np.allclose(example_separable(1.0).matrix, expected, atol=1e-15)

    def test_p_zero_is_plus_plus_projector(self):
        assert np.allclose(example_separable(0.0).matrix, np.full((4, 4), 0.25), atol=1e-15)

    def test_half_mixture_entries(self):
        m = example_separable(0.5).matrix
        assert abs(m[0, 0] - 0.625) < 1e-15
        for col in (1, 2, 3):
            assert abs(m[0, col] - 0.125) < 1e-15

    def test_range_check(self):
        with pytest.raises(OutOfRange):
            example_separable(1.5)


class TestExampleExtension:
    def test_p_one_is_basis_projector(self):
        m = example_extension(1.0).matrix
        expected = np.zeros((8, 8), dtype=complex)
        expected[4, 4] = 1.0  # |1 0 0> in row-major three-qubit indexing
        assert np.allclose(m, expected, atol=1e-15)

    def test_p_zero_is_zero_plus_plus(self):
        m = example_extension(0.0).matrix
        amp = np.zeros(8, dtype=complex)
        amp[:4] = 0.5
        assert np.allclose(m, np.outer(amp, amp), atol=1e-15)

    @pytest.mark.parametrize("p", np.linspace(0.0, 1.0, 11))
    def test_marginal_identity(self, p):
        ext = example_extension(p)
        reduced = partial_trace(ext.matrix, ext.dims, [1, 2])
        assert np.max(np.abs(reduced - example_separable(p).matrix)) < 1e-14


class TestClassicalCorrelated:
    def test_degenerate_weight_skipped(self):
        z_basis = bloch_projectors(0.0, 0.0)
        state = classical_correlated([1.0, 0.0], z_basis, [np.eye(2) / 2, np.eye(2) / 2])
        assert np.allclose(state.matrix, np.diag([0.5, 0.5, 0.0, 0.0]), atol=1e-14)
        assert len(state.witness.weights) == 1

    def test_perfectly_correlated_diagonal(self):
        z_basis = bloch_projectors(0.0, 0.0)
        taus = [np.diag([1.0, 0.0]), np.diag([0.0, 1.0])]
        state = classical_correlated([0.5, 0.5], z_basis, taus)
        assert np.allclose(state.matrix, np.diag([0.5, 0.0, 0.0, 0.5]), atol=1e-14)

    @pytest.mark.parametrize("seed", range(6))
    def test_zero_discord_at_building_measurement(self, seed):
        rng = np.random.default_rng(seed)
        theta, phi = rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi)
        basis = bloch_projectors(theta, phi)
        taus = [random_density((2,), seed + 50 + i).matrix for i in range(2)]
        q0 = rng.uniform(0.1, 0.9)
        state = classical_correlated([q0, 1 - q0], basis, taus)
        assert np.linalg.norm(pinch(state, basis).matrix - state.matrix) < 1e-12
        gap = mutual_information(state) - measured_mutual_information(state, basis)
        assert abs(gap) < 1e-10

    def test_weight_validation(self):
        z_basis = bloch_projectors(0.0, 0.0)
        with pytest.raises(NotProbability):
            classical_correlated([0.6, 0.6], z_basis, [np.eye(2) / 2, np.eye(2) / 2])

    def test_count_mismatch(self):
        z_basis = bloch_projectors(0.0, 0.0)
        with pytest.raises(DimensionMismatch):
            classical_correlated([1.0], z_basis, [np.eye(2) / 2, np.eye(2) / 2])

    def test_witness_reassembles_state(self):
        state = classical_state(3)
        assert np.linalg.norm(state.witness.assemble() - state.matrix) < 1e-12


class TestRandomDensity:
    def test_deterministic(self):
        assert np.array_equal(random_density((2, 2), 42).matrix, random_density((2, 2), 42).matrix)

    def test_output_is_valid(self):
        for seed in range(10):
            state = random_density((2, 2), seed)
            validate_density(state.matrix, state.dims)

    def test_seed_sweep_unit_trace(self):
        for seed in range(100):
            assert abs(random_density((2, 2), seed).matrix.trace() - 1.0) < 1e-12

    def test_dimension_cap(self):
        with pytest.raises(DimensionMismatch):
            random_density((4, 4), 0)


class TestKet:
    def test_rejects_unnormalized(self):
        with pytest.raises(NotDensity):
            Ket(np.array([1.0, 1.0]))

    def test_helper_normalizes(self):
        k = ket(1, 1)
        assert abs(np.linalg.norm(k.amplitudes) - 1.0) < 1e-15
        assert np.allclose(k.projector(), 0.5 * np.ones((2, 2)))
