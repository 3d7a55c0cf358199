import math
from dataclasses import replace

import numpy as np
import pytest

from coollab.exceptions import InvalidInput, InvalidState
from coollab.spectral import (TOLERANCES, DensityMatrix, RngSeed, SortedSpectrum, TemperatureSpec,
                              diagonalize_hermitian, effective_temperature, haar_unitary_matrix, random_density_matrix,
                              random_pure_state, random_simplex_weights, reconstruction_defect, sorted_spectrum,
                              temperature_monotonicity_check, temperature_slack)

UNIT = TemperatureSpec(omega=1.0)


class TestDensityMatrix:
    def test_valid_state(self):
        rho = DensityMatrix([[0.5, 0.25j], [-0.25j, 0.5]])
        assert rho.dim == 2
        assert not rho.mat.flags.writeable

    @pytest.mark.parametrize('mat', [
        [[0.5, 0.3], [0.1, 0.5]],
        [[1.0, 0.0], [0.0, 1.0]],
        [[1.5, 0.0], [0.0, -0.5]],
    ])
    def test_invalid_states(self, mat):
        with pytest.raises(InvalidState):
            DensityMatrix(mat)

    def test_non_square(self):
        with pytest.raises(InvalidInput):
            DensityMatrix(np.ones((2, 3)) / 2)

    def test_constructors(self):
        assert np.allclose(DensityMatrix.maximally_mixed(4).mat, np.eye(4) / 4)
        assert np.allclose(DensityMatrix.pure([1, 1j]).mat, [[0.5, -0.5j], [0.5j, 0.5]])
        assert np.allclose(DensityMatrix.from_diagonal([0.2, 0.8]).populations, [0.2, 0.8])


class TestSortedSpectrum:
    @pytest.mark.parametrize('mat, expected', [
        (np.diag([0.3, 0.7]), [0.7, 0.3]),
        (np.eye(2) / 2, [0.5, 0.5]),
        ([[0.5, 0.5], [0.5, 0.5]], [1.0, 0.0]),
    ])
    def test_known_spectra(self, mat, expected):
        assert sorted_spectrum(DensityMatrix(mat)).probs == pytest.approx(expected, abs=1e-12)

    def test_clamps_tiny_negative(self):
        spectrum = sorted_spectrum(np.diag([1.0 + 1e-11, -1e-11]))
        assert spectrum.probs[-1] == 0.0

    def test_rejects_non_hermitian_matrix(self):
        with pytest.raises(InvalidState):
            sorted_spectrum(np.array([[0.5, 0.1], [0.2, 0.5]]))

    def test_rejects_unsorted(self):
        with pytest.raises(InvalidState):
            SortedSpectrum((0.3, 0.7))

    def test_permutation_invariance(self, rng):
        rho = random_density_matrix(4, rng)
        perm = np.eye(4)[[2, 0, 3, 1]]
        permuted = DensityMatrix(perm @ rho.mat @ perm.T)
        assert sorted_spectrum(permuted).probs == pytest.approx(sorted_spectrum(rho).probs, abs=1e-12)


class TestDiagonalize:
    def test_diagonal(self):
        vals, vecs = diagonalize_hermitian(np.diag([1.0, 2.0, 3.0]))
        assert vals == pytest.approx([3, 2, 1])
        assert np.allclose(np.abs(vecs), np.eye(3)[:, ::-1])

    def test_pauli_x(self):
        vals, _ = diagonalize_hermitian([[0, 1], [1, 0]])
        assert vals == pytest.approx([1, -1])

    @pytest.mark.parametrize('dim', [2, 4, 9, 16])
    def test_reconstruction(self, dim):
        rng = RngSeed(42).generator()
        a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        m = (a + a.conj().T) / 2
        vals, vecs = diagonalize_hermitian(m)
        assert reconstruction_defect(m, vals, vecs) <= 1e-10
        assert np.abs(vecs.conj().T @ vecs - np.eye(dim)).max() <= 1e-10

    @pytest.mark.parametrize('m', [np.ones((2, 3)), [[0, 1], [0, 0]]])
    def test_invalid(self, m):
        with pytest.raises(InvalidInput):
            diagonalize_hermitian(m)


class TestRandomStates:
    def test_deterministic(self):
        a = random_density_matrix(3, RngSeed(5, 2))
        b = random_density_matrix(3, RngSeed(5, 2))
        assert np.array_equal(a.mat, b.mat)

    def test_streams_differ(self):
        assert not np.array_equal(random_density_matrix(3, RngSeed(5, 1)).mat,
                                  random_density_matrix(3, RngSeed(5, 2)).mat)

    def test_dim_too_small(self):
        with pytest.raises(InvalidInput):
            random_density_matrix(1, RngSeed(0))

    def test_largest_eigenvalue_mean(self, rng):
        largest = [sorted_spectrum(random_density_matrix(2, rng)).largest for _ in range(10_000)]
        assert np.mean(largest) == pytest.approx(0.75, abs=0.01)

    def test_pure_state(self, rng):
        assert sorted_spectrum(random_pure_state(5, rng)).largest == pytest.approx(1.0, abs=1e-12)

    def test_haar_phase_fixed(self, rng):
        u = haar_unitary_matrix(4, rng)
        assert np.abs(u.conj().T @ u - np.eye(4)).max() <= 1e-10

    def test_simplex_weights(self, rng):
        assert random_simplex_weights(1, rng).tolist() == [1.0]
        w = random_simplex_weights(5, rng)
        assert np.all(w >= 0) and abs(w.sum() - 1) <= 1e-12
        with pytest.raises(InvalidInput):
            random_simplex_weights(0, rng)

    def test_simplex_weights_deterministic(self):
        assert np.array_equal(random_simplex_weights(3, RngSeed(9)), random_simplex_weights(3, RngSeed(9)))

    def test_simplex_weights_mean(self, rng):
        first = [random_simplex_weights(2, rng)[0] for _ in range(10_000)]
        assert np.mean(first) == pytest.approx(0.5, abs=0.01)

    def test_seed_range(self):
        with pytest.raises(InvalidInput):
            RngSeed(-1)
        assert RngSeed(3, 0).for_trial(17) == RngSeed(3, 17)


class TestTemperature:
    def test_gibbs_inversion(self):
        assert effective_temperature(math.e / (1 + math.e), UNIT) == pytest.approx(1.0, rel=1e-12)

    def test_limits(self):
        assert effective_temperature(1.0, UNIT) == 0.0
        assert effective_temperature(0.5, UNIT) == math.inf

    @pytest.mark.parametrize('p1', [0.4, 1.2])
    def test_out_of_range(self, p1):
        with pytest.raises(InvalidInput):
            effective_temperature(p1, UNIT)

    def test_strictly_decreasing(self):
        grid = np.linspace(0.51, 0.99, 200)
        temps = [effective_temperature(p, UNIT) for p in grid]
        assert all(a > b for a, b in zip(temps, temps[1:]))

    def test_invalid_spec(self):
        with pytest.raises(InvalidInput):
            TemperatureSpec(omega=0.0)

    def test_heating_passes(self):
        report = temperature_monotonicity_check(0.7, 0.6, UNIT, UNIT)
        assert report.passed and report.equal_gaps
        assert report.t_f > report.t_i

    def test_equal_populations(self):
        report = temperature_monotonicity_check(0.8, 0.8, UNIT, UNIT)
        assert report.passed and report.t_f == report.t_i

    def test_cooling_flagged(self):
        assert not temperature_monotonicity_check(0.9, 0.95, UNIT, UNIT).passed

    def test_unequal_gaps_bound(self):
        report = temperature_monotonicity_check(0.8, 0.8, UNIT, TemperatureSpec(omega=2.0))
        assert not report.equal_gaps
        assert report.bound == pytest.approx(2 * report.t_i)
        assert report.passed

    def test_slack(self):
        p = math.e / (1 + math.e)
        assert temperature_slack(p, 1e-9, UNIT) == pytest.approx(1e-9 / (p * (1 - p)), rel=1e-3)
        assert temperature_slack(0.5, 1e-9, UNIT) == math.inf
        assert temperature_slack(1.0, 1e-9, UNIT) == 0.0

    def test_raw_excess_beyond_slack_is_flagged(self):
        p1 = 0.8
        tol = replace(TOLERANCES, temperature=temperature_slack(p1, 1e-9, UNIT))
        assert temperature_monotonicity_check(p1, p1 + 1e-10, UNIT, UNIT, tol).passed
        assert not temperature_monotonicity_check(p1, p1 + 1e-6, UNIT, UNIT, tol).passed


class TestOutputTolerance:
    def test_defaults(self):
        assert TOLERANCES.for_outputs().trace == 1e-10
        assert TOLERANCES.for_outputs(3e-10).trace == 3e-10
        assert TOLERANCES.for_outputs(3e-10).herm == TOLERANCES.herm

    def test_spectrum_inherits_trace_tolerance(self):
        mat = np.diag([0.7, 0.3 - 2e-10])
        with pytest.raises(InvalidState):
            DensityMatrix(mat)
        rho = DensityMatrix(mat, tol=TOLERANCES.for_outputs(4e-10))
        assert sorted_spectrum(rho).largest == pytest.approx(0.7)


@pytest.mark.parametrize('dim', [3, 5])
def test_spectrum_order_statistics(dim):
    # k-th largest of a flat Dirichlet on d points has mean (1/d) Σ_{j=k..d} 1/j
    rng = RngSeed(77, dim).generator()
    samples = np.array([sorted_spectrum(random_density_matrix(dim, rng)).probs for _ in range(4000)])
    expected = [sum(1 / j for j in range(k, dim + 1)) / dim for k in range(1, dim + 1)]
    stderr = samples.std(axis=0, ddof=1) / math.sqrt(len(samples))
    assert np.all(np.abs(samples.mean(axis=0) - expected) <= 3 * stderr)
