import math

import numpy as np
import pytest

from coollab.channels import apply_random_unitary, theorem_check, unitarity_defect
from coollab.exceptions import DimensionMismatch, InvalidInput, InvalidState
from coollab.models import (FIGURE1_ALPHA, FIGURE1_THETA, BlockState, MRParams, NoiseEnsemble, StirapParams,
                            auxiliary_y, build_model_channel, dressed_angle, figure1_params, model_from_payload,
                            model_to_payload, mr_apply, mr_block_hamiltonian, mr_block_kraus, mr_block_kraus_bare,
                            mr_channel, mr_closed_form, mr_dressed_energies, mr_ground_energy, mr_mu, mr_yn,
                            random_block_state, stirap_channel, stirap_unitary, two_level_channel,
                            two_level_closed_form, two_level_kraus)
from coollab.spectral import DensityMatrix, random_density_matrix, sorted_spectrum

RESONANT = MRParams(omega_m=1.0, delta=1.0, g=0.3, n_max=1)


def random_params(rng, n_max=3):
    return MRParams(omega_m=float(rng.uniform(0.5, 2)), delta=float(rng.uniform(0.5, 2)),
                    g=float(rng.uniform(0, 0.5)), n_max=n_max)


class TestNoiseEnsemble:
    def test_uniform(self):
        ens = NoiseEnsemble.uniform([0.1, 0.2, 0.3, 0.4])
        assert ens.lambdas == (0.25,) * 4 and len(ens) == 4

    @pytest.mark.parametrize('thetas, lambdas', [
        ((), ()),
        ((0.1, 0.2), (1.0,)),
        ((0.1, 0.2), (0.7, 0.7)),
        ((0.1, 0.2), (1.5, -0.5)),
        ((math.nan,), (1.0,)),
    ])
    def test_invalid(self, thetas, lambdas):
        with pytest.raises(InvalidInput):
            NoiseEnsemble(thetas, lambdas)

    def test_random(self, rng):
        ens = NoiseEnsemble.random(50, rng)
        assert all(0 <= t < 2 * math.pi for t in ens.thetas)
        assert abs(sum(ens.lambdas) - 1) <= 1e-12


class TestTwoLevel:
    def test_kraus_values(self):
        assert np.allclose(two_level_kraus(0).k, np.eye(2))
        assert np.allclose(two_level_kraus(math.pi / 2).k, [[0, 1j], [1j, 0]])
        u = two_level_kraus(math.pi / 4).k
        assert np.allclose(u, (np.eye(2) + 1j * np.array([[0, 1], [1, 0]])) / math.sqrt(2))
        assert unitarity_defect(u) <= 1e-15

    def test_identity_channel(self):
        ch = two_level_channel(NoiseEnsemble((0.0,), (1.0,)))
        rho = DensityMatrix.from_diagonal([0.7, 0.3])
        assert np.allclose(apply_random_unitary(ch, rho).mat, rho.mat)

    def test_cancelling_channel(self):
        ch = two_level_channel(NoiseEnsemble((0.0, math.pi / 2), (0.5, 0.5)))
        out = apply_random_unitary(ch, DensityMatrix.from_diagonal([0.7, 0.3]))
        assert np.allclose(out.mat, np.eye(2) / 2, atol=1e-15)

    @pytest.mark.parametrize('thetas, expected', [
        ((0.0, math.pi / 4), 0.5),
        ((0.0, math.pi / 2), 0.0),
        ((1.3, 1.3), 1.0),
    ])
    def test_auxiliary_y(self, thetas, expected):
        assert auxiliary_y(NoiseEnsemble(thetas, (0.5, 0.5))) == pytest.approx(expected, abs=1e-15)

    def test_y_permutation_invariant(self, rng):
        ens = NoiseEnsemble.random(6, rng)
        order = rng.permutation(6)
        shuffled = NoiseEnsemble(tuple(np.array(ens.thetas)[order]), tuple(np.array(ens.lambdas)[order]))
        assert auxiliary_y(shuffled) == pytest.approx(auxiliary_y(ens), abs=1e-14)

    def test_closed_form_values(self):
        coherent = NoiseEnsemble((0.4, 0.4), (0.3, 0.7))
        assert two_level_closed_form(coherent, 0.7) == pytest.approx((0.7, 0.3))
        cancelling = NoiseEnsemble((0.0, math.pi / 2), (0.5, 0.5))
        assert two_level_closed_form(cancelling, 0.7) == pytest.approx((0.5, 0.5))
        assert two_level_closed_form(NoiseEnsemble.random(4, 1), 0.5) == pytest.approx((0.5, 0.5))

    def test_closed_form_range(self):
        with pytest.raises(InvalidInput):
            two_level_closed_form(NoiseEnsemble((0.0,), (1.0,)), 0.3)

    def test_closed_form_matches_direct(self, rng):
        for _ in range(1000):
            ens = NoiseEnsemble.random(int(rng.integers(1, 9)), rng)
            p1 = float(rng.uniform(0.5, 1.0))
            out = apply_random_unitary(two_level_channel(ens), DensityMatrix.from_diagonal([p1, 1 - p1]))
            assert sorted_spectrum(out).probs == pytest.approx(two_level_closed_form(ens, p1), abs=1e-10)


class TestResonator:
    def test_params(self):
        assert RESONANT.dim == 3
        with pytest.raises(InvalidInput):
            MRParams(omega_m=1.0, delta=1.0, g=-0.1, n_max=1)
        with pytest.raises(InvalidInput):
            MRParams(omega_m=1.0, delta=1.0, g=0.1, n_max=0)

    def test_dressed_angle(self):
        assert dressed_angle(1, MRParams(omega_m=1.0, delta=2.0, g=0.0, n_max=1)) == 0.0
        assert dressed_angle(3, RESONANT) == pytest.approx(math.pi / 4)
        assert dressed_angle(1, MRParams(omega_m=1.0, delta=1.2, g=0.1, n_max=1)) == pytest.approx(math.pi / 8)

    def test_dressed_energies_diagonalize_block(self, rng):
        p = random_params(rng)
        for n in range(1, 4):
            vals = np.linalg.eigvalsh(mr_block_hamiltonian(n, p))[::-1]
            assert vals == pytest.approx(mr_dressed_energies(n, p), abs=1e-12)
        assert mr_ground_energy(p) == -p.delta / 2

    def test_block_kraus_identity(self, rng):
        assert np.allclose(mr_block_kraus(2, 0.0, random_params(rng)), np.eye(2))

    def test_block_kraus_swap_at_resonance(self):
        k = mr_block_kraus(1, math.pi, RESONANT)
        assert abs(k[0, 0]) <= 1e-15 and abs(k[1, 1]) <= 1e-15
        assert abs(abs(k[0, 1]) - 1) <= 1e-15

    def test_block_kraus_unitary_and_matches_bare(self, rng):
        for _ in range(1000):
            p = random_params(rng)
            n = int(rng.integers(1, 10))
            theta = float(rng.uniform(0, 2 * math.pi))
            k = mr_block_kraus(n, theta, p)
            assert unitarity_defect(k) <= 1e-12
            assert np.abs(k - mr_block_kraus_bare(n, theta, p)).max() <= 1e-12

    def test_block_kraus_invalid_index(self):
        with pytest.raises(InvalidInput):
            mr_block_kraus(0, 0.1, RESONANT)

    def test_apply_identity(self):
        state = BlockState(0.2, (np.diag([0.5, 0.3]),))
        out = mr_apply(NoiseEnsemble((0.0,), (1.0,)), state, RESONANT)
        assert np.allclose(out.blocks[0], state.blocks[0])

    def test_apply_swap(self):
        state = BlockState(0.2, (np.diag([0.6, 0.2]),))
        out = mr_apply(NoiseEnsemble((math.pi,), (1.0,)), state, RESONANT)
        assert np.allclose(out.blocks[0], np.diag([0.2, 0.6]), atol=1e-15)
        assert out.p0 == 0.2

    def test_apply_conserves_traces(self, rng):
        for _ in range(100):
            p = random_params(rng)
            state = random_block_state(p.n_max, rng)
            out = mr_apply(NoiseEnsemble.random(int(rng.integers(1, 9)), rng), state, p)
            assert out.p0 == state.p0
            assert out.block_traces == pytest.approx(state.block_traces, abs=1e-12)
            for before, after in zip(state.blocks, out.blocks):
                largest = np.linalg.eigvalsh(before)[-1]
                assert np.linalg.eigvalsh(after)[-1] <= largest + 1e-10

    def test_truncation_mismatch(self, rng):
        state = random_block_state(2, rng)
        with pytest.raises(DimensionMismatch):
            mr_apply(NoiseEnsemble((0.1,), (1.0,)), state, RESONANT)

    def test_mu_values(self, rng):
        assert mr_mu(1, 0.0, random_params(rng)) == pytest.approx((0, 0, 1))
        assert mr_mu(1, math.pi, RESONANT) == pytest.approx((0, 0, -1), abs=1e-15)

    def test_mu_normalized(self, rng):
        for _ in range(1000):
            mu = mr_mu(int(rng.integers(1, 10)), float(rng.uniform(0, 2 * math.pi)), random_params(rng))
            assert abs(sum(m * m for m in mu) - 1) <= 1e-12

    def test_yn(self, rng):
        p = random_params(rng)
        assert mr_yn(NoiseEnsemble((1.1,), (1.0,)), 2, p) == pytest.approx(1.0)
        assert mr_yn(NoiseEnsemble((0.7, 0.7), (0.4, 0.6)), 2, p) == pytest.approx(1.0)
        assert mr_yn(NoiseEnsemble((0.0, math.pi), (0.5, 0.5)), 1, RESONANT) == pytest.approx(0.0, abs=1e-15)

    def test_yn_permutation_invariant(self, rng):
        for _ in range(20):
            p = random_params(rng)
            ens = NoiseEnsemble.random(6, rng)
            order = rng.permutation(6)
            shuffled = NoiseEnsemble(tuple(np.array(ens.thetas)[order]), tuple(np.array(ens.lambdas)[order]))
            for n in range(1, 4):
                assert mr_yn(shuffled, n, p) == pytest.approx(mr_yn(ens, n, p), abs=1e-14)

    def test_closed_form_matches_direct(self, rng):
        for _ in range(1000):
            p = random_params(rng)
            ens = NoiseEnsemble.random(int(rng.integers(1, 9)), rng)
            state = random_block_state(p.n_max, rng)
            out = mr_apply(ens, state, p)
            for block, expected in zip(out.blocks, mr_closed_form(ens, state, p)):
                assert np.linalg.eigvalsh(block)[::-1] == pytest.approx(expected, abs=1e-10)

    def test_closed_form_needs_diagonal_blocks(self):
        state = BlockState(0.2, (np.array([[0.4, 0.1], [0.1, 0.4]]),))
        with pytest.raises(InvalidInput):
            mr_closed_form(NoiseEnsemble((0.3,), (1.0,)), state, RESONANT)

    def test_block_state_validation(self):
        with pytest.raises(InvalidState):
            BlockState(0.5, (np.diag([0.3, 0.3]),))
        with pytest.raises(InvalidState):
            BlockState(0.0, (np.diag([1.2, -0.2]),))

    def test_block_state_density_matrix(self, rng):
        state = random_block_state(3, rng)
        rho = state.to_density_matrix()
        assert rho.dim == 7
        back = BlockState.from_density_matrix(rho, 3)
        assert back.p0 == state.p0
        assert all(np.array_equal(a, b) for a, b in zip(back.blocks, state.blocks))
        with pytest.raises(InvalidState):
            BlockState.from_density_matrix(random_density_matrix(3, rng), 1)

    def test_channel_embedding(self, rng):
        p = random_params(rng, n_max=2)
        ens = NoiseEnsemble.random(5, rng)
        state = random_block_state(2, rng)
        direct = mr_apply(ens, state, p).to_density_matrix()
        embedded = apply_random_unitary(mr_channel(ens, p), state.to_density_matrix())
        assert np.abs(direct.mat - embedded.mat).max() <= 1e-12


class TestStirap:
    def test_figure_angles(self):
        assert math.cos(FIGURE1_ALPHA) ** 2 == pytest.approx(1 / 3)
        assert math.cos(FIGURE1_THETA) ** 2 == pytest.approx(7 / 10)
        assert figure1_params('alpha').noisy.value == 'alpha'

    def test_theta_zero(self):
        a = 0.4
        expected = [[math.cos(a), math.sin(a), 0], [-math.sin(a), math.cos(a), 0], [0, 0, 1]]
        assert np.allclose(stirap_unitary(0.0, a).k, expected)

    def test_transfer_row(self):
        assert np.allclose(stirap_unitary(math.pi / 2, 0.0).k[0], [0, 0, -1])

    def test_unitary(self, rng):
        for theta, alpha in rng.uniform(-math.pi, math.pi, size=(1000, 2)):
            assert stirap_unitary(theta, alpha).defect <= 1e-12

    def test_invalid_noisy(self):
        with pytest.raises(InvalidInput):
            StirapParams(theta=0.1, alpha=0.2, noisy='both')

    def test_single_realization(self, rng):
        rho = random_density_matrix(3, rng)
        ch = stirap_channel(figure1_params('theta'), NoiseEnsemble((0.8,), (1.0,)))
        assert sorted_spectrum(apply_random_unitary(ch, rho)).probs == pytest.approx(sorted_spectrum(rho).probs,
                                                                                      abs=1e-10)

    @pytest.mark.parametrize('noisy', ['theta', 'alpha'])
    def test_noisy_angle(self, noisy):
        params = figure1_params(noisy)
        ch = stirap_channel(params, NoiseEnsemble((0.1, 0.9), (0.5, 0.5)))
        expected = stirap_unitary(0.9, params.alpha) if noisy == 'theta' else stirap_unitary(params.theta, 0.9)
        assert np.allclose(ch.realizations[1][1].k, expected.k)

    def test_theorem(self, rng):
        for noisy in ('theta', 'alpha'):
            for _ in range(200):
                rho = random_density_matrix(3, rng)
                ch = stirap_channel(figure1_params(noisy), NoiseEnsemble.random(20, rng))
                assert theorem_check(rho, apply_random_unitary(ch, rho)).passed


class TestModelPayload:
    def test_two_level(self):
        ch = build_model_channel({'model': 'two_level', 'ensemble': {'thetas': [0, math.pi / 2]}})
        out = apply_random_unitary(ch, DensityMatrix.from_diagonal([0.7, 0.3]))
        assert sorted_spectrum(out).largest == pytest.approx(0.5)

    def test_round_trip(self):
        payload = {'model': 'mr', 'params': {'omega_m': 1.0, 'delta': 1.5, 'g': 0.1, 'n_max': 2},
                   'ensemble': {'thetas': [0.1, 0.2], 'lambdas': [0.25, 0.75]}}
        model, params, ens = model_from_payload(payload)
        assert model_to_payload(model, params, ens) == payload
        assert build_model_channel(payload).dim == 5

    @pytest.mark.parametrize('payload', [
        [],
        {'model': 'laser'},
        {'model': 'two_level'},
        {'model': 'mr', 'params': {'omega_m': 1.0}, 'ensemble': {'thetas': [0.1]}},
        {'model': 'stirap', 'params': {'theta': 0.1, 'alpha': 0.1}, 'ensemble': {'thetas': []}},
    ])
    def test_invalid(self, payload):
        with pytest.raises(InvalidInput):
            model_from_payload(payload)


class TestModelsApi:
    def test_two_level_populations(self, lab):
        ens = lab.models.ensemble(4, stream_id=3)
        y, q1, q2 = lab.models.two_level_populations(ens, 0.8)
        assert 0 <= y <= 1 and q1 + q2 == pytest.approx(1.0)
        assert q1 <= 0.8 + 1e-12

    def test_resonator(self, lab):
        params = MRParams(omega_m=1.0, delta=1.4, g=0.2, n_max=2)
        out, closed = lab.models.resonator(lab.models.ensemble(3), params, stream_id=2)
        assert out.n_max == 2 and len(closed) == 2

    def test_stirap_defaults(self, lab):
        ch = lab.models.stirap(NoiseEnsemble((0.5,), (1.0,)), noisy='alpha')
        assert np.allclose(ch.realizations[0][1].k, stirap_unitary(FIGURE1_THETA, 0.5).k)
