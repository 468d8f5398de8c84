"""Signal model: basis evaluation, synthesis, exact DFT, masks, file I/O."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sparsefourier import (AvailabilityExhausted, AvailabilityMask, FullSignal,
                           ModeSpec, Representation, SampledSignal,
                           bernoulli_mask, eval_exponential,
                           eval_representation, exact_dft,
                           read_representation, read_samples, synthesize,
                           write_representation, write_samples)
from sparsefourier.signal import draw_available_index


class TestEvalExponential:
    def test_constant_basis(self):
        assert eval_exponential(0, 7, 16) == pytest.approx(0.25)

    def test_quarter_frequency_half_turn(self):
        # 2*pi*4*2/16 = pi, so e^{i*pi}/sqrt(16) = -0.25
        assert eval_exponential(4, 2, 16) == pytest.approx(-0.25)

    @pytest.mark.parametrize("n", [4, 16, 64])
    def test_nyquist_at_one(self, n):
        assert eval_exponential(n // 2, 1, n) == pytest.approx(-1.0 / math.sqrt(n))

    def test_t_reduced_mod_n(self):
        assert eval_exponential(3, 5 + 32, 32) == pytest.approx(
            eval_exponential(3, 5, 32))

    def test_omega_out_of_range(self):
        with pytest.raises(ValueError):
            eval_exponential(16, 0, 16)


class TestSynthesize:
    def test_single_mode_roundtrip(self):
        s = synthesize([ModeSpec(5, 1.0)], 64)
        assert exact_dft(s, 5) == pytest.approx(1.0, abs=1e-12)
        others = [exact_dft(s, w) for w in range(64) if w != 5]
        assert max(abs(c) for c in others) < 1e-12

    def test_empty_superposition(self):
        s = synthesize([], 16)
        assert np.all(s.values == 0)

    def test_duplicate_frequencies_rejected(self):
        with pytest.raises(ValueError):
            synthesize([ModeSpec(3, 1.0), ModeSpec(3, 2.0)], 16)

    def test_noise_energy_and_snr(self):
        # 8 unit modes plus sigma=0.5 noise: ||nu||^2 ~ 0.25, ||S||^2 ~ 8.25,
        # SNR = 20*log10(8/0.25) = 20*log10(32) ~ 30.1 dB
        n = 2 ** 15
        rng = np.random.default_rng(0)
        modes = [ModeSpec(w, 1.0) for w in rng.choice(n, 8, replace=False)]
        noise_sq = []
        for seed in range(20):
            s = synthesize(modes, n, noise_sigma=0.5,
                           rng=np.random.default_rng(seed))
            clean = synthesize(modes, n)
            noise_sq.append(np.sum(np.abs(s.values - clean.values) ** 2))
        assert np.mean(noise_sq) == pytest.approx(0.25, rel=0.1)
        snr_db = 20 * math.log10(8.0 / 0.25)
        assert snr_db == pytest.approx(30.1, abs=0.05)

    def test_noise_requires_rng(self):
        with pytest.raises(ValueError):
            synthesize([], 16, noise_sigma=0.5)

    def test_non_power_of_two_rejected(self):
        with pytest.raises(ValueError):
            synthesize([], 12)


class TestExactDft:
    def test_delta_flat_spectrum(self):
        vals = np.zeros(16, dtype=complex)
        vals[0] = 1.0
        s = FullSignal(n=16, values=vals)
        for w in range(16):
            assert exact_dft(s, w) == pytest.approx(0.25)

    def test_orthonormality(self):
        s = synthesize([ModeSpec(3, 1.0)], 32)
        assert exact_dft(s, 3) == pytest.approx(1.0, abs=1e-12)
        assert abs(exact_dft(s, 4)) < 1e-12

    @given(st.integers(0, 2 ** 31 - 1))
    @settings(max_examples=20, deadline=None)
    def test_parseval(self, seed):
        n = 64
        rng = np.random.default_rng(seed)
        s = FullSignal(n=n, values=rng.standard_normal(n)
                       + 1j * rng.standard_normal(n))
        spec_energy = sum(abs(exact_dft(s, w)) ** 2 for w in range(n))
        assert spec_energy == pytest.approx(s.energy(), rel=1e-9)


class TestBernoulliMask:
    def test_full_availability(self):
        m = bernoulli_mask(128, 1.0, np.random.default_rng(0))
        assert m.available_count == 128

    def test_density_concentration(self):
        m = bernoulli_mask(10 ** 4, 0.7, np.random.default_rng(1))
        assert 0.68 <= m.p_hat <= 0.72

    def test_invalid_p(self):
        with pytest.raises(ValueError):
            bernoulli_mask(16, 0.0, np.random.default_rng(0))

    @pytest.mark.parametrize("p", [0.3, 0.5, 0.8])
    def test_mask_indicator_spectrum_expectation(self, p):
        # with the 1/(p*n) normalization, E|chi_hat_T(w)|^2 = (1-p)/(p*(n-1))
        # exactly at every w != 0
        n, trials, w = 256, 10 ** 4, 7
        rng = np.random.default_rng(42)
        flags = rng.random((trials, n)) < p
        phases = np.exp(-2j * np.pi * w * np.arange(n) / n)
        chi_hat = (flags @ phases) / (p * n)
        empirical = np.mean(np.abs(chi_hat) ** 2)
        assert empirical == pytest.approx((1 - p) / (p * (n - 1)), rel=0.10)


class TestDrawAvailableIndex:
    def test_all_true_first_draw(self):
        m = AvailabilityMask(n=8, flags=np.ones(8, bool))
        assert 0 <= draw_available_index(m, np.random.default_rng(0), 1) < 8

    def test_single_available(self):
        flags = np.zeros(16, bool)
        flags[11] = True
        m = AvailabilityMask(n=16, flags=flags)
        for seed in range(5):
            assert draw_available_index(m, np.random.default_rng(seed), 500) == 11

    def test_exhaustion(self):
        flags = np.zeros(64, bool)
        flags[0] = True
        m = AvailabilityMask(n=64, flags=flags)
        with pytest.raises(AvailabilityExhausted):
            draw_available_index(m, np.random.default_rng(3), 1)

    def test_uniformity_chi_square(self):
        # equal frequency across available indices (chi-square, 1% level)
        flags = np.zeros(16, bool)
        flags[[1, 4, 7, 9, 12]] = True
        m = AvailabilityMask(n=16, flags=flags)
        rng = np.random.default_rng(0)
        draws = [draw_available_index(m, rng, 1000) for _ in range(10 ** 5)]
        counts = np.bincount(draws, minlength=16)[flags]
        expected = 10 ** 5 / 5
        chi2 = float(np.sum((counts - expected) ** 2 / expected))
        # chi-square with 4 dof, 1% critical value
        assert chi2 < 13.28


class TestRepresentation:
    def test_empty_eval(self):
        assert eval_representation(Representation(16), 3) == 0

    def test_single_term(self):
        rep = Representation(16, np.array([5]), np.array([2.0 + 0j]))
        assert rep.evaluate(3) == pytest.approx(2 * eval_exponential(5, 3, 16))

    def test_merge_additive(self):
        rep = Representation(16).with_term(5, 1.0).with_term(5, 0.5)
        assert len(rep) == 1
        assert rep.coefficient(5) == pytest.approx(1.5)

    def test_pruned_ties_lower_frequency(self):
        rep = Representation(16, np.array([3, 9, 5]),
                             np.array([1.0, 1.0, 2.0], dtype=complex))
        kept = rep.pruned(2)
        assert set(kept.freqs.tolist()) == {3, 5}

    def test_synthesis_roundtrip(self):
        modes = [ModeSpec(2, 1 + 1j), ModeSpec(9, -0.5j), ModeSpec(30, 3.0)]
        s = synthesize(modes, 32)
        for m in modes:
            assert exact_dft(s, m.frequency) == pytest.approx(m.amplitude,
                                                              abs=1e-12)

    def test_duplicate_frequencies_rejected(self):
        with pytest.raises(ValueError):
            Representation(16, np.array([1, 1]), np.array([1.0, 2.0],
                                                          dtype=complex))


class TestFileFormats:
    def test_sample_roundtrip(self, tmp_path):
        rng = np.random.default_rng(5)
        s = synthesize([ModeSpec(3, 1 + 2j)], 64, noise_sigma=0.1, rng=rng)
        mask = bernoulli_mask(64, 0.6, rng)
        data = SampledSignal.from_full(s, mask)
        path = tmp_path / "s.csv"
        write_samples(path, data)
        back = read_samples(path)
        assert np.array_equal(back.mask.flags, data.mask.flags)
        idx = mask.available_indices()
        assert np.array_equal(back.values[idx], data.values[idx])

    def test_sample_file_full_mask_line_count(self, tmp_path):
        s = synthesize([ModeSpec(1, 1.0)], 32)
        data = SampledSignal.from_full(
            s, AvailabilityMask(n=32, flags=np.ones(32, bool)))
        path = tmp_path / "s.csv"
        write_samples(path, data)
        assert len(path.read_text().strip().splitlines()) == 33  # header + 32

    def test_representation_roundtrip(self, tmp_path):
        rep = Representation(128, np.array([3, 77]),
                             np.array([1.5 - 2j, 0.25j]))
        path = tmp_path / "r.csv"
        write_representation(path, rep)
        back = read_representation(path)
        assert back.n == 128
        assert np.array_equal(back.freqs, rep.freqs)
        assert np.array_equal(back.coefs, rep.coefs)

    def test_bad_header(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("garbage\n")
        with pytest.raises(ValueError):
            read_samples(path)
