"""Filtered residual views: lazy evaluation, tone images, recursion algebra."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sparsefourier import (AvailabilityMask, ModeSpec, Representation,
                           SampledSignal, boxcar_freq, eval_filtered_sample,
                           synthesize)
from sparsefourier.access import SampleAccess
from sparsefourier.boxcar import FilterChain
from sparsefourier.isolation import (IsolationSignal, PlainResidual,
                                     build_isolation_family)


def tone_access(n, w, c=1.0, seed=0, extra=()):
    modes = [ModeSpec(w, c)] + [ModeSpec(f, a) for f, a in extra]
    s = synthesize(modes, n)
    mask = AvailabilityMask(n=n, flags=np.ones(n, bool))
    return SampleAccess(SampledSignal.from_full(s, mask))


def expected_tone_view(h, w, c, ts):
    """Analytic H(t) for a residual containing only the tone (w, c):
    H(t) = c * sqrt(n) * G1 * Gq * exp(2*pi*1j*((alpha*w - mu) mod n)*t/n)
    where G1 and Gq are the narrow/wide frequency responses at the tone's
    offsets from the (fractional) filter centers."""
    n = h.n
    x_narrow = (n * h.j16 / 16.0 + h.mu - w * h.alpha) % n
    g1 = (1 + 2 * math.cos(2 * math.pi * x_narrow / n)) / 3.0
    gq = boxcar_freq(h.q1, (h.sigma * (w - h.theta)) % n, n)
    image = (h.alpha * w - h.mu) % n
    return c * math.sqrt(n) * g1 * gq * np.exp(2j * np.pi * image * ts / n)


class TestEvalBatch:
    def test_matches_filter_chain_when_undilated(self):
        # alpha=1, mu=0 is exactly a sigma1=sigma3=sigma4=1 filter chain
        n = 128
        access = tone_access(n, 9, 2.0 - 1j, extra=((40, 0.7),))
        h = IsolationSignal(access=access, rep=Representation(n), q1=3,
                            sigma=11, theta=9, j16=5)
        chain = FilterChain(n=n, q1=3, sigma1=1, sigma2=11, sigma3=1,
                            sigma4=1, theta=9, j16=5)
        source = lambda idx: access.data.values[np.asarray(idx)]
        got = h.eval_batch(np.array([0, 7, 100]))
        for k, t in enumerate((0, 7, 100)):
            assert got[k] == pytest.approx(
                eval_filtered_sample(source, chain, t), abs=1e-9)

    @given(st.integers(0, 10 ** 6))
    @settings(max_examples=25, deadline=None)
    def test_single_tone_analytic(self, seed):
        n = 64
        rng = np.random.default_rng(seed)
        w = int(rng.integers(n))
        c = complex(rng.standard_normal(), rng.standard_normal())
        access = tone_access(n, w, c)
        h = IsolationSignal(
            access=access, rep=Representation(n), q1=int(rng.integers(1, 4)),
            sigma=int(rng.integers(n // 2)) * 2 + 1, theta=int(rng.integers(n)),
            alpha=int(rng.integers(n // 2)) * 2 + 1, mu=int(rng.integers(n)),
            j16=int(rng.integers(16)))
        ts = np.arange(n)
        got = h.eval_batch(ts)
        assert np.allclose(got, expected_tone_view(h, w, c, ts), atol=1e-8)

    def test_rep_subtraction(self):
        n = 64
        access = tone_access(n, 5, 1.5, extra=((20, 1.0),))
        rep = Representation(n).with_term(20, 1.0)
        h = IsolationSignal(access=access, rep=rep, q1=2, sigma=7, theta=5)
        got = h.eval_batch(np.arange(n))
        assert np.allclose(got, expected_tone_view(h, 5, 1.5, np.arange(n)),
                           atol=1e-8)

    def test_touch_bound(self):
        n = 256
        access = tone_access(n, 3)
        h = IsolationSignal(access=access, rep=Representation(n), q1=4,
                            sigma=9, theta=0)
        before = access.samples_touched
        h.eval_batch(np.array([17]))
        assert access.samples_touched - before == 3 * (2 * 4 + 1)

    def test_even_sigma_rejected(self):
        access = tone_access(16, 1)
        with pytest.raises(ValueError):
            IsolationSignal(access=access, rep=Representation(16), q1=1,
                            sigma=2, theta=0)


class TestRecursionBookkeeping:
    def _h(self, n=64):
        return IsolationSignal(access=tone_access(n, 0),
                               rep=Representation(n), q1=1, sigma=3, theta=0)

    def test_modulation_accumulates(self):
        h = self._h().modulated(5).modulated(10)
        assert h.mu == 15

    def test_dilation_scales_modulation(self):
        h = self._h().modulated(5).dilated(3)
        assert h.alpha == 3 and h.mu == 15

    def test_j16_wraps(self):
        assert self._h().with_j16(21).j16 == 5

    @pytest.mark.parametrize("w", range(0, 64, 7))
    def test_tone_image_exhaustive(self, w):
        # image after modulate(m) then dilate(d) is d*(w - m) mod n, read off
        # the dense DFT of the evaluated view
        n = 64
        access = tone_access(n, w, 1.0)
        h = IsolationSignal(access=access, rep=Representation(n), q1=1,
                            sigma=1, theta=w)  # filters centered on the tone
        for m, d in ((3, 3), (17, 5), (w, 3)):
            view = h.modulated(m).dilated(d)
            vals = view.eval_batch(np.arange(n))
            spec = np.fft.fft(vals) / n
            assert int(np.argmax(np.abs(spec))) == (d * (w - m)) % n

    def test_support_offsets_row_major(self):
        h = IsolationSignal(access=tone_access(32, 0), rep=Representation(32),
                            q1=1, sigma=5, theta=0, alpha=3)
        expected = [3 * i + 5 * j for i in (-1, 0, 1) for j in (-1, 0, 1)]
        assert h.support_offsets().tolist() == expected

    def test_odd_dilation_supports_rerandomize(self):
        # with odd accumulated dilation, t -> alpha*t is a bijection mod n,
        # so the support positions range over all residues
        n = 64
        h = IsolationSignal(access=tone_access(n, 0), rep=Representation(n),
                            q1=1, sigma=3, theta=0, alpha=27)
        firsts = {int(h.support(t)[0]) for t in range(n)}
        assert len(firsts) == n


class TestPlainResidual:
    def test_exact_residual(self):
        n = 64
        access = tone_access(n, 5, 2.0)
        rep = Representation(n).with_term(5, 2.0)
        r = PlainResidual(access=access, rep=rep)
        assert np.max(np.abs(r.eval_batch(np.arange(n)))) < 1e-12

    def test_support_is_single_point(self):
        r = PlainResidual(access=tone_access(16, 1), rep=Representation(16))
        assert r.support_offsets().tolist() == [0]
        assert r.support_scale == 1


class TestBuildFamily:
    def test_size_and_oddness(self):
        rng = np.random.default_rng(0)
        fam = build_isolation_family(tone_access(256, 1), Representation(256),
                                     4, 2, rng)
        assert len(fam) == 4
        assert all(m.sigma % 2 == 1 for m in fam)
        assert all(m.alpha == 1 and m.mu == 0 for m in fam)

    def test_members_differ(self):
        rng = np.random.default_rng(1)
        fam = build_isolation_family(tone_access(4096, 1),
                                     Representation(4096), 6, 1, rng)
        assert len({(m.sigma, m.theta) for m in fam}) > 1

    def test_invalid_size(self):
        with pytest.raises(ValueError):
            build_isolation_family(tone_access(16, 1), Representation(16),
                                   0, 1, np.random.default_rng(0))
