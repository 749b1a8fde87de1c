import math

import numpy as np
import pytest
from scipy import special

from ginibre_index import (
    DomainError,
    bernoulli_probs,
    ginibre2_mc,
    index_moments,
    index_pmf_exact,
    sample_index,
)

from oracles import brute_force_poisson_binomial

N2_R1_PMF = np.array([0.5136057, 0.4314474, 0.0549469])


class TestBernoulliProbs:
    def test_single_particle(self):
        profile = bernoulli_probs(1, 1.0)
        assert profile.probs == pytest.approx([math.exp(-1.0)], abs=1e-14)

    def test_two_particles(self):
        profile = bernoulli_probs(2, 1.0)
        assert profile.probs == pytest.approx([math.exp(-2.0), 3.0 * math.exp(-2.0)], abs=1e-14)

    def test_tiny_threshold_gives_ones(self):
        profile = bernoulli_probs(5, 1e-12)
        assert profile.probs == pytest.approx(np.ones(5), abs=1e-12)

    def test_increasing_in_shape(self):
        profile = bernoulli_probs(200, 0.7)
        assert np.all(np.diff(profile.probs) >= 0.0)

    @pytest.mark.parametrize("n,radius", [(10, 0.5), (100, 0.3), (100, 1.0 / math.sqrt(2)), (500, 0.9), (1000, 0.95)])
    def test_against_scipy(self, n, radius):
        profile = bernoulli_probs(n, radius)
        x = n * radius * radius
        k = np.arange(1, n + 1)
        assert np.max(np.abs(profile.probs - special.gammaincc(k, x))) < 1e-12
        assert np.max(np.abs(profile.complements - special.gammainc(k, x))) < 1e-12

    def test_complements_stay_accurate_in_log_domain(self):
        # deep lower tail: 1 - p_k underflows but the complement must not
        profile = bernoulli_probs(100, 0.5)
        k = np.arange(1, 101)
        expected = special.gammainc(k, 25.0)
        ratio = profile.complements[expected > 0] / expected[expected > 0]
        assert np.max(np.abs(np.log(ratio))) < 1e-9

    def test_domain(self):
        with pytest.raises(DomainError):
            bernoulli_probs(0, 1.0)
        with pytest.raises(DomainError):
            bernoulli_probs(5, 0.0)


class TestIndexPmfExact:
    def test_n2_frozen(self):
        pmf = index_pmf_exact(2, 1.0)
        assert pmf.probs() == pytest.approx(N2_R1_PMF, abs=2e-7)
        p1, p2 = math.exp(-2.0), 3.0 * math.exp(-2.0)
        exact = [(1 - p1) * (1 - p2), p1 * (1 - p2) + p2 * (1 - p1), p1 * p2]
        assert pmf.probs() == pytest.approx(exact, abs=1e-13)

    def test_certain_index_at_tiny_radius(self):
        pmf = index_pmf_exact(3, 1e-9)
        assert pmf.probs()[3] == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("n,radius", [(2, 1.0), (7, 0.6), (10, 0.9), (12, 0.3)])
    def test_against_brute_force(self, n, radius):
        pmf = index_pmf_exact(n, radius)
        brute = brute_force_poisson_binomial(bernoulli_probs(n, radius).probs)
        assert np.max(np.abs(pmf.probs() - brute)) < 1e-12

    @pytest.mark.parametrize("n,radius", [(2, 1.0), (50, 0.5), (200, 0.5), (400, 0.8)])
    def test_normalized(self, n, radius):
        assert abs(np.exp(index_pmf_exact(n, radius).log_probs).sum() - 1.0) < 1e-10

    def test_far_tail_survives_in_log_space(self):
        # ln P(k) of order -10^3 must stay finite, not underflow to -inf
        pmf = index_pmf_exact(200, 0.5)
        assert np.isfinite(pmf.log_probs[40])
        assert pmf.log_probs[40] < -700.0


class TestIndexMoments:
    def test_n2_frozen(self):
        mean, variance = index_moments(2, 1.0)
        assert mean == pytest.approx(0.5413411, abs=1e-7)
        assert variance == pytest.approx(0.3581847, abs=1e-7)

    def test_typical_fraction(self):
        mean, _ = index_moments(1000, 0.5)
        assert mean / 1000 == pytest.approx(0.75, abs=0.01)

    def test_tiny_radius_degenerate(self):
        mean, variance = index_moments(20, 1e-9)
        assert mean == pytest.approx(20.0, abs=1e-9)
        assert variance == pytest.approx(0.0, abs=1e-9)

    @pytest.mark.parametrize("radius", [0.3, 0.5, 1.0 / math.sqrt(2), 0.9])
    @pytest.mark.parametrize("n", [25, 100, 500])
    def test_consistent_with_pmf(self, radius, n):
        mean, variance = index_moments(n, radius)
        probs = index_pmf_exact(n, radius).probs()
        k = np.arange(n + 1)
        pmf_mean = float(np.sum(k * probs))
        pmf_var = float(np.sum((k - pmf_mean) ** 2 * probs))
        assert mean == pytest.approx(pmf_mean, abs=1e-10)
        assert variance == pytest.approx(pmf_var, abs=1e-9)

    @pytest.mark.parametrize("radius", [0.3, 0.5, 0.9])
    @pytest.mark.parametrize("n", [100, 400, 1000])
    def test_mean_law(self, radius, n):
        mean, _ = index_moments(n, radius)
        assert abs(mean / n - (1.0 - radius * radius)) <= 1.0 / math.sqrt(n)


class TestLdpConsistency:
    @pytest.mark.parametrize("fraction", [0.2, 0.95])
    def test_gap_shrinks(self, fraction):
        from ginibre_index import ConstraintSpec, psi

        radius = 0.5
        target = psi(ConstraintSpec(radius, fraction, 2.0)).psi
        gaps = []
        for n in (25, 50, 100, 200):
            log_probs = index_pmf_exact(n, radius).log_probs
            value = -(1.0 / (n * n)) * log_probs[round(fraction * n)]
            gaps.append(abs(value - target))
        assert all(b < a for a, b in zip(gaps, gaps[1:]))


class TestSamplers:
    def test_sample_index_matches_exact_n2(self):
        rng = np.random.default_rng(123)
        trials = 200_000
        counts = np.zeros(3)
        for _ in range(trials):
            counts[sample_index(2, 1.0, rng)] += 1
        freq = counts / trials
        se = np.sqrt(N2_R1_PMF * (1 - N2_R1_PMF) / trials)
        assert np.all(np.abs(freq - N2_R1_PMF) <= 3.0 * se)

    def test_sample_index_n1(self):
        rng = np.random.default_rng(7)
        trials = 100_000
        hits = sum(sample_index(1, 1.0, rng) for _ in range(trials))
        target = math.exp(-1.0)
        se = math.sqrt(target * (1 - target) / trials)
        assert abs(hits / trials - target) <= 3.0 * se

    def test_heavy_threshold(self):
        rng = np.random.default_rng(3)
        draws = [sample_index(5, 2.0, rng) for _ in range(2000)]
        profile = bernoulli_probs(5, 2.0)
        assert np.mean(draws) <= profile.probs.sum() + 3.0 * math.sqrt(profile.probs.sum() / 2000 + 1e-12) + 0.05

    def test_ginibre2_matches_exact(self):
        rng = np.random.default_rng(99)
        trials = 300_000
        pmf = ginibre2_mc(1.0, trials, rng)
        freq = pmf.probs()
        se = np.sqrt(N2_R1_PMF * (1 - N2_R1_PMF) / trials)
        assert np.all(np.abs(freq - N2_R1_PMF) <= 3.0 * se)

    def test_ginibre2_tiny_radius(self):
        rng = np.random.default_rng(5)
        pmf = ginibre2_mc(1e-9, 2000, rng)
        assert pmf.probs()[2] == pytest.approx(1.0, abs=1e-12)

    def test_ginibre2_domain(self):
        rng = np.random.default_rng(0)
        with pytest.raises(DomainError):
            ginibre2_mc(1.0, 0, rng)
