import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ginibre_index import DomainError, IndexPMF, empirical_rate, index_pmf_exact, reconstruct_log_pmf


class TestReconstruct:
    def test_uniform(self):
        pmf = reconstruct_log_pmf([1.0, 1.0])
        assert pmf.probs() == pytest.approx([1 / 3, 1 / 3, 1 / 3], abs=1e-14)

    def test_single_ratio(self):
        pmf = reconstruct_log_pmf([2.0])
        assert pmf.probs() == pytest.approx([1 / 3, 2 / 3], abs=1e-14)

    def test_unit_index_law(self):
        # e^-1 / (1 - e^-1) telescopes back to the n=1 law
        pmf = reconstruct_log_pmf([0.5819767])
        assert pmf.probs() == pytest.approx([0.6321206, 0.3678794], abs=1e-7)

    @pytest.mark.parametrize("bad", [[0.5, -1.0], [0.0], [math.inf], [math.nan]])
    def test_rejects_nonpositive(self, bad):
        with pytest.raises(DomainError):
            reconstruct_log_pmf(bad)

    @given(st.integers(2, 40), st.floats(0.2, 0.95))
    @settings(max_examples=40, deadline=None)
    def test_roundtrip_from_exact_ratios(self, n, radius):
        # reconstruct(exact adjacent ratios) reproduces the exact pmf
        pmf = index_pmf_exact(n, radius)
        lp = pmf.log_probs
        finite = np.isfinite(lp)
        if not finite.all():
            return  # ratios undefined through -inf masses
        ratios = np.exp(np.diff(lp))
        rebuilt = reconstruct_log_pmf(ratios)
        assert np.max(np.abs(rebuilt.log_probs - lp)) < 1e-12


class TestEmpiricalRate:
    def test_exact_n2_curve(self):
        # frozen from -(1/4) ln of the exact pmf, shifted by the minimum
        curve = empirical_rate(index_pmf_exact(2, 1.0), 2.0)
        assert curve.fractions == pytest.approx([0.0, 0.5, 1.0])
        assert curve.values == pytest.approx([0.0, 0.0435777, 0.5587721], abs=1e-6)

    def test_minimum_is_zero(self):
        for n, radius in [(5, 0.6), (30, 0.4), (50, 0.9)]:
            curve = empirical_rate(index_pmf_exact(n, radius), 2.0)
            assert curve.values.min() == 0.0

    def test_concentrated_pmf(self):
        lp = np.log(np.array([1e-8, 1.0 - 2e-8, 1e-8]))
        pmf = IndexPMF(2, lp - math.log(np.exp(lp).sum()))
        curve = empirical_rate(pmf, 2.0)
        assert curve.values[1] == 0.0
        assert curve.values[0] > 0.0 and curve.values[2] > 0.0

    def test_requires_normalized(self):
        with pytest.raises(DomainError):
            empirical_rate(IndexPMF(1, np.array([0.0, 0.0])), 2.0)

    def test_beta_scaling(self):
        pmf = index_pmf_exact(4, 0.7)
        assert empirical_rate(pmf, 1.0).values == pytest.approx(2.0 * empirical_rate(pmf, 2.0).values)
