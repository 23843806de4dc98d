"""Airy evaluator against frozen high-precision references.

The reference values were computed with mpmath at 40 decimal digits and
frozen here, so this suite never trusts the code under test for its own
expectations.  scipy.special.airy serves as a second, independent
cross-oracle over a dense sample.
"""

import math

import numpy as np
import pytest
import scipy.special

from airylab import AirylabError, ai_values, airy_ai

# (z, Ai(z)) pairs, mpmath mp.airyai at mp.dps = 40
AI_ORACLE = [
    (-199.5, 0.09256111899142596927388),
    (-150.5, 0.02482255551365513124093),
    (-50.25, -0.1022800726250564528749),
    (-20.0, -0.1764061270779846895902),
    (-8.5, -0.3302902376302088790217),
    (-8.0, -0.05270505035638620262208),
    (-7.9, 0.04170188361738670938698),
    (-5.5, 0.01778154127657497560302),
    (-2.338107410459767, 2.743319340666282999607e-17),
    (-1.0, 0.5355608832923521187995),
    (-0.5, 0.4757280916105395887986),
    (0.0, 0.3550280538878172392601),
    (0.5, 0.2316936064808334897691),
    (1.0, 0.1352924163128814155241),
    (2.5, 0.01572592338047048999527),
    (5.0, 0.0001083444281360744173499),
    (5.999, 9.972489426853128127738e-6),
    (6.0, 9.947694360252889570239e-6),
    (6.001, 9.922958979844528123226e-6),
    (7.5, 1.917256067513430751645e-7),
    (10.0, 1.104753255289868593355e-10),
    (25.0, 8.116026824691386683758e-38),
    (87.3, 6.319658311217842771464e-238),
    # Ai(150) ~ 1.015e-533 lies far below the double floor; the evaluator
    # must underflow gracefully to exactly 0 with a tiny estimate
    (150.0, 0.0),
]

FIRST_ZERO = -2.338107410459767038489197


class TestReferenceTable:
    @pytest.mark.parametrize("z,expected", AI_ORACLE,
                             ids=[f"z={z}" for z, _ in AI_ORACLE])
    def test_value(self, z, expected):
        res = airy_ai(z)
        # near zeros and in the positive-axis cancellation region the
        # achievable error is absolute, set by the O(1) series envelope
        assert abs(res.value - expected) <= 1e-13 * max(abs(expected), 0.5)

    @pytest.mark.parametrize("z,expected", AI_ORACLE,
                             ids=[f"z={z}" for z, _ in AI_ORACLE])
    def test_error_estimate_honest_and_tight(self, z, expected):
        res = airy_ai(z)
        assert abs(res.value - expected) <= res.est_error + 1e-320
        assert res.est_error <= max(1e-8 * abs(expected), 1e-11)

    def test_asymptotic_rows_keep_relative_precision(self):
        # away from zeros and the series seam there is no cancellation,
        # so the deep-decay rows must hold to relative accuracy
        for z, expected in AI_ORACLE:
            if abs(z) >= 7.5 and expected != 0.0:
                res = airy_ai(z)
                assert abs(res.value - expected) <= 1e-12 * abs(expected)

    def test_gamma_identity_at_origin(self):
        exact = 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)
        assert abs(airy_ai(0.0).value - exact) <= 1e-14

    def test_first_zero(self):
        assert abs(airy_ai(FIRST_ZERO).value) < 1e-16


class TestVectorized:
    def test_matches_scalar(self):
        z = np.array([-30.0, -2.5, 0.0, 1.25, 40.0])
        vals = ai_values(z)
        for zi, vi in zip(z, vals):
            assert vi == airy_ai(float(zi)).value

    def test_scipy_cross_oracle(self):
        rng = np.random.default_rng(20260822)
        z = rng.uniform(-30.0, 5.0, size=400)
        ours = ai_values(z)
        ref = scipy.special.airy(z)[0]
        scale = np.maximum(np.abs(ref), 1e-280)
        assert np.max(np.abs(ours - ref) / scale) < 1e-12

    def test_positive_axis_monotone_decay(self):
        z = np.linspace(0.0, 80.0, 1601)
        vals = ai_values(z)
        assert np.all(vals > 0.0)
        assert np.all(np.diff(vals) < 0.0)

    def test_preserves_shape(self):
        z = np.linspace(-3.0, 3.0, 12).reshape(3, 4)
        assert ai_values(z).shape == (3, 4)


class TestDomain:
    def test_domain_boundary(self):
        airy_ai(1.0e4)
        airy_ai(-1.0e4)
        with pytest.raises(AirylabError):
            airy_ai(1.1e4)
        with pytest.raises(AirylabError):
            airy_ai(float("nan"))
        with pytest.raises(AirylabError):
            ai_values(np.array([0.0, -2.0e4]))


class TestDifferentialEquation:
    @staticmethod
    def _residual(z0: float, h: float) -> float:
        vm, v0, vp = (airy_ai(z0 - h).value, airy_ai(z0).value,
                      airy_ai(z0 + h).value)
        second = (vp - 2.0 * v0 + vm) / (h * h)
        return abs(second - z0 * v0)

    @pytest.mark.parametrize("z0", [-6.3, -1.0, 0.7, 3.1])
    def test_second_order_convergence(self, z0):
        h = 1.0e-2
        r1 = self._residual(z0, h)
        r2 = self._residual(z0, h / 2.0)
        assert r1 < 5e-3
        # central differences converge at O(h^2): halving h quarters r
        assert r2 == pytest.approx(r1 / 4.0, rel=0.15)
