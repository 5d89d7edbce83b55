import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wignerreg.weights import (
    DirectSumWeight,
    WeightFunction,
    WeightQuadruple,
    condition_alpha_violation,
    condition_delta_violation,
    condition_gamma_violation,
    derive_weights,
    eval_conjugate_sum,
    eval_direct_sum,
    eval_weight,
    lp_mass,
    lp_threshold,
    parse_direct_sum,
    parse_weight,
    prop1_violation,
    prop2_ratio,
    prop4_constant,
    prop5_violation,
    young_conjugate,
    young_conjugate_closed,
)

G2 = WeightFunction("gevrey", 2.0)
LOG1 = WeightFunction("logpow", 1.0)
E = math.e


class TestEvalWeight:
    def test_normalized_gevrey_vanishes_on_unit_interval(self):
        assert eval_weight(G2, 1.0) == 0.0
        assert eval_weight(G2, 0.3) == 0.0

    def test_logpow(self):
        assert eval_weight(LOG1, E - 1) == pytest.approx(1.0, abs=1e-15)

    def test_gevrey_at_nine(self):
        assert eval_weight(G2, 9.0) == pytest.approx(2.0, abs=1e-15)

    def test_even(self):
        assert eval_weight(G2, -9.0) == eval_weight(G2, 9.0)

    def test_non_finite(self):
        with pytest.raises(ValueError):
            eval_weight(G2, math.inf)

    def test_bad_parameters(self):
        with pytest.raises(ValueError):
            WeightFunction("gevrey", 1.0)
        with pytest.raises(ValueError):
            WeightFunction("logpow", 0.5)
        with pytest.raises(ValueError):
            WeightFunction("komatsu", 2.0)


class TestYoungConjugate:
    def test_zero(self):
        for w in (G2, WeightFunction("gevrey", 3.0), WeightFunction("logpow", 2.0, True)):
            assert young_conjugate(w, 0.0) == pytest.approx(0.0, abs=1e-9)

    def test_closed_form_points(self):
        assert young_conjugate(G2, E / 2) == pytest.approx(1.0, abs=1e-9)
        assert young_conjugate(G2, 0.25) == pytest.approx(0.0, abs=1e-9)

    def test_negative_argument(self):
        with pytest.raises(ValueError):
            young_conjugate(G2, -1.0)

    def test_matches_closed_form(self):
        for s in np.linspace(0.0, 40.0, 100):
            got, ref = young_conjugate(G2, s), young_conjugate_closed(G2, s)
            assert abs(got - ref) <= 1e-6 * max(1.0, abs(ref))

    def test_matches_grid_maximization(self):
        ts = np.linspace(0, 60, 600001)
        for w in (G2, LOG1.as_normalized(), WeightFunction("logpow", 3.0)):
            for s in (0.1, 0.7, 0.95):
                if s >= w.slope_limit():
                    continue
                grid = float(np.max(ts * s - w.phi(ts)))
                assert young_conjugate(w, s) == pytest.approx(grid, abs=1e-6)

    def test_convex_and_nondecreasing(self):
        ss = np.linspace(0, 20, 81)
        vals = np.array([young_conjugate(G2, s) for s in ss])
        assert np.all(np.diff(vals) >= -1e-9)
        mids = np.array([young_conjugate(G2, (a + b) / 2) for a, b in zip(ss[:-1], ss[1:])])
        assert np.all(mids <= (vals[:-1] + vals[1:]) / 2 + 1e-9)

    @settings(max_examples=30, deadline=None)
    @given(st.floats(1.1, 5.0), st.floats(0.0, 30.0))
    def test_young_inequality(self, sigma, s):
        # t s <= phi(t) + phi*(s) for all t
        w = WeightFunction("gevrey", sigma)
        conj = young_conjugate(w, s)
        ts = np.linspace(0, 20, 201)
        assert np.all(ts * s <= w.phi(ts) + conj + 1e-7)


class TestDirectSums:
    def test_mixed_sum(self):
        W = DirectSumWeight((G2, LOG1))
        assert eval_direct_sum(W, (1.0, E - 1)) == pytest.approx(1.0, abs=1e-15)

    def test_origin(self):
        W = parse_direct_sum("gevrey:2,logpow:1,gevrey:3")
        assert eval_direct_sum(W, (0, 0, 0)) == 0.0

    def test_sum_at_nine(self):
        assert eval_direct_sum(DirectSumWeight((G2, G2)), (9, 9)) == pytest.approx(4.0, abs=1e-14)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            eval_direct_sum(DirectSumWeight((G2, G2)), (1, 2, 3))

    def test_conjugate_sum(self):
        W = DirectSumWeight((G2, G2))
        assert eval_conjugate_sum(W, (0, 0)) == pytest.approx(0.0, abs=1e-9)
        assert eval_conjugate_sum(W, (E / 2, E / 2)) == pytest.approx(2.0, abs=1e-8)
        mixed = DirectSumWeight((G2, LOG1))
        assert eval_conjugate_sum(mixed, (E / 2, 0.5)) == pytest.approx(1.0 + young_conjugate(LOG1, 0.5), abs=1e-8)

    def test_conjugate_sum_negative(self):
        with pytest.raises(ValueError):
            eval_conjugate_sum(DirectSumWeight((G2,)), (-0.1,))

    def test_subadditivity_constant(self):
        rng = np.random.default_rng(0)
        W = parse_direct_sum("gevrey:2,logpow:1")
        xs, ys = rng.uniform(-50, 50, (500, 2)), rng.uniform(-50, 50, (500, 2))
        assert prop5_violation(W, xs, ys) <= 0


class TestQuadruples:
    def test_all_equal(self):
        W = parse_direct_sum("gevrey:2", 4)
        d = derive_weights(WeightQuadruple(W, W))
        assert d.Omega == W and d.Sigma == W

    def test_permutation(self):
        a1, a2, b1, b2 = (parse_weight(s) for s in ("gevrey:2", "gevrey:3", "logpow:1", "logpow:2"))
        d = derive_weights(WeightQuadruple(DirectSumWeight((a1, a2)), DirectSumWeight((b1, b2))))
        assert d.Omega.components == (a1, b2)
        assert d.Sigma.components == (b1, a2)

    def test_involution(self):
        rng = np.random.default_rng(7)
        specs = ["gevrey:2", "gevrey:3", "gevrey:1.5", "logpow:1", "logpow:2"]
        for _ in range(10):
            om = ",".join(rng.choice(specs, 4))
            sg = ",".join(rng.choice(specs, 4))
            q = WeightQuadruple(parse_direct_sum(om), parse_direct_sum(sg))
            assert derive_weights(derive_weights(q)) == q

    def test_odd_length_rejected(self):
        W = parse_direct_sum("gevrey:2", 3)
        with pytest.raises(ValueError):
            WeightQuadruple(W, W)


class TestSpecs:
    def test_round_trip(self):
        for s in ("gevrey:2", "logpow:1", "logpow:2:norm", "gevrey:3:raw"):
            assert parse_weight(parse_weight(s).spec()) == parse_weight(s)

    def test_repeat_to_length(self):
        assert len(parse_direct_sum("gevrey:2", 4)) == 4

    @pytest.mark.parametrize("bad", ["gevrey", "gevrey:x", "foo:2", "gevrey:2:odd", ""])
    def test_bad_specs(self, bad):
        with pytest.raises(ValueError):
            parse_direct_sum(bad)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            parse_direct_sum("gevrey:2,gevrey:3", 4)


class TestDefiningConditions:
    @pytest.mark.parametrize("spec", ["gevrey:2", "gevrey:3", "logpow:1", "logpow:2:norm"])
    def test_conditions(self, spec):
        w = parse_weight(spec)
        xs = np.linspace(0, 1e4, 20001)
        assert condition_alpha_violation(w, xs) <= 1e-12
        assert condition_gamma_violation(w, xs) <= 1e-12
        assert condition_delta_violation(w, np.linspace(0, 30, 121)) <= 1e-9

    def test_sublinear_on_sample(self):
        for spec in ("gevrey:2", "logpow:1"):
            w = parse_weight(spec)
            assert w(1e12) / 1e12 < 1e-5


class TestPropositionChecks:
    XS = np.linspace(0.0, 100.0, 2001)[1:]

    @pytest.mark.parametrize("spec", ["gevrey:2", "gevrey:3", "logpow:2:norm"])
    @pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
    def test_power_bound(self, spec, lam):
        w = parse_weight(spec)
        assert prop1_violation(w, lam, range(21), self.XS) <= 1e-7

    @pytest.mark.parametrize("spec", ["gevrey:2", "gevrey:3", "logpow:2:norm"])
    def test_infimum_bound(self, spec):
        w = parse_weight(spec)
        lam = 1.0 / w.b + 1.0
        assert prop2_ratio(w, lam, self.XS[self.XS >= 1]) <= 1 + 1e-7

    @pytest.mark.parametrize("spec", ["gevrey:2", "gevrey:3", "logpow:2:norm"])
    def test_factorial_constant_finite(self, spec):
        c = prop4_constant(parse_weight(spec), 1.0)
        assert math.isfinite(c) and c >= 1.0


class TestIntegrability:
    def test_mass_converges_above_threshold(self):
        w = WeightFunction("logpow", 2.0)
        lam = lp_threshold(w, 1.0, 1) * 2
        a, b = lp_mass(w, lam, 1.0, 1, 1e3), lp_mass(w, lam, 1.0, 1, 1e6)
        assert b / a < 1.01

    def test_mass_diverges_below_threshold(self):
        w = WeightFunction("logpow", 2.0)
        lam = lp_threshold(w, 1.0, 1) * 0.5
        a, b = lp_mass(w, lam, 1.0, 1, 1e3), lp_mass(w, lam, 1.0, 1, 1e6)
        assert b / a > 10

    def test_gevrey_always_integrable(self):
        w = WeightFunction("gevrey", 2.0)
        a, b = lp_mass(w, 0.2, 2.0, 2, 1e4), lp_mass(w, 0.2, 2.0, 2, 1e5)
        assert b / a < 1.001
