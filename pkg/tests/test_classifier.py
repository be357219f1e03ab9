import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from elotune.classifier import (
    ClassificationMetrics,
    LabeledPoint,
    LogisticModel,
    evaluate_metrics,
    fit_logistic,
    log_likelihood,
    predict_prob,
    score,
    two_sided_p,
)
from elotune.errors import DegenerateFitError, DomainError, SeparationError


def two_point_design():
    pts = [LabeledPoint(1.0, 1)] * 75 + [LabeledPoint(1.0, 0)] * 25
    pts += [LabeledPoint(-1.0, 1)] * 25 + [LabeledPoint(-1.0, 0)] * 75
    return pts


def noisy_dataset(seed=0, n=400, b0=0.3, b1=0.8):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=n)
    p = 1 / (1 + np.exp(-(b0 + b1 * x)))
    y = (rng.random(n) < p).astype(int)
    return [LabeledPoint(float(a), int(b)) for a, b in zip(x, y)]


def model(b0, b1):
    return LogisticModel(b0, b1, 1.0, 1.0, b0, b1, 0.5, 0.5, 0, True)


class TestFit:
    def test_two_point_design(self):
        m = fit_logistic(two_point_design())
        assert abs(m.beta_1 - math.log(3)) < 1e-6
        assert abs(m.beta_0) < 1e-8
        assert m.converged and m.n_obs == 200

    def test_two_point_standard_errors(self):
        # saturated design: Var(b0 +- b1) = 1 / (n p (1-p)) per arm, so Var(b1) = (2 / 18.75) / 4
        m = fit_logistic(two_point_design())
        assert m.se_1 == pytest.approx(math.sqrt(2 / 18.75) / 2, abs=1e-9)
        assert m.se_0 == pytest.approx(m.se_1, abs=1e-9)
        assert m.z_1 == pytest.approx(m.beta_1 / m.se_1, abs=1e-12)

    def test_score_vanishes_at_optimum(self):
        pts = noisy_dataset()
        m = fit_logistic(pts)
        x = np.array([p.x for p in pts])
        y = np.array([p.y for p in pts], dtype=float)
        assert np.max(np.abs(score([m.beta_0, m.beta_1], x, y))) < 1e-8

    def test_gradient_matches_finite_differences(self):
        pts = noisy_dataset(1, 200)
        x = np.array([p.x for p in pts])
        y = np.array([p.y for p in pts], dtype=float)
        rng = np.random.default_rng(5)
        h = 1e-5
        for _ in range(10):
            beta = rng.uniform(-2, 2, size=2)
            numeric = []
            for i in range(2):
                e = np.zeros(2)
                e[i] = h
                numeric.append((log_likelihood(beta + e, x, y) - log_likelihood(beta - e, x, y)) / (2 * h))
            assert np.max(np.abs(score(beta, x, y) - numeric)) < 1e-6

    def test_label_flip_negates(self):
        pts = noisy_dataset(2)
        m = fit_logistic(pts)
        f = fit_logistic([LabeledPoint(p.x, 1 - p.y) for p in pts])
        assert abs(f.beta_0 + m.beta_0) < 1e-8
        assert abs(f.beta_1 + m.beta_1) < 1e-8

    @pytest.mark.parametrize("c", [0.01, 3.0, 400.0])
    def test_feature_scaling(self, c):
        pts = noisy_dataset(3)
        m = fit_logistic(pts)
        s = fit_logistic([LabeledPoint(p.x * c, p.y) for p in pts])
        assert abs(s.beta_1 - m.beta_1 / c) < 1e-6
        assert abs(s.beta_0 - m.beta_0) < 1e-8
        for p in pts[:20]:
            assert abs(predict_prob(s, p.x * c) - predict_prob(m, p.x)) < 1e-8

    def test_symmetric_data_zero_intercept(self):
        pts = noisy_dataset(4, 150)
        sym = pts + [LabeledPoint(-p.x, 1 - p.y) for p in pts]
        assert abs(fit_logistic(sym).beta_0) < 1e-8

    def test_rating_scale_feature(self):
        # differences in rating points give small slopes, as in practice
        pts = [LabeledPoint(p.x * 150, p.y) for p in noisy_dataset(6, 500, 0.0, 1.2)]
        m = fit_logistic(pts)
        assert m.beta_1 > 0 and m.p_1 < 1e-6 and m.converged

    def test_single_class(self):
        with pytest.raises(DegenerateFitError):
            fit_logistic([LabeledPoint(1.0, 1), LabeledPoint(2.0, 1)])

    def test_too_few(self):
        with pytest.raises(DegenerateFitError):
            fit_logistic([LabeledPoint(1.0, 1)])

    def test_separation(self):
        with pytest.raises(SeparationError):
            fit_logistic([LabeledPoint(-2.0, 0), LabeledPoint(-1.0, 0), LabeledPoint(1.0, 1), LabeledPoint(2.0, 1)])

    def test_bad_label(self):
        with pytest.raises(DomainError):
            fit_logistic([LabeledPoint(1.0, 2), LabeledPoint(2.0, 0)])

    def test_p_values(self):
        assert two_sided_p(0.0) == 1.0
        assert two_sided_p(1.959963984540054) == pytest.approx(0.05, abs=1e-12)
        assert two_sided_p(-3.0) == two_sided_p(3.0)


class TestPredict:
    def test_zero_intercept_at_origin(self):
        for b1 in (-1.0, 0.0, 0.0046, 7.0):
            assert predict_prob(model(0.0, b1), 0.0) == 0.5

    def test_reference_coefficients(self):
        assert predict_prob(model(-0.0623, 0.0046), 100) == pytest.approx(0.5981349351825069, abs=1e-12)
        assert predict_prob(model(-0.1298, 0.0056), 0) == pytest.approx(0.46759548327929246, abs=1e-12)
        assert round(predict_prob(model(-0.1298, 0.0056), 0), 4) == 0.4676

    def test_extreme_inputs_do_not_overflow(self):
        assert predict_prob(model(0.0, 1.0), 1e6) == 1.0
        assert predict_prob(model(0.0, 1.0), -1e6) == 0.0

    @given(st.floats(-5, 5), st.floats(-0.05, 0.05), st.floats(-1000, 1000))
    def test_flip_complement(self, b0, b1, x):
        assert abs(predict_prob(model(b0, b1), x) + predict_prob(model(-b0, b1), -x) - 1) < 1e-12

    @given(st.floats(-3, 3), st.floats(1e-4, 1.0), st.floats(-50, 50), st.floats(0.01, 10))
    def test_increasing_in_x(self, b0, b1, x, dx):
        assert predict_prob(model(b0, b1), x + dx) >= predict_prob(model(b0, b1), x)


class TestMetrics:
    balanced = [LabeledPoint(1.0, 1), LabeledPoint(2.0, 1), LabeledPoint(-1.0, 0), LabeledPoint(-2.0, 0)]

    def test_perfect(self):
        m = evaluate_metrics(model(0.0, 1.0), self.balanced)
        assert (m.accuracy, m.f1) == (1.0, 1.0)

    def test_always_positive(self):
        m = evaluate_metrics(model(100.0, 0.0), self.balanced)
        assert m.accuracy == 0.5
        assert m.f1 == pytest.approx(2 / 3, abs=1e-15)

    def test_always_negative(self):
        m = evaluate_metrics(model(-100.0, 0.0), self.balanced)
        assert m.f1 == 0.0 and m.accuracy == 0.5

    def test_threshold_inclusive(self):
        m = evaluate_metrics(model(0.0, 1.0), [LabeledPoint(0.0, 1)])
        assert m.tp == 1

    def test_errors(self):
        with pytest.raises(DomainError):
            evaluate_metrics(model(0.0, 1.0), [])
        with pytest.raises(DomainError):
            evaluate_metrics(model(0.0, 1.0), self.balanced, threshold=1.0)

    @settings(max_examples=50)
    @given(st.integers(0, 20), st.integers(0, 20), st.integers(0, 20), st.integers(0, 20))
    def test_invariants(self, tp, fp, tn, fn):
        if tp + fp + tn + fn == 0:
            return
        m = ClassificationMetrics(tp, fp, tn, fn)
        assert m.accuracy == (tp + tn) / (tp + fp + tn + fn)
        assert 0 <= m.f1 <= 1
        p, r = m.precision, m.recall
        assert m.f1 == (0.0 if p + r == 0 else 2 * p * r / (p + r))
