"""Single-feature logistic regression of match outcome on rating difference.

The model is ``P(y = 1 | x) = 1 / (1 + exp(-(b0 + b1 * x)))`` fitted by
Newton-Raphson on the Bernoulli log-likelihood. Standard errors come from the
inverse observed information at the optimum, and p-values are two-sided
normal tail probabilities ``erfc(|z| / sqrt(2))`` using ``math.erfc``
(the C library's complementary error function, accurate to a few ulp).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from elotune.errors import DegenerateFitError, DomainError, SeparationError

MAX_ITER = 100
SCORE_TOL = 1e-10
STEP_TOL = 1e-10
SEPARATION_BOUND = 1e3


class LabeledPoint(NamedTuple):
    x: float  # rating_1 - rating_2
    y: int  # 1 if player 1 won


@dataclass(frozen=True)
class LogisticModel:
    beta_0: float
    beta_1: float
    se_0: float
    se_1: float
    z_0: float
    z_1: float
    p_0: float
    p_1: float
    n_obs: int
    converged: bool
    iterations: int = 0


@dataclass(frozen=True)
class ClassificationMetrics:
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn

    @property
    def accuracy(self) -> float:
        return (self.tp + self.tn) / self.total

    @property
    def precision(self) -> float:
        predicted = self.tp + self.fp
        return self.tp / predicted if predicted else 0.0

    @property
    def recall(self) -> float:
        actual = self.tp + self.fn
        return self.tp / actual if actual else 0.0

    @property
    def f1(self) -> float:
        p, r = self.precision, self.recall
        return 2 * p * r / (p + r) if p + r > 0 else 0.0


def _arrays(points: Sequence[LabeledPoint]) -> tuple[np.ndarray, np.ndarray]:
    x = np.fromiter((p[0] for p in points), dtype=float, count=len(points))
    y = np.fromiter((p[1] for p in points), dtype=float, count=len(points))
    return x, y


def _sigmoid(eta: np.ndarray) -> np.ndarray:
    # split by sign so exp never overflows
    out = np.empty_like(eta)
    pos = eta >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-eta[pos]))
    e = np.exp(eta[~pos])
    out[~pos] = e / (1.0 + e)
    return out


def log_likelihood(beta: Sequence[float], x: np.ndarray, y: np.ndarray) -> float:
    eta = beta[0] + beta[1] * x
    # log p = -log(1 + e^-eta), log(1 - p) = -log(1 + e^eta)
    return float(np.sum(-y * np.logaddexp(0.0, -eta) - (1.0 - y) * np.logaddexp(0.0, eta)))


def score(beta: Sequence[float], x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Analytic gradient of :func:`log_likelihood`."""
    resid = y - _sigmoid(beta[0] + beta[1] * x)
    return np.array([resid.sum(), (resid * x).sum()])


def information(beta: Sequence[float], x: np.ndarray) -> np.ndarray:
    """Observed information (negative Hessian); equals the Fisher information for the logit link."""
    p = _sigmoid(beta[0] + beta[1] * x)
    w = p * (1.0 - p)
    return np.array([[w.sum(), (w * x).sum()], [(w * x).sum(), (w * x * x).sum()]])


def two_sided_p(z: float) -> float:
    return math.erfc(abs(z) / math.sqrt(2.0))


def fit_logistic(points: Sequence[LabeledPoint]) -> LogisticModel:
    if len(points) < 2:
        raise DegenerateFitError(f"need at least 2 points, got {len(points)}")
    x, y = _arrays(points)
    if np.any((y != 0) & (y != 1)):
        raise DomainError("labels must be 0 or 1")
    if y.min() == y.max():
        raise DegenerateFitError("only one outcome class present")
    if x.min() == x.max():
        raise DegenerateFitError("feature is constant; slope is not identifiable")
    # With separated classes the score decays like exp(-|beta|) while beta grows
    # only linearly, so the score tolerance fires long before |beta| > 1e3.
    # One feature makes (quasi-)complete separation a simple range check.
    lo0, hi0 = x[y == 0].min(), x[y == 0].max()
    lo1, hi1 = x[y == 1].min(), x[y == 1].max()
    if hi0 <= lo1 or hi1 <= lo0:
        raise SeparationError("classes are separated by a threshold on x; the MLE does not exist")

    beta = np.zeros(2)
    ll = log_likelihood(beta, x, y)
    converged = False
    it = 0
    for it in range(1, MAX_ITER + 1):
        grad = score(beta, x, y)
        if np.max(np.abs(grad)) < SCORE_TOL:
            converged = True
            break
        try:
            step = np.linalg.solve(information(beta, x), grad)
        except np.linalg.LinAlgError:
            raise SeparationError("information matrix became singular") from None
        # step halving keeps the likelihood monotone
        t = 1.0
        while True:
            candidate = beta + t * step
            cand_ll = log_likelihood(candidate, x, y)
            if cand_ll >= ll or t < 1e-8:
                break
            t *= 0.5
        beta, ll = candidate, cand_ll
        if np.max(np.abs(beta)) > SEPARATION_BOUND:
            raise SeparationError(f"coefficients diverged to {beta.tolist()}; data perfectly separable")
        if np.max(np.abs(t * step)) < STEP_TOL:
            converged = True
            break

    try:
        cov = np.linalg.inv(information(beta, x))
        se = np.sqrt(np.diag(cov))
    except np.linalg.LinAlgError:
        se = np.array([math.inf, math.inf])
    b0, b1 = float(beta[0]), float(beta[1])
    z0, z1 = b0 / se[0], b1 / se[1]
    return LogisticModel(
        beta_0=b0,
        beta_1=b1,
        se_0=float(se[0]),
        se_1=float(se[1]),
        z_0=float(z0),
        z_1=float(z1),
        p_0=two_sided_p(z0),
        p_1=two_sided_p(z1),
        n_obs=len(points),
        converged=converged,
        iterations=it,
    )


def predict_prob(model: LogisticModel, x: float) -> float:
    eta = model.beta_0 + model.beta_1 * x
    if eta >= 0:
        return 1.0 / (1.0 + math.exp(-eta))
    e = math.exp(eta)
    return e / (1.0 + e)


def evaluate_metrics(
    model: LogisticModel, points: Sequence[LabeledPoint], threshold: float = 0.5
) -> ClassificationMetrics:
    """Confusion counts with "player 1 wins" as the positive class."""
    if not points:
        raise DomainError("no points to evaluate")
    if not 0 < threshold < 1:
        raise DomainError(f"threshold must lie in (0, 1), got {threshold}")
    tp = fp = tn = fn = 0
    for x, y in points:
        predicted = predict_prob(model, x) >= threshold
        if predicted:
            if y == 1:
                tp += 1
            else:
                fp += 1
        elif y == 1:
            fn += 1
        else:
            tn += 1
    return ClassificationMetrics(tp, fp, tn, fn)
