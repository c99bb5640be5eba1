"""Bayesian learners and the helpful-teacher model over finite rule spaces.

Three agents, all exact inference over finite supports:

- ``l0_posterior``: a non-pedagogical learner that assumes weak sampling.
  Prior exp(-|r|) over hypotheses, likelihood exp(-beta * Q_r(c)) where
  Q_r(c) counts label disagreements.
- ``t1_distribution``: a teacher distribution over a finite corpus pool,
  proportional to [prior(c) * P_L0(r | c)]^alpha.  The corpus prior prefers
  fewer and shorter examples (2^-|c| * prod 2^-|x_i|) and requires labels
  consistent with the taught rule (softened by ``eta``).
- ``l1_posterior``: a pedagogical learner whose likelihood for hypothesis r
  is the probability a helpful teacher of r would have produced the observed
  corpus, P_T1(c ; r).

All probability arithmetic is in log space with log-sum-exp normalization.
"""

import math
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np
from scipy.special import logsumexp

from .constants import PROB_SUM_TOL
from .corpus import Corpus, RuleSpace
from .errors import DegeneratePool, PoolMissingCorpus, ValidationError
from .regex import RegexAst, description_length, matches

LN2 = math.log(2.0)


@dataclass(frozen=True)
class LearnerParams:
    """beta: error tolerance (>= 0); eta: teacher label-noise slack in [0, 0.5)."""

    beta: float = 1.0
    eta: float = 0.0

    def __post_init__(self):
        if self.beta < 0:
            raise ValidationError("beta must be >= 0")
        if not (0 <= self.eta < 0.5):
            raise ValidationError("eta must lie in [0, 0.5)")


@dataclass(frozen=True)
class TeacherParams:
    """alpha: temperature (>= 1); pool: candidate corpora the teacher chooses among."""

    alpha: float
    pool: tuple
    learner: LearnerParams = LearnerParams()

    def __post_init__(self):
        if self.alpha < 1:
            raise ValidationError("alpha must be >= 1")
        if not self.pool:
            raise ValidationError("teacher pool must be nonempty")
        signatures = [c.signature() for c in self.pool]
        if len(set(signatures)) != len(signatures):
            raise ValidationError("teacher pool contains duplicate corpora")

    def pool_index(self, c: Corpus) -> int | None:
        sig = c.signature()
        for i, member in enumerate(self.pool):
            if member.signature() == sig:
                return i
        return None

    def with_corpus(self, c: Corpus) -> "TeacherParams":
        """Return params whose pool contains ``c`` (appended if absent)."""
        if self.pool_index(c) is not None:
            return self
        return replace(self, pool=self.pool + (c,))


def _finalize(log_weights: np.ndarray) -> tuple:
    log_probs = log_weights - logsumexp(log_weights)
    return tuple(np.exp(log_probs).tolist()), tuple(log_probs.tolist())


def _entropy(probs) -> float:
    return float(-sum(p * math.log(p) for p in probs if p > 0))


@dataclass(frozen=True)
class PosteriorDistribution:
    """Normalized belief over a rule space's hypotheses."""

    space: RuleSpace
    probs: tuple
    log_probs: tuple
    fallback: bool = False

    def __post_init__(self):
        if len(self.probs) != len(self.space.hypotheses):
            raise ValidationError("posterior length must match the space")
        if any(p < 0 for p in self.probs):
            raise ValidationError("probabilities must be nonnegative")
        if abs(sum(self.probs) - 1.0) > PROB_SUM_TOL:
            raise ValidationError("posterior does not sum to 1")

    def prob_of(self, r: RegexAst) -> float:
        return self.probs[self.space.index_of(r)]

    def entropy(self) -> float:
        return _entropy(self.probs)


@dataclass(frozen=True)
class CorpusDistribution:
    """Normalized teacher distribution over a finite corpus pool."""

    pool: tuple
    probs: tuple
    log_probs: tuple

    def __post_init__(self):
        if len(self.probs) != len(self.pool):
            raise ValidationError("distribution length must match the pool")
        if any(p < 0 for p in self.probs):
            raise ValidationError("probabilities must be nonnegative")
        if abs(sum(self.probs) - 1.0) > PROB_SUM_TOL:
            raise ValidationError("corpus distribution does not sum to 1")

    def entropy(self) -> float:
        return _entropy(self.probs)

    def argmax(self) -> int:
        return max(range(len(self.probs)), key=self.probs.__getitem__)


@lru_cache(maxsize=1 << 16)
def error_count(c: Corpus, r: RegexAst) -> int:
    """Q_r(c): number of examples whose label disagrees with r."""
    return sum(1 for e in c.examples if matches(r, e.text) != e.is_positive)


def log_prior(space: RuleSpace) -> tuple:
    """Normalized log description-length prior over the space."""
    raw = np.array([-float(description_length(h)) for h in space.hypotheses])
    return tuple((raw - logsumexp(raw)).tolist())


@lru_cache(maxsize=1 << 12)
def l0_posterior(
    space: RuleSpace, c: Corpus, params: LearnerParams = LearnerParams()
) -> PosteriorDistribution:
    """Weak-sampling posterior: P(r | c) ∝ exp(-|r|) * exp(-beta * Q_r(c))."""
    log_weights = np.array(
        [
            -float(description_length(r)) - params.beta * error_count(c, r)
            for r in space.hypotheses
        ]
    )
    probs, log_probs = _finalize(log_weights)
    return PosteriorDistribution(space, probs, log_probs)


def teacher_prior_log_score(c: Corpus, r: RegexAst, eta: float = 0.0) -> float:
    """log of the unnormalized corpus prior 2^-|c| * prod 2^-|x_i| * prod w_i.

    w_i is 1 for a correctly labeled example and eta/(1-eta) for a mislabeled
    one; with eta = 0 any mislabeled example sends the score to -inf.
    """
    total_len = len(c.examples) + sum(len(e.text) for e in c.examples)
    mislabeled = error_count(c, r)
    if mislabeled == 0:
        return -total_len * LN2
    if eta == 0.0:
        return -math.inf
    return -total_len * LN2 + mislabeled * math.log(eta / (1 - eta))


def teacher_prior_score(c: Corpus, r: RegexAst, eta: float = 0.0) -> float:
    """Unnormalized corpus-prior score (consumers normalize over their pool)."""
    return math.exp(teacher_prior_log_score(c, r, eta))


def _check_depth(depth: int):
    # Reserved for deeper teacher/learner recursion; only one level exists.
    if depth != 1:
        raise ValueError("recursion depth beyond 1 is not implemented")


@lru_cache(maxsize=1 << 12)
def t1_distribution(
    r: RegexAst, space: RuleSpace, tp: TeacherParams, depth: int = 1
) -> CorpusDistribution:
    """Teacher distribution over the pool: P(c ; r) ∝ [prior(c) * P_L0(r|c)]^alpha."""
    _check_depth(depth)
    r_index = space.index_of(r)  # raises if r is not a hypothesis of the space
    log_weights = np.empty(len(tp.pool))
    for j, corpus in enumerate(tp.pool):
        prior = teacher_prior_log_score(corpus, r, tp.learner.eta)
        if prior == -math.inf:
            log_weights[j] = -math.inf
            continue
        informativity = l0_posterior(space, corpus, tp.learner).log_probs[r_index]
        log_weights[j] = tp.alpha * (prior + informativity)
    if np.all(np.isneginf(log_weights)):
        raise DegeneratePool(
            f"every pool corpus has zero teacher-prior score for {r}"
        )
    probs, log_probs = _finalize(log_weights)
    return CorpusDistribution(tp.pool, probs, log_probs)


def l1_posterior(
    space: RuleSpace, c: Corpus, tp: TeacherParams, depth: int = 1
) -> PosteriorDistribution:
    """Pedagogical posterior: P(r | c) ∝ exp(-|r|) * P_T1(c ; r).

    Hypotheses whose teacher distribution is degenerate contribute zero
    likelihood.  If every hypothesis is degenerate or assigns the observed
    corpus probability zero, falls back to the weak-sampling posterior with
    ``fallback=True``.
    """
    _check_depth(depth)
    c_index = tp.pool_index(c)
    if c_index is None:
        raise PoolMissingCorpus(
            "observed corpus is not in the teacher pool; add it before inference"
        )
    log_weights = np.empty(len(space.hypotheses))
    for i, r in enumerate(space.hypotheses):
        try:
            teacher = t1_distribution(r, space, tp)
        except DegeneratePool:
            log_weights[i] = -math.inf
            continue
        log_weights[i] = -float(description_length(r)) + teacher.log_probs[c_index]
    if np.all(np.isneginf(log_weights)):
        return replace(l0_posterior(space, c, tp.learner), fallback=True)
    probs, log_probs = _finalize(log_weights)
    return PosteriorDistribution(space, probs, log_probs)


def prob_correct(p: PosteriorDistribution, target: RegexAst) -> float:
    """Posterior probability assigned to the target hypothesis."""
    return p.prob_of(target)
