import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle_learners
from regexteach.constants import LOG_SPACE_TOL, ORACLE_REL_TOL
from regexteach.corpus import Corpus, builtin_rule_spaces
from regexteach.errors import DegeneratePool, PoolMissingCorpus, ValidationError
from regexteach.learners import (
    LearnerParams,
    TeacherParams,
    error_count,
    l0_posterior,
    l1_posterior,
    log_prior,
    prob_correct,
    t1_distribution,
    teacher_prior_score,
)
from regexteach.regex import parse


def corpus(pairs, rule_id="3a", teacher="t"):
    return Corpus.from_pairs(rule_id, teacher, pairs)


@pytest.fixture(scope="module")
def space_3a():
    return builtin_rule_spaces()["3a"]


class TestErrorCount:
    def test_consistent_single(self, space_3a):
        assert error_count(corpus([("aaa", "pos")]), space_3a.target) == 0

    def test_xor_per_pair(self, space_3a):
        c = corpus([("aaa", "pos"), ("aa", "pos")])
        assert error_count(c, space_3a.target) == 1

    def test_ten_example_corpus_vs_distractor(self, seed_data):
        # Labeled-positive non-matches are "aaa" and "aaaa"; every other
        # example (including the 8-a and 18-a positives) is consistent.
        ten = seed_data.corpora_for("3a")[1]
        d1 = parse("^a{6,}$")
        assert error_count(ten, d1) == 2
        assert error_count(ten, d1) == oracle_learners.q_count(ten, d1)

    def test_appending_consistent_example_preserves_q(self, space_3a):
        base = [("aaa", "pos"), ("aa", "pos")]
        c1 = corpus(base)
        c2 = corpus(base + [("aaaa", "pos")])  # consistent
        c3 = corpus(base + [("aaaa", "neg")])  # inconsistent
        q = error_count(c1, space_3a.target)
        assert error_count(c2, space_3a.target) == q
        assert error_count(c3, space_3a.target) == q + 1


class TestL0Posterior:
    def test_beta_zero_equals_prior_exactly(self, space_3a, seed_data):
        prior = log_prior(space_3a)
        for c in seed_data.corpora_for("3a"):
            post = l0_posterior(space_3a, c, LearnerParams(beta=0.0))
            assert all(
                abs(lp - pr) <= LOG_SPACE_TOL
                for lp, pr in zip(post.log_probs, prior)
            )

    def test_worked_example_single_positive(self, space_3a):
        # Q = (0, 1, 0) and |r| = (2, 2, 2), so probs ∝ (1, e^-5, 1).
        post = l0_posterior(space_3a, corpus([("aaaa", "pos")]), LearnerParams(beta=5.0))
        z = 2 + math.exp(-5)
        assert post.probs[0] == pytest.approx(1 / z, rel=1e-12)
        assert post.probs[1] == pytest.approx(math.exp(-5) / z, rel=1e-12)
        assert post.probs[2] == pytest.approx(1 / z, rel=1e-12)

    def test_two_example_corpus_target_strictly_most_probable(self, space_3a):
        c = corpus([("aaaa", "pos"), ("aA", "neg")])
        assert [error_count(c, h) for h in space_3a.hypotheses] == [0, 1, 1]
        post = l0_posterior(space_3a, c, LearnerParams(beta=5.0))
        assert post.probs[0] > post.probs[1]
        assert post.probs[0] > post.probs[2]

    def test_sums_to_one(self, space_3a, bundled):
        for c in bundled.corpora_for("3a"):
            post = l0_posterior(space_3a, c, LearnerParams(beta=1.0))
            assert abs(sum(post.probs) - 1.0) <= 1e-9

    def test_posterior_monotone_in_contrastive_evidence(self, space_3a):
        base = [("aaaa", "pos")]
        before = l0_posterior(space_3a, corpus(base), LearnerParams(beta=1.0))
        after = l0_posterior(
            space_3a, corpus(base + [("aA", "neg")]), LearnerParams(beta=1.0)
        )
        # The added example is consistent with the target, inconsistent with
        # the [aA]+ distractor: the odds target-vs-distractor must rise.
        assert (after.probs[0] / after.probs[2]) > (before.probs[0] / before.probs[2])

    @settings(max_examples=60, deadline=None)
    @given(st.permutations(range(4)))
    def test_exchangeable_in_example_order(self, space_3a, order):
        pairs = [("aaa", "pos"), ("aA", "neg"), ("sss", "neg"), ("aaaaaa", "pos")]
        base = l0_posterior(space_3a, corpus(pairs), LearnerParams(beta=2.0))
        shuffled = corpus([pairs[i] for i in order])
        assert (
            l0_posterior(space_3a, shuffled, LearnerParams(beta=2.0)).log_probs
            == base.log_probs
        )


class TestTeacherPrior:
    def test_single_short_consistent(self, space_3a):
        c = corpus([("aaa", "pos")])
        assert teacher_prior_score(c, space_3a.target, eta=0.0) == pytest.approx(1 / 16)

    def test_strict_delta_zeroes_mislabels(self, space_3a):
        c = corpus([("aa", "pos")])
        assert teacher_prior_score(c, space_3a.target, eta=0.0) == 0.0

    def test_two_consistent_examples(self, space_3a):
        c = corpus([("aaa", "pos"), ("aa", "neg")])
        assert teacher_prior_score(c, space_3a.target, eta=0.0) == pytest.approx(1 / 128)

    def test_eta_softens_delta(self, space_3a):
        c = corpus([("aa", "pos")])
        score = teacher_prior_score(c, space_3a.target, eta=0.1)
        assert score == pytest.approx((1 / 8) * (0.1 / 0.9))


class TestT1Distribution:
    def test_single_consistent_corpus_gets_probability_one(self, space_3a):
        tp = TeacherParams(1.0, (corpus([("aaa", "pos")]),), LearnerParams(beta=5.0))
        dist = t1_distribution(space_3a.target, space_3a, tp)
        assert dist.probs == (1.0,)

    def test_shorter_more_informative_corpus_preferred(self, space_3a):
        pool = (corpus([("aaa", "pos")]), corpus([("aaaaaa", "pos")]))
        tp = TeacherParams(1.0, pool, LearnerParams(beta=5.0))
        dist = t1_distribution(space_3a.target, space_3a, tp)
        assert dist.probs[0] > dist.probs[1]

    def test_alpha_sharpens_without_reordering(self, space_3a):
        pool = (corpus([("aaa", "pos")]), corpus([("aaaaaa", "pos")]))
        d1 = t1_distribution(
            space_3a.target, space_3a, TeacherParams(1.0, pool, LearnerParams(beta=5.0))
        )
        d2 = t1_distribution(
            space_3a.target, space_3a, TeacherParams(2.0, pool, LearnerParams(beta=5.0))
        )
        assert d2.argmax() == d1.argmax()
        assert d2.entropy() < d1.entropy()
        # Power scaling of the alpha=1 weights reproduces alpha=2 exactly.
        w = [p * p for p in d1.probs]
        z = sum(w)
        for got, expected in zip(d2.probs, (x / z for x in w)):
            assert got == pytest.approx(expected, rel=1e-12)

    def test_degenerate_pool_raises(self, space_3a):
        tp = TeacherParams(1.0, (corpus([("aa", "pos")]),), LearnerParams(beta=5.0))
        with pytest.raises(DegeneratePool):
            t1_distribution(space_3a.target, space_3a, tp)

    def test_hypothesis_must_belong_to_space(self, space_3a):
        tp = TeacherParams(1.0, (corpus([("aaa", "pos")]),), LearnerParams())
        with pytest.raises(ValueError):
            t1_distribution(parse("^b+$"), space_3a, tp)

    def test_depth_reserved(self, space_3a):
        tp = TeacherParams(1.0, (corpus([("aaa", "pos")]),), LearnerParams())
        with pytest.raises(ValueError, match="depth"):
            t1_distribution(space_3a.target, space_3a, tp, depth=2)

    def test_pool_invariants(self, space_3a):
        with pytest.raises(ValidationError):
            TeacherParams(0.5, (corpus([("aaa", "pos")]),), LearnerParams())
        with pytest.raises(ValidationError):
            TeacherParams(1.0, (), LearnerParams())
        dup = (corpus([("aaa", "pos")]), corpus([("aaa", "pos")], teacher="other"))
        with pytest.raises(ValidationError):
            TeacherParams(1.0, dup, LearnerParams())


class TestL1Posterior:
    def test_single_corpus_pool_equals_prior_on_consistent_corpus(self, space_3a):
        # "aaaaaa" as a positive is consistent with all three hypotheses, so
        # every hypothesis's teacher puts probability 1 on the lone corpus.
        c = corpus([("aaaaaa", "pos")])
        tp = TeacherParams(1.0, (c,), LearnerParams(beta=5.0))
        post = l1_posterior(space_3a, c, tp)
        prior = log_prior(space_3a)
        assert not post.fallback
        assert all(
            abs(lp - pr) <= LOG_SPACE_TOL for lp, pr in zip(post.log_probs, prior)
        )

    def test_single_corpus_pool_equals_prior_with_eta(self, space_3a):
        # With eta > 0 the identity holds for any corpus, consistent or not.
        c = corpus([("aa", "pos")])
        tp = TeacherParams(1.0, (c,), LearnerParams(beta=5.0, eta=0.1))
        post = l1_posterior(space_3a, c, tp)
        prior = log_prior(space_3a)
        assert all(
            abs(lp - pr) <= LOG_SPACE_TOL for lp, pr in zip(post.log_probs, prior)
        )

    def test_pedagogical_boost_over_l0(self, space_3a):
        pool = (
            corpus([("aaa", "pos")]),
            corpus([("aaaaaa", "pos")]),
            corpus([("aA", "pos")]),
        )
        tp = TeacherParams(1.0, pool, LearnerParams(beta=5.0))
        observed = pool[0]
        l1 = l1_posterior(space_3a, observed, tp)
        l0 = l0_posterior(space_3a, observed, LearnerParams(beta=5.0))
        assert prob_correct(l1, space_3a.target) > prob_correct(l0, space_3a.target)

    def test_fallback_when_corpus_mislabeled_for_every_hypothesis(self, space_3a):
        # "sss" matches no hypothesis, so a positive label is wrong for all.
        c = corpus([("sss", "pos")])
        tp = TeacherParams(1.0, (c,), LearnerParams(beta=5.0))
        post = l1_posterior(space_3a, c, tp)
        assert post.fallback
        assert post.log_probs == l0_posterior(space_3a, c, tp.learner).log_probs

    def test_missing_corpus_raises(self, space_3a):
        tp = TeacherParams(1.0, (corpus([("aaa", "pos")]),), LearnerParams())
        with pytest.raises(PoolMissingCorpus):
            l1_posterior(space_3a, corpus([("aaaa", "pos")]), tp)

    def test_with_corpus_augments_pool(self, space_3a):
        tp = TeacherParams(1.0, (corpus([("aaa", "pos")]),), LearnerParams())
        observed = corpus([("aaaa", "pos")])
        augmented = tp.with_corpus(observed)
        assert augmented.pool_index(observed) == 1
        assert tp.with_corpus(corpus([("aaa", "pos")], teacher="x")) is tp
        l1_posterior(space_3a, observed, augmented)  # no exception

    def test_depth_reserved(self, space_3a):
        c = corpus([("aaa", "pos")])
        tp = TeacherParams(1.0, (c,), LearnerParams())
        with pytest.raises(ValueError, match="depth"):
            l1_posterior(space_3a, c, tp, depth=2)


class TestOracleEquivalence:
    def test_fifty_randomized_instances(self):
        assert (
            oracle_learners.check_equivalence(50, seed=20260810, rel_tol=ORACLE_REL_TOL)
            == 50
        )
