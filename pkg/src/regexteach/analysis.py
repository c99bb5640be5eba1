"""Corpus-structure analytics: edit-distance clustering and order statistics.

Strings within a corpus are clustered by single-linkage connected components
under a Levenshtein-distance threshold; the remaining statistics quantify how
surprising the observed clustering is (permutation test), which polarity
starts clusters, whether clusters occupy contiguous spans, and per-rule
polarity balance.
"""

import math
import statistics
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .corpus import Corpus, Dataset
from .errors import InsufficientData


def levenshtein(a: str, b: str) -> int:
    """Unit-cost insert/delete/substitute edit distance."""
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i] + [0] * len(b)
        for j, cb in enumerate(b, start=1):
            current[j] = min(
                previous[j] + 1,
                current[j - 1] + 1,
                previous[j - 1] + (ca != cb),
            )
        previous = current
    return previous[len(b)]


@lru_cache(maxsize=1 << 18)
def _lev(a: str, b: str) -> int:
    if a > b:
        a, b = b, a
    return levenshtein(a, b)


@dataclass(frozen=True)
class Clustering:
    corpus: Corpus
    threshold: int
    clusters: tuple  # tuple of tuples of ascending positions, ordered by first member

    @property
    def n_clusters(self) -> int:
        return len(self.clusters)


def _components(texts, threshold: int) -> tuple:
    """Single-linkage connected components over string indices."""
    n = len(texts)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if _lev(texts[i], texts[j]) <= threshold:
                parent[find(i)] = find(j)
    groups: dict = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return tuple(
        tuple(sorted(members))
        for members in sorted(groups.values(), key=lambda m: min(m))
    )


def cluster_corpus(c: Corpus, threshold: int) -> Clustering:
    """Cluster the corpus's strings by chained edit distance <= threshold."""
    if threshold < 0:
        raise ValueError("threshold must be nonnegative")
    texts = [e.text for e in c.examples]
    return Clustering(c, threshold, _components(texts, threshold))


def cluster_count(texts, threshold: int) -> int:
    return len(_components(list(texts), threshold))


def mean_clusters_per_corpus(d: Dataset, threshold: int) -> float:
    """Arithmetic mean of per-corpus cluster counts."""
    return statistics.fmean(
        cluster_corpus(c, threshold).n_clusters for c in d.corpora
    )


@dataclass(frozen=True)
class PermutationTestResult:
    observed_statistic: float
    null_samples: tuple
    n_samples: int
    ci_low: float
    ci_high: float
    seed: int

    def __post_init__(self):
        assert len(self.null_samples) == self.n_samples
        assert self.ci_low <= self.ci_high


def permutation_test_clusters(
    d: Dataset, threshold: int, n_samples: int = 1000, seed: int = 0
) -> PermutationTestResult:
    """Permutation null for the mean-clusters-per-corpus statistic.

    Each null sample reshuffles all (string, label) pairs uniformly across
    the corpora of the same rule, preserving every corpus's size, and
    recomputes the mean cluster count.  The reported interval is the
    2.5th/97.5th percentile of the null samples.  Deterministic given seed:
    each sample draws from its own spawned substream.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    if len(d.corpora) < 2:
        raise InsufficientData("permutation test needs at least 2 corpora")
    observed = mean_clusters_per_corpus(d, threshold)

    by_rule: dict = {}
    for c in d.corpora:
        by_rule.setdefault(c.rule_id, []).append([e.text for e in c.examples])

    streams = np.random.SeedSequence(seed).spawn(n_samples)
    null_samples = []
    for stream in streams:
        rng = np.random.Generator(np.random.PCG64(stream))
        counts = []
        for corpora_texts in by_rule.values():
            pooled = [t for texts in corpora_texts for t in texts]
            order = rng.permutation(len(pooled))
            cursor = 0
            for texts in corpora_texts:
                take = [pooled[order[cursor + k]] for k in range(len(texts))]
                cursor += len(texts)
                counts.append(cluster_count(take, threshold))
        null_samples.append(statistics.fmean(counts))

    ci_low, ci_high = np.percentile(null_samples, [2.5, 97.5])
    return PermutationTestResult(
        observed_statistic=observed,
        null_samples=tuple(null_samples),
        n_samples=n_samples,
        ci_low=float(ci_low),
        ci_high=float(ci_high),
        seed=seed,
    )


def chi_square_balance(a: int, b: int) -> float:
    """One-df goodness-of-fit statistic against a 50/50 null: (a-b)^2/(a+b)."""
    if a + b == 0:
        raise ValueError("chi-square statistic undefined for zero counts")
    return (a - b) ** 2 / (a + b)


class FirstInClusterResult(NamedTuple):
    n_first_positive: int
    n_first_negative: int
    chi_square: float


def first_in_cluster_polarity(d: Dataset, threshold: int) -> FirstInClusterResult:
    """Polarity of each cluster's earliest example, over the whole dataset."""
    n_pos = n_neg = 0
    for c in d.corpora:
        for members in cluster_corpus(c, threshold).clusters:
            first = c.examples[members[0]]
            if first.is_positive:
                n_pos += 1
            else:
                n_neg += 1
    return FirstInClusterResult(n_pos, n_neg, chi_square_balance(n_pos, n_neg))


def cluster_contiguity(cl: Clustering) -> float:
    """Fraction of clusters whose positions form one consecutive run.

    The underlying phenomenon has no standard statistic; this score is our
    own definition and is labeled as such in reports.
    """
    contiguous = sum(
        1
        for members in cl.clusters
        if members[-1] - members[0] == len(members) - 1
    )
    return contiguous / len(cl.clusters)


class PolarityBalanceResult(NamedTuple):
    mean_diff: float
    sd_diff: float
    t_statistic: float
    df: int


def polarity_balance_test(d: Dataset, rule_id: str) -> PolarityBalanceResult:
    """Paired t-test on per-corpus (n_positive - n_negative) for one rule."""
    diffs = []
    for c in d.corpora:
        if c.rule_id == rule_id:
            n_pos = sum(1 for e in c.examples if e.is_positive)
            diffs.append(n_pos - (len(c.examples) - n_pos))
    if len(diffs) < 2:
        raise InsufficientData(
            f"polarity balance test needs >= 2 corpora for rule {rule_id!r}"
        )
    mean = statistics.fmean(diffs)
    sd = statistics.stdev(diffs)
    if sd == 0:
        t = 0.0 if mean == 0 else math.copysign(math.inf, mean)
    else:
        t = mean / (sd / math.sqrt(len(diffs)))
    return PolarityBalanceResult(mean, sd, t, len(diffs) - 1)
