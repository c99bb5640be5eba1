"""Synthetic datasets with known structure for analysis tests."""

import string

import numpy as np

from regexteach.corpus import Corpus, Dataset, builtin_rule_spaces


def planted_dataset(n_corpora=20, clusters_per_corpus=3) -> Dataset:
    """Corpora made of tight edit-distance clusters, disjoint across corpora.

    Each cluster is {c*6, c*5} for a character c unique to that cluster
    (intra-cluster distance 1); distinct clusters differ in every character,
    so inter-cluster distances are >= 5.
    """
    chars = string.ascii_letters + string.digits
    assert n_corpora * clusters_per_corpus <= len(chars)
    space = builtin_rule_spaces()["3a"]
    corpora = []
    index = 0
    for i in range(n_corpora):
        pairs = []
        for _ in range(clusters_per_corpus):
            base = chars[index] * 6
            index += 1
            pairs.append((base, "pos"))
            pairs.append((base[:-1], "neg"))
        corpora.append(
            Corpus.from_pairs("3a", f"planted-{i:02d}", pairs, source="session")
        )
    return Dataset(tuple(corpora), {"3a": space})


def shuffled_control(dataset: Dataset, seed: int) -> Dataset:
    """One within-rule shuffle of the dataset: a draw from the null."""
    rng = np.random.Generator(np.random.PCG64(seed))
    by_rule: dict = {}
    for c in dataset.corpora:
        by_rule.setdefault(c.rule_id, []).append(c)
    corpora = []
    for rule_id, members in by_rule.items():
        pooled = [(e.text, e.label) for c in members for e in c.examples]
        order = rng.permutation(len(pooled))
        cursor = 0
        for c in members:
            take = [pooled[order[cursor + k]] for k in range(len(c.examples))]
            cursor += len(c.examples)
            corpora.append(
                Corpus.from_pairs(rule_id, c.teacher_id, take, source=c.source)
            )
    return Dataset(tuple(corpora), dict(dataset.rule_spaces))
