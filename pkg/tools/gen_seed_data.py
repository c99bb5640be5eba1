#!/usr/bin/env python3
"""Regenerate src/regexteach/data/synthetic_corpora.jsonl.

Extends the transcribed seed corpora so every taught rule (targets and
distractors) has at least 10 corpora for grid experiments.  Corpus sizes and
string lengths follow the teacher prior's generative process (geometric(1/2)
each); string CONTENT follows a first-order character model fitted to the
space's transcribed corpora (Laplace smoothing 0.1 over the space alphabet),
so synthetic strings resemble the vocabulary human teachers actually used.
Labels are assigned by the taught rule, so every corpus is consistent.

Deterministic: each rule draws from its own fixed seed; rerunning reproduces
the file byte-for-byte.  See src/regexteach/data/README.md.
"""

import collections
import json
from pathlib import Path

import numpy as np

from regexteach.corpus import builtin_rule_spaces, rule_id_for, seed_dataset
from regexteach.experiment import space_alphabet
from regexteach.regex import matches

BASE_SEED = 20260810
PER_RULE_MIN = 10
SMOOTHING = 0.1
MAX_EXAMPLES = 10
MAX_LEN = 12

OUT = Path(__file__).resolve().parents[1] / "src/regexteach/data/synthetic_corpora.jsonl"


class CharModel:
    """First-order (bigram) character model over a fixed alphabet."""

    def __init__(self, texts, alphabet, smooth=SMOOTHING):
        self.chars = list(alphabet.characters)
        self.smooth = smooth
        self.start = collections.Counter()
        self.trans = collections.defaultdict(collections.Counter)
        for t in texts:
            if t:
                self.start[t[0]] += 1
                for a, b in zip(t, t[1:]):
                    self.trans[a][b] += 1

    def _draw(self, rng, counter):
        w = np.array(
            [counter.get(c, 0) + self.smooth for c in self.chars], dtype=float
        )
        return self.chars[rng.choice(len(self.chars), p=w / w.sum())]

    def sample(self, rng, length):
        if length == 0:
            return ""
        out = [self._draw(rng, self.start)]
        while len(out) < length:
            out.append(self._draw(rng, self.trans[out[-1]]))
        return "".join(out)


def draw_corpora(rule, n, seed, model, rule_id, prefix):
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    corpora = []
    for i in range(n):
        size = min(int(rng.geometric(0.5)), MAX_EXAMPLES)
        examples = []
        for _ in range(size):
            length = min(int(rng.geometric(0.5)) - 1, MAX_LEN)
            text = model.sample(rng, length)
            examples.append(
                {"text": text, "label": "pos" if matches(rule, text) else "neg"}
            )
        corpora.append(
            {
                "rule_id": rule_id,
                "teacher_id": f"{prefix}-{i + 1:02d}",
                "source": "synthetic",
                "examples": examples,
            }
        )
    return corpora


def main():
    seed = seed_dataset()
    spaces = builtin_rule_spaces()
    records = []
    rule_index = 0
    for name in sorted(spaces):
        space = spaces[name]
        seed_corpora = seed.corpora_for(name)
        alphabet = space_alphabet(space, seed_corpora)
        texts = [e.text for c in seed_corpora for e in c.examples]
        model = CharModel(texts, alphabet)
        for hyp_index, hypothesis in enumerate(space.hypotheses):
            rule_id = rule_id_for(space, hyp_index)
            need = PER_RULE_MIN - len(seed.corpora_for(rule_id))
            if need > 0:
                records.extend(
                    draw_corpora(
                        hypothesis,
                        need,
                        BASE_SEED + rule_index,
                        model,
                        rule_id,
                        f"syn-{rule_id}",
                    )
                )
            rule_index += 1
    with open(OUT, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record) + "\n")
    print(f"wrote {len(records)} corpora to {OUT}")


if __name__ == "__main__":
    main()
