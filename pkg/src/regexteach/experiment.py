"""Grid comparison of the weak-sampling and pedagogical learners.

For every corpus taught for a target rule, compute the probability assigned
to the target by L0 and by L1 across an (alpha, log beta) grid, with the
teacher's corpus pool assembled from the dataset's corpora for the target
and its distractors.  Results are emitted as CSV (one row per cell x corpus)
plus per-cell mean tables.
"""

import csv
import math
import zlib
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import (
    Corpus,
    Dataset,
    RuleSpace,
    builtin_rule_spaces,
    default_alphabet,
    resolve_rule,
    rule_id_for,
)
from .errors import MissingDistractorCorpora, ValidationError
from .learners import (
    LearnerParams,
    TeacherParams,
    l0_posterior,
    l1_posterior,
    prob_correct,
)
from .regex import Alphabet, RegexAst, matches

POOL_POLICIES = (
    "empirical-only",
    "empirical-plus-observed",
    "empirical-plus-synthetic",
)


@dataclass(frozen=True)
class GridSpec:
    alphas: tuple = (1.0, 2.0, 4.0, 8.0)
    log_betas: tuple = (-0.1, -1.0, -2.0, -4.0)
    eta: float = 0.0
    pool_policy: str = "empirical-plus-observed"
    seed: int = 0
    synthetic_per_rule: int = 10

    def __post_init__(self):
        if not self.alphas or not self.log_betas:
            raise ValidationError("grid axes must be nonempty")
        if any(a < 1 for a in self.alphas):
            raise ValidationError("alphas must be >= 1")
        if any(lb > 0 for lb in self.log_betas):
            raise ValidationError("log betas must be <= 0 so beta lies in (0, 1]")
        if self.pool_policy not in POOL_POLICIES:
            raise ValidationError(f"pool_policy must be one of {POOL_POLICIES}")


@dataclass(frozen=True)
class CellRecord:
    alpha: float
    log_beta: float
    beta: float
    rule_id: str
    corpus_id: str
    p_correct_l0: float
    p_correct_l1: float
    map_correct_l0: float
    map_correct_l1: float
    fallback: bool


@dataclass(frozen=True)
class GridResult:
    spec: GridSpec
    records: tuple

    def cells(self) -> list:
        return [(a, lb) for a in self.spec.alphas for lb in self.spec.log_betas]

    def cell_records(self, alpha: float, log_beta: float) -> list:
        return [
            r
            for r in self.records
            if r.alpha == alpha and r.log_beta == log_beta
        ]

    def cell_mean(self, alpha: float, log_beta: float, field: str) -> float:
        values = [getattr(r, field) for r in self.cell_records(alpha, log_beta)]
        return float(np.mean(values))


def synthesize_corpora(
    r: RegexAst,
    n: int,
    seed: int,
    max_examples: int = 10,
    max_len: int = 12,
    alphabet: Alphabet | None = None,
    rule_id: str = "synthetic",
    teacher_prefix: str = "syn",
) -> list:
    """Draw corpora from the teacher prior's generative process.

    Corpus size is geometric(1/2) on {1, 2, ...} (clamped to max_examples),
    string length geometric(1/2) on {0, 1, ...} (clamped to max_len),
    characters uniform over the alphabet, and every label is assigned by
    ``r``, so all corpora are consistent with the rule.  Deterministic
    given the seed.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if alphabet is None:
        alphabet = default_alphabet([], [r])
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    chars = list(alphabet.characters)
    out = []
    for i in range(n):
        size = min(int(rng.geometric(0.5)), max_examples)
        pairs = []
        for _ in range(size):
            length = min(int(rng.geometric(0.5)) - 1, max_len)
            text = "".join(rng.choice(chars) for _ in range(length))
            pairs.append((text, "pos" if matches(r, text) else "neg"))
        out.append(
            Corpus.from_pairs(
                rule_id, f"{teacher_prefix}-{i + 1:02d}", pairs, source="synthetic"
            )
        )
    return out


def space_alphabet(space: RuleSpace, corpora) -> Alphabet:
    return default_alphabet(corpora, space.hypotheses)


def _assemble_pool(space: RuleSpace, d: Dataset, spec: GridSpec) -> tuple:
    """Dataset corpora for the space's rules, per-hypothesis gaps handled by policy."""
    members = []
    for c in d.corpora:
        sp, _ = resolve_rule(c.rule_id, d.rule_spaces)
        if sp.name == space.name:
            members.append(c)
    covered = {resolve_rule(c.rule_id, d.rule_spaces)[1] for c in members}
    missing = [
        rule_id_for(space, i)
        for i in range(len(space.hypotheses))
        if i not in covered
    ]
    if missing:
        if spec.pool_policy != "empirical-plus-synthetic":
            raise MissingDistractorCorpora(missing)
        alphabet = space_alphabet(space, members)
        for rid in missing:
            _, hyp_index = resolve_rule(rid, d.rule_spaces)
            members.extend(
                synthesize_corpora(
                    space.hypotheses[hyp_index],
                    spec.synthetic_per_rule,
                    seed=spec.seed ^ zlib.crc32(rid.encode()),
                    alphabet=alphabet,
                    rule_id=rid,
                    teacher_prefix=f"fill-{rid}",
                )
            )
    # Pool identity is the ordered (text, label) sequence; keep first occurrence.
    seen = set()
    pool = []
    for c in members:
        sig = c.signature()
        if sig not in seen:
            seen.add(sig)
            pool.append(c)
    return tuple(pool)


def run_grid(d: Dataset, spec: GridSpec = GridSpec()) -> GridResult:
    """Evaluate every (cell, target-taught corpus) pair; deterministic given spec."""
    spaces = builtin_rule_spaces()
    records = []
    for name in sorted(d.rule_spaces):
        if "." in name:
            continue
        space = spaces[name]
        eval_corpora = d.corpora_for(name)
        if not eval_corpora:
            continue
        base_pool = _assemble_pool(space, d, spec)
        for alpha in spec.alphas:
            for log_beta in spec.log_betas:
                beta = math.exp(log_beta)
                params = LearnerParams(beta=beta, eta=spec.eta)
                for c in eval_corpora:
                    tp = TeacherParams(alpha=alpha, pool=base_pool, learner=params)
                    if spec.pool_policy != "empirical-only":
                        tp = tp.with_corpus(c)
                    l0 = l0_posterior(space, c, params)
                    l1 = l1_posterior(space, c, tp)
                    records.append(
                        CellRecord(
                            alpha=alpha,
                            log_beta=log_beta,
                            beta=beta,
                            rule_id=name,
                            corpus_id=c.teacher_id,
                            p_correct_l0=prob_correct(l0, space.target),
                            p_correct_l1=prob_correct(l1, space.target),
                            map_correct_l0=_map_credit(l0.probs),
                            map_correct_l1=_map_credit(l1.probs),
                            fallback=l1.fallback,
                        )
                    )
    return GridResult(spec, tuple(records))


def _map_credit(probs) -> float:
    """1 if the target (index 0) is the unique argmax; ties share credit."""
    best = max(probs)
    winners = [i for i, p in enumerate(probs) if p == best]
    return (1.0 / len(winners)) if 0 in winners else 0.0


@dataclass(frozen=True)
class GridSummary:
    alphas: tuple
    log_betas: tuple
    mean_l0: tuple  # row-major [alpha][log_beta]
    mean_l1: tuple
    mean_diff: tuple
    flagged_alpha: float
    flagged_log_beta: float

    def render(self) -> str:
        lines = []
        for label, table in (
            ("L0 mean P(correct)", self.mean_l0),
            ("L1 mean P(correct)", self.mean_l1),
            ("L1 - L0", self.mean_diff),
        ):
            lines.append(label)
            header = ["alpha\\log_beta"] + [f"{lb:g}" for lb in self.log_betas]
            lines.append("  ".join(f"{h:>14}" for h in header))
            for a, row in zip(self.alphas, table):
                mark = " *" if a == self.flagged_alpha else ""
                cells = [f"{a:g}{mark:>2}"] + [f"{v:.4f}" for v in row]
                lines.append("  ".join(f"{c:>14}" for c in cells))
            lines.append("")
        lines.append(
            f"* alpha = {self.flagged_alpha:g} row and log beta = "
            f"{self.flagged_log_beta:g} column are where the two learners "
            "run closest to par."
        )
        return "\n".join(lines)


def summarize(gr: GridResult) -> GridSummary:
    """Per-cell mean tables for L0, L1, and their difference."""
    spec = gr.spec
    mean_l0 = []
    mean_l1 = []
    diff = []
    for alpha in spec.alphas:
        row0, row1, rowd = [], [], []
        for lb in spec.log_betas:
            m0 = gr.cell_mean(alpha, lb, "p_correct_l0")
            m1 = gr.cell_mean(alpha, lb, "p_correct_l1")
            row0.append(m0)
            row1.append(m1)
            rowd.append(m1 - m0)
        mean_l0.append(tuple(row0))
        mean_l1.append(tuple(row1))
        diff.append(tuple(rowd))
    return GridSummary(
        alphas=spec.alphas,
        log_betas=spec.log_betas,
        mean_l0=tuple(mean_l0),
        mean_l1=tuple(mean_l1),
        mean_diff=tuple(diff),
        flagged_alpha=min(spec.alphas),
        flagged_log_beta=max(spec.log_betas),
    )


def write_outputs(gr: GridResult, outdir) -> dict:
    """Write grid.csv, the three summary CSVs, and a gnuplot matrix."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = {}

    grid_path = outdir / "grid.csv"
    with open(grid_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            [
                "alpha",
                "log_beta",
                "beta",
                "rule_id",
                "corpus_id",
                "p_correct_l0",
                "p_correct_l1",
                "map_correct_l0",
                "map_correct_l1",
                "fallback",
            ]
        )
        for r in gr.records:
            writer.writerow(
                [
                    f"{r.alpha:g}",
                    f"{r.log_beta:g}",
                    repr(r.beta),
                    r.rule_id,
                    r.corpus_id,
                    repr(r.p_correct_l0),
                    repr(r.p_correct_l1),
                    f"{r.map_correct_l0:g}",
                    f"{r.map_correct_l1:g}",
                    int(r.fallback),
                ]
            )
    paths["grid"] = grid_path

    summary = summarize(gr)
    for name, table in (
        ("summary_l0", summary.mean_l0),
        ("summary_l1", summary.mean_l1),
        ("summary_diff", summary.mean_diff),
    ):
        path = outdir / f"{name}.csv"
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                ["alpha"] + [f"log_beta={lb:g}" for lb in summary.log_betas]
            )
            for alpha, row in zip(summary.alphas, table):
                writer.writerow([f"{alpha:g}"] + [repr(v) for v in row])
        paths[name] = path

    matrix_path = outdir / "summary_diff.dat"
    with open(matrix_path, "w") as fh:
        fh.write("# rows: alpha " + " ".join(f"{a:g}" for a in summary.alphas) + "\n")
        fh.write(
            "# cols: log_beta " + " ".join(f"{lb:g}" for lb in summary.log_betas) + "\n"
        )
        for row in summary.mean_diff:
            fh.write(" ".join(f"{v:.6f}" for v in row) + "\n")
    paths["summary_diff_matrix"] = matrix_path
    return paths
