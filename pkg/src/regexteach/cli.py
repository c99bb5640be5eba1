"""Command-line interface: learn, analyze, compare, serve, rules."""

import argparse
import json
import os
import re
import sys
from pathlib import Path

from . import analysis
from .corpus import (
    Corpus,
    builtin_rule_spaces,
    bundled_dataset,
    load_dataset,
    mislabel_rate,
    polarity_counts,
    resolve_rule,
    RULE_DESCRIPTIONS,
)
from .errors import RegexTeachError
from .experiment import GridSpec, run_grid, summarize, write_outputs
from .learners import LearnerParams, TeacherParams, l0_posterior, l1_posterior
from .regex import PatternSyntaxError


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (RegexTeachError, PatternSyntaxError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="regexteach",
        description="Teach restricted regexes by example and compare "
        "weak-sampling vs pedagogical learners.",
    )
    sub = parser.add_subparsers(required=True)

    p = sub.add_parser("rules", help="list the built-in rule spaces")
    p.set_defaults(func=cmd_rules)

    p = sub.add_parser("learn", help="posteriors for one teaching corpus")
    p.add_argument("--rule", required=True, help="rule space name, e.g. 3a")
    p.add_argument("--data", help="dataset file (default: bundled)")
    p.add_argument("--corpus", help="teacher_id of a dataset corpus to use")
    p.add_argument(
        "--example",
        action="append",
        default=[],
        metavar="TEXT:pos|neg",
        help="inline example (repeatable, ordered); label after the last colon",
    )
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--eta", type=float, default=0.0)
    p.set_defaults(func=cmd_learn)

    p = sub.add_parser("analyze", help="corpus-structure statistics report")
    p.add_argument("--data", help="dataset file (default: bundled)")
    p.add_argument("--threshold", type=int, default=2)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="report file (default: stdout)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("compare", help="L0-vs-L1 parameter grid")
    # Let "--log-betas -0.1,-1,-2,-4" parse: comma lists of negative numbers
    # must not be mistaken for option flags.
    p._negative_number_matcher = re.compile(r"^-[\d.,\-]+$")
    p.add_argument("--data", help="dataset file (default: bundled)")
    p.add_argument("--alphas", default="1,2,4,8")
    p.add_argument("--log-betas", default="-0.1,-1,-2,-4")
    p.add_argument("--eta", type=float, default=0.0)
    p.add_argument(
        "--pool",
        default="empirical-plus-observed",
        choices=[
            "empirical-only",
            "empirical-plus-observed",
            "empirical-plus-synthetic",
        ],
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--synthetic-per-rule", type=int, default=10)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("serve", help="run the HTTP teaching service")
    env = os.environ
    p.add_argument("--host", default=env.get("REGEXTEACH_HOST", "127.0.0.1"))
    p.add_argument(
        "--port", type=int, default=int(env.get("REGEXTEACH_PORT", "8077"))
    )
    p.add_argument(
        "--idle-timeout",
        type=float,
        default=float(env.get("REGEXTEACH_IDLE_TIMEOUT", str(24 * 3600.0))),
    )
    p.add_argument(
        "--persist",
        default=env.get("REGEXTEACH_PERSIST"),
        help="append-only session event log path",
    )
    p.add_argument(
        "--suggest-max-len",
        type=int,
        default=int(env.get("REGEXTEACH_SUGGEST_MAX_LEN", "4")),
    )
    p.add_argument(
        "--cors-origin",
        action="append",
        default=(
            [env["REGEXTEACH_CORS_ORIGIN"]] if "REGEXTEACH_CORS_ORIGIN" in env else None
        ),
    )
    p.add_argument("--ui-dir", help="serve a built UI from this directory at /ui")
    p.set_defaults(func=cmd_serve)

    return parser


def _load(args):
    return load_dataset(args.data) if args.data else bundled_dataset()


def cmd_rules(args) -> int:
    for name, space in builtin_rule_spaces().items():
        print(f"{name:10s} target {space.patterns[0]:14s} "
              f"distractors {', '.join(space.patterns[1:])}")
        print(f"{'':10s} {RULE_DESCRIPTIONS[name]}")
    return 0


def parse_example_arg(raw: str) -> tuple:
    text, sep, label = raw.rpartition(":")
    if not sep or label not in ("pos", "neg"):
        raise RegexTeachError(
            f"bad --example {raw!r}: expected TEXT:pos or TEXT:neg"
        )
    return text, label


def cmd_learn(args) -> int:
    spaces = builtin_rule_spaces()
    space, _ = resolve_rule(args.rule, spaces)
    dataset = _load(args)
    if (args.corpus is None) == (not args.example):
        raise RegexTeachError("provide either --corpus or at least one --example")
    if args.corpus is not None:
        candidates = [
            c for c in dataset.corpora_for(args.rule) if c.teacher_id == args.corpus
        ]
        if not candidates:
            raise RegexTeachError(
                f"no corpus with teacher_id {args.corpus!r} for rule {args.rule!r}"
            )
        corpus = candidates[0]
    else:
        pairs = [parse_example_arg(raw) for raw in args.example]
        corpus = Corpus.from_pairs(args.rule, "cli", pairs, source="session")

    params = LearnerParams(beta=args.beta, eta=args.eta)
    pool = []
    seen = set()
    for c in dataset.corpora:
        sp, _ = resolve_rule(c.rule_id, dataset.rule_spaces)
        if sp.name == space.name and c.signature() not in seen:
            seen.add(c.signature())
            pool.append(c)
    tp = TeacherParams(
        alpha=args.alpha, pool=tuple(pool) or (corpus,), learner=params
    ).with_corpus(corpus)
    l0 = l0_posterior(space, corpus, params)
    l1 = l1_posterior(space, corpus, tp)
    print(
        json.dumps(
            {
                "rule_id": args.rule,
                "hypotheses": list(space.patterns),
                "examples": [
                    {"text": e.text, "label": e.label} for e in corpus.examples
                ],
                "l0": list(l0.probs),
                "l1": list(l1.probs),
                "fallback": l1.fallback,
                "params": {"alpha": args.alpha, "beta": args.beta, "eta": args.eta},
            },
            indent=2,
        )
    )
    return 0


def cmd_analyze(args) -> int:
    dataset = _load(args)
    lines = []
    lines.append("[dataset]")
    lines.append(f"path = {args.data or 'bundled'}")
    lines.append(f"corpora = {len(dataset.corpora)}")
    lines.append(f"rules = {len(dataset.rule_spaces)}")
    lines.append("")
    lines.append("[clustering]")
    lines.append(f"threshold = {args.threshold}")
    mean = analysis.mean_clusters_per_corpus(dataset, args.threshold)
    lines.append(f"mean_clusters_per_corpus = {mean!r}")
    lines.append("")
    lines.append("[permutation_test]")
    result = analysis.permutation_test_clusters(
        dataset, args.threshold, n_samples=args.samples, seed=args.seed
    )
    lines.append(f"n_samples = {result.n_samples}")
    lines.append(f"seed = {result.seed}")
    lines.append(f"observed = {result.observed_statistic!r}")
    lines.append(f"ci_low = {result.ci_low!r}")
    lines.append(f"ci_high = {result.ci_high!r}")
    outside = (
        result.observed_statistic < result.ci_low
        or result.observed_statistic > result.ci_high
    )
    lines.append(f"observed_outside_null_ci = {str(outside).lower()}")
    lines.append("")
    lines.append("[first_in_cluster]")
    fic = analysis.first_in_cluster_polarity(dataset, args.threshold)
    lines.append(f"n_first_positive = {fic.n_first_positive}")
    lines.append(f"n_first_negative = {fic.n_first_negative}")
    lines.append(f"chi_square = {fic.chi_square!r}")
    lines.append("")
    lines.append("[contiguity]")
    lines.append("# contiguity is this package's own statistic "
                 "(fraction of clusters forming one consecutive run)")
    scores = [
        analysis.cluster_contiguity(analysis.cluster_corpus(c, args.threshold))
        for c in dataset.corpora
    ]
    lines.append(f"mean_contiguity = {sum(scores) / len(scores)!r}")
    lines.append("")
    spaces = builtin_rule_spaces()
    for rule_id in sorted({c.rule_id for c in dataset.corpora}):
        space, idx = resolve_rule(rule_id, dataset.rule_spaces)
        target = space.hypotheses[idx]
        corpora = dataset.corpora_for(rule_id)
        lines.append(f"[rule.{rule_id}]")
        lines.append(f"corpora = {len(corpora)}")
        rate = sum(mislabel_rate(c, target) for c in corpora) / len(corpora)
        lines.append(f"mean_mislabel_rate = {rate!r}")
        n_pos = sum(polarity_counts(c)[0] for c in corpora)
        n_neg = sum(polarity_counts(c)[1] for c in corpora)
        lines.append(f"n_positive = {n_pos}")
        lines.append(f"n_negative = {n_neg}")
        try:
            bal = analysis.polarity_balance_test(dataset, rule_id)
            lines.append(f"balance_mean_diff = {bal.mean_diff!r}")
            lines.append(f"balance_sd_diff = {bal.sd_diff!r}")
            lines.append(f"balance_t = {bal.t_statistic!r}")
            lines.append(f"balance_df = {bal.df}")
        except RegexTeachError as exc:
            lines.append(f"balance = skipped ({exc})")
        lines.append("")
    report = "\n".join(lines)
    if args.out:
        Path(args.out).write_text(report, encoding="utf-8")
        print(f"wrote {args.out}")
    else:
        print(report)
    return 0


def cmd_compare(args) -> int:
    dataset = _load(args)
    spec = GridSpec(
        alphas=tuple(float(x) for x in args.alphas.split(",")),
        log_betas=tuple(float(x) for x in args.log_betas.split(",")),
        eta=args.eta,
        pool_policy=args.pool,
        seed=args.seed,
        synthetic_per_rule=args.synthetic_per_rule,
    )
    result = run_grid(dataset, spec)
    paths = write_outputs(result, args.out)
    print(summarize(result).render())
    for name, path in paths.items():
        print(f"{name}: {path}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import ServiceConfig, create_app

    config = ServiceConfig(
        idle_timeout=args.idle_timeout,
        persist_path=args.persist,
        suggest_max_len=args.suggest_max_len,
        cors_origins=tuple(args.cors_origin) if args.cors_origin else ("*",),
    )
    app = create_app(config)
    if args.ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=args.ui_dir, html=True), name="ui")
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


if __name__ == "__main__":
    sys.exit(main())
