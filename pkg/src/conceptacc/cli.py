"""Command line entry point.

Exit codes: 0 success, 1 input/config error, 2 nothing scorable or a
degenerate fit.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path

from . import report as rep
from .alignment import render_alignment
from .concept_parser import Grammar, measure_coverage
from .corpus_io import (
    corpus_stats,
    dumps_corpus,
    generate_synthetic_corpus,
    load_corpus,
    load_templates,
    render_stats,
    tokenize,
)
from .errors import (
    ConfigError,
    DegenerateInput,
    EmptyReference,
    FormatError,
    MalformedUnit,
    NoScorableRecords,
    UnknownAttribute,
)
from .metrics import MetricKind, word_accuracy
from .semantics import load_inventory, serialize_annotation
from .simulator import DEFAULT_SEED, ErrorSpec, Targeting, fit_sweep, sweep, sweep_csv

EXIT_OK, EXIT_INPUT, EXIT_SCORING = 0, 1, 2
INPUT_ERRORS = (ConfigError, FormatError, UnknownAttribute, MalformedUnit, OSError)


class UsageError(Exception):
    pass


_PATH_ARGS = ("corpus", "inventory", "lexicon", "rules", "templates")


def _rate_list(text: str) -> list[float]:
    try:
        rates = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad rate list: {text!r}") from None
    if not rates or any(not 0.0 <= r <= 1.0 for r in rates):
        raise argparse.ArgumentTypeError("rates must be comma separated values in [0, 1]")
    return rates


def _mix(text: str) -> tuple[float, float, float]:
    try:
        parts = tuple(float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad mix: {text!r}") from None
    if len(parts) != 3 or any(p < 0 for p in parts) or sum(parts) <= 0:
        raise argparse.ArgumentTypeError("mix is three non-negative weights sub,ins,del")
    return parts


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _grammar(args):
    inventory = load_inventory(args.inventory)
    return inventory, Grammar.load(args.lexicon, args.rules, inventory)


def _fill_annotations(records, grammar, from_ref: bool):
    """Set HYPSEM from the parser run on HYP (or on REF for coverage runs)."""
    out = []
    for r in records:
        source = r.ref_transcript if from_ref else r.hyp_transcript
        out.append(r if source is None else replace(r, hyp_annotation=grammar.parse(source)))
    return out


def cmd_align(args) -> int:
    ref, hyp = tokenize(args.ref), tokenize(args.hyp)
    try:
        result = word_accuracy(ref, hyp)
    except EmptyReference as exc:
        print(f"error: EmptyReference: {exc}", file=sys.stderr)
        return EXIT_SCORING
    print(render_alignment(result.alignment, ref, hyp), end="")
    c = result.counts
    print(f"S {c.substitutions}  I {c.insertions}  D {c.deletions}  N {c.ref_total}")
    print(f"WA {result.value:.1f}")
    return EXIT_OK


def cmd_score(args) -> int:
    inventory, grammar = _grammar(args)
    records = load_corpus(args.corpus, inventory)
    coverage = None
    if args.parse:
        records = _fill_annotations(records, grammar, args.from_ref)
        if args.from_ref:
            try:
                coverage = measure_coverage(records, grammar.lexicon, grammar.rules)
            except NoScorableRecords:
                pass
    kinds = {"wa": [MetricKind.WA], "ca": [MetricKind.CA], "both": [MetricKind.WA, MetricKind.CA]}
    report = rep.build_report(records, kinds[args.metric], coverage=coverage)
    print(rep.render_detail(report, args.detail), end="")
    if args.csv:
        Path(args.csv).write_text(rep.detail_csv(report), encoding="utf-8")
    if report.wa is None and report.ca is None:
        print("error: NoScorableRecords", file=sys.stderr)
        return EXIT_SCORING
    return EXIT_OK


def cmd_sweep(args) -> int:
    inventory, grammar = _grammar(args)
    records = load_corpus(args.corpus, inventory)
    template = ErrorSpec(mix=args.mix, targeting=Targeting(args.targeting), seed=args.seed)
    points = sweep(records, args.rates, template, grammar.lexicon, grammar.rules)
    Path(args.out).write_text(sweep_csv(points), encoding="utf-8")
    print(rep.render_sweep(points), end="")
    try:
        fit = fit_sweep(points)
    except DegenerateInput as exc:
        print(f"error: DegenerateInput: {exc}", file=sys.stderr)
        return EXIT_SCORING
    print(rep.render_fit(fit), end="")
    return EXIT_OK


def cmd_stats(args) -> int:
    records = load_corpus(args.corpus, load_inventory(args.inventory))
    print(render_stats(corpus_stats(records)), end="")
    return EXIT_OK


def cmd_gen(args) -> int:
    inventory, grammar = _grammar(args)
    templates = load_templates(args.templates, inventory)
    records = generate_synthetic_corpus(templates, grammar.lexicon, args.n, args.seed)
    Path(args.out).write_text(dumps_corpus(records), encoding="utf-8")
    print(f"wrote {len(records)} records to {args.out}")
    return EXIT_OK


def cmd_parse(args) -> int:
    inventory, grammar = _grammar(args)
    if args.corpus is None:
        if args.text is None:
            raise UsageError("parse needs TEXT or --corpus")
        trace = [] if args.verbose else None
        units = grammar.parse(tokenize(args.text), trace)
        for line in trace or ():
            print(f"# {line}")
        print(serialize_annotation(units))
        return EXIT_OK
    records = load_corpus(args.corpus, inventory)
    text = dumps_corpus(_fill_annotations(records, grammar, args.from_ref))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        print(text, end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--inventory", type=Path, help="attribute inventory file")
    common.add_argument("--lexicon", type=Path, help="lexicon config file")
    common.add_argument("--rules", type=Path, help="rule config file")
    common.add_argument("-v", "--verbose", action="count", default=0)

    p = argparse.ArgumentParser(prog="conceptacc", description="Word accuracy / concept accuracy evaluation toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("align", parents=[common], help="align two word strings and print WA")
    s.add_argument("--ref", required=True)
    s.add_argument("--hyp", required=True)
    s.set_defaults(func=cmd_align)

    s = sub.add_parser("score", parents=[common], help="score a corpus file")
    s.add_argument("corpus", type=Path)
    s.add_argument("--metric", choices=["wa", "ca", "both"], default="both")
    s.add_argument("--parse", action="store_true", help="fill HYPSEM by parsing HYP")
    s.add_argument("--from-ref", action="store_true",
                   help="with --parse: parse REF instead (parser coverage run)")
    s.add_argument("--csv", help="write per-utterance detail CSV here")
    s.add_argument("--detail", type=int, default=0, metavar="K",
                   help="show per-utterance rows and alignments of the K worst")
    s.set_defaults(func=cmd_score)

    s = sub.add_parser("sweep", parents=[common], help="corruption-rate sweep with WA/CA fit")
    s.add_argument("corpus", type=Path)
    s.add_argument("--rates", type=_rate_list, default=_rate_list("0,0.1,0.2,0.3,0.4,0.5"))
    s.add_argument("--targeting", choices=[t.value for t in Targeting], default="uniform")
    s.add_argument("--mix", type=_mix, default=(0.6, 0.2, 0.2), help="sub,ins,del weights")
    s.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    s.add_argument("--out", required=True, help="sweep CSV path")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("stats", parents=[common], help="corpus statistics")
    s.add_argument("corpus", type=Path)
    s.set_defaults(func=cmd_stats)

    s = sub.add_parser("gen", parents=[common], help="generate a synthetic corpus")
    s.add_argument("--templates", type=Path)
    s.add_argument("--n", type=int, default=500)
    s.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("parse", parents=[common], help="run the concept parser")
    s.add_argument("text", nargs="?")
    s.add_argument("--corpus", type=Path, help="fill HYPSEM for every record")
    s.add_argument("--from-ref", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_parse)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors; here 2 means "nothing scorable"
        return EXIT_INPUT if exc.code else 0
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    for name in _PATH_ARGS:
        path = getattr(args, name, None)
        if path is not None and not path.is_file():
            print(f"error: no such file: {path}", file=sys.stderr)
            return EXIT_INPUT
    try:
        return args.func(args)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
