#!/usr/bin/env python3
"""Generate a synthetic corpus, sweep corruption rates and fit CA against WA."""

from __future__ import annotations

import argparse
import time
from pathlib import Path

from conceptacc.concept_parser import Grammar
from conceptacc.corpus_io import corpus_stats, generate_synthetic_corpus, load_templates, render_stats
from conceptacc.report import render_sweep
from conceptacc.semantics import load_inventory
from conceptacc.simulator import DEFAULT_SEED, ErrorSpec, Targeting, fit_sweep, sweep, sweep_csv


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=500, help="utterances to generate")
    ap.add_argument("--rates", default="0,0.1,0.2,0.3,0.4,0.5")
    ap.add_argument("--targeting", choices=[t.value for t in Targeting], default="uniform")
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--csv", type=Path, help="also write the sweep as CSV")
    args = ap.parse_args()

    inventory = load_inventory()
    grammar = Grammar.load(inventory=inventory)
    records = generate_synthetic_corpus(load_templates(inventory=inventory), grammar.lexicon, args.n, args.seed)
    print(render_stats(corpus_stats(records)), end="")

    rates = [float(r) for r in args.rates.split(",")]
    started = time.perf_counter()
    spec = ErrorSpec(targeting=args.targeting, seed=args.seed)
    points = sweep(records, rates, spec, grammar.lexicon, grammar.rules)
    print()
    print(render_sweep(points, fit_sweep(points) if len(points) > 1 else None), end="")
    print(f"({time.perf_counter() - started:.1f}s)")
    if args.csv:
        args.csv.write_text(sweep_csv(points))


if __name__ == "__main__":
    main()
