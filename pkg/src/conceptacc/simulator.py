"""Recognizer-error simulation and WA/CA sweeps.

Corruption rate stands in for the recognizer setting that controls word
accuracy.  Every utterance draws from its own random stream, derived from
(seed, utterance index), so results do not depend on processing order.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Sequence

import numpy as np

from .concept_parser import Lexicon, RuleSet, extract_concepts
from .errors import DegenerateInput, EmptyVocabulary
from .metrics import MetricKind, corpus_accuracy

DEFAULT_SEED = 19970901


class Targeting(enum.Enum):
    UNIFORM = "uniform"
    CONTENT = "content-biased"
    FILLER = "filler-biased"


@dataclass(frozen=True)
class ErrorSpec:
    rate: float = 0.1
    mix: tuple[float, float, float] = (0.6, 0.2, 0.2)  # sub, ins, del
    targeting: Targeting = Targeting.UNIFORM
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if not 0.0 <= self.rate <= 1.0:
            raise ValueError(f"rate must lie in [0, 1], got {self.rate}")
        if len(self.mix) != 3 or any(w < 0 for w in self.mix) or sum(self.mix) <= 0:
            raise ValueError(f"mix needs three non-negative weights, got {self.mix}")
        total = float(sum(self.mix))
        object.__setattr__(self, "mix", tuple(float(w) / total for w in self.mix))
        object.__setattr__(self, "targeting", Targeting(self.targeting))
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class Vocabulary:
    """Words a simulated recognizer can output, split by semantic relevance."""

    content: tuple[str, ...]
    filler: tuple[str, ...]

    @classmethod
    def from_grammar(cls, lexicon: Lexicon, rules: RuleSet) -> "Vocabulary":
        content = lexicon.content_tokens | rules.trigger_tokens
        return cls(tuple(sorted(content)), tuple(sorted(lexicon.filler_words - content)))

    @property
    def words(self) -> tuple[str, ...]:
        return self.content + self.filler

    @cached_property
    def _content_set(self) -> frozenset:
        return frozenset(self.content)

    def is_content(self, token: str) -> bool:
        return token in self._content_set

    def pool(self, targeting: Targeting) -> tuple[str, ...]:
        if targeting is Targeting.CONTENT and self.content:
            return self.content
        if targeting is Targeting.FILLER and self.filler:
            return self.filler
        return self.words


def utterance_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, index])


def corrupt(
    tokens: Sequence[str],
    spec: ErrorSpec,
    vocabulary: Vocabulary,
    rng: np.random.Generator,
) -> tuple[str, ...]:
    """Inject i.i.d. substitution/insertion/deletion events into ``tokens``.

    Under a biased targeting only tokens of that class are eligible, and
    substituted or inserted words are drawn from the same class, so a
    corrupted filler stays a filler.  An utterance without any token of the
    targeted class is corrupted uniformly instead.
    """
    if not vocabulary.words:
        raise EmptyVocabulary("cannot corrupt with an empty vocabulary")
    targeting = spec.targeting
    if targeting is Targeting.CONTENT:
        eligible = [vocabulary.is_content(t) for t in tokens]
    elif targeting is Targeting.FILLER:
        eligible = [not vocabulary.is_content(t) for t in tokens]
    else:
        eligible = [True] * len(tokens)
    if not any(eligible):
        targeting = Targeting.UNIFORM
        eligible = [True] * len(tokens)
    pool = vocabulary.pool(targeting)

    out: list[str] = []
    for tok, ok in zip(tokens, eligible):
        # fixed number of draws per token keeps streams aligned across rates
        fire, kind_u, word_u = rng.random(3)
        if not ok or fire >= spec.rate:
            out.append(tok)
            continue
        if kind_u < spec.mix[0]:
            others = [w for w in pool if w != tok] or [w for w in vocabulary.words if w != tok]
            out.append(others[int(word_u * len(others))] if others else tok)
        elif kind_u < spec.mix[0] + spec.mix[1]:
            out.extend((tok, pool[int(word_u * len(pool))]))
        # else: deletion
    return tuple(out)


@dataclass(frozen=True)
class SweepPoint:
    configured_rate: float
    measured_wa: float
    measured_ca: float


def run_point(records, spec: ErrorSpec, lexicon: Lexicon, rules: RuleSet, vocabulary=None):
    """Corrupt, parse and score a whole corpus at one error setting."""
    vocabulary = vocabulary or Vocabulary.from_grammar(lexicon, rules)
    noisy = []
    for index, rec in enumerate(records):
        hyp = corrupt(rec.ref_transcript, spec, vocabulary, utterance_rng(spec.seed, index))
        noisy.append(replace(rec, hyp_transcript=hyp, hyp_annotation=extract_concepts(hyp, lexicon, rules)))
    wa = corpus_accuracy(noisy, MetricKind.WA)
    ca = corpus_accuracy(noisy, MetricKind.CA)
    return SweepPoint(spec.rate, wa.micro_value, ca.micro_value), noisy


def sweep(
    records,
    rates: Sequence[float],
    template: ErrorSpec,
    lexicon: Lexicon,
    rules: RuleSet,
) -> list[SweepPoint]:
    vocabulary = Vocabulary.from_grammar(lexicon, rules)
    return [
        run_point(records, replace(template, rate=rate), lexicon, rules, vocabulary)[0]
        for rate in rates
    ]


def format_rate(rate: float) -> str:
    # one decimal unless that would hide the configured value (e.g. 0.05)
    text = f"{rate:.1f}"
    return text if float(text) == rate else f"{rate:.4g}"


def sweep_csv(points: Sequence[SweepPoint]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["rate", "wa", "ca"])
    for p in points:
        writer.writerow([format_rate(p.configured_rate), f"{p.measured_wa:.1f}", f"{p.measured_ca:.1f}"])
    return buf.getvalue()


@dataclass(frozen=True)
class LinearFit:
    slope: float
    intercept: float
    r_squared: float

    def __iter__(self):
        return iter((self.slope, self.intercept, self.r_squared))


def linear_fit(points: Sequence[tuple[float, float]]) -> LinearFit:
    """Ordinary least squares y = slope * x + intercept."""
    if len(points) < 2:
        raise DegenerateInput(f"need at least two points, got {len(points)}")
    n = len(points)
    xs = [float(x) for x, _ in points]
    ys = [float(y) for _, y in points]
    mx, my = math.fsum(xs) / n, math.fsum(ys) / n
    sxx = math.fsum((x - mx) ** 2 for x in xs)
    if sxx == 0.0:
        raise DegenerateInput("all x values are equal")
    sxy = math.fsum((x - mx) * (y - my) for x, y in zip(xs, ys))
    syy = math.fsum((y - my) ** 2 for y in ys)
    slope = sxy / sxx
    intercept = my - slope * mx
    if syy == 0.0:
        r2 = 1.0
    else:
        r2 = min(1.0, max(0.0, sxy * sxy / (sxx * syy)))
    return LinearFit(slope, intercept, r2)


def fit_sweep(points: Sequence[SweepPoint]) -> LinearFit:
    return linear_fit([(p.measured_wa, p.measured_ca) for p in points])
