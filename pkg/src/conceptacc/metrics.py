"""Word accuracy and concept accuracy, per utterance and per corpus.

Both follow ``100 * (1 - (S + I + D) / N)`` where N is the reference
length.  Values are never clamped, so an insertion-heavy hypothesis can
score below zero.
"""

from __future__ import annotations

import enum
import operator
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .alignment import Alignment, EditCounts, align, edit_counts
from .errors import EmptyReference, NoScorableRecords
from .semantics import SemanticUnit, su_equal


class MetricKind(enum.Enum):
    WA = "WA"
    CA = "CA"


def accuracy(counts: EditCounts) -> float:
    if counts.ref_total == 0:
        raise EmptyReference("accuracy is undefined for an empty reference")
    return 100.0 * (1.0 - counts.errors / counts.ref_total)


@dataclass(frozen=True)
class AccuracyResult:
    value: float
    counts: EditCounts
    kind: MetricKind
    alignment: Optional[Alignment] = None


def _score(ref, hyp, equal, kind: MetricKind) -> AccuracyResult:
    if len(ref) == 0:
        raise EmptyReference(f"{kind.value}: reference is empty")
    alignment = align(ref, hyp, equal)
    counts = edit_counts(alignment)
    return AccuracyResult(accuracy(counts), counts, kind, alignment)


def word_accuracy(ref_tokens: Sequence[str], hyp_tokens: Sequence[str]) -> AccuracyResult:
    return _score(list(ref_tokens), list(hyp_tokens), operator.eq, MetricKind.WA)


def concept_accuracy(
    ref_units: Sequence[SemanticUnit], hyp_units: Sequence[SemanticUnit]
) -> AccuracyResult:
    return _score(list(ref_units), list(hyp_units), su_equal, MetricKind.CA)


def record_pair(record, kind: MetricKind):
    """(reference, hypothesis) a record contributes for ``kind``, or None to skip."""
    if kind is MetricKind.WA:
        ref, hyp = record.ref_transcript, record.hyp_transcript
    else:
        ref, hyp = record.ref_annotation, record.hyp_annotation
    if not ref or hyp is None:
        return None
    return ref, hyp


def score_record(record, kind: MetricKind) -> Optional[AccuracyResult]:
    pair = record_pair(record, kind)
    if pair is None:
        return None
    if kind is MetricKind.WA:
        return word_accuracy(*pair)
    return concept_accuracy(*pair)


@dataclass(frozen=True)
class CorpusMetric:
    kind: MetricKind
    micro_value: float
    per_utterance_mean: float
    utterances_scored: int
    utterances_skipped: int
    counts: EditCounts


def aggregate(
    results: Iterable[Optional[AccuracyResult]], kind: MetricKind
) -> CorpusMetric:
    """Pool per-utterance results; ``None`` entries count as skipped."""
    total = EditCounts()
    values = []
    skipped = 0
    for res in results:
        if res is None:
            skipped += 1
            continue
        total = total + res.counts
        values.append(res.value)
    if not values:
        raise NoScorableRecords(f"{kind.value}: no record has a non-empty reference and a hypothesis")
    return CorpusMetric(
        kind=kind,
        micro_value=accuracy(total),
        per_utterance_mean=sum(values) / len(values),
        utterances_scored=len(values),
        utterances_skipped=skipped,
        counts=total,
    )


def corpus_accuracy(records: Iterable, kind: MetricKind) -> CorpusMetric:
    """Micro-averaged (pooled counts) and per-utterance mean accuracy.

    Records with an empty reference, or no hypothesis of the relevant kind,
    are skipped and counted.
    """
    return aggregate((score_record(r, kind) for r in records), kind)
