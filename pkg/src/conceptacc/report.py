"""Text and CSV rendering of evaluation results.

Every number shown comes from the metrics module; rendering only formats.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .alignment import OpKind, render_alignment
from .corpus_io import CorpusStats, UtteranceRecord, corpus_stats, render_stats
from .errors import NoScorableRecords
from .metrics import AccuracyResult, CorpusMetric, MetricKind, aggregate, score_record
from .semantics import substitution_kinds
from .simulator import LinearFit, SweepPoint, format_rate

NO_SCORABLE = "no scorable records"


@dataclass(frozen=True)
class UtteranceRow:
    record: UtteranceRecord
    wa: Optional[AccuracyResult]
    ca: Optional[AccuracyResult]

    @property
    def id(self) -> str:
        return self.record.id


@dataclass
class EvaluationReport:
    stats: CorpusStats
    wa: Optional[CorpusMetric] = None
    ca: Optional[CorpusMetric] = None
    coverage: Optional[float] = None
    rows: list[UtteranceRow] = field(default_factory=list)
    sweep: Optional[list[SweepPoint]] = None
    fit: Optional[LinearFit] = None

    def worst(self, k: int) -> list[UtteranceRow]:
        """k lowest-CA rows (lowest WA if no CA was scored), ties by id."""
        kind = "ca" if self.ca is not None else "wa"
        scored = [r for r in self.rows if getattr(r, kind) is not None]
        scored.sort(key=lambda r: (getattr(r, kind).value, r.id))
        return scored[:k]


def build_report(
    records: Sequence[UtteranceRecord],
    kinds: Sequence[MetricKind] = (MetricKind.WA, MetricKind.CA),
    coverage: Optional[float] = None,
) -> EvaluationReport:
    rows = [
        UtteranceRow(
            r,
            score_record(r, MetricKind.WA) if MetricKind.WA in kinds else None,
            score_record(r, MetricKind.CA) if MetricKind.CA in kinds else None,
        )
        for r in records
    ]
    report = EvaluationReport(corpus_stats(records), coverage=coverage, rows=rows)
    for kind in kinds:
        attr = kind.value.lower()
        try:
            metric = aggregate((getattr(row, attr) for row in rows), kind)
        except NoScorableRecords:
            metric = None
        setattr(report, attr, metric)
    return report


def _table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    cols = [header] + [list(r) for r in rows]
    widths = [max(len(c[i]) for c in cols) for i in range(len(header))]
    out = []
    for c in cols:
        cells = [c[0].ljust(widths[0])] + [v.rjust(w) for v, w in zip(c[1:], widths[1:])]
        out.append("  ".join(cells).rstrip())
    return "\n".join(out) + "\n"


def render_sweep(points: Sequence[SweepPoint], fit: Optional[LinearFit] = None) -> str:
    header = ["rate"] + [format_rate(p.configured_rate) for p in points]
    rows = [
        ["WA"] + [f"{p.measured_wa:.1f}" for p in points],
        ["CA"] + [f"{p.measured_ca:.1f}" for p in points],
    ]
    text = _table(header, rows)
    if fit is not None:
        text += render_fit(fit)
    return text


def render_fit(fit: LinearFit) -> str:
    return (
        f"fit: CA = {fit.slope:.3f} * WA {'+' if fit.intercept >= 0 else '-'} "
        f"{abs(fit.intercept):.3f}  (r^2 = {fit.r_squared:.4f})\n"
    )


def render_summary(report: EvaluationReport) -> str:
    parts = []
    if report.stats.utterances:
        parts.append(render_stats(report.stats))
    metrics = [m for m in (report.wa, report.ca) if m is not None]
    if metrics:
        parts.append(_table(
            ["", "micro", "mean", "scored", "skipped"],
            [
                [m.kind.value, f"{m.micro_value:.1f}", f"{m.per_utterance_mean:.1f}",
                 str(m.utterances_scored), str(m.utterances_skipped)]
                for m in metrics
            ],
        ))
    if report.coverage is not None:
        parts.append(f"coverage  {report.coverage:.1f}\n")
    if report.sweep:
        parts.append(render_sweep(report.sweep, report.fit))
    if not metrics and not report.sweep:
        parts.append(NO_SCORABLE + "\n")
    return "\n".join(parts)


def _counts(res: Optional[AccuracyResult], missing: str = "-") -> list[str]:
    if res is None:
        return [missing] * 4
    c = res.counts
    return [f"{res.value:.1f}", str(c.substitutions), str(c.insertions), str(c.deletions)]


def render_detail(report: EvaluationReport, k: int) -> str:
    text = render_summary(report)
    if k <= 0 or not report.rows:
        return text
    lines = [
        [row.id] + _counts(row.wa) + _counts(row.ca) for row in report.rows
    ]
    text += "\n" + _table(["id", "WA", "S", "I", "D", "CA", "S", "I", "D"], lines)
    for row in report.worst(k):
        rec = row.record
        text += f"\n== {row.id}\n"
        if row.wa is not None:
            text += f"words (WA {row.wa.value:.1f})\n"
            text += render_alignment(row.wa.alignment, rec.ref_transcript, rec.hyp_transcript)
        if row.ca is not None:
            text += f"concepts (CA {row.ca.value:.1f})\n"
            text += render_alignment(row.ca.alignment, rec.ref_annotation, rec.hyp_annotation)
            subs = [
                (rec.ref_annotation[op.ref_index], rec.hyp_annotation[op.hyp_index])
                for op in row.ca.alignment.ops
                if op.kind is OpKind.SUBSTITUTE
            ]
            if subs:
                same, cross = substitution_kinds(subs)
                text += f"substitutions: {same} same-attribute, {cross} cross-attribute\n"
    return text


def detail_csv(report: EvaluationReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["id", "wa", "ca", "wa_s", "wa_i", "wa_d", "ca_s", "ca_i", "ca_d"])
    for row in report.rows:
        wa, ca = _counts(row.wa, ""), _counts(row.ca, "")
        writer.writerow([row.id, wa[0], ca[0], *wa[1:], *ca[1:]])
    return buf.getvalue()
