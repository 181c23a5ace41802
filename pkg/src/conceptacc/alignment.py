"""Unit-cost Levenshtein alignment over arbitrary symbol sequences.

The same code scores words (for word accuracy) and semantic units (for
concept accuracy); only the equality relation changes.
"""

from __future__ import annotations

import enum
import operator
from dataclasses import dataclass
from typing import Callable, Hashable, Optional, Sequence


class OpKind(enum.Enum):
    MATCH = "MATCH"
    SUBSTITUTE = "SUB"
    DELETE = "DEL"
    INSERT = "INS"


DEFAULT_PREFERENCE = (OpKind.MATCH, OpKind.SUBSTITUTE, OpKind.DELETE, OpKind.INSERT)


@dataclass(frozen=True)
class AlignmentOp:
    kind: OpKind
    ref_index: Optional[int] = None
    hyp_index: Optional[int] = None

    def __post_init__(self):
        has_ref = self.ref_index is not None
        has_hyp = self.hyp_index is not None
        if self.kind in (OpKind.MATCH, OpKind.SUBSTITUTE):
            ok = has_ref and has_hyp
        elif self.kind is OpKind.DELETE:
            ok = has_ref and not has_hyp
        else:
            ok = has_hyp and not has_ref
        if not ok:
            raise ValueError(f"inconsistent indices for {self.kind.name}: {self}")


@dataclass(frozen=True)
class Alignment:
    ops: tuple[AlignmentOp, ...]
    ref_len: int
    hyp_len: int

    @property
    def distance(self) -> int:
        return sum(op.kind is not OpKind.MATCH for op in self.ops)


@dataclass(frozen=True)
class EditCounts:
    substitutions: int = 0
    insertions: int = 0
    deletions: int = 0
    matches: int = 0
    ref_total: int = 0

    @property
    def errors(self) -> int:
        return self.substitutions + self.insertions + self.deletions

    @property
    def hyp_total(self) -> int:
        return self.matches + self.substitutions + self.insertions

    def __add__(self, other: "EditCounts") -> "EditCounts":
        if not isinstance(other, EditCounts):
            return NotImplemented
        return EditCounts(
            self.substitutions + other.substitutions,
            self.insertions + other.insertions,
            self.deletions + other.deletions,
            self.matches + other.matches,
            self.ref_total + other.ref_total,
        )


@dataclass(frozen=True)
class CostTable:
    """Prefix edit distances plus the pairwise equality they were built from."""

    same: list[list[bool]]
    dist: list[list[int]]

    @property
    def distance(self) -> int:
        return self.dist[-1][-1]


def cost_table(ref: Sequence, hyp: Sequence, equal=operator.eq) -> CostTable:
    n, m = len(ref), len(hyp)
    same = [[bool(equal(r, h)) for h in hyp] for r in ref]
    dist = [list(range(m + 1))]
    for i in range(1, n + 1):
        eq_row, prev = same[i - 1], dist[i - 1]
        row = [i] * (m + 1)
        for j in range(1, m + 1):
            best = prev[j - 1] if eq_row[j - 1] else prev[j - 1] + 1
            if prev[j] + 1 < best:
                best = prev[j] + 1
            if row[j - 1] + 1 < best:
                best = row[j - 1] + 1
            row[j] = best
        dist.append(row)
    return CostTable(same, dist)


_ALL_KINDS = tuple(OpKind)


def backtrace(table: CostTable, preference: Sequence[OpKind] = DEFAULT_PREFERENCE) -> Alignment:
    """Walk ``table`` from the end, taking the first optimal move in ``preference``."""
    preference = tuple(preference)
    if len(preference) != len(_ALL_KINDS) or not all(k in preference for k in _ALL_KINDS):
        raise ValueError("preference must be a permutation of OpKind")
    same, dist = table.same, table.dist
    n, m = len(dist) - 1, len(dist[0]) - 1
    ops: list[AlignmentOp] = []
    i, j = n, m
    while i > 0 or j > 0:
        here = dist[i][j]
        for kind in preference:
            if kind is OpKind.MATCH or kind is OpKind.SUBSTITUTE:
                if i == 0 or j == 0 or same[i - 1][j - 1] != (kind is OpKind.MATCH):
                    continue
                if dist[i - 1][j - 1] + (kind is OpKind.SUBSTITUTE) == here:
                    ops.append(AlignmentOp(kind, i - 1, j - 1))
                    i, j = i - 1, j - 1
                    break
            elif kind is OpKind.DELETE:
                if i > 0 and dist[i - 1][j] + 1 == here:
                    ops.append(AlignmentOp(kind, ref_index=i - 1))
                    i -= 1
                    break
            elif j > 0 and dist[i][j - 1] + 1 == here:
                ops.append(AlignmentOp(kind, hyp_index=j - 1))
                j -= 1
                break
        else:  # pragma: no cover - some move is always optimal
            raise AssertionError("backtrace found no optimal move")
    ops.reverse()
    return Alignment(tuple(ops), n, m)


def align(
    ref: Sequence[Hashable],
    hyp: Sequence[Hashable],
    equal: Callable[[object, object], bool] = operator.eq,
    preference: Sequence[OpKind] = DEFAULT_PREFERENCE,
) -> Alignment:
    """Return a minimum-edit alignment of ``hyp`` against ``ref``.

    All three error kinds cost 1. When several optimal paths exist the
    backtrace (which walks from the end of both sequences) takes the first
    admissible move in ``preference``, so output is fully deterministic.
    """
    return backtrace(cost_table(ref, hyp, equal), preference)


def edit_distance(ref, hyp, equal=operator.eq) -> int:
    return cost_table(ref, hyp, equal).distance


def edit_counts(alignment: Alignment) -> EditCounts:
    s = i = d = 0
    for op in alignment.ops:
        kind = op.kind
        if kind is OpKind.SUBSTITUTE:
            s += 1
        elif kind is OpKind.INSERT:
            i += 1
        elif kind is OpKind.DELETE:
            d += 1
    return EditCounts(
        substitutions=s,
        insertions=i,
        deletions=d,
        matches=len(alignment.ops) - s - i - d,
        ref_total=alignment.ref_len,
    )


GAP = "***"


def render_alignment(alignment: Alignment, ref: Sequence, hyp: Sequence) -> str:
    """Three-line REF/HYP/tag table, one column per alignment op."""
    columns = []
    for op in alignment.ops:
        r = str(ref[op.ref_index]) if op.ref_index is not None else GAP
        h = str(hyp[op.hyp_index]) if op.hyp_index is not None else GAP
        columns.append((r, h, op.kind.value))
    widths = [max(len(c) for c in col) for col in columns]
    lines = []
    for label, row in (("REF:", 0), ("HYP:", 1), ("", 2)):
        cells = [col[row].ljust(w) for col, w in zip(columns, widths)]
        lines.append(" ".join([label.ljust(4)] + cells).rstrip())
    return "\n".join(lines) + "\n"
