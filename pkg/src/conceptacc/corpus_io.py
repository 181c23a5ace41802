"""Corpus file format, corpus statistics and the synthetic template corpus.

A corpus file is a sequence of blank-line separated blocks::

    ID u1
    DLG d1
    REF no to bonn
    HYP no to berlin
    SEM dm_marker:no; goalcity:bonn
    HYPSEM dm_marker:no; goalcity:berlin

``ID``, ``REF`` and ``SEM`` are required; ``DLG`` defaults to the record id.
Lines starting with ``#`` are ignored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .concept_parser import CATEGORIES, Lexicon
from .errors import ConfigError, FormatError, MalformedUnit
from .semantics import (
    AttributeInventory,
    SemanticAnnotation,
    SemanticUnit,
    load_inventory,
    parse_annotation,
    serialize_annotation,
)


def tokenize(text: str) -> tuple[str, ...]:
    return tuple(text.casefold().split())


@dataclass(frozen=True)
class UtteranceRecord:
    id: str
    dialogue_id: str
    ref_transcript: tuple[str, ...]
    ref_annotation: SemanticAnnotation
    hyp_transcript: Optional[tuple[str, ...]] = None
    hyp_annotation: Optional[SemanticAnnotation] = None


_KEYS = ("ID", "DLG", "REF", "HYP", "SEM", "HYPSEM")


def _parse_block(lines, path, inventory) -> UtteranceRecord:
    start = lines[0][0]
    fields: dict[str, tuple[int, str]] = {}
    for lineno, line in lines:
        key, _, value = line.partition(" ")
        if key not in _KEYS:
            raise FormatError(path, lineno, f"unknown line type {key!r}")
        if key in fields:
            raise FormatError(path, lineno, f"duplicate {key} line in record")
        fields[key] = (lineno, value.strip())
    for key in ("ID", "REF", "SEM"):
        if key not in fields:
            raise FormatError(path, start, f"record starting here has no {key} line")
    rec_id = fields["ID"][1]
    if not rec_id or len(rec_id.split()) != 1:
        raise FormatError(path, fields["ID"][0], "ID must be a single non-empty word")

    def located_annotation(key):
        if key not in fields:
            return None
        lineno, text = fields[key]
        try:
            return parse_annotation(text, inventory)
        except MalformedUnit as exc:
            raise FormatError(path, lineno, str(exc)) from None

    hyp = fields.get("HYP")
    return UtteranceRecord(
        id=rec_id,
        dialogue_id=fields["DLG"][1] if "DLG" in fields else rec_id,
        ref_transcript=tokenize(fields["REF"][1]),
        ref_annotation=located_annotation("SEM"),
        hyp_transcript=tokenize(hyp[1]) if hyp is not None else None,
        hyp_annotation=located_annotation("HYPSEM"),
    )


def loads_corpus(text: str, inventory: Optional[AttributeInventory] = None, path=None):
    inventory = inventory if inventory is not None else load_inventory()
    records: list[UtteranceRecord] = []
    seen: set[str] = set()
    block: list[tuple[int, str]] = []

    def flush():
        if block:
            rec = _parse_block(block, path, inventory)
            if rec.id in seen:
                raise FormatError(path, block[0][0], f"duplicate record id {rec.id!r}")
            seen.add(rec.id)
            records.append(rec)
            block.clear()

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            flush()
        else:
            block.append((lineno, line))
    flush()
    return records


def load_corpus(path, inventory: Optional[AttributeInventory] = None) -> list[UtteranceRecord]:
    path = Path(path)
    return loads_corpus(path.read_text(encoding="utf-8"), inventory, path)


def _line(key: str, value: str) -> str:
    return f"{key} {value}" if value else key


def dumps_corpus(records: Sequence[UtteranceRecord]) -> str:
    blocks = []
    for r in records:
        lines = [_line("ID", r.id), _line("DLG", r.dialogue_id), _line("REF", " ".join(r.ref_transcript))]
        if r.hyp_transcript is not None:
            lines.append(_line("HYP", " ".join(r.hyp_transcript)))
        lines.append(_line("SEM", serialize_annotation(r.ref_annotation)))
        if r.hyp_annotation is not None:
            lines.append(_line("HYPSEM", serialize_annotation(r.hyp_annotation)))
        blocks.append("\n".join(lines) + "\n")
    return "\n".join(blocks)


def save_corpus(records: Sequence[UtteranceRecord], path) -> None:
    Path(path).write_text(dumps_corpus(records), encoding="utf-8")


@dataclass(frozen=True)
class CorpusStats:
    dialogues: int
    utterances: int
    words: int
    semantic_units: int
    su_classes: int

    def rows(self) -> list[tuple[str, int]]:
        return [
            ("Total number of dialogues", self.dialogues),
            ("Total number of utterances", self.utterances),
            ("Total number of words", self.words),
            ("Total number of semantic units", self.semantic_units),
            ("Different classes of semantic units", self.su_classes),
        ]


def corpus_stats(records: Sequence[UtteranceRecord]) -> CorpusStats:
    return CorpusStats(
        dialogues=len({r.dialogue_id for r in records}),
        utterances=len(records),
        words=sum(len(r.ref_transcript) for r in records),
        semantic_units=sum(len(r.ref_annotation) for r in records),
        su_classes=len({u.attribute for r in records for u in r.ref_annotation}),
    )


def render_stats(stats: CorpusStats) -> str:
    rows = stats.rows()
    width = max(len(label) for label, _ in rows)
    return "".join(f"{label:<{width}}  {value:>8d}\n" for label, value in rows)


# --- synthetic corpus ------------------------------------------------------

# role of a bare {city} slot, keyed by the literal word right before it
_CITY_ROLES = {"from": "sourcecity", "to": "goalcity", "via": "via_city", "through": "via_city"}
_DEFAULT_ATTRIBUTE = {
    "city": "goalcity",
    "date": "date",
    "time": "time",
    "marker": "dm_marker",
    "train_type": "train_type",
}
_SLOT_RE = re.compile(r"^\{(\w+)(?::(\w+))?\}$")


@dataclass(frozen=True)
class Slot:
    category: str
    attribute: str


Template = tuple  # of str (literal word) or Slot


def parse_templates(text: str, inventory: Optional[AttributeInventory] = None, path=None) -> list[Template]:
    inventory = inventory if inventory is not None else load_inventory()
    templates = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        items: list = []
        for word in line.split():
            m = _SLOT_RE.match(word)
            if m is None:
                if "{" in word or "}" in word:
                    raise ConfigError(path, lineno, f"malformed slot {word!r}")
                items.append(word.casefold())
                continue
            category = m[1].casefold()
            if category not in CATEGORIES:
                raise ConfigError(path, lineno, f"unknown category {{{category}}}")
            attribute = m[2]
            if attribute is None and category == "city":
                prev = items[-1] if items and isinstance(items[-1], str) else None
                attribute = _CITY_ROLES.get(prev, "goalcity")
            attribute = (attribute or _DEFAULT_ATTRIBUTE[category]).casefold()
            if attribute not in inventory:
                raise ConfigError(path, lineno, f"unknown attribute {attribute!r}")
            items.append(Slot(category, attribute))
        templates.append(tuple(items))
    return templates


def load_templates(path=None, inventory=None) -> list[Template]:
    if path is None:
        text = resources.files("conceptacc").joinpath("data/templates.txt").read_text("utf-8")
        return parse_templates(text, inventory, "<bundled templates.txt>")
    return parse_templates(Path(path).read_text(encoding="utf-8"), inventory, Path(path))


def generate_synthetic_corpus(
    templates: Sequence[Template],
    lexicon: Lexicon,
    n: int,
    seed: int,
    max_dialogue_len: int = 12,
) -> list[UtteranceRecord]:
    """Sample ``n`` records from ``templates`` with annotations by construction.

    Slots of one category within one utterance get distinct fillers where
    the lexicon allows it.  Consecutive records are grouped into dialogues
    of 1..``max_dialogue_len`` utterances.
    """
    if not templates:
        raise ConfigError(None, None, "no templates given")
    pools = {cat: lexicon.entries(cat) for cat in CATEGORIES}
    for t in templates:
        for item in t:
            if isinstance(item, Slot) and not pools[item.category]:
                raise ConfigError(None, None, f"lexicon has no entries for {{{item.category}}}")
    rng = np.random.default_rng(seed)
    records = []
    dialogue, left = 0, 0
    for k in range(n):
        if left == 0:
            dialogue += 1
            left = int(rng.integers(1, max_dialogue_len + 1))
        left -= 1
        template = templates[int(rng.integers(len(templates)))]
        words: list[str] = []
        units = []
        used: dict[str, set] = {}
        for item in template:
            if isinstance(item, str):
                words.append(item)
                continue
            pool = pools[item.category]
            taken = used.setdefault(item.category, set())
            fresh = [e for e in pool if e[0] not in taken] or pool
            phrase, value = fresh[int(rng.integers(len(fresh)))]
            taken.add(phrase)
            words.extend(phrase)
            units.append(SemanticUnit(item.attribute, value))
        records.append(
            UtteranceRecord(
                id=f"u{k + 1:05d}",
                dialogue_id=f"d{dialogue:04d}",
                ref_transcript=tuple(words),
                ref_annotation=tuple(units),
            )
        )
    return records
