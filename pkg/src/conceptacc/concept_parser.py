"""Rule-based slot filler for the toy train-timetable domain.

The parser is deliberately robust: tokens it does not know are dropped,
spans are matched longest-first from left to right, and it never raises
on input text.  Output units appear in utterance order.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field, replace
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Iterator, Optional, Sequence

from .errors import ConfigError
from .semantics import AttributeInventory, SemanticUnit, load_inventory, normalize_value

log = logging.getLogger(__name__)

# lexicon section -> category name used by rules and templates
CATEGORY_SECTIONS = {
    "cities": "city",
    "dates": "date",
    "times": "time",
    "markers": "marker",
    "train_types": "train_type",
}
CATEGORIES = tuple(CATEGORY_SECTIONS.values())
_LEXICON_SECTIONS = set(CATEGORY_SECTIONS) | {"time_patterns", "fillers"}


def _config_lines(text: str, path) -> Iterator[tuple[Optional[str], int, str]]:
    """Yield (section, lineno, content) for every non-blank, non-comment line."""
    section = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = re.sub(r"(^|\s)#.*$", "", raw).strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip().casefold()
            continue
        if section is None:
            raise ConfigError(path, lineno, "entry outside of any [section]")
        yield section, lineno, line


def _read(path, bundled: str) -> tuple[str, object]:
    if path is None:
        text = resources.files("conceptacc").joinpath(f"data/{bundled}").read_text("utf-8")
        return text, f"<bundled {bundled}>"
    return Path(path).read_text(encoding="utf-8"), Path(path)


@dataclass(frozen=True)
class Lexicon:
    # phrase (tuple of tokens) -> (category, value emitted for it)
    phrases: dict[tuple[str, ...], tuple[str, str]]
    time_patterns: tuple[re.Pattern, ...] = ()
    filler_words: frozenset[str] = frozenset()

    @cached_property
    def max_phrase_len(self) -> int:
        return max((len(p) for p in self.phrases), default=1)

    def names(self, category: str) -> set[str]:
        return {" ".join(p) for p, (cat, _) in self.phrases.items() if cat == category}

    @property
    def city_names(self) -> set[str]:
        return self.names("city")

    @property
    def date_words(self) -> set[str]:
        return self.names("date")

    @property
    def train_type_words(self) -> set[str]:
        return self.names("train_type")

    @property
    def marker_words(self) -> dict[str, str]:
        return {" ".join(p): v for p, (cat, v) in self.phrases.items() if cat == "marker"}

    @cached_property
    def content_tokens(self) -> frozenset[str]:
        return frozenset(tok for phrase in self.phrases for tok in phrase)

    def entries(self, category: str) -> list[tuple[tuple[str, ...], str]]:
        """Sorted (phrase, value) pairs of one category, for sampling."""
        return sorted((p, v) for p, (cat, v) in self.phrases.items() if cat == category)

    def match(self, tokens: Sequence[str], start: int, category: Optional[str] = None):
        """Longest lexicon span at ``start``: (length, category, value) or None."""
        for length in range(min(self.max_phrase_len, len(tokens) - start), 0, -1):
            hit = self.phrases.get(tuple(tokens[start:start + length]))
            if hit is not None and (category is None or hit[0] == category):
                return length, hit[0], hit[1]
        if start < len(tokens) and category in (None, "time"):
            if any(p.search(tokens[start]) for p in self.time_patterns):
                return 1, "time", tokens[start]
        return None

    def is_time_token(self, token: str) -> bool:
        return any(p.search(token) for p in self.time_patterns)


def parse_lexicon(text: str, path=None) -> Lexicon:
    phrases: dict[tuple[str, ...], tuple[str, str]] = {}
    patterns: list[re.Pattern] = []
    fillers: set[str] = set()
    filler_lines: dict[str, int] = {}
    for section, lineno, line in _config_lines(text, path):
        if section not in _LEXICON_SECTIONS:
            raise ConfigError(path, lineno, f"unknown lexicon section [{section}]")
        if section == "time_patterns":
            try:
                patterns.append(re.compile(line))
            except re.error as exc:
                raise ConfigError(path, lineno, f"bad time pattern: {exc}") from None
            continue
        if section == "markers":
            word, sep, value = line.partition("=")
            word, value = normalize_value(word), normalize_value(value)
            if not sep or not word or not value:
                raise ConfigError(path, lineno, "marker entries must read 'word = value'")
            items = [(word, value)]
        else:
            words = [normalize_value(w) for w in line.split(",")]
            words = [w for w in words if w]
            items = [(w, w) for w in words]
        for word, value in items:
            if section == "fillers":
                if " " in word:
                    raise ConfigError(path, lineno, f"filler {word!r} must be a single word")
                fillers.add(word)
                filler_lines.setdefault(word, lineno)
                continue
            key = tuple(word.split())
            category = CATEGORY_SECTIONS[section]
            if key in phrases and phrases[key][0] != category:
                raise ConfigError(
                    path, lineno, f"{word!r} listed as both {phrases[key][0]} and {category}"
                )
            phrases[key] = (category, value)
    content = {tok for phrase in phrases for tok in phrase}
    clash = sorted(fillers & content)
    if clash:
        raise ConfigError(path, filler_lines[clash[0]], f"filler {clash[0]!r} also used as a content word")
    return Lexicon(phrases, tuple(patterns), frozenset(fillers))


def load_lexicon(path=None) -> Lexicon:
    """Load a lexicon file; ``None`` loads the bundled one."""
    text, where = _read(path, "lexicon.txt")
    return parse_lexicon(text, where)


@dataclass(frozen=True)
class TriggerRule:
    trigger: tuple[str, ...]
    category: str
    attribute: str

    def __str__(self) -> str:
        return f"{' '.join(self.trigger)} <{self.category}> -> {self.attribute}"


@dataclass(frozen=True)
class RuleSet:
    triggers: tuple[TriggerRule, ...] = ()
    defaults: dict[str, str] = field(default_factory=dict)

    @cached_property
    def trigger_tokens(self) -> frozenset[str]:
        return frozenset(tok for rule in self.triggers for tok in rule.trigger)


_TRIGGER_RE = re.compile(r"^(?P<trigger>[^<>]+?)\s*<(?P<cat>\w+)>\s*(?:->|→|=)\s*(?P<attr>\w+)$")
_DEFAULT_RE = re.compile(r"^(?P<cat>\w+)\s*(?:->|→|=)\s*(?P<attr>\w+)$")


def parse_rules(
    text: str,
    path=None,
    inventory: Optional[AttributeInventory] = None,
    lexicon: Optional[Lexicon] = None,
) -> RuleSet:
    inventory = inventory if inventory is not None else load_inventory()
    triggers: list[TriggerRule] = []
    defaults: dict[str, str] = {}
    for section, lineno, line in _config_lines(text, path):
        if section == "triggers":
            m = _TRIGGER_RE.match(line)
        elif section == "defaults":
            m = _DEFAULT_RE.match(line)
        else:
            raise ConfigError(path, lineno, f"unknown rule section [{section}]")
        if m is None:
            raise ConfigError(path, lineno, f"cannot parse rule {line!r}")
        category, attribute = m["cat"].casefold(), m["attr"].casefold()
        if category not in CATEGORIES:
            raise ConfigError(path, lineno, f"unknown category <{category}>")
        if attribute not in inventory:
            raise ConfigError(path, lineno, f"unknown attribute {attribute!r}")
        if section == "triggers":
            trigger = tuple(normalize_value(m["trigger"]).split())
            if lexicon is not None:
                clash = [t for t in trigger if t in lexicon.filler_words]
                if clash:
                    raise ConfigError(path, lineno, f"trigger word {clash[0]!r} is a filler")
            triggers.append(TriggerRule(trigger, category, attribute))
        else:
            if category in defaults:
                raise ConfigError(path, lineno, f"duplicate default for {category}")
            defaults[category] = attribute
    rules = RuleSet(tuple(triggers), defaults)
    if lexicon is not None and "marker" in defaults:
        attr = defaults["marker"]
        for word, value in sorted(lexicon.marker_words.items()):
            if not inventory.allows(attr, value):
                raise ConfigError(path, None, f"marker {word!r} maps to {value!r}, not allowed for {attr}")
    return rules


def load_rules(path=None, inventory=None, lexicon=None) -> RuleSet:
    """Load a rule file; ``None`` loads the bundled one.

    Passing ``lexicon`` also checks that trigger words are not fillers and
    that marker values fit the marker attribute's closed value set.
    """
    text, where = _read(path, "rules.txt")
    return parse_rules(text, where, inventory, lexicon)


@dataclass(frozen=True)
class Grammar:
    """A lexicon and rule set loaded together."""

    lexicon: Lexicon
    rules: RuleSet

    @classmethod
    def load(cls, lexicon_path=None, rules_path=None, inventory=None) -> "Grammar":
        lexicon = load_lexicon(lexicon_path)
        return cls(lexicon, load_rules(rules_path, inventory, lexicon))

    def parse(self, tokens, trace=None):
        return extract_concepts(tokens, self.lexicon, self.rules, trace)


def extract_concepts(
    tokens: Sequence[str],
    lexicon: Lexicon,
    rules: RuleSet,
    trace: Optional[list[str]] = None,
) -> tuple[SemanticUnit, ...]:
    """Map a token sequence to semantic units.

    Tokens that are neither lexicon content nor trigger words are dropped
    before matching, so fillers and unknown words never influence the
    result.  ``trace`` (a list) collects a human-readable parse log.
    """
    note = trace.append if trace is not None else (lambda _msg: None)
    known = lexicon.content_tokens | rules.trigger_tokens
    kept = []
    for tok in tokens:
        tok = tok.casefold()
        if tok in known or lexicon.is_time_token(tok):
            kept.append(tok)
        else:
            note(f"skip {tok!r}")

    units: list[SemanticUnit] = []
    i = 0
    while i < len(kept):
        best = None
        for rule in rules.triggers:
            n = len(rule.trigger)
            if tuple(kept[i:i + n]) != rule.trigger:
                continue
            span = lexicon.match(kept, i + n, rule.category)
            if span is not None and (best is None or n + span[0] > best[0]):
                best = (n + span[0], rule.attribute, span[2], str(rule))
        if best is None:
            span = lexicon.match(kept, i)
            if span is not None and span[1] in rules.defaults:
                attribute = rules.defaults[span[1]]
                best = (span[0], attribute, span[2], f"bare <{span[1]}> -> {attribute}")
                if span[1] == "city":
                    log.info("ambiguous bare city %r resolved as %s", span[2], attribute)
        if best is None:
            note(f"skip {kept[i]!r} (no rule)")
            i += 1
            continue
        length, attribute, value, how = best
        unit = SemanticUnit(attribute, value)
        note(f"{' '.join(kept[i:i + length])!r} => {unit} [{how}]")
        units.append(unit)
        i += length
    return tuple(units)


def measure_coverage(records, lexicon: Lexicon, rules: RuleSet) -> float:
    """Corpus concept accuracy with the parser reading the reference transcripts."""
    from .metrics import MetricKind, corpus_accuracy

    parsed = [
        replace(r, hyp_annotation=extract_concepts(r.ref_transcript, lexicon, rules))
        for r in records
    ]
    return corpus_accuracy(parsed, MetricKind.CA).micro_value
