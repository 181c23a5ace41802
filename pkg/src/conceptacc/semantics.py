"""Semantic units, the attribute inventory and the annotation line format.

An annotation line looks like ``sourcecity:bonn; goalcity:berlin``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .errors import ConfigError, MalformedUnit, UnknownAttribute


def normalize_value(text: str) -> str:
    return " ".join(text.casefold().split())


@dataclass(frozen=True, order=True)
class SemanticUnit:
    attribute: str
    value: str

    def __str__(self) -> str:
        return f"{self.attribute}:{self.value}"


SemanticAnnotation = tuple[SemanticUnit, ...]


@dataclass(frozen=True)
class AttributeInventory:
    """Known attributes; ``domains`` maps closed attributes to allowed values."""

    names: tuple[str, ...]
    domains: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate attribute names")
        for name, values in self.domains.items():
            if name not in self.names:
                raise ValueError(f"domain given for unknown attribute {name!r}")
            if not values:
                raise ValueError(f"closed enumeration for {name!r} is empty")

    def __contains__(self, name: str) -> bool:
        return name in self.names

    def __len__(self) -> int:
        return len(self.names)

    def allows(self, attribute: str, value: str) -> bool:
        domain = self.domains.get(attribute)
        return domain is None or value in domain

    def make_unit(self, attribute: str, value: str) -> SemanticUnit:
        attribute = attribute.strip().casefold()
        value = normalize_value(value)
        if attribute not in self.names:
            raise UnknownAttribute(attribute)
        if not value:
            raise MalformedUnit(f"{attribute}:", "empty value")
        if not self.allows(attribute, value):
            raise MalformedUnit(
                f"{attribute}:{value}",
                f"value not in {'|'.join(self.domains[attribute])}",
            )
        return SemanticUnit(attribute, value)


def parse_inventory(text: str, path: Optional[Path] = None) -> AttributeInventory:
    names: list[str] = []
    domains: dict[str, tuple[str, ...]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, sep, rest = line.partition("=")
        name = name.strip().casefold()
        if not name.isidentifier():
            raise ConfigError(path, lineno, f"bad attribute name {name!r}")
        if name in names:
            raise ConfigError(path, lineno, f"duplicate attribute {name!r}")
        names.append(name)
        if sep:
            values = tuple(normalize_value(v) for v in rest.split("|"))
            if not all(values):
                raise ConfigError(path, lineno, f"empty value in enumeration for {name!r}")
            domains[name] = values
    return AttributeInventory(tuple(names), domains)


def load_inventory(path=None) -> AttributeInventory:
    """Load an inventory file; ``None`` loads the bundled toy inventory."""
    if path is None:
        text = resources.files("conceptacc").joinpath("data/inventory.txt").read_text("utf-8")
        return parse_inventory(text, Path("<bundled inventory.txt>"))
    path = Path(path)
    return parse_inventory(path.read_text(encoding="utf-8"), path)


def parse_annotation(line: str, inventory: AttributeInventory) -> SemanticAnnotation:
    units = []
    for chunk in line.split(";"):
        chunk = chunk.strip()
        if not chunk:
            if line.strip():
                raise MalformedUnit(line, "empty unit between ';' separators")
            continue
        attribute, sep, value = chunk.partition(":")
        if not sep:
            raise MalformedUnit(chunk)
        units.append(inventory.make_unit(attribute, value))
    return tuple(units)


def serialize_annotation(annotation: Sequence[SemanticUnit]) -> str:
    return "; ".join(str(u) for u in annotation)


def su_equal(a: SemanticUnit, b: SemanticUnit) -> bool:
    # Units are compared as wholes: a wrong value on the right attribute is
    # a substitution, not a partial match.
    return a.attribute == b.attribute and a.value == b.value


def substitution_kinds(pairs: Iterable[tuple[SemanticUnit, SemanticUnit]]) -> tuple[int, int]:
    """Split substituted unit pairs into (same attribute, different attribute)."""
    same = cross = 0
    for ref, hyp in pairs:
        if ref.attribute == hyp.attribute:
            same += 1
        else:
            cross += 1
    return same, cross
