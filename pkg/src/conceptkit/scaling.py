"""Conceptual scaling: turning raw metadata records into formal contexts.

A record is a bag of (tag, value) pairs; a scale says how one tag's values
become attribute columns. Nominal scales give one column per value; ordinal
scales give cumulative tag<=value columns ordered by a comparator.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .context import AttributeToken, FormalContext, Relator, apposition
from .errors import InvalidContext, IoError, ScaleValueError


class ScaleKind(Enum):
    NOMINAL = "nominal"
    ORDINAL = "ordinal"


class Comparator(Enum):
    NUMERIC = "numeric"
    LEXICOGRAPHIC = "lex"


@dataclass(frozen=True)
class MetadataRecord:
    """One object and its raw tag/value pairs; tags may repeat."""

    object_id: str
    pairs: tuple

    def __post_init__(self):
        if not self.object_id:
            raise InvalidContext("record needs an object id")
        object.__setattr__(self, "pairs", tuple((str(t), str(v)) for t, v in self.pairs))

    def values(self, tag: str) -> tuple:
        return tuple(v for t, v in self.pairs if t == tag)


def _as_number(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ScaleValueError(f"not a numeric value: {text!r}") from None


@dataclass(frozen=True)
class ConceptualScale:
    """How one tag's raw values become attributes."""

    tag: str
    kind: ScaleKind
    values: tuple
    comparator: Optional[Comparator] = None

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(str(v) for v in self.values))
        if not self.values:
            raise InvalidContext(f"scale on {self.tag!r} has no values")
        if len(set(self.values)) != len(self.values):
            raise InvalidContext(f"scale on {self.tag!r} repeats a value")
        if self.kind is ScaleKind.ORDINAL:
            if self.comparator is None:
                raise InvalidContext(f"ordinal scale on {self.tag!r} needs a comparator")
            keyed = [self._key(v) for v in self.values]
            if keyed != sorted(keyed):
                raise InvalidContext(f"ordinal scale on {self.tag!r} not ascending")
        elif self.comparator is not None:
            raise InvalidContext(f"nominal scale on {self.tag!r} takes no comparator")

    def _key(self, v: str):
        if self.comparator is Comparator.NUMERIC:
            return _as_number(v)
        return v

    def leq(self, raw: str, bound: str) -> bool:
        return self._key(raw) <= self._key(bound)


def apply_scale(records: Sequence[MetadataRecord], scale: ConceptualScale) -> FormalContext:
    """One context per scale: columns from scale values, rows from records.

    Nominal: object incident to tag=v iff some raw pair equals (tag, v).
    Ordinal: object incident to tag<=v iff any raw value for tag satisfies the
    bound; incidence is then automatically inherited up the column order.
    """
    objects, merged = _merge_records(records)
    if scale.kind is ScaleKind.NOMINAL:
        attrs = tuple(AttributeToken(scale.tag, Relator.EQ, v) for v in scale.values)
        incidence = set()
        for g in objects:
            raw = merged[g].values(scale.tag)
            for m in attrs:
                if m.value in raw:
                    incidence.add((g, m))
        return FormalContext(objects, attrs, frozenset(incidence))
    attrs = tuple(AttributeToken(scale.tag, Relator.LE, v) for v in scale.values)
    incidence = set()
    for g in objects:
        raw = merged[g].values(scale.tag)
        for m in attrs:
            if any(scale.leq(r, m.value) for r in raw):
                incidence.add((g, m))
    order = frozenset(
        (attrs[i], attrs[j])
        for i in range(len(attrs))
        for j in range(i + 1, len(attrs))
    )
    return FormalContext(objects, attrs, frozenset(incidence), attribute_order=order)


def _merge_records(records: Sequence[MetadataRecord]):
    objects = []
    merged = {}
    for r in records:
        if r.object_id in merged:
            prev = merged[r.object_id]
            merged[r.object_id] = MetadataRecord(r.object_id, prev.pairs + r.pairs)
        else:
            objects.append(r.object_id)
            merged[r.object_id] = r
    return tuple(objects), merged


def interpret(records: Sequence[MetadataRecord], scales: Sequence[ConceptualScale]) -> FormalContext:
    """Appose every scale's context over the shared object list.

    If any two scales emit the same attribute token, every scale is namespaced
    by position (s1:, s2:, ...) so the families stay apart deterministically.
    """
    if not scales:
        objects, _ = _merge_records(records)
        return FormalContext(objects, (), frozenset())
    parts = [apply_scale(records, s) for s in scales]
    seen = set()
    collide = False
    for p in parts:
        for m in p.attributes:
            if m in seen:
                collide = True
            seen.add(m)
    if collide:
        parts = [
            FormalContext(
                p.objects,
                tuple(AttributeToken(f"s{i}:{m.tag}", m.relator, m.value) for m in p.attributes),
                frozenset((g, AttributeToken(f"s{i}:{m.tag}", m.relator, m.value))
                          for g, m in p.incidence),
                attribute_order=frozenset(
                    (AttributeToken(f"s{i}:{a.tag}", a.relator, a.value),
                     AttributeToken(f"s{i}:{b.tag}", b.relator, b.value))
                    for a, b in p.attribute_order),
            )
            for i, p in enumerate(parts, start=1)
        ]
    out = parts[0]
    for p in parts[1:]:
        out = apposition(out, p)
    return out


# -- document summarization -------------------------------------------------

_FORMAT_BY_EXT = {
    ".ps": "postscript",
    ".eps": "postscript",
    ".html": "html",
    ".htm": "html",
}

_TITLE_RE = re.compile(rb"<title[^>]*>(.*?)</title>", re.IGNORECASE | re.DOTALL)
_HREF_RE = re.compile(rb"""href\s*=\s*(?:"([^"]*)"|'([^']*)')""", re.IGNORECASE)


def summarize_document(source, object_id: Optional[str] = None) -> MetadataRecord:
    """Describe one document as a metadata record: format, size, title, links.

    source is a filesystem path or raw bytes. Format comes from the extension
    when it is telling, otherwise from a light content sniff.
    """
    name = None
    if isinstance(source, (str, Path)):
        name = str(source)
        try:
            data = Path(source).read_bytes()
        except OSError as e:
            raise IoError(f"cannot read {source}: {e}") from e
    else:
        data = bytes(source)
    oid = object_id or (Path(name).name if name else "document")
    fmt = None
    if name:
        fmt = _FORMAT_BY_EXT.get(Path(name).suffix.lower())
    if fmt is None:
        head = data[:256].lstrip().lower()
        if data.startswith(b"%!"):
            fmt = "postscript"
        elif head.startswith(b"<html") or head.startswith(b"<!doctype html"):
            fmt = "html"
        else:
            fmt = "text"
    pairs = [("format", fmt), ("size", str(len(data)))]
    title = None
    m = _TITLE_RE.search(data)
    if fmt == "html" and m:
        title = m.group(1)
    else:
        for line in data.splitlines():
            if line.strip():
                title = line.strip()
                break
    if title is not None:
        text = " ".join(title.decode("utf-8", errors="replace").split())
        if text:
            pairs.append(("title", text[:120]))
    for m in _HREF_RE.finditer(data):
        url = (m.group(1) or m.group(2) or b"").decode("utf-8", errors="replace")
        pairs.append(("link", url))
    return MetadataRecord(oid, tuple(pairs))


# -- file formats ------------------------------------------------------------


def parse_scales(text: str) -> tuple:
    """One scale per line: 'nominal TAG V...' or 'ordinal numeric|lex TAG V...'."""
    scales = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind = parts[0].lower()
        if kind == "nominal":
            if len(parts) < 3:
                raise ScaleValueError(f"line {ln}: nominal scale needs a tag and values")
            scales.append(ConceptualScale(parts[1], ScaleKind.NOMINAL, tuple(parts[2:])))
        elif kind == "ordinal":
            if len(parts) < 4:
                raise ScaleValueError(f"line {ln}: ordinal scale needs comparator, tag, values")
            try:
                comp = Comparator(parts[1].lower())
            except ValueError:
                raise ScaleValueError(f"line {ln}: unknown comparator {parts[1]!r}") from None
            scales.append(ConceptualScale(parts[2], ScaleKind.ORDINAL, tuple(parts[3:]), comp))
        else:
            raise ScaleValueError(f"line {ln}: unknown scale kind {parts[0]!r}")
    return tuple(scales)


def parse_records(text: str) -> tuple:
    """Blank-line separated blocks: 'object ID' then 'TAG VALUE' lines."""
    records = []
    current = None
    pairs = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        if head == "object":
            if current is not None:
                records.append(MetadataRecord(current, tuple(pairs)))
            if not rest.strip():
                raise ScaleValueError(f"line {ln}: object line needs an id")
            current = rest.strip()
            pairs = []
        else:
            if current is None:
                raise ScaleValueError(f"line {ln}: tag line before any object line")
            pairs.append((head, rest.strip()))
    if current is not None:
        records.append(MetadataRecord(current, tuple(pairs)))
    return tuple(records)
