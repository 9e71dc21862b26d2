"""Reading and writing the two interchange formats, and converting between them.

The context format carries elements, their order, and incidence; the lattice
format carries concepts, generators, and cover successors. Either one can be
turned into the other: contexts by building the lattice, lattices by reading
the incidence back off the order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .context import AttributeToken, FormalContext
from .errors import (
    CyclicOrder,
    DuplicateDeclaration,
    FcifSyntaxError,
    UndeclaredName,
)
from .lattice import ConceptLattice, build_lattice

BARE_NAME = re.compile(r"[A-Za-z0-9._/:#-]+")

_KEYWORDS = frozenset({"TYPE", "OBJECT", "ATTRIBUTE", "INCIDENCE",
                       "GENERATOR:", "SUCCESSOR", "LAYOUT"})


# -- lexing ------------------------------------------------------------------


@dataclass(frozen=True)
class _Tok:
    text: str
    line: int
    col: int
    quoted: bool
    first_on_line: bool

    @property
    def keyword(self) -> bool:
        return self.first_on_line and not self.quoted and self.text in _KEYWORDS


def _tokenize(text: str):
    toks = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        if raw.startswith("#"):
            continue
        i = 0
        first = True
        while i < len(raw):
            ch = raw[i]
            if ch in " \t":
                i += 1
                continue
            col = i + 1
            if ch in "{}":
                toks.append(_Tok(ch, ln, col, False, first))
                i += 1
            elif ch == '"':
                out = []
                i += 1
                closed = False
                while i < len(raw):
                    c = raw[i]
                    if c == "\\":
                        if i + 1 >= len(raw):
                            raise FcifSyntaxError("dangling escape", line=ln, col=i + 1)
                        out.append(raw[i + 1])
                        i += 2
                    elif c == '"':
                        i += 1
                        closed = True
                        break
                    else:
                        out.append(c)
                        i += 1
                if not closed:
                    raise FcifSyntaxError("unterminated string", line=ln, col=col)
                toks.append(_Tok("".join(out), ln, col, True, first))
            else:
                m = BARE_NAME.match(raw, i)
                if not m:
                    raise FcifSyntaxError(f"unexpected character {ch!r}", line=ln, col=col)
                toks.append(_Tok(m.group(0), ln, col, False, first))
                i = m.end()
            first = False
    return toks


class _Cursor:
    def __init__(self, toks):
        self.toks = toks
        self.pos = 0

    def peek(self) -> Optional[_Tok]:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self) -> _Tok:
        t = self.peek()
        if t is None:
            last = self.toks[-1] if self.toks else None
            raise FcifSyntaxError("unexpected end of input",
                                  line=last.line if last else 1,
                                  col=last.col if last else 1)
        self.pos += 1
        return t

    def expect_keyword(self, word: str) -> _Tok:
        t = self.take()
        if not t.keyword or t.text != word:
            raise FcifSyntaxError(f"expected {word}, found {t.text!r}",
                                  line=t.line, col=t.col)
        return t

    def take_name(self) -> _Tok:
        t = self.take()
        if t.text in "{}" and not t.quoted:
            raise FcifSyntaxError(f"expected a name, found {t.text!r}",
                                  line=t.line, col=t.col)
        if t.keyword:
            raise FcifSyntaxError(f"expected a name, found keyword {t.text}",
                                  line=t.line, col=t.col)
        return t

    def take_list(self):
        t = self.take()
        if t.text != "{" or t.quoted:
            raise FcifSyntaxError(f"expected {{, found {t.text!r}", line=t.line, col=t.col)
        items = []
        while True:
            t = self.take()
            if t.text == "}" and not t.quoted:
                return items
            if t.text == "{" and not t.quoted:
                raise FcifSyntaxError("nested list", line=t.line, col=t.col)
            if t.keyword:
                raise FcifSyntaxError("unterminated list", line=t.line, col=t.col)
            items.append(t)

    def at_keyword(self) -> bool:
        t = self.peek()
        return t is not None and t.keyword


def _entries(cur: _Cursor):
    """name { items } rows until the next section keyword or end of input."""
    rows = []
    while cur.peek() is not None and not cur.at_keyword():
        name = cur.take_name()
        items = cur.take_list()
        rows.append((name, items))
    return rows


# -- documents ---------------------------------------------------------------


@dataclass(frozen=True)
class FcifDocument:
    """A context as written: elements with predecessor lists, then incidence."""

    type_name: str
    objects: tuple        # (name, predecessor names)
    attributes: tuple     # (token text, predecessor token texts)
    incidence: tuple      # (object name, token texts)


@dataclass(frozen=True)
class ClifDocument:
    """A lattice as written: generators per concept, successor (cover) lists."""

    type_name: str
    object_generators: tuple     # (index, object names)
    attribute_generators: tuple  # (index, token texts)
    successors: tuple            # (index, successor indexes)
    layout: tuple = ()           # (index, x, y)

    def concept_count(self) -> int:
        mentioned = [0]
        for k, items in self.successors:
            mentioned.append(k)
            mentioned.extend(items)
        for k, _ in self.object_generators + self.attribute_generators:
            mentioned.append(k)
        for k, _x, _y in self.layout:
            mentioned.append(k)
        return max(mentioned)


def parse_fcif(text: str) -> FcifDocument:
    cur = _Cursor(_tokenize(text))
    cur.expect_keyword("TYPE")
    type_name = cur.take_name().text
    cur.expect_keyword("OBJECT")
    obj_rows = _entries(cur)
    cur.expect_keyword("ATTRIBUTE")
    attr_rows = _entries(cur)
    cur.expect_keyword("INCIDENCE")
    inc_rows = _entries(cur)
    if cur.peek() is not None:
        t = cur.peek()
        raise FcifSyntaxError(f"unexpected {t.text!r} after INCIDENCE section",
                              line=t.line, col=t.col)

    objects = []
    seen = {}
    for name, items in obj_rows:
        if name.text in seen:
            raise DuplicateDeclaration(f"object {name.text!r} declared twice",
                                       line=name.line, col=name.col)
        seen[name.text] = name
        objects.append((name.text, tuple(i.text for i in items)))
    for name, items in obj_rows:
        for i in items:
            if i.text not in seen:
                raise UndeclaredName(f"object {i.text!r} not declared",
                                     line=i.line, col=i.col)
    attributes = []
    aseen = {}
    for name, items in attr_rows:
        if name.text in aseen:
            raise DuplicateDeclaration(f"attribute {name.text!r} declared twice",
                                       line=name.line, col=name.col)
        aseen[name.text] = name
        attributes.append((name.text, tuple(i.text for i in items)))
    for name, items in attr_rows:
        for i in items:
            if i.text not in aseen:
                raise UndeclaredName(f"attribute {i.text!r} not declared",
                                     line=i.line, col=i.col)
    incidence = []
    iseen = set()
    for name, items in inc_rows:
        if name.text not in seen:
            raise UndeclaredName(f"object {name.text!r} not declared",
                                 line=name.line, col=name.col)
        if name.text in iseen:
            raise DuplicateDeclaration(f"incidence row for {name.text!r} repeated",
                                       line=name.line, col=name.col)
        iseen.add(name.text)
        for i in items:
            if i.text not in aseen:
                raise UndeclaredName(f"attribute {i.text!r} not declared",
                                     line=i.line, col=i.col)
        incidence.append((name.text, tuple(i.text for i in items)))
    return FcifDocument(type_name, tuple(objects), tuple(attributes), tuple(incidence))


def _quoted(name: str) -> str:
    if name and BARE_NAME.fullmatch(name) and name not in _KEYWORDS and not name.startswith("#"):
        return name
    body = name.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{body}"'


def _row(name: str, items) -> str:
    inner = " ".join(_quoted(i) for i in items)
    return f"{_quoted(name)} {{ {inner} }}" if inner else f"{_quoted(name)} {{ }}"


def emit_fcif(doc: FcifDocument) -> str:
    lines = [f"TYPE {_quoted(doc.type_name)}", "OBJECT"]
    lines += [_row(n, preds) for n, preds in doc.objects]
    lines.append("ATTRIBUTE")
    lines += [_row(n, preds) for n, preds in doc.attributes]
    lines.append("INCIDENCE")
    lines += [_row(n, row) for n, row in doc.incidence]
    return "\n".join(lines) + "\n"


def parse_clif(text: str) -> ClifDocument:
    cur = _Cursor(_tokenize(text))
    cur.expect_keyword("TYPE")
    type_name = cur.take_name().text

    def expect_generator(side: str):
        cur.expect_keyword("GENERATOR:")
        t = cur.take()
        if t.quoted or t.text != side:
            raise FcifSyntaxError(f"expected {side}, found {t.text!r}",
                                  line=t.line, col=t.col)

    def index_of(tok: _Tok) -> int:
        if tok.quoted or not tok.text.isdigit() or int(tok.text) < 1:
            raise FcifSyntaxError(f"expected a concept index, found {tok.text!r}",
                                  line=tok.line, col=tok.col)
        return int(tok.text)

    def generator_rows(rows):
        out = []
        indexes = set()
        for name, items in rows:
            k = index_of(name)
            if k in indexes:
                raise DuplicateDeclaration(f"generator row {k} repeated",
                                           line=name.line, col=name.col)
            indexes.add(k)
            out.append((k, tuple(i.text for i in items)))
        return tuple(out)

    expect_generator("OBJECT")
    object_generators = generator_rows(_entries(cur))
    expect_generator("ATTRIBUTE")
    attribute_generators = generator_rows(_entries(cur))
    cur.expect_keyword("SUCCESSOR")
    successors = []
    sidx = set()
    for name, items in _entries(cur):
        k = index_of(name)
        if k in sidx:
            raise DuplicateDeclaration(f"successor row {k} repeated",
                                       line=name.line, col=name.col)
        sidx.add(k)
        successors.append((k, tuple(index_of(i) for i in items)))
    layout = []
    if cur.peek() is not None:
        cur.expect_keyword("LAYOUT")
        lidx = set()
        for name, items in _entries(cur):
            k = index_of(name)
            if k in lidx:
                raise DuplicateDeclaration(f"layout row {k} repeated",
                                           line=name.line, col=name.col)
            lidx.add(k)
            if len(items) != 2:
                raise FcifSyntaxError("layout row needs exactly x and y",
                                      line=name.line, col=name.col)
            layout.append((k, _nat(items[0]), _nat(items[1])))
    if cur.peek() is not None:
        t = cur.peek()
        raise FcifSyntaxError(f"unexpected {t.text!r} after LAYOUT section",
                              line=t.line, col=t.col)
    doc = ClifDocument(type_name, object_generators, attribute_generators,
                       tuple(successors), tuple(layout))
    _check_generators_disjoint(doc)
    _reachability(doc)  # raises on cycles
    return doc


def _nat(tok: _Tok) -> int:
    if tok.quoted or not tok.text.isdigit():
        raise FcifSyntaxError(f"expected a natural number, found {tok.text!r}",
                              line=tok.line, col=tok.col)
    return int(tok.text)


def _check_generators_disjoint(doc: ClifDocument):
    for section in (doc.object_generators, doc.attribute_generators):
        owner = {}
        for k, items in section:
            for name in items:
                if name in owner:
                    raise DuplicateDeclaration(
                        f"{name!r} generated at both {owner[name]} and {k}")
                owner[name] = k


def _reachability(doc: ClifDocument):
    """Reflexive-transitive successor closure; detects successor cycles."""
    succ = {}
    for k, items in doc.successors:
        succ[k] = tuple(items)
    n = doc.concept_count()
    up = {}
    state = {}  # 1 = in progress, 2 = done

    def visit(k):
        if state.get(k) == 2:
            return up[k]
        if state.get(k) == 1:
            raise CyclicOrder(f"successor cycle through concept {k}")
        state[k] = 1
        acc = {k}
        for s in succ.get(k, ()):
            acc |= visit(s)
        up[k] = frozenset(acc)
        state[k] = 2
        return up[k]

    for k in range(1, n + 1):
        visit(k)
    return up


def emit_clif(doc: ClifDocument) -> str:
    lines = [f"TYPE {_quoted(doc.type_name)}", "GENERATOR: OBJECT"]
    lines += [_row(str(k), items) for k, items in doc.object_generators]
    lines.append("GENERATOR: ATTRIBUTE")
    lines += [_row(str(k), items) for k, items in doc.attribute_generators]
    lines.append("SUCCESSOR")
    lines += [_row(str(k), tuple(str(i) for i in items)) for k, items in doc.successors]
    if doc.layout:
        lines.append("LAYOUT")
        lines += [_row(str(k), (str(x), str(y))) for k, x, y in doc.layout]
    return "\n".join(lines) + "\n"


# -- conversions -------------------------------------------------------------


def fcif_to_context(doc: FcifDocument) -> FormalContext:
    objects = tuple(name for name, _ in doc.objects)
    attributes = tuple(AttributeToken.parse(text) for text, _ in doc.attributes)
    by_text = {text: tok for (text, _), tok in zip(doc.attributes, attributes)}
    object_order = frozenset(
        (pred, name) for name, preds in doc.objects for pred in preds)
    attribute_order = frozenset(
        (by_text[pred], by_text[name]) for name, preds in doc.attributes for pred in preds)
    incidence = frozenset(
        (g, by_text[text]) for g, row in doc.incidence for text in row)
    return FormalContext(objects, attributes, incidence, object_order, attribute_order)


def context_to_fcif(ctx: FormalContext, type_name: str = "CONTEXT") -> FcifDocument:
    objects = tuple(
        (g, _immediate(ctx.object_order, g, ctx.objects)) for g in ctx.objects)
    attributes = tuple(
        (m.serial, tuple(p.serial for p in _immediate(ctx.attribute_order, m, ctx.attributes)))
        for m in ctx.attributes)
    incidence = tuple(
        (g, tuple(m.serial for m in ctx.attributes if (g, m) in ctx.incidence))
        for g in ctx.objects)
    return FcifDocument(type_name, objects, attributes, incidence)


def _immediate(order: frozenset, x, universe) -> tuple:
    """Predecessors of x with nothing strictly between, in declaration order."""
    below = [p for p in universe if (p, x) in order]
    keep = [p for p in below
            if not any((p, q) in order and (q, x) in order for q in below)]
    return tuple(keep)


def lattice_to_clif(lat: ConceptLattice, type_name: str = "LATTICE") -> ClifDocument:
    n = len(lat)
    objs = {k: [] for k in range(1, n + 1)}
    for g in lat.source.objects:
        objs[lat.gamma[g]].append(g)
    attrs = {k: [] for k in range(1, n + 1)}
    for m in lat.source.attributes:
        attrs[lat.mu[m]].append(m.serial)
    return ClifDocument(
        type_name,
        tuple((k, tuple(sorted(objs[k]))) for k in range(1, n + 1)),
        tuple((k, tuple(sorted(attrs[k]))) for k in range(1, n + 1)),
        tuple((k, lat.upper_covers[k]) for k in range(1, n + 1)),
    )


def fcif_to_clif(doc: FcifDocument) -> ClifDocument:
    lat = build_lattice(fcif_to_context(doc))
    return lattice_to_clif(lat, doc.type_name)


def clif_to_fcif(doc: ClifDocument) -> FcifDocument:
    """Read the incidence back off the order: g I m iff gamma(g) lies below mu(m).

    The lattice format carries no element posets, so the result is flat;
    elements come out sorted by name.
    """
    up = _reachability(doc)
    at_obj = {}
    for k, items in doc.object_generators:
        for g in items:
            at_obj[g] = k
    at_attr = {}
    for k, items in doc.attribute_generators:
        for m in items:
            at_attr[m] = k
    objects = tuple(sorted(at_obj))
    attributes = tuple(sorted(at_attr))
    incidence = tuple(
        (g, tuple(m for m in attributes if at_attr[m] in up[at_obj[g]]))
        for g in objects)
    return FcifDocument(doc.type_name,
                        tuple((g, ()) for g in objects),
                        tuple((m, ()) for m in attributes),
                        incidence)
