"""Formal contexts: object/attribute tables with optional element orders and named views.

The context is the ground truth everything else is computed from. Instances are
immutable; every operation returns a new context plus whatever bookkeeping it
produced (merge maps, promoted views).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Optional

from .errors import (
    AttributeCollision,
    InvalidContext,
    NotInContext,
    NotPurified,
    ObjectSetMismatch,
    OracleScaleExceeded,
)

ORACLE_MAX_OBJECTS = 20

_TAG_BAD = re.compile(r"[=<>]")


class Relator(Enum):
    EQ = "="
    LE = "<="
    GE = ">="


@dataclass(frozen=True)
class AttributeToken:
    """One attribute: a tag, a relator, and a value.

    An empty value means a bare boolean tag and serializes as the tag alone.
    """

    tag: str
    relator: Relator = Relator.EQ
    value: str = ""

    def __post_init__(self):
        if not self.tag:
            raise InvalidContext("attribute tag must be non-empty")
        if _TAG_BAD.search(self.tag):
            raise InvalidContext(f"attribute tag contains a relator character: {self.tag!r}")
        if self.value == "" and self.relator is not Relator.EQ:
            raise InvalidContext("bare tags take the EQ relator")

    @property
    def serial(self) -> str:
        if self.value == "":
            return self.tag
        return f"{self.tag}{self.relator.value}{self.value}"

    @classmethod
    def parse(cls, text: str) -> "AttributeToken":
        # longest relators first so "<=" is not read as "<" + "=".
        for rel in (Relator.LE, Relator.GE, Relator.EQ):
            pos = text.find(rel.value)
            if pos > 0:
                return cls(text[:pos], rel, text[pos + len(rel.value):])
        return cls(text)

    def __repr__(self):
        return f"AttributeToken({self.serial!r})"


def token(text) -> AttributeToken:
    """Coerce a string (or pass a token through) to an AttributeToken."""
    if isinstance(text, AttributeToken):
        return text
    return AttributeToken.parse(text)


@dataclass(frozen=True)
class ConceptView:
    """A named concept specification: a name plus a defining intent and/or extent."""

    name: str
    intent: Optional[frozenset] = None
    extent: Optional[frozenset] = None

    def __post_init__(self):
        if not self.name:
            raise InvalidContext("view name must be non-empty")
        if self.intent is None and self.extent is None:
            raise InvalidContext(f"view {self.name!r} needs a defining intent or extent")
        if self.intent is not None:
            object.__setattr__(self, "intent", frozenset(token(t) for t in self.intent))
        if self.extent is not None:
            object.__setattr__(self, "extent", frozenset(self.extent))


def view(name: str, intent: Optional[Iterable] = None,
         extent: Optional[Iterable] = None) -> ConceptView:
    """Shorthand constructor; an empty intent is a legal definition (the top concept)."""
    if intent is None and extent is None:
        intent = ()
    return ConceptView(
        name,
        intent=frozenset(token(t) for t in intent) if intent is not None else None,
        extent=frozenset(extent) if extent is not None else None,
    )


@dataclass(frozen=True, eq=True)
class MergeMap:
    """Records which elements purification fused, as original -> survivor maps."""

    objects: tuple = ()
    attributes: tuple = ()

    def object_survivor(self, name: str) -> str:
        return dict(self.objects)[name]

    def attribute_survivor(self, tok: AttributeToken) -> AttributeToken:
        return dict(self.attributes)[tok]

    @property
    def fused_objects(self):
        return tuple(sorted(o for o, s in self.objects if o != s))

    @property
    def fused_attributes(self):
        return tuple(sorted((a.serial for a, s in self.attributes if a != s)))


def _closure_pairs(pairs, label):
    """Transitive closure of a strict order given as pairs; rejects cycles."""
    pairs = set(pairs)
    changed = True
    while changed:
        changed = False
        for a, b in list(pairs):
            for c, d in list(pairs):
                if b == c and (a, d) not in pairs:
                    pairs.add((a, d))
                    changed = True
    for a, b in pairs:
        if a == b:
            raise InvalidContext(f"{label} order contains a cycle through {a!r}")
    return frozenset(pairs)


@dataclass(frozen=True)
class FormalContext:
    """Objects x attributes with an incidence relation.

    object_order and attribute_order are strict partial orders (stored
    transitively closed). Incidence must respect them: an attribute below
    another implies a smaller-or-equal column is impossible, i.e. columns grow
    upward; object rows grow downward. views are named concept specifications
    resolved against whatever lattice is later built.
    """

    objects: tuple
    attributes: tuple
    incidence: frozenset
    object_order: frozenset = frozenset()
    attribute_order: frozenset = frozenset()
    views: tuple = ()

    def __post_init__(self):
        objects = tuple(self.objects)
        attributes = tuple(token(a) for a in self.attributes)
        object.__setattr__(self, "objects", objects)
        object.__setattr__(self, "attributes", attributes)
        if len(set(objects)) != len(objects):
            raise InvalidContext("duplicate object names")
        if len(set(attributes)) != len(attributes):
            raise InvalidContext("duplicate attribute tokens")
        oset, aset = set(objects), set(attributes)
        inc = frozenset((g, token(m)) for g, m in self.incidence)
        object.__setattr__(self, "incidence", inc)
        for g, m in inc:
            if g not in oset:
                raise InvalidContext(f"incidence references unknown object {g!r}")
            if m not in aset:
                raise InvalidContext(f"incidence references unknown attribute {m.serial!r}")
        oo = _closure_pairs(self.object_order, "object")
        ao = _closure_pairs(((token(a), token(b)) for a, b in self.attribute_order), "attribute")
        for a, b in oo:
            if a not in oset or b not in oset:
                raise InvalidContext("object order references unknown objects")
        for a, b in ao:
            if a not in aset or b not in aset:
                raise InvalidContext("attribute order references unknown attributes")
        object.__setattr__(self, "object_order", oo)
        object.__setattr__(self, "attribute_order", ao)
        object.__setattr__(self, "views", tuple(self.views))
        # downward inheritance: m <= m' forces col(m) within col(m');
        # g <= g' forces row(g) to contain row(g').
        for m, m2 in ao:
            for g in objects:
                if (g, m) in inc and (g, m2) not in inc:
                    raise InvalidContext(
                        f"incidence not order-preserving: {m.serial} <= {m2.serial} "
                        f"but {g!r} lacks {m2.serial}")
        for g, g2 in oo:
            for m in attributes:
                if (g2, m) in inc and (g, m) not in inc:
                    raise InvalidContext(
                        f"incidence not order-preserving: {g!r} <= {g2!r} "
                        f"but {g!r} lacks {m.serial}")

    # -- basic access -------------------------------------------------

    def row(self, g: str) -> frozenset:
        if g not in set(self.objects):
            raise NotInContext(f"unknown object {g!r}")
        return frozenset(m for m in self.attributes if (g, m) in self.incidence)

    def col(self, m) -> frozenset:
        m = token(m)
        if m not in set(self.attributes):
            raise NotInContext(f"unknown attribute {m.serial!r}")
        return frozenset(g for g in self.objects if (g, m) in self.incidence)

    @property
    def size(self):
        return (len(self.objects), len(self.attributes))

    # -- derived copies ------------------------------------------------

    def with_views(self, *views: ConceptView) -> "FormalContext":
        return replace(self, views=self.views + tuple(views))

    def with_object(self, name: str, row: Iterable) -> "FormalContext":
        row = frozenset(token(t) for t in row)
        for m in row:
            if m not in set(self.attributes):
                raise NotInContext(f"unknown attribute {m.serial!r}")
        return replace(
            self,
            objects=self.objects + (name,),
            incidence=self.incidence | {(name, m) for m in row},
        )

    def with_attribute(self, tok, column: Iterable) -> "FormalContext":
        tok = token(tok)
        column = frozenset(column)
        for g in column:
            if g not in set(self.objects):
                raise NotInContext(f"unknown object {g!r}")
        return replace(
            self,
            attributes=self.attributes + (tok,),
            incidence=self.incidence | {(g, tok) for g in column},
        )

    def restrict_objects(self, keep: Iterable) -> "FormalContext":
        keep = set(keep)
        for g in keep:
            if g not in set(self.objects):
                raise NotInContext(f"unknown object {g!r}")
        objects = tuple(g for g in self.objects if g in keep)
        return replace(
            self,
            objects=objects,
            incidence=frozenset((g, m) for g, m in self.incidence if g in keep),
            object_order=frozenset((a, b) for a, b in self.object_order
                                   if a in keep and b in keep),
        )

    def canonicalized(self) -> "FormalContext":
        """Same context with elements in sorted order, for order-insensitive comparison."""
        return replace(
            self,
            objects=tuple(sorted(self.objects)),
            attributes=tuple(sorted(self.attributes, key=lambda t: t.serial)),
            views=tuple(sorted(self.views, key=lambda v: v.name)),
        )


def context_from_rows(objects, attributes, rows, *, object_order=(), attribute_order=(),
                      views=()) -> FormalContext:
    """Build a context from a name -> attribute-iterable mapping."""
    attributes = tuple(token(a) for a in attributes)
    incidence = set()
    for g, ms in rows.items():
        for m in ms:
            incidence.add((g, token(m)))
    return FormalContext(tuple(objects), attributes, frozenset(incidence),
                         frozenset(object_order), frozenset(attribute_order), tuple(views))


# -- derivation ---------------------------------------------------------


def derive_objects(ctx: FormalContext, objs: Iterable) -> frozenset:
    """A' : attributes common to every object in objs. Empty objs yields all attributes."""
    objs = list(objs)
    known = set(ctx.objects)
    for g in objs:
        if g not in known:
            raise NotInContext(f"unknown object {g!r}")
    out = set(ctx.attributes)
    for g in objs:
        out &= ctx.row(g)
    return frozenset(out)


def derive_attrs(ctx: FormalContext, attrs: Iterable) -> frozenset:
    """B' : objects carrying every attribute in attrs. Empty attrs yields all objects."""
    attrs = [token(a) for a in attrs]
    known = set(ctx.attributes)
    for m in attrs:
        if m not in known:
            raise NotInContext(f"unknown attribute {m.serial!r}")
    out = set(ctx.objects)
    for m in attrs:
        out &= ctx.col(m)
    return frozenset(out)


def closure_attrs(ctx: FormalContext, attrs: Iterable) -> frozenset:
    """B'' : the intent generated by attrs."""
    return derive_objects(ctx, derive_attrs(ctx, attrs))


def closure_objects(ctx: FormalContext, objs: Iterable) -> frozenset:
    """A'' : the extent generated by objs."""
    return derive_attrs(ctx, derive_objects(ctx, objs))


# -- the oracle ---------------------------------------------------------


def enumerate_concepts_oracle(ctx: FormalContext) -> frozenset:
    """Every concept (extent, intent) by exhaustive subset closure.

    Trustworthy, slow, and guarded: this is the reference the fast builder is
    checked against, so it shares no code with it. Enumeration runs over the
    smaller side of the context (the result is the same set either way).
    """
    if len(ctx.objects) > ORACLE_MAX_OBJECTS:
        raise OracleScaleExceeded(
            f"oracle refuses contexts with more than {ORACLE_MAX_OBJECTS} objects")
    out = set()
    if len(ctx.attributes) <= len(ctx.objects):
        side = list(ctx.attributes)
        for bits in range(1 << len(side)):
            b = [side[i] for i in range(len(side)) if bits >> i & 1]
            extent = derive_attrs(ctx, b)
            intent = derive_objects(ctx, extent)
            out.add((extent, intent))
    else:
        side = list(ctx.objects)
        for bits in range(1 << len(side)):
            a = [side[i] for i in range(len(side)) if bits >> i & 1]
            intent = derive_objects(ctx, a)
            extent = derive_attrs(ctx, intent)
            out.add((extent, intent))
    return frozenset(out)


# -- purification and reduction ------------------------------------------


def purify(ctx: FormalContext):
    """Fuse duplicate rows and duplicate columns.

    Survivor of each class is the lexicographically least name (serial form
    for attributes). Returns (purified context, MergeMap). Orders and view
    definitions are rewritten through the survivor map.
    """
    row_class = {}
    for g in ctx.objects:
        row_class.setdefault(ctx.row(g), []).append(g)
    obj_map = {}
    for members in row_class.values():
        surv = min(members)
        for g in members:
            obj_map[g] = surv
    col_class = {}
    for m in ctx.attributes:
        col_class.setdefault(ctx.col(m), []).append(m)
    attr_map = {}
    for members in col_class.values():
        surv = min(members, key=lambda t: t.serial)
        for m in members:
            attr_map[m] = surv
    objects = tuple(g for g in ctx.objects if obj_map[g] == g)
    attributes = tuple(m for m in ctx.attributes if attr_map[m] == m)
    keep_o, keep_a = set(objects), set(attributes)
    incidence = frozenset((g, m) for g, m in ctx.incidence if g in keep_o and m in keep_a)
    oo = frozenset((obj_map[a], obj_map[b]) for a, b in ctx.object_order
                   if obj_map[a] != obj_map[b])
    ao = frozenset((attr_map[a], attr_map[b]) for a, b in ctx.attribute_order
                   if attr_map[a] != attr_map[b])
    views = tuple(
        ConceptView(
            v.name,
            intent=frozenset(attr_map.get(m, m) for m in v.intent) if v.intent is not None else None,
            extent=frozenset(obj_map.get(g, g) for g in v.extent) if v.extent is not None else None,
        )
        for v in ctx.views
    )
    pure = FormalContext(objects, attributes, incidence, oo, ao, views)
    mm = MergeMap(tuple(sorted(obj_map.items())),
                  tuple(sorted(attr_map.items(), key=lambda kv: kv[0].serial)))
    return pure, mm


def is_purified(ctx: FormalContext) -> bool:
    rows = [ctx.row(g) for g in ctx.objects]
    cols = [ctx.col(m) for m in ctx.attributes]
    return len(set(rows)) == len(rows) and len(set(cols)) == len(cols)


def reduce_context(ctx: FormalContext):
    """Drop join-reducible objects and meet-reducible attributes.

    Each dropped element comes back as a promoted ConceptView named after it,
    defined by both sides of its generated concept, so nothing named ever
    disappears from the conceptual surface. The single-concept degenerate case
    keeps everything. Returns (reduced context, promoted views); the reduced
    context's views field already includes the promoted ones.
    """
    if not is_purified(ctx):
        raise NotPurified("reduce requires a purified context")
    from .lattice import build_lattice  # late import; lattice builds on this module

    lat = build_lattice(ctx)
    if len(lat) == 1:
        return ctx, ()
    drop_objects = []
    for g in ctx.objects:
        k = lat.gamma[g]
        if len(lat.lower_covers[k]) != 1:
            drop_objects.append(g)
    drop_attrs = []
    for m in ctx.attributes:
        k = lat.mu[m]
        if len(lat.upper_covers[k]) != 1:
            drop_attrs.append(m)
    promoted = []
    for g in drop_objects:
        c = lat.concept(lat.gamma[g])
        promoted.append(ConceptView(g, intent=c.intent, extent=c.extent))
    for m in drop_attrs:
        c = lat.concept(lat.mu[m])
        promoted.append(ConceptView(m.serial, intent=c.intent, extent=c.extent))
    keep_o = tuple(g for g in ctx.objects if g not in set(drop_objects))
    keep_a = tuple(m for m in ctx.attributes if m not in set(drop_attrs))
    so, sa = set(keep_o), set(keep_a)
    reduced = FormalContext(
        keep_o,
        keep_a,
        frozenset((g, m) for g, m in ctx.incidence if g in so and m in sa),
        frozenset((a, b) for a, b in ctx.object_order if a in so and b in so),
        frozenset((a, b) for a, b in ctx.attribute_order if a in sa and b in sa),
        ctx.views + tuple(promoted),
    )
    return reduced, tuple(promoted)


# -- composition ----------------------------------------------------------


def apposition(left: FormalContext, right: FormalContext,
               left_ns: Optional[str] = None, right_ns: Optional[str] = None) -> FormalContext:
    """Concatenate attribute families of two contexts over the same objects.

    On a token collision, sides that were given a namespace get every one of
    their attributes prefixed with it; a collision with no namespaces raises.
    """
    if left.objects != right.objects:
        raise ObjectSetMismatch("apposition requires identical object lists")
    collide = set(left.attributes) & set(right.attributes)
    lmap = {m: m for m in left.attributes}
    rmap = {m: m for m in right.attributes}
    if collide:
        if left_ns is None and right_ns is None:
            names = ", ".join(sorted(m.serial for m in collide))
            raise AttributeCollision(f"attribute tokens on both sides: {names}")
        if left_ns is not None:
            lmap = {m: AttributeToken(left_ns + m.tag, m.relator, m.value)
                    for m in left.attributes}
        if right_ns is not None:
            rmap = {m: AttributeToken(right_ns + m.tag, m.relator, m.value)
                    for m in right.attributes}
        if set(lmap.values()) & set(rmap.values()):
            raise AttributeCollision("namespacing did not separate the attribute families")
    attributes = tuple(lmap[m] for m in left.attributes) + tuple(rmap[m] for m in right.attributes)
    incidence = frozenset((g, lmap[m]) for g, m in left.incidence) | \
        frozenset((g, rmap[m]) for g, m in right.incidence)
    ao = frozenset((lmap[a], lmap[b]) for a, b in left.attribute_order) | \
        frozenset((rmap[a], rmap[b]) for a, b in right.attribute_order)
    views = tuple(
        ConceptView(v.name,
                    intent=frozenset(lmap.get(m, m) for m in v.intent) if v.intent is not None else None,
                    extent=v.extent)
        for v in left.views
    ) + tuple(
        ConceptView(v.name,
                    intent=frozenset(rmap.get(m, m) for m in v.intent) if v.intent is not None else None,
                    extent=v.extent)
        for v in right.views
    )
    return FormalContext(left.objects, attributes, incidence,
                         left.object_order | right.object_order, ao, views)


def transpose(ctx: FormalContext) -> FormalContext:
    """Swap objects and attributes; attribute serials become object names and vice versa."""
    for g in ctx.objects:
        if _TAG_BAD.search(g):
            raise InvalidContext(f"object name {g!r} is not attribute-safe; cannot transpose")
    objects = tuple(m.serial for m in ctx.attributes)
    attributes = tuple(AttributeToken(g) for g in ctx.objects)
    incidence = frozenset((m.serial, AttributeToken(g)) for g, m in ctx.incidence)
    return FormalContext(objects, attributes, incidence)
