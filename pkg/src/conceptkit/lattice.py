"""Concept lattices: construction, order operations, irreducibility, neighborhoods.

Indexes are 1-based and canonical: concepts are topologically sorted from the
top (index 1), ties broken by lexicographically least intent. Extents are
represented as bitmasks during construction and exposed as frozensets.
"""

from __future__ import annotations

from dataclasses import dataclass

from .context import FormalContext, closure_objects, derive_attrs
from .errors import IndexOutOfRange


@dataclass(frozen=True)
class Concept:
    index: int
    extent: frozenset
    intent: frozenset

    def __repr__(self):
        ext = ",".join(sorted(self.extent))
        it = ",".join(sorted(m.serial for m in self.intent))
        return f"<C{self.index} ({{{ext}}}, {{{it}}})>"


class ConceptLattice:
    """Immutable once built; identity-based equality so instances can key caches."""

    def __init__(self, concepts, upper_covers, lower_covers, gamma, mu, views, source):
        self.concepts = tuple(concepts)
        self.upper_covers = dict(upper_covers)
        self.lower_covers = dict(lower_covers)
        self.gamma = dict(gamma)
        self.mu = dict(mu)
        self.views = dict(views)
        self.source = source
        self._by_extent = {c.extent: c.index for c in self.concepts}
        self._by_intent = {c.intent: c.index for c in self.concepts}
        self.top = 1
        self.bottom = len(self.concepts)
        self._cache = {}

    def __len__(self):
        return len(self.concepts)

    def __iter__(self):
        return iter(self.concepts)

    def concept(self, k: int) -> Concept:
        if not 1 <= k <= len(self.concepts):
            raise IndexOutOfRange(f"concept index {k} outside 1..{len(self.concepts)}")
        return self.concepts[k - 1]

    def extent(self, k: int) -> frozenset:
        return self.concept(k).extent

    def intent(self, k: int) -> frozenset:
        return self.concept(k).intent

    def by_extent(self, extent: frozenset) -> int:
        return self._by_extent[frozenset(extent)]

    def index_of_view(self, name: str):
        return self.views.get(name)


def _intent_key(intent):
    return tuple(sorted(m.serial for m in intent))


def build_lattice(ctx: FormalContext) -> ConceptLattice:
    """All concepts of ctx, ordered and indexed canonically.

    Intents are generated by intersecting object rows (every intent is such an
    intersection, or the full attribute set); extents follow by derivation.
    """
    n_obj = len(ctx.objects)
    obj_pos = {g: i for i, g in enumerate(ctx.objects)}
    attr_pos = {m: i for i, m in enumerate(ctx.attributes)}
    full_attrs = (1 << len(ctx.attributes)) - 1
    rows = {}
    for g in ctx.objects:
        mask = 0
        for m in ctx.row(g):
            mask |= 1 << attr_pos[m]
        rows[g] = mask
    intents = {full_attrs}
    for g in ctx.objects:
        r = rows[g]
        intents |= {i & r for i in intents}
    pairs = []
    for bmask in intents:
        emask = 0
        for g in ctx.objects:
            if rows[g] & bmask == bmask:
                emask |= 1 << obj_pos[g]
        pairs.append((emask, bmask))
    # dedupe extents: the same extent can arise from a non-closed candidate only
    # if two intents coincide, which the set above already prevents.
    attrs_list = list(ctx.attributes)
    objs_list = list(ctx.objects)

    def unmask_e(em):
        return frozenset(objs_list[i] for i in range(n_obj) if em >> i & 1)

    def unmask_i(bm):
        return frozenset(attrs_list[i] for i in range(len(attrs_list)) if bm >> i & 1)

    def popcount(x):
        return bin(x).count("1")

    order = sorted(pairs, key=lambda p: (-popcount(p[0]), _intent_key(unmask_i(p[1]))))
    concepts = []
    emasks = []
    for idx, (em, bm) in enumerate(order, start=1):
        concepts.append(Concept(idx, unmask_e(em), unmask_i(bm)))
        emasks.append(em)
    n = len(concepts)
    upper = {}
    for i in range(n):
        ups = [j for j in range(n)
               if j != i and emasks[i] & emasks[j] == emasks[i] and emasks[i] != emasks[j]]
        ups.sort(key=lambda j: popcount(emasks[j]))
        covers = []
        for j in ups:
            if not any(emasks[z] & emasks[j] == emasks[z] for z in covers):
                covers.append(j)
        upper[i + 1] = tuple(sorted(z + 1 for z in covers))
    lower = {k: [] for k in range(1, n + 1)}
    for k, ups in upper.items():
        for u in ups:
            lower[u].append(k)
    lower = {k: tuple(sorted(v)) for k, v in lower.items()}
    by_intent = {c.intent: c.index for c in concepts}
    gamma = {g: by_intent[frozenset(ctx.row(g))] for g in ctx.objects}
    by_extent = {c.extent: c.index for c in concepts}
    mu = {m: by_extent[frozenset(ctx.col(m))] for m in ctx.attributes}
    views = {}
    known_attrs = set(ctx.attributes)
    known_objs = set(ctx.objects)
    for v in ctx.views:
        k = None
        if v.intent is not None:
            usable = frozenset(m for m in v.intent if m in known_attrs)
            k = by_extent[derive_attrs(ctx, usable)]
        elif v.extent is not None:
            usable = [g for g in v.extent if g in known_objs]
            k = by_extent[closure_objects(ctx, usable)]
        if k is not None and v.name not in views:
            views[v.name] = k
    return ConceptLattice(concepts, upper, lower, gamma, mu, views, ctx)


# -- order operations ------------------------------------------------------


def leq(lat: ConceptLattice, k0: int, k1: int) -> bool:
    """k0 below-or-equal k1: extent containment."""
    return lat.extent(k0) <= lat.extent(k1)


def meet(lat: ConceptLattice, k0: int, k1: int) -> int:
    """Greatest common specialization; extents intersect to an extent."""
    return lat.by_extent(lat.extent(k0) & lat.extent(k1))


def join(lat: ConceptLattice, k0: int, k1: int) -> int:
    """Least common generalization; intents intersect to an intent."""
    return lat._by_intent[lat.intent(k0) & lat.intent(k1)]


def irreducibles(lat: ConceptLattice):
    """(join-irreducible, meet-irreducible) index sets by the cover rule:
    exactly one lower cover / exactly one upper cover. Top and bottom get no
    special treatment here."""
    ji = frozenset(k for k in range(1, len(lat) + 1) if len(lat.lower_covers[k]) == 1)
    mi = frozenset(k for k in range(1, len(lat) + 1) if len(lat.upper_covers[k]) == 1)
    return ji, mi


def readout(lat: ConceptLattice) -> FormalContext:
    """Reconstruct the context: gIm iff gamma(g) <= mu(m).

    Element order, element posets, and views travel back from the source, so
    generation followed by readout is the identity on any context.
    """
    src = lat.source
    incidence = frozenset(
        (g, m)
        for g in src.objects
        for m in src.attributes
        if leq(lat, lat.gamma[g], lat.mu[m])
    )
    return FormalContext(src.objects, src.attributes, incidence,
                         src.object_order, src.attribute_order, src.views)


# -- neighborhoods ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class NeighborhoodLattice:
    """Meet restriction of a lattice at a seed concept.

    lattice is the lattice of the source context restricted to the seed's
    extent (all attribute columns retained). projection maps every global
    index onto the neighborhood (k maps to meet(k, seed)); embedding maps
    local indexes back to the extent-identical global concept.
    """

    lattice: ConceptLattice
    seed: int
    projection: dict
    embedding: dict

    def project(self, k: int) -> int:
        if k not in self.projection:
            raise IndexOutOfRange(f"no global concept {k}")
        return self.projection[k]

    def embed(self, k: int) -> int:
        if k not in self.embedding:
            raise IndexOutOfRange(f"no local concept {k}")
        return self.embedding[k]


def meet_restrict(lat: ConceptLattice, k: int) -> NeighborhoodLattice:
    """The lower neighborhood of k, as a lattice in its own right."""
    lat.concept(k)
    local_ctx = lat.source.restrict_objects(lat.extent(k))
    local = build_lattice(local_ctx)
    projection = {}
    for c in lat.concepts:
        m = meet(lat, c.index, k)
        projection[c.index] = local.by_extent(lat.extent(m))
    embedding = {}
    for c in local.concepts:
        embedding[c.index] = lat.by_extent(c.extent)
    return NeighborhoodLattice(local, k, projection, embedding)
