"""Ranked browsing over concept lattices, plus goal-directed queries.

Browsing is a walk over conceptual states. A session fixes its mode up front
(extensional: compare by shared objects; intensional: by shared attributes)
and moves between two scopes: global rankings over the whole lattice, then
local rankings inside the neighborhood of the concept of interest. Rankings
show only named concepts, labelled Table-style: [views, elements].

Queries are one-shot: a goal row (or column) is grafted onto the context, the
lattice is rebuilt, relevance is read off as linkage toward the goal concept,
and the temporary element is never seen again.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional

from .context import token
from .errors import NotDisplayable, NotInContext, WrongMode, WrongScope
from .lattice import ConceptLattice, NeighborhoodLattice, build_lattice, meet_restrict
from .linkage import (
    Mode,
    _as_fraction,
    counted_extent,
    counted_intent,
    counted_objects,
    ext_similarity,
    int_diff_measure,
    int_similarity,
)


class Scope(Enum):
    GLOBAL = "global"
    LOCAL = "local"


class Display(Enum):
    DIRECT = "direct"
    REVERSE = "reverse"


@dataclass(frozen=True)
class DisplayLabel:
    """What a ranking prints for one concept: [views, attributes, objects]."""

    concept: int
    views: tuple = ()
    attributes: tuple = ()
    objects: tuple = ()

    @property
    def names(self) -> tuple:
        return self.views + self.attributes + self.objects

    def text(self) -> str:
        return "[" + ", ".join(self.names) + "]"


@dataclass(frozen=True)
class RankEntry:
    label: DisplayLabel
    value: object  # int for rank measures, Fraction for relevance


@dataclass(frozen=True)
class RankedOrder:
    """A ranking of display labels, ready to group and render Table-style.

    integral rankings enumerate every whole rank row between 0 and the
    maximum, empty rows included; fractional (relevance) rankings list only
    the values that occur.
    """

    measure: str
    display: Display
    entries: tuple
    state_extent: frozenset
    state_intent: frozenset
    integral: bool

    def ranking(self) -> dict:
        return {e.label.text(): e.value for e in self.entries}

    def groups(self) -> tuple:
        by_value = {}
        for e in self.entries:
            by_value.setdefault(e.value, []).append(e.label)
        if self.integral:
            mx = max((e.value for e in self.entries), default=0)
            values = range(mx, -1, -1) if self.display is Display.REVERSE else range(0, mx + 1)
            return tuple((v, tuple(by_value.get(v, ()))) for v in values)
        values = sorted(by_value, reverse=self.display is Display.REVERSE)
        return tuple((v, tuple(by_value[v])) for v in values)

    def render(self) -> str:
        lines = []
        for value, labels in self.groups():
            inner = " ".join(l.text() for l in labels)
            lines.append(f"{value} {{ {inner} }}" if inner else f"{value} {{ }}")
        return "\n".join(lines)


def threshold_filter(r: RankedOrder, tau) -> RankedOrder:
    """Labels at or above tau; the survivors no longer enumerate empty rows."""
    t = _as_fraction(tau)
    kept = tuple(e for e in r.entries if e.value >= t)
    return RankedOrder(r.measure, r.display, kept,
                       r.state_extent, r.state_intent, integral=False)


# -- labels ------------------------------------------------------------------


def _label(lat: ConceptLattice, k: int, kinds: frozenset, hidden: frozenset) -> DisplayLabel:
    views = tuple(sorted(n for n, i in lat.views.items() if i == k))
    attributes = ()
    objects = ()
    if "attributes" in kinds:
        attributes = tuple(sorted(
            m.serial for m, i in lat.mu.items() if i == k and m not in hidden))
    if "objects" in kinds:
        objects = tuple(sorted(
            g for g, i in lat.gamma.items() if i == k and g not in hidden))
    return DisplayLabel(k, views, attributes, objects)


def _family(lat: ConceptLattice, kinds: frozenset, hidden: frozenset) -> dict:
    """Concept -> label over the displayable concepts for these label kinds."""
    out = {}
    for k in set(lat.views.values()):
        out[k] = None
    if "attributes" in kinds:
        for m, k in lat.mu.items():
            if m not in hidden:
                out[k] = None
    if "objects" in kinds:
        for g, k in lat.gamma.items():
            if g not in hidden:
                out[k] = None
    for k in out:
        out[k] = _label(lat, k, kinds, hidden)
    return {k: lbl for k, lbl in sorted(out.items()) if lbl.names}


_EXT_GLOBAL = frozenset({"attributes"})
_INT_GLOBAL = frozenset({"objects"})
_EXT_LOCAL = frozenset({"objects"})
_INT_LOCAL = frozenset({"attributes"})


# -- sessions ----------------------------------------------------------------


@dataclass
class BrowseSession:
    """Single-owner browsing state over a shared, read-only lattice.

    state is a global concept index in GLOBAL scope and a local index inside
    the neighborhood in LOCAL scope. Global browsing must happen before the
    first move to LOCAL; the mode never changes once the session exists.
    """

    lattice: ConceptLattice
    mode: Mode
    scope: Scope = Scope.GLOBAL
    state: int = 1
    local: Optional[NeighborhoodLattice] = None
    browsed_global: bool = False


def new_session(lattice: ConceptLattice, mode: Mode) -> BrowseSession:
    return BrowseSession(lattice, mode, state=lattice.top)


def set_mode(session: BrowseSession, mode: Mode) -> BrowseSession:
    if mode is not session.mode:
        raise WrongMode("mode is fixed for the life of a session; start another")
    return session


def _current_lattice(session: BrowseSession) -> ConceptLattice:
    return session.local.lattice if session.scope is Scope.LOCAL else session.lattice


def _displayable(session: BrowseSession) -> dict:
    if session.scope is Scope.GLOBAL:
        kinds = _EXT_GLOBAL if session.mode is Mode.EXT else _INT_GLOBAL
        return _family(session.lattice, kinds, frozenset())
    kinds = _EXT_LOCAL if session.mode is Mode.EXT else _INT_LOCAL
    # names come from the global concept each local concept embeds into
    out = {}
    glob = _family(session.lattice, kinds, frozenset())
    for c in session.local.lattice.concepts:
        g = session.local.embed(c.index)
        if g in glob:
            lbl = glob[g]
            out[c.index] = DisplayLabel(c.index, lbl.views, lbl.attributes, lbl.objects)
    return out


def rank_similarity(session: BrowseSession) -> RankedOrder:
    """Global ranking by shared extent (or intent), largest rank first."""
    if session.scope is not Scope.GLOBAL:
        raise WrongScope("similarity ranking is a global-scope operation")
    lat = session.lattice
    labels = _displayable(session)
    if session.mode is Mode.EXT:
        measure = "ext_similarity"
        value = lambda k: ext_similarity(lat, session.state, k)
    else:
        measure = "int_similarity"
        value = lambda k: int_similarity(lat, session.state, k)
    entries = tuple(RankEntry(lbl, value(k)) for k, lbl in labels.items())
    session.browsed_global = True
    return RankedOrder(measure, Display.REVERSE, entries,
                       lat.extent(session.state),
                       frozenset(m.serial for m in lat.intent(session.state)),
                       integral=True)


def rank_difference(session: BrowseSession) -> RankedOrder:
    """Local ranking by what each neighbor adds to the current state, 0 first."""
    if session.scope is not Scope.LOCAL:
        raise WrongScope("difference ranking is a local-scope operation")
    local = session.local.lattice
    labels = _displayable(session)
    if session.mode is Mode.EXT:
        measure = "int_difference"
        value = lambda k: int_diff_measure(local, session.state, k)
    else:
        measure = "ext_difference"
        counted = counted_objects(local)
        value = lambda k: len((local.extent(k) - local.extent(session.state)) & counted)
    entries = tuple(RankEntry(lbl, value(k)) for k, lbl in labels.items())
    return RankedOrder(measure, Display.DIRECT, entries,
                       local.extent(session.state),
                       frozenset(m.serial for m in local.intent(session.state)),
                       integral=True)


def transition(session: BrowseSession, target: int) -> BrowseSession:
    """Move the conceptual state to a displayed concept in the current scope."""
    _current_lattice(session).concept(target)
    if target not in _displayable(session):
        raise NotDisplayable(f"concept {target} has no label in this scope")
    session.state = target
    if session.scope is Scope.GLOBAL:
        session.browsed_global = True
    return session


def set_scope(session: BrowseSession, scope: Scope) -> BrowseSession:
    """Dive into the neighborhood of the current state, or surface from it."""
    if scope is session.scope:
        return session
    if scope is Scope.LOCAL:
        if not session.browsed_global:
            raise WrongScope("browse globally before going local")
        session.local = meet_restrict(session.lattice, session.state)
        session.state = session.local.project(session.state)
        session.scope = Scope.LOCAL
    else:
        session.state = session.local.embed(session.state)
        session.local = None
        session.scope = Scope.GLOBAL
    return session


# -- goal queries ------------------------------------------------------------


def _fresh_name(taken, stem: str) -> str:
    name = stem
    n = 1
    while name in taken:
        n += 1
        name = f"{stem}{n}"
    return name


def _relevance(base, full, goal_k: int, k: int) -> Fraction:
    if not base:
        return Fraction(1) if k == goal_k else Fraction(0)
    return Fraction(len(base & full(k)), len(base))


def intensional_query(lattice: ConceptLattice, attrs: Iterable) -> RankedOrder:
    """Rank views and objects by relevance to a goal set of attributes.

    The goal becomes a temporary object with exactly those attributes; its
    concept is where the query lands, and relevance is intensional linkage
    from there. The input lattice and its context are untouched.
    """
    ctx = lattice.source
    want = [token(t) for t in attrs]
    known = set(ctx.attributes)
    for m in want:
        if m not in known:
            raise NotInContext(f"unknown attribute {m.serial!r}")
    goal = _fresh_name(set(ctx.objects), "?goal")
    lat = build_lattice(ctx.with_object(goal, want))
    goal_k = lat.gamma[goal]
    hidden = frozenset({goal})
    labels = _family(lat, _INT_GLOBAL, hidden)
    base = counted_intent(lat, goal_k)
    entries = tuple(
        RankEntry(lbl, _relevance(base, lambda k: lat.intent(k), goal_k, k))
        for k, lbl in labels.items())
    return RankedOrder("int_linkage", Display.REVERSE, entries,
                       lat.extent(goal_k) - {goal},
                       frozenset(m.serial for m in lat.intent(goal_k)),
                       integral=False)


def extensional_query(lattice: ConceptLattice, objs: Iterable) -> RankedOrder:
    """Rank views and attributes by relevance to a goal set of prototype objects."""
    ctx = lattice.source
    want = [str(g) for g in objs]
    known = set(ctx.objects)
    for g in want:
        if g not in known:
            raise NotInContext(f"unknown object {g!r}")
    taken = {m.serial for m in ctx.attributes}
    goal_tok = token(_fresh_name(taken, "?goal"))
    lat = build_lattice(ctx.with_attribute(goal_tok, want))
    goal_k = lat.mu[goal_tok]
    hidden = frozenset({goal_tok})
    labels = _family(lat, _EXT_GLOBAL, hidden)
    base = counted_extent(lat, goal_k)
    entries = tuple(
        RankEntry(lbl, _relevance(base, lambda k: lat.extent(k), goal_k, k))
        for k, lbl in labels.items())
    return RankedOrder("ext_linkage", Display.REVERSE, entries,
                       lat.extent(goal_k),
                       frozenset(m.serial for m in lat.intent(goal_k) if m != goal_tok),
                       integral=False)
