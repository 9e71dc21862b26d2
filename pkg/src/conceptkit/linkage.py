"""Similarity, linkage, and difference measures between concepts.

Extensional measures compare extents (shared objects, conditional-probability
style ratios); intensional measures are their duals on intents. Cardinalities
count only one representative object per fused row class whose concept is
join-irreducible (dually for attributes), which is exactly the element set of
the purified, reduced context; raw=True counts everything instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import EmptyExtent, EmptyIntent, IndexOutOfRange, ThresholdOutOfRange
from .lattice import ConceptLattice


class Mode(Enum):
    EXT = "ext"
    INT = "int"


def _least_per_class(elements, to_concept, covers, n, key):
    classes = {}
    for e in elements:
        classes.setdefault(to_concept[e], []).append(e)
    out = set()
    for k, members in classes.items():
        # n == 1: the degenerate one-concept lattice still counts its class
        if n == 1 or len(covers[k]) == 1:
            out.add(min(members, key=key))
    return frozenset(out)


def counted_objects(lat: ConceptLattice) -> frozenset:
    """Objects that survive purification and reduction, read off the lattice."""
    got = lat._cache.get("counted_objects")
    if got is None:
        got = _least_per_class(lat.source.objects, lat.gamma, lat.lower_covers,
                               len(lat), key=lambda g: g)
        lat._cache["counted_objects"] = got
    return got


def counted_attributes(lat: ConceptLattice) -> frozenset:
    got = lat._cache.get("counted_attributes")
    if got is None:
        got = _least_per_class(lat.source.attributes, lat.mu, lat.upper_covers,
                               len(lat), key=lambda m: m.serial)
        lat._cache["counted_attributes"] = got
    return got


def counted_extent(lat: ConceptLattice, k: int) -> frozenset:
    return lat.extent(k) & counted_objects(lat)


def counted_intent(lat: ConceptLattice, k: int) -> frozenset:
    return lat.intent(k) & counted_attributes(lat)


# -- scalar measures ---------------------------------------------------------


def ext_similarity(lat: ConceptLattice, k0: int, k1: int, raw: bool = False) -> int:
    """Shared-extent size |extent(k0) ∩ extent(k1)|. Symmetric."""
    shared = lat.extent(k0) & lat.extent(k1)
    if not raw:
        shared &= counted_objects(lat)
    return len(shared)


def ext_linkage(lat: ConceptLattice, k0: int, k1: int, raw: bool = False) -> Fraction:
    """Fraction of k0's extent shared with k1; 1 exactly when k0 lies below k1."""
    base = lat.extent(k0)
    if not raw:
        base &= counted_objects(lat)
    if not base:
        raise EmptyExtent(f"concept {k0} has no counted objects")
    return Fraction(ext_similarity(lat, k0, k1, raw=raw), len(base))


def int_difference(lat: ConceptLattice, k0: int, k1: int) -> frozenset:
    """Attributes of k1 that k0 lacks. Empty exactly when k0 lies below k1."""
    return lat.intent(k1) - lat.intent(k0)


def int_diff_measure(lat: ConceptLattice, k0: int, k1: int, raw: bool = False) -> int:
    diff = int_difference(lat, k0, k1)
    if not raw:
        diff &= counted_attributes(lat)
    return len(diff)


def int_similarity(lat: ConceptLattice, k0: int, k1: int, raw: bool = False) -> int:
    shared = lat.intent(k0) & lat.intent(k1)
    if not raw:
        shared &= counted_attributes(lat)
    return len(shared)


def int_linkage(lat: ConceptLattice, k0: int, k1: int, raw: bool = False) -> Fraction:
    base = lat.intent(k0)
    if not raw:
        base &= counted_attributes(lat)
    if not base:
        raise EmptyIntent(f"concept {k0} has no counted attributes")
    return Fraction(int_similarity(lat, k0, k1, raw=raw), len(base))


def ext_difference(lat: ConceptLattice, k0: int, k1: int) -> frozenset:
    return lat.extent(k1) - lat.extent(k0)


# -- matrix form and crispification -----------------------------------------


@dataclass(frozen=True)
class LinkageMatrix:
    """Square matrix of linkage values, 1-based like concept indexes.

    Rows whose source concept has no counted extent (intent, in INT mode) take
    the convention 1 on the diagonal, 0 elsewhere: the ratio is undefined and
    an all-but-self row of zeros keeps crispification quiet about it.
    """

    mode: Mode
    values: tuple

    @property
    def dimension(self) -> int:
        return len(self.values)

    def entry(self, k0: int, k1: int) -> Fraction:
        n = len(self.values)
        if not (1 <= k0 <= n and 1 <= k1 <= n):
            raise IndexOutOfRange(f"entry ({k0},{k1}) outside 1..{n}")
        return self.values[k0 - 1][k1 - 1]

    def row(self, k0: int) -> tuple:
        n = len(self.values)
        if not 1 <= k0 <= n:
            raise IndexOutOfRange(f"row {k0} outside 1..{n}")
        return self.values[k0 - 1]


def linkage_matrix(lat: ConceptLattice, mode: Mode = Mode.EXT) -> LinkageMatrix:
    n = len(lat)
    if mode is Mode.EXT:
        bases = [counted_extent(lat, k) for k in range(1, n + 1)]
        parts = [lat.extent(k) for k in range(1, n + 1)]
    else:
        bases = [counted_intent(lat, k) for k in range(1, n + 1)]
        parts = [lat.intent(k) for k in range(1, n + 1)]
    rows = []
    for i in range(n):
        if not bases[i]:
            rows.append(tuple(Fraction(1) if j == i else Fraction(0) for j in range(n)))
            continue
        denom = len(bases[i])
        rows.append(tuple(Fraction(len(bases[i] & parts[j]), denom) for j in range(n)))
    return LinkageMatrix(mode, tuple(rows))


@dataclass(frozen=True)
class CrispLink:
    source: int
    target: int
    weight: Fraction


def _as_fraction(x) -> Fraction:
    # float thresholds are read as the decimal the caller typed (0.4 means 2/5)
    if isinstance(x, float):
        return Fraction(str(x))
    return Fraction(x)


def crispify(matrix: LinkageMatrix, threshold) -> tuple:
    """Links (i, j), i != j, whose linkage clears the threshold; weights kept."""
    t = _as_fraction(threshold)
    if not 0 < t <= 1:
        raise ThresholdOutOfRange(f"threshold {threshold} outside (0,1]")
    links = []
    n = matrix.dimension
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            w = matrix.entry(i, j)
            if w >= t:
                links.append(CrispLink(i, j, w))
    return tuple(links)


def export_links(links) -> str:
    """One `source target weight` line per link, weight to 6 decimal places."""
    return "".join(f"{l.source} {l.target} {float(l.weight):.6f}\n" for l in links)
