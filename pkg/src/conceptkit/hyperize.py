"""From linked document collections to concept-structured webs.

The batch pipeline: scale metadata records into a context, optionally fold in
hyperlink columns, purify and reduce, build the lattice, compute extensional
linkage, and crispify to weighted links. emit_web writes the result as a small
static site, one page per named concept.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from html import escape
from pathlib import Path
from typing import Optional, Sequence

from .context import AttributeToken, FormalContext, apposition, purify, reduce_context
from .errors import GraphIntegrity, InvalidContext, IoError, ThresholdOutOfRange
from .lattice import ConceptLattice, build_lattice
from .linkage import Mode, _as_fraction, crispify, export_links, linkage_matrix
from .scaling import interpret

log = logging.getLogger(__name__)


class Orientation(Enum):
    # source document carries the target as an attribute, or the reverse
    CROSS_REFERENTIAL = "cross"
    HIERARCHICAL = "hier"


@dataclass(frozen=True)
class WebObjectGraph:
    """Directed link graph over named resources. Self-links are dropped."""

    nodes: tuple
    edges: frozenset

    def __post_init__(self):
        nodes = tuple(str(n) for n in self.nodes)
        object.__setattr__(self, "nodes", nodes)
        known = set(nodes)
        if len(known) != len(nodes):
            raise GraphIntegrity("duplicate node names")
        kept = set()
        for s, t in self.edges:
            s, t = str(s), str(t)
            if s not in known or t not in known:
                raise GraphIntegrity(f"edge {s} -> {t} references an undeclared node")
            if s == t:
                log.warning("dropping self-link on %s", s)
                continue
            kept.add((s, t))
        object.__setattr__(self, "edges", frozenset(kept))


def _link_token(node: str) -> AttributeToken:
    return AttributeToken("link:" + node)


def ingest_link_graph(g: WebObjectGraph,
                      orientation: Orientation = Orientation.CROSS_REFERENTIAL) -> FormalContext:
    """Graph as context: rows are nodes, columns are link:<node> markers.

    CROSS_REFERENTIAL marks the source with its target; HIERARCHICAL the
    opposite, so parents accumulate their pointers.
    """
    for n in g.nodes:
        if any(ch in n for ch in "=<>"):
            raise GraphIntegrity(f"node name {n!r} cannot serve as a link attribute")
    attrs = tuple(_link_token(n) for n in g.nodes)
    incidence = set()
    for s, t in g.edges:
        if orientation is Orientation.CROSS_REFERENTIAL:
            incidence.add((s, _link_token(t)))
        else:
            incidence.add((t, _link_token(s)))
    return FormalContext(g.nodes, attrs, frozenset(incidence))


def parse_graph_file(text: str) -> WebObjectGraph:
    """`node <name>` and `edge <src> <dst>` lines; # comments and blanks skipped."""
    nodes = []
    edges = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "node" and len(parts) == 2:
            nodes.append(parts[1])
        elif parts[0] == "edge" and len(parts) == 3:
            edges.append((parts[1], parts[2]))
        else:
            raise GraphIntegrity(f"line {ln}: expected 'node <name>' or 'edge <src> <dst>'")
    return WebObjectGraph(tuple(nodes), frozenset(edges))


def enrich(link_ctx: FormalContext, meta_ctx: FormalContext) -> FormalContext:
    """Appose link columns with metadata columns over the same documents."""
    return apposition(link_ctx, meta_ctx, left_ns="link:", right_ns="meta:")


def _aligned_link_context(graph: WebObjectGraph, orientation: Orientation,
                          objects: tuple) -> FormalContext:
    # keep a column per graph node, but rows must match the record objects
    raw = ingest_link_graph(graph, orientation)
    present = set(objects)
    incidence = frozenset((g, m) for g, m in raw.incidence if g in present)
    return FormalContext(objects, raw.attributes, incidence)


@dataclass(frozen=True)
class HyperizationConfig:
    scales: tuple
    threshold: object = Fraction(1)
    orientation: Orientation = Orientation.CROSS_REFERENTIAL

    def __post_init__(self):
        object.__setattr__(self, "scales", tuple(self.scales))
        t = _as_fraction(self.threshold)
        if not 0 < t <= 1:
            raise ThresholdOutOfRange(f"threshold {self.threshold} outside (0,1]")
        object.__setattr__(self, "threshold", t)


def hyperize(records: Sequence, config: HyperizationConfig,
             graph: Optional[WebObjectGraph] = None, views: Sequence = ()):
    """records -> (lattice, linkage matrix, crisp links).

    All three levels are returned: the crisp links are the lossy end product,
    and callers wanting the full picture read the matrix or the lattice.
    """
    if not records:
        raise InvalidContext("hyperization needs at least one record")
    ctx = interpret(records, config.scales)
    if graph is not None:
        ctx = enrich(_aligned_link_context(graph, config.orientation, ctx.objects), ctx)
    if views:
        ctx = ctx.with_views(*views)
    pure, _ = purify(ctx)
    reduced, _ = reduce_context(pure)
    lat = build_lattice(reduced)
    matrix = linkage_matrix(lat, Mode.EXT)
    links = crispify(matrix, config.threshold)
    return lat, matrix, links


# -- static site output ------------------------------------------------------


def concept_names(lat: ConceptLattice, k: int) -> tuple:
    """Display names for one concept: views, then attributes, then objects."""
    vs = sorted(name for name, idx in lat.views.items() if idx == k)
    ms = sorted(m.serial for m, idx in lat.mu.items() if idx == k)
    gs = sorted(g for g, idx in lat.gamma.items() if idx == k)
    return tuple(vs) + tuple(ms) + tuple(gs)


def _page_name(k: int) -> str:
    return f"concept-{k:03d}.html"


def emit_web(lat: ConceptLattice, links, out_dir) -> tuple:
    """One page per named concept plus links.txt; returns the written paths.

    Links whose target has no page render as plain text instead of an anchor.
    """
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise IoError(f"cannot create {out}: {e}") from e
    named = {k: concept_names(lat, k) for k in range(1, len(lat) + 1)}
    named = {k: names for k, names in named.items() if names}
    by_source = {}
    for l in links:
        by_source.setdefault(l.source, []).append(l)
    written = []
    for k, names in sorted(named.items()):
        title = names[0]
        lines = [
            f"<title>{escape(title)}</title>",
            f"<h1>{escape(title)}</h1>",
            f"<p>{escape(', '.join(names))}</p>",
            "<h2>Intent</h2>",
            "<ul>",
        ]
        lines += [f"<li>{escape(m.serial)}</li>" for m in sorted(lat.intent(k), key=lambda m: m.serial)]
        lines += ["</ul>", "<h2>Extent</h2>", "<ul>"]
        lines += [f"<li>{escape(g)}</li>" for g in sorted(lat.extent(k))]
        lines += ["</ul>", "<h2>Links</h2>", "<ul>"]
        for l in sorted(by_source.get(k, ()), key=lambda l: l.target):
            weight = f"{float(l.weight):.6f}"
            target_names = named.get(l.target)
            if target_names:
                lines.append(
                    f'<li><a href="{_page_name(l.target)}">{escape(target_names[0])}</a>'
                    f" ({weight})</li>")
            else:
                lines.append(f"<li>concept {l.target} ({weight})</li>")
        lines += ["</ul>"]
        path = out / _page_name(k)
        try:
            path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        except OSError as e:
            raise IoError(f"cannot write {path}: {e}") from e
        written.append(path)
    links_path = out / "links.txt"
    try:
        links_path.write_text(export_links(links), encoding="utf-8")
    except OSError as e:
        raise IoError(f"cannot write {links_path}: {e}") from e
    written.append(links_path)
    return tuple(written)


def project_links_to_objects(lat: ConceptLattice, links) -> tuple:
    """Concept links pushed down to object pairs through their object labels.

    Each (g, h) pair keeps the strongest weight that produced it; pairs with
    g == h are dropped.
    """
    at = {}
    for g, k in lat.gamma.items():
        at.setdefault(k, []).append(g)
    best = {}
    for l in links:
        for g in at.get(l.source, ()):
            for h in at.get(l.target, ()):
                if g == h:
                    continue
                prev = best.get((g, h))
                if prev is None or l.weight > prev:
                    best[(g, h)] = l.weight
    return tuple((g, h, w) for (g, h), w in sorted(best.items()))
