"""Sample corpus used by the docs, the CLI walkthrough, and the test suite.

K1 is a minimal three-object context. DOCS is a six-document project universe
with two nominal scales and five named views, small enough to check every
number by hand.
"""

from __future__ import annotations

from .context import FormalContext, context_from_rows, view
from .hyperize import WebObjectGraph
from .scaling import ConceptualScale, MetadataRecord, ScaleKind, interpret


def k1_context() -> FormalContext:
    return context_from_rows(
        ["g1", "g2", "g3"],
        ["a", "b", "c"],
        {"g1": ["a", "b"], "g2": ["b", "c"], "g3": ["c"]},
    )


K1_FCIF = """TYPE K1
OBJECT
g1 { }
g2 { }
g3 { }
ATTRIBUTE
a { }
b { }
c { }
INCIDENCE
g1 { a b }
g2 { b c }
g3 { c }
"""


def docs_records() -> tuple:
    rows = [
        ("plan1.ps", [("project", "plan1"), ("format", "postscript")]),
        ("plan2.ps", [("project", "plan2"), ("format", "postscript")]),
        ("plan2.doc", [("project", "plan2"), ("format", "text")]),
        ("notes0.txt", [("project", "plan1"), ("format", "text")]),
        ("notes1.txt", [("project", "plan2"), ("format", "text")]),
        ("notes2.txt", [("project", "plan2"), ("format", "text")]),
    ]
    return tuple(MetadataRecord(oid, tuple(pairs)) for oid, pairs in rows)


def docs_scales() -> tuple:
    return (
        ConceptualScale("project", ScaleKind.NOMINAL, ("plan1", "plan2")),
        ConceptualScale("format", ScaleKind.NOMINAL, ("postscript", "text")),
    )


def docs_views() -> tuple:
    return (
        view("Object"),
        view("Document"),
        view("PostScript", ["format=postscript"]),
        view("Plan1", ["project=plan1"]),
        view("Plan2", ["project=plan2"]),
    )


def docs_context() -> FormalContext:
    """The DOCS metadata context, views attached, not yet purified."""
    return interpret(docs_records(), docs_scales()).with_views(*docs_views())


def docs_link_graph() -> WebObjectGraph:
    """A small citation-style graph over the DOCS documents."""
    nodes = tuple(r.object_id for r in docs_records())
    edges = (
        ("notes0.txt", "plan1.ps"),
        ("notes1.txt", "plan2.ps"),
        ("notes2.txt", "plan2.ps"),
        ("plan2.doc", "plan2.ps"),
        ("plan1.ps", "plan2.ps"),
    )
    return WebObjectGraph(nodes, edges)


DOCS_RECORDS_TEXT = """object plan1.ps
project plan1
format postscript

object plan2.ps
project plan2
format postscript

object plan2.doc
project plan2
format text

object notes0.txt
project plan1
format text

object notes1.txt
project plan2
format text

object notes2.txt
project plan2
format text
"""

DOCS_SCALES_TEXT = """nominal project plan1 plan2
nominal format postscript text
"""

DOCS_VIEWS_TEXT = """view Object
view Document
view PostScript "format=postscript"
view Plan1 "project=plan1"
view Plan2 "project=plan2"
"""

DOCS_GRAPH_TEXT = """node plan1.ps
node plan2.ps
node plan2.doc
node notes0.txt
node notes1.txt
node notes2.txt
edge notes0.txt plan1.ps
edge notes1.txt plan2.ps
edge notes2.txt plan2.ps
edge plan2.doc plan2.ps
edge plan1.ps plan2.ps
"""
