"""A directory of named contexts, lattices, scales, and records.

Layout: contexts/*.fcif, lattices/*.clif, scales/*.cfg, records/*.rec.
A context file may have a sibling <stem>.views file declaring named concepts;
it is picked up automatically. Lattices are built on demand through the
purify, reduce, build pipeline and cached per identifier.
"""

from __future__ import annotations

import threading
from pathlib import Path
from typing import Optional

from .context import FormalContext, purify, reduce_context, view
from .errors import ConceptkitError, FcifSyntaxError, IoError, NotInContext
from .interchange import (
    _quoted,
    _tokenize,
    clif_to_fcif,
    fcif_to_context,
    parse_clif,
    parse_fcif,
)
from .lattice import ConceptLattice, build_lattice
from .scaling import parse_records, parse_scales


def parse_views(text: str) -> tuple:
    """`view <name> <attribute tokens...>` lines; same lexical rules as contexts."""
    rows = {}
    for t in _tokenize(text):
        rows.setdefault(t.line, []).append(t)
    views = []
    for ln in sorted(rows):
        toks = rows[ln]
        head = toks[0]
        if head.quoted or head.text != "view":
            raise FcifSyntaxError("expected 'view'", line=head.line, col=head.col)
        if len(toks) < 2:
            raise FcifSyntaxError("view needs a name", line=head.line, col=head.col)
        name = toks[1]
        if name.text in "{}" and not name.quoted:
            raise FcifSyntaxError("view needs a name", line=name.line, col=name.col)
        views.append(view(name.text, [t.text for t in toks[2:]]))
    return tuple(views)


def emit_views(views) -> str:
    lines = []
    for v in views:
        parts = ["view", _quoted(v.name)]
        parts += [_quoted(m.serial) for m in sorted(v.intent or (), key=lambda m: m.serial)]
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n" if lines else ""


def load_context_file(path) -> FormalContext:
    """Parse one .fcif file, folding in its .views sidecar when present."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise IoError(f"cannot read {path}: {e}") from e
    ctx = fcif_to_context(parse_fcif(text))
    sidecar = path.with_suffix(".views")
    if sidecar.exists():
        try:
            vtext = sidecar.read_text(encoding="utf-8")
        except OSError as e:
            raise IoError(f"cannot read {sidecar}: {e}") from e
        ctx = ctx.with_views(*parse_views(vtext))
    return ctx


def pipeline_lattice(ctx: FormalContext) -> ConceptLattice:
    """purify -> reduce -> build; what every measure in this package assumes."""
    pure, _ = purify(ctx)
    reduced, _ = reduce_context(pure)
    return build_lattice(reduced)


class WorkspaceStore:
    """Thread-safe file-backed store; lattices cached after first build."""

    def __init__(self, root):
        self.root = Path(root)
        self._lock = threading.Lock()
        self._lattices = {}

    def _dir(self, kind: str) -> Path:
        return self.root / kind

    def _stems(self, kind: str, suffix: str) -> tuple:
        d = self._dir(kind)
        if not d.is_dir():
            return ()
        return tuple(sorted(p.stem for p in d.glob(f"*{suffix}")))

    def contexts(self) -> tuple:
        return self._stems("contexts", ".fcif")

    def lattice_ids(self) -> tuple:
        clifs = self._stems("lattices", ".clif")
        return tuple(sorted(set(self.contexts()) | set(clifs)))

    def load_context(self, name: str) -> FormalContext:
        path = self._dir("contexts") / f"{name}.fcif"
        if not path.is_file():
            raise NotInContext(f"no context named {name!r}")
        return load_context_file(path)

    def lattice(self, name: str) -> ConceptLattice:
        with self._lock:
            got = self._lattices.get(name)
        if got is not None:
            return got
        ctx_path = self._dir("contexts") / f"{name}.fcif"
        clif_path = self._dir("lattices") / f"{name}.clif"
        if ctx_path.is_file():
            lat = pipeline_lattice(load_context_file(ctx_path))
        elif clif_path.is_file():
            try:
                text = clif_path.read_text(encoding="utf-8")
            except OSError as e:
                raise IoError(f"cannot read {clif_path}: {e}") from e
            ctx = fcif_to_context(clif_to_fcif(parse_clif(text)))
            lat = pipeline_lattice(ctx)
        else:
            raise NotInContext(f"no lattice named {name!r}")
        with self._lock:
            return self._lattices.setdefault(name, lat)

    def layout(self, name: str) -> tuple:
        """Stored diagram coordinates for a lattice, or () when there are none.

        Coordinates come from the LAYOUT section of lattices/<name>.clif. A
        layout is ignored wholesale if any row points outside the lattice;
        a partial or stale layout is worse than none.
        """
        path = self._dir("lattices") / f"{name}.clif"
        if not path.is_file():
            return ()
        try:
            doc = parse_clif(path.read_text(encoding="utf-8"))
        except (ConceptkitError, OSError):
            return ()
        if not doc.layout:
            return ()
        n = len(self.lattice(name))
        if any(not 1 <= k <= n for k, _x, _y in doc.layout):
            return ()
        return tuple(doc.layout)

    def scales(self, name: str):
        path = self._dir("scales") / f"{name}.cfg"
        if not path.is_file():
            raise NotInContext(f"no scale config named {name!r}")
        return parse_scales(path.read_text(encoding="utf-8"))

    def records(self, name: str):
        path = self._dir("records") / f"{name}.rec"
        if not path.is_file():
            raise NotInContext(f"no record file named {name!r}")
        return parse_records(path.read_text(encoding="utf-8"))
