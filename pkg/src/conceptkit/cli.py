"""Command-line entry points.

Exit codes: 0 on success, 1 for usage errors (bad flags, wrong arguments),
2 for data errors (unparseable files, unknown names, broken invariants).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import browsing
from .browsing import Scope
from .errors import ConceptkitError
from .hyperize import (
    HyperizationConfig,
    Orientation,
    emit_web,
    hyperize,
    parse_graph_file,
    project_links_to_objects,
)
from .interchange import (
    clif_to_fcif,
    context_to_fcif,
    emit_clif,
    emit_fcif,
    fcif_to_clif,
    fcif_to_context,
    lattice_to_clif,
    parse_clif,
    parse_fcif,
)
from .linkage import Mode, counted_attributes, counted_objects, crispify, export_links, linkage_matrix
from .scaling import interpret, parse_records, parse_scales
from .workspace import load_context_file, parse_views, pipeline_lattice


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _write_out(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _load_views(lat_views_path: str | None):
    if lat_views_path is None:
        return ()
    return parse_views(_read(lat_views_path))


def _lattice_from_file(path: str):
    """A lattice from either a context (.fcif) or an order (.clif) file."""
    p = Path(path)
    if p.suffix == ".clif":
        ctx = fcif_to_context(clif_to_fcif(parse_clif(_read(path))))
        return pipeline_lattice(ctx)
    return pipeline_lattice(load_context_file(p))


def cmd_convert(args) -> int:
    src = Path(args.file)
    if src.suffix == ".clif":
        text = emit_fcif(clif_to_fcif(parse_clif(_read(args.file))))
    else:
        doc = parse_fcif(_read(args.file))
        if args.to == "clif":
            text = emit_clif(fcif_to_clif(doc))
        else:
            text = emit_fcif(doc)
    _write_out(text, args.output)
    return 0


def cmd_lattice(args) -> int:
    lat = _lattice_from_file(args.file)
    co = counted_objects(lat)
    ca = counted_attributes(lat)
    lines = [
        f"concepts {len(lat)}",
        f"objects {len(lat.source.objects)}",
        f"attributes {len(lat.source.attributes)}",
        f"counted_objects {len(co)}",
        f"counted_attributes {len(ca)}",
        f"edges {sum(len(v) for v in lat.upper_covers.values())}",
    ]
    sys.stdout.write("\n".join(lines) + "\n")
    if args.emit:
        _write_out(emit_clif(lattice_to_clif(lat)), args.emit)
    return 0


def _resolve_state(lat, name: str) -> int:
    if name in lat.views:
        return lat.views[name]
    for m, k in lat.mu.items():
        if m.serial == name:
            return k
    if name in lat.gamma:
        return lat.gamma[name]
    raise ConceptkitError(f"nothing named {name!r} in this lattice")


def cmd_rank(args) -> int:
    lat = _lattice_from_file(args.file)
    session = browsing.new_session(lat, Mode(args.mode))
    session.state = _resolve_state(lat, args.state) if args.state else lat.top
    if args.scope == "local":
        browsing.rank_similarity(session)
        browsing.set_scope(session, Scope.LOCAL)
        order = browsing.rank_difference(session)
    else:
        order = browsing.rank_similarity(session)
    sys.stdout.write(order.render() + "\n")
    return 0


def cmd_query(args) -> int:
    lat = _lattice_from_file(args.file)
    elements = [e for e in (s.strip() for s in args.elements.split(",")) if e]
    if args.mode == "int":
        order = browsing.intensional_query(lat, elements)
    else:
        order = browsing.extensional_query(lat, elements)
    if args.threshold is not None:
        order = browsing.threshold_filter(order, Fraction(args.threshold))
    sys.stdout.write(order.render() + "\n")
    return 0


def cmd_scale(args) -> int:
    records = parse_records(_read(args.records))
    scales = parse_scales(_read(args.scales))
    ctx = interpret(records, scales)
    _write_out(emit_fcif(context_to_fcif(ctx)), args.output)
    return 0


def cmd_hyperize(args) -> int:
    records = parse_records(_read(args.records))
    config = HyperizationConfig(
        scales=parse_scales(_read(args.scales)),
        threshold=Fraction(args.threshold),
        orientation=Orientation(args.orientation),
    )
    graph = parse_graph_file(_read(args.graph)) if args.graph else None
    views = _load_views(args.views)
    lat, _matrix, links = hyperize(records, config, graph=graph, views=views)
    outdir = Path(args.output)
    written = emit_web(lat, links, outdir)
    for g, h, w in project_links_to_objects(lat, links):
        sys.stdout.write(f"{g} {h} {float(w):.6f}\n")
    sys.stderr.write(f"wrote {len(written)} files to {outdir}\n")
    return 0


def cmd_links(args) -> int:
    lat = _lattice_from_file(args.file)
    links = crispify(linkage_matrix(lat, Mode(args.mode)), Fraction(args.threshold))
    sys.stdout.write(export_links(links))
    return 0


def cmd_validate(args) -> int:
    failures = 0
    for name in args.files:
        try:
            text = _read(name)
            if Path(name).suffix == ".clif":
                parse_clif(text)
            elif Path(name).suffix == ".views":
                parse_views(text)
            elif Path(name).suffix == ".cfg":
                parse_scales(text)
            elif Path(name).suffix == ".rec":
                parse_records(text)
            else:
                fcif_to_context(parse_fcif(text))
            sys.stdout.write(f"{name}: ok\n")
        except (ConceptkitError, OSError) as e:
            sys.stdout.write(f"{name}: {e}\n")
            failures += 1
    return 2 if failures else 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app
    from .workspace import WorkspaceStore

    app = create_app(WorkspaceStore(Path(args.workspace)))
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="conceptkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", help="convert between context and order formats")
    p.add_argument("file")
    p.add_argument("--to", choices=["fcif", "clif"], default="clif")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(fn=cmd_convert)

    p = sub.add_parser("lattice", help="build a lattice and print summary statistics")
    p.add_argument("file")
    p.add_argument("--emit", default=None, metavar="CLIF_OUT")
    p.set_defaults(fn=cmd_lattice)

    p = sub.add_parser("rank", help="rank concepts around a named state")
    p.add_argument("file")
    p.add_argument("--state", default=None, help="view, attribute, or object name")
    p.add_argument("--mode", choices=["ext", "int"], default="ext")
    p.add_argument("--scope", choices=["global", "local"], default="global")
    p.set_defaults(fn=cmd_rank)

    p = sub.add_parser("query", help="rank objects (or attributes) against a goal")
    p.add_argument("file")
    p.add_argument("--mode", choices=["int", "ext"], default="int")
    p.add_argument("--elements", required=True, help="comma-separated names")
    p.add_argument("--threshold", default=None)
    p.set_defaults(fn=cmd_query)

    p = sub.add_parser("scale", help="turn metadata records into a formal context")
    p.add_argument("records")
    p.add_argument("scales")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(fn=cmd_scale)

    p = sub.add_parser("hyperize", help="records to browsable web pages and links")
    p.add_argument("records")
    p.add_argument("scales")
    p.add_argument("--graph", default=None)
    p.add_argument("--views", default=None)
    p.add_argument("--threshold", default="1")
    p.add_argument("--orientation", choices=["cross", "hier"], default="cross")
    p.add_argument("-o", "--output", required=True, metavar="DIR")
    p.set_defaults(fn=cmd_hyperize)

    p = sub.add_parser("links", help="crisp linkage pairs for a context")
    p.add_argument("file")
    p.add_argument("--mode", choices=["ext", "int"], default="ext")
    p.add_argument("--threshold", default="1")
    p.set_defaults(fn=cmd_links)

    p = sub.add_parser("validate", help="parse-check interchange and config files")
    p.add_argument("files", nargs="+")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("serve", help="run the HTTP service over a workspace")
    p.add_argument("--workspace", default=".")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8417)
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ConceptkitError, OSError, ValueError) as e:
        sys.stderr.write(f"conceptkit: {e}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
