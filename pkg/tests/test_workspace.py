import pytest

from conceptkit.errors import FcifSyntaxError, IoError, NotInContext
from conceptkit.fixtures import DOCS_VIEWS_TEXT, K1_FCIF
from conceptkit.workspace import (
    WorkspaceStore,
    emit_views,
    load_context_file,
    parse_views,
    pipeline_lattice,
)


# ---------------------------------------------------------------- views files

def test_parse_views_names_and_intents():
    views = parse_views(DOCS_VIEWS_TEXT)
    assert [v.name for v in views] == [
        "Object", "Document", "PostScript", "Plan1", "Plan2"]
    by_name = {v.name: v for v in views}
    assert by_name["Object"].intent == frozenset()
    assert sorted(m.serial for m in by_name["Plan1"].intent) == ["project=plan1"]


def test_parse_views_quoted_tokens():
    views = parse_views('view "two words" "a=1" b\n')
    assert views[0].name == "two words"
    assert sorted(m.serial for m in views[0].intent) == ["a=1", "b"]


def test_emit_views_round_trip():
    views = parse_views(DOCS_VIEWS_TEXT)
    assert parse_views(emit_views(views)) == views


def test_emit_views_quotes_and_sorts():
    text = emit_views(parse_views('view V b "a=1"\n'))
    # serials come back sorted, '=' forces quoting
    assert text == 'view V "a=1" b\n'


def test_emit_views_empty():
    assert emit_views(()) == ""


def test_parse_views_requires_view_keyword():
    with pytest.raises(FcifSyntaxError) as e:
        parse_views("vista X\n")
    assert "line 1" in str(e.value)


def test_parse_views_requires_name():
    with pytest.raises(FcifSyntaxError):
        parse_views("view\n")
    with pytest.raises(FcifSyntaxError):
        parse_views("view {\n")


def test_parse_views_brace_name_ok_when_quoted():
    views = parse_views('view "{"\n')
    assert views[0].name == "{"


# ------------------------------------------------------------- context files

def test_load_context_file_plain(workspace_root):
    ctx = load_context_file(workspace_root / "contexts" / "k1.fcif")
    assert sorted(ctx.objects) == ["g1", "g2", "g3"]
    assert ctx.views == ()


def test_load_context_file_folds_sidecar(workspace_root):
    ctx = load_context_file(workspace_root / "contexts" / "docs.fcif")
    assert [v.name for v in ctx.views] == [
        "Object", "Document", "PostScript", "Plan1", "Plan2"]


def test_load_context_file_missing(tmp_path):
    with pytest.raises(IoError):
        load_context_file(tmp_path / "nope.fcif")


def test_pipeline_lattice_sizes(k1, docs):
    assert len(pipeline_lattice(k1)) == 6
    assert len(pipeline_lattice(docs)) == 10


# -------------------------------------------------------------------- store

def test_store_listings(workspace_root):
    store = WorkspaceStore(workspace_root)
    assert store.contexts() == ("docs", "k1")
    assert store.lattice_ids() == ("docs", "k1", "k1order")


def test_store_on_empty_root(tmp_path):
    store = WorkspaceStore(tmp_path)
    assert store.contexts() == ()
    assert store.lattice_ids() == ()


def test_store_load_context(workspace_root):
    store = WorkspaceStore(workspace_root)
    ctx = store.load_context("docs")
    assert len(ctx.objects) == 6
    assert len(ctx.views) == 5


def test_store_lattice_from_context(workspace_root):
    store = WorkspaceStore(workspace_root)
    lat = store.lattice("docs")
    assert len(lat) == 10
    assert {v.name for v in lat.source.views} == {
        "Object", "Document", "PostScript", "Plan1", "Plan2"}


def test_store_lattice_from_clif(workspace_root):
    store = WorkspaceStore(workspace_root)
    assert len(store.lattice("k1order")) == 6


def test_store_lattice_cached(workspace_root):
    store = WorkspaceStore(workspace_root)
    assert store.lattice("docs") is store.lattice("docs")


def test_store_context_file_wins_over_clif(workspace_root):
    # same name in both trees: the .fcif is authoritative
    docs_clif = workspace_root / "lattices" / "k1.clif"
    docs_clif.write_text(
        (workspace_root / "lattices" / "k1order.clif").read_text()
        .replace("TYPE K1", "TYPE OTHER"))
    store = WorkspaceStore(workspace_root)
    lat = store.lattice("k1")
    assert len(lat) == 6
    assert sorted(lat.source.objects) == ["g1", "g2", "g3"]


def test_store_unknown_names(workspace_root):
    store = WorkspaceStore(workspace_root)
    with pytest.raises(NotInContext):
        store.load_context("ghost")
    with pytest.raises(NotInContext):
        store.lattice("ghost")
    with pytest.raises(NotInContext):
        store.scales("ghost")
    with pytest.raises(NotInContext):
        store.records("ghost")


def test_store_scales_and_records(workspace_root):
    store = WorkspaceStore(workspace_root)
    scales = store.scales("docs")
    assert [s.tag for s in scales] == ["project", "format"]
    records = store.records("docs")
    assert [r.object_id for r in records][:2] == ["plan1.ps", "plan2.ps"]


def test_store_reload_sees_new_files(workspace_root):
    store = WorkspaceStore(workspace_root)
    before = store.contexts()
    (workspace_root / "contexts" / "extra.fcif").write_text(K1_FCIF)
    assert store.contexts() == tuple(sorted(before + ("extra",)))


def test_store_layout_from_clif(workspace_root):
    store = WorkspaceStore(workspace_root)
    n = len(store.lattice("k1order"))
    clif = workspace_root / "lattices" / "k1order.clif"
    rows = "".join(f"{k} {{ {10 * k} {5 * k} }}\n" for k in range(1, n + 1))
    clif.write_text(clif.read_text() + "LAYOUT\n" + rows)
    assert store.layout("k1order") == tuple(
        (k, 10 * k, 5 * k) for k in range(1, n + 1))


def test_store_layout_absent(workspace_root):
    store = WorkspaceStore(workspace_root)
    assert store.layout("k1order") == ()  # clif without a LAYOUT section
    assert store.layout("k1") == ()       # context only, no clif at all
    assert store.layout("ghost") == ()


def test_store_layout_rejects_out_of_range_rows(workspace_root):
    store = WorkspaceStore(workspace_root)
    clif = workspace_root / "lattices" / "k1order.clif"
    clif.write_text(clif.read_text() + "LAYOUT\n99 { 1 1 }\n")
    assert store.layout("k1order") == ()
