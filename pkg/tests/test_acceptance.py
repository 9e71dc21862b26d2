"""The go/no-go checklist for the whole package.

Each test covers one release criterion and prints a single PASS or FAIL
line (visible with -s, or in the captured output of a failing run). All
comparisons are exact: rationals, sets, and byte strings, never floats.
"""

import contextlib
import random
import time
from fractions import Fraction

from conceptkit.browsing import (
    Mode,
    Scope,
    intensional_query,
    extensional_query,
    new_session,
    rank_difference,
    rank_similarity,
    set_scope,
)
from conceptkit.context import (
    derive_attrs,
    derive_objects,
    enumerate_concepts_oracle,
    transpose,
)
from conceptkit.fixtures import (
    docs_records,
    docs_scales,
    docs_views,
    k1_context,
    docs_context,
)
from conceptkit.hyperize import HyperizationConfig, emit_web, hyperize
from conceptkit.interchange import (
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
from conceptkit.lattice import build_lattice, leq, meet, meet_restrict
from conceptkit.linkage import (
    counted_extent,
    counted_intent,
    crispify,
    ext_linkage,
    ext_similarity,
    int_diff_measure,
    int_linkage,
    int_similarity,
    linkage_matrix,
)
from conceptkit.linkage import Mode as LinkMode
from conceptkit.workspace import pipeline_lattice

from conftest import GOLDEN, random_context


@contextlib.contextmanager
def verdict(label):
    try:
        yield
    except BaseException:
        print(f"{label}: FAIL")
        raise
    print(f"{label}: PASS")


def fixture_lattices():
    return [pipeline_lattice(k1_context()), pipeline_lattice(docs_context())]


# --------------------------------------------------------------------------

def test_builder_matches_oracle_everywhere():
    with verdict("oracle equivalence"):
        started = time.monotonic()
        rng = random.Random(20260819)
        cases = [k1_context(), docs_context()]
        cases += [random_context(rng) for _ in range(200)]
        for ctx in cases:
            lat = build_lattice(ctx)
            got = frozenset((c.extent, c.intent) for c in lat.concepts)
            assert got == enumerate_concepts_oracle(ctx)
        assert len(build_lattice(k1_context())) == 6
        assert time.monotonic() - started < 10.0


def test_interchange_round_trips():
    with verdict("interchange round trips"):
        rng = random.Random(97)
        for _ in range(100):
            reduced = pipeline_lattice(random_context(rng)).source
            doc = context_to_fcif(reduced)
            back = clif_to_fcif(fcif_to_clif(parse_fcif(emit_fcif(doc))))
            assert emit_fcif(context_to_fcif(fcif_to_context(back))) == emit_fcif(doc)
        for name in ("k1.fcif", "docs.fcif"):
            text = (GOLDEN / name).read_text()
            assert emit_fcif(parse_fcif(text)) == text
        clif_text = (GOLDEN / "k1.clif").read_text()
        assert emit_clif(parse_clif(clif_text)) == clif_text


def assert_measure_laws(lat):
    n = len(lat)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            assert ext_similarity(lat, i, j) == ext_similarity(lat, j, i)
            assert 0 <= ext_similarity(lat, i, j) <= min(
                len(counted_extent(lat, i)), len(counted_extent(lat, j)))
            if counted_extent(lat, i):
                w = ext_linkage(lat, i, j)
                assert 0 <= w <= 1
                assert (w == 1) == leq(lat, i, j)
            assert (int_diff_measure(lat, i, j) == 0) == leq(lat, i, j)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                assert int_diff_measure(lat, i, k) <= (
                    int_diff_measure(lat, i, j) + int_diff_measure(lat, j, k))
    dual = build_lattice(transpose(lat.source))
    by_intent = {frozenset(m.serial for m in dual.intent(k)): k
                 for k in range(1, len(dual) + 1)}
    remap = {k: by_intent[frozenset(lat.extent(k))] for k in range(1, n + 1)}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            assert int_similarity(lat, i, j) == ext_similarity(
                dual, remap[i], remap[j])
            if counted_intent(lat, i):
                assert int_linkage(lat, i, j) == ext_linkage(
                    dual, remap[i], remap[j])


def test_measure_laws_hold():
    with verdict("measure laws"):
        for lat in fixture_lattices():
            assert_measure_laws(lat)
        rng = random.Random(3331)
        for _ in range(20):
            assert_measure_laws(pipeline_lattice(random_context(rng, 6, 6)))


def rank_of(order, name):
    for value, labels in order.groups():
        if any(name in l.names for l in labels):
            return value
    raise AssertionError(f"no label named {name!r}")


def test_document_panel_shape():
    with verdict("similarity and difference panels"):
        lat = pipeline_lattice(docs_context())
        session = new_session(lat, Mode.EXT)
        session.state = lat.views["Plan1"]
        sim = rank_similarity(session)
        own = rank_of(sim, "Plan1")
        assert rank_of(sim, "Plan2") == 0
        assert rank_of(sim, "PostScript") == rank_of(sim, "format=text")
        assert 0 < rank_of(sim, "PostScript") < own

        set_scope(session, Scope.LOCAL)
        diff = rank_difference(session)
        assert rank_of(diff, "Plan1") == 0
        assert rank_of(diff, "plan1.ps") == 1
        assert rank_of(diff, "notes0.txt") == 1


def strict_order_links(lat):
    return {
        (i, j)
        for i in range(1, len(lat) + 1)
        for j in range(1, len(lat) + 1)
        if i != j and leq(lat, i, j) and counted_extent(lat, i)
    }


def test_full_threshold_links_are_the_order():
    with verdict("crispification law"):
        rng = random.Random(515)
        lats = fixture_lattices()
        lats += [pipeline_lattice(random_context(rng)) for _ in range(50)]
        for lat in lats:
            matrix = linkage_matrix(lat, LinkMode.EXT)
            got = {(l.source, l.target) for l in crispify(matrix, Fraction(1))}
            assert got == strict_order_links(lat)


def test_neighborhood_laws():
    with verdict("neighborhood laws"):
        for lat in fixture_lattices():
            n = len(lat)
            for seed in range(1, n + 1):
                hood = meet_restrict(lat, seed)
                assert set(hood.projection.values()) == set(hood.embedding)
                for i in range(1, n + 1):
                    for j in range(1, n + 1):
                        assert hood.projection[meet(lat, i, j)] == meet(
                            hood.lattice,
                            hood.projection[i], hood.projection[j])
            top_hood = meet_restrict(lat, 1)
            assert len(top_hood.lattice) == n
            assert all(top_hood.embedding[h] == k
                       for k, h in top_hood.projection.items())
            assert len(meet_restrict(lat, n).lattice) == 1


def test_pipeline_preserves_lattices():
    with verdict("purification and reduction safety"):
        rng = random.Random(777)
        for _ in range(100):
            ctx = random_context(rng)
            raw = build_lattice(ctx)
            red = pipeline_lattice(ctx)
            assert len(raw) == len(red)
            images = []
            for k in range(1, len(red) + 1):
                intent = derive_objects(ctx, red.extent(k))
                images.append(derive_attrs(ctx, intent))
            assert len(set(images)) == len(images)
            for a in range(len(images)):
                for b in range(len(images)):
                    assert (red.extent(a + 1) <= red.extent(b + 1)) == (
                        images[a] <= images[b])


def test_queries_retract_cleanly():
    with verdict("query retraction"):
        lat = pipeline_lattice(k1_context())
        snapshot = emit_fcif(context_to_fcif(lat.source))
        concepts = tuple((c.extent, c.intent) for c in lat.concepts)
        order = intensional_query(lat, ["b", "c"])
        extensional_query(lat, ["g1", "g3"])
        intensional_query(lat, [])
        assert emit_fcif(context_to_fcif(lat.source)) == snapshot
        assert tuple((c.extent, c.intent) for c in lat.concepts) == concepts

        top_value, top_labels = order.groups()[0]
        assert top_value == Fraction(1)
        assert [l.objects for l in top_labels] == [("g2",)]
        # the landing concept is gamma of g2: extent {g2}, intent {b, c}
        assert order.state_extent == frozenset({"g2"})
        assert order.state_intent == frozenset({"b", "c"})


def test_emitted_web_realizes_the_order(tmp_path):
    with verdict("hypertext emission"):
        lat, _, links = hyperize(
            docs_records(), HyperizationConfig(scales=docs_scales()),
            views=docs_views())
        written = emit_web(lat, links, tmp_path)
        golden = sorted(p.name for p in (GOLDEN / "web").iterdir())
        assert sorted(p.name for p in tmp_path.iterdir()) == golden
        for name in golden:
            assert (tmp_path / name).read_bytes() == \
                (GOLDEN / "web" / name).read_bytes()
        assert len(written) == len(golden)
