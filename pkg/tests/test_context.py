import random

import pytest

from conceptkit.context import (
    AttributeToken,
    FormalContext,
    Relator,
    apposition,
    closure_attrs,
    closure_objects,
    context_from_rows,
    derive_attrs,
    derive_objects,
    enumerate_concepts_oracle,
    is_purified,
    purify,
    reduce_context,
    token,
    transpose,
    view,
)
from conceptkit.errors import (
    InvalidContext,
    NotInContext,
    NotPurified,
    ObjectSetMismatch,
)

from conftest import random_context


# -- attribute tokens ---------------------------------------------------


def test_token_parses_equality():
    t = token("project=plan1")
    assert (t.tag, t.relator, t.value) == ("project", Relator.EQ, "plan1")
    assert t.serial == "project=plan1"


def test_token_parses_order():
    t = token("size<=40000")
    assert (t.tag, t.relator, t.value) == ("size", Relator.LE, "40000")


def test_plain_token_is_a_bare_tag():
    t = token("b")
    assert t.tag == "b" and t.relator is Relator.EQ and t.value == ""
    assert t.serial == "b"


def test_token_serial_round_trips():
    for s in ["b", "project=plan1", "size<=5", "a.b/c:d#e-f"]:
        assert token(s).serial == s
        assert token(token(s)) == token(s)


def test_token_rejects_degenerate_forms():
    with pytest.raises(InvalidContext):
        token("=x")
    with pytest.raises(InvalidContext):
        token("")


# -- derivation ---------------------------------------------------------


def test_derivation_on_k1(k1):
    assert derive_objects(k1, ["g1"]) == frozenset({token("a"), token("b")})
    assert derive_objects(k1, ["g1", "g2"]) == frozenset({token("b")})
    assert derive_attrs(k1, ["b"]) == frozenset({"g1", "g2"})
    assert derive_attrs(k1, ["b", "c"]) == frozenset({"g2"})


def test_empty_derivation_is_the_whole_other_side(k1):
    assert derive_objects(k1, []) == frozenset(k1.attributes)
    assert derive_attrs(k1, []) == frozenset(k1.objects)


def test_derivation_rejects_strangers(k1):
    with pytest.raises(NotInContext):
        derive_objects(k1, ["gX"])
    with pytest.raises(NotInContext):
        derive_attrs(k1, ["zz"])


def test_closure_laws_hold_on_random_contexts():
    """Closure is extensive, monotone, and idempotent."""
    rng = random.Random(7)
    for _ in range(30):
        ctx = random_context(rng, 6, 6)
        objs = [g for g in ctx.objects if rng.random() < 0.5]
        c1 = closure_objects(ctx, objs)
        assert set(objs) <= c1
        assert closure_objects(ctx, c1) == c1
        attrs = [m for m in ctx.attributes if rng.random() < 0.5]
        a1 = closure_attrs(ctx, attrs)
        assert set(attrs) <= a1
        assert closure_attrs(ctx, a1) == a1


# -- construction and validation -----------------------------------------


def test_duplicate_object_names_rejected():
    with pytest.raises(InvalidContext):
        FormalContext(("g1", "g1"), (token("a"),), frozenset())


def test_duplicate_attributes_rejected():
    with pytest.raises(InvalidContext):
        FormalContext(("g1",), (token("a"), token("a")), frozenset())


def test_incidence_must_mention_declared_elements():
    with pytest.raises(InvalidContext):
        FormalContext(("g1",), (token("a"),), frozenset({("gX", token("a"))}))


def test_with_object_appends_a_row(k1):
    grown = k1.with_object("g4", ["a", "c"])
    assert grown.objects == ("g1", "g2", "g3", "g4")
    assert derive_objects(grown, ["g4"]) == frozenset({token("a"), token("c")})
    assert k1.objects == ("g1", "g2", "g3")


def test_with_attribute_appends_a_column(k1):
    grown = k1.with_attribute(token("d"), ["g1", "g3"])
    assert grown.attributes[-1] == token("d")
    assert derive_attrs(grown, ["d"]) == frozenset({"g1", "g3"})


def test_restrict_objects_keeps_all_columns(k1):
    small = k1.restrict_objects({"g1", "g2"})
    assert set(small.objects) == {"g1", "g2"}
    assert small.attributes == k1.attributes


# -- purification ---------------------------------------------------------


def test_purify_keeps_an_already_pure_context(k1):
    pure, merged = purify(k1)
    assert pure == k1
    assert merged.fused_objects == () and merged.fused_attributes == ()


def test_purify_fuses_identical_rows_to_least_name(docs):
    pure, merged = purify(docs)
    assert set(pure.objects) == {"plan1.ps", "plan2.ps", "notes0.txt", "notes1.txt"}
    assert merged.fused_objects == ("notes2.txt", "plan2.doc")
    assert merged.object_survivor("notes2.txt") == "notes1.txt"
    assert merged.object_survivor("plan2.doc") == "notes1.txt"
    assert is_purified(pure)


def test_purify_fuses_identical_columns():
    ctx = context_from_rows(
        ["g1", "g2"], ["b", "a"],
        {"g1": ["a", "b"], "g2": []})
    pure, merged = purify(ctx)
    # survivor is the lexicographically least serial
    assert [m.serial for m in pure.attributes] == ["a"]
    assert merged.attribute_survivor(token("b")) == token("a")


def test_purify_rewrites_view_definitions(docs):
    pure, _ = purify(docs)
    by_name = {v.name: v for v in pure.views}
    assert "Plan2" in by_name
    # the Plan2 view survives with its defining intent intact
    assert by_name["Plan2"].intent == frozenset({token("project=plan2")})


# -- reduction ------------------------------------------------------------


def test_reduce_requires_purity(docs):
    with pytest.raises(NotPurified):
        reduce_context(docs)


def test_reduce_drops_nothing_from_docs(docs):
    pure, _ = purify(docs)
    reduced, promoted = reduce_context(pure)
    assert reduced.objects == pure.objects
    assert reduced.attributes == pure.attributes
    assert promoted == ()


def test_reduce_promotes_a_meet_reducible_attribute_to_a_view():
    # the d column is exactly the b-and-c meet, so it carries nothing of its own
    ctx = context_from_rows(
        ["g1", "g2", "g3"], ["a", "b", "c", "d"],
        {"g1": ["a", "b"], "g2": ["b", "c", "d"], "g3": ["c"]})
    reduced, promoted = reduce_context(ctx)
    assert [m.serial for m in reduced.attributes] == ["a", "b", "c"]
    assert reduced.objects == ctx.objects
    assert {v.name for v in promoted} == {"d"}
    assert {v.name for v in reduced.views} >= {"d"}


def test_reduce_promotes_a_join_reducible_object():
    ctx = context_from_rows(
        ["g1", "g2", "g3"], ["a", "b"],
        {"g1": ["a"], "g2": ["b"], "g3": []})
    # g3's row is the join of nothing it adds: its concept is the top
    reduced, promoted = reduce_context(ctx)
    assert "g3" not in reduced.objects
    assert {v.name for v in promoted} == {"g3"}


def test_reduce_keeps_the_degenerate_single_concept_context():
    ctx = context_from_rows(["g1"], ["a"], {"g1": ["a"]})
    reduced, promoted = reduce_context(ctx)
    assert reduced.objects == ("g1",)
    assert [m.serial for m in reduced.attributes] == ["a"]
    assert promoted == ()


# -- apposition -----------------------------------------------------------


def test_apposition_concatenates_attribute_families(k1):
    right = context_from_rows(
        ["g1", "g2", "g3"], ["d"], {"g1": ["d"], "g2": [], "g3": ["d"]})
    both = apposition(k1, right)
    assert [m.serial for m in both.attributes] == ["a", "b", "c", "d"]
    assert derive_objects(both, ["g1"]) == frozenset(
        {token("a"), token("b"), token("d")})


def test_apposition_needs_identical_object_tuples(k1):
    other = context_from_rows(["g1", "g2"], ["d"], {"g1": ["d"]})
    with pytest.raises(ObjectSetMismatch):
        apposition(k1, other)


def test_apposition_prefixes_both_sides_on_collision(k1):
    clash = context_from_rows(
        ["g1", "g2", "g3"], ["b", "d"], {"g1": ["d"], "g2": ["b"]})
    both = apposition(k1, clash, left_ns="L:", right_ns="R:")
    serials = [m.serial for m in both.attributes]
    assert serials == ["L:a", "L:b", "L:c", "R:b", "R:d"]


def test_apposition_leaves_names_alone_without_collision(k1):
    calm = context_from_rows(["g1", "g2", "g3"], ["d"], {})
    both = apposition(k1, calm, left_ns="L:", right_ns="R:")
    assert [m.serial for m in both.attributes] == ["a", "b", "c", "d"]


# -- transpose and the oracle ----------------------------------------------


def test_transpose_swaps_derivations(k1):
    t = transpose(k1)
    assert set(t.objects) == {m.serial for m in k1.attributes}
    assert derive_objects(t, ["b"]) == frozenset(
        {token("g1"), token("g2")})


def test_oracle_finds_the_k1_concepts(k1):
    concepts = enumerate_concepts_oracle(k1)
    assert len(concepts) == 6
    assert (frozenset({"g1", "g2"}), frozenset({token("b")})) in concepts
    assert (frozenset(), frozenset(k1.attributes)) in concepts


def test_views_resolve_against_the_lattice(docs):
    names = {v.name for v in docs.views}
    assert names == {"Object", "Document", "PostScript", "Plan1", "Plan2"}
    v = next(x for x in docs.views if x.name == "PostScript")
    assert v.intent == frozenset({token("format=postscript")})


def test_view_shorthand_defaults_to_the_top():
    v = view("Everything")
    assert v.intent == frozenset() and v.extent is None
