import pytest

from conceptkit.context import token
from conceptkit.errors import InvalidContext, ScaleValueError
from conceptkit.scaling import (
    Comparator,
    ConceptualScale,
    MetadataRecord,
    ScaleKind,
    apply_scale,
    interpret,
    parse_records,
    parse_scales,
    summarize_document,
)


def nominal(tag, *values):
    return ConceptualScale(tag, ScaleKind.NOMINAL, values)


def ordinal(tag, *values, cmp=Comparator.NUMERIC):
    return ConceptualScale(tag, ScaleKind.ORDINAL, values, cmp)


# -- records ------------------------------------------------------------


def test_record_values_keep_repeats_in_order():
    r = MetadataRecord("doc", (("k", "x"), ("j", "1"), ("k", "y")))
    assert r.values("k") == ("x", "y")
    assert r.values("missing") == ()


def test_record_needs_an_id():
    with pytest.raises(InvalidContext):
        MetadataRecord("", ())


def test_parse_records_splits_blocks_on_blank_lines():
    rs = parse_records("object a\nformat ps\n\nobject b\nformat text\n")
    assert [r.object_id for r in rs] == ["a", "b"]
    assert rs[0].pairs == (("format", "ps"),)


def test_repeated_ids_merge_when_scaled():
    rs = parse_records("object a\nk 1\n\nobject b\nk 2\n\nobject a\nk 3\n")
    assert [r.object_id for r in rs] == ["a", "b", "a"]
    ctx = apply_scale(rs, nominal("k", "1", "2", "3"))
    assert ctx.objects == ("a", "b")
    assert ("a", token("k=1")) in ctx.incidence
    assert ("a", token("k=3")) in ctx.incidence


def test_record_values_split_on_the_first_space_only():
    rs = parse_records("object a\ntitle My Plan for 1996\n")
    assert rs[0].values("title") == ("My Plan for 1996",)


def test_tag_line_outside_a_block_is_an_error():
    with pytest.raises(ScaleValueError) as e:
        parse_records("format ps\n")
    assert "line 1" in str(e.value)


# -- scale construction ----------------------------------------------------


def test_scale_values_must_be_unique():
    with pytest.raises(InvalidContext):
        nominal("t", "x", "x")


def test_scale_needs_values():
    with pytest.raises(InvalidContext):
        nominal("t")


def test_ordinal_scale_requires_ascending_values():
    with pytest.raises(InvalidContext):
        ordinal("size", "100", "50")
    ordinal("size", "50", "100")  # fine


def test_ordinal_lex_order_differs_from_numeric():
    # "9" > "10" lexicographically, so this only works as a lex scale
    ordinal("v", "10", "9", cmp=Comparator.LEXICOGRAPHIC)
    with pytest.raises(InvalidContext):
        ordinal("v", "10", "9")


def test_numeric_ordinal_rejects_unparseable_cut():
    with pytest.raises(ScaleValueError):
        ordinal("size", "small", "large")


def test_nominal_scale_takes_no_comparator():
    with pytest.raises(InvalidContext):
        ConceptualScale("t", ScaleKind.NOMINAL, ("x",), Comparator.NUMERIC)


# -- applying scales ---------------------------------------------------------


def test_nominal_scale_marks_exact_matches():
    rs = parse_records("object a\nformat ps\n\nobject b\nformat text\n")
    ctx = apply_scale(rs, nominal("format", "ps", "text"))
    assert {m.serial for m in ctx.attributes} == {"format=ps", "format=text"}
    assert ("a", token("format=ps")) in ctx.incidence
    assert ("a", token("format=text")) not in ctx.incidence


def test_ordinal_scale_marks_every_satisfied_bound():
    rs = parse_records("object a\nsize 30\n\nobject b\nsize 300\n")
    ctx = apply_scale(rs, ordinal("size", "50", "500"))
    assert ("a", token("size<=50")) in ctx.incidence
    assert ("a", token("size<=500")) in ctx.incidence
    assert ("b", token("size<=50")) not in ctx.incidence
    assert ("b", token("size<=500")) in ctx.incidence


def test_ordinal_incidence_uses_any_raw_value():
    rs = parse_records("object a\nsize 900\nsize 10\n")
    ctx = apply_scale(rs, ordinal("size", "50"))
    assert ("a", token("size<=50")) in ctx.incidence


def test_ordinal_scale_emits_the_column_chain():
    rs = parse_records("object a\nsize 1\n")
    ctx = apply_scale(rs, ordinal("size", "10", "20", "30"))
    chain = {(a.serial, b.serial) for a, b in ctx.attribute_order}
    assert chain == {("size<=10", "size<=20"), ("size<=10", "size<=30"),
                     ("size<=20", "size<=30")}


def test_unscalable_raw_value_is_an_error():
    rs = parse_records("object a\nsize big\n")
    with pytest.raises(ScaleValueError):
        apply_scale(rs, ordinal("size", "50"))


def test_record_without_the_tag_gets_no_marks():
    rs = parse_records("object a\nother x\n")
    ctx = apply_scale(rs, nominal("format", "ps"))
    assert ctx.incidence == frozenset()


# -- interpretation -----------------------------------------------------------


def test_interpret_concatenates_scale_families(docs):
    serials = [m.serial for m in docs.attributes]
    assert serials == ["project=plan1", "project=plan2",
                       "format=postscript", "format=text"]


def test_interpret_without_scales_keeps_objects_only():
    rs = parse_records("object a\nk v\n")
    ctx = interpret(rs, ())
    assert ctx.objects == ("a",) and ctx.attributes == ()


def test_interpret_prefixes_all_scales_when_tokens_collide():
    rs = parse_records("object a\nfmt ps\n")
    twice = (nominal("fmt", "ps"), nominal("fmt", "ps", "text"))
    ctx = interpret(rs, twice)
    serials = [m.serial for m in ctx.attributes]
    assert serials == ["s1:fmt=ps", "s2:fmt=ps", "s2:fmt=text"]
    assert ("a", token("s1:fmt=ps")) in ctx.incidence


def test_scale_config_round_trip():
    scales = parse_scales(
        "nominal format ps text\nordinal numeric size 50 500\n")
    assert scales[0].kind is ScaleKind.NOMINAL
    assert scales[0].values == ("ps", "text")
    assert scales[1].comparator is Comparator.NUMERIC


def test_scale_config_rejects_unknown_kind():
    with pytest.raises(ScaleValueError) as e:
        parse_scales("interval size 1 2\n")
    assert "line 1" in str(e.value)


def test_scale_config_rejects_missing_comparator():
    with pytest.raises(ScaleValueError):
        parse_scales("ordinal size 1 2\n")


# -- document summaries --------------------------------------------------------


def test_summary_reads_format_from_extension(tmp_path):
    p = tmp_path / "x.ps"
    p.write_bytes(b"%!PS-Adobe\n...")
    r = summarize_document(p)
    assert ("format", "postscript") in r.pairs
    assert r.object_id == "x.ps"


def test_summary_sniffs_when_the_extension_is_silent(tmp_path):
    p = tmp_path / "mystery"
    p.write_bytes(b"<html><title>Hi</title></html>")
    r = summarize_document(p)
    assert ("format", "html") in r.pairs


def test_summary_measures_size():
    r = summarize_document(b"12345", object_id="m")
    assert ("size", "5") in r.pairs


def test_summary_takes_html_title():
    data = b"<html><head><title>A Plan</title></head><body>x</body></html>"
    r = summarize_document(data, object_id="d")
    assert ("title", "A Plan") in r.pairs


def test_summary_takes_first_line_as_text_title():
    r = summarize_document(b"\n\nFirst real line\nsecond", object_id="d")
    assert ("title", "First real line") in r.pairs


def test_summary_caps_runaway_titles():
    r = summarize_document(("t" * 500).encode(), object_id="d")
    title = dict(r.pairs)["title"]
    assert len(title) == 120


def test_summary_lists_outgoing_links():
    data = (b'<html><title>t</title>'
            b'<a href="plan1.ps">one</a> <a href=\'notes.txt\'>two</a></html>')
    r = summarize_document(data, object_id="d")
    assert r.values("link") == ("plan1.ps", "notes.txt")
