from __future__ import annotations

import io

import pytest
from hypothesis import given

from conftest import ground_terms, make_dataset
from oracles import random_term
from tgl.gff import (
    Dataset,
    NodeRecord,
    ParseError,
    ValidationError,
    parse_fact_file,
    parse_term,
    serialize_record,
    serialize_term,
    write_gff,
)
from tgl.synth import SplitMix64
from tgl.terms import Atom, Compound, Int, node_count

THREE_CLAUSES = "at(0, tr, 4, f(a,b), [1,2]).\nat(1, va, 4, a, []).\nat(2, te, 3, g(a), [0])."


class _Dribble:
    """File-like source that feeds tiny chunks, to exercise stream stalls."""

    def __init__(self, data, step=3):
        self.data = data
        self.step = step
        self.pos = 0

    def read(self, _n):
        chunk = self.data[self.pos : self.pos + self.step]
        self.pos += self.step
        return chunk


class TestParseFactFile:
    def test_three_clauses(self):
        d = parse_fact_file(THREE_CLAUSES)
        assert len(d) == 3
        assert d.tr_ids == (0,) and d.va_ids == (1,) and d.te_ids == (2,)
        assert d[0].label == 4 and d[0].neighbors == (1, 2)
        assert d[2].content == parse_term("g(a)")

    def test_empty_stream(self):
        d = parse_fact_file("")
        assert len(d) == 0
        assert d.num_labels == 0

    def test_unterminated_clause(self):
        with pytest.raises(ParseError, match="unterminated clause"):
            parse_fact_file("at(0, tr, 4, f(a)")

    def test_num_labels_from_max(self):
        d = parse_fact_file("at(0,tr,9,x,[]).")
        assert d.num_labels == 10

    def test_order_insensitive(self):
        lines = THREE_CLAUSES.split("\n")
        d1 = parse_fact_file("\n".join(lines))
        d2 = parse_fact_file("\n".join(reversed(lines)))
        assert d1 == d2

    def test_comments_and_whitespace(self):
        text = "% header comment\nat( 0 , tr , 1 , f( a , b ) , [ ] ). % a node\n\n  at(1,te,0,a,[0])."
        d = parse_fact_file(text)
        assert len(d) == 2
        assert d[0].content == parse_term("f(a,b)")

    def test_clauses_share_a_line(self):
        d = parse_fact_file("at(0,tr,0,a,[]). at(1,te,0,b,[]).")
        assert len(d) == 2

    def test_dot_inside_quoted_atom(self):
        d = parse_fact_file("at(0,tr,0,'v1.2'(x),[]).")
        assert d[0].content == Compound("v1.2", [Atom("x")])

    def test_streamed_in_tiny_chunks(self):
        text = "at(0,tr,1,'it''s'(ok),[]).\nat(1,te,1,'a.b',[0])."
        d = parse_fact_file(_Dribble(text, step=2))
        assert len(d) == 2
        assert d[0].content == Compound("it's", [Atom("ok")])
        assert d[1].content == Atom("a.b")

    def test_streamed_bytes_with_multibyte_chars(self):
        text = "at(0,te,0,'αβγ',[]).\nat(1,tr,0,x,[])."
        d = parse_fact_file(_Dribble(text.encode("utf-8"), step=1))
        assert d[0].content == Atom("αβγ")

    def test_file_object(self, tmp_path):
        p = tmp_path / "facts.gff"
        p.write_text(THREE_CLAUSES, encoding="utf-8")
        with open(p, encoding="utf-8") as fh:
            d = parse_fact_file(fh)
        assert len(d) == 3

    def test_skips_foreign_clauses(self):
        text = "foo(bar).\nat(0,tr,0,a,[]).\nsize(1, 2).\nat(1,te,0,b,[])."
        d = parse_fact_file(text)
        assert len(d) == 2
        assert d.skipped_clauses == 2

    def test_strict_rejects_foreign_clauses(self):
        with pytest.raises(ParseError, match="not at/5"):
            parse_fact_file("foo(bar).\nat(0,tr,0,a,[]).", strict=True)

    def test_skipped_clauses_do_not_affect_equality(self):
        d1 = parse_fact_file("foo(bar).\nat(0,te,0,a,[]).\nat(1,tr,0,a,[]).")
        d2 = parse_fact_file("at(0,te,0,a,[]).\nat(1,tr,0,a,[]).")
        assert d1 == d2


class TestValidation:
    def test_duplicate_id(self):
        with pytest.raises(ValidationError, match="duplicate"):
            parse_fact_file("at(0,tr,0,a,[]).\nat(0,te,0,b,[]).")

    def test_dangling_neighbor(self):
        with pytest.raises(ValidationError, match="unknown node"):
            parse_fact_file("at(0,tr,0,a,[5]).")

    def test_bad_split_marker(self):
        with pytest.raises(ValidationError, match="split marker"):
            parse_fact_file("at(0,xx,0,a,[]).")

    def test_negative_label(self):
        with pytest.raises(ValidationError, match="label out of range"):
            parse_fact_file("at(0,tr,-1,a,[]).")

    def test_negative_id(self):
        with pytest.raises(ValidationError, match="non-negative"):
            parse_fact_file("at(-1,tr,0,a,[]).")

    def test_negative_neighbor(self):
        with pytest.raises(ValidationError, match="non-negative"):
            parse_fact_file("at(0,tr,0,a,[-2]).")

    def test_negative_int_fine_inside_terms(self):
        d = parse_fact_file("at(0,te,0,f(-3),[]).")
        assert d[0].content == Compound("f", [Int(-3)])


class TestParseTerm:
    def test_flat(self):
        assert parse_term("f(a, b)") == Compound("f", [Atom("a"), Atom("b")])

    def test_quoted_functor(self):
        assert parse_term("'hello world'(x)") == Compound("hello world", [Atom("x")])

    def test_nested_count(self):
        # Oracle-counted: 5 tree nodes.
        term = parse_term("paradigm(programming(logic,functional),declarative)")
        assert node_count(term) == 5

    def test_integer_leaf(self):
        assert parse_term("42") == Int(42)
        assert parse_term("-7") == Int(-7)

    def test_escaped_quote(self):
        assert parse_term("'it''s'") == Atom("it's")

    def test_trailing_garbage(self):
        with pytest.raises(ParseError, match="end of input"):
            parse_term("f(a) b")

    def test_unterminated_quote(self):
        with pytest.raises(ParseError, match="unterminated quoted atom"):
            parse_term("'oops")

    def test_missing_close_paren(self):
        with pytest.raises(ParseError):
            parse_term("f(a,")

    def test_space_before_paren_is_not_a_compound(self):
        with pytest.raises(ParseError):
            parse_term("f (a)")

    def test_uppercase_needs_quotes(self):
        with pytest.raises(ParseError):
            parse_term("Hello")

    def test_error_position(self):
        with pytest.raises(ParseError) as exc:
            parse_fact_file("at(0,tr,0,a,[]).\nat(1,tr,0,),[]).")
        assert exc.value.line == 2
        assert exc.value.column == 11


class TestSerializeTerm:
    def test_flat(self):
        assert serialize_term(parse_term("f(a, b)")) == "f(a,b)"

    def test_quoting_needed(self):
        assert serialize_term(Atom("Hello")) == "'Hello'"

    def test_no_quoting_needed(self):
        assert serialize_term(Atom("a_b1")) == "a_b1"

    def test_empty_atom(self):
        assert serialize_term(Atom("")) == "''"
        assert parse_term("''") == Atom("")

    def test_quote_escaping(self):
        assert serialize_term(Atom("it's")) == "'it''s'"

    @given(ground_terms())
    def test_round_trip(self, term):
        assert parse_term(serialize_term(term)) == term

    def test_round_trip_on_awkward_atoms(self):
        for name in ("", "'", "''", "a b", "A", "1x", "tr", "[]", "don't", "x\ny", "α"):
            term = Compound("f", [Atom(name)])
            assert parse_term(serialize_term(term)) == term

    def test_round_trip_random(self):
        rng = SplitMix64(99)
        for _ in range(300):
            term = random_term(rng, 15)
            assert parse_term(serialize_term(term)) == term


class TestDataset:
    def test_histogram_over_extended_training(self):
        d = parse_fact_file(THREE_CLAUSES)
        assert d.label_histogram == {4: 2}
        assert sum(d.label_histogram.values()) == len(d.tr_ids) + len(d.va_ids)

    def test_split_lists_disjoint_and_complete(self):
        d = parse_fact_file(THREE_CLAUSES)
        all_ids = set(d.tr_ids) | set(d.va_ids) | set(d.te_ids)
        assert len(all_ids) == len(d)

    def test_direct_construction_validates(self):
        with pytest.raises(ValidationError):
            make_dataset([(0, "tr", 0, Atom("a"), (9,))])

    def test_iteration_ascending(self):
        d = parse_fact_file("at(5,tr,0,a,[]).\nat(1,te,0,b,[]).")
        assert [r.id for r in d] == [1, 5]

    def test_serialize_record_round_trip(self):
        rec = NodeRecord(3, "te", 7, parse_term("f(g(1),'X y')"), (1, 2))
        text = serialize_record(rec)
        d = parse_fact_file(text + "\nat(1,tr,7,a,[]).\nat(2,va,7,b,[]).")
        assert d[3] == rec

    def test_write_gff_round_trip(self):
        d1 = parse_fact_file(THREE_CLAUSES)
        buf = io.StringIO()
        assert write_gff(list(d1), buf) == 3
        assert parse_fact_file(buf.getvalue()) == d1
