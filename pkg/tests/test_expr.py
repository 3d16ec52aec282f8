import json

import pytest
from hypothesis import given, settings, strategies as st

from finring import (
    ExprError, RingError, eval_text, parse, ring_to_dict, save_ring, verify_ring_axioms,
)
from finring.expr import (
    GF, EvalError, FnRing, LexError, NumericOverflow, ParseError, PolyQuot, Product, SdProdAlg,
    SdProdFile, TableFile, Zmod, DATA_DIR, evaluate, render,
)
from finring.semidirect import load_spec, save_spec
from finring.ring import OrderCapError


def test_parse_basic():
    assert parse("Zmod(4)") == Zmod(4)
    assert parse("sdprod_alg(GF(3), GF(3))") == SdProdAlg(GF(3, 1), GF(3, 1))
    assert parse("ZMOD( 4 )") == Zmod(4)
    assert parse("Product(gf(2), Zmod(3))") == Product(GF(2, 1), Zmod(3))
    assert parse("polyquot(GF(2), [0,0,1])") == PolyQuot(GF(2, 1), (0, 0, 1))
    assert parse("fnring(2, GF(3))") == FnRing(2, GF(3, 1))
    assert parse('sdprod_file("a.json")') == SdProdFile("a.json")
    assert parse('table_file("t.json")') == TableFile("t.json")


def test_gf_prime_power_normalised():
    assert parse("GF(4)") == GF(2, 2)
    assert parse("GF(9)") == GF(3, 2)
    assert parse("GF(2,3)") == GF(2, 3)


def test_missing_close_paren():
    with pytest.raises(ParseError) as info:
        parse("product(GF(2), GF(2)")
    err = info.value
    assert err.offset == len("product(GF(2), GF(2)")
    assert (err.line, err.col) == (1, 21)
    assert err.expected == ("')'",)
    assert "end of input" in str(err)


def test_error_positions_multiline():
    with pytest.raises(ParseError) as info:
        parse("product(GF(2),\n  Zmod 3)")
    assert (info.value.line, info.value.col) == (2, 8)
    assert info.value.expected == ("'('",)


def test_unknown_constructor():
    with pytest.raises(ParseError) as info:
        parse("Ring(3)")
    assert info.value.col == 1
    assert "Zmod" in info.value.expected


def test_optional_argument_errors():
    with pytest.raises(ParseError) as info:
        parse("GF(2")
    assert info.value.expected == ("','", "')'")


def test_trailing_input():
    with pytest.raises(ParseError) as info:
        parse("Zmod(3) Zmod(4)")
    assert info.value.col == 9


def test_lex_errors():
    with pytest.raises(LexError) as info:
        parse("Zmod(3) $")
    assert info.value.col == 9
    with pytest.raises(LexError):
        parse("Zmod(-3)")
    with pytest.raises(LexError):
        parse('sdprod_file("abc')


def test_numeric_overflow():
    with pytest.raises(NumericOverflow) as info:
        parse("Zmod(99999999999)")
    assert info.value.col == 6
    parse(f"Zmod({2**31 - 1})")


def test_non_positive_literals():
    with pytest.raises(ParseError):
        parse("fnring(0, GF(2))")
    with pytest.raises(ParseError):
        parse("GF(0)")


def test_zmod_zero_fails_at_eval_with_span():
    with pytest.raises(EvalError) as info:
        eval_text("product(GF(2), Zmod(0))")
    assert info.value.col == 16


def test_eval_examples():
    R = eval_text("polyquot(GF(2), [0,0,1])")
    assert R.order == 4
    assert eval_text("fnring(2, GF(3))").order == 9
    assert eval_text("sdprod_alg(GF(2), GF(2))").order == 4
    assert eval_text("GF(8)").order == 8


def test_non_monic_polyquot_rejected():
    with pytest.raises(EvalError):
        eval_text("polyquot(GF(2), [1,0,0])")


def test_eval_cap_error_located():
    with pytest.raises(EvalError) as info:
        eval_text("product(GF(2), Zmod(600))")
    assert isinstance(info.value.__cause__, OrderCapError)
    assert info.value.col == 16


def test_provenance_is_canonical_text():
    assert eval_text("product( gf(2) ,ZMOD(3))").provenance == "product(GF(2), Zmod(3))"


def test_table_file_and_sdprod_file(tmp_path):
    R = eval_text("GF(4)")
    save_ring(R, tmp_path / "gf4.json")
    S = eval_text('table_file("gf4.json")', base=tmp_path)
    assert S.same_tables(R)
    T = eval_text('sdprod_file("@two_z4_z2.json")')
    assert T.order == 4
    with pytest.raises(EvalError):
        eval_text('table_file("missing.json")', base=tmp_path)


def test_table_file_rejects_non_ring(tmp_path):
    doc = ring_to_dict(eval_text("Zmod(4)"))
    doc["mul"][2][2] = 1
    (tmp_path / "bad.json").write_text(json.dumps(doc))
    with pytest.raises(EvalError):
        eval_text('table_file("bad.json")', base=tmp_path)


def test_sdprod_alg_explicit_embedding(tmp_path):
    (tmp_path / "emb.json").write_text(json.dumps([0, 1]))
    R = eval_text('sdprod_alg(GF(4), GF(2), "emb.json")', base=tmp_path)
    assert R.same_tables(eval_text("sdprod_alg(GF(4), GF(2))"))
    # GF(4) is not the prime field of GF(16); without a table the embedding is undefined
    with pytest.raises(EvalError):
        eval_text("sdprod_alg(GF(16), GF(4))")


def test_sdprod_file_roundtrip(tmp_path):
    spec = load_spec(DATA_DIR / "two_z4_z2.json")
    save_spec(spec, tmp_path / "s.json")
    assert eval_text('sdprod_file("s.json")', base=tmp_path).same_tables(eval_text('sdprod_file("@two_z4_z2.json")'))


# -- properties ---------------------------------------------------------------

small = st.integers(min_value=1, max_value=40)
paths = st.text(alphabet=st.characters(blacklist_categories=("Cs",)), min_size=0, max_size=8)


def asts():
    leaves = st.one_of(
        st.builds(Zmod, small),
        st.builds(GF, small, st.integers(min_value=1, max_value=5)),
        st.builds(SdProdFile, paths),
        st.builds(TableFile, paths),
    )

    def extend(children):
        return st.one_of(
            st.builds(Product, children, children),
            st.builds(PolyQuot, children, st.lists(st.integers(0, 9), min_size=1, max_size=4).map(tuple)),
            st.builds(FnRing, small, children),
            st.builds(SdProdAlg, children, children, st.one_of(st.none(), paths)),
        )

    return st.recursive(leaves, extend, max_leaves=6)


@given(asts())
@settings(max_examples=300, deadline=None)
def test_parse_render_roundtrip(node):
    assert parse(render(node)) == node


@given(asts())
@settings(max_examples=100, deadline=None)
def test_render_is_fixed_point(node):
    text = render(node)
    assert render(parse(text)) == text


@pytest.mark.parametrize("text", [
    "Zmod(6)", "GF(9)", "product(GF(2), Zmod(4))", "polyquot(GF(3), [1,0,1])",
    "fnring(3, GF(2))", "sdprod_alg(GF(3), GF(3))",
])
def test_eval_deterministic(text):
    a, b = eval_text(text), eval_text(text)
    assert ring_to_dict(a) == ring_to_dict(b)
    assert verify_ring_axioms(a)


def test_expr_error_is_ring_error():
    assert issubclass(ExprError, RingError)
    with pytest.raises(ExprError):
        evaluate(parse("Zmod(0)"), "Zmod(0)")
