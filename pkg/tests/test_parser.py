from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from coeqtt.parser import (ParseError, SApp, SEq, SLam, SPair, SPi, SProj, SSigma, SVar, parse_module,
                           parse_term, print_module, print_term, tokenize)

from conftest import CORPUS, ROOT


def kinds(source):
    return [(t.kind, t.text) if t.kind == "ident" else t.kind for t in tokenize(source)][:-1]


def test_tokenize_declaration():
    assert kinds("def x : U0 := Unit") == ["kw-def", ("ident", "x"), "colon", ("ident", "U0"), "assign",
                                          ("ident", "Unit")]


def test_tokenize_strips_comments():
    assert kinds("-- comment\nzero") == [("ident", "zero")]


def test_tokenize_spans_cover_source():
    src = "def f (x : Nat) : Nat := suc x"
    for tok in tokenize(src)[:-1]:
        assert src[tok.offset:tok.offset + len(tok.text)] == tok.text


def test_illegal_character_reports_offset_zero():
    with pytest.raises(ParseError) as err:
        tokenize("λ")
    d = err.value.diagnostic
    assert d.code == "illegal-character" and (d.span.line, d.span.col) == (1, 1)


def test_parse_identity_function():
    decls, diags = parse_module("def id0 : (A : U0) -> A -> A := \\A. \\x. x")
    assert not diags and len(decls) == 1
    assert decls[0].body == SLam("A", SLam("x", SVar("x")))


def test_parse_identity_type_with_ambient_type():
    t = parse_term("(x ={A} y) -> Unit")
    assert t == SPi(None, SEq(SVar("x"), SVar("A"), SVar("y")), SVar("Unit"))


def test_precedence():
    # application binds tighter than *, which binds tighter than ->, then =
    assert parse_term("f a * B -> C") == SPi(None, SSigma(None, SApp(SVar("f"), SVar("a")), SVar("B")), SVar("C"))
    assert parse_term("A -> B -> C") == SPi(None, SVar("A"), SPi(None, SVar("B"), SVar("C")))
    assert parse_term("p.1 x") == SApp(SProj(SVar("p"), 1), SVar("x"))


def test_unbalanced_parenthesis_stops_at_error():
    decls, diags = parse_module("def a : U0 := Unit\n\ndef x : U0 := (Unit\n\ndef y : U0 := Unit\n")
    assert [d.name for d in decls] == ["a"]
    assert len(diags) == 1 and diags[0].code == "parse-error"
    assert "expected" in diags[0].message


CORPUS_FILES = sorted(CORPUS.glob("**/*.hott")) + sorted((ROOT / "tests").glob("**/*.hott"))


@pytest.mark.parametrize("path", CORPUS_FILES, ids=lambda p: str(p.relative_to(ROOT)))
def test_round_trip(path):
    decls, diags = parse_module(path.read_text(encoding="utf-8"), str(path))
    if diags:  # ill-formed inputs: the parsed prefix still round-trips
        assert path.parent.name == "bad"
    again, diags2 = parse_module(print_module(decls))
    assert not diags2
    assert again == decls


def test_parse_is_deterministic():
    src = (CORPUS / "prelude.hott").read_text(encoding="utf-8")
    assert parse_module(src) == parse_module(src)


# Random surface terms print and re-parse to themselves.
NAMES = st.sampled_from(["x", "y", "A", "f", "Nat", "zero", "x'"])


def surface_terms():
    return st.recursive(
        NAMES.map(SVar),
        lambda sub: st.one_of(
            st.builds(SApp, sub, sub),
            st.builds(SLam, NAMES, sub),
            st.builds(SPi, st.one_of(st.none(), NAMES), sub, sub),
            st.builds(SSigma, st.one_of(st.none(), NAMES), sub, sub),
            st.builds(SPair, sub, sub),
            st.builds(SProj, sub, st.sampled_from([1, 2])),
            st.builds(SEq, sub, sub, sub),
        ),
        max_leaves=12,
    )


@given(surface_terms())
def test_print_parse_random_terms(t):
    assert parse_term(print_term(t)) == t
