from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from coeqtt import nbe as N
from coeqtt import syntax as S
from coeqtt.corpus import check_files, with_deep_stack
from coeqtt.parser import parse_module, parse_term
from coeqtt.typecheck import Checker, Context, ElabError, Elaborator

from conftest import PRELUDE


def check_source(text, sig=None):
    checker = Checker(sig)
    decls, diags = parse_module(text)
    assert not diags
    out = [checker.check_declaration(d) for d in decls]
    return checker.sig, out


def accepts(text, sig=None):
    _, out = check_source(text, sig)
    return [d.code for d in out if d is not None] == []


def codes(text, sig=None):
    _, out = check_source(text, sig)
    return [d.code for d in out if d is not None]


# --- small judgments ---------------------------------------------------------

def test_beta_and_eta_for_functions():
    assert accepts("conv-assert b (A : U0) (a : A) : A := ((\\x. x) : A -> A) a == a")
    assert accepts("conv-assert e (A B : U0) (f : A -> B) : A -> B := f == \\x. f x")


def test_eta_for_pairs():
    assert accepts("conv-assert e (A B : U0) (p : A * B) : A * B := p == (p.1, p.2)")


def test_J_computes_on_refl():
    assert accepts("conv-assert j (A : U0) (a : A) : A := J0 (\\x y p. A) (\\x. x) a a (refl a) == a")


def test_J_is_stuck_on_variable_paths():
    assert codes("conv-assert j (A : U0) (a b : A) (p : a ={A} b) : A := "
                 "J0 (\\x y p. A) (\\x. x) a b p == a") == ["not-convertible"]


def test_coequalizer_eliminator_computes_on_points():
    assert accepts("conv-assert c (A : U0) (R : A -> A -> U0) (B : U0) (f : A -> B) "
                   "(e : (a b : A) (s : R a b) -> J1 (\\x y p. B -> B) (\\x u. u) (inj a : Coeq A R) (inj b) "
                   "(glue a b s) (f a) ={B} f b) (a : A) : B := cind0 (\\_. B) f e (inj a : Coeq A R) == f a")


def test_nat_recursion():
    assert accepts("conv-assert n : Nat := nind0 (\\_. Nat) (suc zero) (\\_ m. suc m) (suc zero) "
                   "== suc (suc zero)")


def test_cumulativity_is_directional():
    assert accepts("def lift (A : U0) : U1 := A")
    assert codes("def down (A : U1) : U0 := A") == ["type-mismatch"]


def test_universe_hierarchy_stops_at_U1():
    assert codes("def u : U1 := U0") == []
    assert codes("def u : U1 := U1") == ["universe-too-large"]


def test_glue_needs_related_points():
    assert codes("def g (A : U0) (R : A -> A -> U0) (a b : A) (s : R a b) : inj b ={Coeq A R} inj a := "
                 "glue a b s") == ["type-mismatch"]


def test_failed_declaration_poisons_its_name():
    assert codes("def a : Nat := tt\n\ndef b : Nat := a") == ["type-mismatch", "poisoned"]


# --- properties over the prelude ---------------------------------------------

def test_normalization_is_idempotent(prelude_report):
    def run():
        for e in prelude_report.sig:
            nf = N.normalize((), e.body)
            assert S.alpha_equal(N.normalize((), nf), nf), e.name
    with_deep_stack(run)


def test_subject_reduction(prelude_report):
    """Every normalized prelude body re-checks against its declared type."""
    sig = prelude_report.sig

    def run():
        for e in sig:
            nf = N.normalize((), e.body)
            try:
                Elaborator(sig).check(Context(), parse_term(S.print_core(nf)), e.type_value)
            except ElabError as err:
                pytest.fail(f"{e.name}: {err}")
    with_deep_stack(run)


def test_printed_core_reelaborates_to_itself(prelude_report):
    sig = prelude_report.sig

    def run():
        for e in sig:
            again = Elaborator(sig).check(Context(), parse_term(S.print_core(e.body)), e.type_value)
            assert S.alpha_equal(again, e.body), e.name
    with_deep_stack(run)


def test_axiom_sets_match_recomputation(corpus_report):
    """Cached axiom sets agree with a fresh transitive traversal of bodies."""
    sig = corpus_report.sig
    memo: dict[str, frozenset] = {}

    def recompute(name):
        if name not in memo:
            body = sig[name].body
            found = set()
            stack = [body]
            while stack:
                t = stack.pop()
                if isinstance(t, S.Axiom):
                    found.add(t.name)
                elif isinstance(t, S.Const):
                    found |= recompute(t.name)
                else:
                    stack.extend(sub for sub, _ in S.children(t))
            memo[name] = frozenset(found)
        return memo[name]

    for e in sig:
        assert recompute(e.name) == e.axioms, e.name


def test_level_safety(level_audit):
    """No eliminator is used at a level tag below its motive's codomain."""
    report, uses = level_audit
    assert report.ok
    assert uses, "the audit hook saw no eliminators"
    bad = [u for u in uses if u[2] > u[1]]
    assert bad == []
    assert {u[0] for u in uses} >= {"J1", "cind1", "scase1", "eabsurd1"}


def test_level_tag_too_small_is_rejected():
    assert codes("def T (n : Nat) : U0 := nind0 (\\_. U0) Unit (\\_ _. Unit) n") == ["level-violation"]


def test_closed_checking_is_deterministic():
    a = check_files([PRELUDE])
    b = check_files([PRELUDE])
    assert [e.name for e in a.sig] == [e.name for e in b.sig]
    assert all(S.alpha_equal(x.body, y.body) and S.alpha_equal(x.type, y.type)
               for x, y in zip(a.sig, b.sig))


# --- alpha-equality ----------------------------------------------------------

BINDER = st.sampled_from(["x", "y", "z"])


def core_terms():
    return st.recursive(
        st.one_of(st.integers(0, 3).map(S.Var), st.sampled_from([S.Univ(0), S.Nat(), S.Zero(), S.TT()])),
        lambda sub: st.one_of(
            st.builds(S.App, sub, sub),
            st.builds(S.Lam, BINDER, sub),
            st.builds(S.Pi, BINDER, sub, sub),
            st.builds(S.Sigma, BINDER, sub, sub),
            st.builds(S.Pair, sub, sub),
            st.builds(S.Fst, sub),
            st.builds(S.Id, sub, sub, sub),
            st.builds(S.Refl, sub),
            st.builds(S.Suc, sub),
        ),
        max_leaves=10,
    )


def rename_binders(t, name):
    match t:
        case S.Lam(_, b):
            return S.Lam(name, rename_binders(b, name))
        case S.Pi(_, a, b):
            return S.Pi(name, rename_binders(a, name), rename_binders(b, name))
        case S.Sigma(_, a, b):
            return S.Sigma(name, rename_binders(a, name), rename_binders(b, name))
    if isinstance(t, (S.Var, S.Univ, S.Nat, S.Zero, S.TT)):
        return t
    return type(t)(*(rename_binders(getattr(t, f), name) if isinstance(getattr(t, f), S.Term) else getattr(t, f)
                     for f in t.__slots__))


@given(core_terms())
def test_alpha_equal_reflexive(t):
    assert S.alpha_equal(t, t)


@given(core_terms(), core_terms())
def test_alpha_equal_symmetric(t, u):
    assert S.alpha_equal(t, u) == S.alpha_equal(u, t)


@given(core_terms(), BINDER, BINDER)
def test_alpha_equal_transitive_across_renamings(t, n1, n2):
    u, v = rename_binders(t, n1), rename_binders(t, n2)
    assert S.alpha_equal(t, u) and S.alpha_equal(u, v) and S.alpha_equal(t, v)


@given(core_terms(), core_terms(), core_terms())
def test_alpha_equal_transitive(t, u, v):
    if S.alpha_equal(t, u) and S.alpha_equal(u, v):
        assert S.alpha_equal(t, v)


@given(core_terms())
def test_alpha_equal_distinguishes_indices(t):
    assert not S.alpha_equal(S.Lam("x", t), S.Lam("x", S.App(t, S.Var(0))))


def test_unannotated_lambda_head_cannot_be_synthesized():
    assert codes("def b (A : U0) (a : A) : A := (\\x. x) a") == ["cannot-synthesize"]
