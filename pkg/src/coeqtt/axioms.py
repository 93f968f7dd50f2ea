"""The three postulated constants and their fixed types.

Each type is written in surface syntax using primitives only (every helper
such as ``happly`` or ``transport`` is inlined), so the kernel does not
depend on the corpus.  The corpus restates each type with
``axiom-assert``, which checks it is convertible with the one here.

* ``funext`` -- ``happly`` is bi-invertible.  One instance at level 1 covers
  level-0 families too, by cumulativity.
* ``univalence`` -- ``idtoeqv`` is bi-invertible, for types in ``U0``.
* ``cgluebeta`` -- ``apd`` of a coequalizer eliminator on ``glue`` is the
  glue case.
"""

from __future__ import annotations

import threading

from . import syntax as S


def _is_biinv(x: str, y: str, h) -> str:
    """Bi-invertibility of a map ``x -> y``; ``h(arg)`` renders the map applied to ``arg``."""
    return (f"((bl : ({y}) -> {x}) * ((bx : {x}) -> Id ({x}) (bl ({h('bx')})) bx)) * "
            f"((br : ({y}) -> {x}) * ((by : {y}) -> Id ({y}) ({h('br by')}) by))")


def _transport(c: str, p: str, x: str, y: str, path: str, u: str) -> str:
    return f"J1 (\\tx ty tp. {p} tx -> {p} ty) (\\tx tu. tu) ({x} : {c}) ({y}) ({path}) ({u})"


def _happly(a: str, b: str, f: str, g: str):
    return lambda p: (f"J1 (\\hf hg hq. (hx : {a}) -> Id ({b} hx) (hf hx) (hg hx)) "
                      f"(\\hh hx. refl (hh hx)) {f} {g} ({p})")


def _equiv(x: str, y: str) -> str:
    return f"(ef : ({x}) -> {y}) * {_is_biinv(x, y, lambda arg: f'ef ({arg})')}"


_ID_EQUIV = "\\iX. (\\ix. ix, ((\\ix. ix, \\ix. refl ix), (\\ix. ix, \\ix. refl ix)))"

FUNEXT = (
    "(A : U1) -> (B : A -> U1) -> (f : (x : A) -> B x) -> (g : (x : A) -> B x) -> "
    + _is_biinv("Id ((x : A) -> B x) f g", "(x : A) -> Id (B x) (f x) (g x)", _happly("A", "B", "f", "g"))
)

UNIVALENCE = (
    "(A : U0) -> (B : U0) -> "
    + _is_biinv(
        "Id U0 A B",
        _equiv("A", "B"),
        lambda p: f"J1 (\\uX uY uq. {_equiv('uX', 'uY')}) ({_ID_EQUIV}) A B ({p})",
    )
)

_GLUE_CASE = (
    "(a : A) -> (b : A) -> (s : R a b) -> "
    f"Id (P (inj b)) ({_transport('Coeq A R', 'P', 'inj a', 'inj b', 'glue a b s', 'f a')}) (f b)"
)

CGLUEBETA = (
    "(A : U0) -> (R : A -> A -> U0) -> (P : Coeq A R -> U1) -> "
    "(f : (a : A) -> P (inj a)) -> "
    f"(e : {_GLUE_CASE}) -> "
    "(a : A) -> (b : A) -> (s : R a b) -> "
    "Id (Id (P (inj b)) "
    f"({_transport('Coeq A R', 'P', 'inj a', 'inj b', 'glue a b s', 'f a')}) (f b)) "
    "(J1 (\\dx dy dp. Id (P dy) "
    f"({_transport('Coeq A R', 'P', 'dx', 'dy', 'dp', 'cind1 P f e dx')}) (cind1 P f e dy)) "
    "(\\dx. refl (cind1 P f e dx)) (inj a : Coeq A R) (inj b) (glue a b s)) "
    "(e a b s)"
)

SOURCES = {"funext": FUNEXT, "univalence": UNIVALENCE, "cgluebeta": CGLUEBETA}
assert set(SOURCES) == set(S.AXIOM_NAMES)

_cache: dict[str, tuple] = {}
_lock = threading.RLock()


def axiom_type(name: str) -> S.Term:
    """The elaborated core type of an axiom."""
    return _load(name)[0]


def axiom_type_value(name: str):
    """The evaluated type of an axiom."""
    return _load(name)[1]


def _load(name: str) -> tuple:
    with _lock:
        if name not in _cache:
            from .nbe import evaluate
            from .parser import parse_term
            from .typecheck import Elaborator

            term = Elaborator(S.Signature()).elaborate_type_closed(parse_term(SOURCES[name], f"<axiom {name}>"))
            _cache[name] = (term, evaluate((), term))
        return _cache[name]
