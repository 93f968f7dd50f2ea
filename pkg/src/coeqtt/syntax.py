"""Core terms, the global signature, and printing of elaborated terms.

Variables are de Bruijn indices.  Binder names are hints only: they are
excluded from equality, so ``==`` on core terms is alpha-equivalence.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Iterator, Optional

AXIOM_NAMES = ("funext", "univalence", "cgluebeta")


class Term:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Var(Term):
    index: int


@dataclass(frozen=True, slots=True)
class Univ(Term):
    level: int


@dataclass(frozen=True, slots=True)
class Pi(Term):
    name: str = field(compare=False)
    dom: Term
    cod: Term


@dataclass(frozen=True, slots=True)
class Lam(Term):
    name: str = field(compare=False)
    body: Term


@dataclass(frozen=True, slots=True)
class App(Term):
    fn: Term
    arg: Term


@dataclass(frozen=True, slots=True)
class Sigma(Term):
    name: str = field(compare=False)
    fst: Term
    snd: Term


@dataclass(frozen=True, slots=True)
class Pair(Term):
    fst: Term
    snd: Term


@dataclass(frozen=True, slots=True)
class Fst(Term):
    pair: Term


@dataclass(frozen=True, slots=True)
class Snd(Term):
    pair: Term


@dataclass(frozen=True, slots=True)
class Id(Term):
    ty: Term
    lhs: Term
    rhs: Term


@dataclass(frozen=True, slots=True)
class Refl(Term):
    point: Term


@dataclass(frozen=True, slots=True)
class J(Term):
    level: int
    motive: Term
    base: Term
    lhs: Term
    rhs: Term
    path: Term


@dataclass(frozen=True, slots=True)
class Coeq(Term):
    carrier: Term
    rel: Term


@dataclass(frozen=True, slots=True)
class Inj(Term):
    elem: Term


@dataclass(frozen=True, slots=True)
class Glue(Term):
    """``glue a b s``; the coequalizer it lives in is an annotation added by the
    checker, ignored by equality and printing."""

    a: Term
    b: Term
    witness: Term
    carrier: Optional[Term] = field(default=None, compare=False)
    rel: Optional[Term] = field(default=None, compare=False)


@dataclass(frozen=True, slots=True)
class CInd(Term):
    level: int
    motive: Term
    point_case: Term
    glue_case: Term
    scrut: Term


@dataclass(frozen=True, slots=True)
class Empty(Term):
    pass


@dataclass(frozen=True, slots=True)
class EAbsurd(Term):
    level: int
    motive: Term
    scrut: Term


@dataclass(frozen=True, slots=True)
class Unit(Term):
    pass


@dataclass(frozen=True, slots=True)
class TT(Term):
    pass


@dataclass(frozen=True, slots=True)
class UInd(Term):
    level: int
    motive: Term
    case: Term
    scrut: Term


@dataclass(frozen=True, slots=True)
class Sum(Term):
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Inl(Term):
    value: Term


@dataclass(frozen=True, slots=True)
class Inr(Term):
    value: Term


@dataclass(frozen=True, slots=True)
class SCase(Term):
    level: int
    motive: Term
    left_case: Term
    right_case: Term
    scrut: Term


@dataclass(frozen=True, slots=True)
class Nat(Term):
    pass


@dataclass(frozen=True, slots=True)
class Zero(Term):
    pass


@dataclass(frozen=True, slots=True)
class Suc(Term):
    pred: Term


@dataclass(frozen=True, slots=True)
class NInd(Term):
    level: int
    motive: Term
    zero_case: Term
    suc_case: Term
    scrut: Term


@dataclass(frozen=True, slots=True)
class Axiom(Term):
    name: str


@dataclass(frozen=True, slots=True)
class Const(Term):
    name: str
    entry: Optional["Entry"] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, slots=True)
class Ann(Term):
    """A user-written type ascription; evaluation ignores it."""

    term: Term
    ty: Term


def alpha_equal(t: Term, u: Term) -> bool:
    return t == u


def children(t: Term) -> Iterator[tuple[Term, int]]:
    """Immediate subterms with the number of binders each sits under."""
    match t:
        case Pi(_, a, b) | Sigma(_, a, b):
            yield a, 0
            yield b, 1
        case Lam(_, b):
            yield b, 1
        case Var() | Univ() | Empty() | Unit() | TT() | Nat() | Zero() | Axiom() | Const():
            return
        case _:
            for name in t.__slots__:
                sub = getattr(t, name)
                if isinstance(sub, Term):
                    yield sub, 0


def max_free_index(t: Term, depth: int = 0) -> int:
    """Largest escaping index relative to ``t``'s own scope, or -1 if closed."""
    if isinstance(t, Var):
        return t.index - depth
    return max((max_free_index(s, depth + k) for s, k in children(t)), default=-1)


def constants(t: Term) -> set[str]:
    out: set[str] = set()
    stack = [t]
    while stack:
        cur = stack.pop()
        if isinstance(cur, Const):
            out.add(cur.name)
        else:
            stack.extend(s for s, _ in children(cur))
    return out


def axioms_in(t: Term) -> set[str]:
    """Axioms reachable from ``t``, using the cached sets of referenced constants."""
    out: set[str] = set()
    stack = [t]
    while stack:
        cur = stack.pop()
        if isinstance(cur, Axiom):
            out.add(cur.name)
        elif isinstance(cur, Const):
            if cur.entry is not None:
                out |= cur.entry.axioms
        else:
            stack.extend(s for s, _ in children(cur))
    return out


# --------------------------------------------------------------------------
# Signature


@dataclass(eq=False)
class Entry:
    name: str
    type: Term
    body: Term
    axioms: frozenset[str]
    _type_value: object = field(default=None, repr=False)
    _value: object = field(default=None, repr=False)

    @property
    def type_value(self):
        if self._type_value is None:
            from .nbe import evaluate

            self._type_value = evaluate((), self.type)
        return self._type_value

    @property
    def value(self):
        if self._value is None:
            from .nbe import evaluate

            self._value = evaluate((), self.body)
        return self._value


class Signature:
    """Append-only list of checked definitions."""

    def __init__(self) -> None:
        self.entries: list[Entry] = []
        self._index: dict[str, Entry] = {}
        self._lock = threading.Lock()

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Entry]:
        return iter(list(self.entries))

    def get(self, name: str) -> Optional[Entry]:
        return self._index.get(name)

    def __getitem__(self, name: str) -> Entry:
        return self._index[name]

    def add(self, name: str, ty: Term, body: Term) -> Entry:
        with self._lock:
            if name in self._index:
                raise ValueError(f"name already defined: {name}")
            for c in constants(body) | constants(ty):
                if c not in self._index:
                    raise ValueError(f"{name} refers to {c}, which is not defined earlier")
            entry = Entry(name, ty, body, frozenset(axioms_in(body)))
            self.entries.append(entry)
            self._index[name] = entry
            return entry


# --------------------------------------------------------------------------
# Printing

RESERVED = frozenset(
    """def axiom-assert conv-assert U0 U1 Id refl J0 J1 Coeq inj glue cind0 cind1
    Empty eabsurd0 eabsurd1 Unit tt uind0 uind1 Sum inl inr scase0 scase1 Nat zero
    suc nind0 nind1 funext univalence cgluebeta""".split()
)

# precedence: 0 lambda / top, 1 identity, 2 arrow, 3 product, 4 application, 5 atom
_TOP, _ARROW, _PROD, _APP, _ATOM = 0, 2, 3, 4, 5


def _uses(t: Term, index: int) -> bool:
    if isinstance(t, Var):
        return t.index == index
    return any(_uses(s, index + k) for s, k in children(t))


class _Printer:
    def __init__(self, avoid: set[str]):
        self.avoid = avoid

    def fresh(self, hint: str, scope: list[str]) -> str:
        base = hint if hint and hint != "_" else "x"
        name, n = base, 0
        while name in scope or name in self.avoid or name in RESERVED:
            n += 1
            name = f"{base}{n}"
        return name

    def paren(self, text: str, prec: int, needed: int) -> str:
        return f"({text})" if prec > needed else text

    def spine(self, head: str, args: list[Term], scope: list[str], prec: int) -> str:
        if not args:
            return head
        text = " ".join([head] + [self.go(a, scope, _ATOM) for a in args])
        return self.paren(text, prec, _APP)

    def go(self, t: Term, scope: list[str], prec: int) -> str:
        match t:
            case Var(i):
                return scope[-1 - i]
            case Univ(level):
                return f"U{level}"
            case Pi(name, dom, cod):
                if not _uses(cod, 0):
                    text = f"{self.go(dom, scope, _PROD)} -> {self.go(cod, scope + ['_'], _ARROW)}"
                else:
                    x = self.fresh(name, scope)
                    text = f"({x} : {self.go(dom, scope, _TOP)}) -> {self.go(cod, scope + [x], _ARROW)}"
                return self.paren(text, prec, _ARROW)
            case Sigma(name, a, b):
                if not _uses(b, 0):
                    text = f"{self.go(a, scope, _APP)} * {self.go(b, scope + ['_'], _PROD)}"
                else:
                    x = self.fresh(name, scope)
                    text = f"({x} : {self.go(a, scope, _TOP)}) * {self.go(b, scope + [x], _PROD)}"
                return self.paren(text, prec, _PROD)
            case Lam(name, body):
                x = self.fresh(name, scope)
                return self.paren(f"\\{x}. {self.go(body, scope + [x], _TOP)}", prec, _TOP)
            case App():
                args = []
                while isinstance(t, App):
                    args.append(t.arg)
                    t = t.fn
                args.reverse()
                head = self.go(t, scope, _ATOM)
                return self.paren(" ".join([head] + [self.go(a, scope, _ATOM) for a in args]), prec, _APP)
            case Pair(a, b):
                return f"({self.go(a, scope, _TOP)}, {self.go(b, scope, _TOP)})"
            case Fst(p):
                return f"{self.go(p, scope, _ATOM)}.1"
            case Snd(p):
                return f"{self.go(p, scope, _ATOM)}.2"
            case Ann(term, ty):
                return f"({self.go(term, scope, _TOP)} : {self.go(ty, scope, _TOP)})"
            case Axiom(name) | Const(name):
                return name
            case Empty():
                return "Empty"
            case Unit():
                return "Unit"
            case TT():
                return "tt"
            case Nat():
                return "Nat"
            case Zero():
                return "zero"
            case Id(a, x, y):
                return self.spine("Id", [a, x, y], scope, prec)
            case Refl(x):
                return self.spine("refl", [x], scope, prec)
            case J(lv, m, d, x, y, p):
                return self.spine(f"J{lv}", [m, d, x, y, p], scope, prec)
            case Coeq(a, r):
                return self.spine("Coeq", [a, r], scope, prec)
            case Inj(a):
                return self.spine("inj", [a], scope, prec)
            case Glue(a, b, s, _, _):
                return self.spine("glue", [a, b, s], scope, prec)
            case CInd(lv, m, f, e, x):
                return self.spine(f"cind{lv}", [m, f, e, x], scope, prec)
            case EAbsurd(lv, m, x):
                return self.spine(f"eabsurd{lv}", [m, x], scope, prec)
            case UInd(lv, m, u, x):
                return self.spine(f"uind{lv}", [m, u, x], scope, prec)
            case Sum(a, b):
                return self.spine("Sum", [a, b], scope, prec)
            case Inl(a):
                return self.spine("inl", [a], scope, prec)
            case Inr(a):
                return self.spine("inr", [a], scope, prec)
            case SCase(lv, m, f, g, x):
                return self.spine(f"scase{lv}", [m, f, g, x], scope, prec)
            case Suc(n):
                return self.spine("suc", [n], scope, prec)
            case NInd(lv, m, z, s, n):
                return self.spine(f"nind{lv}", [m, z, s, n], scope, prec)
        raise TypeError(f"not a core term: {t!r}")


def print_core(t: Term, names: tuple[str, ...] | list[str] = ()) -> str:
    """Render ``t`` in surface syntax.

    ``names`` lists the variables in scope, innermost last.  Binders are
    renamed apart from every name in scope and every constant in ``t``, so
    the text re-parses to the same term.
    """
    printer = _Printer(constants(t) | set(names))
    return printer.go(t, list(names), _TOP)
