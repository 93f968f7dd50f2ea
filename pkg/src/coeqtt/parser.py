"""Lexer, parser and printer for the ``.hott`` surface language.

The grammar is documented in ``docs/grammar.md``.  Parsing is total: it
returns the declarations read before the first error together with the
diagnostics, and never raises on bad input.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

# --------------------------------------------------------------------------
# Diagnostics


@dataclass(frozen=True)
class Span:
    line: int
    col: int
    length: int = 1


NO_SPAN = Span(1, 1, 0)


@dataclass
class Diagnostic:
    code: str
    message: str
    span: Span = NO_SPAN
    file: str = "<input>"
    severity: str = "error"
    expected: Optional[str] = None
    actual: Optional[str] = None

    def to_json(self) -> dict:
        return {"file": self.file, "line": self.span.line, "col": self.span.col,
                "code": self.code, "message": self.message}

    def render(self) -> str:
        text = f"{self.file}:{self.span.line}:{self.span.col}: {self.severity}[{self.code}]: {self.message}"
        if self.expected is not None:
            text += f"\n  expected: {self.expected}"
        if self.actual is not None:
            text += f"\n  actual:   {self.actual}"
        return text


class ParseError(Exception):
    def __init__(self, diagnostic: Diagnostic):
        super().__init__(diagnostic.message)
        self.diagnostic = diagnostic


# --------------------------------------------------------------------------
# Tokens

DECL_KEYWORDS = {"def": "kw-def", "axiom-assert": "kw-axiom-assert", "conv-assert": "kw-conv-assert"}

_PUNCT = [
    (":=", "assign"), ("->", "arrow"), ("==", "eqeq"), (":", "colon"), ("*", "star"),
    ("\\", "lambda"), ("(", "lparen"), (")", "rparen"), (",", "comma"), ("{", "lbrace"),
    ("}", "rbrace"), ("=", "eq"),
]

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*(?:-[A-Za-z][A-Za-z0-9_']*)*")
_PROJ = re.compile(r"\.[12](?![A-Za-z0-9_'])")
_SPACE = re.compile(r"(?:[ \t\r\n]+|--[^\n]*)+")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: Span
    offset: int


def tokenize(source: str, file: str = "<input>") -> list[Token]:
    """Split ``source`` into tokens, ending with an ``eof`` token.

    Raises ``ParseError`` (code ``illegal-character``) on a character
    outside the accepted alphabet.
    """
    tokens: list[Token] = []
    pos, line, line_start = 0, 1, 0
    n = len(source)

    def span_at(start: int, length: int) -> Span:
        return Span(line, start - line_start + 1, length)

    while True:
        m = _SPACE.match(source, pos)
        if m:
            chunk = m.group()
            newlines = chunk.count("\n")
            if newlines:
                line += newlines
                line_start = pos + chunk.rfind("\n") + 1
            pos = m.end()
        if pos >= n:
            tokens.append(Token("eof", "", span_at(pos, 0), pos))
            return tokens
        m = _IDENT.match(source, pos)
        if m:
            text = m.group()
            tokens.append(Token(DECL_KEYWORDS.get(text, "ident"), text, span_at(pos, len(text)), pos))
            pos = m.end()
            continue
        m = _PROJ.match(source, pos)
        if m:
            tokens.append(Token("proj", m.group(), span_at(pos, 2), pos))
            pos = m.end()
            continue
        if source[pos] == ".":
            tokens.append(Token("dot", ".", span_at(pos, 1), pos))
            pos += 1
            continue
        for text, kind in _PUNCT:
            if source.startswith(text, pos):
                tokens.append(Token(kind, text, span_at(pos, len(text)), pos))
                pos += len(text)
                break
        else:
            ch = source[pos]
            raise ParseError(Diagnostic("illegal-character", f"illegal character {ch!r}",
                                        span_at(pos, 1), file))


# --------------------------------------------------------------------------
# Surface syntax
#
# Spans are excluded from equality so that ``==`` is structural identity.


class STerm:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class SVar(STerm):
    name: str
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True, slots=True)
class SApp(STerm):
    fn: STerm
    arg: STerm
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True, slots=True)
class SLam(STerm):
    name: str
    body: STerm
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True, slots=True)
class SPi(STerm):
    """``(x : A) -> B``; ``name`` is None for the arrow ``A -> B``."""

    name: Optional[str]
    dom: STerm
    cod: STerm
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True, slots=True)
class SSigma(STerm):
    """``(x : A) * B``; ``name`` is None for the product ``A * B``."""

    name: Optional[str]
    fst: STerm
    snd: STerm
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True, slots=True)
class SPair(STerm):
    fst: STerm
    snd: STerm
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True, slots=True)
class SProj(STerm):
    pair: STerm
    index: int
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True, slots=True)
class SAnn(STerm):
    term: STerm
    ty: STerm
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True, slots=True)
class SEq(STerm):
    """``a ={A} b``, sugar for ``Id A a b``."""

    lhs: STerm
    ty: STerm
    rhs: STerm
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class SurfaceDecl:
    """A parsed declaration.

    ``kind`` is ``def``, ``axiom-assert`` or ``conv-assert``.  ``params`` is
    the telescope written before the colon; a conversion assertion has a
    body (the left side) and an ``rhs``.
    """

    kind: str
    name: str
    params: tuple = ()
    type: Optional[STerm] = None
    body: Optional[STerm] = None
    rhs: Optional[STerm] = None
    span: Span = field(default=NO_SPAN, compare=False)


# --------------------------------------------------------------------------
# Parser


class _Parser:
    def __init__(self, tokens: list[Token], source: str, file: str):
        self.toks = tokens
        self.i = 0
        self.source = source
        self.file = file

    # helpers

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, expected: str) -> ParseError:
        t = self.tok
        found = "end of file" if t.kind == "eof" else repr(t.text)
        return ParseError(Diagnostic("parse-error", f"expected {expected}, found {found}", t.span, self.file))

    def expect(self, kind: str, what: Optional[str] = None) -> Token:
        if self.tok.kind != kind:
            raise self.error(what or kind)
        t = self.tok
        self.i += 1
        return t

    def accept(self, kind: str) -> Optional[Token]:
        if self.tok.kind == kind:
            t = self.tok
            self.i += 1
            return t
        return None

    def span_from(self, start: Token) -> Span:
        last = self.toks[self.i - 1]
        end = last.offset + len(last.text)
        length = end - start.offset
        if start.span.line != last.span.line:
            length = len(self.source[start.offset:end].split("\n", 1)[0])
        return Span(start.span.line, start.span.col, max(length, 1))

    # declarations

    def module(self) -> list[SurfaceDecl]:
        decls = []
        while self.tok.kind != "eof":
            decls.append(self.decl())
        return decls

    def decl(self) -> SurfaceDecl:
        start = self.tok
        if self.accept("kw-def"):
            name = self.expect("ident", "a declaration name").text
            params = self.params()
            self.expect("colon", "':'")
            ty = self.term()
            self.expect("assign", "':='")
            body = self.term()
            return SurfaceDecl("def", name, params, ty, body, None, self.span_from(start))
        if self.accept("kw-axiom-assert"):
            name = self.expect("ident", "an axiom name").text
            self.expect("colon", "':'")
            ty = self.term()
            return SurfaceDecl("axiom-assert", name, (), ty, None, None, self.span_from(start))
        if self.accept("kw-conv-assert"):
            name = self.expect("ident", "an assertion name").text
            params = self.params()
            self.expect("colon", "':'")
            ty = self.term()
            self.expect("assign", "':='")
            lhs = self.term()
            self.expect("eqeq", "'=='")
            rhs = self.term()
            return SurfaceDecl("conv-assert", name, params, ty, lhs, rhs, self.span_from(start))
        raise self.error("a declaration ('def', 'axiom-assert' or 'conv-assert')")

    def params(self) -> tuple:
        out = []
        while self.tok.kind == "lparen":
            self.i += 1
            names = [self.expect("ident", "a parameter name").text]
            while self.tok.kind == "ident":
                names.append(self.tok.text)
                self.i += 1
            self.expect("colon", "':'")
            ty = self.term()
            self.expect("rparen", "')'")
            out.extend((n, ty) for n in names)
        return tuple(out)

    # terms

    def term(self) -> STerm:
        if self.tok.kind == "lambda":
            return self.lam()
        start = self.tok
        saved = self.i
        groups = self.binder_groups()
        if groups is not None:
            if self.accept("arrow"):
                cod = self.term()
                return self._bind(SPi, groups, cod, start)
            self.expect("star")
            left = self._bind(SSigma, groups, self.prod(), start)
            if self.accept("arrow"):
                return SPi(None, left, self.term(), self.span_from(start))
            return self.eq_tail(left, start)
        self.i = saved
        left = self.prod()
        if self.accept("arrow"):
            return SPi(None, left, self.term(), self.span_from(start))
        return self.eq_tail(left, start)

    def eq_tail(self, left: STerm, start: Token) -> STerm:
        if self.accept("eq"):
            self.expect("lbrace", "'{' after '='")
            ty = self.term()
            self.expect("rbrace", "'}'")
            rhs = self.term()
            return SEq(left, ty, rhs, self.span_from(start))
        return left

    def _bind(self, cls, groups, body: STerm, start: Token) -> STerm:
        span = self.span_from(start)
        for name, ty in reversed(groups):
            body = cls(name, ty, body, span)
        return body

    def lam(self) -> STerm:
        start = self.expect("lambda")
        names = [self.expect("ident", "a bound variable").text]
        while self.tok.kind == "ident":
            names.append(self.tok.text)
            self.i += 1
        self.expect("dot", "'.'")
        body = self.term()
        span = self.span_from(start)
        for name in reversed(names):
            body = SLam(name, body, span)
        return body

    def binder_groups(self) -> Optional[list]:
        """Parse ``(x y : A) (z : B) ...`` if it is followed by ``->`` or ``*``."""
        if self.tok.kind != "lparen" or self.peek().kind != "ident":
            return None
        j = self.i + 1
        while self.toks[j].kind == "ident":
            j += 1
        if self.toks[j].kind != "colon":
            return None
        saved = self.i
        groups = []
        try:
            while self.tok.kind == "lparen":
                self.i += 1
                names = []
                while self.tok.kind == "ident":
                    names.append(self.tok.text)
                    self.i += 1
                if not names or not self.accept("colon"):
                    raise self.error("binder")
                ty = self.term()
                self.expect("rparen")
                groups.extend((n, ty) for n in names)
        except ParseError:
            self.i = saved
            return None
        if self.tok.kind in ("arrow", "star"):
            return groups
        self.i = saved
        return None

    def prod(self) -> STerm:
        start = self.tok
        saved = self.i
        groups = self.binder_groups()
        if groups is not None and self.tok.kind == "star":
            self.i += 1
            return self._bind(SSigma, groups, self.prod(), start)
        self.i = saved
        left = self.app()
        if self.accept("star"):
            return SSigma(None, left, self.prod(), self.span_from(start))
        return left

    def app(self) -> STerm:
        start = self.tok
        t = self.atom()
        while True:
            if self.tok.kind in ("ident", "lparen"):
                t = SApp(t, self.atom(), self.span_from(start))
            elif self.tok.kind == "lambda":
                t = SApp(t, self.lam(), self.span_from(start))
                return t
            else:
                return t

    def atom(self) -> STerm:
        start = self.tok
        if self.tok.kind == "ident":
            self.i += 1
            t: STerm = SVar(start.text, start.span)
        elif self.accept("lparen"):
            inner = self.term()
            if self.accept("colon"):
                ty = self.term()
                self.expect("rparen", "')'")
                t = SAnn(inner, ty, self.span_from(start))
            elif self.tok.kind == "comma":
                items = [inner]
                while self.accept("comma"):
                    items.append(self.term())
                self.expect("rparen", "')'")
                span = self.span_from(start)
                t = items[-1]
                for item in reversed(items[:-1]):
                    t = SPair(item, t, span)
            else:
                self.expect("rparen", "')'")
                t = inner
        else:
            raise self.error("a term")
        while self.tok.kind == "proj":
            t = SProj(t, int(self.tok.text[1]), self._proj_span(start))
            self.i += 1
        return t

    def _proj_span(self, start: Token) -> Span:
        tok = self.tok
        return Span(start.span.line, start.span.col, tok.offset + 2 - start.offset)


def parse_module(source: str, file: str = "<input>") -> tuple[list[SurfaceDecl], list[Diagnostic]]:
    """Parse a whole file.

    Returns the declarations that precede the first error and at most one
    diagnostic; nothing after an error point is emitted.
    """
    try:
        tokens = tokenize(source, file)
    except ParseError as e:
        # keep the declarations that end before the bad character
        good = source[: _offset_of(source, e.diagnostic.span)]
        decls, _ = _parse_prefix(good, file, e.diagnostic.span)
        return decls, [e.diagnostic]
    p = _Parser(tokens, source, file)
    decls: list[SurfaceDecl] = []
    try:
        while p.tok.kind != "eof":
            decls.append(p.decl())
    except ParseError as e:
        return decls, [e.diagnostic]
    return decls, []


def _offset_of(source: str, span: Span) -> int:
    lines = source.split("\n")
    return sum(len(l) + 1 for l in lines[: span.line - 1]) + span.col - 1


def _parse_prefix(source: str, file: str, limit: Span) -> tuple[list[SurfaceDecl], list[Diagnostic]]:
    """Declarations that are complete before an illegal character.

    The last declaration of the prefix may continue past the bad character,
    so it is kept only if the prefix ends with another declaration keyword.
    """
    p = _Parser(tokenize(source, file), source, file)
    decls: list[SurfaceDecl] = []
    try:
        while p.tok.kind != "eof":
            d = p.decl()
            if p.tok.kind == "eof":
                break
            decls.append(d)
    except ParseError:
        pass
    return decls, []


def parse_term(source: str, file: str = "<input>") -> STerm:
    """Parse a single term; raises ``ParseError`` on bad input."""
    p = _Parser(tokenize(source, file), source, file)
    t = p.term()
    if p.tok.kind != "eof":
        raise p.error("end of input")
    return t


# --------------------------------------------------------------------------
# Printing surface syntax

_TOP, _EQ, _ARROW, _PROD, _APP, _ATOM = range(6)


def print_term(t: STerm, prec: int = _TOP) -> str:
    def paren(text: str, level: int) -> str:
        return f"({text})" if prec > level else text

    match t:
        case SVar(name):
            return name
        case SLam(name, body):
            return paren(f"\\{name}. {print_term(body)}", _TOP)
        case SPi(name, dom, cod):
            if name is None:
                return paren(f"{print_term(dom, _PROD)} -> {print_term(cod)}", _TOP)
            return paren(f"({name} : {print_term(dom)}) -> {print_term(cod)}", _TOP)
        case SSigma(name, a, b):
            if name is None:
                return paren(f"{print_term(a, _APP)} * {print_term(b, _PROD)}", _PROD)
            return paren(f"({name} : {print_term(a)}) * {print_term(b, _PROD)}", _PROD)
        case SEq(lhs, ty, rhs):
            return paren(f"{print_term(lhs, _PROD)} ={{{print_term(ty)}}} {print_term(rhs, _PROD)}", _EQ)
        case SApp(fn, arg):
            return paren(f"{print_term(fn, _APP)} {print_term(arg, _ATOM)}", _APP)
        case SPair(a, b):
            return f"({print_term(a)}, {print_term(b)})"
        case SProj(p, k):
            return f"{print_term(p, _ATOM)}.{k}"
        case SAnn(x, ty):
            return f"({print_term(x)} : {print_term(ty)})"
    raise TypeError(f"not a surface term: {t!r}")


def print_decl(d: SurfaceDecl) -> str:
    params = "".join(f" ({n} : {print_term(ty)})" for n, ty in d.params)
    if d.kind == "def":
        return f"def {d.name}{params} : {print_term(d.type)} :=\n  {print_term(d.body)}"
    if d.kind == "axiom-assert":
        return f"axiom-assert {d.name} : {print_term(d.type)}"
    return (f"conv-assert {d.name}{params} : {print_term(d.type)} :=\n"
            f"  {print_term(d.body)}\n  == {print_term(d.rhs)}")


def print_module(decls: list[SurfaceDecl]) -> str:
    return "\n\n".join(print_decl(d) for d in decls) + "\n"
