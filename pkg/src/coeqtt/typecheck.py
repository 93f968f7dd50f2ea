"""Bidirectional elaboration of surface declarations into the signature.

``infer`` synthesizes a type, ``check`` analyses a term against a given
type.  Lambdas, pairs and the constructors ``inj``, ``glue``, ``inl`` and
``inr`` are checked only; their types are not determined by the term.
Keyword eliminators take a fixed number of arguments; further arguments
are ordinary applications.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from . import nbe as N
from . import syntax as S
from .parser import (NO_SPAN, Diagnostic, SAnn, SApp, SEq, SLam, SPair, SPi, SProj, SSigma,
                     STerm, SurfaceDecl, SVar, Span)


class ElabError(Exception):
    def __init__(self, code: str, message: str, span: Span = NO_SPAN,
                 expected: Optional[str] = None, actual: Optional[str] = None):
        super().__init__(message)
        self.code = code
        self.message = message
        self.span = span
        self.expected = expected
        self.actual = actual

    def diagnostic(self, file: str) -> Diagnostic:
        return Diagnostic(self.code, self.message, self.span, file, "error", self.expected, self.actual)


@dataclass(frozen=True)
class Context:
    """Bound variables, innermost last: surface names, type values, and values."""

    names: tuple = ()
    types: tuple = ()
    env: tuple = ()

    @property
    def depth(self) -> int:
        return len(self.names)

    def bind(self, name: str, ty: N.Value) -> "Context":
        return Context(self.names + (name,), self.types + (ty,), self.env + (N.vvar(self.depth),))

    def define(self, name: str, ty: N.Value, value: N.Value) -> "Context":
        return Context(self.names + (name,), self.types + (ty,), self.env + (value,))

    def lookup(self, name: str) -> Optional[tuple[int, N.Value]]:
        for i in range(self.depth - 1, -1, -1):
            if self.names[i] == name:
                return self.depth - 1 - i, self.types[i]
        return None

    def eval(self, t: S.Term) -> N.Value:
        return N.evaluate(self.env, t)

    def conv(self) -> N.Conversion:
        return N.Conversion(self.types)


@dataclass
class ElabResult:
    term: S.Term
    type: N.Value
    axioms: frozenset = field(default_factory=frozenset)


# keyword heads: name -> number of arguments
ARITY = {
    "U0": 0, "U1": 0, "Id": 3, "refl": 1, "J0": 5, "J1": 5, "Coeq": 2, "inj": 1, "glue": 3,
    "cind0": 4, "cind1": 4, "Empty": 0, "eabsurd0": 2, "eabsurd1": 2, "Unit": 0, "tt": 0,
    "uind0": 3, "uind1": 3, "Sum": 2, "inl": 1, "inr": 1, "scase0": 4, "scase1": 4, "Nat": 0,
    "zero": 0, "suc": 1, "nind0": 4, "nind1": 4, "funext": 0, "univalence": 0, "cgluebeta": 0,
}
assert set(ARITY) | {"def", "axiom-assert", "conv-assert"} == S.RESERVED

_CHECK_ONLY = {"inj", "glue", "inl", "inr"}


def _spine(t: STerm) -> tuple[STerm, list[STerm]]:
    args = []
    while isinstance(t, SApp):
        args.append(t.arg)
        t = t.fn
    args.reverse()
    return t, args


def _keyword(t: STerm) -> Optional[tuple[str, list[STerm], list[STerm]]]:
    """Split a keyword application into (keyword, its arguments, extra arguments)."""
    head, args = _spine(t)
    if isinstance(head, SVar) and head.name in ARITY:
        n = ARITY[head.name]
        if len(args) < n:
            raise ElabError("arity", f"'{head.name}' expects {n} arguments, got {len(args)}",
                            getattr(t, "span", NO_SPAN))
        return head.name, args[:n], args[n:]
    return None


def _span(t) -> Span:
    return getattr(t, "span", NO_SPAN)


AuditHook = Callable[[str, int, int], None]


class Elaborator:
    """Elaborates surface terms against a signature.

    ``audit`` (optional) is called as ``audit(eliminator, level_tag,
    motive_level)`` for each eliminator, where ``motive_level`` is the
    smallest universe the motive's codomain fits in.
    """

    def __init__(self, sig: S.Signature, poisoned: Optional[set] = None,
                 audit: Optional[AuditHook] = None):
        self.sig = sig
        self.poisoned = poisoned if poisoned is not None else set()
        self.audit = audit

    # -- printing

    def show(self, ctx: Context, v: N.Value) -> str:
        return S.print_core(N.quote(ctx.depth, v, unfold=False), ctx.names)

    def mismatch(self, ctx: Context, t, expected: N.Value, actual: N.Value,
                 what: str = "type mismatch") -> ElabError:
        e, a = self.show(ctx, expected), self.show(ctx, actual)
        return ElabError("type-mismatch", f"{what}: expected {e}, got {a}", _span(t), e, a)

    # -- types

    def check_type(self, ctx: Context, t: STerm) -> tuple[S.Term, int]:
        """Elaborate ``t`` as a type and return it with its universe level.

        Level 2 marks a *large* type such as ``U1`` or ``(A : U1) -> A``:
        a well-formed type that lives in no universe.
        """
        match t:
            case SVar("U1"):
                return S.Univ(1), 2
            case SPi(name, dom, cod) | SSigma(name, dom, cod):
                a, la = self.check_type(ctx, dom)
                b, lb = self.check_type(ctx.bind(name or "_", ctx.eval(a)), cod)
                former = S.Pi if isinstance(t, SPi) else S.Sigma
                return former(name or "_", a, b), max(la, lb)
            case SEq(lhs, a, rhs):
                return self.elab_id(ctx, a, lhs, rhs)
        kw = _keyword(t)
        if kw is not None and not kw[2] and kw[0] in ("Id", "Sum"):
            if kw[0] == "Id":
                return self.elab_id(ctx, *kw[1])
            a, la = self.check_type(ctx, kw[1][0])
            b, lb = self.check_type(ctx, kw[1][1])
            return S.Sum(a, b), max(la, lb)
        core, ty = self.infer(ctx, t)
        ty = N.force(ty)
        if not isinstance(ty, N.VUniv):
            raise ElabError("not-a-type", f"expected a type, got a term of type {self.show(ctx, ty)}",
                            _span(t))
        return core, ty.level

    def small_type(self, ctx: Context, t: STerm) -> tuple[S.Term, N.Value]:
        """Elaborate a type that must live in a universe, returning it with that universe."""
        core, level = self.check_type(ctx, t)
        if level > 1:
            raise ElabError("universe-too-large",
                            f"{S.print_core(core, ctx.names)} is too large to have a type", _span(t))
        return core, N.VUniv(level)

    def elab_id(self, ctx: Context, a: STerm, x: STerm, y: STerm) -> tuple[S.Term, int]:
        a_core, level = self.check_type(ctx, a)
        a_val = ctx.eval(a_core)
        return S.Id(a_core, self.check(ctx, x, a_val), self.check(ctx, y, a_val)), level

    def elaborate_type_closed(self, t: STerm) -> S.Term:
        return self.check_type(Context(), t)[0]

    # -- inference

    def infer(self, ctx: Context, t: STerm) -> tuple[S.Term, N.Value]:
        kw = _keyword(t)
        if kw is not None:
            name, args, extra = kw
            core, ty = self.infer_keyword(ctx, t, name, args)
            for a in extra:
                core, ty = self.apply(ctx, t, core, ty, a)
            return core, ty
        match t:
            case SVar(name):
                return self.infer_var(ctx, t, name)
            case SApp(fn, arg):
                core, ty = self.infer(ctx, fn)
                return self.apply(ctx, t, core, ty, arg)
            case SPi() | SSigma() | SEq():
                return self.small_type(ctx, t)
            case SProj(pair, k):
                core, ty = self.infer(ctx, pair)
                ty = N.force(ty)
                if not isinstance(ty, N.VSigma):
                    raise ElabError("not-a-pair-type", f"projection from a term of type {self.show(ctx, ty)}",
                                    _span(t))
                if k == 1:
                    return S.Fst(core), ty.fst
                return S.Snd(core), ty.snd(N.vfst(ctx.eval(core)))
            case SAnn(x, a):
                a_core, _ = self.check_type(ctx, a)
                a_val = ctx.eval(a_core)
                return S.Ann(self.check(ctx, x, a_val), a_core), a_val
            case SLam() | SPair():
                kind = "a lambda" if isinstance(t, SLam) else "a pair"
                raise ElabError("cannot-synthesize",
                                f"cannot synthesize the type of {kind}; add a type annotation", _span(t))
        raise TypeError(t)

    def infer_var(self, ctx: Context, t: STerm, name: str) -> tuple[S.Term, N.Value]:
        found = ctx.lookup(name)
        if found is not None:
            return S.Var(found[0]), found[1]
        entry = self.sig.get(name)
        if entry is not None:
            return S.Const(name, entry), entry.type_value
        if name in self.poisoned:
            raise ElabError("poisoned", f"'{name}' is poisoned by an earlier error", _span(t))
        raise ElabError("unbound-name", f"unbound name '{name}'", _span(t))

    def apply(self, ctx: Context, t: STerm, fn: S.Term, ty: N.Value, arg: STerm) -> tuple[S.Term, N.Value]:
        ty = N.force(ty)
        if not isinstance(ty, N.VPi):
            raise ElabError("not-a-function", f"cannot apply a term of type {self.show(ctx, ty)}", _span(t))
        a = self.check(ctx, arg, ty.dom)
        return S.App(fn, a), ty.cod(ctx.eval(a))

    def infer_keyword(self, ctx: Context, t: STerm, kw: str, args: list[STerm]) -> tuple[S.Term, N.Value]:
        sp = _span(t)
        match kw:
            case "U0":
                return S.Univ(0), N.U1
            case "U1":
                raise ElabError("universe-too-large", "U1 has no type (there is no universe above U1)", sp)
            case "Empty" | "Unit" | "Nat":
                return {"Empty": S.Empty(), "Unit": S.Unit(), "Nat": S.Nat()}[kw], N.U0
            case "tt":
                return S.TT(), N.VUnit()
            case "zero":
                return S.Zero(), N.VNat()
            case "suc":
                return S.Suc(self.check(ctx, args[0], N.VNat())), N.VNat()
            case "funext" | "univalence" | "cgluebeta":
                from .axioms import axiom_type_value

                return S.Axiom(kw), axiom_type_value(kw)
            case "Id" | "Sum":
                if kw == "Id":
                    core, level = self.elab_id(ctx, *args)
                else:
                    (a, la), (b, lb) = self.check_type(ctx, args[0]), self.check_type(ctx, args[1])
                    core, level = S.Sum(a, b), max(la, lb)
                if level > 1:
                    raise ElabError("universe-too-large",
                                    f"{S.print_core(core, ctx.names)} is too large to have a type", sp)
                return core, N.VUniv(level)
            case "refl":
                x, a = self.infer(ctx, args[0])
                xv = ctx.eval(x)
                return S.Refl(x), N.VId(a, xv, xv)
            case "Coeq":
                a = self.check(ctx, args[0], N.U0)
                av = ctx.eval(a)
                r = self.check(ctx, args[1], N.rel_type(av))
                return S.Coeq(a, r), N.U0
            case "J0" | "J1":
                return self.infer_j(ctx, t, int(kw[1]), *args)
            case "cind0" | "cind1":
                return self.infer_cind(ctx, t, int(kw[4]), *args)
            case "eabsurd0" | "eabsurd1":
                level = int(kw[7])
                x = self.check(ctx, args[1], N.VEmpty())
                m = self.check_motive(ctx, args[0], lambda u: N.arrow(N.VEmpty(), u), level, kw)
                mv = ctx.eval(m)
                return S.EAbsurd(level, m, x), N.vapp(mv, ctx.eval(x))
            case "uind0" | "uind1":
                level = int(kw[4])
                x = self.check(ctx, args[2], N.VUnit())
                m = self.check_motive(ctx, args[0], lambda u: N.arrow(N.VUnit(), u), level, kw)
                mv = ctx.eval(m)
                u = self.check(ctx, args[1], N.vapp(mv, N.VTT()))
                return S.UInd(level, m, u, x), N.vapp(mv, ctx.eval(x))
            case "scase0" | "scase1":
                return self.infer_scase(ctx, t, int(kw[5]), *args)
            case "nind0" | "nind1":
                level = int(kw[4])
                n = self.check(ctx, args[3], N.VNat())
                m = self.check_motive(ctx, args[0], lambda u: N.arrow(N.VNat(), u), level, kw)
                mv = ctx.eval(m)
                z = self.check(ctx, args[1], N.vapp(mv, N.VZero()))
                s = self.check(ctx, args[2], N.nind_suc_type(mv))
                return S.NInd(level, m, z, s, n), N.vapp(mv, ctx.eval(n))
            case "inj" | "glue" | "inl" | "inr":
                raise ElabError("cannot-synthesize",
                                f"cannot synthesize the type of '{kw}'; add a type annotation", sp)
        raise AssertionError(kw)

    def check_motive(self, ctx: Context, m: STerm, motive_type: Callable[[N.Value], N.Value],
                     level: int, kw: str) -> S.Term:
        """Check a motive at ``motive_type(U level)``; diagnose a too-large motive."""
        try:
            core = self.check(ctx, m, motive_type(N.VUniv(level)))
        except ElabError as err:
            if level == 0 and err.code == "type-mismatch":
                try:
                    self.check(ctx, m, motive_type(N.U1))
                except ElabError:
                    raise err from None
                raise ElabError("level-violation",
                                f"the motive of '{kw}' lands in U1; use the level-1 eliminator", _span(m))
            raise
        if self.audit is not None:
            self.audit(kw, level, _codomain_level(ctx, ctx.eval(core), motive_type(N.U1)))
        return core

    def infer_scrutinee_type(self, ctx: Context, candidates: list[STerm],
                             pick: Callable[[N.Value], Optional[N.Value]]) -> Optional[N.Value]:
        """Find a type from the first inferable candidate, using ``pick`` to extract it."""
        for c in candidates:
            try:
                _, ty = self.infer(ctx, c)
            except ElabError as err:
                if err.code == "cannot-synthesize":
                    continue
                raise
            found = pick(N.force(ty))
            if found is not None:
                return found
        return None

    def infer_j(self, ctx, t, level, m, d, x, y, p):
        def from_motive(ty):
            return ty.dom if isinstance(ty, N.VPi) else None

        def from_path(ty):
            return ty.ty if isinstance(ty, N.VId) else None

        a = self.infer_scrutinee_type(ctx, [x], lambda ty: ty)
        if a is None:
            a = self.infer_scrutinee_type(ctx, [y], lambda ty: ty)
        if a is None:
            a = self.infer_scrutinee_type(ctx, [p], from_path)
        if a is None:
            a = self.infer_scrutinee_type(ctx, [m], from_motive)
        if a is None:
            raise ElabError("cannot-synthesize", "cannot determine the type of the endpoints of J; "
                            "annotate an endpoint", _span(t))
        x_c = self.check(ctx, x, a)
        y_c = self.check(ctx, y, a)
        xv, yv = ctx.eval(x_c), ctx.eval(y_c)
        p_c = self.check(ctx, p, N.VId(a, xv, yv))
        m_c = self.check_motive(ctx, m, lambda u: N.pi("x", a, lambda x0: N.pi(
            "y", a, lambda y0: N.arrow(N.VId(a, x0, y0), u))), level, f"J{level}")
        mv = ctx.eval(m_c)
        d_c = self.check(ctx, d, N.j_base_type(a, mv))
        ty = N.vapp(N.vapp(N.vapp(mv, xv), yv), ctx.eval(p_c))
        return S.J(level, m_c, d_c, x_c, y_c, p_c), ty

    def infer_cind(self, ctx, t, level, m, f, e, x):
        def coeq(ty):
            return ty if isinstance(ty, N.VCoeq) else None

        def from_motive(ty):
            return coeq(N.force(ty.dom)) if isinstance(ty, N.VPi) else None

        c = self.infer_scrutinee_type(ctx, [x], coeq) or self.infer_scrutinee_type(ctx, [m], from_motive)
        if c is None:
            raise ElabError("cannot-synthesize", "cannot determine the coequalizer type of 'cind'; "
                            "annotate the scrutinee", _span(t))
        x_c = self.check(ctx, x, c)
        m_c = self.check_motive(ctx, m, lambda u: N.arrow(c, u), level, f"cind{level}")
        mv = ctx.eval(m_c)
        f_c = self.check(ctx, f, N.cind_point_type(c.carrier, mv))
        fv = ctx.eval(f_c)
        e_c = self.check(ctx, e, N.cind_glue_type(c.carrier, c.rel, mv, fv))
        return S.CInd(level, m_c, f_c, e_c, x_c), N.vapp(mv, ctx.eval(x_c))

    def infer_scase(self, ctx, t, level, m, f, g, x):
        def sum_(ty):
            return ty if isinstance(ty, N.VSum) else None

        def from_motive(ty):
            return sum_(N.force(ty.dom)) if isinstance(ty, N.VPi) else None

        st = self.infer_scrutinee_type(ctx, [x], sum_) or self.infer_scrutinee_type(ctx, [m], from_motive)
        if st is None:
            raise ElabError("cannot-synthesize", "cannot determine the sum type of 'scase'; "
                            "annotate the scrutinee", _span(t))
        x_c = self.check(ctx, x, st)
        m_c = self.check_motive(ctx, m, lambda u: N.arrow(st, u), level, f"scase{level}")
        mv = ctx.eval(m_c)
        lt, rt = N.scase_types(st.left, st.right, mv)
        f_c = self.check(ctx, f, lt)
        g_c = self.check(ctx, g, rt)
        return S.SCase(level, m_c, f_c, g_c, x_c), N.vapp(mv, ctx.eval(x_c))

    # -- checking

    def check(self, ctx: Context, t: STerm, expected: N.Value) -> S.Term:
        ty = N.force(expected)
        match t:
            case SLam(name, body):
                if not isinstance(ty, N.VPi):
                    raise ElabError("type-mismatch",
                                    f"a lambda cannot have type {self.show(ctx, ty)}", _span(t),
                                    self.show(ctx, ty), "a function")
                inner = ctx.bind(name, ty.dom)
                return S.Lam(name, self.check(inner, body, ty.cod(N.vvar(ctx.depth))))
            case SPair(a, b):
                if not isinstance(ty, N.VSigma):
                    raise ElabError("type-mismatch", f"a pair cannot have type {self.show(ctx, ty)}",
                                    _span(t), self.show(ctx, ty), "a pair")
                a_c = self.check(ctx, a, ty.fst)
                return S.Pair(a_c, self.check(ctx, b, ty.snd(ctx.eval(a_c))))
        head, args = _spine(t)
        if isinstance(head, SVar) and head.name in ARITY and len(args) == ARITY[head.name]:
            if head.name in _CHECK_ONLY or head.name == "refl":
                return self.check_constructor(ctx, t, head.name, args, ty)
        core, actual = self.infer(ctx, t)
        if not ctx.conv().subtype(actual, expected):
            raise self.mismatch(ctx, t, expected, actual)
        return core

    def check_constructor(self, ctx: Context, t: STerm, kw: str, args: list[STerm], ty: N.Value) -> S.Term:
        conv = ctx.conv()
        bad = lambda: ElabError("type-mismatch", f"'{kw}' cannot have type {self.show(ctx, ty)}",  # noqa: E731
                                _span(t), self.show(ctx, ty), kw)
        match kw:
            case "inj":
                if not isinstance(ty, N.VCoeq):
                    raise bad()
                return S.Inj(self.check(ctx, args[0], ty.carrier))
            case "inl" | "inr":
                if not isinstance(ty, N.VSum):
                    raise bad()
                side = ty.left if kw == "inl" else ty.right
                inner = self.check(ctx, args[0], side)
                return S.Inl(inner) if kw == "inl" else S.Inr(inner)
            case "refl":
                if not isinstance(ty, N.VId):
                    raise ElabError("expected-identity-type",
                                    f"'refl' cannot have type {self.show(ctx, ty)}", _span(t))
                x = self.check(ctx, args[0], ty.ty)
                xv = ctx.eval(x)
                for side in (ty.lhs, ty.rhs):
                    if not conv.conv(ty.ty, xv, side):
                        raise ElabError("type-mismatch",
                                        f"refl of {self.show(ctx, xv)} does not prove "
                                        f"{self.show(ctx, ty)}", _span(t),
                                        self.show(ctx, ty), self.show(ctx, N.VId(ty.ty, xv, xv)))
                return S.Refl(x)
            case "glue":
                if not isinstance(ty, N.VId):
                    raise ElabError("expected-identity-type",
                                    f"'glue' cannot have type {self.show(ctx, ty)}", _span(t))
                c = N.force(ty.ty)
                if not isinstance(c, N.VCoeq):
                    raise bad()
                a = self.check(ctx, args[0], c.carrier)
                b = self.check(ctx, args[1], c.carrier)
                av, bv = ctx.eval(a), ctx.eval(b)
                s = self.check(ctx, args[2], N.vapp(N.vapp(c.rel, av), bv))
                actual = N.VId(c, N.VInj(av), N.VInj(bv))
                if not conv.conv_type(actual, ty):
                    raise self.mismatch(ctx, t, ty, actual)
                return S.Glue(a, b, s, N.quote(ctx.depth, c.carrier, unfold=False),
                              N.quote(ctx.depth, c.rel, unfold=False))
        raise AssertionError(kw)

    # -- declarations

    def telescope(self, ctx: Context, params) -> tuple[Context, list[tuple[str, S.Term]]]:
        out = []
        for name, ty in params:
            core, _ = self.check_type(ctx, ty)
            out.append((name, core))
            ctx = ctx.bind(name, ctx.eval(core))
        return ctx, out


def _codomain_level(ctx: Context, m: N.Value, ty: N.Value) -> int:
    """Level of the universe that the motive ``m`` (of Pi type ``ty``) lands in."""
    ty = N.force(ty)
    depth = ctx.depth
    types = ctx.types
    while isinstance(ty, N.VPi):
        x = N.vvar(depth)
        m = N.vapp(m, x)
        types = types + (ty.dom,)
        ty = N.force(ty.cod(x))
        depth += 1
    return universe_level(types, m)


def universe_level(types: tuple, t: N.Value) -> int:
    """The least universe containing the type value ``t`` (0 or 1)."""
    t = N.force(t)
    match t:
        case N.VUniv():
            return 1
        case N.VPi(_, a, b) | N.VSigma(_, a, b):
            x = N.vvar(len(types))
            return max(universe_level(types, a), universe_level(types + (a,), b(x)))
        case N.VId(a, _, _):
            return universe_level(types, a)
        case N.VSum(a, b):
            return max(universe_level(types, a), universe_level(types, b))
        case N.VNeutral():
            ty = _neutral_type(types, t)
            ty = N.force(ty) if ty is not None else None
            return ty.level if isinstance(ty, N.VUniv) else 1
    return 0


def _neutral_type(types: tuple, v: N.VNeutral) -> Optional[N.Value]:
    if isinstance(v.head, N.HVar):
        ty = types[v.head.level]
    else:
        return None
    cur: N.Value = N.VNeutral(v.head)
    for e in v.spine:
        ty = N.force(ty)
        match e:
            case N.EApp(a):
                if not isinstance(ty, N.VPi):
                    return None
                ty = ty.cod(a)
            case N.EFst():
                if not isinstance(ty, N.VSigma):
                    return None
                ty = ty.fst
            case N.ESnd():
                if not isinstance(ty, N.VSigma):
                    return None
                ty = ty.snd(N.vfst(cur))
            case _:
                ty = N.vapp(e.motive, cur)
        cur = N.apply_elim(cur, e)
    return ty


# --------------------------------------------------------------------------
# declarations


class Checker:
    """Checks declarations one at a time, collecting diagnostics.

    A declaration that fails is skipped and its name poisoned; checking
    continues with the next declaration.
    """

    def __init__(self, sig: Optional[S.Signature] = None, audit: Optional[AuditHook] = None):
        self.sig = sig if sig is not None else S.Signature()
        self.poisoned: set[str] = set()
        self.elab = Elaborator(self.sig, self.poisoned, audit)
        self.assertions: list[str] = []

    def check_declaration(self, d: SurfaceDecl, file: str = "<input>") -> Optional[Diagnostic]:
        try:
            self._check(d)
        except ElabError as err:
            if d.kind == "def":
                self.poisoned.add(d.name)
            diag = err.diagnostic(file)
            if diag.span == NO_SPAN:
                diag.span = d.span
            return diag
        return None

    def _check(self, d: SurfaceDecl) -> None:
        elab = self.elab
        if d.kind == "axiom-assert":
            from .axioms import axiom_type_value

            if d.name not in S.AXIOM_NAMES:
                raise ElabError("unbound-name", f"'{d.name}' is not an axiom", d.span)
            ty, _ = elab.check_type(Context(), d.type)
            expected = axiom_type_value(d.name)
            if not N.Conversion().conv_type(N.evaluate((), ty), expected):
                raise ElabError("axiom-type-mismatch", f"stated type of '{d.name}' differs from its fixed type",
                                _span(d.type), elab.show(Context(), expected),
                                elab.show(Context(), N.evaluate((), ty)))
            self.assertions.append(d.name)
            return
        if d.name in S.RESERVED:
            raise ElabError("duplicate-name", f"'{d.name}' is a reserved keyword", d.span)
        if d.kind == "def" and (d.name in self.sig or d.name in self.poisoned):
            raise ElabError("duplicate-name", f"name already defined: {d.name}", d.span)
        ctx, params = elab.telescope(Context(), d.params)
        ty, _ = elab.check_type(ctx, d.type)
        ty_val = ctx.eval(ty)
        body = elab.check(ctx, d.body, ty_val)
        if d.kind == "conv-assert":
            rhs = elab.check(ctx, d.rhs, ty_val)
            lv, rv = ctx.eval(body), ctx.eval(rhs)
            if not ctx.conv().conv(ty_val, lv, rv):
                left = S.print_core(N.quote(ctx.depth, lv), ctx.names)
                right = S.print_core(N.quote(ctx.depth, rv), ctx.names)
                raise ElabError("not-convertible", f"sides of '{d.name}' are not definitionally equal",
                                d.span, left, right)
            self.assertions.append(d.name)
            return
        for name, p_ty in reversed(params):
            ty = S.Pi(name, p_ty, ty)
            body = S.Lam(name, body)
        self.sig.add(d.name, ty, body)


def check_declaration(sig: S.Signature, d: SurfaceDecl, file: str = "<input>") -> S.Signature:
    """Check one declaration, raising ``ElabError`` on failure."""
    checker = Checker(sig)
    diag = checker.check_declaration(d, file)
    if diag is not None:
        raise ElabError(diag.code, diag.message, diag.span, diag.expected, diag.actual)
    return sig


def infer(sig: S.Signature, ctx: Context, t: STerm) -> ElabResult:
    core, ty = Elaborator(sig).infer(ctx, t)
    return ElabResult(core, ty, frozenset(S.axioms_in(core)))


def check(sig: S.Signature, ctx: Context, t: STerm, expected: N.Value) -> S.Term:
    return Elaborator(sig).check(ctx, t, expected)


def axiom_usage(sig: S.Signature, name: str) -> frozenset:
    entry = sig.get(name)
    if entry is None:
        raise KeyError(f"unknown name: {name}")
    return entry.axioms
