"""Normalization by evaluation and the definitional-equality check.

Values use de Bruijn levels.  Defined constants evaluate to *glued* values
(``VTop``): the constant applied to its spine, together with a lazily
computed unfolding.  Conversion compares glued values by name first and
unfolds only when that fails, and quotation can produce either form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from . import syntax as S


class Value:
    __slots__ = ()


class Lazy:
    __slots__ = ("_thunk", "_value")

    def __init__(self, thunk: Callable[[], Value]):
        self._thunk = thunk
        self._value = None

    def get(self) -> Value:
        if self._value is None:
            self._value = self._thunk()
            self._thunk = None
        return self._value


# closures ------------------------------------------------------------------


class Closure:
    __slots__ = ()

    def __call__(self, v: Value) -> Value:  # pragma: no cover - abstract
        raise NotImplementedError


class TermClosure(Closure):
    __slots__ = ("env", "body")

    def __init__(self, env: tuple, body: S.Term):
        self.env = env
        self.body = body

    def __call__(self, v: Value) -> Value:
        return evaluate(self.env + (v,), self.body)


class FnClosure(Closure):
    __slots__ = ("fn",)

    def __init__(self, fn: Callable[[Value], Value]):
        self.fn = fn

    def __call__(self, v: Value) -> Value:
        return self.fn(v)


# values ----------------------------------------------------------------------


@dataclass(frozen=True, slots=True, eq=False)
class VUniv(Value):
    level: int


@dataclass(frozen=True, slots=True, eq=False)
class VPi(Value):
    name: str
    dom: Value
    cod: Closure


@dataclass(frozen=True, slots=True, eq=False)
class VLam(Value):
    name: str
    body: Closure


@dataclass(frozen=True, slots=True, eq=False)
class VSigma(Value):
    name: str
    fst: Value
    snd: Closure


@dataclass(frozen=True, slots=True, eq=False)
class VPair(Value):
    fst: Value
    snd: Value


@dataclass(frozen=True, slots=True, eq=False)
class VId(Value):
    ty: Value
    lhs: Value
    rhs: Value


@dataclass(frozen=True, slots=True, eq=False)
class VRefl(Value):
    point: Value


@dataclass(frozen=True, slots=True, eq=False)
class VCoeq(Value):
    carrier: Value
    rel: Value


@dataclass(frozen=True, slots=True, eq=False)
class VInj(Value):
    elem: Value


@dataclass(frozen=True, slots=True, eq=False)
class VEmpty(Value):
    pass


@dataclass(frozen=True, slots=True, eq=False)
class VUnit(Value):
    pass


@dataclass(frozen=True, slots=True, eq=False)
class VTT(Value):
    pass


@dataclass(frozen=True, slots=True, eq=False)
class VSum(Value):
    left: Value
    right: Value


@dataclass(frozen=True, slots=True, eq=False)
class VInl(Value):
    value: Value


@dataclass(frozen=True, slots=True, eq=False)
class VInr(Value):
    value: Value


@dataclass(frozen=True, slots=True, eq=False)
class VNat(Value):
    pass


@dataclass(frozen=True, slots=True, eq=False)
class VZero(Value):
    pass


@dataclass(frozen=True, slots=True, eq=False)
class VSuc(Value):
    pred: Value


# neutral heads and eliminations


@dataclass(frozen=True, slots=True)
class HVar:
    level: int


@dataclass(frozen=True, slots=True)
class HAxiom:
    name: str


@dataclass(frozen=True, slots=True, eq=False)
class HGlue:
    """The path constructor: canonical, but J on it is stuck, so it heads neutrals."""

    a: Value
    b: Value
    witness: Value
    carrier: Optional[Value] = None
    rel: Optional[Value] = None


def vglue(a: Value, b: Value, s: Value, carrier: Optional[Value] = None,
          rel: Optional[Value] = None) -> Value:
    return VNeutral(HGlue(a, b, s, carrier, rel))


@dataclass(frozen=True, slots=True, eq=False)
class EApp:
    arg: Value


@dataclass(frozen=True, slots=True, eq=False)
class EFst:
    pass


@dataclass(frozen=True, slots=True, eq=False)
class ESnd:
    pass


@dataclass(frozen=True, slots=True, eq=False)
class EJ:
    level: int
    motive: Value
    base: Value
    lhs: Value
    rhs: Value


@dataclass(frozen=True, slots=True, eq=False)
class ECInd:
    level: int
    motive: Value
    point_case: Value
    glue_case: Value


@dataclass(frozen=True, slots=True, eq=False)
class EEAbsurd:
    level: int
    motive: Value


@dataclass(frozen=True, slots=True, eq=False)
class ESCase:
    level: int
    motive: Value
    left_case: Value
    right_case: Value


@dataclass(frozen=True, slots=True, eq=False)
class ENInd:
    level: int
    motive: Value
    zero_case: Value
    suc_case: Value


@dataclass(frozen=True, slots=True, eq=False)
class VNeutral(Value):
    head: object
    spine: tuple = ()


@dataclass(frozen=True, slots=True, eq=False)
class VTop(Value):
    """A defined constant applied to a spine, glued to its unfolding."""

    entry: S.Entry
    spine: tuple
    unfolded: Lazy


_EMPTY, _UNIT, _TT, _NAT, _ZERO = VEmpty(), VUnit(), VTT(), VNat(), VZero()
U0, U1 = VUniv(0), VUniv(1)


def vvar(level: int) -> Value:
    return VNeutral(HVar(level))


def force(v: Value) -> Value:
    """Unfold glued constants until the head is not a definition."""
    while isinstance(v, VTop):
        v = v.unfolded.get()
    return v


# eliminators -------------------------------------------------------------------


def apply_elim(v: Value, e) -> Value:
    match e:
        case EApp(a):
            return vapp(v, a)
        case EFst():
            return vfst(v)
        case ESnd():
            return vsnd(v)
        case EJ(lv, m, d, x, y):
            return vJ(lv, m, d, x, y, v)
        case ECInd(lv, m, f, g):
            return vcind(lv, m, f, g, v)
        case EEAbsurd(lv, m):
            return veabsurd(lv, m, v)
        case ESCase(lv, m, f, g):
            return vscase(lv, m, f, g, v)
        case ENInd(lv, m, z, s):
            return vnind(lv, m, z, s, v)
    raise TypeError(e)


def _glue_elim(v: VTop, e) -> Value:
    return VTop(v.entry, v.spine + (e,), Lazy(lambda: apply_elim(v.unfolded.get(), e)))


def _stuck(v: Value, e) -> Value:
    if isinstance(v, VNeutral):
        return VNeutral(v.head, v.spine + (e,))
    if isinstance(v, VTop):
        return _glue_elim(v, e)
    raise TypeError(f"cannot eliminate {type(v).__name__} with {type(e).__name__}")


def vapp(f: Value, a: Value) -> Value:
    if isinstance(f, VLam):
        return f.body(a)
    return _stuck(f, EApp(a))


def vfst(p: Value) -> Value:
    if isinstance(p, VPair):
        return p.fst
    return _stuck(p, EFst())


def vsnd(p: Value) -> Value:
    if isinstance(p, VPair):
        return p.snd
    return _stuck(p, ESnd())


def vJ(lv: int, m: Value, d: Value, x: Value, y: Value, p: Value) -> Value:
    if isinstance(p, VRefl):
        return vapp(d, p.point)
    return _stuck(p, EJ(lv, m, d, x, y))


def vcind(lv: int, m: Value, f: Value, g: Value, x: Value) -> Value:
    if isinstance(x, VInj):
        return vapp(f, x.elem)
    return _stuck(x, ECInd(lv, m, f, g))


def vscase(lv: int, m: Value, f: Value, g: Value, x: Value) -> Value:
    if isinstance(x, VInl):
        return vapp(f, x.value)
    if isinstance(x, VInr):
        return vapp(g, x.value)
    return _stuck(x, ESCase(lv, m, f, g))


def vnind(lv: int, m: Value, z: Value, s: Value, n: Value) -> Value:
    if isinstance(n, VZero):
        return z
    if isinstance(n, VSuc):
        return vapp(vapp(s, n.pred), vnind(lv, m, z, s, n.pred))
    return _stuck(n, ENInd(lv, m, z, s))


def veabsurd(lv: int, m: Value, x: Value) -> Value:
    return _stuck(x, EEAbsurd(lv, m))


# evaluation ----------------------------------------------------------------------


def evaluate(env: tuple, t: S.Term) -> Value:
    match t:
        case S.Var(i):
            return env[-1 - i]
        case S.Const(_, entry):
            return VTop(entry, (), Lazy(lambda: entry.value))
        case S.App(f, a):
            return vapp(evaluate(env, f), evaluate(env, a))
        case S.Lam(name, body):
            return VLam(name, TermClosure(env, body))
        case S.Pi(name, a, b):
            return VPi(name, evaluate(env, a), TermClosure(env, b))
        case S.Sigma(name, a, b):
            return VSigma(name, evaluate(env, a), TermClosure(env, b))
        case S.Pair(a, b):
            return VPair(evaluate(env, a), evaluate(env, b))
        case S.Fst(p):
            return vfst(evaluate(env, p))
        case S.Snd(p):
            return vsnd(evaluate(env, p))
        case S.Univ(lv):
            return U0 if lv == 0 else U1
        case S.Id(a, x, y):
            return VId(evaluate(env, a), evaluate(env, x), evaluate(env, y))
        case S.Refl(x):
            return VRefl(evaluate(env, x))
        case S.J(lv, m, d, x, y, p):
            return vJ(lv, evaluate(env, m), evaluate(env, d), evaluate(env, x),
                      evaluate(env, y), evaluate(env, p))
        case S.Coeq(a, r):
            return VCoeq(evaluate(env, a), evaluate(env, r))
        case S.Inj(a):
            return VInj(evaluate(env, a))
        case S.Glue(a, b, s, c, r):
            return vglue(evaluate(env, a), evaluate(env, b), evaluate(env, s),
                         None if c is None else evaluate(env, c), None if r is None else evaluate(env, r))
        case S.CInd(lv, m, f, g, x):
            return vcind(lv, evaluate(env, m), evaluate(env, f), evaluate(env, g), evaluate(env, x))
        case S.Ann(x, _):
            return evaluate(env, x)
        case S.Axiom(name):
            return VNeutral(HAxiom(name))
        case S.Empty():
            return _EMPTY
        case S.EAbsurd(lv, m, x):
            return veabsurd(lv, evaluate(env, m), evaluate(env, x))
        case S.Unit():
            return _UNIT
        case S.TT():
            return _TT
        case S.UInd(_, _, u, _):
            # Unit has eta, so the eliminator is the constant map.
            return evaluate(env, u)
        case S.Sum(a, b):
            return VSum(evaluate(env, a), evaluate(env, b))
        case S.Inl(a):
            return VInl(evaluate(env, a))
        case S.Inr(a):
            return VInr(evaluate(env, a))
        case S.SCase(lv, m, f, g, x):
            return vscase(lv, evaluate(env, m), evaluate(env, f), evaluate(env, g), evaluate(env, x))
        case S.Nat():
            return _NAT
        case S.Zero():
            return _ZERO
        case S.Suc(n):
            return VSuc(evaluate(env, n))
        case S.NInd(lv, m, z, s, n):
            return vnind(lv, evaluate(env, m), evaluate(env, z), evaluate(env, s), evaluate(env, n))
    raise TypeError(f"not a core term: {t!r}")


# quotation ------------------------------------------------------------------------


def quote(depth: int, v: Value, unfold: bool = True) -> S.Term:
    """Read a value back as a beta-normal term.

    With ``unfold=False`` glued constants stay folded, which keeps printed
    types readable; the result is normal up to unfolding of definitions.
    """
    q = lambda w: quote(depth, w, unfold)  # noqa: E731
    if isinstance(v, VTop):
        if unfold:
            return quote(depth, force(v), True)
        return _quote_spine(depth, S.Const(v.entry.name, v.entry), v.spine, unfold)
    match v:
        case VNeutral(head, spine):
            if isinstance(head, HVar):
                h = S.Var(depth - 1 - head.level)
            elif isinstance(head, HGlue):
                h = S.Glue(q(head.a), q(head.b), q(head.witness),
                           None if head.carrier is None else q(head.carrier),
                           None if head.rel is None else q(head.rel))
            else:
                h = S.Axiom(head.name)
            return _quote_spine(depth, h, spine, unfold)
        case VUniv(lv):
            return S.Univ(lv)
        case VPi(name, a, b):
            return S.Pi(name, q(a), quote(depth + 1, b(vvar(depth)), unfold))
        case VLam(name, b):
            return S.Lam(name, quote(depth + 1, b(vvar(depth)), unfold))
        case VSigma(name, a, b):
            return S.Sigma(name, q(a), quote(depth + 1, b(vvar(depth)), unfold))
        case VPair(a, b):
            return S.Pair(q(a), q(b))
        case VId(a, x, y):
            return S.Id(q(a), q(x), q(y))
        case VRefl(x):
            return S.Refl(q(x))
        case VCoeq(a, r):
            return S.Coeq(q(a), q(r))
        case VInj(a):
            return S.Inj(q(a))
        case VEmpty():
            return S.Empty()
        case VUnit():
            return S.Unit()
        case VTT():
            return S.TT()
        case VSum(a, b):
            return S.Sum(q(a), q(b))
        case VInl(a):
            return S.Inl(q(a))
        case VInr(a):
            return S.Inr(q(a))
        case VNat():
            return S.Nat()
        case VZero():
            return S.Zero()
        case VSuc(n):
            return S.Suc(q(n))
    raise TypeError(f"not a value: {v!r}")


def _quote_spine(depth: int, head: S.Term, spine: tuple, unfold: bool) -> S.Term:
    q = lambda w: quote(depth, w, unfold)  # noqa: E731
    t = head
    for e in spine:
        match e:
            case EApp(a):
                t = S.App(t, q(a))
            case EFst():
                t = S.Fst(t)
            case ESnd():
                t = S.Snd(t)
            case EJ(lv, m, d, x, y):
                t = S.J(lv, q(m), q(d), q(x), q(y), t)
            case ECInd(lv, m, f, g):
                t = S.CInd(lv, q(m), q(f), q(g), t)
            case EEAbsurd(lv, m):
                t = S.EAbsurd(lv, q(m), t)
            case ESCase(lv, m, f, g):
                t = S.SCase(lv, q(m), q(f), q(g), t)
            case ENInd(lv, m, z, s):
                t = S.NInd(lv, q(m), q(z), q(s), t)
    return t


# types of eliminator arguments --------------------------------------------------


def arrow(a: Value, b: Value) -> Value:
    return VPi("_", a, FnClosure(lambda _: b))


def pi(name: str, a: Value, fn: Callable[[Value], Value]) -> Value:
    return VPi(name, a, FnClosure(fn))


def lam(name: str, fn: Callable[[Value], Value]) -> Value:
    return VLam(name, FnClosure(fn))


def j_motive_type(a: Value, level: int) -> Value:
    """(x y : A) -> Id A x y -> U(level)"""
    u = VUniv(level)
    return pi("x", a, lambda x: pi("y", a, lambda y: arrow(VId(a, x, y), u)))


def j_base_type(a: Value, m: Value) -> Value:
    """(z : A) -> M z z (refl z)"""
    return pi("z", a, lambda z: vapp(vapp(vapp(m, z), z), VRefl(z)))


def transport(a: Value, p_fam: Value, x: Value, y: Value, path: Value, u: Value) -> Value:
    """transport along ``path : Id A x y`` in the family ``p_fam : A -> U1``."""
    motive = lam("x", lambda x0: lam("y", lambda y0: lam("p", lambda _: arrow(vapp(p_fam, x0), vapp(p_fam, y0)))))
    base = lam("x", lambda _: lam("u", lambda w: w))
    return vapp(vJ(1, motive, base, x, y, path), u)


def cind_point_type(a: Value, m: Value) -> Value:
    """(a : A) -> P (inj a)"""
    return pi("a", a, lambda x: vapp(m, VInj(x)))


def cind_glue_type(a: Value, r: Value, m: Value, f: Value) -> Value:
    """(a b : A) (s : R a b) -> pathover P (glue a b s) (f a) (f b)"""
    coeq = VCoeq(a, r)

    def body(x: Value, y: Value, s: Value) -> Value:
        moved = transport(coeq, m, VInj(x), VInj(y), vglue(x, y, s), vapp(f, x))
        return VId(vapp(m, VInj(y)), moved, vapp(f, y))

    return pi("a", a, lambda x: pi("b", a, lambda y: pi("s", vapp(vapp(r, x), y), lambda s: body(x, y, s))))


def rel_type(a: Value) -> Value:
    return arrow(a, arrow(a, U0))


def scase_types(a: Value, b: Value, m: Value) -> tuple[Value, Value]:
    return (pi("a", a, lambda x: vapp(m, VInl(x))), pi("b", b, lambda y: vapp(m, VInr(y))))


def nind_suc_type(m: Value) -> Value:
    return pi("n", _NAT, lambda n: arrow(vapp(m, n), vapp(m, VSuc(n))))


# conversion ----------------------------------------------------------------------


_UNKNOWN = VNeutral(HAxiom("?"))


def axiom_type(name: str) -> Value:
    from .axioms import axiom_type_value

    return axiom_type_value(name)


class Conversion:
    """Type-directed definitional equality in a typing context.

    ``types`` holds the type of each bound variable, indexed by level.
    """

    def __init__(self, types: tuple = ()):
        self.types = types

    @property
    def depth(self) -> int:
        return len(self.types)

    def bind(self, ty: Value) -> tuple["Conversion", Value]:
        return Conversion(self.types + (ty,)), vvar(len(self.types))

    # -- terms at a type

    def conv(self, ty: Value, v: Value, w: Value) -> bool:
        if v is w:
            return True
        # the same constant or neutral on both sides: compare spines before
        # eta-expanding, which would otherwise take them apart component-wise
        if isinstance(v, VTop) and isinstance(w, VTop) and self._same_top(v, w):
            return True
        if isinstance(v, VNeutral) and isinstance(w, VNeutral) and self.neutral(v, w) is not None:
            return True
        ty = force(ty)
        if isinstance(ty, VPi):
            inner, x = self.bind(ty.dom)
            return inner.conv(ty.cod(x), vapp(v, x), vapp(w, x))
        if isinstance(ty, VSigma):
            a = vfst(v)
            return self.conv(ty.fst, a, vfst(w)) and self.conv(ty.snd(a), vsnd(v), vsnd(w))
        if isinstance(ty, VUnit):
            return True
        if isinstance(ty, VUniv):
            return self.conv_type(v, w)
        if self._same_top(v, w):
            return True
        v, w = force(v), force(w)
        if isinstance(v, VNeutral) and isinstance(w, VNeutral):
            return self.neutral(v, w) is not None
        match ty, v, w:
            case VId(a, _, _), VRefl(x), VRefl(y):
                return self.conv(a, x, y)
            case VCoeq(a, _), VInj(x), VInj(y):
                return self.conv(a, x, y)
            case VNat(), VZero(), VZero():
                return True
            case VNat(), VSuc(x), VSuc(y):
                return self.conv(ty, x, y)
            case VSum(a, _), VInl(x), VInl(y):
                return self.conv(a, x, y)
            case VSum(_, b), VInr(x), VInr(y):
                return self.conv(b, x, y)
            case (VId() | VCoeq() | VNat() | VSum() | VEmpty()), _, _:
                return False
        # canonical values at a stuck type: compare normal forms
        return quote(self.depth, v) == quote(self.depth, w)

    def _same_top(self, v: Value, w: Value) -> bool:
        if (isinstance(v, VTop) and isinstance(w, VTop) and v.entry is w.entry
                and len(v.spine) == len(w.spine)):
            return self.spine(v.entry.type_value, VTop(v.entry, (), Lazy(lambda: v.entry.value)),
                              v.spine, w.spine) is not None
        return False

    # -- types

    def conv_type(self, a: Value, b: Value) -> bool:
        if a is b:
            return True
        if self._same_top(a, b):
            return True
        a, b = force(a), force(b)
        match a, b:
            case VUniv(i), VUniv(j):
                return i == j
            case (VPi(_, a1, b1), VPi(_, a2, b2)) | (VSigma(_, a1, b1), VSigma(_, a2, b2)):
                if not self.conv_type(a1, a2):
                    return False
                inner, x = self.bind(a1)
                return inner.conv_type(b1(x), b2(x))
            case VId(t1, x1, y1), VId(t2, x2, y2):
                return self.conv_type(t1, t2) and self.conv(t1, x1, x2) and self.conv(t1, y1, y2)
            case VCoeq(c1, r1), VCoeq(c2, r2):
                return self.conv_type(c1, c2) and self.conv(rel_type(c1), r1, r2)
            case VSum(l1, r1), VSum(l2, r2):
                return self.conv_type(l1, l2) and self.conv_type(r1, r2)
            case (VEmpty(), VEmpty()) | (VUnit(), VUnit()) | (VNat(), VNat()):
                return True
            case VNeutral(), VNeutral():
                return self.neutral(a, b) is not None
        return False

    def subtype(self, a: Value, b: Value) -> bool:
        """Cumulative subtyping: U0 <= U1, covariant in codomains and pairs."""
        if self._same_top(a, b):
            return True
        a, b = force(a), force(b)
        match a, b:
            case VUniv(i), VUniv(j):
                return i <= j
            case VPi(_, a1, b1), VPi(_, a2, b2):
                if not self.conv_type(a1, a2):
                    return False
                inner, x = self.bind(a1)
                return inner.subtype(b1(x), b2(x))
            case VSigma(_, a1, b1), VSigma(_, a2, b2):
                if not self.subtype(a1, a2):
                    return False
                inner, x = self.bind(a1)
                return inner.subtype(b1(x), b2(x))
        return self.conv_type(a, b)

    # -- neutrals

    def neutral(self, v: VNeutral, w: VNeutral) -> Optional[Value]:
        """Compare two neutrals; return the type of the common term, or None."""
        if len(v.spine) != len(w.spine):
            return None
        head = v.head
        if isinstance(head, HGlue):
            if not isinstance(w.head, HGlue):
                return None
            other = w.head
            if head.carrier is None or other.carrier is None:
                # the coequalizer is unknown; compare normal forms
                return _UNKNOWN if quote(self.depth, v) == quote(self.depth, w) else None
            c = head.carrier
            if not (self.conv_type(c, other.carrier) and self.conv(rel_type(c), head.rel, other.rel)
                    and self.conv(c, head.a, other.a) and self.conv(c, head.b, other.b)
                    and self.conv(vapp(vapp(head.rel, head.a), head.b), head.witness, other.witness)):
                return None
            ty = VId(VCoeq(c, head.rel), VInj(head.a), VInj(head.b))
            return self.spine(ty, VNeutral(head), v.spine, w.spine)
        if head != w.head:
            return None
        if isinstance(head, HVar):
            ty = self.types[head.level]
        else:
            ty = axiom_type(head.name)
        return self.spine(ty, VNeutral(head), v.spine, w.spine)

    def spine(self, ty: Value, cur: Value, sp1: tuple, sp2: tuple) -> Optional[Value]:
        for e1, e2 in zip(sp1, sp2):
            if type(e1) is not type(e2):
                return None
            ty = force(ty)
            match e1:
                case EApp(a1):
                    if not isinstance(ty, VPi) or not self.conv(ty.dom, a1, e2.arg):
                        return None
                    ty = ty.cod(a1)
                case EFst():
                    if not isinstance(ty, VSigma):
                        return None
                    ty = ty.fst
                case ESnd():
                    if not isinstance(ty, VSigma):
                        return None
                    ty = ty.snd(vfst(cur))
                case EJ(_, m1, d1, x1, y1):
                    if not isinstance(ty, VId):
                        return None
                    a = ty.ty
                    if not (self.conv(a, x1, e2.lhs) and self.conv(a, y1, e2.rhs)
                            and self.conv(j_motive_type(a, 1), m1, e2.motive)
                            and self.conv(j_base_type(a, m1), d1, e2.base)):
                        return None
                    ty = vapp(vapp(vapp(m1, x1), y1), cur)
                case ECInd(_, m1, f1, g1):
                    c = ty
                    if not isinstance(c, VCoeq):
                        return None
                    if not (self.conv(arrow(c, U1), m1, e2.motive)
                            and self.conv(cind_point_type(c.carrier, m1), f1, e2.point_case)
                            and self.conv(cind_glue_type(c.carrier, c.rel, m1, f1), g1, e2.glue_case)):
                        return None
                    ty = vapp(m1, cur)
                case EEAbsurd(_, m1):
                    if not self.conv(arrow(_EMPTY, U1), m1, e2.motive):
                        return None
                    ty = vapp(m1, cur)
                case ESCase(_, m1, f1, g1):
                    if not isinstance(ty, VSum):
                        return None
                    lt, rt = scase_types(ty.left, ty.right, m1)
                    if not (self.conv(arrow(ty, U1), m1, e2.motive) and self.conv(lt, f1, e2.left_case)
                            and self.conv(rt, g1, e2.right_case)):
                        return None
                    ty = vapp(m1, cur)
                case ENInd(_, m1, z1, s1):
                    if not (self.conv(arrow(_NAT, U1), m1, e2.motive)
                            and self.conv(vapp(m1, _ZERO), z1, e2.zero_case)
                            and self.conv(nind_suc_type(m1), s1, e2.suc_case)):
                        return None
                    ty = vapp(m1, cur)
            cur = apply_elim(cur, e1)
        return ty


def convertible(types: tuple, ty: Value, v: Value, w: Value) -> bool:
    """Definitional equality of ``v`` and ``w`` at ``ty`` in a context of variable types."""
    return Conversion(tuple(types)).conv(ty, v, w)


def normalize(env: tuple, t: S.Term, unfold: bool = True) -> S.Term:
    """``quote(depth, evaluate(env, t))`` where ``env`` holds the context's values."""
    return quote(len(env), evaluate(env, t), unfold)
