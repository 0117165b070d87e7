"""Symbolic space expressions built from spheres and Moore spaces.

``Moore(q, n)`` is P^n(q): cells in degrees n-1 and n with reduced homology
Z/q in degree n-1. ``LoopSphereFactor(m)`` stands for the James splitting of
the loops on S^m and may only appear as a smash factor.

Text grammar (lowest precedence first)::

    expr   := hsmash ('v' hsmash)*
    hsmash := smash ('⋊' smash)*          left associative
    smash  := prefix ('^' prefix)*         left associative
    prefix := 'Σ' prefix | atom
    atom   := '*' | 'S^n' | 'P^n(q)' | 'ΩS^n' | '(' expr ')'

The unicode forms ∨, ∧, superscript digits and ``><`` are accepted on input.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .algebra import FieldSpec, GradedGroup, TorsionSummand, prime_power
from .errors import InputError, NotCoHError
from .series import DEFAULT_CAP, IntPoly, RationalFn, TruncatedSeries, series_expand


class SpaceExpr:
    """Base class of expression nodes."""

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class Point(SpaceExpr):
    pass


@dataclass(frozen=True)
class Sphere(SpaceExpr):
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InputError(f"sphere dimension must be >= 1, got {self.n!r}")


@dataclass(frozen=True)
class Moore(SpaceExpr):
    q: int
    n: int

    def __post_init__(self):
        prime_power(self.q)
        if not isinstance(self.n, int) or self.n < 2:
            raise InputError(f"Moore space dimension must be >= 2, got {self.n!r}")


@dataclass(frozen=True)
class Wedge(SpaceExpr):
    parts: tuple[SpaceExpr, ...]

    def __post_init__(self):
        if len(self.parts) < 2:
            raise InputError("a Wedge node needs at least two parts; use wedge()")


@dataclass(frozen=True)
class Smash(SpaceExpr):
    left: SpaceExpr
    right: SpaceExpr


@dataclass(frozen=True)
class Suspension(SpaceExpr):
    inner: SpaceExpr


@dataclass(frozen=True)
class HalfSmash(SpaceExpr):
    left: SpaceExpr
    right: SpaceExpr


@dataclass(frozen=True)
class LoopSphereFactor(SpaceExpr):
    m: int

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 2:
            raise InputError(f"loop sphere factor needs m >= 2, got {self.m!r}")


def wedge(*parts: SpaceExpr) -> SpaceExpr:
    """Wedge with the unit laws applied: no parts is a Point, one part is itself."""
    ps = tuple(p for p in parts if not isinstance(p, Point))
    if not ps:
        return Point()
    if len(ps) == 1:
        return ps[0]
    return Wedge(ps)


def is_co_h(x: SpaceExpr) -> bool:
    """Syntactic co-H recognition; never guesses."""
    if isinstance(x, (Point, Sphere, Moore, Suspension)):
        return True
    if isinstance(x, Wedge):
        return all(is_co_h(p) for p in x.parts)
    if isinstance(x, Smash):
        return is_co_h(x.left) or is_co_h(x.right)
    if isinstance(x, HalfSmash):
        return is_co_h(x.left)
    return False


# normal form

@dataclass(frozen=True, order=True)
class _Term:
    """S^s smashed with P^2(q) for each q and the James factor of each loop.

    A Moore space P^n(q) is stored as q with n-2 added to ``s``.
    """

    s: int
    qs: tuple[int, ...] = ()
    loops: tuple[int, ...] = ()

    def smash(self, other: "_Term") -> "_Term":
        return _Term(self.s + other.s, tuple(sorted(self.qs + other.qs)),
                     tuple(sorted(self.loops + other.loops)))

    def key(self):
        return (bool(self.loops), len(self.qs), self.s, self.qs, self.loops)

    def to_expr(self) -> SpaceExpr:
        if self.qs:
            acc: SpaceExpr = Moore(self.qs[0], 2 + self.s)
            for q in self.qs[1:]:
                acc = Smash(acc, Moore(q, 2))
        elif self.s >= 1:
            acc = Sphere(self.s)
        else:
            raise InputError("a loop sphere factor must be smashed with a sphere or Moore space")
        for m in self.loops:
            acc = Smash(acc, LoopSphereFactor(m))
        return acc


def _terms(x: SpaceExpr) -> list[_Term]:
    if isinstance(x, Point):
        return []
    if isinstance(x, Sphere):
        return [_Term(x.n)]
    if isinstance(x, Moore):
        return [_Term(x.n - 2, (x.q,))]
    if isinstance(x, LoopSphereFactor):
        return [_Term(0, (), (x.m,))]
    if isinstance(x, Wedge):
        return [t for p in x.parts for t in _terms(p)]
    if isinstance(x, Suspension):
        return [_Term(t.s + 1, t.qs, t.loops) for t in _terms(x.inner)]
    if isinstance(x, Smash):
        ls, rs = _terms(x.left), _terms(x.right)
        return [a.smash(b) for a in ls for b in rs]
    if isinstance(x, HalfSmash):
        if not is_co_h(x.left):
            raise NotCoHError(
                f"not provably co-H: {render(x.left)}",
                hypothesis="first argument of a half-smash is a co-H-space",
            )
        return _terms(x.left) + _terms(Smash(x.left, x.right))
    raise InputError(f"unknown expression node {x!r}")


def normalize(x: SpaceExpr) -> SpaceExpr:
    """Flat, sorted wedge of Sphere, Moore and James-term summands."""
    terms = sorted(_terms(x), key=_Term.key)
    return wedge(*(t.to_expr() for t in terms))


def summands(x: SpaceExpr) -> list[SpaceExpr]:
    """Wedge summands of the normal form."""
    y = normalize(x)
    if isinstance(y, Point):
        return []
    return list(y.parts) if isinstance(y, Wedge) else [y]


def wedge_from_homology(g: GradedGroup) -> SpaceExpr:
    """Normalized wedge of spheres and Moore spaces realizing ``g``."""
    parts: list[SpaceExpr] = []
    for d, r, tors in g.entries:
        if r and d < 1:
            raise InputError("free summand in degree 0 has no sphere model")
        parts += [Sphere(d)] * r
        for s in tors:
            if d < 1:
                raise InputError("torsion in degree 0 has no Moore space model")
            parts += [Moore(s.order, d + 1)] * s.multiplicity
    return normalize(wedge(*parts))


# homology and series

def homology(x: SpaceExpr) -> GradedGroup:
    """Reduced integral homology of a wedge of spheres and Moore spaces."""
    acc: dict[int, tuple[int, list]] = {}
    for t in _terms(x):
        if t.loops or len(t.qs) > 1:
            raise InputError(
                f"unresolved smash term {render(t.to_expr())}; use the series path instead"
            )
        if t.qs:
            p, r = prime_power(t.qs[0])
            deg = t.s + 1
            r0, tors = acc.get(deg, (0, []))
            acc[deg] = (r0, tors + [TorsionSummand(p, r, 1)])
        else:
            r0, tors = acc.get(t.s, (0, []))
            acc[t.s] = (r0 + 1, tors)
    return GradedGroup._from_acc(acc)


def _moore_factor(q: int, field: FieldSpec) -> IntPoly:
    p, _ = prime_power(q)
    if field.char and field.char == p:
        return IntPoly((0, 1, 1))
    return IntPoly()


def reduced_series(x: SpaceExpr, field: FieldSpec) -> RationalFn:
    """Generating function of reduced homology dimensions over ``field``."""
    by_loops: dict[tuple[int, ...], IntPoly] = {}
    for t in _terms(x):
        num = IntPoly.monomial(t.s)
        for q in t.qs:
            num = num * _moore_factor(q, field)
        for m in t.loops:
            num = num.shift(m - 1)
        by_loops[t.loops] = by_loops.get(t.loops, IntPoly()) + num
    total = RationalFn(IntPoly())
    for loops in sorted(by_loops):
        den = IntPoly.const(1)
        for m in loops:
            den = den * (IntPoly.const(1) - IntPoly.monomial(m - 1))
        total = total + RationalFn(by_loops[loops], den)
    return total


def loop_series_from_reduced(h: RationalFn, cap: int) -> TruncatedSeries:
    """Series of the tensor algebra on the desuspension of ``h``."""
    low = series_expand(h, 1)
    if low[0] or low[1]:
        raise InputError("not simply-connected input: generator in degree <= 0 after shift")
    w = h.shift(-1)
    return series_expand(RationalFn(w.den, w.den - w.num), cap)


def loop_series(x: SpaceExpr, field: FieldSpec, cap: int = DEFAULT_CAP) -> TruncatedSeries:
    """Poincare series of the loop space homology of a co-H expression."""
    if not is_co_h(x):
        raise NotCoHError(f"not provably co-H: {render(x)}", hypothesis="input is a co-H-space")
    return loop_series_from_reduced(reduced_series(x, field), cap)


# rendering

_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
_UNSUP = {v: k for k, v in zip("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")}


@dataclass(frozen=True)
class _Style:
    wedge: str
    smash: str
    half: str
    sup: bool


ASCII = _Style(" v ", " ^ ", " ⋊ ", False)
PRETTY = _Style(" ∨ ", " ∧ ", " ⋊ ", True)


def _level(x: SpaceExpr) -> int:
    if isinstance(x, Wedge):
        return 1
    if isinstance(x, HalfSmash):
        return 2
    if isinstance(x, Smash):
        return 3
    if isinstance(x, Suspension):
        return 4
    return 5


def _r(x: SpaceExpr, style: _Style, need: int) -> str:
    s = _render(x, style)
    return f"({s})" if _level(x) < need else s


def _num(n: int, style: _Style) -> str:
    return str(n).translate(_SUP) if style.sup else f"^{n}"


def _render(x: SpaceExpr, style: _Style) -> str:
    if isinstance(x, Point):
        return "*"
    if isinstance(x, Sphere):
        return "S" + _num(x.n, style)
    if isinstance(x, Moore):
        return f"P{_num(x.n, style)}({x.q})"
    if isinstance(x, LoopSphereFactor):
        return "ΩS" + _num(x.m, style)
    if isinstance(x, Suspension):
        return "Σ" + _r(x.inner, style, 4)
    if isinstance(x, Smash):
        return _r(x.left, style, 3) + style.smash + _r(x.right, style, 4)
    if isinstance(x, HalfSmash):
        return _r(x.left, style, 2) + style.half + _r(x.right, style, 3)
    if isinstance(x, Wedge):
        return style.wedge.join(_r(p, style, 2) for p in x.parts)
    raise InputError(f"unknown expression node {x!r}")


def render(x: SpaceExpr) -> str:
    """ASCII grammar form; ``parse(render(x)) == x``."""
    return _render(x, ASCII)


def pretty(x: SpaceExpr) -> str:
    """Unicode form for reports; also accepted by :func:`parse`."""
    return _render(x, PRETTY)


# parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<loop>ΩS\^(?P<lm>\d+))|(?P<sphere>S\^(?P<sn>\d+))"
    r"|(?P<moore>P\^(?P<pn>\d+)\((?P<pq>\d+)\))|(?P<op>[()*v^Σ⋊]|><))"
)


def _desup(text: str) -> str:
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in _UNSUP:
            digits = ""
            while i < len(text) and text[i] in _UNSUP:
                digits += _UNSUP[text[i]]
                i += 1
            out.append("^" + digits)
            continue
        out.append({"∨": "v", "∧": "^"}.get(ch, ch))
        i += 1
    return "".join(out)


def _tokenize(text: str) -> list[tuple]:
    s = _desup(text)
    pos = 0
    toks = []
    while pos < len(s):
        if s[pos:].strip() == "":
            break
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            raise InputError(f"cannot parse expression at {s[pos:]!r}")
        pos = m.end()
        if m.group("loop"):
            toks.append(("atom", LoopSphereFactor(int(m.group("lm")))))
        elif m.group("sphere"):
            toks.append(("atom", Sphere(int(m.group("sn")))))
        elif m.group("moore"):
            toks.append(("atom", Moore(int(m.group("pq")), int(m.group("pn")))))
        else:
            op = m.group("op")
            toks.append(("op", "⋊" if op == "><" else op))
    return toks


@dataclass
class _Parser:
    toks: list
    i: int = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, op=None):
        tok = self.peek()
        if op is not None and tok != ("op", op):
            raise InputError(f"expected {op!r} in expression")
        self.i += 1
        return tok

    def expr(self) -> SpaceExpr:
        parts = [self.hsmash()]
        while self.peek() == ("op", "v"):
            self.take()
            parts.append(self.hsmash())
        return parts[0] if len(parts) == 1 else Wedge(tuple(parts))

    def hsmash(self) -> SpaceExpr:
        x = self.smash()
        while self.peek() == ("op", "⋊"):
            self.take()
            x = HalfSmash(x, self.smash())
        return x

    def smash(self) -> SpaceExpr:
        x = self.prefix()
        while self.peek() == ("op", "^"):
            self.take()
            x = Smash(x, self.prefix())
        return x

    def prefix(self) -> SpaceExpr:
        if self.peek() == ("op", "Σ"):
            self.take()
            return Suspension(self.prefix())
        return self.atom()

    def atom(self) -> SpaceExpr:
        kind, val = self.take()
        if kind == "atom":
            return val
        if val == "*":
            return Point()
        if val == "(":
            x = self.expr()
            self.take(")")
            return x
        raise InputError(f"unexpected token {val!r} in expression")


def parse(text: str) -> SpaceExpr:
    """Inverse of :func:`render` (and of :func:`pretty`)."""
    p = _Parser(_tokenize(text))
    if not p.toks:
        raise InputError("empty expression")
    x = p.expr()
    if p.i != len(p.toks):
        raise InputError(f"trailing input in expression {text!r}")
    return x
