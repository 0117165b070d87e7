"""Loop space decompositions of class A complexes and their Poincare series.

For M in class A with bottom sphere S^m the (n-1)-skeleton splits as
S^m v A and A as S^{n-m} v B, and

    Omega M  ~  Omega S^m x Omega(A v (B ^ Omega S^m)).

The loop homology is also a one-relator algebra on the desuspended skeleton
homology, giving a second, independent route to the Poincare series.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import FieldSpec, GradedGroup, QQ, field_reduce
from .errors import HypothesisError, InputError
from .localize import LocalizationPlan
from .pdcomplex import (
    ClassAEvidence,
    Membership,
    PDComplex,
    SkeletonClass,
    class_a_evidence,
    skeleton_homology,
)
from .series import DEFAULT_CAP, IntPoly, RationalFn, TruncatedSeries, series_expand
from .spacexpr import (
    LoopSphereFactor,
    Point,
    SpaceExpr,
    Smash,
    Sphere,
    loop_series,
    normalize,
    pretty,
    wedge,
    wedge_from_homology,
)


@dataclass(frozen=True)
class Effective:
    """The data a decomposition is computed from, after any localization."""

    name: str
    dim: int
    m: int
    skeleton: GradedGroup
    inverted: frozenset[int]
    skeleton_class: SkeletonClass
    citations: tuple[str, ...]
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class Decomposition:
    name: str
    dim: int
    m: int
    A: SpaceExpr
    B: SpaceExpr
    fibre: SpaceExpr
    statement: str
    localization: frozenset[int] = frozenset()
    citations: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()

    @property
    def fibre_display(self) -> str:
        """Fibre as ``(A) v (B ^ Omega S^m)`` before flattening."""
        if isinstance(self.B, Point):
            return _paren(self.A)
        return f"{_paren(self.A)} ∨ ({_paren(self.B)} ∧ ΩS{_sup(self.m)})"


def _sup(n: int) -> str:
    return pretty(Sphere(n))[1:]


def _paren(x: SpaceExpr) -> str:
    s = pretty(x)
    return f"({s})" if " " in s else s


def _fail(msg: str, hypothesis: str, ev: ClassAEvidence | None = None):
    raise HypothesisError(msg, hypothesis=hypothesis, reasons=ev.reasons if ev else ())


def effective_data(M: PDComplex, localize=None, plan: LocalizationPlan | None = None) -> Effective:
    """Resolve class A evidence into (m, skeleton homology, inverted primes).

    ``localize`` is None for automatic, or an explicit prime set which must
    contain the primes the evidence requires. ``plan`` overrides the
    evidence entirely (used by the moment-angle pipeline).
    """
    cites: tuple[str, ...]
    notes: list[str] = []
    if plan is not None:
        inverted = frozenset(plan.inverted)
        m = plan.k
        klass = plan.resulting_skeleton_class
        cites = plan.citations
        notes.extend(plan.notes)
    else:
        ev = class_a_evidence(M)
        if ev.member is Membership.NO:
            why = ev.reasons[1] if len(ev.reasons) > 1 else (ev.reasons[0] if ev.reasons else "")
            _fail(f"{M.name} is not known to lie in class A: {why}", "membership in class A", ev)
        if ev.member is Membership.YES:
            inverted = frozenset()
            m = M.conn_m
            klass = M.flags.skeleton
            cites = ("class A definition",) + tuple(
                p.split("]")[0].lstrip("[") for p in M.provenance if p.startswith("["))
        else:
            p = ev.plan
            inverted = frozenset(ev.primes)
            m = p.k
            klass = p.resulting_skeleton_class
            cites = ev.citations
            notes.extend(ev.reasons)
        if localize is not None:
            extra = frozenset(localize)
            if not inverted <= extra:
                raise InputError(
                    f"--localize must contain the required primes {sorted(inverted)}")
            inverted = extra
    if not klass.is_wedge:
        _fail(f"skeleton of {M.name} is {klass.value}, not a wedge of spheres and Moore spaces",
              "skeleton is a wedge of spheres and Moore spaces")
    skel = skeleton_homology(M).away_from(inverted)
    low = skel.restrict(hi=m - 1)
    if not low.is_zero():
        _fail(f"homology below the bottom degree {m} survives localization: {low}",
              f"H_i = 0 for i < {m} after localization")
    if skel.rank(m) < 1:
        _fail(f"no Z summand in degree {m}", f"H_{m}(M) contains a Z summand")
    n = M.dim
    if m == n - m:
        if skel.rank(m) < 2:
            _fail(f"middle degree {m} has rank {skel.rank(m)} < 2",
                  f"rank H_{m}(M) >= 2 when m = n-m")
        if m % 2 == 0 and not M.cup_witness() and plan is None:
            _fail(f"m = n-m = {m} is even and no x with x^2 = 0 is asserted",
                  f"a generator x in H^{m}(M) with x^2 = 0")
    elif m > n - m:
        _fail(f"bottom degree {m} exceeds n-m = {n - m}", "m <= n-m")
    return Effective(M.name, n, m, skel, inverted, klass,
                     tuple(dict.fromkeys(cites + ("Thm 1", "Cor 3.2"))), tuple(notes))


def factors_AB(eff: Effective) -> tuple[SpaceExpr, SpaceExpr]:
    """A = skeleton minus one bottom sphere; B = A minus one S^{n-m}."""
    a_hom = eff.skeleton.without_free(eff.m)
    b_hom = a_hom.without_free(eff.dim - eff.m)
    return wedge_from_homology(a_hom), wedge_from_homology(b_hom)


def compute_AB(M: PDComplex, localize=None, plan=None) -> tuple[SpaceExpr, SpaceExpr]:
    return factors_AB(effective_data(M, localize, plan))


def fibre_of(A: SpaceExpr, B: SpaceExpr, m: int) -> SpaceExpr:
    return normalize(wedge(A, Smash(B, LoopSphereFactor(m))) if not isinstance(B, Point) else A)


def decompose(M: PDComplex, localize=None, plan=None) -> Decomposition:
    eff = effective_data(M, localize, plan)
    A, B = factors_AB(eff)
    fib = fibre_of(A, B, eff.m)
    bottom = f"ΩS{_sup(eff.m)}"
    rhs = bottom if isinstance(fib, Point) else f"{bottom} × Ω{_paren(fib)}"
    stmt = f"Ω{M.name} ≃ {rhs}"
    if eff.inverted:
        stmt += f"  (localized away from {sorted(eff.inverted)})"
    return Decomposition(M.name, M.dim, eff.m, A, B, fib, stmt, eff.inverted,
                         eff.citations, eff.notes)


# one-relator presentation

@dataclass(frozen=True)
class Generator:
    degree: int
    source: str


@dataclass(frozen=True)
class OneRelatorPresentation:
    generators: tuple[Generator, ...]
    relation_degree: int
    field: FieldSpec
    quadratic: bool
    citations: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()

    def degrees(self) -> list[int]:
        return [g.degree for g in self.generators]


def _check_field(field: FieldSpec, inverted: frozenset[int]):
    if field.char and field.char in inverted:
        raise HypothesisError(
            f"coefficients incompatible with localization: {field} with {field.char} inverted",
            hypothesis=f"field characteristic not among inverted primes {sorted(inverted)}")


def one_relator(M: PDComplex, field: FieldSpec = QQ, localize=None, plan=None) -> OneRelatorPresentation:
    eff = effective_data(M, localize, plan)
    _check_field(field, eff.inverted)
    gens = []
    for d, r, tors in eff.skeleton.entries:
        gens += [Generator(d - 1, f"S^{d}")] * r
        if field.char:
            for s in tors:
                if s.prime == field.char:
                    src = f"P^{d + 1}({s.order})"
                    for _ in range(s.multiplicity):
                        gens += [Generator(d - 1, src + " bottom"), Generator(d, src + " top")]
    gens.sort(key=lambda g: (g.degree, g.source))
    n = M.dim
    quad = field.is_rational and n <= 3 * eff.m - 2
    cites = ["Thm 4.3"]
    notes = []
    if quad:
        cites.append("Rem 4.4")
        notes.append("relation is quadratic")
    if eff.inverted and field.is_rational and n <= 3 * M.conn_m - 1:
        cites.append("Thm 8.3")
        notes.append("relation ideal generated by a sum of monomials (monomials not computed)")
    return OneRelatorPresentation(tuple(gens), n - 2, field, quad, tuple(cites), tuple(notes))


# Poincare series

def loop_series_decomposition(d: Decomposition, field: FieldSpec = QQ,
                              cap: int = DEFAULT_CAP) -> TruncatedSeries:
    _check_field(field, d.localization)
    return loop_series(Sphere(d.m), field, cap) * loop_series(d.fibre, field, cap)


def one_relator_series(skeleton_dims: dict[int, int], dim: int, cap: int) -> TruncatedSeries:
    """Expand 1 / (1 - W + t^{n-2}) with W the desuspended skeleton series."""
    w = IntPoly.from_dims(skeleton_dims).shift(-1)
    den = IntPoly.const(1) - w + IntPoly.monomial(dim - 2)
    return series_expand(RationalFn(IntPoly.const(1), den), cap)


def loop_series_one_relator(M: PDComplex, field: FieldSpec = QQ, cap: int = DEFAULT_CAP,
                            localize=None, plan=None) -> TruncatedSeries:
    eff = effective_data(M, localize, plan)
    _check_field(field, eff.inverted)
    return one_relator_series(field_reduce(eff.skeleton, field), M.dim, cap)


@dataclass(frozen=True)
class CrossCheckReport:
    name: str
    field: FieldSpec
    cap: int
    decomposition_series: TruncatedSeries
    one_relator_series: TruncatedSeries
    first_disagreement: int | None
    localization: frozenset[int] = field(default_factory=frozenset)

    @property
    def equal(self) -> bool:
        return self.first_disagreement is None


def cross_check(M: PDComplex, field: FieldSpec = QQ, cap: int = DEFAULT_CAP,
                localize=None, plan=None) -> CrossCheckReport:
    d = decompose(M, localize, plan)
    a = loop_series_decomposition(d, field, cap)
    b = loop_series_one_relator(M, field, cap, localize, plan)
    return CrossCheckReport(M.name, field, cap, a, b, a.first_difference(b), d.localization)
