"""Poincare duality complexes: data model, duality checks, skeleta and class A evidence.

A complex is stored by its integral homology in degrees m..n together with
three flags that record homotopy-theoretic facts the homology cannot see:
whether the (n-1)-skeleton is a co-H-space (and which kind), whether the
bottom sphere retracts off, and whether some bottom class squares to zero.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from enum import Enum
from typing import Mapping

from .algebra import GradedGroup
from .errors import HypothesisError, InputError
from .spacexpr import SpaceExpr, wedge_from_homology


class SkeletonClass(str, Enum):
    WEDGE_SPHERES = "wedge_spheres"
    WEDGE_SPHERES_MOORE = "wedge_spheres_moore"
    CO_H = "co_h"
    UNKNOWN = "unknown"

    @property
    def is_co_h(self) -> bool:
        return self is not SkeletonClass.UNKNOWN

    @property
    def is_wedge(self) -> bool:
        return self in (SkeletonClass.WEDGE_SPHERES, SkeletonClass.WEDGE_SPHERES_MOORE)

    def join(self, other: "SkeletonClass") -> "SkeletonClass":
        """Class of a wedge of two skeleta."""
        if SkeletonClass.UNKNOWN in (self, other):
            return SkeletonClass.UNKNOWN
        if SkeletonClass.CO_H in (self, other):
            return SkeletonClass.CO_H
        if SkeletonClass.WEDGE_SPHERES_MOORE in (self, other):
            return SkeletonClass.WEDGE_SPHERES_MOORE
        return SkeletonClass.WEDGE_SPHERES


class Tri(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Flags:
    skeleton: SkeletonClass = SkeletonClass.UNKNOWN
    bottom_cell_retract: Tri = Tri.UNKNOWN
    cup_square_zero: Tri = Tri.UNKNOWN

    def to_json(self) -> dict:
        return {
            "skeleton": self.skeleton.value,
            "bottom_cell_retract": self.bottom_cell_retract.value,
            "cup_square_zero": self.cup_square_zero.value,
        }

    @classmethod
    def from_json(cls, data: Mapping | None) -> "Flags":
        data = data or {}
        try:
            return cls(
                SkeletonClass(data.get("skeleton", "unknown")),
                Tri(data.get("bottom_cell_retract", "unknown")),
                Tri(data.get("cup_square_zero", "unknown")),
            )
        except ValueError as exc:
            raise InputError(f"bad flag value: {exc}") from None


@dataclass(frozen=True)
class PDComplex:
    """An (m-1)-connected Poincare duality complex of dimension n.

    ``homology`` covers degrees m..n; the top class is added if missing.
    """

    name: str
    dim: int
    conn_m: int
    homology: GradedGroup
    flags: Flags = Flags()
    provenance: tuple[str, ...] = ()

    def __post_init__(self):
        if not isinstance(self.dim, int) or not isinstance(self.conn_m, int):
            raise InputError("dim and connectivity must be integers")
        h = self.homology
        if self.dim >= 0 and self.dim not in h.degrees():
            h = h + GradedGroup.of({self.dim: (1, [])})
            object.__setattr__(self, "homology", h)
        object.__setattr__(self, "provenance", tuple(self.provenance))

    @property
    def n(self) -> int:
        return self.dim

    @property
    def m(self) -> int:
        return self.conn_m

    def rank(self, i: int) -> int:
        return self.homology.rank(i)

    def with_flags(self, **kw) -> "PDComplex":
        return replace(self, flags=replace(self.flags, **kw))

    def with_provenance(self, *records: str) -> "PDComplex":
        return replace(self, provenance=self.provenance + tuple(records))

    def cup_witness(self) -> bool:
        """True when some bottom generator is known to square to zero.

        A retraction of the bottom sphere forces this, so the retraction
        flag counts as a witness.
        """
        return Tri.YES in (self.flags.cup_square_zero, self.flags.bottom_cell_retract)

    # serialization

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "dim": self.dim,
            "connectivity": self.conn_m - 1,
            "homology": self.homology.to_json(),
            "flags": self.flags.to_json(),
            "provenance": list(self.provenance),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, data: Mapping) -> "PDComplex":
        if not isinstance(data, Mapping):
            raise InputError("complex document must be a JSON object")
        for key in ("dim", "connectivity", "homology"):
            if key not in data:
                raise InputError(f"complex document is missing {key!r}")
        dim, conn = data["dim"], data["connectivity"]
        if not isinstance(dim, int) or not isinstance(conn, int):
            raise InputError("dim and connectivity must be integers")
        prov = data.get("provenance", [])
        if not isinstance(prov, list) or not all(isinstance(p, str) for p in prov):
            raise InputError("provenance must be a list of strings")
        return cls(
            name=str(data.get("name", "M")),
            dim=dim,
            conn_m=conn + 1,
            homology=GradedGroup.from_json(data["homology"]),
            flags=Flags.from_json(data.get("flags")),
            provenance=tuple(prov),
        )

    @classmethod
    def loads(cls, text: str) -> "PDComplex":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from None
        return cls.from_json(data)


# validation

@dataclass(frozen=True)
class Failure:
    kind: str
    degrees: tuple[int, ...]
    message: str


@dataclass(frozen=True)
class ValidationReport:
    failures: tuple[Failure, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.failures

    def degrees(self) -> set[int]:
        return {d for f in self.failures for d in f.degrees}

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        return "\n".join(f"{f.kind} {list(f.degrees)}: {f.message}" for f in self.failures)


def _torsion_key(h: GradedGroup, i: int):
    return tuple((s.prime, s.exponent, s.multiplicity) for s in h.torsion(i))


def validate(M: PDComplex) -> ValidationReport:
    """Check the homological shadow of Poincare duality; never raises."""
    fails: list[Failure] = []
    n, m, h = M.dim, M.conn_m, M.homology
    if n < 3:
        fails.append(Failure("range", (), f"dimension {n} is below 3"))
    if not (2 <= m < n):
        fails.append(Failure("range", (), f"need 2 <= m < n, got m={m}, n={n}"))
    for d in h.degrees():
        if d < m or d > n:
            fails.append(Failure("degree_range", (d,), f"homology in degree {d} outside {m}..{n}"))
    if h.rank(n) != 1 or h.torsion(n):
        fails.append(Failure("top_class", (n,), f"H_{n} must be exactly Z, got {h.describe(n)}"))
    for i in range(0, n // 2 + 1):
        j = n - i
        if i != j and {i, j} & {0, n}:
            continue
        if h.rank(i) != h.rank(j):
            fails.append(Failure(
                "rank_symmetry", (i, j), f"rank H_{i} = {h.rank(i)} but rank H_{j} = {h.rank(j)}"))
    for i in range(0, n):
        j = n - 1 - i
        if i > j:
            break
        if _torsion_key(h, i) != _torsion_key(h, j):
            fails.append(Failure(
                "torsion_symmetry", (i, j),
                f"torsion of H_{i} ({h.describe(i)}) does not match torsion of H_{j} ({h.describe(j)})"))
    if M.flags.skeleton is SkeletonClass.WEDGE_SPHERES and any(
        h.torsion(i) for i in range(n)
    ):
        fails.append(Failure(
            "flag", tuple(i for i in range(n) if h.torsion(i)),
            "skeleton flagged as a wedge of spheres but homology has torsion"))
    return ValidationReport(tuple(fails))


def require_valid(M: PDComplex) -> None:
    report = validate(M)
    if not report.ok:
        raise HypothesisError(
            f"{M.name} is not a valid duality complex: {report}",
            hypothesis="Poincare duality", reasons=[str(report)])


# skeleton

@dataclass(frozen=True)
class SkeletonModel:
    homology: GradedGroup
    klass: SkeletonClass
    expr: SpaceExpr | None = None


def skeleton_homology(M: PDComplex) -> GradedGroup:
    """Reduced homology of the (n-1)-skeleton: everything below the top degree."""
    return M.homology.restrict(hi=M.dim - 1)


def skeleton(M: PDComplex) -> SkeletonModel:
    h = skeleton_homology(M)
    k = M.flags.skeleton
    expr = wedge_from_homology(h) if k.is_wedge else None
    return SkeletonModel(h, k, expr)


def bottom_degree(M: PDComplex) -> int:
    """Least degree below the top carrying a Z summand."""
    for d in M.homology.degrees():
        if d < M.dim and M.homology.rank(d) > 0:
            return d
    raise HypothesisError(
        "no ℤ summand below top degree: homotopy sphere-like input, out of scope",
        hypothesis="H_k(M) has a Z summand for some k < n")


def in_class_a(M: PDComplex) -> bool:
    """Integral membership in class A as recorded by the flags."""
    return (
        M.flags.skeleton.is_co_h
        and M.flags.bottom_cell_retract is Tri.YES
        and M.rank(M.conn_m) >= 1
    )


# class A evidence

class Membership(str, Enum):
    YES = "yes"
    NO = "no"
    CONDITIONAL = "conditional"


@dataclass(frozen=True)
class ClassAEvidence:
    member: Membership
    primes: frozenset[int] = frozenset()
    reasons: tuple[str, ...] = ()
    plan: object | None = None
    citations: tuple[str, ...] = ()

    def __str__(self) -> str:
        if self.member is Membership.CONDITIONAL:
            head = f"conditional (invert {sorted(self.primes)})"
        else:
            head = self.member.value
        return head + "".join(f"\n  - {r}" for r in self.reasons)


def _sources(M: PDComplex) -> str:
    tags = [r[1:r.index("]")] for r in M.provenance if r.startswith("[") and "]" in r]
    return ", ".join(dict.fromkeys(tags)) if tags else "user assertion"


def class_a_evidence(M: PDComplex) -> ClassAEvidence:
    """Decide membership in class A from flags, falling back to local theorems."""
    from . import localize

    report = validate(M)
    if not report.ok:
        return ClassAEvidence(Membership.NO, reasons=(f"invalid input: {report}",))
    f = M.flags
    skel_ok = f.skeleton.is_co_h
    retract_ok = f.bottom_cell_retract is Tri.YES and M.rank(M.conn_m) >= 1
    if skel_ok and retract_ok:
        return ClassAEvidence(
            Membership.YES,
            reasons=(
                f"co-H skeleton: flag {f.skeleton.value} ({_sources(M)})",
                f"bottom-cell retraction: flag yes ({_sources(M)})",
            ),
            citations=("class A definition",),
        )
    if f.bottom_cell_retract is Tri.YES and M.rank(M.conn_m) == 0:
        note = "retraction flag ignored: no Z summand in the bottom degree"
    else:
        note = None
    try:
        if skel_ok:
            plan = localize.retraction_plan(M)
        elif retract_ok:
            plan = localize.skeleton_class_plan(M)
        else:
            plan = localize.full_plan(M)
    except HypothesisError as exc:
        reasons = ["no rule", str(exc), *exc.reasons]
        if note:
            reasons.append(note)
        return ClassAEvidence(Membership.NO, reasons=tuple(reasons))
    reasons = [f"{plan.theorem}: invert {sorted(plan.inverted)}", *plan.notes]
    if skel_ok:
        reasons.insert(0, f"co-H skeleton: flag {f.skeleton.value} ({_sources(M)})")
    if note:
        reasons.append(note)
    return ClassAEvidence(
        Membership.CONDITIONAL,
        primes=plan.inverted,
        reasons=tuple(reasons),
        plan=plan,
        citations=plan.citations,
    )
