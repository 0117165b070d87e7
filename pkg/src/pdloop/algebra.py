"""Graded abelian groups, Smith normal form and coefficient fields.

Torsion is stored in primary form: a summand ``(p, r, mult)`` stands for
``mult`` copies of the cyclic group of order ``p**r``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from sympy import factorint, isprime

from .errors import InputError


@dataclass(frozen=True, order=True)
class TorsionSummand:
    prime: int
    exponent: int
    multiplicity: int = 1

    def __post_init__(self):
        if not (isinstance(self.prime, int) and self.prime >= 2 and isprime(self.prime)):
            raise InputError(f"torsion prime must be prime, got {self.prime!r}")
        if not (isinstance(self.exponent, int) and self.exponent >= 1):
            raise InputError(f"torsion exponent must be >= 1, got {self.exponent!r}")
        if not (isinstance(self.multiplicity, int) and self.multiplicity >= 1):
            raise InputError(f"torsion multiplicity must be >= 1, got {self.multiplicity!r}")

    @property
    def order(self) -> int:
        return self.prime**self.exponent


def canonical_torsion(summands: Iterable[TorsionSummand]) -> tuple[TorsionSummand, ...]:
    """Merge equal prime powers and sort by (prime, exponent)."""
    counts: dict[tuple[int, int], int] = {}
    for s in summands:
        key = (s.prime, s.exponent)
        counts[key] = counts.get(key, 0) + s.multiplicity
    return tuple(TorsionSummand(p, r, c) for (p, r), c in sorted(counts.items()))


def torsion_from_orders(orders: Iterable[int]) -> tuple[TorsionSummand, ...]:
    """Primary decomposition of a product of cyclic groups of the given orders.

    Orders equal to 1 are trivial and dropped; orders < 1 are rejected.
    """
    out = []
    for q in orders:
        if not isinstance(q, int) or q < 1:
            raise InputError(f"cyclic order must be a positive integer, got {q!r}")
        for p, r in factorint(q).items():
            out.append(TorsionSummand(int(p), int(r), 1))
    return canonical_torsion(out)


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, r)`` with ``q == p**r``; raise if q is not a prime power."""
    if not isinstance(q, int) or q < 2:
        raise InputError(f"expected a prime power, got {q!r}")
    f = factorint(q)
    if len(f) != 1:
        raise InputError(f"expected a prime power, got {q}")
    ((p, r),) = f.items()
    return int(p), int(r)


@dataclass(frozen=True)
class GradedGroup:
    """A finitely generated graded abelian group.

    ``entries`` is a sorted tuple of ``(degree, rank, torsion)`` with no zero
    entries; build instances with :meth:`of` or :func:`graded` rather than
    by hand.
    """

    entries: tuple[tuple[int, int, tuple[TorsionSummand, ...]], ...] = ()

    def __post_init__(self):
        seen = set()
        for deg, rank, tors in self.entries:
            if not isinstance(deg, int) or deg < 0:
                raise InputError(f"degree must be a non-negative integer, got {deg!r}")
            if not isinstance(rank, int) or rank < 0:
                raise InputError(f"rank must be a non-negative integer, got {rank!r}")
            if deg in seen:
                raise InputError(f"duplicate degree {deg}")
            seen.add(deg)
            if rank == 0 and not tors:
                raise InputError(f"zero entry stored in degree {deg}")
            if tuple(tors) != canonical_torsion(tors):
                raise InputError(f"torsion in degree {deg} is not canonical")
        if [e[0] for e in self.entries] != sorted(seen):
            raise InputError("entries must be sorted by degree")

    @classmethod
    def of(cls, data: Mapping[int, tuple[int, Iterable]] | None = None) -> "GradedGroup":
        """Build from ``{deg: (rank, [(p, r, mult) | TorsionSummand, ...])}``."""
        acc: dict[int, tuple[int, list]] = {}
        for deg, (rank, tors) in (data or {}).items():
            summands = [t if isinstance(t, TorsionSummand) else TorsionSummand(*t) for t in tors]
            r0, t0 = acc.get(deg, (0, []))
            acc[deg] = (r0 + rank, t0 + summands)
        return cls._from_acc(acc)

    @classmethod
    def _from_acc(cls, acc: Mapping[int, tuple[int, list]]) -> "GradedGroup":
        entries = []
        for deg in sorted(acc):
            rank, tors = acc[deg]
            tors = canonical_torsion(tors)
            if rank or tors:
                entries.append((deg, rank, tors))
        return cls(tuple(entries))

    def _acc(self) -> dict[int, tuple[int, list]]:
        return {d: (r, list(t)) for d, r, t in self.entries}

    # queries

    def degrees(self) -> list[int]:
        return [d for d, _, _ in self.entries]

    def rank(self, deg: int) -> int:
        for d, r, _ in self.entries:
            if d == deg:
                return r
        return 0

    def torsion(self, deg: int) -> tuple[TorsionSummand, ...]:
        for d, _, t in self.entries:
            if d == deg:
                return t
        return ()

    def is_zero(self) -> bool:
        return not self.entries

    def torsion_primes(self) -> frozenset[int]:
        return frozenset(s.prime for _, _, t in self.entries for s in t)

    def max_degree(self) -> int | None:
        return self.entries[-1][0] if self.entries else None

    def min_degree(self) -> int | None:
        return self.entries[0][0] if self.entries else None

    # constructions

    def __add__(self, other: "GradedGroup") -> "GradedGroup":
        acc = self._acc()
        for d, r, t in other.entries:
            r0, t0 = acc.get(d, (0, []))
            acc[d] = (r0 + r, t0 + list(t))
        return GradedGroup._from_acc(acc)

    def shift(self, k: int) -> "GradedGroup":
        """Shift every degree by ``k`` (the suspension isomorphism for k > 0)."""
        if self.entries and self.entries[0][0] + k < 0:
            raise InputError(f"shift by {k} produces a negative degree")
        return GradedGroup(tuple((d + k, r, t) for d, r, t in self.entries))

    def restrict(self, lo: int | None = None, hi: int | None = None) -> "GradedGroup":
        """Keep degrees in the closed range ``[lo, hi]``."""
        return GradedGroup(tuple(
            e for e in self.entries
            if (lo is None or e[0] >= lo) and (hi is None or e[0] <= hi)
        ))

    def without_free(self, deg: int, count: int = 1) -> "GradedGroup":
        """Remove ``count`` copies of Z from degree ``deg``."""
        if self.rank(deg) < count:
            raise InputError(f"cannot remove {count} copies of Z from degree {deg}")
        acc = self._acc()
        r, t = acc[deg]
        acc[deg] = (r - count, t)
        return GradedGroup._from_acc(acc)

    def away_from(self, primes: Iterable[int]) -> "GradedGroup":
        """Localize away from ``primes``: drop their torsion, keep ranks."""
        ps = set(primes)
        acc = {d: (r, [s for s in t if s.prime not in ps]) for d, r, t in self.entries}
        return GradedGroup._from_acc(acc)

    # serialization

    def to_json(self) -> dict:
        return {
            str(d): {"rank": r, "torsion": [[s.prime, s.exponent, s.multiplicity] for s in t]}
            for d, r, t in self.entries
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "GradedGroup":
        if not isinstance(data, Mapping):
            raise InputError("homology must be an object keyed by degree")
        acc = {}
        for key, val in data.items():
            try:
                deg = int(key)
            except (TypeError, ValueError):
                raise InputError(f"bad degree key {key!r}") from None
            if not isinstance(val, Mapping):
                raise InputError(f"homology entry for degree {key} must be an object")
            rank = val.get("rank", 0)
            tors = val.get("torsion", [])
            if not isinstance(rank, int) or isinstance(rank, bool):
                raise InputError(f"rank in degree {key} must be an integer")
            if not isinstance(tors, list) or not all(
                isinstance(x, list) and len(x) == 3 and all(isinstance(v, int) for v in x) for x in tors
            ):
                raise InputError(f"torsion in degree {key} must be a list of [p, r, mult]")
            acc[deg] = (rank, [TorsionSummand(*x) for x in tors])
        for deg in acc:
            if deg < 0:
                raise InputError(f"negative degree {deg}")
        return cls._from_acc(acc)

    def describe(self, deg: int) -> str:
        r = self.rank(deg)
        parts = [("Z" if r == 1 else f"Z^{r}")] if r else []
        for s in self.torsion(deg):
            parts.append(f"Z/{s.order}" if s.multiplicity == 1 else f"(Z/{s.order})^{s.multiplicity}")
        return " + ".join(parts) if parts else "0"

    def __str__(self) -> str:
        if not self.entries:
            return "0"
        return ", ".join(f"H_{d} = {self.describe(d)}" for d in self.degrees())


def graded(**kwargs) -> GradedGroup:
    """Shorthand for tests: ``graded(d2=(1, [(2, 1, 1)]))``."""
    return GradedGroup.of({int(k[1:]): v for k, v in kwargs.items()})


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: ``char == 0`` is Q, otherwise F_p."""

    char: int = 0

    def __post_init__(self):
        if self.char != 0 and not (isinstance(self.char, int) and isprime(self.char)):
            raise InputError(f"field characteristic must be 0 or a prime, got {self.char!r}")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        s = text.strip().upper()
        if s in ("Q", "QQ", "0"):
            return cls(0)
        for prefix in ("F_", "F", "GF", "FP="):
            if s.startswith(prefix) and s[len(prefix):].isdigit():
                return cls(int(s[len(prefix):]))
        raise InputError(f"unknown field {text!r}; use Q or Fp such as F2")

    @property
    def is_rational(self) -> bool:
        return self.char == 0

    def __str__(self) -> str:
        return "Q" if self.char == 0 else f"F{self.char}"


QQ = FieldSpec(0)


def field_reduce(g: GradedGroup, field: FieldSpec) -> dict[int, int]:
    """Dimensions of ``g`` tensored (with Tor correction) into ``field``.

    Over F_p each p-torsion summand in degree i contributes to degrees i and
    i+1. Zero dimensions are omitted.
    """
    dims: dict[int, int] = {}
    for d, r, t in g.entries:
        if r:
            dims[d] = dims.get(d, 0) + r
        if field.char:
            c = sum(s.multiplicity for s in t if s.prime == field.char)
            if c:
                dims[d] = dims.get(d, 0) + c
                dims[d + 1] = dims.get(d + 1, 0) + c
    return {d: v for d, v in sorted(dims.items()) if v}


def snf(matrix) -> list[int]:
    """Invariant factors ``s_1 | s_2 | ... | s_k`` of an integer matrix."""
    a = [list(map(int, row)) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if any(len(row) != cols for row in a):
        raise InputError("matrix must be rectangular")
    factors = []
    t = 0
    while t < rows and t < cols:
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    for j in range(t, cols):
                        a[i][j] -= q * a[t][j]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for i in range(t, rows):
                        a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        dirty = True
            if dirty:
                continue
            # enforce divisibility of the remaining block by the pivot
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % a[t][t]),
                None,
            )
            if bad is None:
                break
            for j in range(t, cols):
                a[t][j] += a[bad][j]
        factors.append(abs(a[t][t]))
        t += 1
    return factors
