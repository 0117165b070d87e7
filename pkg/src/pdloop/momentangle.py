"""Simplicial complexes, their homology, and moment-angle manifolds.

Vertices are 1-indexed in the public interface; internally faces are
bitmasks with bit ``v-1`` set for vertex ``v``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping

from .algebra import GradedGroup, snf, torsion_from_orders
from .decompose import Decomposition, decompose
from .errors import HypothesisError, InputError
from .localize import LocalizationPlan, zk_plan
from .pdcomplex import Flags, PDComplex, SkeletonClass, Tri

DEFAULT_SUBSET_LIMIT = 20


def _mask(face: Iterable[int]) -> int:
    out = 0
    for v in face:
        out |= 1 << (v - 1)
    return out


def _verts(mask: int) -> tuple[int, ...]:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def _submasks(mask: int):
    s = mask
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & mask


@dataclass(frozen=True)
class SimplicialComplex:
    m: int
    facets: tuple[tuple[int, ...], ...]
    assertions: tuple[str, ...] = ()

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 1:
            raise InputError(f"vertex count must be a positive integer, got {self.m!r}")
        fs = []
        for f in self.facets:
            f = tuple(sorted(set(f)))
            if not f:
                raise InputError("empty facet")
            if any(not isinstance(v, int) or v < 1 or v > self.m for v in f):
                raise InputError(f"facet {list(f)} has a vertex outside 1..{self.m}")
            fs.append(f)
        fs = sorted(set(fs), key=lambda f: (len(f), f))
        masks = [_mask(f) for f in fs]
        for i, a in enumerate(masks):
            for j, b in enumerate(masks):
                if i != j and a & b == a:
                    raise InputError(f"facet {list(fs[i])} is contained in facet {list(fs[j])}")
        covered = 0
        for a in masks:
            covered |= a
        if covered != (1 << self.m) - 1:
            missing = [v for v in range(1, self.m + 1) if not covered >> (v - 1) & 1]
            raise InputError(f"vertices {missing} lie in no facet")
        object.__setattr__(self, "facets", tuple(fs))
        object.__setattr__(self, "assertions", tuple(self.assertions))

    @cached_property
    def faces(self) -> frozenset[int]:
        out = set()
        for f in self.facets:
            out.update(_submasks(_mask(f)))
        return frozenset(out)

    @property
    def dim(self) -> int:
        return max(len(f) for f in self.facets) - 1

    @property
    def full(self) -> int:
        return (1 << self.m) - 1

    def is_face(self, face: Iterable[int]) -> bool:
        return _mask(face) in self.faces

    # serialization

    def to_json(self) -> dict:
        return {"vertices": self.m, "facets": [list(f) for f in self.facets],
                "assertions": list(self.assertions)}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, data: Mapping) -> "SimplicialComplex":
        if not isinstance(data, Mapping) or "vertices" not in data or "facets" not in data:
            raise InputError("simplicial complex document needs 'vertices' and 'facets'")
        facets = data["facets"]
        if not isinstance(facets, list) or not all(
            isinstance(f, list) and all(isinstance(v, int) for v in f) for f in facets
        ):
            raise InputError("facets must be a list of vertex lists")
        asserts = data.get("assertions", [])
        if not isinstance(asserts, list) or not all(isinstance(a, str) for a in asserts):
            raise InputError("assertions must be a list of strings")
        return cls(data["vertices"], tuple(tuple(f) for f in facets), tuple(asserts))

    @classmethod
    def loads(cls, text: str) -> "SimplicialComplex":
        try:
            return cls.from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from None


# standard examples

def simplex_boundary(k: int) -> SimplicialComplex:
    """Boundary of the k-simplex, on k+1 vertices."""
    verts = range(1, k + 2)
    return SimplicialComplex(k + 1, tuple(combinations(verts, k)))


def join(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """Join with L's vertices renumbered after K's."""
    fs = tuple(a + tuple(v + K.m for v in b) for a in K.facets for b in L.facets)
    return SimplicialComplex(K.m + L.m, fs)


def cycle(m: int) -> SimplicialComplex:
    return SimplicialComplex(m, tuple(tuple(sorted((i, i % m + 1))) for i in range(1, m + 1)))


RP2_6 = SimplicialComplex(6, (
    (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
    (2, 3, 5), (3, 4, 6), (2, 4, 5), (3, 5, 6), (2, 4, 6),
))


# homology

def boundary_matrix(faces_hi: list[int], faces_lo: list[int]) -> list[list[int]]:
    """Matrix of the simplicial boundary from faces_hi to faces_lo (rows = faces_lo)."""
    index = {f: i for i, f in enumerate(faces_lo)}
    mat = [[0] * len(faces_hi) for _ in faces_lo]
    for j, f in enumerate(faces_hi):
        for pos, v in enumerate(_verts(f)):
            mat[index[f & ~(1 << (v - 1))]][j] = -1 if pos % 2 else 1
    return mat


def reduced_homology_of_faces(faces: Iterable[int]) -> GradedGroup:
    """Reduced integral homology of the complex with the given face bitmasks."""
    by_dim: dict[int, list[int]] = {}
    for f in faces:
        by_dim.setdefault(bin(f).count("1") - 1, []).append(f)
    if not by_dim or max(by_dim) < 0:
        return GradedGroup()
    for d in by_dim:
        by_dim[d].sort()
    top = max(by_dim)
    ranks: dict[int, int] = {}
    factors: dict[int, list[int]] = {}
    for d in range(0, top + 1):
        hi, lo = by_dim.get(d, []), by_dim.get(d - 1, [])
        inv = snf(boundary_matrix(hi, lo)) if hi and lo else []
        ranks[d] = len(inv)
        factors[d] = inv
    acc = {}
    for d in range(0, top + 1):
        cycles = len(by_dim.get(d, [])) - ranks[d]
        free = cycles - ranks.get(d + 1, 0)
        tors = [q for q in factors.get(d + 1, []) if q > 1]
        if free or tors:
            acc[d] = (free, list(torsion_from_orders(tors)))
    return GradedGroup.of(acc)


def reduced_homology(K: SimplicialComplex) -> GradedGroup:
    return reduced_homology_of_faces(K.faces)


def subcomplex_homology(K: SimplicialComplex, I: Iterable[int] | int) -> GradedGroup:
    """Reduced homology of the full subcomplex on the vertex set I."""
    mask = I if isinstance(I, int) else _mask(I)
    if mask == 0:
        return GradedGroup()
    return reduced_homology_of_faces(f for f in K.faces if f & ~mask == 0)


# combinatorics

def is_k_neighbourly(K: SimplicialComplex, k: int) -> bool:
    """Every set of k+1 vertices spans a face."""
    if k < 0:
        return True
    if k + 1 > K.m:
        return False
    return all(_mask(c) in K.faces for c in combinations(range(1, K.m + 1), k + 1))


def neighbourliness(K: SimplicialComplex) -> int:
    """Largest k with K k-neighbourly."""
    k = 0
    while is_k_neighbourly(K, k + 1):
        k += 1
    return k


def minimal_missing_faces(K: SimplicialComplex) -> list[tuple[int, ...]]:
    out = []
    for size in range(1, K.m + 1):
        for c in combinations(range(1, K.m + 1), size):
            mask = _mask(c)
            if mask in K.faces:
                continue
            if all(mask & ~(1 << (v - 1)) in K.faces for v in c):
                out.append(c)
    return out


def is_simplex_boundary(K: SimplicialComplex) -> bool:
    return minimal_missing_faces(K) == [tuple(range(1, K.m + 1))] and K.dim == K.m - 2


@dataclass(frozen=True)
class SphereCheckReport:
    passed: bool
    checks: tuple[tuple[str, bool, str], ...]
    note: str = "necessary conditions only"

    def __str__(self) -> str:
        lines = [f"{'pass' if ok else 'FAIL'}  {name}: {detail}" for name, ok, detail in self.checks]
        return "\n".join(lines + [f"({self.note})"])


def sphere_check(K: SimplicialComplex, n: int) -> SphereCheckReport:
    checks = []
    pure = all(len(f) == n + 1 for f in K.facets)
    checks.append(("pure", pure, f"all facets have dimension {n}" if pure else "mixed facet dimensions"))
    ridges: dict[int, int] = {}
    for f in K.facets:
        fm = _mask(f)
        for v in f:
            r = fm & ~(1 << (v - 1))
            ridges[r] = ridges.get(r, 0) + 1
    pseudo = pure and all(c == 2 for c in ridges.values())
    checks.append(("pseudomanifold", pseudo, "every ridge lies in exactly two facets"
                   if pseudo else "some ridge is not in exactly two facets"))
    masks = [_mask(f) for f in K.facets]
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j, b in enumerate(masks):
            if j not in seen and bin(masks[i] & b).count("1") == n:
                seen.add(j)
                stack.append(j)
    conn = len(seen) == len(masks)
    checks.append(("connected", conn, "facet adjacency graph is connected"
                   if conn else "facet adjacency graph is disconnected"))
    h = reduced_homology(K)
    hom_ok = h == GradedGroup.of({n: (1, [])})
    checks.append(("homology", hom_ok, f"reduced homology {h}"))
    return SphereCheckReport(all(ok for _, ok, _ in checks), tuple(checks))


# moment-angle manifolds

@dataclass(frozen=True)
class Contribution:
    subset: tuple[int, ...]
    homology: GradedGroup


def zk_skeleton(K: SimplicialComplex, limit: int = DEFAULT_SUBSET_LIMIT
                ) -> tuple[GradedGroup, tuple[Contribution, ...]]:
    """Sum over non-faces I != [m] of H~(K_I) shifted up by 1 + |I|, with the ledger."""
    if K.m > limit:
        raise InputError(f"subset budget exceeded: {K.m} vertices > limit {limit}")
    total = GradedGroup()
    ledger = []
    for size in range(1, K.m):
        for c in combinations(range(1, K.m + 1), size):
            mask = _mask(c)
            if mask in K.faces:
                continue
            h = subcomplex_homology(K, mask)
            if h.is_zero():
                continue
            shifted = h.shift(1 + size)
            ledger.append(Contribution(c, shifted))
            total = total + shifted
    return total, tuple(ledger)


@dataclass(frozen=True)
class ZkReport:
    vertices: int
    sphere_dim: int
    zk_dimension: int
    connectivity: int
    neighbourliness: int
    minimal_missing_faces: tuple[tuple[int, ...], ...]
    skeleton: GradedGroup
    ledger: tuple[Contribution, ...]
    branch: str
    complex: PDComplex | None = None
    plan: LocalizationPlan | None = None
    decomposition: Decomposition | None = None
    sphere_report: SphereCheckReport | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)
    citations: tuple[str, ...] = field(default_factory=tuple)


def _asserted_sphere_dim(K: SimplicialComplex) -> int | None:
    for a in K.assertions:
        if a.startswith("sphere:"):
            try:
                return int(a.split(":", 1)[1])
            except ValueError:
                raise InputError(f"bad assertion {a!r}") from None
    return None


def zk_decompose(K: SimplicialComplex, assertions: Iterable[str] = (), limit: int = DEFAULT_SUBSET_LIMIT,
                 decompose_it: bool = True) -> ZkReport:
    """Moment-angle pipeline: neighbourly spheres integrally, minimally non-Golod spheres locally."""
    K = SimplicialComplex(K.m, K.facets, tuple(dict.fromkeys(K.assertions + tuple(assertions))))
    if is_simplex_boundary(K):
        raise HypothesisError("K is the boundary of a simplex; Z_K is a sphere and is excluded",
                              hypothesis="K is not the boundary of a simplex (Prop 5.1)")
    n = K.dim
    asserted = _asserted_sphere_dim(K)
    if asserted is not None and asserted != n:
        raise InputError(f"asserted sphere:{asserted} but K has dimension {n}")
    sc = sphere_check(K, n)
    if not sc.passed:
        raise HypothesisError(f"K fails the sphere check in dimension {n}:\n{sc}",
                              hypothesis=f"K triangulates S^{n}")
    notes = ["sphere recognition: "
             + ("asserted by the user and " if asserted is not None else "")
             + "necessary conditions checked only"]
    k = neighbourliness(K)
    mmf = minimal_missing_faces(K)
    skel, ledger = zk_skeleton(K, limit)
    zdim = K.m + n + 1
    bottom = 2 * k + 3
    has_face = any(len(f) == k + 2 for f in mmf)
    if not has_face:
        raise HypothesisError(f"no minimal missing face of dimension {k + 1}",
                              hypothesis=f"a minimal missing face of dimension {k + 1}")
    h = skel + GradedGroup.of({zdim: (1, [])})
    base = dict(vertices=K.m, sphere_dim=n, zk_dimension=zdim, connectivity=2 * k + 2,
                neighbourliness=k, minimal_missing_faces=tuple(mmf), skeleton=skel,
                ledger=ledger, sphere_report=sc)
    name = f"Z_K(m={K.m})"
    if n % 2 == 1 and k >= (n - 1) // 2:
        j = (n - 1) // 2
        if j <= 1:
            klass = SkeletonClass.WEDGE_SPHERES
            why = ("[ST Lemma 6.8] skeleton of Z_K for a neighbourly S^3 is a wedge of spheres" if j == 1
                   else "[Prop 5.1] full subcomplexes of a polygon are disjoint arcs, so the skeleton is a wedge of spheres")
        else:
            klass = SkeletonClass.CO_H
            why = "[Prop 5.1] skeleton is a wedge of suspensions, hence co-H"
        M = PDComplex(name, zdim, bottom, h, Flags(klass, Tri.YES, Tri.YES), (
            f"[Prop 5.1] {name}: neighbourly triangulation of S^{n}, minimal missing face of dimension {k + 1} gives a retraction of S^{bottom}",
            why))
        cites = ("Prop 5.1", "Cor 3.2")
        dec = None
        if decompose_it:
            if klass.is_wedge:
                dec = decompose(M)
            else:
                notes.append("skeleton known only to be co-H; A and B not enumerated")
        return ZkReport(**base, branch="neighbourly", complex=M, decomposition=dec,
                        notes=tuple(notes), citations=cites)
    if "minimally_non_Golod" not in K.assertions:
        raise HypothesisError(
            "K is not neighbourly and minimal non-Golodness is not asserted",
            hypothesis="K is minimally non-Golod (assertion 'minimally_non_Golod')")
    plan = zk_plan(K.m, n, k, skel.torsion_primes())
    M = PDComplex(name, zdim, bottom, h, Flags(SkeletonClass.UNKNOWN, Tri.YES, Tri.YES), (
        f"[Thm 8.7] {name}: minimally non-Golod S^{n}, {k}-neighbourly, minimal missing face of dimension {k + 1}",))
    notes.append("minimally non-Golod: user assertion, not verified")
    dec = decompose(M, plan=plan) if decompose_it else None
    return ZkReport(**base, branch="minimally non-Golod", complex=M, plan=plan, decomposition=dec,
                    notes=tuple(notes), citations=plan.citations)
