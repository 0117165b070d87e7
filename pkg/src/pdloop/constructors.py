"""Constructors for duality complexes whose class A flags carry citations.

Provenance records start with a bracketed rule tag, e.g. ``[Prop 6.1]``;
reports lift those tags into their citation lists.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from sympy import factorint

from .algebra import GradedGroup, TorsionSummand
from .errors import HypothesisError, InputError
from .pdcomplex import (
    Flags,
    PDComplex,
    SkeletonClass,
    Tri,
    in_class_a,
    require_valid,
    skeleton_homology,
)
from .spacexpr import HalfSmash, Sphere, homology, normalize, wedge_from_homology


def _retract_flags(skel: SkeletonClass, retract: bool) -> Flags:
    r = Tri.YES if retract else Tri.UNKNOWN
    # a retraction of the bottom sphere forces a bottom class with zero square
    return Flags(skel, r, r)


def sphere_bundle(m: int, n: int, twisted: bool = False) -> PDComplex:
    """An S^{n-m}-bundle over S^m with a section-free homology model.

    Only the homology and the class A flags are modelled; ``twisted`` is a
    label. A nontrivial bundle is only known to be in class A when the fibre
    sphere is at least as large as the base.
    """
    if not (isinstance(m, int) and isinstance(n, int) and 2 <= m < n - 1):
        raise HypothesisError(f"sphere bundle needs 2 <= m < n-1, got m={m}, n={n}",
                              hypothesis="2 <= m < n-1")
    f = n - m
    h = GradedGroup.of({m: (1, []), n: (1, [])}) + GradedGroup.of({f: (1, [])})
    name = f"S{m}x{'t' if twisted else ''}S{f}"
    if twisted and m > f:
        flags = Flags(SkeletonClass.WEDGE_SPHERES, Tri.UNKNOWN, Tri.UNKNOWN)
        prov = (f"[Lemma 5.1] S^{f}-bundle over S^{m}: base larger than fibre, retraction not asserted",)
    else:
        flags = _retract_flags(SkeletonClass.WEDGE_SPHERES, True)
        kind = "nontrivial" if twisted else "trivial"
        prov = (f"[Lemma 5.1] {kind} S^{f}-bundle over S^{m} lies in class A",)
    return PDComplex(name, n, m, h, flags, prov)


def product(a: int, b: int) -> PDComplex:
    """S^a x S^b with a <= b."""
    a, b = sorted((a, b))
    return sphere_bundle(a, a + b, twisted=False)


def _orient(M: PDComplex, N: PDComplex) -> bool:
    return in_class_a(M) and N.flags.skeleton.is_co_h and M.conn_m <= N.conn_m


def connected_sum(M: PDComplex, N: PDComplex, name: str | None = None) -> PDComplex:
    if M.dim != N.dim:
        raise InputError(f"connected sum needs equal dimensions, got {M.dim} and {N.dim}")
    require_valid(M)
    require_valid(N)
    n = M.dim
    h = skeleton_homology(M) + skeleton_homology(N) + GradedGroup.of({n: (1, [])})
    skel = M.flags.skeleton.join(N.flags.skeleton)
    if _orient(M, N):
        retract, via = True, f"{M.name} in class A"
    elif _orient(N, M):
        retract, via = True, f"{N.name} in class A"
    else:
        retract, via = False, None
    flags = _retract_flags(skel, retract)
    name = name or f"{M.name}#{N.name}"
    rec = f"[Prop 6.1] {name}: skeleton is the wedge of the skeleta"
    rec += f"; class A via {via}" if via else "; no summand certifies class A"
    return PDComplex(name, n, min(M.conn_m, N.conn_m), h, flags,
                     M.provenance + N.provenance + (rec,))


def connected_sum_all(parts: list[PDComplex], name: str | None = None) -> PDComplex:
    if not parts:
        raise InputError("connected sum of nothing")
    acc = parts[0]
    for p in parts[1:]:
        acc = connected_sum(acc, p)
    if name:
        acc = PDComplex(name, acc.dim, acc.conn_m, acc.homology, acc.flags, acc.provenance)
    return acc


@dataclass(frozen=True)
class GyrationSpec:
    k: int
    tau: str = "0"

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 2:
            raise InputError(f"gyration needs k >= 2, got {self.k!r}")


def gyration(M: PDComplex, g: GyrationSpec) -> PDComplex:
    """The gyration G^k_tau(M): skeleton is the half-smash of M's skeleton with S^{k-1}."""
    require_valid(M)
    if not M.flags.skeleton.is_co_h:
        raise HypothesisError(f"cannot expand half-smash: skeleton of {M.name} is unknown",
                              hypothesis="skeleton is a co-H-space")
    k = g.k
    hbar = skeleton_homology(M)
    new_skel = hbar + hbar.shift(k - 1)
    if M.flags.skeleton.is_wedge:
        expr = normalize(HalfSmash(wedge_from_homology(hbar), Sphere(k - 1)))
        assert homology(expr) == new_skel
    dim = M.dim + k - 1
    h = new_skel + GradedGroup.of({dim: (1, [])})
    retract = M.flags.bottom_cell_retract is Tri.YES
    flags = Flags(M.flags.skeleton, M.flags.bottom_cell_retract,
                  Tri.YES if retract else Tri.UNKNOWN)
    name = f"G{k}_{g.tau}({M.name})"
    recs = [f"[Lemma 6.5] {name}: skeleton is skel({M.name}) half-smash S^{k - 1}; tau={g.tau}",
            f"[Lemma 6.6] {name}: skeleton class {M.flags.skeleton.value} preserved"]
    if retract:
        recs.append(f"[Lemma 6.7] {name}: bottom-cell retraction preserved")
    return PDComplex(name, dim, M.conn_m, h, flags, M.provenance + tuple(recs))


# Barden blocks and Duan's 6-manifolds

def _torsion_square(k: int) -> list[TorsionSummand]:
    return [TorsionSummand(int(p), int(r), 2) for p, r in factorint(k).items()]


_BLOCK = re.compile(r"^(S2xS3|S2xtS3|W|M_?(\d+)|X_?(\d+))$")


def barden(block: str) -> PDComplex:
    """A simply connected 5-manifold building block."""
    mt = _BLOCK.match(block.strip()) if isinstance(block, str) else None
    if not mt:
        raise InputError(f"unknown Barden block {block!r}; use S2xS3, S2xtS3, W, M<k>, X<2^i>")
    b = mt.group(1)
    moore = SkeletonClass.WEDGE_SPHERES_MOORE
    if b == "S2xS3":
        return sphere_bundle(2, 5, False)
    if b == "S2xtS3":
        return sphere_bundle(2, 5, True)
    if b == "W":
        h = GradedGroup.of({2: (0, [(2, 1, 1)])})
        return PDComplex("W", 5, 2, h, Flags(moore), ("[Barden] Wu manifold: skeleton P^3(2)",))
    if mt.group(2) is not None:
        k = int(mt.group(2))
        if k < 2:
            raise InputError(f"M_k needs k >= 2, got {k}")
        h = GradedGroup.of({2: (0, _torsion_square(k))})
        return PDComplex(f"M{k}", 5, 2, h, Flags(moore),
                         (f"[Barden] M_{k}: H_2 = (Z/{k})^2, skeleton P^3({k}) v P^3({k})",))
    q = int(mt.group(3))
    f = factorint(q)
    if set(f) != {2}:
        raise InputError(f"X block needs a power of two >= 2, got {q}")
    h = GradedGroup.of({2: (0, [(2, f[2], 2)])})
    return PDComplex(f"X{q}", 5, 2, h, Flags(moore),
                     (f"[Barden] X_{q}: H_2 = (Z/{q})^2",))


@dataclass(frozen=True)
class DuanSpec:
    r: int = 0
    ks: tuple[int, ...] = ()
    H: str | None = None
    w2_nonzero: bool | None = None

    def __post_init__(self):
        if not isinstance(self.r, int) or self.r < 0:
            raise InputError(f"r must be >= 0, got {self.r!r}")
        object.__setattr__(self, "ks", tuple(self.ks))
        for k in self.ks:
            if not isinstance(k, int) or k < 2:
                raise InputError(f"torsion parameters must be integers >= 2, got {k!r}")
        if self.H is not None:
            b = barden(self.H).name
            if b not in ("S2xtS3", "W") and not b.startswith("X"):
                raise InputError(f"H must be S2xtS3, W or X<2^i>, got {self.H}")
        w2 = self.H is not None if self.w2_nonzero is None else self.w2_nonzero
        if w2 != (self.H is not None):
            raise InputError("w2 nonzero holds exactly when the summand H is present")
        object.__setattr__(self, "w2_nonzero", w2)


def duan(spec: DuanSpec) -> PDComplex:
    """(S^3 x S^3) # r G^2_0(S^2 x S^3) # G^2_1(M_{k_j}) [# G^2_1(H)]."""
    g0 = GyrationSpec(2, "0")
    g1 = GyrationSpec(2, "1")
    parts = [product(3, 3)]
    parts += [gyration(product(2, 3), g0)] * spec.r
    parts += [gyration(barden(f"M{k}"), g1) for k in spec.ks]
    if spec.H is not None:
        parts.append(gyration(barden(spec.H), g1))
    label = f"Duan(r={spec.r};ks={','.join(map(str, spec.ks))};H={spec.H or '-'})"
    M = connected_sum_all(parts, label)
    return M.with_provenance(
        f"[Thm 6.11] {label}: summand #0 with S^6 modelled as the identity")
