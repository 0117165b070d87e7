"""Prime-set planners for local decompositions.

Every predicate here answers "does a known theorem guarantee this?"; a False
answer means no guarantee, never that torsion actually exists. Fractional
prime bounds ``p <= x`` are read as ``p <= floor(x)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sympy import primerange

from .errors import HypothesisError, NoPlanError
from .pdcomplex import PDComplex, SkeletonClass, Tri, bottom_degree, require_valid, skeleton_homology


@dataclass(frozen=True)
class Guarantee:
    holds: bool
    note: str = ""

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class LocalizationPlan:
    inverted: frozenset[int]
    k: int
    theorem: str
    resulting_skeleton_class: SkeletonClass
    notes: tuple[str, ...] = ()
    citations: tuple[str, ...] = ()

    def __str__(self) -> str:
        head = f"{self.theorem}: invert {sorted(self.inverted)}, bottom degree {self.k}"
        return head + "".join(f"\n  - {n}" for n in self.notes)


def primes_at_most(bound) -> frozenset[int]:
    """Primes p with p <= floor(bound)."""
    b = Fraction(bound)
    top = b.numerator // b.denominator
    return frozenset(int(p) for p in primerange(2, top + 1)) if top >= 2 else frozenset()


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# homotopy group predicates

def sphere_torsion_free(k: int, m: int, p: int) -> Guarantee:
    """pi_k(S^m) has no p-torsion (Serre's bound k < m + 2p - 3)."""
    if k == m:
        return Guarantee(True, "pi_m(S^m) = Z")
    ok = k < m + 2 * p - 3
    return Guarantee(ok, f"{k} {'<' if ok else '>='} {m} + 2*{p} - 3")


def _guard(m: int, lo: int, k: int) -> Guarantee | None:
    if m < 3:
        return Guarantee(False, f"guard: needs m >= 3, got m={m}")
    if not (lo <= k <= 2 * m - 2):
        return Guarantee(False, f"guard: needs {lo} <= k <= {2 * m - 2}, got k={k}")
    return None


def _prime_large(k: int, m: int, p: int) -> Guarantee:
    ok = 2 * p > k - m + 3
    return Guarantee(ok, f"p={p} {'>' if ok else '<='} ({k}-{m}+3)/2")


def moore_trivial(k: int, m: int, p: int, r: int = 1) -> Guarantee:
    """pi_k(P^{m+1}(p^r)) is trivial."""
    g = _guard(m, m + 1, k)
    return g if g is not None else _prime_large(k, m, p)


def sphere_coeff_trivial(k: int, m: int, p: int, r: int = 1) -> Guarantee:
    """pi_k(S^m; Z/p^r) is trivial."""
    g = _guard(m, m + 1, k)
    return g if g is not None else _prime_large(k, m, p)


def moore_coeff_trivial(k: int, m: int, p: int, r: int, q: int, s: int = 1) -> Guarantee:
    """pi_k(P^{m+1}(p^r); Z/q^s) is trivial."""
    g = _guard(m, m + 2, k)
    if g is not None:
        return g
    if p != q:
        return Guarantee(True, f"distinct primes {p} and {q}")
    return _prime_large(k, m, p)


# plans

def retraction_threshold(n: int, k: int) -> Fraction:
    return Fraction(n - k + 3, 2) if k % 2 else Fraction(n - k + 4, 2)


def _torsion_below(M: PDComplex, k: int) -> frozenset[int]:
    return M.homology.restrict(hi=k - 1).torsion_primes()


def _require_witness(M: PDComplex, k: int) -> list[str]:
    if k % 2:
        return []
    if not M.cup_witness():
        raise HypothesisError(
            f"bottom degree k={k} is even and no generator x of H^{k} with x^2 = 0 is asserted",
            hypothesis=f"a generator x in H^{k}(M) with x^2 = 0",
        )
    src = "flag" if M.flags.cup_square_zero is Tri.YES else "implied by the bottom-cell retraction"
    return [f"k={k} even: witness x^2 = 0 ({src}); demanded for every even k"]


def retraction_primes(M: PDComplex) -> frozenset[int]:
    """Primes to invert so that the bottom Z-summand sphere retracts off M."""
    return retraction_plan(M).inverted


def retraction_plan(M: PDComplex) -> LocalizationPlan:
    require_valid(M)
    n = M.dim
    k = bottom_degree(M)
    if k >= n:
        raise HypothesisError("bottom degree must be below the top", hypothesis="k < n")
    notes = _require_witness(M, k)
    bound = retraction_threshold(n, k)
    below = _torsion_below(M, k)
    inverted = below | primes_at_most(bound)
    notes.append(f"torsion primes below degree {k}: {sorted(below)}")
    notes.append(f"threshold p <= {_fmt(bound)}")
    klass = M.flags.skeleton
    if klass.is_wedge and not skeleton_homology(M).away_from(inverted).torsion_primes():
        klass = SkeletonClass.WEDGE_SPHERES
    return LocalizationPlan(frozenset(inverted), k, "Thm 8.1", klass, tuple(notes),
                            ("Thm 8.1", "Rem 2.16"))


def skeleton_class_plan(M: PDComplex) -> LocalizationPlan:
    """Primes to invert so that the (n-1)-skeleton becomes a wedge."""
    require_valid(M)
    m, n = M.conn_m, M.dim
    d = n - m
    bound = Fraction(d - m + 3, 2)
    k = M.conn_m if M.rank(M.conn_m) else bottom_degree(M)
    if m >= 3 and d <= 2 * m - 2:
        return LocalizationPlan(
            primes_at_most(bound), k, "Lemma 7.7", SkeletonClass.WEDGE_SPHERES_MOORE,
            (f"skeleton dimension {d} <= 2m-2 = {2 * m - 2}", f"threshold p <= {_fmt(bound)}",
             "torsion survives as Moore spaces"),
            ("Lemma 7.7", "Rem 2.16"))
    if d <= 2 * m - 1:
        tors = skeleton_homology(M).torsion_primes()
        return LocalizationPlan(
            tors | primes_at_most(bound), k, "Lemma 7.6", SkeletonClass.WEDGE_SPHERES,
            (f"skeleton dimension {d} <= 2m-1 = {2 * m - 1}", f"threshold p <= {_fmt(bound)}",
             f"torsion primes {sorted(tors)}"),
            ("Lemma 7.6", "Rem 2.16"))
    raise NoPlanError(
        "no plan: skeleton too large for a local wedge decomposition",
        hypothesis="skeleton dimension <= 2m-1",
        reasons=[f"Lemma 7.7: needs m >= 3 and {d} <= {2 * m - 2}",
                 f"Lemma 7.6: needs {d} <= {2 * m - 1}"])


def full_plan(M: PDComplex) -> LocalizationPlan:
    """Pick the first local theorem whose range holds: 8.5, then 8.2, then a combination."""
    require_valid(M)
    m, n = M.conn_m, M.dim
    failed: list[str] = []
    try:
        k = bottom_degree(M)
    except HypothesisError as exc:
        raise NoPlanError(f"no plan: {exc}", hypothesis=exc.hypothesis) from None
    bound = retraction_threshold(n, k)
    in_85 = 3 <= m < n - m and n <= 3 * m - 2
    in_82 = 2 <= m < n and n <= 3 * m - 1
    if in_85 or in_82:
        try:
            witness_notes = _require_witness(M, k)
        except HypothesisError as exc:
            raise NoPlanError(f"no plan: {exc}", hypothesis=exc.hypothesis,
                              reasons=[str(exc)]) from None
    if in_85:
        below = _torsion_below(M, k)
        return LocalizationPlan(
            below | primes_at_most(bound), k, "Thm 8.5", SkeletonClass.WEDGE_SPHERES_MOORE,
            (*witness_notes, f"3 <= m={m} < n-m={n - m} and n={n} <= 3m-2={3 * m - 2}",
             f"torsion primes below degree {k}: {sorted(below)}", f"threshold p <= {_fmt(bound)}"),
            ("Thm 8.5", "Thm 8.1", "Lemma 7.7", "Cor 3.2", "Rem 2.16"))
    failed.append(f"Thm 8.5: needs 3 <= m < n-m and n <= 3m-2 (m={m}, n={n})")
    if in_82:
        tors = M.homology.torsion_primes()
        return LocalizationPlan(
            tors | primes_at_most(bound), k, "Thm 8.2", SkeletonClass.WEDGE_SPHERES,
            (*witness_notes, f"n={n} <= 3m-1={3 * m - 1}", f"torsion primes {sorted(tors)}",
             f"threshold p <= {_fmt(bound)}"),
            ("Thm 8.2", "Thm 8.1", "Lemma 7.6", "Cor 3.2", "Rem 2.16"))
    failed.append(f"Thm 8.2: needs n <= 3m-1, got n={n} > {3 * m - 1}")
    # combine a skeleton route with a retraction route
    try:
        if M.flags.skeleton.is_wedge:
            skel = LocalizationPlan(frozenset(), k, "flag", M.flags.skeleton)
        else:
            skel = skeleton_class_plan(M)
        retr = retraction_plan(M)
    except HypothesisError as exc:
        failed.extend(exc.reasons or [str(exc)])
        raise NoPlanError("no plan: " + "; ".join(failed), hypothesis="a local theorem applies",
                          reasons=failed) from None
    return LocalizationPlan(
        skel.inverted | retr.inverted, k, "Rem 2.16", skel.resulting_skeleton_class,
        (*skel.notes, *retr.notes), tuple(dict.fromkeys(skel.citations + retr.citations)))


def zk_plan(vertices: int, sphere_dim: int, k: int, torsion: frozenset[int]) -> LocalizationPlan:
    """Thm 8.7 primes for a k-neighbourly minimally non-Golod sphere on ``vertices`` vertices."""
    bound = Fraction(vertices + sphere_dim - 4 * k - 2, 2)
    skel_dim = vertices + sphere_dim - 2 * k - 2
    bottom = 2 * k + 3
    if skel_dim > 2 * bottom - 1:
        raise NoPlanError(
            f"skeleton dimension {skel_dim} exceeds {2 * bottom - 1}; the wedge lemma does not apply",
            hypothesis="skeleton dimension <= 2(2k+3)-1")
    return LocalizationPlan(
        frozenset(torsion) | primes_at_most(bound), bottom, "Thm 8.7", SkeletonClass.WEDGE_SPHERES,
        (f"torsion primes of H_*(Z_K): {sorted(torsion)}", f"threshold p <= {_fmt(bound)}",
         "minimally non-Golod: asserted"),
        ("Thm 8.7", "Lemma 8.6", "Lemma 7.6", "Cor 3.2"))
