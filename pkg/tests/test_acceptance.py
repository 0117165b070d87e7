"""Acceptance suite: one test per criterion, summarized as PASS/FAIL lines at the end of the run."""

import random
import time
from itertools import combinations_with_replacement

import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form

from helpers import perturb, random_pd
from pdloop.algebra import FieldSpec, GradedGroup, QQ, graded, snf
from pdloop.constructors import (
    DuanSpec,
    GyrationSpec,
    barden,
    connected_sum,
    connected_sum_all,
    duan,
    gyration,
    product,
    sphere_bundle,
)
from pdloop.decompose import compute_AB, cross_check, decompose, loop_series_decomposition, loop_series_one_relator
from pdloop.errors import NoPlanError
from pdloop.localize import full_plan
from pdloop.momentangle import (
    RP2_6,
    boundary_matrix,
    cycle,
    is_k_neighbourly,
    join,
    minimal_missing_faces,
    reduced_homology,
    simplex_boundary,
    sphere_check,
    zk_decompose,
    zk_skeleton,
)
from pdloop.pdcomplex import PDComplex, Tri, skeleton_homology, validate
from pdloop.spacexpr import Moore, Sphere, Suspension, homology, normalize, wedge

CAP = 32
t = sympy.symbols("t")


def oracle_series(expr, cap=CAP):
    poly = sympy.series(expr, t, 0, cap + 1).removeO()
    return [int(poly.coeff(t, i)) for i in range(cap + 1)]


# 1

@pytest.mark.criterion(1, "worked example A and B for the two sums with the Wu manifold")
def test_c1_worked_example():
    start = time.perf_counter()
    W = barden("W")
    for base in (product(2, 3), sphere_bundle(2, 5, True)):
        A, B = compute_AB(connected_sum(base, W))
        assert A == normalize(wedge(Sphere(3), Moore(2, 3)))
        assert B == Moore(2, 3)
    assert time.perf_counter() - start < 1.0


# 2

def _blocks():
    out = {}
    for a in range(2, 6):
        for b in range(a, 6):
            if a + b <= 9:
                n = a + b
                out.setdefault(n, []).append(product(a, b))
                out[n].append(sphere_bundle(a, n, True))
    return out


def acceptance_corpus() -> list[PDComplex]:
    sums = []
    for n, blocks in sorted(_blocks().items()):
        for size in (1, 2, 3):
            for parts in combinations_with_replacement(range(len(blocks)), size):
                sums.append(connected_sum_all([blocks[i] for i in parts]))
    gyrated = [gyration(M, GyrationSpec(k, "0")) for M in sums for k in (2, 3)]
    duans = [duan(DuanSpec(r=r, ks=ks)) for r in (1, 2) for ks in ((2,), (3,), (2, 3))]
    return sums + gyrated + duans


@pytest.mark.criterion(2, "decomposition and one-relator series agree through degree 32")
def test_c2_hilbert_cross_check():
    corpus = acceptance_corpus()
    assert len(corpus) >= 20
    start = time.perf_counter()
    checked = 0
    for M in corpus:
        d = decompose(M)
        for field in (QQ, FieldSpec(2), FieldSpec(3), FieldSpec(5)):
            if field.char in d.localization:
                continue
            r = cross_check(M, field, CAP)
            assert r.equal, (M.name, str(field), r.first_disagreement)
            assert len(r.decomposition_series.coeffs) == CAP + 1
            checked += 1
    elapsed = time.perf_counter() - start
    assert checked >= 4 * 20
    assert elapsed < 10.0, elapsed


# 3

@pytest.mark.criterion(3, "closed-form series")
def test_c3_closed_forms():
    d = decompose(product(2, 3))
    assert list(loop_series_decomposition(d, QQ, CAP).coeffs) == oracle_series(1 / ((1 - t) * (1 - t**2)))

    M = connected_sum(product(2, 3), product(2, 3))
    expected = oracle_series(1 / (1 - 2 * t - 2 * t**2 + t**3))
    assert expected[:5] == [1, 2, 6, 15, 40]
    assert list(loop_series_decomposition(decompose(M), QQ, CAP).coeffs) == expected
    assert list(loop_series_one_relator(M, QQ, CAP).coeffs) == expected

    z = zk_decompose(join(simplex_boundary(2), simplex_boundary(2)))
    assert list(loop_series_decomposition(z.decomposition, QQ, CAP).coeffs) == oracle_series(1 / (1 - t**4) ** 2)


# 4

def _S(*ns):
    return wedge(*(Sphere(n) for n in ns))


def _P(q, copies):
    return wedge(*(Moore(q, 3) for _ in range(copies)))


def _plus_suspension(x):
    return wedge(x, Suspension(x))


@pytest.mark.criterion(4, "gyration skeletons match the listed wedges")
def test_c4_gyration_table():
    g0, g1 = GyrationSpec(2, "0"), GyrationSpec(2, "1")
    table = [
        (gyration(product(2, 3), g0), _plus_suspension(_S(2, 3))),
        (gyration(barden("M3"), g1), _plus_suspension(_P(3, 2))),
        (gyration(barden("M5"), g1), _plus_suspension(_P(5, 2))),
        (gyration(barden("S2xtS3"), g1), _plus_suspension(_S(2, 3))),
        (gyration(barden("W"), g1), _plus_suspension(Moore(2, 3))),
        (gyration(barden("X4"), g1), _plus_suspension(_P(4, 2))),
    ]
    for M, listed in table:
        assert M.dim == 6
        assert skeleton_homology(M) == homology(listed), M.name


# 5

@pytest.mark.criterion(5, "moment-angle pipeline")
def test_c5_moment_angle():
    K = join(simplex_boundary(2), simplex_boundary(2))
    assert sphere_check(K, 3).passed
    assert is_k_neighbourly(K, 1)
    assert {frozenset(f) for f in minimal_missing_faces(K)} == {frozenset({1, 2, 3}), frozenset({4, 5, 6})}
    assert zk_skeleton(K)[0] == GradedGroup.of({5: (2, [])})
    r = zk_decompose(K)
    assert r.decomposition.statement.endswith("ΩS⁵ × ΩS⁵")

    square, _ = zk_skeleton(cycle(4))
    # product-minus-top oracle: Z of the 4-cycle is S^3 x S^3
    oracle = GradedGroup.of({3: (2, [])})
    assert square == oracle
    assert square == GradedGroup.of({2: (2, [])}), f"4-cycle skeleton is {square}"


# 6

def _pd(dim, m, witness=False, **degs):
    M = PDComplex("X", dim, m, graded(**degs))
    return M.with_flags(cup_square_zero=Tri.YES) if witness else M


@pytest.mark.criterion(6, "localization plans")
def test_c6_plan_odd_k():
    p = full_plan(_pd(7, 3, d3=(2, []), d4=(2, [])))
    assert p.k == 3 and p.inverted == {2, 3}


@pytest.mark.criterion(6, "localization plans")
def test_c6_plan_even_k_with_torsion():
    M = _pd(10, 4, witness=True, d4=(1, [(7, 2, 1)]), d5=(0, [(7, 2, 1)]), d6=(1, []))
    assert validate(M).ok
    p = full_plan(M)
    assert p.theorem == "Thm 8.5"
    assert 7 not in p.inverted
    assert p.inverted == {2, 3}, f"plan inverts {sorted(p.inverted)}"


@pytest.mark.criterion(6, "localization plans")
def test_c6_no_plan():
    with pytest.raises(NoPlanError):
        full_plan(_pd(7, 2, d2=(1, []), d5=(1, [])))


# 7

def _snf_oracle_homology(K):
    """Reduced homology from sympy Smith forms of the boundary matrices."""
    faces = sorted(K.faces)
    top = max(bin(f).count("1") for f in faces) - 1
    by = {d: [f for f in faces if bin(f).count("1") == d + 1] for d in range(top + 1)}
    by[-1] = [0]

    def invariants(d):
        if d < 0 or d > top:
            return []
        mat = boundary_matrix(by[d], by[d - 1])
        if not mat or not mat[0]:
            return []
        s = smith_normal_form(sympy.Matrix(mat), domain=sympy.ZZ)
        return [abs(int(s[i, i])) for i in range(min(s.shape)) if s[i, i] != 0]

    out = {}
    for d in range(top + 1):
        cycles = len(by[d]) - len(invariants(d))
        bounds = invariants(d + 1)
        rank = cycles - len(bounds)
        tors = [q for q in bounds if q > 1]
        if rank or tors:
            out[d] = (rank, tors)
    return out


@pytest.mark.criterion(7, "simplicial homology kernel")
def test_c7_simplicial_homology():
    for k in range(1, 6):
        K = simplex_boundary(k)
        assert reduced_homology(K) == GradedGroup.of({k - 1: (1, [])})
        assert _snf_oracle_homology(K) == {k - 1: (1, [])}
    assert reduced_homology(RP2_6) == GradedGroup.of({1: (0, [(2, 1, 1)])})
    assert _snf_oracle_homology(RP2_6) == {1: (0, [2])}
    faces = sorted(RP2_6.faces)
    tri = [f for f in faces if bin(f).count("1") == 3]
    edges = [f for f in faces if bin(f).count("1") == 2]
    assert snf(boundary_matrix(tri, edges)) == [1] * 9 + [2]


# 8

@pytest.mark.criterion(8, "duality fuzzer")
def test_c8_duality_fuzzer():
    rng = random.Random(20261015)
    start = time.perf_counter()
    for _ in range(500):
        M = random_pd(rng)
        assert validate(M).ok, str(validate(M))
        bad, d = perturb(M, rng)
        rep = validate(bad)
        assert not rep.ok
        assert d in rep.degrees()
    assert time.perf_counter() - start < 5.0
