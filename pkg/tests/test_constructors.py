import random

import pytest
from hypothesis import given, strategies as st

from pdloop.algebra import GradedGroup
from pdloop.constructors import (
    DuanSpec,
    GyrationSpec,
    barden,
    connected_sum,
    duan,
    gyration,
    product,
    sphere_bundle,
)
from pdloop.errors import HypothesisError, InputError
from pdloop.pdcomplex import SkeletonClass, Tri, in_class_a, skeleton, skeleton_homology, validate
from pdloop.spacexpr import HalfSmash, Moore, Sphere, Wedge, homology, normalize, wedge


def S(*ns):
    return normalize(wedge(*(Sphere(n) for n in ns)))


def test_sphere_bundles():
    M = sphere_bundle(2, 5)
    assert M.homology == GradedGroup.of({2: (1, []), 3: (1, []), 5: (1, [])})
    assert in_class_a(M)
    T = sphere_bundle(2, 5, True)
    assert T.homology == M.homology and T.flags == M.flags
    assert sphere_bundle(3, 7).homology.degrees() == [3, 4, 7]
    assert product(3, 3).homology.rank(3) == 2


def test_sphere_bundle_range():
    with pytest.raises(HypothesisError):
        sphere_bundle(4, 5)


def test_connected_sum_with_wu():
    M = connected_sum(product(2, 3), barden("W"))
    assert M.homology == GradedGroup.of({2: (1, [(2, 1, 1)]), 3: (1, []), 5: (1, [])})
    assert M.flags.bottom_cell_retract is Tri.YES
    assert M.flags.skeleton is SkeletonClass.WEDGE_SPHERES_MOORE


def test_connected_sum_additive():
    M = connected_sum(product(2, 3), product(2, 3))
    assert M.rank(2) == M.rank(3) == 2


def test_connected_sum_of_non_members_stays_unknown():
    M = connected_sum(barden("W"), barden("W"))
    assert M.flags.bottom_cell_retract is Tri.UNKNOWN


def test_connected_sum_dimension_mismatch():
    with pytest.raises(InputError):
        connected_sum(product(2, 3), product(2, 4))


def test_gyration_examples():
    G = gyration(product(2, 3), GyrationSpec(2, "0"))
    assert G.dim == 6 and G.conn_m == 2
    assert skeleton(G).expr == S(2, 3, 3, 4)
    GW = gyration(barden("W"), GyrationSpec(2, "1"))
    assert skeleton(GW).expr == Wedge((Moore(2, 3), Moore(2, 4)))
    assert GW.flags.bottom_cell_retract is Tri.UNKNOWN
    G3 = gyration(product(3, 4), GyrationSpec(3, "0"))
    assert G3.dim == 9 and skeleton(G3).expr == S(3, 4, 5, 6)


def test_gyration_needs_known_skeleton():
    M = product(2, 3).with_flags(skeleton=SkeletonClass.UNKNOWN)
    with pytest.raises(HypothesisError, match="cannot expand half-smash"):
        gyration(M, GyrationSpec(2))


def test_gyration_k_at_least_two():
    with pytest.raises(InputError):
        GyrationSpec(1)


def test_barden_blocks():
    W = barden("W")
    assert W.homology == GradedGroup.of({2: (0, [(2, 1, 1)]), 5: (1, [])})
    assert skeleton(W).expr == Moore(2, 3)
    M6 = barden("M6")
    assert homology(skeleton(M6).expr) == skeleton_homology(M6)
    assert barden("X8").homology.torsion(2)[0].order == 8
    with pytest.raises(InputError):
        barden("X6")
    with pytest.raises(InputError):
        barden("Q")


def test_duan_examples():
    D = duan(DuanSpec(r=1))
    assert D.dim == 6
    assert (D.rank(2), D.rank(3), D.rank(4)) == (1, 4, 1)
    assert in_class_a(D)
    E = duan(DuanSpec(r=0, ks=(2,), H="W", w2_nonzero=True))
    assert E.flags.skeleton is SkeletonClass.WEDGE_SPHERES_MOORE
    assert Moore(2, 3) in skeleton(E).expr.parts


def test_duan_spec_validation():
    with pytest.raises(InputError):
        DuanSpec(w2_nonzero=True)
    with pytest.raises(InputError):
        DuanSpec(ks=(1,))
    with pytest.raises(InputError):
        DuanSpec(H="M3")


# properties

def _blocks(n):
    out = [sphere_bundle(a, n) for a in range(2, n // 2 + 1) if a < n - 1]
    out += [sphere_bundle(a, n, True) for a in range(2, n // 2 + 1) if a < n - 1]
    if n == 5:
        out += [barden(b) for b in ("W", "M3", "X4")]
    return out


dims = st.integers(4, 9)


@st.composite
def triples(draw):
    n = draw(dims)
    bs = _blocks(n)
    return [draw(st.sampled_from(bs)) for _ in range(3)]


def _key(M):
    return (M.dim, M.conn_m, M.homology, M.flags)


@given(triples())
def test_connected_sum_commutative(t):
    a, b, _ = t
    assert _key(connected_sum(a, b)) == _key(connected_sum(b, a))


@given(triples())
def test_connected_sum_associative(t):
    a, b, c = t
    assert _key(connected_sum(connected_sum(a, b), c)) == _key(connected_sum(a, connected_sum(b, c)))


@given(triples(), st.integers(2, 4))
def test_constructor_outputs_validate(t, k):
    M = connected_sum(connected_sum(t[0], t[1]), t[2])
    assert validate(M).ok
    if M.flags.skeleton.is_co_h:
        assert validate(gyration(M, GyrationSpec(k))).ok


@given(triples(), st.integers(2, 4), st.integers(2, 4))
def test_iterated_gyration_is_double_half_smash(t, k, l):
    M = connected_sum(t[0], t[1])
    G = gyration(gyration(M, GyrationSpec(k)), GyrationSpec(l))
    assert G.dim == M.dim + k - 1 + l - 1 and G.conn_m == M.conn_m
    x = skeleton(M).expr
    expected = normalize(HalfSmash(HalfSmash(x, Sphere(k - 1)), Sphere(l - 1)))
    assert skeleton(G).expr == expected


@given(st.integers(0, 3), st.lists(st.sampled_from([2, 3, 4, 5]), max_size=3),
       st.sampled_from([None, "S2xtS3", "W", "X2"]))
def test_duan_second_betti_number(r, ks, H):
    D = duan(DuanSpec(r=r, ks=tuple(ks), H=H))
    assert validate(D).ok
    assert D.rank(2) == r + (1 if H == "S2xtS3" else 0)
    # with nothing else summed on, S^3 x S^3 is itself in class A
    assert in_class_a(D) == (r >= 1 or H == "S2xtS3" or (not ks and H is None))
