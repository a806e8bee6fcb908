from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from shiftvoa import lattice as lat
from shiftvoa import linalg
from shiftvoa.errors import (
    BadParameter,
    DimensionMismatch,
    EmptyInput,
    NegativeBound,
    NotEven,
    NotPositiveDefinite,
    NotSymmetric,
    UnknownName,
)

from . import oracles

F = Fraction

SMALL_GRAMS = [
    [[2]], [[4]], [[6]],
    [[2, -1], [-1, 2]],
    [[2, 1], [1, 4]],
    [[4, 1], [1, 6]],
    [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
    [[4, 1, 0], [1, 2, 1], [0, 1, 6]],
]


def test_validate_smallest():
    L = lat.validate([[2]])
    assert L.rank == 1 and L.det == 2


def test_validate_a2():
    L = lat.validate([[2, -1], [-1, 2]])
    assert L.det == 3 == oracles.det_cofactor(L.gram)


@pytest.mark.parametrize("gram, err", [
    ([[1]], NotEven),
    ([[2, 1], [0, 2]], NotSymmetric),
    ([[2, 3], [3, 2]], NotPositiveDefinite),
    ([[-2]], NotPositiveDefinite),
    ([[2, 1]], DimensionMismatch),
    ([], EmptyInput),
])
def test_validate_errors(gram, err):
    with pytest.raises(err):
        lat.validate(gram)


def test_not_positive_definite_names_minor():
    with pytest.raises(NotPositiveDefinite, match="size 2"):
        lat.validate([[2, 2, 0], [2, 2, 0], [0, 0, 2]])


def test_named():
    assert lat.named("rank1", 4).gram == ((4,),)
    assert lat.named("A", 2).gram == ((2, -1), (-1, 2))
    e8 = lat.named("E8")
    assert e8.det == 1
    assert oracles.det_cofactor(e8.gram) == 1
    with pytest.raises(UnknownName):
        lat.named("D4")
    with pytest.raises(BadParameter):
        lat.named("rank1", 3)
    with pytest.raises(BadParameter):
        lat.named("rank1", 0)


def test_e8_roots():
    e8 = lat.named("E8")
    pts = lat.enumerate_with_norms(e8, (0,) * 8, 2)
    assert len(pts) == 241
    assert sorted(q for _, q in pts)[1] == 2  # minimum norm


def test_direct_sum():
    r2 = lat.named("rank1", 2)
    assert lat.direct_sum([r2]).gram == r2.gram
    e8 = lat.named("E8")
    s = lat.direct_sum([e8, e8])
    assert s.rank == 16 and s.det == 1
    t = lat.direct_sum([lat.named("A", 2), lat.named("rank1", 4)])
    assert t.rank == 3 and t.det == 12
    assert len(s.blocks) == 2
    with pytest.raises(EmptyInput):
        lat.direct_sum([])


def test_inner():
    r4 = lat.named("rank1", 4)
    assert lat.inner(r4, [F(1, 4)], [F(1, 4)]) == F(1, 4)
    a2 = lat.named("A", 2)
    assert lat.inner(a2, [0, 0], [3, F(1, 7)]) == 0
    assert lat.inner(a2, [1, 0], [0, 1]) == -1
    with pytest.raises(DimensionMismatch):
        lat.inner(a2, [1], [1, 0])


def test_dual_basis():
    assert lat.dual_basis(lat.named("rank1", 2)) == [[F(1, 2)]]
    assert lat.dual_basis(lat.named("A", 2)) == [[F(2, 3), F(1, 3)], [F(1, 3), F(2, 3)]]
    inv = lat.dual_basis(lat.named("E8"))
    assert all(x.denominator == 1 for row in inv for x in row)


@pytest.mark.parametrize("gram", SMALL_GRAMS + [lat.E8_GRAM])
def test_dual_basis_is_inverse(gram):
    L = lat.validate(gram)
    prod = linalg.matmul([list(r) for r in L.gram], lat.dual_basis(L))
    assert prod == linalg.identity(L.rank)


def test_membership():
    r4 = lat.named("rank1", 4)
    assert not lat.in_lattice(r4, [F(1, 2)])
    assert lat.in_dual(r4, [F(1, 2)])
    assert lat.in_lattice(r4, [3])
    assert lat.in_dual(lat.named("A", 2), [F(1, 3), F(2, 3)])
    assert not lat.in_dual(lat.named("A", 2), [F(1, 3), F(1, 3)])
    with pytest.raises(DimensionMismatch):
        lat.in_dual(r4, [1, 2])


def test_discriminant_examples():
    assert lat.discriminant(lat.named("E8")).order == 1
    d = lat.discriminant(lat.named("A", 2))
    assert d.order == 3 and d.elementary_divisors == (3,)
    d = lat.discriminant(lat.named("rank1", 4))
    assert d.order == 4
    assert d.representatives == ((0,), (F(1, 4),), (F(1, 2),), (F(3, 4),))


@pytest.mark.parametrize("gram", SMALL_GRAMS + [[[2, 0], [0, 2]], [[4, 2], [2, 4]]])
def test_discriminant_properties(gram):
    L = lat.validate(gram)
    d = lat.discriminant(L)
    prod = 1
    for e in d.elementary_divisors:
        prod *= e
    assert prod == d.order == oracles.det_cofactor(L.gram)
    assert len(d.representatives) == d.order
    for r in d.representatives:
        assert lat.in_dual(L, r)
    for r, s in zip(d.representatives, d.representatives[1:]):
        assert not lat.in_lattice(L, [x - y for x, y in zip(r, s)])
    reps = d.representatives
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            assert not lat.in_lattice(L, [x - y for x, y in zip(reps[i], reps[j])])


def test_smith_form_transforms():
    g = [[4, 2], [2, 4]]
    left, diag, right = linalg.smith_normal_form(g)
    assert linalg.matmul(linalg.matmul(left, g), right) == diag
    assert diag[0][0] == 2 and diag[1][1] == 6
    assert abs(oracles.det_cofactor(left)) == abs(oracles.det_cofactor(right)) == 1


def test_enumerate_small():
    r2 = lat.named("rank1", 2)
    assert lat.enumerate_in_ellipsoid(r2, [0], 2) == [(-1,), (0,), (1,)]
    for gram in SMALL_GRAMS:
        L = lat.validate(gram)
        assert lat.enumerate_in_ellipsoid(L, [0] * L.rank, 0) == [(0,) * L.rank]
    with pytest.raises(NegativeBound):
        lat.enumerate_in_ellipsoid(r2, [0], -1)


centers = st.fractions(min_value=-3, max_value=3, max_denominator=6)


@settings(max_examples=60, deadline=None)
@given(gram=st.sampled_from(SMALL_GRAMS), data=st.data(),
       bound=st.fractions(min_value=0, max_value=20, max_denominator=4))
def test_enumeration_matches_box_scan(gram, data, bound):
    L = lat.validate(gram)
    c = data.draw(st.lists(centers, min_size=L.rank, max_size=L.rank))
    assert lat.enumerate_in_ellipsoid(L, c, bound) == oracles.box_scan(gram, c, bound)


@settings(max_examples=30, deadline=None)
@given(gram=st.sampled_from(SMALL_GRAMS), b1=st.integers(0, 10), b2=st.integers(0, 10))
def test_enumeration_symmetric_and_monotone(gram, b1, b2):
    L = lat.validate(gram)
    zero = [0] * L.rank
    lo, hi = sorted((b1, b2))
    small = lat.enumerate_in_ellipsoid(L, zero, lo)
    big = lat.enumerate_in_ellipsoid(L, zero, hi)
    assert (0,) * L.rank in small
    assert set(small) <= set(big)
    assert {tuple(-x for x in v) for v in big} == set(big)


def test_enumeration_order_is_lexicographic():
    pts = lat.enumerate_in_ellipsoid(lat.named("A", 2), [F(1, 3), 0], 6)
    assert pts == sorted(pts)


def test_min_norm_in_coset():
    assert lat.min_norm_in_coset(lat.named("rank1", 4), [F(1, 4)]) == F(1, 4)
    assert lat.min_norm_in_coset(lat.named("A", 2), [F(1, 3), F(2, 3)]) == F(2, 3)
