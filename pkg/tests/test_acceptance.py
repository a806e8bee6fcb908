"""Acceptance checks, one group per criterion; the per-criterion verdict is
printed by the terminal summary hook in conftest.py."""

import random
import time
from fractions import Fraction

import pytest

from shiftvoa import fock
from shiftvoa import lattice as lat
from shiftvoa import voashift as vs
from shiftvoa.qseries import eq_to_order, eta_power, theta_coset

from . import oracles

F = Fraction


def criterion(n):
    return pytest.mark.criterion(n)


def random_dual_shift(rng, L, spread=3):
    """A random element of L° with denominators dividing det G."""
    rows = lat.dual_basis(L)
    y = [rng.randint(-spread, spread) for _ in range(L.rank)]
    return tuple(sum(y[i] * rows[i][j] for i in range(L.rank)) for j in range(L.rank))


def leading_exponent(V):
    return lat.min_norm_in_coset(V.lattice, V.shift_real) / 2 - F(V.rank, 24)


def rank1_battery():
    for N in (1, 2, 3):
        for k in range(2 * N + 1):
            yield N, k, vs.make(lat.named("rank1", 2 * N), [F(k, 2 * N)])


# -- 1 ------------------------------------------------------------------------

def _dual_method_cases():
    rng = random.Random(32)
    cases = []
    for name, param in (("rank1", 2), ("rank1", 4), ("rank1", 6), ("A", 2), ("A", 3)):
        L = lat.named(name, param)
        for r in lat.discriminant(L).representatives:
            cases.append((f"{L.name} rep {[str(x) for x in r]}", L, r))
        for i in range(5):
            cases.append((f"{L.name} random {i}", L, random_dual_shift(rng, L)))
    return cases


@criterion(1)
@pytest.mark.parametrize("label, L, h", _dual_method_cases(), ids=lambda x: x if isinstance(x, str) else "")
def test_c1_direct_equals_theta(label, L, h):
    V = vs.make(L, h)
    assert all(x.denominator <= L.det for x in h)
    order = leading_exponent(V) + 10
    direct = vs.partition_function_direct(V, order)
    theta = vs.partition_function_theta(V, order)
    assert direct.leading()[0] == leading_exponent(V)
    assert eq_to_order(direct, theta, order)


# -- 2 ------------------------------------------------------------------------

@criterion(2)
@pytest.mark.parametrize("k, label", [(0, "IIB+"), (1, "IB+"), (2, "IIA+"), (3, "IA-"), (4, "IIA-")])
def test_c2_rank1_types(k, label):
    V = vs.make(lat.named("rank1", 4), [F(k, 4)])
    # (h, h) = (k/4)^2 * 4
    assert V.central_charge == 1 - 12 * F(k * k, 16) * 4
    assert vs.classify(V).label == label


# -- 3 ------------------------------------------------------------------------

@criterion(3)
@pytest.mark.parametrize("l", [2, 3, 4])
def test_c3_a_series(l):
    L = lat.named("A", l)
    d = lat.discriminant(L)
    gens = [r for r in d.representatives
            if all(not lat.in_lattice(L, [j * x for x in r]) for j in range(1, d.order))]
    assert gens
    for h in gens:
        assert vs.classify(vs.make(L, h)).label == "IA+"
    # V_0 is spanned by e^beta, beta = 0 or a1 + ... + at: the minuscule generators
    rows = lat.dual_basis(L)
    for h in (rows[0], rows[-1]):
        assert vs.classify(vs.make(L, h)).dim_V0 == l + 1


@criterion(3)
def test_c3_non_minuscule_generator():
    # the second fundamental weight of A4 also generates L°/L but has a larger V_0
    L = lat.named("A", 4)
    assert vs.classify(vs.make(L, lat.dual_basis(L)[1])).dim_V0 == 10


# -- 4 ------------------------------------------------------------------------

@criterion(4)
@pytest.mark.parametrize("r", [1, 2])
def test_c4_holomorphic_family(r):
    V = vs.holomorphic_family(8, r)
    assert V.rank == 8 * (3 * r + 1)
    assert V.lattice.det == 1 and len(V.lattice.blocks) == 3 * r + 1
    assert V.shift_norm() == 2 * r and V.central_charge == 8
    lead = -r - F(1, 3)
    order = lead + 3
    direct = vs.partition_function_direct(V, order)
    theta = vs.partition_function_theta(V, order)
    assert theta.leading() == (lead, 1)
    assert [direct.coefficient(lead + j) for j in range(3)] == \
        [theta.coefficient(lead + j) for j in range(3)]


@criterion(4)
def test_c4_e8_power_fast():
    start = time.perf_counter()
    e8 = lat.named("E8")
    single = theta_coset(e8, [0] * 8, 4)
    power = single ** 7
    whole = theta_coset(lat.direct_sum([e8] * 7), [0] * 56, 4)
    assert power == whole
    assert whole.coefficient(1) == 7 * 240
    assert time.perf_counter() - start < 30


# -- 5 ------------------------------------------------------------------------

@criterion(5)
@pytest.mark.parametrize("h, c", [(0, 1), (F(1, 2), -5), (1, -23)])
def test_c5_virasoro_bracket(h, c):
    V = vs.make(lat.named("rank1", 2), [h])
    assert V.central_charge == c
    for m in range(-2, 3):
        for n in range(-2, 3):
            assert fock.bracket_failures(V, m, n, 3) == [], (m, n)


# -- 6 ------------------------------------------------------------------------

def _v0_cases():
    cases = [(f"rank1({2 * N}) k={k}", V) for N, k, V in rank1_battery()]
    rng = random.Random(52)
    grams = [[[2]], [[4]], [[6]], [[8]], [[2, -1], [-1, 2]], [[2, 1], [1, 4]],
             [[4, 2], [2, 4]], [[2, 0], [0, 6]]]
    for i in range(20):
        L = lat.validate(rng.choice(grams))
        cases.append((f"random {i} {L.gram}", vs.make(L, random_dual_shift(rng, L, spread=4))))
    return cases


@criterion(6)
@pytest.mark.parametrize("label, V", _v0_cases(), ids=lambda x: x if isinstance(x, str) else "")
def test_c6_v0_exceeds_vminus1(label, V):
    assert V.is_voa
    assert vs.weight_space_dim(V, 0) > vs.weight_space_dim(V, -1)


# -- 7 ------------------------------------------------------------------------

@criterion(7)
@pytest.mark.parametrize("N, k", [(N, k) for N, k, _ in rank1_battery()])
def test_c7_l1_codim_tracks_self_duality(N, k):
    V = vs.make(lat.named("rank1", 2 * N), [F(k, 2 * N)])
    codim = fock.l1_codimension(V)
    assert codim in (0, 1)
    two_h_in_L = lat.in_lattice(V.lattice, [2 * x for x in V.shift_real])
    assert (codim == 1) == two_h_in_L


# -- 8 ------------------------------------------------------------------------

def _delta_cases():
    rng = random.Random(62)
    pool = [lat.named("rank1", 2), lat.named("rank1", 4), lat.named("rank1", 6),
            lat.named("A", 2), lat.validate([[2, 1], [1, 4]])]
    out = []
    for i in range(5):
        L = pool[i]
        h = random_dual_shift(rng, L)
        while not any(h):
            h = random_dual_shift(rng, L)
        out.append((f"{L.name} h={[str(x) for x in h]}", L, h))
    return out


@criterion(8)
@pytest.mark.parametrize("label, L, h", _delta_cases(), ids=lambda x: x if isinstance(x, str) else "")
def test_c8_delta(label, L, h):
    omega = fock.conformal_vector(L)
    got = fock.delta_apply(L, [-x for x in h], omega)
    expect = {F(0): omega,
              F(-1): fock.weight_one_state(L, h) * -1,
              F(-2): fock.FockVector.basis_vector(fock.vacuum(L.rank), lat.norm(L, h) / 2)}
    assert got == expect
    V = vs.make(L, h)
    order = leading_exponent(V) + 3
    assert fock.trace_identity_check(V, order)
    assert fock.trace_series(V, order) == vs.partition_function_theta(V, order)


# -- 9 ------------------------------------------------------------------------

@criterion(9)
def test_c9_complex_shift():
    V = vs.make(lat.named("rank1", 2), [F(1, 2)], [F(1, 2)])
    viol = vs.truncation_violations(V)
    assert viol == vs.truncation_violations(V, radius_scale=3)
    assert (vs.GradeValue(0, -1), 1) in viol
    wide = oracles.weight_scan(V.lattice.gram, V.shift_real, V.shift_imag, 30, 12)
    assert dict(viol) == {vs.GradeValue(x, y): d for (x, y), d in wide.items() if x < abs(y)}


@criterion(9)
@pytest.mark.parametrize("N, k", [(N, k) for N, k, _ in rank1_battery()])
def test_c9_real_shifts(N, k):
    V = vs.make(lat.named("rank1", 2 * N), [F(k, 2 * N)])
    neg = [(g, d) for g, d in vs.spectrum(V, 0) if g.re < 0]
    assert vs.truncation_violations(V) == neg


# -- 10 -----------------------------------------------------------------------

@criterion(10)
def test_c10_eta_inverse():
    s = eta_power(-1, 11)
    got = [s.coefficient(n - F(1, 24)) for n in range(11)]
    assert got == [oracles.partition_number(n) for n in range(11)]
    assert got == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


@criterion(10)
def test_c10_theta_e8():
    s = theta_coset(lat.named("E8"), [0] * 8, 3)
    counts = oracles.e8_norm_counts(4)
    assert [s.coefficient(n) for n in range(3)] == [counts[0], counts[2], counts[4]] == [1, 240, 2160]
