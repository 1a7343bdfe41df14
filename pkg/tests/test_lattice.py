import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from drinfeld_local import GF, CoeffRing, DrinfeldModule, LocalField, LogNorm
from drinfeld_local import coeff_ring as cr
from drinfeld_local import lattice as lat
from drinfeld_local.errors import DependentBasisError, PreconditionError, ReductionError
from drinfeld_local.verify import random_frame_lattice


@pytest.fixture
def A2():
    return CoeffRing(GF(2))


def ln(x, q=2):
    return LogNorm.from_rational(Fraction(x), q)


def test_two_period_example(A2, K2):
    D = DrinfeldModule.from_string(A2, K2, "pi + T")
    lam, mu = K2.parse("pi^-3"), K2.parse("pi^-1")
    B = lat.reduce(lat.NormedLattice.drinfeld(D, [lam, lam + mu]))
    assert sorted(lat.height(x) for x in B.values) == [1, 3]
    # rank 1: the norm is the height itself, so the log-norms are 0 and log_2 3
    assert [str(e) for e in lat.successive_minima(B)] == ["0", "log(3)"]
    assert lat.successive_minima(B)[0] == ln(0)


def _brute_minima(L, max_deg):
    """i-th minimum: least norm admitting i independent vectors (coefficients of bounded degree)."""
    A = L.A
    pool = list(A.enumerate_by_degree(max_deg))
    vecs = []
    for combo in itertools.product(pool, repeat=L.rank):
        if any(combo):
            x = L.combine(list(combo), L.generators)
            vecs.append((L.norm(x), x))
    vecs.sort(key=lambda p: p[0])
    minima, chosen = [], []
    for nrm, x in vecs:
        if cr.rank(chosen + [x], A) > len(chosen):
            chosen.append(x)
            minima.append(nrm)
            if len(chosen) == L.rank:
                break
    return minima


def test_successive_minima_against_brute_force(A2):
    rng = random.Random(11)
    for _ in range(15):
        L = random_frame_lattice(A2, 2, rng, max_deg=1)
        B = lat.reduce(L)
        assert lat.successive_minima(B) == _brute_minima(L, 3)


@pytest.mark.parametrize("frame,expected", [([0, 0], -2), ([1], 0), ([Fraction(1, 2)], 0),
                                            ([Fraction(-1, 2), 2], 0)])
def test_volume_examples(A2, frame, expected):
    B = lat.reduce(lat.NormedLattice.abstract(A2, frame))
    rep = lat.volume_orthogonal(B)
    assert rep.vol_log_q == expected
    assert rep.vol == Fraction(2) ** expected
    assert rep.euler_characteristic == -expected


def _smith_oracle_2x2(M, A):
    g = A.zero()
    for x in itertools.chain(*M):
        g = cr.gcd(g, x) if g else x.monic()
    det = cr.determinant(M, A)
    return g.degree() + (det.monic() // g).degree()


def test_volume_det_against_smith_oracle(A2):
    rng = random.Random(12)
    checked = 0
    while checked < 30:
        L = random_frame_lattice(A2, 2, rng)
        B = lat.reduce(L)
        M = [[A2.random_element(rng, 2) for _ in range(2)] for _ in range(2)]
        if not cr.determinant(M, A2):
            continue
        rep = lat.volume_det(B, M)
        base = lat.volume_orthogonal(B).vol_log_q
        assert rep.routes["smith"] - base == _smith_oracle_2x2(M, A2)
        assert rep.agree
        checked += 1


def test_count_example(A2):
    # frame (0, 1/2): ball of radius 2 holds deg a <= 1 and deg b <= 0
    B = lat.reduce(lat.NormedLattice.abstract(A2, [0, Fraction(1, 2)]))
    assert lat.count_points(B, 0, 1) == 8
    assert lat.count_points_enumerate(B, 0, 1) == 8
    assert lat.count_points_frame(B.lattice, 0, 1, enumerate_cap=1 << 10) == 8


def test_count_routes_agree_and_linear_count_matches_enumeration(A2):
    rng = random.Random(13)
    for _ in range(25):
        A = CoeffRing(GF(rng.choice((2, 3))))
        L = random_frame_lattice(A, rng.randint(1, 2), rng)
        B = lat.reduce(L)
        for i in range(0, 3):
            enum = lat.count_points_frame(L, 0, i, enumerate_cap=1 << 14)
            linear = lat.count_points_frame(L, 0, i, enumerate_cap=0)
            assert enum == linear == lat.count_points(B, 0, i)


def test_generator_bound_examples(A2):
    B = lat.reduce(lat.NormedLattice.abstract(A2, [0, 0]))
    gb = lat.generator_bound(B)
    assert (gb.bound_log_q, gb.generates) == (0, True)
    B = lat.reduce(lat.NormedLattice.abstract(A2, [1, Fraction(3, 2)]))
    gb = lat.generator_bound(B)
    assert gb.generates and gb.bound_log_q == 3
    with pytest.raises(PreconditionError):
        lat.generator_bound(lat.reduce(lat.NormedLattice.abstract(A2, [-1])))


def test_reduced_bases_pass_the_orthogonality_certificate(A2, K2):
    rng = random.Random(14)
    for _ in range(10):
        B = lat.reduce(random_frame_lattice(A2, 2, rng))
        assert lat.orthogonality_violations(B, 2) == []
    D = DrinfeldModule.from_string(A2, K2, "pi + T^2")
    B = lat.reduce(lat.NormedLattice.drinfeld(D, [K2.parse("pi^-3"), K2.parse("pi^-3 + pi^-1")]))
    assert lat.orthogonality_violations(B, 2) == []


def test_reduction_errors(A2, K2):
    D = DrinfeldModule.from_string(A2, K2, "pi + T")
    lam = K2.parse("pi^-3")
    with pytest.raises(DependentBasisError):
        lat.reduce(lat.NormedLattice.drinfeld(D, [lam, D.act(A2.t(), lam)]))
    with pytest.raises(ReductionError):
        lat.reduce(lat.NormedLattice.drinfeld(D, [K2.parse("pi")]))


@settings(max_examples=60)
@given(st.integers(0, 2 ** 30), st.integers(-3, 3))
def test_volume_scaling_law(seed, i):
    rng = random.Random(seed)
    A = CoeffRing(GF(rng.choice((2, 3))))
    n = rng.randint(1, 3)
    B = lat.reduce(random_frame_lattice(A, n, rng))
    log_r = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    # vol_{r c^i} = c^{-n i} vol_r
    assert lat.volume_log(B.log_norms, A.q, log_r + i) == lat.volume_log(B.log_norms, A.q, log_r) - n * i


@settings(max_examples=40)
@given(st.integers(0, 2 ** 30))
def test_count_times_volume_stabilises(seed):
    rng = random.Random(seed)
    A = CoeffRing(GF(rng.choice((2, 3))))
    n = rng.randint(1, 3)
    L = random_frame_lattice(A, n, rng)
    B = lat.reduce(L)
    vol = lat.volume_log(B.log_norms, A.q)
    i0 = max(lat.stable_index(B), 0)
    for i in range(i0, i0 + 2):
        assert lat.count_points_log(B, 0, i) == n * i - vol
    for i in range(0, 4):
        assert lat.count_points_log(B, 0, i) >= n * i - vol
