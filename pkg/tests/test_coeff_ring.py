import itertools

import pytest
from hypothesis import given, strategies as st

from drinfeld_local import GF, NEG_INF, CoeffRing, LogNorm
from drinfeld_local import coeff_ring as cr
from drinfeld_local.errors import FieldError


@pytest.fixture
def A2():
    return CoeffRing(GF(2))


def test_abs_infinity_examples(A2):
    assert A2.parse("t^2 + 1").abs_infinity() == LogNorm.from_rational(2, 2)
    assert A2.one().abs_infinity() == LogNorm.from_rational(0, 2)
    assert A2.zero().abs_infinity() is NEG_INF
    assert A2.parse("t^3 + t").norm() == 8


def test_structural_constants():
    A = CoeffRing(GF(3))
    assert (A.c, A.C, A.genus, A.residue_degree) == (3, 3, 0, 1)


def test_enumerate_small_cases(A2):
    assert {str(x) for x in A2.enumerate_by_degree(0)} == {"0", "1"}
    assert len(list(A2.enumerate_by_degree(1))) == 4
    assert [str(x) for x in A2.enumerate_by_degree(-1)] == ["0"]


def test_enumerate_q3_degree2_exhaustive():
    A = CoeffRing(GF(3))
    got = list(A.enumerate_by_degree(2))
    oracle = {tuple(c) for c in itertools.product(range(3), repeat=3)}
    assert len(got) == 27
    assert {tuple(x.coefficient(i) for i in range(3)) for x in got} == oracle


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_residue_count_equals_norm(q, d):
    A = CoeffRing(GF(q))
    for a in A.monic_of_degree(d):
        residues = {x % a for x in A.enumerate_by_degree(d + 2)}
        assert len(residues) == a.norm() == q ** d


def test_subfield_ring():
    F4 = GF(2, 2)
    A = CoeffRing(F4, 2)
    assert len(list(A.enumerate_by_degree(1))) == 4
    with pytest.raises(FieldError):
        A.parse("g*t")
    A4 = CoeffRing(F4, 4)
    assert str(A4.parse("g*t + 1")) == "g*t + 1"
    with pytest.raises(FieldError):
        CoeffRing(F4, 8)


@given(st.lists(st.integers(0, 2), max_size=5), st.lists(st.integers(0, 2), max_size=5))
def test_degree_and_norm_multiplicative(xa, xb):
    A = CoeffRing(GF(3))
    a, b = A(xa), A(xb)
    if a and b:
        assert (a * b).degree() == a.degree() + b.degree()
    assert (a * b).norm() == a.norm() * b.norm()
    if b:
        q, r = divmod(a, b)
        assert q * b + r == a and r.degree() < b.degree()


@given(st.lists(st.integers(0, 2), max_size=4))
def test_print_parse_roundtrip(xs):
    A = CoeffRing(GF(3))
    a = A(xs)
    assert A.parse(str(a)) == a


def _rand_matrix(A, rng, n, deg):
    return [[A.random_element(rng, deg) for _ in range(n)] for _ in range(n)]


def test_smith_form_against_gcd_oracle():
    import random
    rng = random.Random(3)
    A = CoeffRing(GF(2))
    for _ in range(60):
        M = _rand_matrix(A, rng, 2, 2)
        det = cr.determinant(M, A)
        if not det:
            continue
        d1, d2 = cr.smith_form(M, A)
        # oracle: d1 = gcd of entries, d1 d2 = det up to a unit
        g = A.zero()
        for x in itertools.chain(*M):
            g = cr.gcd(g, x) if g else x.monic()
        assert d1 == g
        assert d1 * d2 == det.monic()
        assert cr.index_of(M, A) == 2 ** det.degree()


def test_determinant_matches_cofactor_expansion():
    import random
    rng = random.Random(5)
    A = CoeffRing(GF(3))
    for _ in range(30):
        M = _rand_matrix(A, rng, 3, 2)
        cof = A.zero()
        for j in range(3):
            minor = [[M[r][c] for c in range(3) if c != j] for r in (1, 2)]
            m2 = minor[0][0] * minor[1][1] - minor[0][1] * minor[1][0]
            cof = cof + (M[0][j] * m2 if j % 2 == 0 else -(M[0][j] * m2))
        assert cr.determinant(M, A) == cof


def test_span_membership():
    A = CoeffRing(GF(2))
    t = A.t()
    rows = [[t, A.zero()], [A.zero(), t * t]]
    assert cr.in_span([t * (t + 1), t * t * t], rows, A)
    assert not cr.in_span([A.one(), A.zero()], rows, A)
    assert cr.rank(rows + [[t, t * t]], A) == 2
