import random

import pytest
from hypothesis import given, settings, strategies as st

from drinfeld_local import GF, CoeffRing, DrinfeldModule, LocalField, TwistedPoly
from drinfeld_local.errors import PreconditionError
from drinfeld_local.ramification import (
    PROPER, RAMIFIED, SURJECTIVE, TRIVIAL, UNRAMIFIED, as_factor, as_reduce, conductor,
    frobenius_descent, kummer_break, kummer_image_at_level, torsion_field_conductor, wp,
)


@pytest.fixture
def A2():
    return CoeffRing(GF(2))


def test_worked_as_case(K2):
    w = K2.parse("pi^-4")
    cls = as_reduce(w)
    assert (cls.kind, cls.break_) == (RAMIFIED, 1)
    assert w - K2.parse("pi^-1") == wp(K2.parse("pi^-2 + pi^-1"))


def test_as_kinds(K2):
    assert as_reduce(K2.parse("pi^-3 + pi^-4")).break_ == 3
    # pi^-6 is congruent to pi^-3, so the sum is trivial
    assert as_reduce(K2.parse("pi^-3 + pi^-6")).kind == TRIVIAL
    assert as_reduce(K2.parse("pi + pi^3")).kind == TRIVIAL
    assert as_reduce(K2.zero()).kind == TRIVIAL
    # x^2 + x + 1 has no root in F_2, so w = 1 gives the unramified quadratic extension
    assert all((x * x + x + 1) % 2 for x in range(2))
    assert as_reduce(K2.one()).kind == UNRAMIFIED
    assert as_reduce(K2.parse("1 + pi^-2")).kind == RAMIFIED


def test_as_unramified_uses_the_trace():
    F4 = GF(2, 2)
    K = LocalField(F4)
    g = K.parse("g")
    # Tr(g) = g + g^2 = 1, Tr(1) = 0 in F_4
    assert as_reduce(g).kind == UNRAMIFIED
    assert as_reduce(K.one()).kind == TRIVIAL


def test_as_matches_root_search_on_constants():
    for p, n in ((2, 1), (2, 2), (3, 1), (3, 2)):
        F = GF(p, n)
        K = LocalField(F)
        for c in F.elements():
            has_root = any(x ** p - x == c for x in F.elements())
            assert (as_reduce(K.constant(c)).kind == TRIVIAL) == has_root


@settings(max_examples=200)
@given(st.integers(0, 2 ** 30))
def test_wp_invariance_and_break_parity(seed):
    rng = random.Random(seed)
    p = rng.choice((2, 3, 5))
    K = LocalField(GF(p, rng.choice((1, 2))))
    w = K.random_laurent(rng, rng.randint(-12, 2), 4, 4)
    z = K.random_laurent(rng, rng.randint(-5, 2), 3, 3)
    a, b = as_reduce(w), as_reduce(w + wp(z))
    assert (a.kind, a.break_) == (b.kind, b.break_)
    if a.break_ is not None:
        assert a.break_ % p and a.break_ >= 1
        assert a.reduced.valuation() == -a.break_
    assert as_reduce(a.reduced).reduced == a.reduced


# -- as_factor --------------------------------------------------------------------


def test_as_factor_one_dimensional():
    # phi = alpha (tau - c^(q-1) ) with kernel F_q v, f(v) = 1: u = v^-q / alpha times alpha-free part
    F = GF(2, 3)
    rng = random.Random(1)
    one = F.one()
    for _ in range(20):
        v = F.random_element(rng, nonzero=True)
        alpha = F.random_element(rng, nonzero=True)
        phi = TwistedPoly([-(alpha * v), alpha], 2, one)       # alpha*(x^2 - v x)
        assert not phi.evaluate(v)
        fac = as_factor(phi, [v], [one])
        # psi0 is the constant 1/v, so (tau - 1) psi0 has leading coefficient v^-2
        assert fac.psi0 == TwistedPoly([one / v], 2, one)
        assert fac.u == (one / v) ** 2 / alpha
        assert fac.u_moore == fac.u_interpolated


def test_as_factor_preconditions(F4):
    one = F4.one()
    phi = TwistedPoly([one, one], 2, one)
    with pytest.raises(PreconditionError):
        as_factor(phi, [one], [F4.zero()])
    with pytest.raises(PreconditionError):
        as_factor(phi, [F4.gen()], [one])
    with pytest.raises(PreconditionError):
        as_factor(TwistedPoly([F4.zero(), one], 2, one), [one], [one])


# -- Kummer breaks and images --------------------------------------------------------


def test_kummer_break_examples(A2, K2):
    D = DrinfeldModule.from_string(A2, K2, "pi + T")
    r = kummer_break(D, K2.parse("pi^-3"))
    assert (r.height, r.vanishing_level, r.exact, r.break_) == (3, 4, True, 3)
    r = kummer_break(D, K2.parse("pi^-4"))
    assert (r.exact, r.break_) == (False, None)
    assert kummer_break(D, K2.parse("1 + pi")).zero_homomorphism


def test_kummer_image_examples(A2, K2):
    D = DrinfeldModule.from_string(A2, K2, "1 + T")
    t = A2.t()
    assert kummer_image_at_level(D, t, K2.parse("pi^-3")).outcome == SURJECTIVE
    assert kummer_image_at_level(D, t * t, K2.parse("pi^-5 + pi^-2")).outcome == SURJECTIVE
    zero = kummer_image_at_level(D, t, K2.parse("1 + pi"))
    assert zero.outcome == PROPER and zero.zero_image


def test_kummer_proper_witness(A2, K2):
    # lambda = pi^-2 + pi^-1 is wp(pi^-1): the only form at level t kills the image
    D = DrinfeldModule.from_string(A2, K2, "1 + T")
    lam = K2.parse("pi^-2 + pi^-1")
    assert lam == wp(K2.parse("pi^-1"))
    rep = kummer_image_at_level(D, A2.t(), lam)
    assert rep.outcome == PROPER and rep.witness == (1,)


def test_kummer_needs_good_reduction(A2, K2):
    D = DrinfeldModule.from_string(A2, K2, "1 + pi^-1*T")
    with pytest.raises(PreconditionError):
        kummer_image_at_level(D, A2.t(), K2.parse("pi^-1"))


# -- conductor -------------------------------------------------------------------


def test_torsion_field_conductor():
    assert torsion_field_conductor([]) == 0
    assert torsion_field_conductor([1, 3]) == 4
    assert torsion_field_conductor([None, 2]) == 3


def test_conductor_examples(A2, K2):
    D = DrinfeldModule.from_string(A2, K2, "pi + T")
    rep = conductor(D, [K2.parse("pi^-1")])
    assert (rep.exact, rep.vol_log_q, rep.volume_bound) == (1, -1, 1)
    assert conductor(D, []).exact == 0
    rep = conductor(D, [K2.parse("pi^-4")])
    assert rep.exact is None and rep.interval == (1, 3) and rep.volume_bound == 3
    assert conductor(D, [K2.parse("pi^-4")], certificates=[3]).interval == (3, 3)
    rep = conductor(D, [K2.parse("pi^-2"), K2.parse("pi^-3")])
    assert rep.exact == 3 and rep.upper <= rep.volume_bound


def test_frobenius_descent(A2, K2):
    D = DrinfeldModule.from_string(A2, K2, "pi^2 + T")
    D0, gens, steps = frobenius_descent(D, [K2.parse("pi^-4")])
    assert steps == 1 and str(D0.phi_t) == "pi + T" and gens == [K2.parse("pi^-2")]
    rep = conductor(D, [K2.parse("pi^-6")])
    assert rep.descent_steps == 1 and rep.exact == 3


def test_conductor_json_schema(A2, K2):
    D = DrinfeldModule.from_string(A2, K2, "pi + T")
    data = conductor(D, [K2.parse("pi^-3")]).to_json()
    assert isinstance(data["exact"], int) and isinstance(data["volume_bound"], int)
    assert data["vol_log_q"] == "1"
    assert set(data) >= {"m", "exact", "interval", "r", "s", "n", "routes", "heights"}


def test_every_prime_to_p_conductor_occurs(A2, K2):
    D = DrinfeldModule.from_string(A2, K2, "pi + T")
    for m in range(1, 16, 2):
        assert conductor(D, [K2.parse(f"pi^-{m}")]).exact == m


@pytest.mark.parametrize("m", range(1, 8))
def test_conductor_invariant_under_frobenius_twist(A2, K2, m):
    D = DrinfeldModule.from_string(A2, K2, "pi + T")
    tau = TwistedPoly.tau(2, K2.one())
    lam = K2.parse(f"pi^-{m}")
    r1 = conductor(D, [lam])
    r2 = conductor(D.isogeny_transport(tau), [tau.evaluate(lam)])
    assert (r1.exact, r1.interval) == (r2.exact, r2.interval)
