import itertools

import pytest
from hypothesis import given, strategies as st

from drinfeld_local import GF, LocalField
from drinfeld_local.errors import FieldError, ParseError, SingularMatrixError
from drinfeld_local.finite_field import DEFAULT_MODULI, FiniteField, is_irreducible
from drinfeld_local.linalg import determinant, nullspace_mod_p, solve_linear_system


# -- oracles -------------------------------------------------------------------


def gf4_mul_oracle(a, b):
    """Carry-less product of 2-bit codes reduced by x^2 + x + 1."""
    prod = 0
    for i in range(2):
        if (b >> i) & 1:
            prod ^= a << i
    if prod & 4:
        prod ^= 0b111
    return prod


def series_oracle(num, den, p, terms):
    """Power-series coefficients of num/den (dicts exp -> int over F_p) by long division."""
    shift = min(den)
    d0 = den[shift]
    inv = pow(d0, p - 2, p)
    lo = min(num) - shift
    rem = {e - shift: c for e, c in num.items()}
    den_n = {e - shift: c for e, c in den.items()}
    out = {}
    for e in range(lo, lo + terms):
        c = rem.get(e, 0) % p
        if c:
            coef = c * inv % p
            out[e] = coef
            for de, dc in den_n.items():
                rem[e + de] = (rem.get(e + de, 0) - coef * dc) % p
    return out


# -- finite fields -------------------------------------------------------------


def test_defining_relation_in_f4(F4):
    g = F4.gen()
    assert g * g == g + 1
    assert str(g * g) == "g + 1"


def test_frobenius_of_generator_in_f4(F4):
    g = F4.gen()
    assert g.frobenius() == F4("g + 1")
    assert gf4_mul_oracle(g.v, g.v) == g.frobenius().v


def test_f4_multiplication_table_matches_oracle(F4):
    for a, b in itertools.product(range(4), repeat=2):
        assert F4.mul(a, b) == gf4_mul_oracle(a, b)


@pytest.mark.parametrize("p,n", [(2, 1), (2, 3), (2, 4), (3, 2), (5, 1), (7, 2)])
def test_every_element_is_fixed_by_full_frobenius(p, n):
    F = GF(p, n)
    for x in F.elements():
        assert x ** F.order == x
    assert len({x ** (F.order - 1) for x in F.elements() if x}) == 1


def test_builtin_moduli_are_irreducible():
    for p, table in DEFAULT_MODULI.items():
        for n, mod in table.items():
            assert len(mod) == n + 1
            assert is_irreducible(mod, p)


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError):
        FiniteField(2, 2, (1, 0, 1))  # x^2 + 1 = (x + 1)^2


def test_frobenius_additive_exhaustive_small_fields():
    for p, n in [(2, 1), (2, 2), (2, 3), (3, 2), (2, 8)]:
        F = GF(p, n)
        elems = list(F.elements())
        pairs = itertools.product(elems, repeat=2) if F.order <= 16 else zip(elems, reversed(elems))
        for x, y in pairs:
            assert (x + y).frobenius() == x.frobenius() + y.frobenius()


@given(st.sampled_from([(2, 5), (3, 3), (5, 2), (2, 12)]), st.data())
def test_field_axioms(pn, data):
    F = GF(*pn)
    a, b, c = (F.elem(data.draw(st.integers(0, F.order - 1))) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a + b).frobenius() == a.frobenius() + b.frobenius()
    if a:
        assert a * a.inverse() == 1


def test_inverse_of_zero_is_distinct_error(F4):
    with pytest.raises(ZeroDivisionError):
        F4.zero().inverse()


def test_trace_of_one_over_f2():
    assert GF(2).one().trace() == 1
    assert GF(2, 2).one().trace() == 0


# -- local field ---------------------------------------------------------------


def test_valuation_examples(K2):
    assert K2.parse("pi^-1").valuation() == -1
    assert K2.parse("(1 + pi)/pi^2").valuation() == -2
    assert K2.parse("(pi^3 + pi^5)/(pi + pi^2)").valuation() == 2
    assert K2.zero().valuation() == float("inf")


def test_valuation_matches_long_division_oracle(K2):
    x = K2.parse("(pi^3 + pi^5)/(pi + pi^2)")
    series = series_oracle({3: 1, 5: 1}, {1: 1, 2: 1}, 2, 12)
    assert min(series) == x.valuation() == 2
    assert x == K2.parse("pi^2 + pi^3")


def test_inverse_of_uniformizer(K2):
    assert K2.uniformizer().inverse() == K2.parse("pi^-1")


def test_division_by_zero(K2):
    with pytest.raises(ZeroDivisionError):
        K2.one() / K2.zero()


def laurent(K, data, lo=-5, hi=5, terms=4, nonzero=False):
    F = K.residue
    d = {}
    for _ in range(data.draw(st.integers(1 if nonzero else 0, terms))):
        d[data.draw(st.integers(lo, hi))] = data.draw(st.integers(1, F.order - 1))
    x = K.from_terms(d)
    if nonzero and not x:
        x = K.one()
    return x


KS = [LocalField(GF(2)), LocalField(GF(3)), LocalField(GF(2, 2))]


@given(st.sampled_from(KS), st.data())
def test_valuation_is_a_valuation(K, data):
    x = laurent(K, data, nonzero=True)
    y = laurent(K, data, nonzero=True)
    z = laurent(K, data, nonzero=True)
    q = x / z
    # representative independence: x/z = (x c)/(z c)
    c = laurent(K, data, nonzero=True) + K.one()
    if c:
        assert ((x * c) / (z * c)).valuation() == q.valuation() == x.valuation() - z.valuation()
    assert (x * y).valuation() == x.valuation() + y.valuation()
    s = x + y
    assert s.valuation() >= min(x.valuation(), y.valuation())
    if x.valuation() != y.valuation():
        assert s.valuation() == min(x.valuation(), y.valuation())
    inv = q.inverse()
    assert (q * inv) == K.one() and (q * inv).valuation() == 0


@given(st.sampled_from(KS), st.data())
def test_local_frobenius_additive(K, data):
    x, y = laurent(K, data), laurent(K, data)
    p = K.p
    assert (x + y) ** p == x ** p + y ** p
    if y:
        assert (x / (y + K.one() if y + K.one() else y)).frobenius_power(p) == \
            x.frobenius_power(p) / (y + K.one() if y + K.one() else y).frobenius_power(p)


@given(st.sampled_from(KS), st.data())
def test_print_parse_roundtrip(K, data):
    x = laurent(K, data)
    d = laurent(K, data, nonzero=True) + K.one()
    if d:
        x = x / d
    text = str(x)
    back = K.parse(text)
    assert back == x
    assert str(back) == text


def test_parser_reports_column(K2):
    with pytest.raises(ParseError) as info:
        K2.parse("pi + $")
    assert info.value.column == 6
    with pytest.raises(ParseError):
        K2.parse("pi +")
    with pytest.raises(ParseError):
        K2.parse("q + 1")


# -- linear algebra ------------------------------------------------------------


def test_identity_system(K2):
    one, zero = K2.one(), K2.zero()
    b = [K2.parse("pi^-1"), K2.parse("1 + pi")]
    assert solve_linear_system([[one, zero], [zero, one]], b) == b


def test_two_by_two_system_matches_cramer(F4):
    g = F4.gen()
    M = [[F4.one(), F4.one()], [g, g ** 2]]
    b = [F4.zero(), F4.one()]
    x = solve_linear_system(M, b)
    det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    cramer = [(b[0] * M[1][1] - M[0][1] * b[1]) / det, (M[0][0] * b[1] - b[0] * M[1][0]) / det]
    assert x == cramer
    assert [M[i][0] * x[0] + M[i][1] * x[1] for i in range(2)] == b


def test_singular_system_rejected(K2):
    one = K2.one()
    with pytest.raises(SingularMatrixError):
        solve_linear_system([[one, one], [one, one]], [one, one])
    assert not determinant([[one, one], [one, one]])


def test_nullspace_mod_p():
    basis = nullspace_mod_p([[1, 1, 0], [0, 1, 1]], 2)
    assert basis == [[1, 1, 1]]


def _poly_mod(a, m, p):
    a = list(a)
    while len(a) >= len(m):
        c = a[-1]
        if c:
            shift = len(a) - len(m)
            for i, y in enumerate(m):
                a[shift + i] = (a[shift + i] - c * y) % p
        a.pop()
    return a


def test_builtin_moduli_have_no_small_factor_by_trial_division():
    for p, table in DEFAULT_MODULI.items():
        for n, mod in table.items():
            if p ** (n // 2) > 4096:
                continue
            for d in range(1, n // 2 + 1):
                for tail in itertools.product(range(p), repeat=d):
                    divisor = list(tail) + [1]
                    assert any(_poly_mod(mod, divisor, p)), (p, n, divisor)
