"""The local field K = k((pi)) restricted to rational Laurent functions.

An element is stored as ``num / den`` where ``num`` is a sparse Laurent
polynomial in ``pi`` and ``den`` is a sparse polynomial with constant term
1, so the valuation is just the lowest exponent of ``num``.  Sparse storage
matters: the q-power Frobenius only rescales exponents, so the huge powers
``x^(q^i)`` that appear when evaluating Drinfeld modules stay small.
"""

from __future__ import annotations

import math
import random
from typing import Mapping

from . import polyalg
from .errors import FieldError
from .finite_field import FFElem, FiniteField
from .parsing import parse_expression, wrap

INFINITY = math.inf

# gcd normalisation is skipped for denominators above this degree
GCD_DEGREE_LIMIT = 512


class LocalField:
    """k((pi)) for a finite residue field k."""

    def __init__(self, residue: FiniteField, name: str = "pi"):
        self.residue = residue
        self.name = name
        self.p = residue.p

    def __eq__(self, other):
        return isinstance(other, LocalField) and self.residue == other.residue and self.name == other.name

    def __hash__(self):
        return hash((self.residue, self.name))

    def __repr__(self):
        return f"LocalField({self.residue!r}, {self.name!r})"

    def zero(self) -> "LocalElem":
        return LocalElem(self, {}, _ONE)

    def one(self) -> "LocalElem":
        return LocalElem(self, {0: 1}, _ONE)

    def uniformizer(self) -> "LocalElem":
        return LocalElem(self, {1: 1}, _ONE)

    def monomial(self, coeff, exp: int) -> "LocalElem":
        c = self._code(coeff)
        return LocalElem(self, {exp: c} if c else {}, _ONE)

    def from_terms(self, terms: Mapping[int, object]) -> "LocalElem":
        num = {e: self._code(c) for e, c in terms.items()}
        return LocalElem(self, {e: c for e, c in num.items() if c}, _ONE)

    def constant(self, c) -> "LocalElem":
        return self.monomial(c, 0)

    def _code(self, c) -> int:
        if isinstance(c, FFElem):
            if c.field != self.residue:
                raise FieldError("coefficient from a different residue field")
            return c.v
        if isinstance(c, int):
            return c % self.p
        raise TypeError(f"cannot use {c!r} as a coefficient")

    def parse(self, text: str) -> "LocalElem":
        env = {self.name: self.uniformizer(), self.residue.gen_name: self.constant(self.residue.gen())}
        return parse_expression(text, env, self.one())

    def __call__(self, value) -> "LocalElem":
        if isinstance(value, LocalElem):
            return value
        if isinstance(value, str):
            return self.parse(value)
        return self.constant(value)

    def random_laurent(self, rng: random.Random, vmin: int, vmax: int, max_terms: int = 3,
                       unit_lead: bool = True) -> "LocalElem":
        """Random Laurent polynomial with valuation exactly ``vmin``."""
        F = self.residue
        terms = {vmin: rng.randrange(1, F.order)}
        for _ in range(max_terms - 1):
            e = rng.randint(vmin, vmax)
            if e != vmin:
                terms[e] = rng.randrange(0, F.order)
        return LocalElem(self, {e: c for e, c in terms.items() if c}, _ONE)

    def extend(self, bigger: FiniteField) -> tuple["LocalField", list[int]]:
        """The unramified extension with residue field ``bigger`` plus the coefficient map."""
        return LocalField(bigger, self.name), self.residue.embedding_into(bigger)


_ONE = {0: 1}


def _sparse_mul(F: FiniteField, a: dict, b: dict) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out: dict[int, int] = {}
    for eb, cb in b.items():
        for ea, ca in a.items():
            e = ea + eb
            v = F.add(out.get(e, 0), F.mul(ca, cb))
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def _sparse_add(F: FiniteField, a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        v = F.add(out.get(e, 0), c)
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _to_dense(d: dict, lo: int) -> list[int]:
    if not d:
        return []
    out = [0] * (max(d) - lo + 1)
    for e, c in d.items():
        out[e - lo] = c
    return out


def _from_dense(a: list[int], lo: int) -> dict:
    return {i + lo: c for i, c in enumerate(a) if c}


def _normalize(K: LocalField, num: dict, den: dict, reduce_gcd: bool = True):
    F = K.residue
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return {}, _ONE
    if den is _ONE or (len(den) == 1 and den.get(0) == 1):
        return num, _ONE
    m = min(den)
    c = den[m]
    ci = F.inv(c)
    num = {e - m: F.mul(v, ci) for e, v in num.items()}
    den = {e - m: F.mul(v, ci) for e, v in den.items()}
    if len(den) == 1:
        return num, _ONE
    if reduce_gcd and max(den) <= GCD_DEGREE_LIMIT:
        lo = min(num)
        a = _to_dense(num, lo)
        b = _to_dense(den, 0)
        g = polyalg.gcd(F, a, b)
        if len(g) > 1:
            a = polyalg.divmod_(F, a, g)[0]
            b = polyalg.divmod_(F, b, g)[0]
            # g(0) != 0 because den(0) = 1, so b(0) != 0
            ci = F.inv(b[0])
            num = _from_dense(polyalg.scale(F, a, ci), lo)
            den = _from_dense(polyalg.scale(F, b, ci), 0)
            if len(den) == 1:
                den = _ONE
    return num, den


class LocalElem:
    """Element num/den of k((pi)); immutable."""

    __slots__ = ("K", "num", "den")

    def __init__(self, K: LocalField, num: dict, den: dict, normalized: bool = True):
        if not normalized:
            num, den = _normalize(K, num, den)
        self.K = K
        self.num = num
        self.den = den

    # -- basic invariants --

    def valuation(self):
        """Normalized pi-adic valuation; +infinity for zero."""
        if not self.num:
            return INFINITY
        return min(self.num)

    def leading_coefficient(self) -> FFElem:
        """Coefficient of pi^v in the power-series expansion."""
        if not self.num:
            return self.K.residue.zero()
        return FFElem(self.K.residue, self.num[min(self.num)])

    def residue(self) -> FFElem:
        v = self.valuation()
        if v < 0:
            raise FieldError("residue of a non-integral element")
        if v > 0:
            return self.K.residue.zero()
        return self.leading_coefficient()

    def is_integral(self) -> bool:
        return self.valuation() >= 0

    def is_constant(self) -> bool:
        """True when the element lies in the residue field k."""
        return (not self.num) or (self.den is _ONE and all(e == 0 for e in self.num))

    def __bool__(self):
        return bool(self.num)

    # -- arithmetic --

    def _coerce(self, other):
        if isinstance(other, LocalElem):
            if other.K is not self.K and other.K != self.K:
                raise FieldError("mixing elements of different local fields")
            return other
        if isinstance(other, (int, FFElem)):
            return self.K.constant(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        F = self.K.residue
        if self.den is _ONE and o.den is _ONE:
            return LocalElem(self.K, _sparse_add(F, self.num, o.num), _ONE)
        if self.den == o.den:
            return LocalElem(self.K, _sparse_add(F, self.num, o.num), self.den, normalized=False)
        num = _sparse_add(F, _sparse_mul(F, self.num, o.den), _sparse_mul(F, o.num, self.den))
        return LocalElem(self.K, num, _sparse_mul(F, self.den, o.den), normalized=False)

    __radd__ = __add__

    def __neg__(self):
        F = self.K.residue
        return LocalElem(self.K, {e: F.neg(c) for e, c in self.num.items()}, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        F = self.K.residue
        num = _sparse_mul(F, self.num, o.num)
        if self.den is _ONE and o.den is _ONE:
            return LocalElem(self.K, num, _ONE)
        return LocalElem(self.K, num, _sparse_mul(F, self.den, o.den), normalized=False)

    __rmul__ = __mul__

    def inverse(self) -> "LocalElem":
        if not self.num:
            raise ZeroDivisionError("inverse of zero in the local field")
        return LocalElem(self.K, dict(self.den), self.num, normalized=False)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def frobenius_power(self, k: int) -> "LocalElem":
        """x -> x^k for k a power of the characteristic (a ring map)."""
        F = self.K.residue
        num = {e * k: F.pow(c, k) for e, c in self.num.items()}
        den = _ONE if self.den is _ONE else {e * k: F.pow(c, k) for e, c in self.den.items()}
        return LocalElem(self.K, num, den)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        p = self.K.p
        if k == 0:
            return self.K.one()
        j = 1
        while k % (j * p) == 0:
            j *= p
        base = self.frobenius_power(j) if j > 1 else self
        rest = k // j
        result = None
        # rest is prime to p; plain square-and-multiply
        while rest:
            if rest & 1:
                result = base if result is None else result * base
            rest >>= 1
            if rest:
                base = base * base
        return result

    def is_power(self, k: int) -> bool:
        """True when the element is a k-th power (k a power of p)."""
        return all(e % k == 0 for e in self.num) and all(e % k == 0 for e in self.den)

    def root(self, k: int) -> "LocalElem":
        """Inverse of :meth:`frobenius_power` on k-th powers."""
        if not self.is_power(k):
            raise FieldError("element is not a k-th power")
        F = self.K.residue
        num = {e // k: F.root(c, k) for e, c in self.num.items()}
        den = _ONE if self.den is _ONE else {e // k: F.root(c, k) for e, c in self.den.items()}
        return LocalElem(self.K, num, den)

    def map_coefficients(self, K2: LocalField, table: list[int]) -> "LocalElem":
        num = {e: table[c] for e, c in self.num.items()}
        den = _ONE if self.den is _ONE else {e: table[c] for e, c in self.den.items()}
        return LocalElem(K2, num, den)

    # -- comparison and printing --

    def __eq__(self, other):
        if isinstance(other, (int, FFElem)):
            other = self.K.constant(other)
        if not isinstance(other, LocalElem):
            return NotImplemented
        if self.den is _ONE and other.den is _ONE:
            return self.num == other.num
        F = self.K.residue
        return _sparse_mul(F, self.num, other.den) == _sparse_mul(F, other.num, self.den)

    def __hash__(self):
        return hash((self.valuation(), self.leading_coefficient().v))

    def reduced(self) -> "LocalElem":
        """Fully gcd-reduced representative (canonical form)."""
        if self.den is _ONE:
            return self
        num, den = _normalize(self.K, self.num, self.den, reduce_gcd=False)
        lo = min(num)
        F = self.K.residue
        a, b = _to_dense(num, lo), _to_dense(den, 0)
        g = polyalg.gcd(F, a, b)
        if len(g) > 1:
            a = polyalg.divmod_(F, a, g)[0]
            b = polyalg.divmod_(F, b, g)[0]
        ci = F.inv(b[0])
        num = _from_dense(polyalg.scale(F, a, ci), lo)
        den = _from_dense(polyalg.scale(F, b, ci), 0)
        return LocalElem(self.K, num, _ONE if den == _ONE else den)

    def _format_poly(self, terms: dict) -> str:
        F = self.K.residue
        name = self.K.name
        parts = []
        for e in sorted(terms):
            c = F.format(terms[e])
            if e == 0:
                parts.append(c)
                continue
            mono = name if e == 1 else f"{name}^{e}"
            parts.append(mono if c == "1" else f"{wrap(c)}*{mono}")
        return " + ".join(parts) if parts else "0"

    def __str__(self):
        x = self.reduced()
        if x.den is _ONE:
            return x._format_poly(x.num)
        return f"({x._format_poly(x.num)})/({x._format_poly(x.den)})"

    def __repr__(self):
        return f"LocalElem({str(self)!r})"
