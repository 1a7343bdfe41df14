"""Exact logarithms of norm values.

A norm value N > 0 is stored as ``N = R^(1/d)`` with ``R`` a positive
rational and ``d`` a positive integer, and a LogNorm is ``log_q N``.  This
covers both kinds of value in the package:

* rational exponents ``e = a/b`` (``R = q^a``, ``d = b``), used for abstract
  lattices, and
* Drinfeld period norms ``||lambda||^(1/s)`` (``R = height``, ``d = s``),
  whose logarithm ``log_q(height)/s`` is usually irrational.

All comparisons reduce to comparing integer powers of rationals, so
nothing is ever rounded.  ``NEG_INF`` is the log of the norm 0.
"""

from __future__ import annotations

import functools
from fractions import Fraction


def _int_log(x: Fraction, q: int):
    """Return k if x == q^k for an integer k, else None."""
    if x <= 0:
        return None
    k = 0
    num, den = x.numerator, x.denominator
    if den == 1:
        while num % q == 0:
            num //= q
            k += 1
        return k if num == 1 else None
    if num == 1:
        while den % q == 0:
            den //= q
            k -= 1
        return k if den == 1 else None
    return None


@functools.total_ordering
class LogNorm:
    __slots__ = ("R", "d", "q")

    def __init__(self, R, d: int, q: int):
        R = Fraction(R)
        if R <= 0 or d < 1:
            raise ValueError("LogNorm needs R > 0 and d >= 1")
        self.R = R
        self.d = d
        self.q = q

    # -- constructors --

    @classmethod
    def from_rational(cls, e, q: int) -> "LogNorm":
        e = Fraction(e)
        return cls(Fraction(q) ** e.numerator, e.denominator, q)

    @classmethod
    def from_height(cls, height: int, s: int, q: int) -> "LogNorm | NegInf":
        """log_q of height^(1/s); -inf when the height is 0."""
        if height == 0:
            return NEG_INF
        return cls(height, s, q)

    @classmethod
    def parse(cls, text: str, q: int) -> "LogNorm | NegInf":
        text = text.strip()
        if text in ("-inf", "-oo"):
            return NEG_INF
        if text.startswith("log(") and ")/" in text:
            body, d = text[4:].split(")/")
            return cls(Fraction(body), int(d), q)
        if text.startswith("log(") and text.endswith(")"):
            return cls(Fraction(text[4:-1]), 1, q)
        return cls.from_rational(Fraction(text), q)

    # -- queries --

    def as_rational(self) -> Fraction | None:
        k = _int_log(self.R, self.q)
        return None if k is None else Fraction(k, self.d)

    def is_neg_inf(self) -> bool:
        return False

    def _cmp_key(self, other: "LogNorm"):
        # compare R1^(1/d1) with R2^(1/d2) via R1^d2 vs R2^d1
        return self.R ** other.d, other.R ** self.d

    def __eq__(self, other):
        if isinstance(other, NegInf):
            return False
        if not isinstance(other, LogNorm):
            return NotImplemented
        a, b = self._cmp_key(other)
        return a == b

    def __lt__(self, other):
        if isinstance(other, NegInf):
            return False
        if not isinstance(other, LogNorm):
            return NotImplemented
        a, b = self._cmp_key(other)
        return a < b

    def __hash__(self):
        r = self.as_rational()
        if r is not None:
            return hash(("q", r))
        return hash(("root", self.R ** (12 // self.d) if 12 % self.d == 0 else self.R, self.d))

    def shift(self, k: int) -> "LogNorm":
        """log N + k, i.e. the norm multiplied by q^k."""
        return LogNorm(self.R * Fraction(self.q) ** (k * self.d), self.d, self.q)

    def __add__(self, k):
        if isinstance(k, int):
            return self.shift(k)
        if isinstance(k, LogNorm):
            d = self.d * k.d
            return LogNorm(self.R ** k.d * k.R ** self.d, d, self.q)
        if isinstance(k, NegInf):
            return NEG_INF
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            return self.shift(-other)
        if isinstance(other, LogNorm):
            return self + LogNorm(1 / other.R, other.d, other.q)
        return NotImplemented

    def __neg__(self):
        return LogNorm(1 / self.R, self.d, self.q)

    def floor(self) -> int:
        """Largest integer k with q^k <= N."""
        k = self._guess()
        Q = Fraction(self.q) ** self.d
        while Q ** k > self.R:
            k -= 1
        while Q ** (k + 1) <= self.R:
            k += 1
        return k

    def ceil(self) -> int:
        """Smallest integer k with N <= q^k."""
        k = self.floor()
        return k if Fraction(self.q) ** (k * self.d) == self.R else k + 1

    def _guess(self) -> int:
        num, den = self.R.numerator, self.R.denominator
        bits = num.bit_length() - den.bit_length()
        qbits = max(1, self.q.bit_length() - 1)
        return bits // (qbits * self.d)

    def is_integer(self) -> bool:
        r = self.as_rational()
        return r is not None and r.denominator == 1

    def integer_difference(self, other: "LogNorm") -> int | None:
        """k with self = other + k, when the two lie in the same class mod Z."""
        if isinstance(other, NegInf):
            return None
        ratio = self.R ** other.d / other.R ** self.d
        k = _int_log(ratio, self.q)
        if k is None:
            return None
        dd = self.d * other.d
        if k % dd:
            return None
        return k // dd

    def same_class(self, other: "LogNorm") -> bool:
        return self.integer_difference(other) is not None

    def __str__(self):
        r = self.as_rational()
        if r is not None:
            return str(r)
        if self.d == 1:
            return f"log({self.R})"
        return f"log({self.R})/{self.d}"

    def __repr__(self):
        return f"LogNorm({self}, q={self.q})"


@functools.total_ordering
class NegInf:
    """log of the zero norm."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def is_neg_inf(self) -> bool:
        return True

    def __eq__(self, other):
        return isinstance(other, NegInf)

    def __lt__(self, other):
        return not isinstance(other, NegInf)

    def __hash__(self):
        return hash("-inf")

    def __add__(self, k):
        return self

    __radd__ = __add__

    def shift(self, k):
        return self

    def as_rational(self):
        return None

    def __str__(self):
        return "-inf"

    __repr__ = __str__


NEG_INF = NegInf()
