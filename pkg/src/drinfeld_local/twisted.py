"""Twisted polynomials K[tau] with tau * a = a^q0 * tau.

Coefficients may be LocalElem or FFElem values; both support the q0-power
map through :func:`frob`.  Polynomials print as ``a0 + a1*T + a2*T^2``.
"""

from __future__ import annotations

from typing import Sequence

from . import linalg
from .errors import DependentBasisError, NotAnIsogenyError, TwistMismatchError
from .finite_field import FFElem
from .local_field import LocalElem
from .parsing import wrap


def frob(x, k: int):
    """x^k for k a power of the characteristic."""
    if k == 1:
        return x
    if isinstance(x, LocalElem):
        return x.frobenius_power(k)
    return x ** k


class TwistedPoly:
    """sum a_i tau^i; immutable.  ``one`` is the unit of the coefficient field."""

    __slots__ = ("c", "q0", "one")

    def __init__(self, coeffs: Sequence, q0: int, one):
        c = list(coeffs)
        while c and not c[-1]:
            c.pop()
        self.c = c
        self.q0 = q0
        self.one = one

    # -- constructors --

    @classmethod
    def constant(cls, a, q0: int, one) -> "TwistedPoly":
        return cls([a], q0, one)

    @classmethod
    def tau(cls, q0: int, one, power: int = 1) -> "TwistedPoly":
        zero = one * 0
        return cls([zero] * power + [one], q0, one)

    def _zero(self):
        return self.one * 0

    def _like(self, coeffs) -> "TwistedPoly":
        return TwistedPoly(coeffs, self.q0, self.one)

    # -- queries --

    def degree(self) -> int:
        return len(self.c) - 1

    def leading(self):
        return self.c[-1] if self.c else self._zero()

    def coefficient(self, i: int):
        return self.c[i] if 0 <= i < len(self.c) else self._zero()

    def is_separable(self) -> bool:
        return bool(self.c) and bool(self.c[0])

    def __bool__(self):
        return bool(self.c)

    def __len__(self):
        return len(self.c)

    # -- arithmetic --

    def _check(self, other: "TwistedPoly"):
        if other.q0 != self.q0:
            raise TwistMismatchError(f"twist bases {self.q0} and {other.q0} differ")

    def _lift(self, other):
        if isinstance(other, TwistedPoly):
            self._check(other)
            return other
        if isinstance(other, (LocalElem, FFElem, int)):
            return self._like([self.one * other])
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self.c), len(o.c))
        return self._like([self.coefficient(i) + o.coefficient(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return self._like([-a for a in self.c])

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not self.c or not o.c:
            return self._like([])
        out = [self._zero()] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            if not a:
                continue
            qi = self.q0 ** i
            for j, b in enumerate(o.c):
                if b:
                    out[i + j] = out[i + j] + a * frob(b, qi)
        return self._like(out)

    def __rmul__(self, other):
        # scalar on the left
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self

    def __pow__(self, k: int):
        result = self._like([self.one])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def right_divide(self, d: "TwistedPoly"):
        """(Q, R) with self = Q*d + R and deg R < deg d."""
        self._check(d)
        if not d:
            raise ZeroDivisionError("right division by the zero twisted polynomial")
        m = d.degree()
        dm = d.leading()
        rem = list(self.c)
        quot = [self._zero()] * max(0, len(rem) - m)
        while len(rem) - 1 >= m and rem:
            n = len(rem) - 1
            k = n - m
            c = rem[n] / frob(dm, self.q0 ** k)
            quot[k] = c
            qk = self.q0 ** k
            for j, b in enumerate(d.c):
                if b:
                    rem[k + j] = rem[k + j] - c * frob(b, qk)
            while rem and not rem[-1]:
                rem.pop()
        return self._like(quot), self._like(rem)

    def evaluate(self, x):
        """sum a_i x^(q0^i)."""
        acc = self._zero() if not isinstance(x, LocalElem) else x * 0
        power = x
        for i, a in enumerate(self.c):
            if i:
                power = frob(power, self.q0)
            if a:
                acc = acc + a * power
        return acc

    __call__ = evaluate

    def map_coefficients(self, fn, one=None) -> "TwistedPoly":
        return TwistedPoly([fn(a) for a in self.c], self.q0, one if one is not None else fn(self.one))

    def frobenius_twist(self, times: int = 1) -> "TwistedPoly":
        """Raise every coefficient to the power q0^times."""
        k = self.q0 ** times
        return self._like([frob(a, k) for a in self.c])

    def change_base(self, q_small: int) -> "TwistedPoly":
        """Rewrite in tau_small with tau = tau_small^e, where q0 = q_small^e."""
        e = 0
        x = 1
        while x < self.q0:
            x *= q_small
            e += 1
        if x != self.q0:
            raise TwistMismatchError(f"{self.q0} is not a power of {q_small}")
        out = [self._zero()] * (e * len(self.c) - e + 1) if self.c else []
        for i, a in enumerate(self.c):
            out[e * i] = a
        return TwistedPoly(out, q_small, self.one)

    # -- comparison and printing --

    def __eq__(self, other):
        if isinstance(other, TwistedPoly):
            return self.q0 == other.q0 and self.c == other.c
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        return hash((self.q0, len(self.c)))

    def __str__(self):
        parts = []
        for i, a in enumerate(self.c):
            if not a:
                continue
            s = str(a)
            if i == 0:
                parts.append(s)
                continue
            mono = "T" if i == 1 else f"T^{i}"
            parts.append(mono if s == "1" else f"{wrap(s)}*{mono}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"TwistedPoly({str(self)!r}, q0={self.q0})"


def moore_matrix(vectors: Sequence, q0: int) -> list[list]:
    """Rows (v_i, v_i^q0, ..., v_i^(q0^(n-1)))."""
    n = len(vectors)
    rows = []
    for v in vectors:
        row = [v]
        for _ in range(n - 1):
            row.append(frob(row[-1], q0))
        rows.append(row)
    return rows


def moore_det(vectors: Sequence, q0: int):
    if not vectors:
        raise ValueError("Moore determinant of an empty family")
    return linalg.determinant(moore_matrix(vectors, q0))


def tau_interpolate(vectors: Sequence, values: Sequence, q0: int, one) -> TwistedPoly:
    """The unique sum_{j<n} a_j tau^j taking v_i to values[i]."""
    if len(vectors) != len(values):
        raise ValueError("need one value per basis vector")
    if not vectors:
        return TwistedPoly([], q0, one)
    M = moore_matrix(vectors, q0)
    if not linalg.determinant(M):
        raise DependentBasisError(f"vectors are dependent over F_{q0}")
    coeffs = linalg.solve_linear_system(M, list(values))
    return TwistedPoly(coeffs, q0, one)


def intertwine(g: TwistedPoly, phi_t: TwistedPoly) -> TwistedPoly:
    """psi_t with psi_t * g = g * phi_t, or NotAnIsogenyError."""
    quot, rem = (g * phi_t).right_divide(g)
    if rem:
        raise NotAnIsogenyError("g * phi(t) is not right-divisible by g")
    return quot
