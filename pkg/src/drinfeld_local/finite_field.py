"""Finite fields F_{p^n} with table-driven arithmetic.

Elements are encoded as integers ``sum c_i p^i`` where ``c_i`` are the
coefficients of the element as a polynomial in the generator ``g`` (the
class of ``x`` modulo the defining polynomial).  Multiplication goes
through discrete log / antilog tables, addition through Zech logarithms,
so every operation is a couple of list lookups.  Fields are limited to
``p^n <= 2^16``.
"""

from __future__ import annotations

import functools
import random
from typing import Iterator, Sequence

from .errors import FieldError

MAX_ORDER = 1 << 16

# Defining polynomials, coefficients low -> high, monic.  Checked for
# irreducibility whenever a field is built from them.
DEFAULT_MODULI: dict[int, dict[int, tuple[int, ...]]] = {
    2: {
        1: (1, 1),
        2: (1, 1, 1),
        3: (1, 1, 0, 1),
        4: (1, 1, 0, 0, 1),
        5: (1, 0, 1, 0, 0, 1),
        6: (1, 1, 0, 1, 1, 0, 1),
        7: (1, 1, 0, 0, 0, 0, 0, 1),
        8: (1, 0, 1, 1, 1, 0, 0, 0, 1),
        9: (1, 0, 0, 0, 1, 0, 0, 0, 0, 1),
        10: (1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1),
        11: (1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
        12: (1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1),
        13: (1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
        14: (1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1),
        15: (1, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
        16: (1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    },
    3: {
        1: (1, 1),
        2: (2, 2, 1),
        3: (1, 2, 0, 1),
        4: (2, 0, 0, 2, 1),
        5: (1, 2, 0, 0, 0, 1),
        6: (2, 2, 1, 0, 2, 0, 1),
        7: (1, 0, 2, 0, 0, 0, 0, 1),
        8: (2, 2, 2, 0, 1, 2, 0, 0, 1),
        9: (1, 1, 2, 2, 0, 0, 0, 0, 0, 1),
        10: (2, 1, 0, 0, 2, 2, 2, 0, 0, 0, 1),
    },
    5: {
        1: (3, 1),
        2: (2, 4, 1),
        3: (3, 3, 0, 1),
        4: (2, 4, 4, 0, 1),
        5: (3, 4, 0, 0, 0, 1),
        6: (2, 0, 1, 4, 1, 0, 1),
    },
    7: {
        1: (4, 1),
        2: (3, 6, 1),
        3: (4, 0, 6, 1),
        4: (3, 4, 5, 0, 1),
        5: (4, 1, 0, 0, 0, 1),
    },
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over the prime field F_p, as coefficient lists low -> high --

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mulmod(a, b, m, p):
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    return _fp_mod(prod, m, p)


def _fp_mod(a, m, p):
    a = _trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, y in enumerate(m):
            a[shift + i] = (a[shift + i] - c * y) % p
        _trim(a)
    return a


def _fp_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _fp_mod(a, b, p)
    return a


def _fp_powx(e, m, p):
    """x^e mod m over F_p."""
    result, base = [1], [0, 1]
    while e:
        if e & 1:
            result = _fp_mulmod(result, base, m, p)
        base = _fp_mulmod(base, base, m, p)
        e >>= 1
    return result


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Rabin's irreducibility test over F_p."""
    m = _trim([c % p for c in modulus])
    n = len(m) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    if _fp_powx(p ** n, m, p) != _fp_mod(x, m, p):
        return False
    for r in _prime_factors(n):
        h = _fp_powx(p ** (n // r), m, p)
        diff = _trim([(a - b) % p for a, b in _zip_pad(h, x)])
        if len(_fp_gcd(m, diff, p)) != 1:
            return False
    return True


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]


def default_modulus(p: int, n: int) -> tuple[int, ...]:
    try:
        return DEFAULT_MODULI[p][n]
    except KeyError:
        pass
    # outside the table: first monic irreducible in lexicographic order
    for code in range(p ** n):
        coeffs = [(code // p ** i) % p for i in range(n)] + [1]
        if coeffs[0] and is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise FieldError(f"no irreducible polynomial of degree {n} over F_{p}")


class FiniteField:
    """The field F_p[x]/(modulus).  Use :func:`GF` to get cached instances."""

    def __init__(self, p: int, n: int = 1, modulus: Sequence[int] | None = None, gen_name: str = "g"):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if n < 1:
            raise FieldError("extension degree must be >= 1")
        if p ** n > MAX_ORDER:
            raise FieldError(f"field of order {p}^{n} exceeds the desk-scale limit 2^16")
        if modulus is None:
            modulus = default_modulus(p, n)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise FieldError("defining polynomial must be monic of degree n")
        if not is_irreducible(modulus, p):
            raise FieldError(f"defining polynomial {modulus} is reducible over F_{p}")
        self.p = p
        self.n = n
        self.order = p ** n
        self.modulus = modulus
        self.gen_name = gen_name
        self._mask = sum(c << i for i, c in enumerate(modulus)) if p == 2 else 0
        self._build_tables()

    # -- table construction --

    def _digits(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.n):
            out.append(a % p)
            a //= p
        return out

    def _undigits(self, digits) -> int:
        v = 0
        for c in reversed(digits):
            v = v * self.p + c
        return v

    def _slow_mul(self, a: int, b: int) -> int:
        prod = _fp_mulmod(_trim(self._digits(a)), _trim(self._digits(b)), list(self.modulus), self.p)
        return self._undigits(prod)

    def _mul_by_gen(self, a: int) -> int:
        p, n = self.p, self.n
        if p == 2:
            a <<= 1
            if a >> n:
                a ^= self._mask
            return a
        digits = self._digits(a)
        top = digits[-1]
        shifted = [0] + digits[:-1]
        if top:
            shifted = [(c - top * m) % p for c, m in zip(shifted, self.modulus)]
        return self._undigits(shifted)

    def _slow_add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        da, db = self._digits(a), self._digits(b)
        return self._undigits([(x + y) % self.p for x, y in zip(da, db)])

    def _build_tables(self):
        N = self.order
        if N == 2:
            self._exp = [1]
            self.primitive = 1
        else:
            gen = self.p if self.n > 1 else None
            candidates = ([gen] if gen is not None else []) + [c for c in range(2, N) if c != gen]
            for cand in candidates:
                step = self._mul_by_gen if cand == gen else (lambda y, c=cand: self._slow_mul(y, c))
                exp = [1]
                x = cand
                while x != 1 and len(exp) < N:
                    exp.append(x)
                    x = step(x)
                if len(exp) == N - 1 and x == 1:
                    self._exp = exp
                    self.primitive = cand
                    break
            else:  # pragma: no cover - every finite field has a primitive element
                raise FieldError("no primitive element found")
        self._log = [0] * N
        for i, x in enumerate(self._exp):
            self._log[x] = i
        # Zech table: zech[i] = log(1 + g^i), or -1 when 1 + g^i = 0
        zech = [0] * (N - 1)
        for i, x in enumerate(self._exp):
            s = self._slow_add(1, x)
            zech[i] = -1 if s == 0 else self._log[s]
        self._zech = zech
        self._minus_one = 1 if self.p == 2 else self._exp[(N - 1) // 2]

    # -- integer-level arithmetic --

    def add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        if self.p == 2:
            return a ^ b
        la = self._log[a]
        m = self.order - 1
        z = self._zech[(self._log[b] - la) % m]
        if z < 0:
            return 0
        return self._exp[(la + z) % m]

    def neg(self, a: int) -> int:
        if a == 0 or self.p == 2:
            return a
        m = self.order - 1
        return self._exp[(self._log[a] + m // 2) % m]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self._exp[(-self._log[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if k == 0 else 0
        return self._exp[(self._log[a] * k) % (self.order - 1)]

    def from_int(self, k: int) -> int:
        return k % self.p

    def root(self, a: int, k: int) -> int:
        """The unique k-th root of ``a`` for k a power of p."""
        j, e = 0, 1
        while e < k:
            e *= self.p
            j += 1
        if e != k:
            raise FieldError("roots are only taken for powers of the characteristic")
        # x -> x^(p^j) is inverted by x -> x^(p^(n - j mod n))
        return self.pow(a, self.p ** ((-j) % self.n))

    def trace_int(self, a: int, sub_order: int | None = None) -> int:
        """Trace down to the subfield of order ``sub_order`` (default F_p)."""
        sub_order = sub_order or self.p
        total, x = 0, a
        y = sub_order
        degree = 0
        while y < self.order:
            y *= sub_order
            degree += 1
        for _ in range(degree + 1):
            total = self.add(total, x)
            x = self.pow(x, sub_order)
        return total

    # -- element construction --

    def __call__(self, value) -> "FFElem":
        if isinstance(value, FFElem):
            if value.field is not self:
                raise FieldError("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FFElem(self, value % self.p)
        if isinstance(value, (list, tuple)):
            return FFElem(self, self._undigits([int(c) % self.p for c in value] + [0] * (self.n - len(value))))
        if isinstance(value, str):
            from .parsing import parse_expression
            return parse_expression(value, {self.gen_name: self.gen()}, self.one())
        raise TypeError(f"cannot build a field element from {value!r}")

    def elem(self, code: int) -> "FFElem":
        return FFElem(self, code)

    def zero(self) -> "FFElem":
        return FFElem(self, 0)

    def one(self) -> "FFElem":
        return FFElem(self, 1)

    def gen(self) -> "FFElem":
        """The class of x modulo the defining polynomial."""
        if self.n == 1:
            return FFElem(self, (-self.modulus[0]) % self.p)
        return FFElem(self, self.p)

    def elements(self) -> Iterator["FFElem"]:
        for code in range(self.order):
            yield FFElem(self, code)

    def random_element(self, rng: random.Random, nonzero: bool = False) -> "FFElem":
        lo = 1 if nonzero else 0
        return FFElem(self, rng.randrange(lo, self.order))

    def subfield_elements(self, sub_order: int) -> list["FFElem"]:
        """Elements of the unique subfield of order ``sub_order``."""
        if (self.order - 1) % (sub_order - 1):
            raise FieldError(f"F_{self.order} has no subfield of order {sub_order}")
        step = (self.order - 1) // (sub_order - 1)
        return [self.zero()] + [FFElem(self, self._exp[j * step]) for j in range(sub_order - 1)]

    def in_subfield(self, a: int, sub_order: int) -> bool:
        return self.pow(a, sub_order) == a

    def extension(self, m: int) -> "FiniteField":
        """A field of order ``|self|^m`` (default defining polynomial)."""
        return GF(self.p, self.n * m)

    def embedding_into(self, other: "FiniteField") -> list[int]:
        """Table ``code -> code`` of a field embedding self -> other."""
        return _embedding_table(self, other)

    # -- printing --

    def format(self, a: int) -> str:
        if self.n == 1:
            return str(a)
        digits = self._digits(a)
        terms = []
        for i in range(self.n - 1, -1, -1):
            c = digits[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
                continue
            mono = self.gen_name if i == 1 else f"{self.gen_name}^{i}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"GF({self.p}^{self.n})"

    def __eq__(self, other):
        return (isinstance(other, FiniteField) and self.p == other.p
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))


@functools.lru_cache(maxsize=None)
def _cached_field(p: int, n: int, modulus: tuple[int, ...] | None, gen_name: str) -> FiniteField:
    return FiniteField(p, n, modulus, gen_name)


def GF(p: int, n: int = 1, modulus: Sequence[int] | None = None, gen_name: str = "g") -> FiniteField:
    if modulus is None:
        modulus = default_modulus(p, n) if is_prime(p) else None
    return _cached_field(p, n, tuple(modulus) if modulus is not None else None, gen_name)


@functools.lru_cache(maxsize=None)
def _embedding_table(small: FiniteField, big: FiniteField) -> list[int]:
    if small.p != big.p or big.n % small.n:
        raise FieldError(f"{small!r} does not embed in {big!r}")
    if small is big:
        return list(range(small.order))
    # image of the generator: a root of small.modulus in big
    mod = small.modulus
    root = None
    for y in range(big.order):
        acc = 0
        for c in reversed(mod):
            acc = big.add(big.mul(acc, y), c)
        if acc == 0:
            root = y
            break
    if root is None:  # pragma: no cover
        raise FieldError("defining polynomial has no root in the extension")
    powers = [1]
    for _ in range(small.n - 1):
        powers.append(big.mul(powers[-1], root))
    table = []
    for code in range(small.order):
        acc = 0
        for c, pw in zip(small._digits(code), powers):
            if c:
                acc = big.add(acc, big.mul(c, pw))
        table.append(acc)
    return table


class FFElem:
    __slots__ = ("field", "v")

    def __init__(self, field: FiniteField, v: int):
        self.field = field
        self.v = v

    def _coerce(self, other):
        if isinstance(other, FFElem):
            if other.field is not self.field and other.field != self.field:
                raise FieldError("mixing elements of different fields")
            return other.v
        if isinstance(other, int):
            return other % self.field.p
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FFElem(self.field, self.field.add(self.v, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FFElem(self.field, self.field.sub(self.v, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FFElem(self.field, self.field.sub(o, self.v))

    def __neg__(self):
        return FFElem(self.field, self.field.neg(self.v))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FFElem(self.field, self.field.mul(self.v, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FFElem(self.field, self.field.div(self.v, o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FFElem(self.field, self.field.div(o, self.v))

    def __pow__(self, k: int):
        return FFElem(self.field, self.field.pow(self.v, k))

    def inverse(self):
        return FFElem(self.field, self.field.inv(self.v))

    def frobenius(self, times: int = 1):
        """x -> x^(p^times)."""
        return FFElem(self.field, self.field.pow(self.v, self.field.p ** times))

    def trace(self, sub_order: int | None = None):
        return FFElem(self.field, self.field.trace_int(self.v, sub_order))

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        o = self._coerce(other) if isinstance(other, (FFElem, int)) else None
        if o is None:
            return NotImplemented
        return self.v == o

    def __hash__(self):
        return hash((self.field.order, self.v))

    def __str__(self):
        return self.field.format(self.v)

    def __repr__(self):
        return f"FFElem({self.field.format(self.v)!r} in {self.field!r})"
