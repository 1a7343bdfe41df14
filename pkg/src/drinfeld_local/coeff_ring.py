"""The coefficient ring A = F_q[t].

Coefficients are stored as codes of an ambient finite field ``k`` that
contains F_q, so ring elements act on k((pi)) without any embedding map.
The module also carries the small amount of matrix algebra over A the
lattice code needs: determinants, Hermite form, Smith form and span
membership.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterator, Sequence

from . import polyalg
from .errors import FieldError, SingularMatrixError
from .finite_field import FFElem, FiniteField
from .lognorm import NEG_INF, LogNorm
from .parsing import parse_expression, wrap


class CoeffRing:
    """F_q[t] inside k[t]; q must be the order of a subfield of k."""

    genus = 0
    residue_degree = 1

    def __init__(self, field: FiniteField, q: int | None = None, var: str = "t"):
        q = field.order if q is None else q
        e = 0
        x = 1
        while x < q:
            x *= field.p
            e += 1
        if x != q or field.n % e:
            raise FieldError(f"F_{q} is not a subfield of F_{field.order}")
        self.field = field
        self.q = q
        self.var = var
        self.scalars = field.subfield_elements(q)

    # structural constants for genus 0
    @property
    def c(self) -> int:
        return self.q

    @property
    def C(self) -> int:
        return self.q ** (3 * self.genus + 2 * self.residue_degree - 1)

    def __eq__(self, other):
        return isinstance(other, CoeffRing) and (self.field, self.q, self.var) == (other.field, other.q, other.var)

    def __hash__(self):
        return hash((self.field, self.q, self.var))

    def __repr__(self):
        return f"CoeffRing(q={self.q}, field={self.field!r})"

    def __call__(self, value) -> "CoeffElem":
        if isinstance(value, CoeffElem):
            return value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, int):
            return self.constant(self.field.from_int(value))
        if isinstance(value, FFElem):
            return self.constant(value.v)
        if isinstance(value, (list, tuple)):
            return self.from_codes([self.field(c).v if not isinstance(c, int) else self.field.from_int(c) for c in value])
        raise TypeError(f"cannot build a ring element from {value!r}")

    def from_codes(self, codes: Sequence[int]) -> "CoeffElem":
        codes = polyalg.trim(list(codes))
        for c in codes:
            if not self.field.in_subfield(c, self.q):
                raise FieldError(f"coefficient {self.field.format(c)} is not in F_{self.q}")
        return CoeffElem(self, codes)

    def constant(self, code: int) -> "CoeffElem":
        return self.from_codes([code])

    def zero(self) -> "CoeffElem":
        return CoeffElem(self, [])

    def one(self) -> "CoeffElem":
        return CoeffElem(self, [1])

    def t(self) -> "CoeffElem":
        return CoeffElem(self, [0, 1])

    def parse(self, text: str) -> "CoeffElem":
        F = self.field
        env = {self.var: self.t(), F.gen_name: _ScalarProbe(self, F.gen().v)}
        value = parse_expression(text, env, self.one())
        if isinstance(value, _ScalarProbe):
            value = self.constant(value.code)
        return value

    def enumerate_by_degree(self, d: int) -> Iterator["CoeffElem"]:
        """All q^(d+1) elements of degree <= d (only 0 when d = -1)."""
        if d < 0:
            yield self.zero()
            return
        for combo in itertools.product([x.v for x in self.scalars], repeat=d + 1):
            yield CoeffElem(self, polyalg.trim(list(combo)))

    def monic_of_degree(self, d: int) -> Iterator["CoeffElem"]:
        for combo in itertools.product([x.v for x in self.scalars], repeat=d):
            yield CoeffElem(self, list(combo) + [1])

    def random_element(self, rng: random.Random, max_degree: int, nonzero: bool = False) -> "CoeffElem":
        while True:
            d = rng.randint(0, max_degree)
            codes = [rng.choice(self.scalars).v for _ in range(d + 1)]
            a = CoeffElem(self, polyalg.trim(codes))
            if a or not nonzero:
                return a


class _ScalarProbe:
    """Placeholder for the generator g while parsing ring elements.

    It becomes a constant ring element as soon as it meets ring arithmetic,
    which lets ``g*t + 1`` parse when g lies in F_q and fail cleanly otherwise.
    """

    def __init__(self, ring: CoeffRing, code: int):
        self.ring = ring
        self.code = code

    def _lift(self):
        return self.ring.constant(self.code)

    def __add__(self, o):
        return self._lift() + o

    def __radd__(self, o):
        return o + self._lift()

    def __sub__(self, o):
        return self._lift() - o

    def __rsub__(self, o):
        return o - self._lift()

    def __mul__(self, o):
        return self._lift() * o

    def __rmul__(self, o):
        return o * self._lift()

    def __neg__(self):
        return -self._lift()

    def __pow__(self, k):
        return self._lift() ** k


class CoeffElem:
    __slots__ = ("ring", "c")

    def __init__(self, ring: CoeffRing, codes: list[int]):
        self.ring = ring
        self.c = codes

    @property
    def F(self) -> FiniteField:
        return self.ring.field

    def degree(self) -> int:
        """deg a, with deg 0 = -1."""
        return len(self.c) - 1

    def abs_infinity(self):
        """log_q |a|_inf as a LogNorm (deg a), or -inf for 0."""
        if not self.c:
            return NEG_INF
        return LogNorm.from_rational(self.degree(), self.ring.q)

    def norm(self) -> int:
        """|a|_inf = q^deg a, 0 for a = 0."""
        return self.ring.q ** self.degree() if self.c else 0

    def leading(self) -> int:
        return self.c[-1] if self.c else 0

    def is_monic(self) -> bool:
        return self.leading() == 1

    def monic(self) -> "CoeffElem":
        return CoeffElem(self.ring, polyalg.monic(self.F, self.c))

    def coefficient(self, i: int) -> int:
        return self.c[i] if 0 <= i < len(self.c) else 0

    def __bool__(self):
        return bool(self.c)

    def _co(self, other):
        if isinstance(other, CoeffElem):
            return other
        if isinstance(other, int):
            return self.ring.constant(self.F.from_int(other))
        return None

    def __add__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return CoeffElem(self.ring, polyalg.add(self.F, self.c, o.c))

    __radd__ = __add__

    def __neg__(self):
        return CoeffElem(self.ring, polyalg.neg(self.F, self.c))

    def __sub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return CoeffElem(self.ring, polyalg.sub(self.F, self.c, o.c))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return CoeffElem(self.ring, polyalg.mul(self.F, self.c, o.c))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not in A")
        return CoeffElem(self.ring, polyalg.power(self.F, self.c, k))

    def __divmod__(self, other):
        o = self._co(other)
        q, r = polyalg.divmod_(self.F, self.c, o.c)
        return CoeffElem(self.ring, q), CoeffElem(self.ring, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: "CoeffElem") -> bool:
        if not self:
            return not other
        return not (other % self)

    def __eq__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        return hash(tuple(self.c))

    def __str__(self):
        F = self.F
        parts = []
        for i in range(len(self.c) - 1, -1, -1):
            if not self.c[i]:
                continue
            coef = F.format(self.c[i])
            if i == 0:
                parts.append(coef)
                continue
            mono = self.ring.var if i == 1 else f"{self.ring.var}^{i}"
            parts.append(mono if coef == "1" else f"{wrap(coef)}*{mono}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"CoeffElem({str(self)!r})"


def gcd(a: CoeffElem, b: CoeffElem) -> CoeffElem:
    return CoeffElem(a.ring, polyalg.gcd(a.F, a.c, b.c))


def xgcd(a: CoeffElem, b: CoeffElem):
    g, s, t = polyalg.xgcd(a.F, a.c, b.c)
    R = a.ring
    return CoeffElem(R, g), CoeffElem(R, s), CoeffElem(R, t)


# -- matrices over A -------------------------------------------------------


def determinant(M: list[list[CoeffElem]], ring: CoeffRing) -> CoeffElem:
    """Fraction-free (Bareiss) determinant."""
    n = len(M)
    if n == 0:
        return ring.one()
    A = [list(row) for row in M]
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if not A[k][k]:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return ring.zero()
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[i][j] * A[k][k] - A[i][k] * A[k][j]
                q, r = divmod(num, prev)
                assert not r
                A[i][j] = q
        prev = A[k][k]
    d = A[n - 1][n - 1]
    return d if sign == 1 else -d


def hermite_form(rows: list[list[CoeffElem]], ring: CoeffRing) -> list[list[CoeffElem]]:
    """Row-echelon basis of the A-span of ``rows`` (monic pivots, reduced above)."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return []
    ncols = len(rows[0])
    out: list[list[CoeffElem]] = []
    work = rows
    for col in range(ncols):
        nz = [r for r in work if r[col]]
        rest = [r for r in work if not r[col]]
        if not nz:
            continue
        # Euclid on the pivot column
        while len(nz) > 1:
            nz.sort(key=lambda r: r[col].degree())
            piv = nz[0]
            new = [piv]
            for r in nz[1:]:
                q = r[col] // piv[col]
                r2 = [x - q * y for x, y in zip(r, piv)]
                if r2[col]:
                    new.append(r2)
                elif any(r2):
                    rest.append(r2)
            nz = new
        piv = nz[0]
        inv = ring.constant(ring.field.inv(piv[col].leading()))
        piv = [x * inv for x in piv]
        for r in out:
            q = r[col] // piv[col]
            if q:
                for j in range(ncols):
                    r[j] = r[j] - q * piv[j]
        out.append(piv)
        work = [r for r in rest if any(r)]
    return out


def in_span(vector: list[CoeffElem], rows: list[list[CoeffElem]], ring: CoeffRing) -> bool:
    """Is ``vector`` an A-combination of ``rows``?"""
    H = hermite_form(rows, ring)
    v = list(vector)
    for piv in H:
        col = next(j for j, x in enumerate(piv) if x)
        if v[col]:
            q, r = divmod(v[col], piv[col])
            if r:
                return False
            v = [x - q * y for x, y in zip(v, piv)]
    return not any(v)


def rank(rows: list[list[CoeffElem]], ring: CoeffRing) -> int:
    return len(hermite_form(rows, ring))


def smith_form(M: list[list[CoeffElem]], ring: CoeffRing) -> list[CoeffElem]:
    """Monic invariant factors d_1 | d_2 | ... of a square matrix (zeros for rank loss)."""
    A = [list(r) for r in M]
    n = len(A)
    if n == 0:
        return []
    m = len(A[0])
    diag = []
    for k in range(min(n, m)):
        # find a nonzero entry of minimal degree in the trailing block
        while True:
            best = None
            for i in range(k, n):
                for j in range(k, m):
                    if A[i][j] and (best is None or A[i][j].degree() < A[best[0]][best[1]].degree()):
                        best = (i, j)
            if best is None:
                diag.extend([ring.zero()] * (min(n, m) - k))
                return diag
            i0, j0 = best
            A[k], A[i0] = A[i0], A[k]
            for row in A:
                row[k], row[j0] = row[j0], row[k]
            piv = A[k][k]
            dirty = False
            for i in range(k + 1, n):
                if A[i][k]:
                    q = A[i][k] // piv
                    A[i] = [x - q * y for x, y in zip(A[i], A[k])]
                    dirty = dirty or bool(A[i][k])
            for j in range(k + 1, m):
                if A[k][j]:
                    q = A[k][j] // piv
                    for i in range(n):
                        A[i][j] = A[i][j] - q * A[i][k]
                    dirty = dirty or bool(A[k][j])
            if dirty:
                continue
            # pivot must divide the rest of the block
            bad = next(((i, j) for i in range(k + 1, n) for j in range(k + 1, m)
                        if A[i][j] % piv), None)
            if bad is None:
                break
            A[k] = [x + y for x, y in zip(A[k], A[bad[0]])]
        diag.append(A[k][k].monic())
    return diag


def index_of(M: list[list[CoeffElem]], ring: CoeffRing) -> int:
    """|A^n / M A^n| = q^(deg det M); raises for singular M."""
    d = determinant(M, ring)
    if not d:
        raise SingularMatrixError("coefficient matrix is singular")
    return ring.q ** d.degree()


def identity(n: int, ring: CoeffRing) -> list[list[CoeffElem]]:
    return [[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)]
