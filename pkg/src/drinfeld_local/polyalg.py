"""Dense univariate polynomials over a FiniteField.

A polynomial is a list of coefficient codes (ints in the field encoding),
lowest degree first, with no trailing zeros.  The zero polynomial is ``[]``.
These helpers back both the coefficient ring F_q[t] and the gcd
normalisation of rational Laurent functions.
"""

from __future__ import annotations

from .finite_field import FiniteField


def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def degree(a: list[int]) -> int:
    return len(a) - 1  # -1 for the zero polynomial


def add(F: FiniteField, a, b) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] = F.add(out[i], y)
    return trim(out)


def neg(F: FiniteField, a) -> list[int]:
    return [F.neg(x) for x in a]


def sub(F: FiniteField, a, b) -> list[int]:
    return add(F, a, neg(F, b))


def scale(F: FiniteField, a, c: int) -> list[int]:
    if c == 0:
        return []
    return [F.mul(x, c) for x in a]


def shift(a, k: int) -> list[int]:
    return [0] * k + list(a) if a else []


def mul(F: FiniteField, a, b) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return trim(out)


def divmod_(F: FiniteField, a, b) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    inv_lead = F.inv(b[-1])
    if len(r) - 1 < db:
        return [], trim(r)
    q = [0] * (len(r) - db)
    while len(r) - 1 >= db and r:
        c = F.mul(r[-1], inv_lead)
        k = len(r) - 1 - db
        q[k] = c
        for i, y in enumerate(b):
            if y:
                r[k + i] = F.sub(r[k + i], F.mul(c, y))
        trim(r)
    return trim(q), r


def monic(F: FiniteField, a) -> list[int]:
    if not a:
        return []
    return scale(F, a, F.inv(a[-1]))


def gcd(F: FiniteField, a, b) -> list[int]:
    a, b = trim(list(a)), trim(list(b))
    while b:
        a, b = b, divmod_(F, a, b)[1]
    return monic(F, a)


def xgcd(F: FiniteField, a, b):
    """Return (g, s, t) with s*a + t*b = g monic (or g = [] if a = b = 0)."""
    r0, r1 = trim(list(a)), trim(list(b))
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        q, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, q, s1))
        t0, t1 = t1, sub(F, t0, mul(F, q, t1))
    if not r0:
        return [], [], []
    c = F.inv(r0[-1])
    return scale(F, r0, c), scale(F, s0, c), scale(F, t0, c)


def evaluate(F: FiniteField, a, x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def power(F: FiniteField, a, k: int) -> list[int]:
    result, base = [1], list(a)
    while k:
        if k & 1:
            result = mul(F, result, base)
        base = mul(F, base, base)
        k >>= 1
    return result
