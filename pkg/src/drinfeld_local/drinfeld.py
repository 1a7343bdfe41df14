"""Drinfeld F_q[t]-modules over k((pi)) or over a finite field.

A module is given by the twisted polynomial phi(t).  Evaluation of
phi(a)(x) goes through a Horner scheme in phi(t), which never expands
phi(a) itself; this keeps the Laurent supports small.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from . import linalg, polyalg
from .coeff_ring import CoeffElem, CoeffRing
from .errors import ExtensionCapError, FieldError, NotSeparableError, PreconditionError
from .finite_field import MAX_ORDER, FFElem, FiniteField
from .local_field import LocalElem, LocalField
from .twisted import TwistedPoly, intertwine


def height(x: LocalElem) -> int:
    """max(0, -v(x))."""
    v = x.valuation()
    return 0 if v >= 0 else -v


@dataclass(frozen=True)
class TorsionPoints:
    field: FiniteField         # the extension k_m containing all points
    degree: int                # m = [k_m : k]
    basis: tuple               # F_p-basis of the torsion module
    points: tuple              # every point, 0 included

    def __len__(self):
        return len(self.points)


class DrinfeldModule:
    """phi: A -> base[tau] with phi(t) given; base is a LocalField or FiniteField."""

    def __init__(self, ring: CoeffRing, phi_t: TwistedPoly, base):
        if phi_t.q0 != ring.q:
            raise PreconditionError(f"phi(t) must be written in tau_q with q = {ring.q}")
        if phi_t.degree() < 1:
            raise PreconditionError("a Drinfeld module needs rank >= 1")
        residue = base.residue if isinstance(base, LocalField) else base
        if residue != ring.field:
            raise FieldError("coefficient ring and base field use different residue fields")
        self.A = ring
        self.phi_t = phi_t
        self.base = base
        self.q = ring.q

    # -- construction helpers --

    @classmethod
    def from_string(cls, ring: CoeffRing, base, text: str) -> "DrinfeldModule":
        return cls(ring, parse_twisted(text, base, ring.q), base)

    def scalar(self, code: int):
        """The F_q-scalar with this code, as an element of the base."""
        if isinstance(self.base, LocalField):
            return LocalElem(self.base, {0: code} if code else {}, {0: 1})
        return self.base.elem(code)

    def one(self):
        return self.base.one()

    def __repr__(self):
        return f"DrinfeldModule(phi_t = {self.phi_t})"

    def __eq__(self, other):
        return isinstance(other, DrinfeldModule) and self.phi_t == other.phi_t and self.A == other.A

    def __hash__(self):
        return hash(self.phi_t)

    # -- invariants --

    @property
    def rank(self) -> int:
        return self.phi_t.degree()

    def characteristic(self):
        """iota(t), the constant coefficient of phi(t)."""
        return self.phi_t.coefficient(0)

    def _is_local(self) -> bool:
        return isinstance(self.base, LocalField)

    def good_reduction(self) -> bool:
        if not self._is_local():
            return True
        c = self.phi_t.c
        return all(x.valuation() >= 0 for x in c if x) and c[-1].valuation() == 0

    def finite_residual_char(self) -> bool:
        """True when the residual characteristic is a finite prime of A.

        With A = F_q[t] and a finite residue field this always holds.
        """
        return True

    def residual_characteristic(self) -> CoeffElem:
        """Monic prime of A: the kernel of A -> residue field, t -> residue of iota(t)."""
        iota = self.characteristic()
        if self._is_local():
            if iota and iota.valuation() < 0:
                raise PreconditionError("iota(t) is not integral")
            r = iota.residue().v if iota else 0
        else:
            r = iota.v if iota else 0
        return minimal_polynomial(self.A, r)

    def reduction(self) -> "DrinfeldModule":
        """The reduced module over the residue field (good reduction needed)."""
        if not self._is_local():
            return self
        if not self.good_reduction():
            raise PreconditionError("module does not have good reduction")
        k = self.base.residue
        red = TwistedPoly([k.elem(x.residue().v) if x else k.zero() for x in self.phi_t.c], self.q, k.one())
        return DrinfeldModule(self.A, red, k)

    def has_constant_coefficients(self) -> bool:
        return (not self._is_local()) or all(x.is_constant() for x in self.phi_t.c)

    # -- the action --

    def phi(self, a: CoeffElem) -> TwistedPoly:
        """phi(a) as a twisted polynomial."""
        one = self.phi_t.one
        result = TwistedPoly([], self.q, one)
        for code in reversed(a.c):
            result = result * self.phi_t + TwistedPoly([self.scalar(code)], self.q, one)
        return result

    def act(self, a: CoeffElem, x):
        """phi(a)(x) by Horner in phi(t)."""
        if not a:
            return x * 0
        y = x * self.scalar(a.c[-1])
        for code in reversed(a.c[:-1]):
            y = self.phi_t.evaluate(y)
            if code:
                y = y + x * self.scalar(code)
        return y

    def height(self, x: LocalElem) -> int:
        if not self.good_reduction():
            raise PreconditionError("heights are defined for good-reduction modules")
        return height(x)

    # -- torsion over a finite field --

    def torsion_points(self, a: CoeffElem, cap_ext: int = 12) -> TorsionPoints:
        """All roots of phi(a) in the smallest k_m that splits it."""
        D = self.reduction()
        k = D.base
        if not a:
            raise PreconditionError("a must be nonzero")
        if polyalg.gcd(k, a.c, D.residual_characteristic().c) != [1]:
            raise NotSeparableError("a is not prime to the residual characteristic")
        target = self.q ** (self.rank * a.degree())
        if target == 1:
            return TorsionPoints(k, 1, (), (k.zero(),))
        fa = D.phi(a)
        for m in range(1, cap_ext + 1):
            if k.order ** m > MAX_ORDER:
                break
            km = k.extension(m)
            table = k.embedding_into(km)
            fm = fa.map_coefficients(lambda x: km.elem(table[x.v]), km.one())
            basis = _fp_kernel(fm, km)
            if km.p ** len(basis) == target:
                return TorsionPoints(km, m, tuple(basis), tuple(_span(basis, km)))
        raise ExtensionCapError(
            f"phi({a}) does not split within extension degree {cap_ext} (field size cap 2^16)")

    # -- isogenies --

    def isogeny_transport(self, g: TwistedPoly, rng: random.Random | None = None) -> "DrinfeldModule":
        """The module psi with psi(t) g = g phi(t)."""
        if not g:
            raise PreconditionError("g must be nonzero")
        psi_t = intertwine(g, self.phi_t)
        psi = DrinfeldModule(self.A, psi_t, self.base)
        rng = rng or random.Random(0)
        a = self.A.random_element(rng, 2, nonzero=True)
        for b in (self.A.t(), a):
            if psi.phi(b) * g != g * self.phi(b):
                raise FieldError("intertwining identity failed")  # pragma: no cover
        return psi

    def frobenius_twist(self) -> "DrinfeldModule":
        return DrinfeldModule(self.A, self.phi_t.frobenius_twist(), self.base)


def parse_twisted(text: str, base, q0: int) -> TwistedPoly:
    from .parsing import parse_expression

    one = base.one()
    T = TwistedPoly.tau(q0, one)
    if isinstance(base, LocalField):
        env = {base.name: base.uniformizer(), base.residue.gen_name: base.constant(base.residue.gen()), "T": T}
    else:
        env = {base.gen_name: base.gen(), "T": T}
    value = parse_expression(text, env, one)
    if not isinstance(value, TwistedPoly):
        value = TwistedPoly([value], q0, one)
    return value


def minimal_polynomial(A: CoeffRing, code: int) -> CoeffElem:
    """Monic minimal polynomial over F_q of a residue-field element."""
    k = A.field
    conj = [code]
    while True:
        nxt = k.pow(conj[-1], A.q)
        if nxt == code:
            break
        conj.append(nxt)
    poly = [1]
    for c in conj:
        poly = polyalg.mul(k, poly, [k.neg(c), 1])
    return A.from_codes(poly)


def _fp_kernel(f: TwistedPoly, km: FiniteField) -> list[FFElem]:
    """F_p-basis of ker(x -> f(x)) on km."""
    p, N = km.p, km.n
    cols = []
    for i in range(N):
        img = f.evaluate(km.elem(p ** i)).v
        digits = []
        for _ in range(N):
            digits.append(img % p)
            img //= p
        cols.append(digits)
    matrix = [[cols[j][i] for j in range(N)] for i in range(N)]
    basis = []
    for vec in linalg.nullspace_mod_p(matrix, p):
        code = 0
        for c in reversed(vec):
            code = code * p + c
        basis.append(km.elem(code))
    return basis


def _span(basis, km: FiniteField):
    p = km.p
    out = []
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        x = km.zero()
        for c, b in zip(coeffs, basis):
            if c:
                x = x + b * c
        out.append(x)
    return out
