"""Artin-Schreier breaks, Kummer-pairing breaks and the conductor."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .coeff_ring import CoeffElem
from .drinfeld import DrinfeldModule, height
from .errors import DependentBasisError, FieldError, PreconditionError
from .lattice import NormedLattice, reduce, volume_log
from .local_field import LocalElem, LocalField
from .twisted import TwistedPoly, moore_det, tau_interpolate

RAMIFIED = "ramified"
UNRAMIFIED = "unramified_nontrivial"
TRIVIAL = "trivial"


@dataclass(frozen=True)
class ASClass:
    w: LocalElem
    reduced: LocalElem
    kind: str
    break_: int | None = None

    @property
    def is_ramified(self) -> bool:
        return self.kind == RAMIFIED


def wp(z: LocalElem) -> LocalElem:
    """Artin-Schreier map z^p - z."""
    return z.frobenius_power(z.K.p) - z


def as_reduce(w: LocalElem) -> ASClass:
    """Classify X^p - X = w by stripping p-divisible polar terms."""
    K = w.K
    p = K.p
    F = K.residue
    x = w
    while x:
        v = x.valuation()
        if v >= 0 or v % p:
            break
        c = x.leading_coefficient().v
        # x - wp(c^(1/p) pi^(v/p)) = x - c pi^v + c^(1/p) pi^(v/p)
        z = K.monomial(F.elem(F.root(c, p)), v // p)
        x = x - K.monomial(F.elem(c), v) + z
    v = x.valuation()
    if v < 0:
        return ASClass(w, x, RAMIFIED, -v)
    if v > 0:
        return ASClass(w, x, TRIVIAL)
    c0 = x.leading_coefficient().v
    if F.trace_int(c0) == 0:
        return ASClass(w, x, TRIVIAL)
    return ASClass(w, x, UNRAMIFIED)


# -- the scaling factor u ---------------------------------------------------------


@dataclass
class ASFactor:
    u: object
    psi0: TwistedPoly
    u_moore: object
    u_interpolated: object


def _moore(vectors, q0, one):
    return moore_det(vectors, q0) if vectors else one


def as_factor(phi_a: TwistedPoly, basis, f_values) -> ASFactor:
    """u and psi_0 with u * phi_a = (tau - 1) * psi_0, where psi_0 restricts to f on V.

    ``basis`` is an F_{q0}-basis of the kernel V of ``phi_a`` and ``f_values``
    the values of the linear form on it.  u is computed twice: from Moore
    determinants of a kernel basis of f, and from the leading coefficient of
    the interpolated psi_0.  The two must agree.
    """
    q0 = phi_a.q0
    one = phi_a.one
    if not phi_a.is_separable():
        raise PreconditionError("phi_a must have a nonzero constant coefficient")
    if len(basis) != phi_a.degree():
        raise PreconditionError("basis size must equal deg phi_a")
    if len(basis) != len(f_values):
        raise PreconditionError("need one value of f per basis vector")
    j = next((i for i, val in enumerate(f_values) if val), None)
    if j is None:
        raise PreconditionError("the linear form is zero, hence not surjective")
    for b in basis:
        if phi_a.evaluate(b):
            raise PreconditionError("basis vector is not in the kernel")
    if not moore_det(list(basis), q0):
        raise DependentBasisError("kernel basis is dependent")
    v = basis[j] / (one * f_values[j])
    w = [b - v * (one * f_values[i]) for i, b in enumerate(basis) if i != j]
    alpha = phi_a.leading()
    ratio = _moore(w, q0, one) / _moore(w + [v], q0, one)
    u_moore = (ratio ** q0) / alpha
    psi0 = tau_interpolate(list(basis), [one * x for x in f_values], q0, one)
    tau_minus_1 = TwistedPoly([-one, one], q0, one)
    lhs = tau_minus_1 * psi0
    u_interp = lhs.leading() / alpha
    if u_interp != u_moore:
        raise FieldError("Moore and interpolation routes disagree on u")  # pragma: no cover
    quot, rem = (TwistedPoly([u_moore], q0, one) * phi_a).right_divide(psi0)
    if rem or quot != tau_minus_1:
        raise FieldError("u * phi_a is not (tau - 1) * psi_0")  # pragma: no cover
    return ASFactor(u_moore, psi0, u_moore, u_interp)


# -- Kummer breaks ------------------------------------------------------------


@dataclass
class KummerBreakReport:
    height: int
    vanishing_level: int
    exact: bool
    break_: int | None
    zero_homomorphism: bool

    def to_json(self):
        return {"height": self.height, "vanishing_level": self.vanishing_level,
                "exact": self.exact, "break": self.break_, "zero": self.zero_homomorphism}


def kummer_break(D: DrinfeldModule, lam: LocalElem) -> KummerBreakReport:
    h = D.height(lam)
    p = D.A.field.p
    if h == 0:
        return KummerBreakReport(0, 1, True, None, True)
    exact = h % p != 0
    return KummerBreakReport(h, h + 1, exact, h if exact else None, False)


SURJECTIVE = "SurjectiveOnInertia"
PROPER = "ProperImageWitness"
INCONCLUSIVE = "Inconclusive"


@dataclass
class FormResult:
    values: tuple                 # f on the F_p-basis of the torsion
    u: object                     # u_f in k_m
    ramified: bool | None         # None: undecided
    method: str
    as_class: ASClass | None = None


@dataclass
class KummerImageReport:
    outcome: str
    zero_image: bool
    level: CoeffElem
    extension_degree: int
    dimension: int
    forms: list = field(default_factory=list)
    witness: tuple | None = None

    def to_json(self):
        return {
            "outcome": self.outcome,
            "zero_image": self.zero_image,
            "level": str(self.level),
            "extension_degree": self.extension_degree,
            "torsion_dimension_fp": self.dimension,
            "forms_tested": len(self.forms),
            "forms_ramified": sum(1 for f in self.forms if f.ramified),
            "methods": sorted({f.method for f in self.forms}),
            "witness": list(self.witness) if self.witness is not None else None,
        }


def _projective_forms(dim: int, p: int):
    """One nonzero F_p-form per line: first nonzero entry equal to 1."""
    for vals in itertools.product(range(p), repeat=dim):
        nz = next((x for x in vals if x), 0)
        if nz == 1:
            yield vals


def kummer_image_at_level(D: DrinfeldModule, a: CoeffElem, lam: LocalElem, cap_ext: int = 12) -> KummerImageReport:
    """Decide whether the Kummer image at level a is all of D[a] on inertia.

    The image is an F_p-subspace, so it is proper exactly when some nonzero
    form f kills it.  For each f the composite is the Artin-Schreier
    character of u_f * lambda.
    """
    if not D.good_reduction():
        raise PreconditionError("kummer tests need good reduction")
    tors = D.torsion_points(a, cap_ext)
    km = tors.field
    p = km.p
    dim = len(tors.basis)
    if lam.valuation() >= 0:
        return KummerImageReport(PROPER, True, a, tors.degree, dim, [], None)
    Dbar = D.reduction()
    table = Dbar.base.embedding_into(km)
    phi_a = Dbar.phi(a).map_coefficients(lambda x: km.elem(table[x.v]), km.one()).change_base(p)
    basis = list(tors.basis)
    exact = D.has_constant_coefficients()
    if exact:
        Km, ktable = LocalField(D.base.residue, D.base.name).extend(km)
        lam_m = lam.map_coefficients(Km, ktable)
    forms = []
    for vals in _projective_forms(dim, p):
        fac = as_factor(phi_a, basis, [km.elem(v) for v in vals])
        u = fac.u
        if exact:
            cls = as_reduce(lam_m * Km.constant(u))
            forms.append(FormResult(vals, u, cls.is_ramified, "exact", cls))
        elif lam.valuation() % p:
            forms.append(FormResult(vals, u, True, "valuation"))
        else:
            forms.append(FormResult(vals, u, None, "undecided"))
    dead = [f for f in forms if f.ramified is False]
    if dead:
        return KummerImageReport(PROPER, len(dead) == len(forms), a, tors.degree, dim, forms, dead[0].values)
    if all(f.ramified for f in forms):
        return KummerImageReport(SURJECTIVE, False, a, tors.degree, dim, forms, None)
    return KummerImageReport(INCONCLUSIVE, False, a, tors.degree, dim, forms, None)


# -- conductor ------------------------------------------------------------------


def torsion_field_conductor(breaks) -> int:
    breaks = [b for b in breaks if b]
    return max(breaks) + 1 if breaks else 0


def frobenius_descent(D: DrinfeldModule, generators):
    """Strip common q-th powers: (D^(q), lambda^q) has the same conductor as (D, lambda)."""
    q = D.q
    steps = 0
    phi = D.phi_t
    gens = list(generators)
    while gens and all(c.is_power(q) for c in phi.c) and all(x.is_power(q) for x in gens):
        phi = TwistedPoly([c.root(q) for c in phi.c], q, phi.one)
        gens = [x.root(q) for x in gens]
        steps += 1
    if steps == 0:
        return D, gens, 0
    return DrinfeldModule(D.A, phi, D.base), gens, steps


@dataclass
class ConductorReport:
    m: int
    exact: int | None
    interval: tuple | None
    vol_log_q: int
    volume_bound: int
    r: int
    s: int
    n: int
    heights: list
    log_norms: list
    descent_steps: int = 0
    tightened: bool = False
    routes: dict = field(default_factory=dict)

    @property
    def upper(self) -> int:
        return self.exact if self.exact is not None else self.interval[1]

    def to_json(self):
        return {
            "m": self.m,
            "exact": self.exact,
            "interval": list(self.interval) if self.interval else None,
            "vol_log_q": str(self.vol_log_q),
            "volume_bound": self.volume_bound,
            "r": self.r,
            "s": self.s,
            "n": self.n,
            "heights": self.heights,
            "log_norms": [str(e) for e in self.log_norms],
            "descent_steps": self.descent_steps,
            "tightened": self.tightened,
            "routes": self.routes,
        }


def conductor(D: DrinfeldModule, generators, certificates=(), cap_iterations: int = 10 ** 5) -> ConductorReport:
    """Conductor (or an interval for it) of the uniformised module (D, Lambda)."""
    if not D.good_reduction():
        raise PreconditionError("the ambient module must have good reduction")
    s = D.rank
    q = D.q
    p = D.A.field.p
    n = len(generators)
    if n == 0:
        return ConductorReport(0, 0, None, 0, 0, s, s, 0, [], [], routes={"exact": "good reduction"})
    D0, gens, steps = frobenius_descent(D, generators)
    B = reduce(NormedLattice.drinfeld(D0, gens), cap_iterations)
    heights = [height(x) for x in B.values]
    m = max(heights)
    vol = volume_log(B.log_norms, q)
    level = vol + n                       # log_q of vol * C^(r - s), C = q
    tightened = level != 0
    bound = q ** (s * level) - (1 if tightened else 0)
    routes = {}
    if m % p:
        exact, interval = m, None
        routes["exact"] = "maximal reduced height is prime to p"
    else:
        lower = max([1] + [h for h in heights if h % p] + [c for c in certificates if c < m])
        exact, interval = None, (lower, m - 1)
        routes["interval"] = "p divides the maximal height; upper end lowered by one"
    return ConductorReport(m, exact, interval, vol, bound, s + n, s, n, heights, list(B.log_norms),
                           steps, tightened, routes)
