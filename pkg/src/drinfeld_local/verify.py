"""Seeded brute-force verification suites.

Each suite returns a :class:`SuiteResult`.  The first failing case is kept
as a counterexample; everything is deterministic given the seed.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import coeff_ring as cr
from .coeff_ring import CoeffRing
from .drinfeld import DrinfeldModule, height
from .errors import DependentBasisError, DrinfeldError, ExtensionCapError, ReductionError
from .finite_field import GF
from .lattice import (
    NormedLattice, count_points, count_points_enumerate, count_points_frame,
    generator_bound, orthogonality_violations, reduce, stable_index, volume_det, volume_frame,
    volume_log, volume_orthogonal,
)
from .local_field import LocalField
from .lognorm import LogNorm
from .ramification import (
    PROPER, SURJECTIVE, as_factor, as_reduce, conductor, kummer_image_at_level, wp,
)
from .twisted import TwistedPoly, moore_det


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: int = 0
    skipped: int = 0
    counterexample: dict | None = None
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0 and self.cases > 0

    def fail(self, **info):
        self.failures += 1
        if self.counterexample is None:
            self.counterexample = {k: str(v) for k, v in info.items()}

    def to_json(self):
        return {"suite": self.name, "passed": self.passed, "cases": self.cases,
                "failures": self.failures, "skipped": self.skipped,
                "counterexample": self.counterexample,
                "notes": {k: str(v) for k, v in self.notes.items()}}


# -- random instances ---------------------------------------------------------------


def random_integral(K: LocalField, rng: random.Random, unit: bool = False, max_terms: int = 3):
    vmin = 0 if unit else rng.randint(0, 2)
    return K.random_laurent(rng, vmin, vmin + 4, max_terms)


def random_module(A: CoeffRing, K: LocalField, rank: int, rng: random.Random) -> DrinfeldModule:
    """Random good-reduction module with Laurent-polynomial coefficients."""
    coeffs = [random_integral(K, rng)]
    for _ in range(1, rank):
        coeffs.append(random_integral(K, rng) if rng.random() < 0.7 else K.zero())
    coeffs.append(random_integral(K, rng, unit=True))
    return DrinfeldModule(A, TwistedPoly(coeffs, A.q, K.one()), K)


def random_period(K: LocalField, rng: random.Random, vmin: int = -6, vmax: int = -1, terms: int = 3):
    v = rng.randint(vmin, vmax)
    return K.random_laurent(rng, v, v + 5, terms)


def random_frame_lattice(A: CoeffRing, n: int, rng: random.Random, max_den: int = 3, max_deg: int = 2,
                         unimodular_only: bool = False) -> NormedLattice:
    frame = []
    for _ in range(n):
        den = rng.randint(1, max_den)
        frame.append(LogNorm.from_rational(Fraction(rng.randint(-den, 3 * den), den), A.q))
    while True:
        G = [[A.random_element(rng, max_deg) for _ in range(n)] for _ in range(n)]
        d = cr.determinant(G, A)
        if d and (not unimodular_only or d.degree() == 0):
            return NormedLattice.abstract(A, frame, G)


# -- criterion suites ------------------------------------------------------------------


def suite_supnorm(seed: int = 0, cases: int = 0) -> SuiteResult:
    """A^n with the sup norm: vol = q^-n, Lambda(1) generates, no vectors of norm < 1."""
    res = SuiteResult("supnorm")
    for q in (2, 3):
        A = CoeffRing(GF(q))
        for n in (1, 2, 3):
            res.cases += 1
            L = NormedLattice.abstract(A, [0] * n)
            B = reduce(L)
            v = volume_orthogonal(B).vol_log_q
            gb = generator_bound(B)
            # brute force: every nonzero vector with entries of degree <= 1 has norm >= 1
            small = [x for x in itertools.product(A.enumerate_by_degree(1), repeat=n) if any(x)]
            min_norm = min(L.norm(list(x)) for x in small)
            ok = (v == -n and gb.bound_log_q == 0 and gb.generates
                  and min_norm == LogNorm.from_rational(0, q)
                  and count_points_frame(L, 0, -1, enumerate_cap=1 << 12) == 1)
            if not ok:
                res.fail(q=q, n=n, vol_log=v, bound=gb.bound_log_q, generates=gb.generates)
    return res


def suite_latcount(seed: int = 0, cases: int = 50) -> SuiteResult:
    """Point counts versus c^(ni)/vol on random lattices, from an independent box count."""
    rng = random.Random(seed)
    res = SuiteResult("latcount")
    equalities = 0
    for _ in range(cases):
        q = rng.choice((2, 3))
        n = rng.randint(1, 3)
        A = CoeffRing(GF(q))
        L = random_frame_lattice(A, n, rng)
        B = reduce(L)
        log_r = Fraction(rng.randint(-2, 2), rng.randint(1, 2))
        vol = volume_log(B.log_norms, q, log_r)
        i0 = max(stable_index(B, log_r), 0)
        res.cases += 1
        for i in sorted(set(range(0, 6)) | {i0, i0 + 1}):
            brute = count_points_frame(L, log_r, i, enumerate_cap=1 << 10)
            formula = count_points(B, log_r, i)
            lower_ok = brute * q ** vol >= q ** (n * i) if vol >= 0 else brute >= q ** (n * i - vol)
            if brute != formula or not lower_ok:
                res.fail(q=q, n=n, frame=[str(e) for e in L.frame], i=i, brute=brute, formula=formula)
                break
            if i >= i0:
                equalities += 1
                if q ** (n * i - vol) != brute:
                    res.fail(q=q, n=n, i=i, brute=brute, expected=f"{q}^{n * i - vol}")
                    break
    res.notes["stable_equalities_checked"] = equalities
    return res


def suite_volume_routes(seed: int = 0, cases: int = 30) -> SuiteResult:
    """Orthogonal formula, determinant (with Smith index) and counting agree exactly."""
    rng = random.Random(seed)
    res = SuiteResult("volume_routes")
    for case in range(cases):
        q = rng.choice((2, 3))
        A = CoeffRing(GF(q))
        if case % 3 == 2:
            _drinfeld_routes(res, A, rng)
            continue
        n = rng.randint(1, 3)
        L = random_frame_lattice(A, n, rng)
        B = reduce(L)
        orth = volume_orthogonal(B).vol_log_q
        frame = volume_frame(L).vol_log_q
        det = volume_det(B, cr.identity(n, A))
        i = max(stable_index(B), 0)
        counted = n * i - _log_exact(count_points_frame(L, 0, i), q)
        # sublattice by a random matrix: determinant route against a fresh reduction
        M = [[A.random_element(rng, 1) for _ in range(n)] for _ in range(n)]
        while not cr.determinant(M, A):
            M = [[A.random_element(rng, 1) for _ in range(n)] for _ in range(n)]
        sub_det = volume_det(B, M)
        sub_rows = [L.combine(row, B.values) for row in M]
        sub = reduce(NormedLattice.abstract(A, L.frame, sub_rows))
        sub_orth = volume_orthogonal(sub).vol_log_q
        res.cases += 1
        if not (orth == frame == det.vol_log_q == counted and det.agree
                and sub_det.agree and sub_det.vol_log_q == sub_orth):
            res.fail(q=q, n=n, orthogonal=orth, frame=frame, det=det.routes, counted=counted,
                     sub=sub_det.routes, sub_orth=sub_orth)
    return res


def _drinfeld_routes(res: SuiteResult, A: CoeffRing, rng: random.Random):
    K = LocalField(A.field)
    s = rng.randint(1, 2)
    n = rng.randint(1, 2)
    D = random_module(A, K, s, rng)
    gens = [random_period(K, rng, -4, -1, 2) for _ in range(n)]
    try:
        B = reduce(NormedLattice.drinfeld(D, gens))
    except (ReductionError, DependentBasisError):
        res.skipped += 1
        return
    q = A.q
    orth = volume_orthogonal(B).vol_log_q
    det = volume_det(B, cr.identity(n, A))
    i = max(stable_index(B), 0)
    try:
        counted = n * i - _log_exact(count_points_enumerate(B, 0, i, cap=1 << 11), q)
    except DrinfeldError:
        res.skipped += 1
        return
    res.cases += 1
    if not (orth == det.vol_log_q == counted and det.agree):
        res.fail(mode="drinfeld", phi=D.phi_t, gens=[str(g) for g in gens], orthogonal=orth,
                 det=det.routes, counted=counted)


def _log_exact(count: int, q: int) -> int:
    k = 0
    while count % q == 0 and count > 1:
        count //= q
        k += 1
    if count != 1:
        raise AssertionError("count is not a power of q")
    return k


def suite_valrel(seed: int = 0, cases: int = 500) -> SuiteResult:
    """height(phi(a) lambda) = q^(s deg a) height(lambda)."""
    rng = random.Random(seed)
    res = SuiteResult("valrel")
    for _ in range(cases):
        q = rng.choice((2, 3))
        k = GF(q, rng.choice((1, 1, 2)))
        A = CoeffRing(k, q)
        K = LocalField(k)
        s = rng.randint(1, 3)
        D = random_module(A, K, s, rng)
        lam = random_period(K, rng)
        a = A.random_element(rng, 2, nonzero=True)
        res.cases += 1
        lhs = height(D.act(a, lam))
        rhs = q ** (s * a.degree()) * height(lam)
        if lhs != rhs:
            res.fail(phi=D.phi_t, a=a, lam=lam, lhs=lhs, rhs=rhs)
    return res


def _kernel_poly(vectors, q0, one, alpha):
    """alpha * prod-style twisted polynomial whose kernel is the F_q0-span of vectors."""
    P = TwistedPoly([one], q0, one)
    for v in vectors:
        c = P.evaluate(v)
        P = TwistedPoly([-(c ** (q0 - 1)), one], q0, one) * P
    return TwistedPoly([alpha], q0, one) * P


def suite_asfactor(seed: int = 0, cases: int = 100) -> SuiteResult:
    """u * phi_a = (tau - 1) psi_0 exactly, and u does not depend on the basis."""
    rng = random.Random(seed)
    res = SuiteResult("asfactor")
    options = [(2, 2, 2), (2, 3, 2), (2, 4, 2), (2, 4, 4), (2, 6, 2), (2, 6, 4), (2, 6, 8),
               (3, 2, 3), (3, 3, 3)]
    while res.cases < cases:
        p, n, q0 = rng.choice(options)
        F = GF(p, n)
        one = F.one()
        dim_max = 0
        x = 1
        while x * q0 <= F.order:
            x *= q0
            dim_max += 1
        dim = rng.randint(1, min(3, dim_max))
        vecs = [F.random_element(rng, nonzero=True) for _ in range(dim)]
        if not moore_det(vecs, q0):
            continue
        phi_a = _kernel_poly(vecs, q0, one, F.random_element(rng, nonzero=True))
        sub = F.subfield_elements(q0)
        while True:
            f_vals = [rng.choice(sub) for _ in range(dim)]
            if any(f_vals):
                break
        res.cases += 1
        try:
            fac = as_factor(phi_a, vecs, f_vals)
            lhs = TwistedPoly([fac.u], q0, one) * phi_a
            rhs = TwistedPoly([-one, one], q0, one) * fac.psi0
            # a random change of basis over F_q0
            while True:
                M = [[rng.choice(sub) for _ in range(dim)] for _ in range(dim)]
                new = [sum((b * c for b, c in zip(vecs, row)), F.zero()) for row in M]
                if moore_det(new, q0):
                    break
            new_f = [sum((fv * c for fv, c in zip(f_vals, row)), F.zero()) for row in M]
            fac2 = as_factor(phi_a, new, new_f)
            perm = list(range(dim))
            rng.shuffle(perm)
            fac3 = as_factor(phi_a, [vecs[i] for i in perm], [f_vals[i] for i in perm])
        except DrinfeldError as exc:
            res.fail(field=F, q0=q0, phi=phi_a, error=exc)
            continue
        if lhs != rhs or fac2.u != fac.u or fac3.u != fac.u:
            res.fail(field=F, q0=q0, phi=phi_a, u=fac.u, u_rebased=fac2.u, u_permuted=fac3.u)
    return res


def suite_asbreak(seed: int = 0, cases: int = 500) -> SuiteResult:
    """wp-invariance of the classification and prime-to-p breaks."""
    rng = random.Random(seed)
    res = SuiteResult("asbreak")
    K2 = LocalField(GF(2))
    worked = as_reduce(K2.parse("pi^-4"))
    res.notes["pi^-4"] = worked.break_
    if worked.break_ != 1 or (K2.parse("pi^-4") - K2.parse("pi^-1")) != wp(K2.parse("pi^-2 + pi^-1")):
        res.fail(worked_case=worked)
    for _ in range(cases):
        p = rng.choice((2, 2, 3, 5))
        k = GF(p, rng.choice((1, 2)))
        K = LocalField(k)
        w = K.random_laurent(rng, rng.randint(-12, 3), 6, 4)
        if rng.random() < 0.3:
            w = w / random_integral(K, rng, unit=True)
        z = K.random_laurent(rng, rng.randint(-6, 2), 4, 3)
        a = as_reduce(w)
        b = as_reduce(w + wp(z))
        res.cases += 1
        parity_ok = all(c.break_ is None or (c.break_ >= 1 and c.break_ % p) for c in (a, b))
        if (a.kind, a.break_) != (b.kind, b.break_) or not parity_ok:
            res.fail(w=w, z=z, a=(a.kind, a.break_), b=(b.kind, b.break_))
    return res


def carlitz_like(m: int):
    """phi_t = pi + T over F_2((pi)) with the single period pi^-m (rank 2 total)."""
    k = GF(2)
    A = CoeffRing(k)
    K = LocalField(k)
    D = DrinfeldModule.from_string(A, K, "pi + T")
    return D, [K.parse(f"pi^-{m}")]


def constructed_instances():
    """The rank-2 constructions used for exact and interval conductors."""
    out = [("pi + T", m) for m in range(1, 8)]
    return [(name, m, *carlitz_like(m)) for name, m in out]


def suite_conductor(seed: int = 0, cases: int = 0) -> SuiteResult:
    """Exact conductor m for odd m <= 7 and an interval ending below m for even m."""
    res = SuiteResult("conductor")
    for _, m, D, gens in constructed_instances():
        rep = conductor(D, gens)
        res.cases += 1
        if m % 2:
            ok = rep.exact == m
        else:
            ok = rep.exact is None and rep.interval is not None and rep.interval[1] <= m - 1
        ok = ok and rep.r == 2
        res.notes[f"m={m}"] = rep.exact if rep.exact is not None else list(rep.interval)
        if not ok:
            res.fail(m=m, report=rep.to_json())
    return res


def _check_condvol(res: SuiteResult, rep, q: int, label):
    vol = Fraction(q) ** rep.vol_log_q
    base = vol * Fraction(q) ** (rep.r - rep.s)
    bound = base ** rep.s
    if base != 1:
        bound -= 1
    res.cases += 1
    if bound != rep.volume_bound or rep.upper > bound or rep.tightened != (base != 1):
        res.fail(instance=label, upper=rep.upper, bound=bound, report=rep.to_json())


def suite_condvol(seed: int = 0, cases: int = 50) -> SuiteResult:
    """Conductor (or interval upper end) <= vol^s C^(s(r-s)), tightened by one when allowed."""
    rng = random.Random(seed)
    res = SuiteResult("condvol")
    for _, m, D, gens in constructed_instances():
        _check_condvol(res, conductor(D, gens), 2, f"pi + T, m={m}")
    random_cases = 0
    while random_cases < cases:
        q = rng.choice((2, 3))
        A = CoeffRing(GF(q))
        K = LocalField(A.field)
        s = rng.randint(1, 2)
        n = rng.randint(1, 2)
        D = random_module(A, K, s, rng)
        gens = [random_period(K, rng, -5, -1, 2) for _ in range(n)]
        try:
            rep = conductor(D, gens)
        except (ReductionError, DependentBasisError):
            res.skipped += 1
            continue
        random_cases += 1
        _check_condvol(res, rep, q, {"phi": str(D.phi_t), "gens": [str(g) for g in gens]})
    return res


def suite_kummer(seed: int = 0, cases: int = 12, cap_ext: int = 12) -> SuiteResult:
    """Finite-level surjectivity for heights prime to p; zero image for integral periods."""
    rng = random.Random(seed)
    res = SuiteResult("kummer")
    k = GF(2)
    A = CoeffRing(k)
    K = LocalField(k)
    modules = [DrinfeldModule.from_string(A, K, s) for s in ("1 + T", "pi + T", "1 + T + T^2", "pi + T^2")]
    done = 0
    while done < cases:
        D = rng.choice(modules) if done % 2 == 0 else random_module(A, K, rng.randint(1, 2), rng)
        P = D.residual_characteristic()
        a = A.random_element(rng, 2, nonzero=True)
        if a.degree() < 1 or cr.gcd(a, P).degree() > 0:
            continue
        v = -rng.choice((1, 3, 5))
        lam = K.random_laurent(rng, v, v + 4, 3)
        try:
            rep = kummer_image_at_level(D, a, lam, cap_ext)
            zero = kummer_image_at_level(D, a, random_integral(K, rng), cap_ext)
        except ExtensionCapError:
            res.skipped += 1
            continue
        done += 1
        res.cases += 1
        if rep.outcome != SURJECTIVE or zero.outcome != PROPER or not zero.zero_image:
            res.fail(phi=D.phi_t, a=a, lam=lam, outcome=rep.outcome, zero=zero.outcome)
    return res


def suite_isogeny(seed: int = 0, cases: int = 0) -> SuiteResult:
    """Conductor reports agree for (D, Lambda) and its Frobenius twist (tau D tau^-1, Lambda^q)."""
    res = SuiteResult("isogeny")
    for _, m, D, gens in constructed_instances():
        tau = TwistedPoly.tau(D.q, D.one())
        D2 = D.isogeny_transport(tau)
        gens2 = [tau.evaluate(x) for x in gens]
        r1, r2 = conductor(D, gens), conductor(D2, gens2)
        res.cases += 1
        if (r1.exact, r1.interval, r1.m) != (r2.exact, r2.interval, r2.m) or D2.phi_t != D.phi_t.frobenius_twist():
            res.fail(m=m, original=r1.to_json(), twisted=r2.to_json())
    return res


def suite_orthogonality(seed: int = 0, cases: int = 20) -> SuiteResult:
    """Reduced bases admit no cancelling combination with coefficient degree <= 2."""
    rng = random.Random(seed)
    res = SuiteResult("orthogonality")
    while res.cases < cases:
        q = 2
        A = CoeffRing(GF(q))
        K = LocalField(A.field)
        if res.cases % 2:
            L = random_frame_lattice(A, rng.randint(1, 2), rng)
        else:
            D = random_module(A, K, rng.randint(1, 2), rng)
            L = NormedLattice.drinfeld(D, [random_period(K, rng, -4, -1, 2) for _ in range(2)])
        try:
            B = reduce(L)
        except (ReductionError, DependentBasisError):
            res.skipped += 1
            continue
        res.cases += 1
        bad = orthogonality_violations(B, 2)
        if bad:
            res.fail(basis=[str(x) for x in B.values], combo=[str(a) for a in bad[0]])
    return res


SUITES = {
    "supnorm": suite_supnorm,
    "latcount": suite_latcount,
    "volume_routes": suite_volume_routes,
    "valrel": suite_valrel,
    "asfactor": suite_asfactor,
    "asbreak": suite_asbreak,
    "conductor": suite_conductor,
    "condvol": suite_condvol,
    "kummer": suite_kummer,
    "isogeny": suite_isogeny,
    "orthogonality": suite_orthogonality,
}


def run_suite(name: str, seed: int = 0, cases: int | None = None) -> SuiteResult:
    fn = SUITES[name]
    return fn(seed) if cases is None else fn(seed, cases)
