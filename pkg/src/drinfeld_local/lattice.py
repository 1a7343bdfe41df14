"""Normed A-lattices, their orthogonal bases, volumes and point counts.

Two kinds of lattice share one reduction routine:

* abstract: vectors of A^n with the norm ``max_j |x_j| q^(e_j)`` for a
  fixed frame of log-norms ``e_j``;
* Drinfeld: an A-submodule of D(K) generated by periods, with norm
  ``||lambda||^(1/s)`` where ``||.||`` is the canonical height and s the rank.

All norms are handled as exact :class:`LogNorm` values.  Volumes are
powers of q and are reported by their integer logarithm.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import coeff_ring as cr
from . import linalg
from .coeff_ring import CoeffElem, CoeffRing
from .drinfeld import DrinfeldModule, height
from .errors import DependentBasisError, PreconditionError, ReductionError, SingularMatrixError
from .local_field import LocalElem
from .lognorm import NEG_INF, LogNorm

DEFAULT_ITERATION_CAP = 10 ** 5


class NormedLattice:
    """Generators plus the norm; use :meth:`abstract` or :meth:`drinfeld`."""

    def __init__(self, ring: CoeffRing, mode: str, generators: list, frame=None, module=None):
        self.A = ring
        self.mode = mode
        self.generators = list(generators)
        self.frame = list(frame) if frame is not None else None
        self.module = module
        self.q = ring.q

    @classmethod
    def abstract(cls, ring: CoeffRing, log_norms, generators=None) -> "NormedLattice":
        """Sublattice of A^n spanned by ``generators`` (rows); identity by default."""
        frame = [e if isinstance(e, LogNorm) else LogNorm.from_rational(Fraction(e), ring.q) for e in log_norms]
        n = len(frame)
        if generators is None:
            generators = cr.identity(n, ring)
        generators = [[ring(x) for x in row] for row in generators]
        if any(len(row) != n for row in generators):
            raise PreconditionError("generator rows must match the frame dimension")
        return cls(ring, "abstract", generators, frame=frame)

    @classmethod
    def drinfeld(cls, module: DrinfeldModule, generators: list[LocalElem]) -> "NormedLattice":
        if not module.good_reduction():
            raise PreconditionError("the ambient module must have good reduction")
        return cls(module.A, "drinfeld", generators, module=module)

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def s(self) -> int:
        return self.module.rank if self.mode == "drinfeld" else 1

    # -- the three primitive operations on values --

    def norm(self, x):
        if self.mode == "drinfeld":
            return LogNorm.from_height(height(x), self.module.rank, self.q)
        best = NEG_INF
        for xj, ej in zip(x, self.frame):
            if xj:
                val = ej.shift(xj.degree())
                if val > best:
                    best = val
        return best

    def act(self, a: CoeffElem, x):
        if self.mode == "drinfeld":
            return self.module.act(a, x)
        return [a * xj for xj in x]

    def add(self, x, y):
        if self.mode == "drinfeld":
            return x + y
        return [u + v for u, v in zip(x, y)]

    def zero(self):
        if self.mode == "drinfeld":
            return self.module.base.zero()
        return [self.A.zero() for _ in self.frame]

    def is_zero(self, x) -> bool:
        if self.mode == "drinfeld":
            return not x
        return not any(x)

    def combine(self, coeffs: list[CoeffElem], values: list):
        acc = self.zero()
        for a, x in zip(coeffs, values):
            if a:
                acc = self.add(acc, self.act(a, x))
        return acc

    def value_of_coords(self, coords: list[CoeffElem]):
        return self.combine(coords, self.generators)


@dataclass
class OrthogonalBasis:
    lattice: NormedLattice
    values: list                 # basis vectors (A^n rows or LocalElem)
    coords: list                 # rows: A-coordinates w.r.t. the original generators
    log_norms: list              # ascending
    iterations: int = 0

    @property
    def rank(self) -> int:
        return len(self.values)

    @property
    def q(self) -> int:
        return self.lattice.q


@dataclass
class VolumeReport:
    vol_log_q: int                          # vol = q^vol_log_q
    q: int
    rank: int
    routes: dict = field(default_factory=dict)

    @property
    def vol(self) -> Fraction:
        return Fraction(self.q) ** self.vol_log_q

    @property
    def euler_characteristic(self) -> int:
        return -self.vol_log_q

    @property
    def agree(self) -> bool:
        return all(v == self.vol_log_q for v in self.routes.values())


# -- reduction -------------------------------------------------------------


def reduce(L: NormedLattice, cap_iterations: int = DEFAULT_ITERATION_CAP) -> OrthogonalBasis:
    """Orthogonal basis of the module generated by ``L.generators``."""
    A = L.A
    n = L.rank
    values = list(L.generators)
    coords = [[A.one() if i == j else A.zero() for j in range(n)] for i in range(n)]
    norms = []
    for x in values:
        if L.is_zero(x):
            raise DependentBasisError("a generator is zero")
        e = L.norm(x)
        if e is NEG_INF:
            raise ReductionError("a generator has norm 0; the module is not discrete")
        norms.append(e)
    if L.mode == "abstract" and n:
        if n != len(L.frame):
            raise PreconditionError("abstract lattices must have full rank")
        if not cr.determinant(values, A):
            raise DependentBasisError("generators are linearly dependent over A")

    scalars = [c.v for c in A.scalars if c.v]
    iterations = 0
    while True:
        step = _reduction_step(L, values, coords, norms, scalars)
        if step is None:
            break
        iterations += 1
        if iterations > cap_iterations:
            raise ReductionError(f"reduction did not finish within {cap_iterations} steps; "
                                 "the norm may not be discrete")
    order = sorted(range(n), key=lambda i: (norms[i], i))
    return OrthogonalBasis(L, [values[i] for i in order], [coords[i] for i in order],
                           [norms[i] for i in order], iterations)


def _classes(norms) -> list[list[int]]:
    groups: list[list[int]] = []
    for i, e in enumerate(norms):
        for grp in groups:
            if norms[grp[0]].same_class(e):
                grp.append(i)
                break
        else:
            groups.append([i])
    return groups


def _reduction_step(L, values, coords, norms, scalars) -> bool | None:
    A = L.A
    t = A.t()
    for grp in _classes(norms):
        if len(grp) < 2:
            continue
        shifted: dict[tuple[int, int], object] = {}

        def aligned(i, d):
            key = (i, d)
            if key not in shifted:
                shifted[key] = L.act(t ** d, values[i])
            return shifted[key]

        for combo in itertools.product([0] + scalars, repeat=len(grp)):
            part = [(i, c) for i, c in zip(grp, combo) if c]
            if len(part) < 2:
                continue
            top = max(norms[i] for i, _ in part)
            w = L.zero()
            w_coords = [A.zero()] * L.rank
            for i, c in part:
                d = top.integer_difference(norms[i])
                cc = A.constant(c)
                w = L.add(w, L.act(cc, aligned(i, d)))
                mult = cc * t ** d
                w_coords = [x + mult * y for x, y in zip(w_coords, coords[i])]
            if L.is_zero(w):
                raise DependentBasisError("generators are linearly dependent over A")
            e = L.norm(w)
            if e is NEG_INF:
                raise ReductionError("a nonzero lattice element has norm 0; the module is not discrete")
            if e < top:
                # replace the largest participant; it has d = 0 and a unit coefficient
                j = max((i for i, _ in part if norms[i] == top))
                values[j] = w
                coords[j] = w_coords
                norms[j] = e
                return True
    return None


def successive_minima(B: OrthogonalBasis) -> list:
    return sorted(B.log_norms)


# -- volumes -----------------------------------------------------------------


def _log_r(log_r, q):
    if isinstance(log_r, LogNorm):
        return log_r
    return LogNorm.from_rational(Fraction(log_r), q)


def volume_log(log_norms, q: int, log_r=0) -> int:
    """log_q vol_r for an orthogonal basis: sum ceil(e_i - log r) - n."""
    r = _log_r(log_r, q)
    return sum((e - r).ceil() for e in log_norms) - len(log_norms)


def volume_orthogonal(B: OrthogonalBasis, log_r=0) -> VolumeReport:
    v = volume_log(B.log_norms, B.q, log_r)
    return VolumeReport(v, B.q, B.rank, {"orthogonal": v})


def volume_det(B: OrthogonalBasis, M, log_r=0) -> VolumeReport:
    """Volume of the sublattice spanned by the rows of M (in B-coordinates)."""
    A = B.lattice.A
    M = [[A(x) for x in row] for row in M]
    n = B.rank
    if len(M) != n or any(len(r) != n for r in M):
        raise PreconditionError("M must be square of the lattice rank")
    if n == 0:
        return VolumeReport(0, B.q, 0, {"determinant": 0, "smith": 0})
    det = cr.determinant(M, A)
    if not det:
        raise SingularMatrixError("the sublattice matrix is singular")
    diag = cr.smith_form(M, A)
    smith_deg = sum(d.degree() for d in diag)
    base = volume_log(B.log_norms, B.q, log_r)
    return VolumeReport(base + det.degree(), B.q, n,
                        {"determinant": base + det.degree(), "smith": base + smith_deg})


def volume_frame(L: NormedLattice, log_r=0) -> VolumeReport:
    """Abstract lattices only: |det G| times the volume of the frame lattice A^n."""
    if L.mode != "abstract":
        raise PreconditionError("the frame route needs an abstract lattice")
    A = L.A
    det = cr.determinant(L.generators, A) if L.rank else A.one()
    if not det:
        raise SingularMatrixError("generators are dependent")
    v = volume_log(L.frame, L.q, log_r) + det.degree()
    return VolumeReport(v, L.q, L.rank, {"frame_determinant": v})


# -- counting ----------------------------------------------------------------


def count_points_log(B: OrthogonalBasis, log_r, i: int) -> int:
    """log_q #{x in L : N(x) <= r q^i}, from the orthogonal basis."""
    r = _log_r(log_r, B.q)
    total = 0
    for e in B.log_norms:
        total += max(0, (r.shift(i) - e).floor() + 1)
    return total


def count_points(B: OrthogonalBasis, log_r, i: int) -> int:
    return B.q ** count_points_log(B, log_r, i)


def stable_index(B: OrthogonalBasis, log_r=0) -> int:
    """Smallest i from which count * vol_r = q^(n i) holds exactly."""
    r = _log_r(log_r, B.q)
    if not B.log_norms:
        return 0
    return max((e - r).ceil() for e in B.log_norms) - 1


def degree_bounds(B: OrthogonalBasis, log_r, i: int) -> list[int]:
    """Coefficient degree caps for the ball: deg a_j <= floor(i + log r - e_j)."""
    r = _log_r(log_r, B.q).shift(i)
    return [(r - e).floor() for e in B.log_norms]


def count_points_enumerate(B: OrthogonalBasis, log_r, i: int, cap: int = 1 << 16) -> int:
    """Count by evaluating every combination within the orthogonality degree caps.

    The norm of each combination is computed from scratch, so the count does
    not rely on orthogonality beyond the choice of enumeration range.
    """
    L = B.lattice
    A = L.A
    r = _log_r(log_r, B.q).shift(i)
    bounds = degree_bounds(B, log_r, i)
    size = 1
    for d in bounds:
        size *= A.q ** (d + 1) if d >= 0 else 1
    if size > cap:
        raise PreconditionError(f"enumeration of {size} points exceeds the cap {cap}")
    pools = [list(A.enumerate_by_degree(d)) if d >= 0 else [A.zero()] for d in bounds]
    count = 0
    for combo in itertools.product(*pools):
        x = L.combine(list(combo), B.values)
        if L.norm(x) <= r:
            count += 1
    return count


def count_points_frame(L: NormedLattice, log_r, i: int, enumerate_cap: int = 0) -> int:
    """Abstract lattices: exact count of the ball without using any reduced basis.

    The ball is an F_q-subspace of the box {deg x_j <= D_j}.  Writing a lattice
    point as x = a G, Cramer's rule bounds deg a_k, and the count is q^dim of
    the space of such a with a G inside the box.  When the candidate space is
    at most ``enumerate_cap`` points it is enumerated instead.
    """
    if L.mode != "abstract":
        raise PreconditionError("frame counting needs an abstract lattice")
    A = L.A
    G = L.generators
    n = L.rank
    if n == 0:
        return 1
    r = _log_r(log_r, L.q).shift(i)
    D = [(r - e).floor() for e in L.frame]
    det = cr.determinant(G, A)
    adj_deg = []
    for k in range(n):
        # deg a_k <= max_j (D_j + deg adj(G)_{jk}) - deg det
        best = None
        for j in range(n):
            if D[j] < 0:
                continue
            minor = [[G[rr][cc] for cc in range(n) if cc != j] for rr in range(n) if rr != k]
            md = cr.determinant(minor, A).degree() if n > 1 else 0
            if md < 0:
                continue
            cand = D[j] + md
            best = cand if best is None else max(best, cand)
        adj_deg.append(-1 if best is None else best - det.degree())
    E = adj_deg
    if all(e < 0 for e in E):
        return 1
    size = A.q ** sum(e + 1 for e in E if e >= 0)
    if size <= enumerate_cap:
        pools = [list(A.enumerate_by_degree(e)) if e >= 0 else [A.zero()] for e in E]
        count = 0
        for combo in itertools.product(*pools):
            x = L.combine(list(combo), G)
            if all(not xj or xj.degree() <= dj for xj, dj in zip(x, D)):
                count += 1
        return count
    return A.q ** _ball_dimension(A, G, D, E)


def _ball_dimension(A: CoeffRing, G, D, E) -> int:
    """dim_{F_q} of {a : deg a_k <= E_k, (a G)_j has degree <= D_j}."""
    F = A.field
    unknowns = [(k, d) for k in range(len(E)) for d in range(E[k] + 1)]
    if not unknowns:
        return 0
    # one equation per (column j, degree m > D_j) coefficient that may be nonzero
    rows = []
    for j, dj in enumerate(D):
        top = max(E[k] + G[k][j].degree() for k in range(len(E)) if E[k] >= 0 and G[k][j])\
            if any(E[k] >= 0 and G[k][j] for k in range(len(E))) else -1
        for m in range(max(dj + 1, 0), top + 1):
            row = []
            for k, d in unknowns:
                row.append(F.elem(G[k][j].coefficient(m - d)))
            rows.append(row)
    rk = linalg.rank(rows) if rows else 0
    return len(unknowns) - rk


# -- orthogonality certificate and generator bound ---------------------------------


def orthogonality_violations(B: OrthogonalBasis, max_degree: int = 3, limit: int = 1):
    """Search coefficient tuples with deg <= max_degree for N(sum) < max N(a_i b_i)."""
    L = B.lattice
    A = L.A
    pools = [list(A.enumerate_by_degree(max_degree))] * B.rank
    found = []
    for combo in itertools.product(*pools):
        if not any(combo):
            continue
        lhs = L.norm(L.combine(list(combo), B.values))
        rhs = max(e.shift(a.degree()) for a, e in zip(combo, B.log_norms) if a)
        if lhs != rhs:
            found.append(combo)
            if len(found) >= limit:
                break
    return found


@dataclass
class GeneratorBound:
    bound_log_q: int                       # B = q^bound_log_q = vol * C^n
    spanning: list                         # pairs (d, i) for t^d b_i inside the ball
    generates: bool
    ball_size_log_q: int


def generator_bound(B: OrthogonalBasis) -> GeneratorBound:
    """B = vol * C^n, the ball Lambda(B), and a check that it generates."""
    if B.rank and B.log_norms[0] < LogNorm.from_rational(0, B.q):
        raise PreconditionError("the minimal norm is below 1; rescale the lattice first")
    A = B.lattice.A
    n = B.rank
    C_log = 1  # C = q for A = F_q[t]
    bound = volume_log(B.log_norms, B.q) + n * C_log
    level = LogNorm.from_rational(bound, B.q)
    spanning = []
    for i, e in enumerate(B.log_norms):
        top = (level - e).floor()
        spanning.extend((d, i) for d in range(top + 1))
    rows = []
    t = A.t()
    for d, i in spanning:
        rows.append([t ** d if j == i else A.zero() for j in range(n)])
    generates = all(
        cr.in_span([A.one() if j == i else A.zero() for j in range(n)], rows, A) for i in range(n)
    )
    return GeneratorBound(bound, spanning, generates, len(spanning))
