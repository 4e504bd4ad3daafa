"""Certified lower and upper bounds for the Gromov width, as rational multiples of pi.

Lower bound: the first shrinking time ``t1`` together with a unimodular
basis of centrally symmetric lattice points of the reflexive companion
gives a diamond inside the polytope, hence width >= 4 pi t1.

Upper bound: any positive integer relation ``sum a_j w_j = 0`` among the
primitive normals gives width <= 2 pi sum a_j l_j for Fano manifolds.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .decompose import FactorKind, build_factors, decomposition_plan
from .errors import NoRelationFound, NotReflexiveCompanion, OriginNotInterior
from .lattice import enumerate_lattice_points
from .polytope import LabeledPolytope, classify, origin_interior, polar_dual, vertices
from .rational import det, is_integral, nullspace, primitive_decompose, primitive_direction, rank, vscale
from .shrink import center, shrink_trace


class LowerStatus(enum.Enum):
    CERTIFIED = "Certified"
    EWALD_NOT_FOUND = "EwaldNotFound"
    NOT_APPLICABLE = "NotApplicable"


class FanoStatus(enum.Enum):
    OK = "ReflexiveCompanionOK"
    NOT_VERIFIED = "NotVerified"


@dataclass(frozen=True)
class LowerBound:
    coefficient_of_pi: Fraction
    t1: Fraction
    ewald_basis: tuple | None
    status: LowerStatus


@dataclass(frozen=True)
class UpperBound:
    coefficient_of_pi: Fraction | None
    support: tuple | None  # J, 0-based constraint indices
    multipliers: tuple | None  # a_j, aligned with support
    fano_status: FanoStatus
    search_bound: int


@dataclass(frozen=True)
class GromovBounds:
    lower: LowerBound
    upper: UpperBound
    equality: bool
    opposite_pair: tuple | None = None
    notes: tuple = field(default=())


def reflexive_companion(p: LabeledPolytope) -> LabeledPolytope:
    """Same normals, every offset 1."""
    if not origin_interior(p):
        raise OriginNotInterior("reflexive companion needs the origin strictly inside")
    return p.with_offsets([1] * p.d)


def symmetric_lattice_points(d: LabeledPolytope) -> list[tuple]:
    pts = enumerate_lattice_points(d)
    return [v for v in pts if any(v) and d.contains(tuple(-x for x in v))]


def _ewald_order(v):
    # short vectors first, then e_1 before e_2 before ...
    return (sum(abs(x) for x in v), tuple(-x for x in v))


def ewald_basis(d: LabeledPolytope) -> tuple | None:
    """First determinant +-1 basis among the symmetric lattice points, or None.

    Each +-pair is represented by its vector whose first nonzero entry is
    positive; candidates are ordered by l1-norm, then so that standard basis
    vectors come in their natural order.
    """
    if any(lam != 1 for lam in d.offsets):
        raise NotReflexiveCompanion("every offset must be 1")
    n = d.n
    reps = sorted({v for v in symmetric_lattice_points(d)
                   if next(x for x in v if x) > 0}, key=_ewald_order)

    def search(start, chosen):
        if len(chosen) == n:
            return tuple(chosen) if abs(det(chosen)) == 1 else None
        for i in range(start, len(reps)):
            cand = chosen + [reps[i]]
            if rank(cand) == len(cand):
                found = search(i + 1, cand)
                if found:
                    return found
        return None

    return search(0, [])


def lower_bound(p: LabeledPolytope, trace=None) -> LowerBound:
    trace = trace or shrink_trace(p, with_events=False)
    t1 = trace.stages[0].time
    coef = 4 * t1
    basis = ewald_basis(reflexive_companion(p))
    if not classify(p).smooth:
        return LowerBound(coef, t1, basis, LowerStatus.NOT_APPLICABLE)
    if basis is None:
        return LowerBound(coef, t1, None, LowerStatus.EWALD_NOT_FOUND)
    corners = [vscale(s * t1, b) for b in basis for s in (1, -1)]
    status = LowerStatus.CERTIFIED if all(p.contains(c) for c in corners) \
        else LowerStatus.EWALD_NOT_FOUND
    return LowerBound(coef, t1, basis, status)


def fano_check(p: LabeledPolytope) -> FanoStatus:
    """Proxy: the companion built from primitive normals is a reflexive lattice polytope."""
    comp = LabeledPolytope(p.n, tuple((w, 1) for w in p.primitive_normals))
    if not all(is_integral(v) for v in vertices(comp).vertices):
        return FanoStatus.NOT_VERIFIED
    if not all(is_integral(v) for v in polar_dual(comp)):
        return FanoStatus.NOT_VERIFIED
    return FanoStatus.OK


def _relation_key(cost, support, mult):
    return (cost, sum(mult), support, mult)


def circuit_relations(ws: list[tuple]) -> list[tuple[tuple, tuple]]:
    """Positive minimal-support relations among ``ws`` as (support, multipliers)."""
    n = len(ws[0])
    out = []
    for size in range(2, n + 2):
        for J in itertools.combinations(range(len(ws)), size):
            cols = [ws[j] for j in J]
            mat = [[c[r] for c in cols] for r in range(n)]
            ker = nullspace(mat)
            if len(ker) != 1:
                continue
            ray = ker[0]
            if all(x > 0 for x in ray) or all(x < 0 for x in ray):
                _, a = primitive_direction(ray)
                a = tuple(abs(x) for x in a)
                out.append((J, a))
    return out


def lu_upper_bound(p: LabeledPolytope, search_bound: int = 12, fano=None) -> UpperBound:
    """Smallest ``2 sum a_j l_j`` over circuits and over relations with ``sum a <= search_bound``."""
    if search_bound < 1:
        raise ValueError("search bound must be positive")
    q = p if origin_interior(p) else center(p)[0]  # the value is translation invariant
    ws, ls = [], []
    for v, lam in q.constraints:
        a, w = primitive_decompose(v)
        ws.append(w)
        ls.append(lam / a)
    if any(x <= 0 for x in ls):
        raise OriginNotInterior("unlabeled offsets must be positive")
    best = None
    for J, a in circuit_relations(ws):
        cost = sum(ai * ls[j] for ai, j in zip(a, J))
        key = _relation_key(cost, J, a)
        if best is None or key < best:
            best = key
    n, d = p.n, len(ws)
    limit = [best[0] if best else None]

    def dfs(i, remaining, vec, cost, mult):
        nonlocal best
        if i == d:
            if any(mult) and not any(vec):
                J = tuple(j for j in range(d) if mult[j])
                a = tuple(mult[j] for j in J)
                key = _relation_key(cost, J, a)
                if best is None or key < best:
                    best = key
                    limit[0] = cost
            return
        for k in range(remaining + 1):
            c = cost + k * ls[i]
            if limit[0] is not None and c > limit[0]:
                break
            nv = tuple(x + k * y for x, y in zip(vec, ws[i])) if k else vec
            mult.append(k)
            dfs(i + 1, remaining - k, nv, c, mult)
            mult.pop()

    dfs(0, search_bound, tuple([0] * n), Fraction(0), [])
    if best is None:
        raise NoRelationFound("no positive relation within the search bound")
    cost, _, J, a = best
    status = fano if fano is not None else fano_check(q)
    return UpperBound(2 * cost, J, a, status, search_bound)


def opposite_pairs(p: LabeledPolytope, indices) -> list[tuple[int, int]]:
    ws = {i: primitive_decompose(p.constraints[i][0])[1] for i in indices}
    out = []
    for i, j in itertools.combinations(sorted(indices), 2):
        if all(x == -y for x, y in zip(ws[i], ws[j])):
            out.append((i, j))
    return out


def width_report(p: LabeledPolytope, search_bound: int = 12) -> GromovBounds:
    """Combine both bounds; ``equality`` when the product criterion applies and they meet."""
    plan = decomposition_plan(p)
    q = plan.polytope
    factors = build_factors(plan)
    lower = lower_bound(q, plan.trace)
    upper = lu_upper_bound(q, search_bound)
    if plan.M == 0:
        relevant = factors[0]
    else:
        relevant = next(f for f in factors if f.kind is FactorKind.CYLINDER and f.k == 1)
    pairs = opposite_pairs(q, relevant.indices)
    equality = (bool(pairs)
                and lower.status is LowerStatus.CERTIFIED
                and upper.fano_status is FanoStatus.OK
                and upper.coefficient_of_pi == lower.coefficient_of_pi)
    notes = []
    if upper.fano_status is FanoStatus.OK:
        notes.append("Fano condition checked by the reflexive-companion proxy only")
    else:
        notes.append("upper bound requires the Fano hypothesis, which was not verified")
    if any(plan.translation):
        notes.append("bounds computed for the centered translate")
    return GromovBounds(lower, upper, equality, pairs[0] if pairs else None, tuple(notes))
