"""Labeled polytopes in H-representation and their basic geometry."""
from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadWeights,
    DimensionMismatch,
    EmptyPolytope,
    OriginNotInterior,
    UnboundedPolytope,
    ZeroVector,
)
from .lp import LpStatus, maximize
from .rational import (
    Q,
    det,
    dot,
    gcd_list,
    independent_rows,
    integer_rows,
    ivec,
    lcm_list,
    nullspace,
    primitive_decompose,
    qvec,
    rank,
    solve,
    solve_integer,
    vsub,
)


@dataclass(frozen=True)
class LabeledPolytope:
    """``{x in R^n : <x, v_i> <= lam_i}`` plus optional equality rows.

    Constraint order is significant: facets are identified by their index.
    Normals ``v_i`` are integer vectors; the label of a facet is the gcd of
    the entries of its normal.  Equality rows ``<x, c> = b`` carry rational
    normals and are used for slices of the shrinking procedure.
    """

    n: int
    constraints: tuple
    equalities: tuple = ()
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise DimensionMismatch("ambient dimension must be positive")
        cons = []
        for v, lam in self.constraints:
            v = ivec(v)
            if len(v) != self.n:
                raise DimensionMismatch(f"normal {v} has length {len(v)}, expected {self.n}")
            if not any(v):
                raise ZeroVector("constraint normals must be nonzero")
            cons.append((v, Q(lam)))
        eqs = []
        for c, b in self.equalities:
            c = qvec(c)
            if len(c) != self.n:
                raise DimensionMismatch(f"equality normal {c} has length {len(c)}")
            eqs.append((c, Q(b)))
        object.__setattr__(self, "constraints", tuple(cons))
        object.__setattr__(self, "equalities", tuple(eqs))

    @classmethod
    def from_rows(cls, rows: Iterable, name: str | None = None, equalities=()) -> "LabeledPolytope":
        rows = [(ivec(v), Q(lam)) for v, lam in rows]
        if not rows:
            raise DimensionMismatch("need at least one constraint")
        return cls(len(rows[0][0]), tuple(rows), tuple(equalities), name)

    @property
    def d(self) -> int:
        return len(self.constraints)

    @property
    def normals(self) -> tuple:
        return tuple(v for v, _ in self.constraints)

    @property
    def offsets(self) -> tuple:
        return tuple(lam for _, lam in self.constraints)

    @property
    def labels(self) -> tuple:
        return tuple(primitive_decompose(v)[0] for v in self.normals)

    @property
    def primitive_normals(self) -> tuple:
        return tuple(primitive_decompose(v)[1] for v in self.normals)

    def ub_rows(self) -> list:
        return list(self.constraints)

    def eq_rows(self) -> list:
        return list(self.equalities)

    def contains(self, x: Sequence) -> bool:
        x = qvec(x)
        return (all(dot(x, v) <= lam for v, lam in self.constraints)
                and all(dot(x, c) == b for c, b in self.equalities))

    def with_offsets(self, offsets: Sequence) -> "LabeledPolytope":
        if len(offsets) != self.d:
            raise DimensionMismatch("one offset per constraint")
        return LabeledPolytope(self.n, tuple((v, Q(o)) for v, o in zip(self.normals, offsets)),
                               self.equalities, self.name)

    def translate(self, p: Sequence) -> "LabeledPolytope":
        """The polytope moved by ``-p``: offsets become ``lam_i - <p, v_i>``."""
        p = qvec(p)
        return LabeledPolytope(
            self.n,
            tuple((v, lam - dot(p, v)) for v, lam in self.constraints),
            tuple((c, b - dot(p, c)) for c, b in self.equalities),
            self.name,
        )

    def scaled(self, c) -> "LabeledPolytope":
        c = Q(c)
        return LabeledPolytope(self.n, tuple((v, c * lam) for v, lam in self.constraints),
                               tuple((e, c * b) for e, b in self.equalities), self.name)

    def subset(self, indices: Iterable[int], level=None) -> "LabeledPolytope":
        """Polytope cut out by the chosen constraints, optionally all at one offset."""
        rows = tuple((self.constraints[i][0], self.constraints[i][1] if level is None else Q(level))
                     for i in indices)
        return LabeledPolytope(self.n, rows, self.equalities)


@dataclass(frozen=True)
class VertexSet:
    vertices: tuple
    tight: tuple  # per vertex: frozenset of constraint indices active there

    def __len__(self):
        return len(self.vertices)


@dataclass(frozen=True)
class PropertyReport:
    compact: bool
    simple: bool
    smooth: bool
    monotone: bool
    reflexive: bool
    trivially_labeled: bool
    dimension: int


def is_feasible(p: LabeledPolytope) -> bool:
    return maximize([0] * p.n, p.ub_rows(), p.eq_rows()).optimal


def is_compact(p: LabeledPolytope) -> bool:
    """Bounded iff the normals, restricted to the equality subspace, positively span it.

    Raises EmptyPolytope for an infeasible system.
    """
    return _compact(p)


@functools.lru_cache(maxsize=4096)
def _compact(p: LabeledPolytope) -> bool:
    if not is_feasible(p):
        raise EmptyPolytope("polytope is empty")
    return _recession_free(p.normals, tuple(c for c, _ in p.equalities))


@functools.lru_cache(maxsize=4096)
def _recession_free(normals: tuple, eq_normals: tuple) -> bool:
    """No nonzero ``y`` with ``<y, v_i> <= 0`` for all i and ``<y, c> = 0`` on the equalities."""
    n = len(normals[0]) if normals else len(eq_normals[0]) if eq_normals else 0
    # coordinates of the subspace {y : <y, c> = 0} and the normals restricted to it
    if eq_normals:
        basis = nullspace(list(eq_normals), n)
    else:
        basis = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    if not basis:
        return True
    restricted = [tuple(dot(b, v) for b in basis) for v in normals]
    if not restricted or rank(restricted) < len(basis):
        return False
    d = len(normals)
    ub = [(tuple(-int(i == j) for j in range(d)), -1) for i in range(d)]
    eq = [(tuple(u[r] for u in restricted), 0) for r in range(len(basis))]
    return maximize([0] * d, ub, eq).optimal


def vertices(p: LabeledPolytope) -> VertexSet:
    """Exact vertex set by solving every rank-n choice of active rows."""
    return _vertices(p)


@functools.lru_cache(maxsize=4096)
def _vertices(p: LabeledPolytope) -> VertexSet:
    if not _recession_free(p.normals, tuple(c for c, _ in p.equalities)):
        if not is_feasible(p):
            raise EmptyPolytope("polytope is empty")
        raise UnboundedPolytope("polytope has a recession direction")
    n = p.n
    eq_normals = [c for c, _ in p.equalities]
    eq_idx = independent_rows(eq_normals)
    need = n - len(eq_idx)
    # rows whose normal lies in the span of the equalities are constant on the
    # affine hull and can never complete a nonsingular system
    basis = [eq_normals[i] for i in eq_idx]
    pool = [i for i, v in enumerate(p.normals) if not basis or rank(basis + [v]) > len(basis)]
    found = _candidates_int64(p, eq_idx, pool, need)
    if found is None:
        ineq = integer_rows(p.normals, p.offsets)
        all_eq = integer_rows(eq_normals, [b for _, b in p.equalities])
        eqi = [all_eq[i] for i in eq_idx]
        found = _candidates_exact(n, eqi, ineq, all_eq, pool, need)
    if not found:  # a nonempty recession-free polyhedron has a vertex
        raise EmptyPolytope("polytope is empty")
    verts = sorted((tuple(Fraction(v, den) for v in num), tight)
                   for (num, den), tight in found.items())
    return VertexSet(tuple(v for v, _ in verts), tuple(t for _, t in verts))


def _candidates_exact(n, eqi, ineq, all_eq, pool, need) -> dict:
    """Vertices keyed by reduced Cramer data ``(X, D)``, with their tight rows."""
    found: dict[tuple, frozenset] = {}
    for combo in itertools.combinations(pool, need):
        res = solve_integer(eqi + [ineq[i] for i in combo])
        if res is None:
            continue
        num, den = res
        g = math.gcd(*num, den)
        key = (tuple(v // g for v in num), den // g)
        if key in found:
            continue
        num, den = key
        # <x, a> <= b  with  x = num / den  and  den > 0; stop at the first violated row
        tight = []
        for i, row in enumerate(ineq):
            lhs, rhs = sum(a * x for a, x in zip(row, num)), row[n] * den
            if lhs > rhs:
                break
            if lhs == rhs:
                tight.append(i)
        else:
            if all(sum(a * x for a, x in zip(row, num)) == row[n] * den for row in all_eq):
                found[key] = frozenset(tight)
    return found


_INT64_SAFE = 2 ** 62


@functools.lru_cache(maxsize=None)
def _signed_permutations(n):
    out = []
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        out.append((perm, -1 if inversions % 2 else 1))
    return out


def _leibniz(mats, n):
    total = np.zeros(mats.shape[0], dtype=np.int64)
    for perm, sign in _signed_permutations(n):
        term = mats[:, 0, perm[0]].copy()
        for r in range(1, n):
            term *= mats[:, r, perm[r]]
        total += sign * term
    return total


def _common_denominator_rows(p: LabeledPolytope):
    """Integer normals with every right-hand side over one denominator ``L``.

    Returns ``(ineq, eq, L)`` where each row is ``[a | L * b]``; keeping the
    normals unscaled keeps determinants small.
    """
    eq_rows = []
    for c, b in p.equalities:
        s = lcm_list(x.denominator for x in c)
        eq_rows.append(([int(x * s) for x in c], b * s))
    rows = [(list(v), lam) for v, lam in p.constraints]
    big_l = lcm_list(b.denominator for _, b in rows + eq_rows)
    ineq = [a + [int(b * big_l)] for a, b in rows]
    eq = [a + [int(b * big_l)] for a, b in eq_rows]
    return ineq, eq, big_l


def _candidates_int64(p: LabeledPolytope, eq_idx, pool, need) -> dict | None:
    """Same result as ``_candidates_exact``, evaluated for all choices at once.

    Determinants come from the Leibniz formula in int64.  With ``a`` the
    largest normal entry and ``B`` the largest scaled right-hand side, every
    intermediate is bounded by ``(n + 1) * n! * a^n * B``; None is returned
    when that bound could overflow, so the result is exact.
    """
    n = p.n
    if n > 5 or need == 0 or len(pool) < need:
        return None
    ineq, all_eq, big_l = _common_denominator_rows(p)
    eqi = [all_eq[i] for i in eq_idx]
    a = max(abs(x) for row in ineq + all_eq for x in row[:n])
    b = max([1] + [abs(row[n]) for row in ineq + all_eq])
    if (n + 1) * math.factorial(n) * a ** n * b >= _INT64_SAFE:
        return None
    combos = np.array(list(itertools.combinations(pool, need)), dtype=np.int64).reshape(-1, need)
    rows = np.array(ineq, dtype=np.int64)
    systems = rows[combos]
    if eqi:
        prefix = np.broadcast_to(np.array(eqi, dtype=np.int64), (len(combos), len(eqi), n + 1))
        systems = np.concatenate([prefix, systems], axis=1)
    mats, rhs = systems[:, :, :n], systems[:, :, n]
    det_ = _leibniz(mats, n)
    keep = det_ != 0
    mats, rhs, det_ = mats[keep], rhs[keep], det_[keep]
    nums = np.empty((len(det_), n), dtype=np.int64)
    for j in range(n):
        swapped = mats.copy()
        swapped[:, :, j] = rhs
        nums[:, j] = _leibniz(swapped, n)
    flip = det_ < 0
    det_[flip] = -det_[flip]
    nums[flip] = -nums[flip]
    lhs = nums @ rows[:, :n].T
    bound = det_[:, None] * rows[:, n][None, :]
    ok = np.all(lhs <= bound, axis=1)
    if all_eq:
        eq = np.array(all_eq, dtype=np.int64)
        ok &= np.all(nums @ eq[:, :n].T == det_[:, None] * eq[:, n][None, :], axis=1)
    found: dict[tuple, frozenset] = {}
    for k in np.flatnonzero(ok):
        num = [int(v) for v in nums[k]]
        den = int(det_[k]) * big_l
        g = math.gcd(*num, den)
        key = (tuple(v // g for v in num), den // g)
        if key not in found:
            found[key] = frozenset(int(i) for i in np.flatnonzero(lhs[k] == bound[k]))
    return found


def affine_dimension(points: Sequence[Sequence]) -> int:
    if not points:
        raise EmptyPolytope("no points")
    base = points[0]
    diffs = [vsub(q, base) for q in points[1:]]
    return rank(diffs) if diffs else 0


def dimension(p: LabeledPolytope) -> int:
    """Dimension of the affine hull of the vertex set."""
    return affine_dimension(vertices(p).vertices)


def facet_classes(p: LabeledPolytope) -> list[list[int]]:
    """Group constraint indices that define the same half-space."""
    classes: dict[tuple, list[int]] = {}
    for i, (v, lam) in enumerate(p.constraints):
        a, w = primitive_decompose(v)
        classes.setdefault((w, lam / a), []).append(i)
    return list(classes.values())


def facet_indices(p: LabeledPolytope) -> list[list[int]]:
    """Half-space classes that are facets of a full-dimensional polytope."""
    out = []
    for cls in facet_classes(p):
        i = cls[0]
        others = [row for j, row in enumerate(p.constraints) if j not in cls]
        res = maximize(p.constraints[i][0], others, p.eq_rows())
        if res.status is LpStatus.UNBOUNDED or (res.optimal and res.optimum > p.constraints[i][1]):
            out.append(cls)
    return out


def classify(p: LabeledPolytope) -> PropertyReport:
    if not is_feasible(p):
        raise EmptyPolytope("polytope is empty")
    compact = is_compact(p)
    offsets = p.offsets
    monotone = len(set(offsets)) == 1 and offsets[0] > 0 and not p.equalities
    reflexive = monotone and offsets[0] == 1
    trivially_labeled = all(a == 1 for a in p.labels)
    if not compact:
        return PropertyReport(False, False, False, monotone, reflexive, trivially_labeled,
                              _dimension_noncompact(p))
    vs = vertices(p)
    dim = affine_dimension(vs.vertices)
    simple = smooth = False
    if dim == p.n:
        facets = facet_indices(p)
        simple = smooth = True
        for tight in vs.tight:
            at = [cls for cls in facets if cls[0] in tight]
            if len(at) != p.n:
                simple = smooth = False
                break
            ws = [primitive_decompose(p.constraints[cls[0]][0])[1] for cls in at]
            if abs(det(ws)) != 1:
                smooth = False
    return PropertyReport(compact, simple, smooth, monotone, reflexive, trivially_labeled, dim)


def implicit_equalities(p: LabeledPolytope) -> list[int]:
    """Inequality indices that hold with equality on the whole (nonempty) polytope.

    One homogenised LP: maximise the sum of slacks ``s_i`` in ``[0, 1]`` subject
    to ``<x, v_i> + s_i <= tau lam_i``, equality rows scaled by ``tau >= 1``.
    Scaling a relative interior point makes every non-implicit slack reach 1,
    while implicit rows are forced to slack 0.
    """
    return list(_implicit(p))


@functools.lru_cache(maxsize=4096)
def _implicit(p: LabeledPolytope) -> tuple:
    n, d = p.n, p.d
    if d == 0:
        if not is_feasible(p):
            raise EmptyPolytope("polytope is empty")
        return ()
    # variables: x (n), tau, s (d)
    def row(xpart, tau, sidx=None):
        s_part = [0] * d
        if sidx is not None:
            s_part[sidx] = 1
        return tuple(xpart) + (tau,) + tuple(s_part)

    zero_x = [0] * n
    ub = [(row(v, -lam, i), 0) for i, (v, lam) in enumerate(p.constraints)]
    ub.append((row(zero_x, -1), -1))
    for i in range(d):
        ub.append((row(zero_x, 0, i), 1))
        ub.append((tuple(-x for x in row(zero_x, 0, i)), 0))
    eq = [(row(c, -b), 0) for c, b in p.equalities]
    res = maximize([0] * (n + 1) + [1] * d, ub, eq)
    if not res.optimal:
        raise EmptyPolytope("polytope is empty")
    slacks = res.witness[n + 1:]
    return tuple(i for i in range(d) if slacks[i] == 0)


def _dimension_noncompact(p: LabeledPolytope) -> int:
    rows = [c for c, _ in p.equalities] + [p.constraints[i][0] for i in implicit_equalities(p)]
    return p.n - (rank(rows) if rows else 0)


def wps_polytope(m: Sequence[int], lam) -> LabeledPolytope:
    """Centered polytope of the weighted projective space with weights ``m`` (``m[-1] == 1``)."""
    m = ivec(m)
    lam = Q(lam)
    if len(m) < 2 or any(x <= 0 for x in m):
        raise BadWeights("weights must be at least two positive integers")
    if m[-1] != 1:
        raise BadWeights("the last weight must be 1")
    if gcd_list(m) != 1:
        raise BadWeights("weights must be coprime")
    if lam <= 0:
        raise BadWeights("the level must be positive")
    k = len(m) - 1
    rows = [(tuple(-int(i == j) for j in range(k)), lam) for i in range(k)]
    rows.append((tuple(m[:-1]), lam))
    return LabeledPolytope(k, tuple(rows), name=f"wps{m}")


def origin_interior(p: LabeledPolytope) -> bool:
    return not p.equalities and all(lam > 0 for lam in p.offsets)


def polar_dual(p: LabeledPolytope) -> tuple:
    """Vertices of ``{y : <y, x> <= 1 for all x in P}``, computed from P's vertices."""
    if not origin_interior(p):
        raise OriginNotInterior("the origin must lie strictly inside the polytope")
    verts = vertices(p).vertices
    rows = []
    for x in verts:
        den = lcm_list(c.denominator for c in x)
        rows.append((tuple(int(c * den) for c in x), Fraction(den)))
    return vertices(LabeledPolytope(p.n, tuple(rows))).vertices


def is_subset(p: LabeledPolytope, q: LabeledPolytope) -> bool:
    """P inside Q, checked on the vertices of P (both are convex)."""
    if p.n != q.n:
        raise DimensionMismatch("ambient dimensions differ")
    return all(q.contains(x) for x in vertices(p).vertices)


def same_vertex_set(p: LabeledPolytope, q: LabeledPolytope) -> bool:
    return vertices(p).vertices == vertices(q).vertices


def merge_parallel(p: LabeledPolytope) -> LabeledPolytope:
    """Equivalent system keeping one (tightest) row per primitive normal direction."""
    best: dict[tuple, Fraction] = {}
    for v, lam in p.constraints:
        a, w = primitive_decompose(v)
        off = lam / a
        if w not in best or off < best[w]:
            best[w] = off
    return LabeledPolytope(p.n, tuple(best.items()), p.equalities)
