"""The shrinking procedure: every facet moves inward at unit speed.

Facets whose hyperplanes end up containing the whole shrunken polytope are
frozen at that moment (a dimension drop) and the rest keep moving until a
single point remains.  Everything is computed by exact LP in ambient
coordinates; frozen facets become equality rows.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import EmptyPolytope, NotFullDimensional, TimeOutOfRange, UnboundedPolytope
from .lp import LpStatus, maximize
from .polytope import LabeledPolytope, implicit_equalities, is_compact
from .rational import (
    Q,
    dot,
    independent_rows,
    nullspace,
    primitive_direction,
    project_out,
    qvec,
    rank,
    solve,
)


class EventKind(enum.Enum):
    BECOMES_REDUNDANT = "BecomesRedundant"
    BECOMES_RELEVANT = "BecomesRelevant"


@dataclass(frozen=True)
class RedundancyEvent:
    time: Fraction
    index: int  # 0-based constraint index
    kind: EventKind


@dataclass(frozen=True)
class ProjectedNormal:
    """Component of a surviving normal orthogonal to the frozen normals.

    ``vector == label * primitive``.  ``non_lattice`` is set when the label
    is not an integer, i.e. the projection is not an integer multiple of a
    primitive lattice vector.
    """

    index: int
    vector: tuple
    label: Fraction | None
    primitive: tuple | None

    @property
    def non_lattice(self) -> bool:
        return self.label is not None and self.label.denominator != 1


@dataclass(frozen=True)
class ShrinkStage:
    index: int  # 1-based stage number j
    time: Fraction
    frozen: tuple  # D_j, 0-based constraint indices
    drop: int  # k_j
    dimension: int  # dimension of the slice at this time
    directions: tuple  # basis of the direction space of the slice
    base_point: tuple
    projected_normals: tuple


@dataclass(frozen=True)
class ShrinkTrace:
    polytope: LabeledPolytope
    stages: tuple
    endpoint: tuple
    events: tuple = ()
    initial_redundant: tuple = field(default=())

    @property
    def M(self) -> int:
        return len(self.stages) - 1

    @property
    def times(self) -> tuple:
        return tuple(s.time for s in self.stages)

    @property
    def drops(self) -> tuple:
        return tuple(s.drop for s in self.stages)

    @property
    def frozen_sets(self) -> tuple:
        return tuple(s.frozen for s in self.stages)

    def freeze_stage(self) -> dict[int, int]:
        """Constraint index -> 0-based position of the stage that froze it."""
        return {i: j for j, s in enumerate(self.stages) for i in s.frozen}

    def predicted_dimension(self, t) -> int:
        t = Q(t)
        return self.polytope.n - sum(s.drop for s in self.stages if s.time <= t)


def _stage_lp(p: LabeledPolytope, frozen: dict[int, Fraction]):
    # variables (x, t): maximise t with <x,v_i> + t <= lam_i for moving facets
    ub = [(tuple(v) + (1,), lam) for i, (v, lam) in enumerate(p.constraints) if i not in frozen]
    eq = [(tuple(v) + (0,), level) for i, level in frozen.items() for v in [p.constraints[i][0]]]
    obj = [0] * p.n + [1]
    return maximize(obj, ub, eq)


def _check_full_dimensional(p: LabeledPolytope) -> None:
    if p.equalities:
        raise NotFullDimensional("shrinking needs a polytope without equality rows")
    if not is_compact(p):
        raise UnboundedPolytope("shrinking needs a compact polytope")
    if implicit_equalities(p):
        raise NotFullDimensional("polytope is not full-dimensional")


def shrink_trace(p: LabeledPolytope, with_events: bool = True) -> ShrinkTrace:
    """Run the shrinking procedure to its endpoint.

    Each stage solves ``max t`` over the moving facets exactly; the frozen set
    of the stage is every moving facet that is tight on the whole optimal face.
    """
    _check_full_dimensional(p)
    n = p.n
    frozen: dict[int, Fraction] = {}
    stages = []
    dim_before = n
    while True:
        res = _stage_lp(p, frozen)
        if res.status is LpStatus.UNBOUNDED:
            raise UnboundedPolytope("shrinking never terminates")
        if not res.optimal:
            raise EmptyPolytope("stage LP infeasible")
        t = res.optimum
        face = _slice_rows(p, frozen, t)
        moving = [i for i in range(p.d) if i not in frozen]
        tight = [i for i in implicit_equalities(face) if i in moving]
        if not tight:
            raise AssertionError("empty frozen set contradicts the stage LP optimum")
        for i in tight:
            frozen[i] = p.constraints[i][1] - t
        frozen_normals = [p.constraints[i][0] for i in frozen]
        r = rank(frozen_normals)
        dim_after = n - r
        directions = tuple(nullspace(frozen_normals)) if dim_after else ()
        projected = []
        for i in moving:
            if i in tight:
                continue
            u = project_out(p.constraints[i][0], frozen_normals)
            if any(u):
                q, w = primitive_direction(u)
                projected.append(ProjectedNormal(i, u, q, w))
            else:
                projected.append(ProjectedNormal(i, u, None, None))
        base = res.witness[:n]
        stages.append(ShrinkStage(len(stages) + 1, t, tuple(sorted(tight)), dim_before - dim_after,
                                  dim_after, directions, base, tuple(projected)))
        dim_before = dim_after
        if dim_after == 0:
            break
    endpoint = tuple(stages[-1].base_point)
    trace = ShrinkTrace(p, tuple(stages), endpoint)
    if with_events:
        events, initial = _events(trace)
        trace = ShrinkTrace(p, trace.stages, endpoint, events, initial)
    return trace


def _slice_rows(p: LabeledPolytope, frozen: dict[int, Fraction], t: Fraction) -> LabeledPolytope:
    rows = tuple((v, frozen.get(i, lam - t)) for i, (v, lam) in enumerate(p.constraints))
    eqs = tuple((p.constraints[i][0], level) for i, level in sorted(frozen.items()))
    return LabeledPolytope(p.n, rows, eqs)


def _frozen_at(trace: ShrinkTrace, t: Fraction) -> dict[int, Fraction]:
    p = trace.polytope
    out = {}
    for s in trace.stages:
        if s.time <= t:
            for i in s.frozen:
                out[i] = p.constraints[i][1] - s.time
    return out


def slice_at(p: LabeledPolytope, t, trace: ShrinkTrace | None = None) -> LabeledPolytope:
    """The shrunken polytope at time ``t``.

    Every constraint keeps its index: moving facets sit at ``lam_i - t``,
    frozen ones at the level where they froze, and frozen facets are also
    listed as equality rows.
    """
    t = Q(t)
    trace = trace or shrink_trace(p, with_events=False)
    if t < 0 or t > trace.stages[-1].time:
        raise TimeOutOfRange(f"t={t} outside [0, {trace.stages[-1].time}]")
    return _slice_rows(p, _frozen_at(trace, t), t)


def max_slack(p: LabeledPolytope, t, trace: ShrinkTrace | None = None) -> Fraction:
    """``max s`` such that the moving facets of the slice at ``t`` can still move by ``s``."""
    t = Q(t)
    trace = trace or shrink_trace(p, with_events=False)
    # the stage LP maximises the absolute time, so subtract the current one
    return _stage_lp(p, _frozen_at(trace, t)).optimum - t


def effective_constraints(p: LabeledPolytope, t, trace: ShrinkTrace | None = None) -> list:
    """Moving constraints of the slice at ``t`` with normals projected onto its direction space.

    Returns ``(index, projected normal, offset)`` triples; offsets are taken
    relative to the slice's base point being the origin of the frozen
    coordinates (valid for centered polytopes, where frozen levels are 0).
    """
    t = Q(t)
    trace = trace or shrink_trace(p, with_events=False)
    frozen = _frozen_at(trace, t)
    frozen_normals = [p.constraints[i][0] for i in frozen]
    out = []
    for i, (v, lam) in enumerate(p.constraints):
        if i in frozen:
            continue
        out.append((i, project_out(v, frozen_normals), lam - t))
    return out


def center(p: LabeledPolytope) -> tuple[LabeledPolytope, tuple]:
    """Translate so that the shrinking endpoint is the origin."""
    trace = shrink_trace(p, with_events=False)
    q = trace.endpoint
    if not any(q):
        return p, q
    return p.translate(q), q


def is_centered(p: LabeledPolytope) -> bool:
    return not any(shrink_trace(p, with_events=False).endpoint)


# -- redundancy timeline -----------------------------------------------------

def _redundant(p: LabeledPolytope, frozen: dict[int, Fraction], t: Fraction, i: int) -> bool:
    v, lam = p.constraints[i]
    ub = [(w, mu - t) for j, (w, mu) in enumerate(p.constraints) if j not in frozen and j != i]
    eq = [(p.constraints[j][0], level) for j, level in frozen.items()]
    res = maximize(v, ub, eq)
    return res.optimal and res.optimum <= lam - t


def _candidate_times(p: LabeledPolytope, frozen: dict[int, Fraction], lo: Fraction,
                     hi: Fraction) -> set:
    """Times in (lo, hi) where some basic vertex path crosses a moving hyperplane."""
    n = p.n
    eq_items = sorted(frozen.items())
    eq_normals = [p.constraints[i][0] for i, _ in eq_items]
    keep = independent_rows(eq_normals) if eq_normals else []
    eq_rows = [(eq_normals[k], eq_items[k][1]) for k in keep]
    moving = [i for i in range(p.d) if i not in frozen]
    out = set()
    for combo in itertools.combinations(moving, n - len(eq_rows)):
        a = [c for c, _ in eq_rows] + [p.constraints[i][0] for i in combo]
        b0 = [b for _, b in eq_rows] + [p.constraints[i][1] for i in combo]
        b1 = [0] * len(eq_rows) + [-1] * len(combo)
        x0 = solve(a, b0)
        if x0 is None:
            continue
        x1 = solve(a, b1)
        for k in moving:
            if k in combo:
                continue
            v, lam = p.constraints[k]
            coef = dot(x1, v) + 1
            if coef:
                root = (lam - dot(x0, v)) / coef
                if lo < root < hi:
                    out.add(root)
    return out


def _events(trace: ShrinkTrace) -> tuple[tuple, tuple]:
    p = trace.polytope
    bounds = [Fraction(0)] + [s.time for s in trace.stages]
    # sample each open piece between consecutive breakpoints, in time order
    samples = []  # (left breakpoint, midpoint, frozen)
    for j in range(len(trace.stages)):
        lo, hi = bounds[j], bounds[j + 1]
        frozen = _frozen_at(trace, lo) if j else {}
        cuts = sorted({lo, hi} | _candidate_times(p, frozen, lo, hi))
        for a, b in zip(cuts, cuts[1:]):
            samples.append((a, (a + b) / 2, frozen))
    events = []
    prev: dict[int, bool] = {}
    initial = ()
    for pos, (left, mid, frozen) in enumerate(samples):
        status = {i: _redundant(p, frozen, mid, i) for i in range(p.d) if i not in frozen}
        if pos == 0:
            initial = tuple(i for i, r in sorted(status.items()) if r)
        else:
            for i, r in sorted(status.items()):
                if i in prev and prev[i] != r:
                    kind = EventKind.BECOMES_REDUNDANT if r else EventKind.BECOMES_RELEVANT
                    events.append(RedundancyEvent(left, i, kind))
        prev = status
    events.sort(key=lambda e: (e.time, e.kind is EventKind.BECOMES_RELEVANT, e.index))
    return tuple(events), initial


def event_timeline(p: LabeledPolytope) -> tuple:
    """Redundancy changes of moving facets, sorted by time."""
    return shrink_trace(p, with_events=True).events
