"""Decomposition of a centered polytope into monotone pieces.

The frozen sets of the shrinking trace and the groups of remaining facets
with equal offsets give ``N + 1`` full-dimensional monotone polytopes and
``M`` cylinders over lower-dimensional monotone polytopes whose intersection
is the input polytope.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import ToricsmithError
from .polytope import (
    LabeledPolytope,
    is_compact,
    is_subset,
    merge_parallel,
    same_vertex_set,
)
from .rational import nullspace, rank
from .shrink import ShrinkTrace, center, shrink_trace


class FactorKind(enum.Enum):
    FULL = "FullDim"
    CYLINDER = "Cylinder"


@dataclass(frozen=True)
class DecompositionPlan:
    polytope: LabeledPolytope  # centered
    translation: tuple  # original = centered moved back by this vector
    trace: ShrinkTrace
    groups: tuple  # I_1..I_N, 0-based indices
    group_values: tuple

    @property
    def M(self) -> int:
        return self.trace.M

    @property
    def N(self) -> int:
        return len(self.groups)


@dataclass(frozen=True)
class MonotoneFactor:
    kind: FactorKind
    k: int  # FullDim: group number (0..N); Cylinder: stage number j (1..M)
    indices: tuple  # original constraint indices, ascending
    polytope: LabeledPolytope  # ambient R^n
    level: Fraction

    @property
    def label(self) -> str:
        return f"{self.kind.value}({self.k})"


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]


class PlanError(ToricsmithError):
    pass


def decomposition_plan(p: LabeledPolytope) -> DecompositionPlan:
    """Center ``p``, shrink it and group the surviving facets by offset."""
    centered, shift = center(p)
    trace = shrink_trace(centered, with_events=False)
    frozen_all = {i for s in trace.stages for i in s.frozen}
    for s in trace.stages:
        expected = {i for i, lam in enumerate(centered.offsets) if lam == s.time}
        if set(s.frozen) != expected:
            raise PlanError(f"stage {s.index}: frozen set {s.frozen} differs from offsets equal to t")
    rest = [i for i in range(centered.d) if i not in frozen_all]
    values = sorted({centered.offsets[i] for i in rest})
    groups = tuple(tuple(i for i in rest if centered.offsets[i] == v) for v in values)
    last = trace.stages[-1].time
    times = list(trace.times)
    if any(a >= b for a, b in zip(times, times[1:])) or (values and values[0] <= last):
        raise PlanError("offset ordering t_1 < ... < t_(M+1) < lambda_(j_1) < ... violated")
    return DecompositionPlan(centered, shift, trace, groups, tuple(values))


def build_factors(plan: DecompositionPlan) -> list[MonotoneFactor]:
    p = plan.polytope
    stages = plan.trace.stages
    frozen_all = sorted(i for s in stages for i in s.frozen)
    last = stages[-1].time
    factors = [MonotoneFactor(FactorKind.FULL, 0, tuple(frozen_all),
                              p.subset(frozen_all, last), last)]
    for k, (group, value) in enumerate(zip(plan.groups, plan.group_values), start=1):
        idx = tuple(sorted(frozen_all + list(group)))
        factors.append(MonotoneFactor(FactorKind.FULL, k, idx, p.subset(idx, value), value))
    for j in range(1, len(stages)):
        idx = tuple(sorted(i for s in stages[:j] for i in s.frozen))
        t = stages[j - 1].time
        factors.append(MonotoneFactor(FactorKind.CYLINDER, j, idx, p.subset(idx, t), t))
    return factors


def essential_polytope(f: MonotoneFactor) -> LabeledPolytope:
    """Restrict a factor to the span of its normals (identity for full-dimensional ones)."""
    p = f.polytope
    normals = [list(v) for v in p.normals]
    if rank(normals) == p.n:
        return p
    eqs = tuple((u, 0) for u in nullspace(normals))
    return LabeledPolytope(p.n, p.constraints, eqs)


def intersection(factors: list[MonotoneFactor]) -> LabeledPolytope:
    rows = tuple(row for f in factors for row in f.polytope.constraints)
    return LabeledPolytope(factors[0].polytope.n, rows)


def verify_theorem1(p: LabeledPolytope, factors: list[MonotoneFactor]) -> VerificationReport:
    """Check containment, intersection equality and compact monotone factors."""
    checks = []
    bad = [f.label for f in factors if not is_subset(p, f.polytope)]
    checks.append(Check("contains", not bad, f"not containing P: {bad}" if bad else ""))

    stacked = merge_parallel(intersection(factors))
    try:
        equal = same_vertex_set(p, stacked)
        detail = "" if equal else "vertex sets differ"
    except ToricsmithError as exc:
        equal, detail = False, str(exc)
    checks.append(Check("intersection", equal, detail))

    bad = []
    for f in factors:
        ess = essential_polytope(f)
        offsets = set(f.polytope.offsets)
        if len(offsets) != 1 or f.level not in offsets or f.level <= 0:
            bad.append(f"{f.label}: not monotone")
        elif not is_compact(ess):
            bad.append(f"{f.label}: not compact")
    checks.append(Check("monotone_compact", not bad, "; ".join(bad)))
    return VerificationReport(tuple(checks))


def rescaling_inclusions(factors: list[MonotoneFactor]) -> list[tuple[str, bool]]:
    """Each full factor k >= 1 lies in the base factor scaled by level_k / level_0."""
    base = factors[0]
    out = []
    for f in factors[1:]:
        if f.kind is FactorKind.FULL:
            scaled = base.polytope.scaled(f.level / base.level)
            out.append((f.label, is_subset(f.polytope, scaled)))
    return out
