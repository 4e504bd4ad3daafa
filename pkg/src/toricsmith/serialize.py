"""Canonical JSON for polytope files and reports.

Rationals travel as ``"p/q"`` strings (``"3"`` for integers), multiples of
pi as ``{"pi_coefficient": "p/q"}`` and constraint indices are 1-based.
``canonical_json`` sorts keys, so equal values always give equal bytes.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction

from .errors import InputError, InvalidPolytope, ToricsmithError
from .polytope import LabeledPolytope

_RATIONAL = re.compile(r"-?\d+(/\d+)?")


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def rat(x) -> str:
    return str(Fraction(x))


def rats(v) -> list:
    return [rat(x) for x in v]


def parse_rational(s) -> Fraction:
    """Inverse of ``rat``; plain JSON integers are accepted as well."""
    if isinstance(s, bool):
        raise InputError(f"not a rational: {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str) or not _RATIONAL.fullmatch(s.strip()):
        raise InputError(f"not a rational: {s!r}")
    num, _, den = s.strip().partition("/")
    if den and int(den) == 0:
        raise InputError(f"zero denominator in {s!r}")
    return Fraction(int(num), int(den or 1))


def pi(x) -> dict:
    return {"pi_coefficient": rat(x)}


def parse_pi(obj) -> Fraction:
    if not isinstance(obj, dict) or "pi_coefficient" not in obj:
        raise InputError(f"not a multiple of pi: {obj!r}")
    return parse_rational(obj["pi_coefficient"])


def one_based(indices) -> list:
    return [i + 1 for i in indices]


# -- polytope files ----------------------------------------------------------

def _int(x, what) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"{what} must be an integer, got {x!r}")
    return x


def parse_polytope(obj) -> LabeledPolytope:
    """Build a polytope from a decoded polytope file.

    Structural problems raise InputError; a file that is well formed but
    describes no valid polytope (wrong normal length, zero normal, fewer than
    ``dim + 1`` constraints) raises InvalidPolytope.
    """
    if not isinstance(obj, dict):
        raise InputError("a polytope file is a JSON object")
    if "dim" not in obj or "constraints" not in obj:
        raise InputError("a polytope file needs 'dim' and 'constraints'")
    dim = _int(obj["dim"], "dim")
    rows = obj["constraints"]
    if not isinstance(rows, list):
        raise InputError("'constraints' must be a list")
    name = obj.get("name")
    if name is not None and not isinstance(name, str):
        raise InputError("'name' must be a string")
    if dim < 1:
        raise InvalidPolytope(f"dim must be positive, got {dim}")
    cons = []
    for k, row in enumerate(rows, start=1):
        if not isinstance(row, dict) or "normal" not in row or "offset" not in row:
            raise InputError(f"constraint {k} needs 'normal' and 'offset'")
        normal = row["normal"]
        if not isinstance(normal, list):
            raise InputError(f"constraint {k}: normal must be a list")
        normal = tuple(_int(x, f"constraint {k} normal entry") for x in normal)
        offset = parse_rational(row["offset"])
        if len(normal) != dim:
            raise InvalidPolytope(f"constraint {k}: normal has length {len(normal)}, expected {dim}")
        if not any(normal):
            raise InvalidPolytope(f"constraint {k}: zero normal")
        cons.append((normal, offset))
    eqs = []
    for k, row in enumerate(obj.get("equalities", []), start=1):
        if not isinstance(row, dict) or "normal" not in row or "offset" not in row:
            raise InputError(f"equality {k} needs 'normal' and 'offset'")
        normal = tuple(parse_rational(x) for x in row["normal"])
        if len(normal) != dim:
            raise InvalidPolytope(f"equality {k}: normal has length {len(normal)}, expected {dim}")
        eqs.append((normal, parse_rational(row["offset"])))
    if len(cons) < dim + 1:
        raise InvalidPolytope(f"{len(cons)} constraints cannot bound a polytope in dimension {dim}")
    try:
        return LabeledPolytope(dim, tuple(cons), tuple(eqs), name)
    except ToricsmithError as exc:  # pragma: no cover - checks above come first
        raise InvalidPolytope(str(exc)) from exc


def dump_polytope(p: LabeledPolytope) -> dict:
    out = {
        "dim": p.n,
        "constraints": [{"normal": list(v), "offset": rat(lam)} for v, lam in p.constraints],
    }
    if p.equalities:
        out["equalities"] = [{"normal": rats(c), "offset": rat(b)} for c, b in p.equalities]
    if p.name is not None:
        out["name"] = p.name
    return out


def load_polytope_text(text: str) -> LabeledPolytope:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
    return parse_polytope(obj)


# -- reports -----------------------------------------------------------------

def encode_properties(r) -> dict:
    return {
        "compact": r.compact,
        "simple": r.simple,
        "smooth": r.smooth,
        "monotone": r.monotone,
        "reflexive": r.reflexive,
        "trivially_labeled": r.trivially_labeled,
        "dimension": r.dimension,
    }


def encode_vertices(vs) -> list:
    return [{"point": rats(v), "tight": one_based(sorted(t))} for v, t in zip(vs.vertices, vs.tight)]


def encode_trace(tr) -> dict:
    stages = []
    for s in tr.stages:
        stages.append({
            "index": s.index,
            "time": rat(s.time),
            "frozen": one_based(s.frozen),
            "drop": s.drop,
            "dimension": s.dimension,
            "base_point": rats(s.base_point),
            "directions": [rats(d) for d in s.directions],
            "projected_normals": [{
                "index": pn.index + 1,
                "vector": rats(pn.vector),
                "label": None if pn.label is None else rat(pn.label),
                "primitive": None if pn.primitive is None else list(pn.primitive),
                "non_lattice": pn.non_lattice,
            } for pn in s.projected_normals],
        })
    return {
        "M": tr.M,
        "times": rats(tr.times),
        "drops": list(tr.drops),
        "frozen_sets": [one_based(d) for d in tr.frozen_sets],
        "endpoint": rats(tr.endpoint),
        "stages": stages,
        "events": [{"time": rat(e.time), "index": e.index + 1, "kind": e.kind.value} for e in tr.events],
        "initial_redundant": one_based(tr.initial_redundant),
    }


def encode_factor(f) -> dict:
    return {
        "label": f.label,
        "kind": f.kind.value,
        "k": f.k,
        "level": rat(f.level),
        "indices": one_based(f.indices),
        "constraints": [{"normal": list(v), "offset": rat(lam)} for v, lam in f.polytope.constraints],
    }


def decomposition_summary(plan, factors) -> dict:
    """The data printed for a decomposition: frozen sets, groups and factors."""
    return {
        "M": plan.M,
        "N": plan.N,
        "D": [one_based(d) for d in plan.trace.frozen_sets],
        "I": [one_based(g) for g in plan.groups],
        "factors": [encode_factor(f) for f in factors],
    }


def encode_report(report) -> dict:
    return {
        "passed": report.passed,
        "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in report.checks],
    }


def encode_plan(plan, factors, report=None) -> dict:
    out = decomposition_summary(plan, factors)
    out["translation"] = rats(plan.translation)
    out["times"] = rats(plan.trace.times)
    out["group_values"] = rats(plan.group_values)
    out["factor_count"] = len(factors)
    if report is not None:
        out["verification"] = encode_report(report)
    return out


def encode_certificate(cert, report=None) -> dict:
    out = {
        "d_total": cert.d_total,
        "stacked": [{"factor": label, "index": i + 1} for label, i in cert.stacked],
        "pi_matrix": [list(r) for r in cert.pi_matrix],
        "kernel_basis": [list(z) for z in cert.kernel_basis],
        "factors": [{
            "label": cf.factor.label,
            "weights": list(cf.weights.m),
            "level": rat(cf.level),
            "circle": list(cf.circle),
            "block": [b + 1 for b in cf.block],
        } for cf in cert.factors],
        "complement": [list(z) for z in cert.complement],
        "central_levels": rats(cert.central_levels),
        "offsets": rats(cert.offsets),
        "N": cert.plan_counts[0],
        "M": cert.plan_counts[1],
        "notes": list(cert.notes),
    }
    if report is not None:
        out["verification"] = encode_report(report)
    return out


def encode_gromov(g) -> dict:
    lo, up = g.lower, g.upper
    return {
        "lower": {
            **pi(lo.coefficient_of_pi),
            "t1": rat(lo.t1),
            "ewald_basis": None if lo.ewald_basis is None else [list(b) for b in lo.ewald_basis],
            "status": lo.status.value,
        },
        "upper": {
            **pi(up.coefficient_of_pi),
            "support": one_based(up.support),
            "multipliers": list(up.multipliers),
            "fano_status": up.fano_status.value,
            "search_bound": up.search_bound,
        },
        "equality": g.equality,
        "opposite_pair": None if g.opposite_pair is None else one_based(g.opposite_pair),
        "notes": list(g.notes),
    }
