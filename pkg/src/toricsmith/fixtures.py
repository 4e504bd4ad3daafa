"""Canonical fixtures and a seeded random-polytope generator."""
from __future__ import annotations

import random
from fractions import Fraction

from .polytope import LabeledPolytope, is_compact


def _p(name, rows):
    return LabeledPolytope.from_rows(rows, name=name)


def ex1() -> LabeledPolytope:
    return _p("ex1", [((0, 1), 3), ((0, -1), 3), ((-1, 0), 3), ((1, 1), 3), ((1, -1), 3),
                      ((2, 1), 4)])


def ex2() -> LabeledPolytope:
    return _p("ex2", [((0, 0, 1), 1), ((0, 0, -1), 1), ((1, 0, 1), 2), ((-1, 0, 1), 2),
                      ((0, 1, 1), 2), ((0, -1, 1), 2)])


def ex3() -> LabeledPolytope:
    return _p("ex3", [((1, 0), 4), ((-1, 0), 4), ((0, 1), 4), ((0, -1), 4), ((1, 1), 6),
                      ((-1, 1), 7), ((-2, -3), 12)])


def ex4() -> LabeledPolytope:
    return _p("ex4", [((1, 0, 0), 4), ((-1, 0, 0), 4), ((0, 1, 0), 3), ((0, -1, 0), 3),
                      ((1, 1, 0), 5), ((0, 0, 1), 1), ((0, 0, -1), 1)])


def ex5() -> LabeledPolytope:
    return _p("ex5", [((0, 1), 2), ((0, -1), 2), ((1, 1), 6), ((2, -1), 8), ((-1, 0), 6)])


def cp2(lam=1) -> LabeledPolytope:
    return _p("cp2", [((-1, 0), lam), ((0, -1), lam), ((1, 1), lam)])


def sq(lam=1) -> LabeledPolytope:
    return _p("sq", [((1, 0), lam), ((-1, 0), lam), ((0, 1), lam), ((0, -1), lam)])


def seg(lam=1) -> LabeledPolytope:
    return _p("seg", [((1,), lam), ((-1,), lam)])


WORKED_EXAMPLES = {"ex1": ex1, "ex2": ex2, "ex3": ex3, "ex4": ex4, "ex5": ex5}


def all_fixtures() -> dict[str, LabeledPolytope]:
    out = {name: f() for name, f in WORKED_EXAMPLES.items()}
    out.update(cp2=cp2(), sq=sq(), seg=seg(), cp2_3=cp2(3), sq_5_2=sq(Fraction(5, 2)))
    return out


def random_polytope(rng: random.Random, n: int, max_d: int = 10, coef: int = 4,
                    max_den: int = 3) -> LabeledPolytope:
    """Random compact full-dimensional rational polytope containing the origin.

    Normals are drawn from ``[-coef, coef]^n``; offsets are positive rationals
    with small denominators, so the origin is interior.  A non-compact draw
    is repaired by appending the simplex normals ``-e_i`` and ``(1,...,1)``.
    """
    repair = n + 1
    k = rng.randint(n + 1, max(n + 1, max_d - repair))
    rows = []
    while len(rows) < k:
        v = tuple(rng.randint(-coef, coef) for _ in range(n))
        if any(v):
            rows.append((v, _offset(rng, max_den)))
    p = LabeledPolytope.from_rows(rows)
    if not is_compact(p):
        for i in range(n):
            rows.append((tuple(-int(i == j) for j in range(n)), _offset(rng, max_den)))
        rows.append((tuple([1] * n), _offset(rng, max_den)))
        p = LabeledPolytope.from_rows(rows)
    return p


def _offset(rng: random.Random, max_den: int) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(den, 5 * den), den)
