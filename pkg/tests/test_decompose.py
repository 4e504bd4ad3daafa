import random
from fractions import Fraction

import pytest

from toricsmith.decompose import (
    FactorKind,
    build_factors,
    decomposition_plan,
    essential_polytope,
    rescaling_inclusions,
    verify_theorem1,
)
from toricsmith.fixtures import all_fixtures, ex1, ex2, ex5, random_polytope, sq
from toricsmith.polytope import LabeledPolytope, classify, is_subset

F = Fraction


def one_based(groups):
    return [[i + 1 for i in g] for g in groups]


def test_ex5_plan():
    plan = decomposition_plan(ex5())
    assert (plan.M, plan.N) == (1, 1)
    assert one_based(plan.trace.frozen_sets) == [[1, 2], [3, 5]]
    assert one_based(plan.groups) == [[4]]
    assert plan.group_values == (8,)
    assert plan.translation == (0, 0)


def test_ex1_plan():
    plan = decomposition_plan(ex1())
    assert (plan.M, plan.N) == (0, 1)
    assert one_based(plan.groups) == [[6]]


def test_monotone_plan_and_factors():
    plan = decomposition_plan(sq(F(3, 2)))
    assert (plan.M, plan.N) == (0, 0)
    [f] = build_factors(plan)
    assert f.polytope == sq(F(3, 2)) and f.level == F(3, 2)


def summary(f):
    return f.label, f.level, [i + 1 for i in f.indices], [v for v, _ in f.polytope.constraints]


def test_ex2_factors():
    fs = build_factors(decomposition_plan(ex2()))
    assert [summary(f) for f in fs] == [
        ("FullDim(0)", 2, [1, 2, 3, 4, 5, 6],
         [(0, 0, 1), (0, 0, -1), (1, 0, 1), (-1, 0, 1), (0, 1, 1), (0, -1, 1)]),
        ("Cylinder(1)", 1, [1, 2], [(0, 0, 1), (0, 0, -1)]),
    ]


def test_ex5_factors():
    fs = build_factors(decomposition_plan(ex5()))
    assert [summary(f) for f in fs] == [
        ("FullDim(0)", 6, [1, 2, 3, 5], [(0, 1), (0, -1), (1, 1), (-1, 0)]),
        ("FullDim(1)", 8, [1, 2, 3, 4, 5], [(0, 1), (0, -1), (1, 1), (2, -1), (-1, 0)]),
        ("Cylinder(1)", 2, [1, 2], [(0, 1), (0, -1)]),
    ]


def test_factor_properties_named_in_examples():
    f0, f1 = build_factors(decomposition_plan(ex1()))
    r0 = classify(f0.polytope)
    assert r0.simple and not r0.smooth
    # the level-4 factor also fails smoothness: (2,1) and (1,-1) meet at (8/3, -4/3) with det -3
    r1 = classify(f1.polytope)
    assert r1.simple and not r1.smooth
    g0 = build_factors(decomposition_plan(ex2()))[0]
    assert not classify(g0.polytope).simple
    h = build_factors(decomposition_plan(ex5()))
    assert all(classify(f.polytope).simple for f in h if f.kind is FactorKind.FULL)
    assert not classify(h[1].polytope).smooth


@pytest.mark.parametrize("name", sorted(all_fixtures()))
def test_theorem1_on_fixtures(name):
    plan = decomposition_plan(all_fixtures()[name])
    fs = build_factors(plan)
    assert len(fs) == plan.N + 1 + plan.M
    report = verify_theorem1(plan.polytope, fs)
    assert report.passed, report.failed()
    assert all(ok for _, ok in rescaling_inclusions(fs))


def test_wrong_scale_fails_intersection_only():
    fs = build_factors(decomposition_plan(sq(2)))
    report = verify_theorem1(sq(1), fs)
    assert report["contains"].passed
    assert not report["intersection"].passed
    assert report.failed() == ["intersection"]


def test_cylinder_is_compact_in_its_span():
    cyl = build_factors(decomposition_plan(ex2()))[1]
    assert cyl.kind is FactorKind.CYLINDER
    ess = essential_polytope(cyl)
    assert len(ess.equalities) == 2


def test_translated_input_is_centered_first():
    p = ex5().translate((1, F(1, 3)))
    plan = decomposition_plan(p)
    assert plan.translation == (-1, F(-1, 3))
    assert plan.polytope == ex5()


def test_factors_contain_random_polytopes():
    rng = random.Random(5)
    for k in range(10):
        p = random_polytope(rng, 2 + k % 3)
        plan = decomposition_plan(p)
        for f in build_factors(plan):
            assert is_subset(plan.polytope, f.polytope)


def test_bad_factor_list_is_reported():
    fs = build_factors(decomposition_plan(ex5()))
    report = verify_theorem1(ex5(), fs[:1])
    assert report.failed() == ["intersection"]
    broken = LabeledPolytope.from_rows([((1, 0), 1), ((0, 1), 1)])
    fake = fs[0].__class__(FactorKind.FULL, 0, (0, 1), broken, F(1))
    assert "monotone_compact" in verify_theorem1(ex5(), [fake]).failed()
