from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from toricsmith.errors import DimensionMismatch
from toricsmith.lp import LpProblem, LpStatus, feasible_point, lp_solve, maximize, minimize


def test_symmetric_segment():
    # variables (x, s): maximise s with -x + s <= 1 and x + s <= 1
    res = maximize([0, 1], [((-1, 1), 1), ((1, 1), 1)])
    assert res.status is LpStatus.OPTIMAL
    assert res.optimum == 1
    assert res.witness == (0, 1)
    assert res.tight == (0, 1)


@pytest.mark.parametrize("lam", [1, 3, Fraction(5, 2)])
def test_cp2_stage_lp(lam):
    rows = [((-1, 0, 1), lam), ((0, -1, 1), lam), ((1, 1, 1), lam)]
    res = maximize([0, 0, 1], rows)
    assert res.optimum == lam
    assert res.witness[:2] == (0, 0)


def test_infeasible_and_unbounded():
    assert maximize([1], [((1,), 0), ((-1,), -1)]).status is LpStatus.INFEASIBLE
    assert maximize([1], [((-1,), 0)]).status is LpStatus.UNBOUNDED
    assert feasible_point(1, [((1,), 0), ((-1,), -1)]) is None


def test_equality_rows():
    # max x + y on the segment x + y = 1, 0 <= x <= 1/3
    res = maximize([1, 2], [((1, 0), Fraction(1, 3)), ((-1, 0), 0)], [((1, 1), 1)])
    assert res.optimum == 2
    assert res.witness == (0, 1)


def test_redundant_equalities_are_tolerated():
    res = maximize([1, 0], [((1, 0), 4)], [((0, 1), 2), ((0, 2), 4)])
    assert res.optimum == 4
    assert res.witness == (4, 2)
    assert maximize([1, 0], [((1, 0), 4)], [((0, 1), 2), ((0, 2), 5)]).status is LpStatus.INFEASIBLE


def test_minimize_negates_back():
    res = minimize([1, 1], [((-1, 0), -2), ((0, -1), -3)])
    assert res.optimum == 5


def test_dimension_checks():
    with pytest.raises(DimensionMismatch):
        maximize([1, 2], [((1,), 1)])
    with pytest.raises(TypeError):
        lp_solve("not a problem")


def test_results_are_fractions():
    res = maximize([1], [((3,), 1)])
    assert type(res.optimum) is Fraction and type(res.witness[0]) is Fraction


coef = st.integers(-3, 3)
offset = st.fractions(min_value=-2, max_value=4, max_denominator=3)


@given(st.integers(2, 3).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(coef, min_size=n, max_size=n),
    st.lists(st.tuples(st.lists(coef, min_size=n, max_size=n).filter(any), offset), min_size=1, max_size=5),
)))
def test_matches_vertex_scan(case):
    n, c, rows = case
    box = [(tuple(s * int(i == j) for j in range(n)), 3) for i in range(n) for s in (1, -1)]
    cons = [(tuple(v), b) for v, b in rows] + box
    res = maximize(c, cons)
    expected = oracles.brute_lp_max(c, cons, n)
    if expected is None:
        assert res.status is LpStatus.INFEASIBLE
    else:
        assert res.status is LpStatus.OPTIMAL
        assert res.optimum == expected
        assert oracles.feasible(cons, res.witness)


def test_problem_build_normalises():
    p = LpProblem.build([1, "1/2"], [((1, 0), "3")])
    assert p.objective == (Fraction(1), Fraction(1, 2))
    assert p.ub[0][1] == Fraction(3)
