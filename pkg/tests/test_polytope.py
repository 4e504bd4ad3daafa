from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from toricsmith.errors import (
    BadWeights,
    DimensionMismatch,
    EmptyPolytope,
    UnboundedPolytope,
    ZeroVector,
)
from toricsmith.fixtures import cp2, ex1, ex2, ex3, ex4, ex5, seg, sq
from toricsmith.lp import LpStatus, maximize
from toricsmith import polytope as poly
from toricsmith.polytope import (
    LabeledPolytope,
    classify,
    dimension,
    facet_indices,
    implicit_equalities,
    is_compact,
    is_subset,
    merge_parallel,
    origin_interior,
    polar_dual,
    same_vertex_set,
    vertices,
    wps_polytope,
)
from toricsmith.rational import integer_rows
from toricsmith.shrink import slice_at

F = Fraction


def box_rows(n, r):
    return [(tuple(s * int(i == j) for j in range(n)), r) for i in range(n) for s in (1, -1)]


@st.composite
def bounded_polytopes(draw, n=None):
    n = n or draw(st.integers(2, 3))
    rows = draw(st.lists(st.tuples(
        st.lists(st.integers(-3, 3), min_size=n, max_size=n).filter(any).map(tuple),
        st.fractions(min_value=1, max_value=4, max_denominator=3)), min_size=1, max_size=4))
    return LabeledPolytope.from_rows(rows + box_rows(n, 3))


def test_constructor_validates():
    with pytest.raises(ZeroVector):
        LabeledPolytope.from_rows([((0, 0), 1)])
    with pytest.raises(DimensionMismatch):
        LabeledPolytope(2, (((1, 0, 0), 1),))
    with pytest.raises(ValueError):
        LabeledPolytope.from_rows([((F(1, 2), 0), 1)])


def test_labels_and_primitive_normals():
    p = LabeledPolytope.from_rows([((2, 4), 1), ((-1, 0), 1), ((0, -3), 2)])
    assert p.labels == (2, 1, 3)
    assert p.primitive_normals == ((1, 2), (-1, 0), (0, -1))


def test_vertices_square_and_simplex():
    assert vertices(sq()).vertices == ((-1, -1), (-1, 1), (1, -1), (1, 1))
    assert vertices(cp2()).vertices == ((-1, -1), (-1, 2), (2, -1))
    assert vertices(cp2()).tight == (frozenset({0, 1}), frozenset({0, 2}), frozenset({1, 2}))


def test_vertices_ex1_against_pairwise_oracle():
    expected = oracles.brute_vertices(2, ex1().constraints)
    assert list(vertices(ex1()).vertices) == expected
    assert expected == [(-3, -3), (-3, 3), (0, -3), (0, 3), (1, 2), (F(7, 3), F(-2, 3))]


@given(bounded_polytopes())
def test_vertices_match_brute_force(p):
    assert list(vertices(p).vertices) == oracles.brute_vertices(p.n, p.constraints)


def _both_paths(p):
    ineq = integer_rows(p.normals, p.offsets)
    eq = integer_rows([c for c, _ in p.equalities], [b for _, b in p.equalities])
    pool = list(range(p.d))
    fast = poly._candidates_int64(p, [], pool, p.n)
    exact = poly._candidates_exact(p.n, [], ineq, eq, pool, p.n)
    return fast, exact


@given(bounded_polytopes())
def test_int64_enumeration_matches_exact_path(p):
    fast, exact = _both_paths(p)
    assert fast is not None and fast == exact


def test_int64_enumeration_declines_large_entries():
    # offsets near 2^62 could overflow, so the vectorised path steps aside
    p = LabeledPolytope.from_rows([((1, 0), 2 ** 61), ((-1, 0), 1), ((0, 1), 1), ((0, -1), 1)])
    fast, exact = _both_paths(p)
    assert fast is None
    assert vertices(p).vertices == ((-1, -1), (-1, 1), (2 ** 61, -1), (2 ** 61, 1))


def test_vertex_errors():
    with pytest.raises(EmptyPolytope):
        vertices(LabeledPolytope.from_rows([((1,), 0), ((-1,), -1)]))
    with pytest.raises(UnboundedPolytope):
        vertices(LabeledPolytope.from_rows([((1, 0), 1), ((0, 1), 1)]))
    with pytest.raises(EmptyPolytope):
        is_compact(LabeledPolytope.from_rows([((1, 0), 0), ((-1, 0), -1), ((0, 1), 1)]))


def _compact_by_coordinate_lps(p):
    for k in range(p.n):
        for s in (1, -1):
            e = [0] * p.n
            e[k] = s
            if maximize(e, p.ub_rows(), p.eq_rows()).status is LpStatus.UNBOUNDED:
                return False
    return True


@given(st.lists(st.tuples(st.lists(st.integers(-2, 2), min_size=2, max_size=2).filter(any).map(tuple),
                          st.integers(1, 3)), min_size=1, max_size=5))
def test_compactness_matches_coordinate_bounds(rows):
    p = LabeledPolytope.from_rows(rows)
    assert is_compact(p) == _compact_by_coordinate_lps(p)


@given(bounded_polytopes(n=2), st.fractions(min_value=0, max_value=1, max_denominator=4))
def test_implicit_equalities_match_vertex_oracle(p, s):
    # squeeze the first row against its opposite to create implicit equalities sometimes
    v, lam = p.constraints[0]
    q = LabeledPolytope(p.n, p.constraints + ((tuple(-x for x in v), -lam * s),))
    try:
        verts = oracles.brute_vertices(q.n, q.constraints)
    except ZeroDivisionError:  # pragma: no cover
        return
    if not verts:
        with pytest.raises(EmptyPolytope):
            implicit_equalities(q)
        return
    expected = [i for i, (w, mu) in enumerate(q.constraints)
                if all(sum(a * b for a, b in zip(w, x)) == mu for x in verts)]
    assert implicit_equalities(q) == expected


def test_dimension_examples():
    assert dimension(sq()) == 2
    assert dimension(LabeledPolytope.from_rows([((1,), 0), ((-1,), 0)])) == 0
    assert dimension(slice_at(ex2(), 1)) == 2


def test_classify_worked_examples():
    r = classify(ex1())
    assert (r.simple, r.trivially_labeled, r.monotone, r.compact) == (True, True, False, True)
    # vertex (7/3, -2/3) has tight normals (1,-1), (2,1) with determinant -3
    assert r.smooth is False
    assert classify(ex2()).smooth and classify(ex4()).smooth
    for p in (ex3(), ex5()):
        r = classify(p)
        assert r.simple and not r.smooth
    assert classify(ex5()).trivially_labeled


def test_classify_monotone_and_reflexive():
    assert classify(sq()).reflexive
    r = classify(sq(3))
    assert r.monotone and not r.reflexive
    r = classify(LabeledPolytope.from_rows([((2, 0), 1), ((-1, 0), 1), ((0, 1), 1), ((0, -1), 1)]))
    assert not r.trivially_labeled


def test_classify_non_simple_pyramid():
    # the factor at level 2 of the three-dimensional example has a four-facet apex
    p = LabeledPolytope.from_rows([((0, 0, 1), 2), ((0, 0, -1), 2), ((1, 0, 1), 2), ((-1, 0, 1), 2),
                                   ((0, 1, 1), 2), ((0, -1, 1), 2)])
    r = classify(p)
    assert not r.simple and not r.smooth


def test_facets_skip_redundant_rows():
    p = LabeledPolytope.from_rows(sq().constraints + (((1, 1), 5),))
    assert [c for c in facet_indices(p)] == [[0], [1], [2], [3]]


@pytest.mark.parametrize("m, lam, rows", [
    ((1, 2, 1), 1, [((-1, 0), 1), ((0, -1), 1), ((1, 2), 1)]),
    ((2, 3, 1), 1, [((-1, 0), 1), ((0, -1), 1), ((2, 3), 1)]),
])
def test_wps_polytope(m, lam, rows):
    assert wps_polytope(m, lam) == LabeledPolytope.from_rows(rows)


def test_wps_polytope_all_ones_is_cp2():
    assert wps_polytope((1, 1, 1), 3) == cp2(3)


@pytest.mark.parametrize("m, lam", [((1, 2), 1), ((1,), 1), ((1, 1), 0), ((0, 1), 1)])
def test_wps_polytope_rejects(m, lam):
    with pytest.raises(BadWeights):
        wps_polytope(m, lam)


def test_polar_dual():
    assert sorted(polar_dual(sq())) == [(-1, 0), (0, -1), (0, 1), (1, 0)]
    assert sorted(polar_dual(cp2())) == [(-1, 0), (0, -1), (1, 1)]
    assert sorted(polar_dual(seg())) == [(-1,), (1,)]


def test_subset_and_vertex_equality():
    assert is_subset(sq(1), sq(2))
    assert not is_subset(sq(2), sq(1))
    factor = LabeledPolytope.from_rows([((0, 1), 4), ((0, -1), 4), ((-1, 0), 4), ((1, 1), 4), ((1, -1), 4),
                                        ((2, 1), 4)])
    assert is_subset(ex1(), factor)
    assert same_vertex_set(sq(), merge_parallel(LabeledPolytope.from_rows(sq().constraints + (((2, 0), 4),))))


def test_merge_parallel_keeps_tightest():
    p = LabeledPolytope.from_rows([((2, 0), 3), ((1, 0), 2), ((-1, 0), 1), ((0, 1), 1)])
    q = merge_parallel(p)
    assert q.constraints == (((1, 0), F(3, 2)), ((-1, 0), 1), ((0, 1), 1))


def test_origin_interior():
    assert origin_interior(ex1())
    assert not origin_interior(sq().translate((1, 0)))
