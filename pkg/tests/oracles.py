"""Independent reference computations used to freeze expected values.

Nothing here calls into the package's numerics: linear algebra goes through
sympy and geometry through brute-force enumeration.
"""
import itertools
from fractions import Fraction

import sympy


def to_sympy(rows):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) if isinstance(x, Fraction)
                          else sympy.Integer(x) for x in r] for r in rows])


def to_fraction(x):
    x = sympy.Rational(x)
    return Fraction(int(x.p), int(x.q))


def rank(rows):
    return to_sympy(rows).rank() if rows else 0


def nullity(rows, ncols):
    return ncols - rank(rows)


def solve(a, b):
    m = to_sympy(a)
    if m.det() == 0:
        return None
    x = m.LUsolve(to_sympy([[v] for v in b]))
    return tuple(to_fraction(v) for v in x)


def det(a):
    return to_fraction(to_sympy(a).det())


def smith_invariants(rows):
    """Nonzero invariant factors of an integer matrix."""
    from sympy.matrices.normalforms import smith_normal_form

    s = smith_normal_form(to_sympy(rows), domain=sympy.ZZ)
    return [abs(int(s[i, i])) for i in range(min(s.shape)) if s[i, i] != 0]


def lattice_index(sub, ambient):
    """Index of the span of ``sub`` inside the lattice spanned by ``ambient`` (same rank)."""
    b = to_sympy(ambient).T
    coords = []
    for v in sub:
        sol = b.gauss_jordan_solve(to_sympy([[x] for x in v]))[0]
        coords.append([to_fraction(c) for c in sol])
    return abs(det(coords))


def feasible(constraints, x):
    return all(sum(Fraction(a) * b for a, b in zip(v, x)) <= lam for v, lam in constraints)


def brute_vertices(n, constraints):
    """Every feasible intersection point of ``n`` constraint hyperplanes."""
    out = set()
    for combo in itertools.combinations(constraints, n):
        x = solve([v for v, _ in combo], [lam for _, lam in combo])
        if x is not None and feasible(constraints, x):
            out.add(x)
    return sorted(out)


def brute_lp_max(c, constraints, n):
    """Max of ``<c, x>`` over a bounded system, by scanning its vertices."""
    verts = brute_vertices(n, constraints)
    if not verts:
        return None
    return max(sum(Fraction(a) * b for a, b in zip(c, x)) for x in verts)


def box_scan(constraints, lo, hi, n):
    """Integer points of a polytope inside the cube ``[lo, hi]^n``."""
    return [pt for pt in itertools.product(range(lo, hi + 1), repeat=n) if feasible(constraints, pt)]


def affine_rank(points):
    if not points:
        return -1
    base = points[0]
    return rank([[a - b for a, b in zip(p, base)] for p in points[1:]]) if len(points) > 1 else 0
