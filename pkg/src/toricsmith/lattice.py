"""Integer lattice algorithms built on a row-style Hermite normal form."""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import ceil, floor
from typing import Sequence

from .errors import DimensionMismatch, NotSaturated, UnboundedPolytope
from .rational import det, ivec, lcm_list, rank, solve_integer


def hermite(mat: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Row Hermite normal form with transform.

    Returns ``(H, U)`` with ``U @ mat == H``, ``U`` unimodular, ``H`` in
    echelon form with positive pivots, entries above each pivot reduced
    into ``[0, pivot)``, and zero rows at the bottom.
    """
    h = [list(ivec(r)) for r in mat]
    m = len(h)
    ncols = len(h[0]) if m else 0
    if any(len(r) != ncols for r in h):
        raise DimensionMismatch("ragged integer matrix")
    u = [[int(i == j) for j in range(m)] for i in range(m)]

    def swap(a, b):
        h[a], h[b] = h[b], h[a]
        u[a], u[b] = u[b], u[a]

    def addmul(dst, src, q):
        # row_dst -= q * row_src
        if q:
            h[dst] = [x - q * y for x, y in zip(h[dst], h[src])]
            u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    row = 0
    pivots = []
    for col in range(ncols):
        if row >= m:
            break
        while True:
            nz = [i for i in range(row, m) if h[i][col] != 0]
            if not nz:
                break
            best = min(nz, key=lambda i: (abs(h[i][col]), i))
            if best != row:
                swap(best, row)
            done = True
            for i in range(row + 1, m):
                if h[i][col]:
                    addmul(i, row, h[i][col] // h[row][col])
                    if h[i][col]:
                        done = False
            if done:
                break
        if h[row][col] == 0:
            continue
        if h[row][col] < 0:
            h[row] = [-x for x in h[row]]
            u[row] = [-x for x in u[row]]
        p = h[row][col]
        for i in range(row):
            addmul(i, row, h[i][col] // p)
        pivots.append(col)
        row += 1
    return h, u


def hnf_basis(vectors: Sequence[Sequence[int]]) -> list[tuple]:
    """Canonical basis (nonzero HNF rows) of the lattice spanned by ``vectors``."""
    if not vectors:
        return []
    h, _ = hermite(vectors)
    return [tuple(r) for r in h if any(r)]


def integer_kernel_basis(a: Sequence[Sequence[int]], ncols: int | None = None) -> list[tuple]:
    """Saturated basis of ``{z in Z^d : A z = 0}`` in canonical HNF order.

    ``a`` is given by rows (n rows, d columns).  For an empty matrix pass
    ``ncols``.
    """
    a = [ivec(r) for r in a]
    d = len(a[0]) if a else ncols
    if d is None:
        raise DimensionMismatch("need ncols for an empty matrix")
    if any(len(r) != d for r in a):
        raise DimensionMismatch("ragged integer matrix")
    if not a:
        return [tuple(int(i == j) for j in range(d)) for i in range(d)]
    transposed = [[a[r][c] for r in range(len(a))] for c in range(d)]
    h, u = hermite(transposed)
    kernel = [u[i] for i in range(d) if not any(h[i])]
    return hnf_basis(kernel)


def maximal_minor_gcd(vectors: Sequence[Sequence[int]]) -> int:
    """gcd of the k x k minors of a k x d integer matrix of rank k (0 if rank < k)."""
    vecs = [ivec(v) for v in vectors]
    k = len(vecs)
    if k == 0:
        return 1
    d = len(vecs[0])
    transposed = [[vecs[r][c] for r in range(k)] for c in range(d)]
    h, _ = hermite(transposed)
    top = h[:k]
    if len(top) < k:
        return 0
    out = 1
    for i in range(k):
        out *= top[i][i] if i < len(top[i]) else 0
    return abs(out)


def is_saturated(vectors: Sequence[Sequence[int]]) -> bool:
    """True when the vectors are independent and span a saturated sublattice of Z^d."""
    return maximal_minor_gcd(vectors) == 1


def coordinates(vectors: Sequence[Sequence], basis: Sequence[Sequence]) -> list[tuple] | None:
    """Rational coordinates of each vector in the given (independent) basis, or None."""
    k = len(basis)
    if k == 0:
        return [()] * len(vectors) if all(not any(v) for v in vectors) else None
    # work with an integer basis B = sb * basis and integer targets V = sv * v
    sb = lcm_list(Fraction(x).denominator for b in basis for x in b)
    big_b = [[int(Fraction(x) * sb) for x in b] for b in basis]
    d = len(big_b[0])
    # normal equations B B^T c = B V are exact for vectors inside the span
    gram = [[sum(a * b for a, b in zip(bi, bj)) for bj in big_b] for bi in big_b]
    out = []
    for v in vectors:
        vq = [Fraction(x) for x in v]
        sv = lcm_list(x.denominator for x in vq)
        big_v = [int(x * sv) for x in vq]
        res = solve_integer([gram[i] + [sum(a * b for a, b in zip(big_b[i], big_v))] for i in range(k)])
        if res is None:
            return None
        x, den = res
        if any(sum(x[i] * big_b[i][j] for i in range(k)) != den * big_v[j] for j in range(d)):
            return None
        out.append(tuple(Fraction(x[i] * sb, den * sv) for i in range(k)))
    return out


def lattice_index(sub: Sequence[Sequence[int]], ambient: Sequence[Sequence[int]]) -> int:
    """Index of the lattice spanned by ``sub`` inside the lattice with basis ``ambient``.

    Returns 0 when ``sub`` does not have full rank in the ambient lattice or
    is not contained in it.
    """
    if len(sub) != len(ambient):
        return 0
    if not sub:
        return 1
    coords = coordinates(sub, ambient)
    if coords is None or any(x.denominator != 1 for c in coords for x in c):
        return 0
    return abs(int(det(coords)))


def complement_basis(sub: Sequence[Sequence[int]], ambient: Sequence[Sequence[int]]) -> list[tuple]:
    """Vectors completing ``sub`` to a basis of the lattice with basis ``ambient``.

    Raises NotSaturated when ``sub`` is not a saturated sublattice.
    """
    sub = [ivec(s) for s in sub]
    ambient = [ivec(a) for a in ambient]
    r = len(ambient)
    if not sub:
        return list(ambient)
    coords = coordinates(sub, ambient)
    if coords is None or any(x.denominator != 1 for c in coords for x in c):
        raise NotSaturated("sub is not contained in the ambient lattice")
    s = [[int(x) for x in c] for c in coords]
    k = len(s)
    if rank(s) < k:
        raise NotSaturated("sub vectors are linearly dependent")
    # U S^T = [H; 0]; rows of S span the same lattice as the first k rows of U^-T
    st = [[s[i][j] for i in range(k)] for j in range(r)]
    h, u = hermite(st)
    if abs(det([row[:k] for row in h[:k]])) != 1:
        raise NotSaturated("sub spans a finite-index sublattice of its saturation")
    uinv = _unimodular_inverse(u)
    v = [[uinv[j][i] for j in range(r)] for i in range(r)]  # (U^-1)^T
    out = []
    for row in v[k:]:
        vec = tuple(sum(row[i] * ambient[i][c] for i in range(r)) for c in range(len(ambient[0])))
        out.append(vec)
    return out


def _unimodular_inverse(u: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(u)
    cols = []
    for j in range(n):
        res = solve_integer([list(row) + [int(i == j)] for i, row in enumerate(u)])
        if res is None or res[1] != 1:
            raise ValueError("matrix is not unimodular")
        cols.append(res[0])
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def bounding_box(p) -> list[tuple[int, int]]:
    """Integer ranges [lo, hi] per coordinate containing every lattice point of ``p``."""
    from .lp import LpStatus, maximize

    n = p.n
    ub = p.ub_rows()
    eq = p.eq_rows()
    box = []
    for k in range(n):
        e = [0] * n
        e[k] = 1
        hi = maximize(e, ub, eq)
        lo = maximize([-x for x in e], ub, eq)
        if hi.status is LpStatus.UNBOUNDED or lo.status is LpStatus.UNBOUNDED:
            raise UnboundedPolytope("polytope is not compact")
        if not hi.optimal:
            return []
        box.append((ceil(-lo.optimum), floor(hi.optimum)))
    return box


def enumerate_lattice_points(p) -> list[tuple]:
    """All integer points of a compact polytope, in lexicographic order."""
    box = bounding_box(p)
    if not box or any(lo > hi for lo, hi in box):
        return []
    return [pt for pt in itertools.product(*(range(lo, hi + 1) for lo, hi in box))
            if p.contains(pt)]
