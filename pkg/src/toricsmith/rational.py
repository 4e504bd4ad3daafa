"""Exact rational scalars, vectors and small dense matrices.

Scalars are :class:`fractions.Fraction` (always in lowest terms with a
positive denominator).  Vectors are tuples; matrices are tuples of row
tuples.  Nothing in here ever touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

from .errors import DimensionMismatch, ZeroVector

Rational = Fraction
IntVector = tuple  # tuple[int, ...]
RatVector = tuple  # tuple[Fraction, ...]


def Q(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    t = type(x)
    if t is Fraction:
        return x
    if t is int:
        return Fraction(x)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def qvec(v: Iterable) -> RatVector:
    return tuple(Q(x) for x in v)


def ivec(v: Iterable) -> IntVector:
    out = []
    for x in v:
        x = Q(x)
        if x.denominator != 1:
            raise ValueError(f"{x} is not an integer")
        out.append(int(x))
    return tuple(out)


def is_integral(v: Iterable) -> bool:
    return all(Q(x).denominator == 1 for x in v)


def _check_len(u, v):
    if len(u) != len(v):
        raise DimensionMismatch(f"length {len(u)} vs {len(v)}")


def dot(u, v):
    _check_len(u, v)
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def vadd(u, v) -> RatVector:
    _check_len(u, v)
    return tuple(Q(a) + b for a, b in zip(u, v))


def vsub(u, v) -> RatVector:
    _check_len(u, v)
    return tuple(Q(a) - b for a, b in zip(u, v))


def vscale(c, v) -> RatVector:
    c = Q(c)
    return tuple(c * x for x in v)


def gcd_list(xs: Iterable[int]) -> int:
    return reduce(gcd, (abs(int(x)) for x in xs), 0)


def lcm_list(xs: Iterable[int]) -> int:
    out = 1
    for x in xs:
        x = abs(int(x))
        if x:
            out = out * x // gcd(out, x)
    return out


def primitive_decompose(v: Sequence[int]) -> tuple[int, IntVector]:
    """Split an integer vector as ``label * w`` with ``w`` primitive.

    >>> primitive_decompose((2, 4))
    (2, (1, 2))
    """
    v = ivec(v)
    g = gcd_list(v)
    if g == 0:
        raise ZeroVector("the zero vector has no primitive direction")
    return g, tuple(x // g for x in v)


def primitive_direction(v: Sequence) -> tuple[Fraction, IntVector]:
    """Write a nonzero rational vector as ``q * w`` with ``w`` primitive integral."""
    v = qvec(v)
    if not any(v):
        raise ZeroVector("the zero vector has no primitive direction")
    den = lcm_list(x.denominator for x in v)
    scaled = [int(x * den) for x in v]
    g = gcd_list(scaled)
    w = tuple(x // g for x in scaled)
    return Fraction(g, den), w


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (matrix, pivot columns)."""
    m = [list(qvec(r)) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    for r in m:
        if len(r) != ncols:
            raise DimensionMismatch("ragged matrix")
    pivots = []
    row = 0
    for col in range(ncols):
        if row >= len(m):
            break
        piv = next((i for i in range(row, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        p = m[row][col]
        m[row] = [x / p for x in m[row]]
        for i in range(len(m)):
            if i != row and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[row])]
        pivots.append(col)
        row += 1
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q, by integer elimination on rows cleared of denominators."""
    m = []
    for r in rows:
        r = qvec(r)
        den = lcm_list(x.denominator for x in r)
        m.append([int(x * den) for x in r])
    if not m:
        return 0
    ncols = len(m[0])
    if any(len(r) != ncols for r in m):
        raise DimensionMismatch("ragged matrix")
    row = 0
    for col in range(ncols):
        piv = next((i for i in range(row, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        top = m[row]
        p = top[col]
        for i in range(row + 1, len(m)):
            f = m[i][col]
            if f:
                new = [p * a - f * b for a, b in zip(m[i], top)]
                g = gcd(*new)
                m[i] = [x // g for x in new] if g > 1 else new
        row += 1
        if row == len(m):
            break
    return row


def independent_rows(rows: Sequence[Sequence]) -> list[int]:
    """Indices of a maximal linearly independent subset, greedily in order."""
    chosen: list[int] = []
    basis: list = []
    for i, r in enumerate(rows):
        if rank(basis + [r]) > len(basis):
            basis.append(r)
            chosen.append(i)
    return chosen


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[RatVector]:
    """Basis of {x : rows . x = 0} over Q, one vector per free column."""
    if not rows:
        if ncols is None:
            raise DimensionMismatch("need ncols for an empty matrix")
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    m, pivots = rref(rows)
    ncols = len(m[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            x[pc] = -m[r][f]
        basis.append(tuple(x))
    return basis


def integer_rows(a: Sequence[Sequence], b: Sequence) -> list[list[int]]:
    """Rows ``[a_i | b_i]`` scaled by their common denominator."""
    out = []
    for r, bi in zip(a, b):
        row = list(qvec(r)) + [Q(bi)]
        den = lcm_list(x.denominator for x in row)
        out.append([int(x * den) for x in row])
    return out


def solve_integer(aug: Sequence[Sequence[int]]) -> tuple | None:
    """Cramer numerators of an integer system ``[A | b]``.

    Returns ``(X, D)`` with ``D = |det A| > 0`` and ``x = X / D``, or None when
    ``A`` is singular.  Elimination is fraction-free (Bareiss), so every
    division below is exact.
    """
    n = len(aug)
    rows = [list(r) for r in aug]
    tri = []  # row k of the echelon form, restricted to columns k..n
    prev = 1
    for _ in range(n):
        piv = next((i for i, r in enumerate(rows) if r[0]), None)
        if piv is None:
            return None
        top = rows.pop(piv)
        p = top[0]
        rows = [[(p * r[j] - r[0] * top[j]) // prev for j in range(1, len(r))] for r in rows]
        tri.append(top)
        prev = p
    d = prev
    x = [0] * n
    for i in range(n - 1, -1, -1):
        row = tri[i]
        s_ = d * row[-1] - sum(row[j - i] * x[j] for j in range(i + 1, n))
        x[i] = s_ // row[0]
    if d < 0:
        d, x = -d, [-v for v in x]
    return tuple(x), d


def solve(a: Sequence[Sequence], b: Sequence) -> RatVector | None:
    """Solve a square system exactly; None when singular."""
    n = len(a)
    if len(b) != n or any(len(r) != n for r in a):
        raise DimensionMismatch("solve needs a square system")
    res = solve_integer(integer_rows(a, b))
    if res is None:
        return None
    x, d = res
    return tuple(Fraction(v, d) for v in x)


def det(a: Sequence[Sequence]) -> Fraction:
    n = len(a)
    if any(len(r) != n for r in a):
        raise DimensionMismatch("determinant of a non-square matrix")
    m = [list(qvec(r)) for r in a]
    sign = 1
    out = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        p = m[col][col]
        out *= p
        for i in range(col + 1, n):
            f = m[i][col]
            if f:
                f = f / p
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return sign * out


def project_out(v: Sequence, span: Sequence[Sequence]) -> RatVector:
    """Component of ``v`` orthogonal to the span of ``span`` (rational Gram-Schmidt)."""
    v = qvec(v)
    ortho: list[RatVector] = []
    for s in span:
        u = qvec(s)
        for o in ortho:
            u = vsub(u, vscale(dot(u, o) / dot(o, o), o))
        if any(u):
            ortho.append(u)
    for o in ortho:
        v = vsub(v, vscale(dot(v, o) / dot(o, o), o))
    return v


def fmt(x) -> str:
    """Canonical string for an exact rational: ``"3"`` or ``"-7/2"``."""
    return str(Q(x))
