"""Exact two-phase simplex over the rationals.

Problems are stated as ``maximize <c, x>`` over free variables ``x`` with
rows ``<a, x> <= b`` and ``<c, x> = d``.  Internally ``x = x+ - x-`` and every
inequality gets a slack.  Pivoting follows Bland's rule (lowest index enters,
lowest basic index leaves on ratio ties), so runs are reproducible and cannot
cycle.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch
from .rational import Q, qvec

try:  # gmpy2 rationals are an order of magnitude faster than Fraction in the pivots
    from gmpy2 import mpq as _num
except ImportError:  # pragma: no cover
    _num = Fraction

ZERO = _num(0)
ONE = _num(1)


def _in(x):
    return _num(x.numerator, x.denominator)


def _out(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


class LpStatus(enum.Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


@dataclass(frozen=True)
class LpProblem:
    objective: tuple
    ub: tuple = ()
    eq: tuple = ()

    @classmethod
    def build(cls, objective, ub=(), eq=()):
        obj = qvec(objective)
        ub_rows = tuple((qvec(a), Q(b)) for a, b in ub)
        eq_rows = tuple((qvec(a), Q(b)) for a, b in eq)
        n = len(obj)
        for a, _ in ub_rows + eq_rows:
            if len(a) != n:
                raise DimensionMismatch(f"row of length {len(a)} in a problem with {n} variables")
        return cls(obj, ub_rows, eq_rows)

    @property
    def nvars(self) -> int:
        return len(self.objective)


@dataclass(frozen=True)
class LpResult:
    status: LpStatus
    optimum: Fraction | None = None
    witness: tuple | None = None
    tight: tuple = field(default=())

    @property
    def optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r, c, obj):
        row = self.rows[r]
        p = row[c]
        if p != ONE:
            row = [x / p for x in row]
            self.rows[r] = row
            self.rhs[r] = self.rhs[r] / p
        nz = [j for j, x in enumerate(row) if x]
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other[c]
            if f:
                for j in nz:
                    other[j] -= f * row[j]
                self.rhs[i] -= f * self.rhs[r]
        f = obj[c]
        if f:
            for j in nz:
                obj[j] -= f * row[j]
            obj[-1] -= f * self.rhs[r]
        self.basis[r] = c

    def reduced_costs(self, cost):
        # obj[j] = c_j - c_B B^-1 A_j ; obj[-1] = -(current objective value)
        ncols = len(cost)
        obj = list(cost) + [ZERO]
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.rows[i]
                for j in range(ncols):
                    if row[j]:
                        obj[j] -= cb * row[j]
                obj[-1] -= cb * self.rhs[i]
        return obj

    def run(self, cost, allowed):
        """Maximize; returns False when unbounded."""
        obj = self.reduced_costs(cost)
        while True:
            enter = next((j for j in allowed if obj[j] > 0 and j not in self.basis), None)
            if enter is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], enter, obj)


def lp_solve(p: LpProblem) -> LpResult:
    """Solve ``p`` exactly.  Infeasible and unbounded are statuses, not errors."""
    if not isinstance(p, LpProblem):
        raise TypeError("lp_solve expects an LpProblem")
    n = p.nvars
    m_ub = len(p.ub)
    rows_in = [([_in(x) for x in a], _in(b), True) for a, b in p.ub] + \
        [([_in(x) for x in a], _in(b), False) for a, b in p.eq]
    m = len(rows_in)
    nstd = 2 * n + m_ub  # x+, x-, slacks
    rows, rhs, basis, art_rows = [], [], [], []
    for i, (a, b, is_ub) in enumerate(rows_in):
        row = list(a) + [-x for x in a] + [ZERO] * m_ub
        if is_ub:
            row[2 * n + i] = ONE
        sign = -1 if b < 0 else 1
        if sign < 0:
            row = [-x for x in row]
            b = -b
        rows.append(row)
        rhs.append(b)
        if is_ub and sign > 0:
            basis.append(2 * n + i)
        else:
            basis.append(None)
            art_rows.append(i)
    nart = len(art_rows)
    ncols = nstd + nart
    for r in rows:
        r.extend([ZERO] * nart)
    for k, i in enumerate(art_rows):
        rows[i][nstd + k] = ONE
        basis[i] = nstd + k
    tab = _Tableau(rows, rhs, basis)

    if nart:
        cost1 = [ZERO] * nstd + [-ONE] * nart
        tab.run(cost1, range(ncols))
        if any(tab.rhs[i] != 0 for i, b in enumerate(tab.basis) if b >= nstd):
            return LpResult(LpStatus.INFEASIBLE)
        # drive zero-level artificials out of the basis, dropping redundant rows
        i = 0
        while i < len(tab.rows):
            if tab.basis[i] >= nstd:
                col = next((j for j in range(nstd) if tab.rows[i][j] != 0), None)
                if col is None:
                    del tab.rows[i], tab.rhs[i], tab.basis[i]
                    continue
                tab.pivot(i, col, [ZERO] * (ncols + 1))
            i += 1

    objective = [_in(c) for c in p.objective]
    cost2 = objective + [-x for x in objective] + [ZERO] * (m_ub + nart)
    if not tab.run(cost2, range(nstd)):
        return LpResult(LpStatus.UNBOUNDED)

    y = [ZERO] * ncols
    for i, b in enumerate(tab.basis):
        y[b] = tab.rhs[i]
    xq = [y[j] - y[n + j] for j in range(n)]
    opt = sum((c * xi for c, xi in zip(objective, xq)), ZERO)
    tight = tuple(i for i, (a, b, _) in enumerate(rows_in[:m_ub])
                  if sum((ai * xi for ai, xi in zip(a, xq)), ZERO) == b)
    return LpResult(LpStatus.OPTIMAL, _out(opt), tuple(_out(v) for v in xq), tight)


def maximize(objective: Sequence, ub=(), eq=()) -> LpResult:
    return lp_solve(LpProblem.build(objective, ub, eq))


def minimize(objective: Sequence, ub=(), eq=()) -> LpResult:
    res = lp_solve(LpProblem.build([-Q(c) for c in objective], ub, eq))
    if res.optimal:
        return LpResult(res.status, -res.optimum, res.witness, res.tight)
    return res


def feasible_point(nvars: int, ub=(), eq=()) -> tuple | None:
    res = maximize([0] * nvars, ub, eq)
    return res.witness if res.optimal else None
