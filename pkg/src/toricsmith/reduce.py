"""Lattice data exhibiting a polytope as a centered reduction of weighted projective spaces.

All group-theoretic objects are represented by integer data: the reducing
group by the saturated integer kernel of ``e_i -> v_i``, each weighted
projective circle by its exponent vector, and the remaining subgroup by a
lattice complement.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .decompose import (
    Check,
    MonotoneFactor,
    VerificationReport,
    build_factors,
    decomposition_plan,
    verify_theorem1,
)
from .errors import CertificateCheckFailed, InfeasibleWeights, NotSimple, RankDeficient
from .lattice import complement_basis, integer_kernel_basis, is_saturated, lattice_index
from .lp import minimize
from .polytope import LabeledPolytope, classify, origin_interior
from .rational import gcd_list, lcm_list, rank


@dataclass(frozen=True)
class WeightVector:
    m: tuple

    def __iter__(self):
        return iter(self.m)

    def __len__(self):
        return len(self.m)


def minkowski_weights(p: LabeledPolytope) -> WeightVector:
    """Coprime positive integers ``m`` with ``sum m_i v_i = 0``.

    Solved as ``min sum m`` subject to ``m >= 1`` and the vector relation;
    offsets are ignored, so cylinder factors can be passed directly.
    """
    d, n = p.d, p.n
    ub = [(tuple(-int(i == j) for j in range(d)), -1) for i in range(d)]
    eq = [(tuple(v[r] for v in p.normals), 0) for r in range(n)]
    res = minimize([1] * d, ub, eq)
    if not res.optimal:
        raise InfeasibleWeights("no positive relation among the normals (polytope not compact)")
    den = lcm_list(x.denominator for x in res.witness)
    ints = [int(x * den) for x in res.witness]
    g = gcd_list(ints)
    return WeightVector(tuple(x // g for x in ints))


def pi_matrix(normals: Sequence[Sequence[int]]) -> tuple:
    """n x d matrix whose columns are the normals."""
    n = len(normals[0])
    return tuple(tuple(v[r] for v in normals) for r in range(n))


def lt_kernel(p: LabeledPolytope) -> tuple[tuple, list]:
    mat = pi_matrix(p.normals)
    if rank(mat) < p.n:
        raise RankDeficient("normals do not span R^n")
    return mat, integer_kernel_basis(mat)


@dataclass(frozen=True)
class CertificateFactor:
    factor: MonotoneFactor
    weights: WeightVector
    level: Fraction
    circle: tuple  # weights embedded on this factor's block of Z^d_total
    block: tuple  # positions of the block inside the stacked list


@dataclass(frozen=True)
class ReductionCertificate:
    d_total: int
    stacked: tuple  # (factor label, original constraint index) per stacked position
    pi_matrix: tuple
    kernel_basis: tuple
    factors: tuple
    complement: tuple
    central_levels: tuple  # 2 * level per stacked constraint
    offsets: tuple  # level per stacked constraint
    plan_counts: tuple  # (N, M)
    notes: tuple = field(default=())

    @property
    def circles(self) -> list:
        return [f.circle for f in self.factors]


def reduction_certificate(p: LabeledPolytope, verify: bool = True) -> ReductionCertificate:
    plan = decomposition_plan(p)
    centered = plan.polytope
    if not classify(centered).simple:
        raise NotSimple("reduction certificates need a simple polytope")
    factors = build_factors(plan)
    stacked, normals, offsets, blocks = [], [], [], []
    for f in factors:
        start = len(normals)
        for i, (v, lam) in zip(f.indices, f.polytope.constraints):
            stacked.append((f.label, i))
            normals.append(v)
            offsets.append(lam)
        blocks.append(tuple(range(start, len(normals))))
    d_total = len(normals)
    mat = pi_matrix(normals)
    kernel = integer_kernel_basis(mat)
    cfs = []
    for f, block in zip(factors, blocks):
        w = minkowski_weights(f.polytope)
        circle = [0] * d_total
        for pos, m in zip(block, w.m):
            circle[pos] = m
        cfs.append(CertificateFactor(f, w, f.level, tuple(circle), block))
    comp = complement_basis([c.circle for c in cfs], kernel)
    notes = (
        f"{len(factors)} factors = N + 1 + M with N={plan.N}, M={plan.M}; "
        f"the product is counted with one weighted projective space per factor",
    )
    cert = ReductionCertificate(
        d_total=d_total,
        stacked=tuple(stacked),
        pi_matrix=mat,
        kernel_basis=tuple(kernel),
        factors=tuple(cfs),
        complement=tuple(comp),
        central_levels=tuple(2 * x for x in offsets),
        offsets=tuple(offsets),
        plan_counts=(plan.N, plan.M),
        notes=notes,
    )
    if verify:
        report = verify_certificate(centered, cert)
        if not report.passed:
            raise CertificateCheckFailed(f"failed checks: {report.failed()}")
    return cert


def _apply(mat, z):
    return tuple(sum(a * b for a, b in zip(row, z)) for row in mat)


def verify_certificate(p: LabeledPolytope, cert: ReductionCertificate) -> VerificationReport:
    checks = []

    bad = []
    for cf in cert.factors:
        m = cf.weights.m
        normals = cf.factor.polytope.normals
        if len(m) != len(normals) or any(x <= 0 for x in m) or gcd_list(m) != 1:
            bad.append(f"{cf.factor.label}: weights not positive coprime")
            continue
        total = [sum(mi * v[r] for mi, v in zip(m, normals)) for r in range(p.n)]
        if any(total):
            bad.append(f"{cf.factor.label}: sum m_i v_i = {total}")
    checks.append(Check("weights", not bad, "; ".join(bad)))

    bad = []
    zero = tuple([0] * len(cert.pi_matrix))
    kernel = cert.kernel_basis
    if any(_apply(cert.pi_matrix, z) != zero for z in kernel):
        bad.append("kernel basis vector outside ker(pi)")
    if len(kernel) != cert.d_total - rank(cert.pi_matrix) or (kernel and not is_saturated(kernel)):
        bad.append("kernel basis is not a saturated basis of ker(pi)")
    for cf in cert.factors:
        if _apply(cert.pi_matrix, cf.circle) != zero:
            bad.append(f"{cf.factor.label}: circle vector outside the kernel lattice")
    checks.append(Check("circles_in_kernel", not bad, "; ".join(bad)))

    idx = lattice_index([cf.circle for cf in cert.factors] + list(cert.complement), list(kernel))
    checks.append(Check("basis_completion", idx == 1,
                        "" if idx == 1 else f"circles + complement have index {idx or 'infinite'}"))

    levels_ok = len(cert.central_levels) == len(cert.offsets) == cert.d_total and all(
        -c / 2 + lam == 0 for c, lam in zip(cert.central_levels, cert.offsets))
    block_ok = all(cert.offsets[pos] == cf.level for cf in cert.factors for pos in cf.block)
    checks.append(Check("central_level", levels_ok and block_ok,
                        "" if levels_ok and block_ok else "-1/2 * central level + offset != 0"))

    report = verify_theorem1(p, [cf.factor for cf in cert.factors])
    checks.append(Check("intersection", report.passed, "; ".join(
        f"{c.name}: {c.detail}" for c in report.checks if not c.passed)))

    inside = origin_interior(p)
    checks.append(Check("origin_interior", inside, "" if inside else "origin not strictly inside"))
    return VerificationReport(tuple(checks))
