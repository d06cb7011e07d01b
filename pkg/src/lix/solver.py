"""Maurer-Cartan elements by successive lifting of the curvature.

Each step solves the leading part of the curvature with ``mu_1`` and
twists it away, pushing the curvature at least one filtration step up.
Finite filtration makes the iteration stop.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import HypothesisFailed, Obstructed, PreconditionViolated, RelationCheckFailed
from .graded import INF, Element, filtration_weight
from .linfty import CurvedAlgebra, check_relations, curvature_filtration, mc_defect, twist
from .specseq import lift_obstruction


@dataclass(frozen=True)
class Step:
    k: int
    twist: Element  # the lift alpha_k; the algebra is twisted by its negative
    before: float
    after: float


@dataclass
class MCCertificate:
    alpha: Element
    r: int
    steps: list = field(default_factory=list)

    @property
    def trace(self):
        """Curvature filtration before the first step and after every step."""
        if not self.steps:
            return [INF]
        return [self.steps[0].before] + [s.after for s in self.steps]


def curvature_step(alg: CurvedAlgebra, r: int, k: int):
    """Lift the weight-``k`` part of the curvature; return ``(alpha_k, twisted algebra)``.

    Raises Obstructed when ``mu_0`` does not lift; ``mu_0`` itself then
    represents a nonzero class on page ``r+1``.
    """
    cw = curvature_filtration(alg)
    if cw < k or k < 2 * r + 1:
        raise PreconditionViolated(f"need curvature in F_{k} with k >= {2 * r + 1}; curvature is in F_{cw}")
    mu0 = alg.curvature
    y = lift_obstruction(alg, mu0, k, r)
    if y is None:
        raise Obstructed(k, mu0)
    return y, twist(alg, -y)


def solve_mc(alg: CurvedAlgebra, r: int, check: bool = True, max_relation_arity: int | None = None) -> MCCertificate:
    """Find a degree-0 ``alpha`` in ``F_{r+1}`` with vanishing Maurer-Cartan defect.

    ``check`` verifies the algebra's relations first (RelationCheckFailed).
    """
    if check:
        arity = max_relation_arity
        if arity is None:
            arity = max(0, min(alg.space.nilpotency_bound - 1, 2 * alg.max_arity - 1))
        rep = check_relations(alg, arity)
        if not rep.ok:
            raise RelationCheckFailed(rep)
    cw = curvature_filtration(alg)
    alpha = alg.space.zero()
    if cw == INF:
        return MCCertificate(alpha, r, [])
    if cw < 2 * r + 1:
        raise HypothesisFailed("CurvatureTooLow", k=cw)
    steps = []
    current = alg
    while cw != INF:
        k = int(cw)
        try:
            y, current = curvature_step(current, r, k)
        except Obstructed as exc:
            raise HypothesisFailed("Obstructed", k=k, obstruction=exc.obstruction, steps=steps) from exc
        after = curvature_filtration(current)
        steps.append(Step(k, y, cw, after))
        alpha = alpha - y
        cw = after
    return MCCertificate(alpha, r, steps)


def verify_certificate(alg: CurvedAlgebra, cert: MCCertificate) -> bool:
    """Replay the steps and confirm that ``alpha`` is a Maurer-Cartan element in ``F_{r+1}``."""
    r = cert.r
    current = alg
    total = alg.space.zero()
    for st in cert.steps:
        cw = curvature_filtration(current)
        if st.twist.space != alg.space or st.before != cw or st.k != cw or st.k < 2 * r + 1:
            return False
        if st.twist and (st.twist.degrees() != {0} or filtration_weight(st.twist) < st.k - r):
            return False
        current = twist(current, -st.twist)
        after = curvature_filtration(current)
        if after != st.after or after <= cw:
            return False
        total = total - st.twist
    if curvature_filtration(current) != INF:
        return False
    if cert.alpha.space != alg.space or total != cert.alpha:
        return False
    if cert.alpha and (cert.alpha.degrees() != {0} or filtration_weight(cert.alpha) < r + 1):
        return False
    return not mc_defect(alg, cert.alpha)
