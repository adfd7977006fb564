"""Independent checks on a claimed eigensystem.

verify_eigensystem recomputes every claim from scratch: eigen-equation
residuals, triviality of the orthogonal complement, pairwise orthogonality,
projection quality of the supports, the support identity value * support =
value, and the order relations of the certificate. The moment oracle checks
spectrum preservation without ever eigendecomposing: it compares traces of
operator powers against traces of powers of the compressed values, so a
wrong spectrum cannot hide behind a consistent-looking eigenbasis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import leq
from .diagonalize import DiagonalizationResult
from .modules import inner, left_action, orthogonal_complement_trivial
from .operators import ModuleOperator

__all__ = [
    "VerificationReport",
    "verify_eigensystem",
    "moment_oracle",
    "moment_deviation",
]


@dataclass(frozen=True)
class VerificationReport:
    """All residuals and flags from one verification run.

    Residual thresholds scale as tolerance * (1 + operator norm); overall
    is true exactly when every residual is inside its threshold and every
    flag holds.
    """

    eigen_residual: float
    complement_trivial: bool
    orthogonality_residual: float
    projection_defect: float
    support_residual: float
    ordering_ok: bool
    oracle_ok: bool
    moment_worst: float
    relations: tuple
    tolerance: float
    moment_tolerance: float
    operator_scale: float

    @property
    def residual_bound(self) -> float:
        return self.tolerance * (1.0 + self.operator_scale)

    @property
    def overall(self) -> bool:
        bound = self.residual_bound
        return (
            self.eigen_residual <= bound
            and self.complement_trivial
            and self.orthogonality_residual <= bound
            and self.projection_defect <= bound
            and self.support_residual <= bound
            and self.ordering_ok
            and self.oracle_ok
        )

    def summary(self) -> str:
        status = "pass" if self.overall else "fail"
        lines = [
            f"overall: {status}",
            f"eigen residual:         {self.eigen_residual:.3e}",
            f"complement trivial:     {self.complement_trivial}",
            f"orthogonality residual: {self.orthogonality_residual:.3e}",
            f"projection defect:      {self.projection_defect:.3e}",
            f"support residual:       {self.support_residual:.3e}",
            f"ordering ok:            {self.ordering_ok} ({len(self.relations)} relations)",
            f"moment oracle:          {self.oracle_ok} (worst deviation {self.moment_worst:.3e})",
        ]
        return "\n".join(lines)


def _zero_like(result: DiagonalizationResult):
    return result.pairs[0].value.shape.zero()


def _ordering_ok(result: DiagonalizationResult, order_tol: float) -> bool:
    if not result.ordering_certificate:
        return True
    by_label = {p.label: p.value for p in result.pairs}
    zero = _zero_like(result)
    for rel in result.ordering_certificate:
        lhs = zero if rel.lhs is None else by_label.get(rel.lhs)
        rhs = zero if rel.rhs is None else by_label.get(rel.rhs)
        if lhs is None or rhs is None:
            return False
        if not leq(lhs, rhs, tol=order_tol):
            return False
    return True


def moment_deviation(K: ModuleOperator, result: DiagonalizationResult, max_moment: int = 6) -> float:
    """Worst relative trace-of-power deviation over all moments and blocks."""
    if max_moment < 1:
        raise ValueError("max_moment must be at least 1")
    worst = 0.0
    shape = K.module.shape
    for b in range(shape.num_blocks):
        flat = K.blocks[b]
        compressed = []
        for p in result.pairs:
            pb = p.support.blocks[b]
            compressed.append(pb @ p.value.blocks[b] @ pb)
        lhs_pow = flat.copy()
        rhs_pow = [c.copy() for c in compressed]
        for _ in range(max_moment):
            lhs = complex(np.trace(lhs_pow))
            rhs = complex(sum(np.trace(c) for c in rhs_pow))
            dev = abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))
            worst = max(worst, dev)
            lhs_pow = lhs_pow @ flat
            rhs_pow = [cp @ c for cp, c in zip(rhs_pow, compressed)]
    return worst


def moment_oracle(
    K: ModuleOperator,
    result: DiagonalizationResult,
    max_moment: int = 6,
    tol: float = 1e-7,
) -> bool:
    return moment_deviation(K, result, max_moment) <= tol


def verify_eigensystem(
    K: ModuleOperator,
    result: DiagonalizationResult,
    tol: float = 1e-9,
    moment_tol: float = 1e-7,
    max_moment: int = 6,
) -> VerificationReport:
    if not result.pairs:
        raise ValueError("result has no eigenpairs")
    if result.pairs[0].vector.module != K.module:
        raise ValueError("result and operator live on different modules")
    scale = K.norm()

    eigen_residual = 0.0
    support_residual = 0.0
    projection_defect = 0.0
    for p in result.pairs:
        eigen_residual = max(eigen_residual, (K(p.vector) - left_action(p.value, p.vector)).norm())
        support_residual = max(support_residual, (p.value * p.support - p.value).norm())
        gram = inner(p.vector, p.vector)
        projection_defect = max(
            projection_defect,
            (gram - p.support).norm(),
            (p.support - p.support.adjoint()).norm(),
            (p.support * p.support - p.support).norm(),
        )

    orthogonality_residual = 0.0
    vectors = [p.vector for p in result.pairs]
    for i in range(len(vectors)):
        for j in range(i + 1, len(vectors)):
            orthogonality_residual = max(orthogonality_residual, inner(vectors[i], vectors[j]).norm())

    complement = orthogonal_complement_trivial(vectors, tol=1e-8)

    order_tol = max(tol, result.tolerance_used) * (1.0 + scale)
    ordering = _ordering_ok(result, order_tol)

    worst = moment_deviation(K, result, max_moment)
    return VerificationReport(
        eigen_residual=float(eigen_residual),
        complement_trivial=bool(complement),
        orthogonality_residual=float(orthogonality_residual),
        projection_defect=float(projection_defect),
        support_residual=float(support_residual),
        ordering_ok=bool(ordering),
        oracle_ok=bool(worst <= moment_tol),
        moment_worst=float(worst),
        relations=tuple(rel.describe() for rel in result.ordering_certificate),
        tolerance=float(tol),
        moment_tolerance=float(moment_tol),
        operator_scale=float(scale),
    )
