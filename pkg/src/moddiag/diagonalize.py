"""Diagonalization of self-adjoint and normal module operators.

The algorithm works one algebra block at a time. The flattened action of a
self-adjoint operator on A^n is a Hermitian (n*k) x (n*k) matrix; its scalar
spectrum is split into n windows of k consecutive ranks, and each window
becomes one algebra-valued eigenvalue (a diagonal k x k block) together with
a module eigenvector built from the matching orthonormal eigenvector rows.

Window labels follow a sign convention: windows of positive scalars take odd
labels 1, 3, 5, ... from the top of the spectrum down, windows of negative
scalars take even labels 2, 4, 6, ... from the bottom up, and windows that
contain zeros or a sign change take the remaining labels in ascending order.
Because the windows are consecutive rank ranges of a sorted list, adjacent
windows always compare entrywise, which yields a machine-checkable chain of
order relations linking every eigenvalue through the zero element.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .algebra import AlgebraElement, NotSelfAdjointError
from .eigen import NotNormalError, eig_hermitian, eig_normal
from .modules import ModuleElement
from .operators import ModuleOperator

__all__ = [
    "Slot",
    "EigenPair",
    "OrderRelation",
    "DiagonalizationResult",
    "order_eigenvalues",
    "diagonalize_selfadjoint",
    "diagonalize_normal",
]


class Slot(NamedTuple):
    """One window of the scalar spectrum: a label, its values, their positions.

    values are listed in the order they will appear on the diagonal of the
    block eigenvalue; indices are the matching positions in the input list.
    """

    label: int
    values: tuple
    indices: tuple


class EigenPair(NamedTuple):
    vector: "ModuleElement"
    value: AlgebraElement
    support: AlgebraElement
    label: int


@dataclass(frozen=True)
class OrderRelation:
    """lhs <= rhs between labeled eigenvalues; None stands for the zero element."""

    lhs: Optional[int]
    rhs: Optional[int]

    def describe(self) -> str:
        a = "0" if self.lhs is None else f"L{self.lhs}"
        b = "0" if self.rhs is None else f"L{self.rhs}"
        return f"{a} <= {b}"


@dataclass(frozen=True)
class DiagonalizationResult:
    pairs: tuple
    ordering_certificate: tuple
    tolerance_used: float

    def pair_by_label(self, label: int) -> EigenPair:
        for p in self.pairs:
            if p.label == label:
                return p
        raise KeyError(f"no eigenpair with label {label}")

    def labels(self) -> tuple:
        return tuple(p.label for p in self.pairs)

    def scalar_spectrum(self) -> tuple:
        """Per algebra block, the diagonal scalars of all value blocks.

        Valid for results produced here, whose values are diagonal with full
        support. Each block's list is sorted by descending real part, then
        descending imaginary part.
        """
        if not self.pairs:
            return ()
        shape = self.pairs[0].value.shape
        out = []
        for b in range(shape.num_blocks):
            vals = []
            for p in self.pairs:
                vals.extend(complex(z) for z in np.diag(p.value.blocks[b]))
            vals.sort(key=lambda z: (-z.real, -z.imag))
            out.append(tuple(vals))
        return tuple(out)


def _mark(value: float, zero_tol: float) -> int:
    if value > zero_tol:
        return 1
    if value < -zero_tol:
        return -1
    return 0


def _combine_marks(marks) -> str:
    s = set(marks)
    if s == {1}:
        return "pos"
    if s == {-1}:
        return "neg"
    if s == {0}:
        return "zero"
    return "mixed"


def _assign_labels(classes: Sequence[str]) -> list:
    """Labels for windows listed from the top of the spectrum down."""
    n = len(classes)
    labels: list = [None] * n
    nxt = 1
    for m in range(n):
        if classes[m] == "pos":
            labels[m] = nxt
            nxt += 2
    nxt = 2
    for m in range(n - 1, -1, -1):
        if classes[m] == "neg":
            labels[m] = nxt
            nxt += 2
    used = {l for l in labels if l is not None}
    nxt = 1
    for m in range(n):
        if labels[m] is None:
            while nxt in used:
                nxt += 1
            labels[m] = nxt
            used.add(nxt)
    return labels


def _direction(cls: str, side: str) -> str:
    if cls == "pos":
        return "desc"
    if cls == "neg":
        return "asc"
    return "desc" if side == "top" else "asc"


def _certificate(labels, nonneg, nonpos) -> tuple:
    n = len(labels)
    relations = []
    for m in range(n - 1, 0, -1):
        relations.append(OrderRelation(labels[m], labels[m - 1]))
    first_nonpos = next((m for m in range(n) if nonpos[m]), None)
    if first_nonpos is not None:
        relations.append(OrderRelation(labels[first_nonpos], None))
    last_nonneg = next((m for m in range(n - 1, -1, -1) if nonneg[m]), None)
    if last_nonneg is not None:
        relations.append(OrderRelation(None, labels[last_nonneg]))
    return tuple(relations)


def order_eigenvalues(scalars, block_size: int, zero_tol: float = 0.0):
    """Assign a flat list of real scalars to labeled diagonal windows.

    The scalars are sorted descending and cut into windows of block_size
    consecutive ranks; window m dominates window m+1 entrywise. Returns the
    slots in that dominance order, labels assigned by sign class.
    """
    vals = np.asarray(scalars, dtype=float)
    if vals.ndim != 1 or vals.size == 0:
        raise ValueError("scalars must be a nonempty flat list")
    if not np.isfinite(vals).all():
        raise ValueError("scalars must be finite")
    if block_size < 1 or vals.size % block_size:
        raise ValueError(f"block size {block_size} does not divide {vals.size} scalars")
    if zero_tol < 0:
        raise ValueError("zero_tol must be nonnegative")
    order = np.argsort(-vals, kind="stable")
    n = vals.size // block_size
    windows = [order[m * block_size : (m + 1) * block_size] for m in range(n)]
    classes = [_combine_marks(_mark(vals[i], zero_tol) for i in w) for w in windows]
    labels = _assign_labels(classes)
    top_count = (n + 1) // 2
    slots = []
    for m in range(n):
        side = "top" if m < top_count else "bottom"
        idx = windows[m]
        if _direction(classes[m], side) == "asc":
            idx = idx[::-1]
        slots.append(
            Slot(labels[m], tuple(float(vals[i]) for i in idx), tuple(int(i) for i in idx))
        )
    return slots


def _operator_scale(eigs) -> float:
    out = 0.0
    for values in eigs:
        if values.size:
            out = max(out, abs(float(values[0])), abs(float(values[-1])))
    return out


def diagonalize_selfadjoint(K: ModuleOperator, tol: float = 1e-9) -> DiagonalizationResult:
    """Produce labeled eigenpairs with unit supports and an order certificate.

    Every returned support is the algebra identity, the vectors are pairwise
    orthogonal with trivial orthogonal complement, and the certificate lists
    entrywise-checkable relations that chain all eigenvalues through zero.
    """
    if not 0.0 < tol < 1.0:
        raise ValueError("tol must be in (0, 1)")
    if not K.is_selfadjoint(tol):
        raise NotSelfAdjointError("operator is not self-adjoint within tolerance")
    module = K.module
    shape = module.shape
    n = module.rank
    eig_values = []
    eig_vectors = []
    for blk in K.blocks:
        res = eig_hermitian((blk + blk.conj().T) / 2.0, tol=min(tol, 1e-12))
        eig_values.append(res.values)
        eig_vectors.append(res.vectors)
    zero_tol = tol * _operator_scale(eig_values)

    classes = []
    nonneg = []
    nonpos = []
    for m in range(n):
        marks = []
        for values, k in zip(eig_values, shape.block_sizes):
            marks.extend(_mark(float(v), zero_tol) for v in values[m * k : (m + 1) * k])
        classes.append(_combine_marks(marks))
        nonneg.append(min(marks) >= 0)
        nonpos.append(max(marks) <= 0)
    labels = _assign_labels(classes)

    top_count = (n + 1) // 2
    pairs = []
    for m in range(n):
        side = "top" if m < top_count else "bottom"
        reverse = _direction(classes[m], side) == "asc"
        stacked = []
        diag_blocks = []
        for values, vectors, k in zip(eig_values, eig_vectors, shape.block_sizes):
            ranks = list(range(m * k, (m + 1) * k))
            if reverse:
                ranks.reverse()
            stacked.append(vectors[ranks, :])
            diag_blocks.append(np.diag(values[ranks].astype(np.complex128)))
        pairs.append(
            EigenPair(
                vector=ModuleElement(module, stacked),
                value=AlgebraElement(shape, diag_blocks),
                support=shape.identity(),
                label=labels[m],
            )
        )
    pairs.sort(key=lambda p: p.label)
    certificate = _certificate(labels, nonneg, nonpos)
    return DiagonalizationResult(tuple(pairs), certificate, float(tol))


def diagonalize_normal(K: ModuleOperator, tol: float = 1e-9) -> DiagonalizationResult:
    """Same construction for normal operators; complex values, no certificate."""
    if not 0.0 < tol < 1.0:
        raise ValueError("tol must be in (0, 1)")
    if not K.is_normal(tol):
        raise NotNormalError("operator is not normal within tolerance")
    module = K.module
    shape = module.shape
    n = module.rank
    pairs = []
    spectra = []
    for blk in K.blocks:
        values, vectors = eig_normal(blk, tol=min(tol, 1e-10))
        spectra.append((values, vectors))
    for m in range(n):
        stacked = []
        diag_blocks = []
        for (values, vectors), k in zip(spectra, shape.block_sizes):
            ranks = slice(m * k, (m + 1) * k)
            stacked.append(vectors[ranks, :])
            diag_blocks.append(np.diag(values[ranks]))
        pairs.append(
            EigenPair(
                vector=ModuleElement(module, stacked),
                value=AlgebraElement(shape, diag_blocks),
                support=shape.identity(),
                label=m + 1,
            )
        )
    return DiagonalizationResult(tuple(pairs), (), float(tol))
