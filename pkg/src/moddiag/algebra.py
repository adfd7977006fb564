"""Block matrix *-algebras: finite direct sums of full complex matrix algebras.

An element carries one square complex matrix per block. Multiplication,
adjoint, the semidefinite order, the center-valued trace and the spectral
calculus all act blockwise. Elements are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Complex
from typing import Sequence

import numpy as np

from .eigen import eig_hermitian

__all__ = [
    "AlgebraShape",
    "AlgebraElement",
    "ShapeMismatchError",
    "NotSelfAdjointError",
    "NotPositiveError",
    "SpectralDecomposition",
    "is_projection",
    "leq",
    "center_trace",
    "spectral_decomposition",
    "sqrt_pinv",
]


class ShapeMismatchError(ValueError):
    pass


class NotSelfAdjointError(ValueError):
    pass


class NotPositiveError(ValueError):
    pass


@dataclass(frozen=True)
class AlgebraShape:
    """Direct-sum signature: the matrix size of each block."""

    block_sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(int(k) for k in self.block_sizes)
        if not sizes:
            raise ValueError("an algebra needs at least one block")
        if any(k < 1 for k in sizes):
            raise ValueError("block sizes must be positive")
        object.__setattr__(self, "block_sizes", sizes)

    @property
    def num_blocks(self) -> int:
        return len(self.block_sizes)

    @property
    def dim(self) -> int:
        """Complex dimension of the algebra."""
        return sum(k * k for k in self.block_sizes)

    def element(self, blocks) -> AlgebraElement:
        return AlgebraElement(self, blocks)

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, [np.zeros((k, k)) for k in self.block_sizes])

    def identity(self) -> AlgebraElement:
        return AlgebraElement(self, [np.eye(k) for k in self.block_sizes])

    def diagonal(self, entries_per_block) -> AlgebraElement:
        """Element with the given diagonal entries, zero elsewhere."""
        if len(entries_per_block) != self.num_blocks:
            raise ShapeMismatchError("one entry list per block expected")
        mats = []
        for k, ent in zip(self.block_sizes, entries_per_block):
            arr = np.asarray(ent, dtype=np.complex128)
            if arr.shape != (k,):
                raise ShapeMismatchError(f"expected {k} diagonal entries, got {arr.shape}")
            mats.append(np.diag(arr))
        return AlgebraElement(self, mats)

    def block_projection(self, index: int) -> AlgebraElement:
        """Central projection onto one block."""
        mats = [
            np.eye(k) if b == index else np.zeros((k, k))
            for b, k in enumerate(self.block_sizes)
        ]
        return AlgebraElement(self, mats)


class AlgebraElement:
    """One element of a block matrix algebra: a tuple of square blocks."""

    __slots__ = ("shape", "blocks")

    def __init__(self, shape: AlgebraShape, blocks: Sequence):
        if len(blocks) != shape.num_blocks:
            raise ShapeMismatchError(
                f"expected {shape.num_blocks} blocks, got {len(blocks)}"
            )
        mats = []
        for k, raw in zip(shape.block_sizes, blocks):
            m = np.array(raw, dtype=np.complex128)
            if m.shape != (k, k):
                raise ShapeMismatchError(f"block must be {k}x{k}, got {m.shape}")
            if not np.isfinite(m).all():
                raise ValueError("algebra element has non-finite entries")
            m.setflags(write=False)
            mats.append(m)
        self.shape = shape
        self.blocks = tuple(mats)

    def _require_same(self, other: AlgebraElement):
        if self.shape != other.shape:
            raise ShapeMismatchError("elements live in different algebras")

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._require_same(other)
        return AlgebraElement(self.shape, [a + b for a, b in zip(self.blocks, other.blocks)])

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._require_same(other)
        return AlgebraElement(self.shape, [a - b for a, b in zip(self.blocks, other.blocks)])

    def __neg__(self):
        return AlgebraElement(self.shape, [-a for a in self.blocks])

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._require_same(other)
            return AlgebraElement(self.shape, [a @ b for a, b in zip(self.blocks, other.blocks)])
        if isinstance(other, Complex):
            z = complex(other)
            return AlgebraElement(self.shape, [z * a for a in self.blocks])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Complex):
            z = complex(other)
            return AlgebraElement(self.shape, [z * a for a in self.blocks])
        return NotImplemented

    def adjoint(self) -> AlgebraElement:
        return AlgebraElement(self.shape, [a.conj().T for a in self.blocks])

    def trace(self) -> complex:
        return complex(sum(np.trace(a) for a in self.blocks))

    def norm(self) -> float:
        """C*-norm: the largest singular value over all blocks."""
        out = 0.0
        for a in self.blocks:
            if not a.any():
                continue
            gram = a.conj().T @ a
            top = eig_hermitian(gram).values[0]
            out = max(out, float(np.sqrt(max(top, 0.0))))
        return out

    def isclose(self, other: AlgebraElement, tol: float = 1e-12) -> bool:
        return (self - other).norm() <= tol

    def is_selfadjoint(self, tol: float = 1e-10) -> bool:
        return (self - self.adjoint()).norm() <= tol * (1.0 + self.norm())

    def __str__(self):
        parts = [np.array2string(a, precision=6, suppress_small=True) for a in self.blocks]
        return " (+) ".join(parts)

    def __repr__(self):
        return f"AlgebraElement(shape={self.shape.block_sizes}, norm={self.norm():.6g})"


def is_projection(a: AlgebraElement, tol: float = 1e-9) -> bool:
    """True when a is self-adjoint and idempotent within tol (absolute)."""
    if (a - a.adjoint()).norm() > tol:
        return False
    return (a * a - a).norm() <= tol


def _check_selfadjoint(a: AlgebraElement, what: str):
    if (a - a.adjoint()).norm() > 1e-10 * (1.0 + a.norm()):
        raise NotSelfAdjointError(f"{what} must be self-adjoint")


def _sym(mat: np.ndarray) -> np.ndarray:
    return 0.5 * (mat + mat.conj().T)


def leq(a: AlgebraElement, b: AlgebraElement, tol: float | None = None) -> bool:
    """Semidefinite order: b - a is positive semidefinite in every block.

    tol bounds how negative an eigenvalue of b - a may be; it defaults to
    1e-10 * (1 + ||b - a||).
    """
    a._require_same(b)
    _check_selfadjoint(a, "left operand")
    _check_selfadjoint(b, "right operand")
    diff = b - a
    if tol is None:
        tol = 1e-10 * (1.0 + diff.norm())
    for blk in diff.blocks:
        smallest = eig_hermitian(_sym(blk)).values[-1]
        if smallest < -tol:
            return False
    return True


def center_trace(a: AlgebraElement) -> AlgebraElement:
    """Center-valued trace: each block is averaged onto its identity."""
    mats = []
    for k, blk in zip(a.shape.block_sizes, a.blocks):
        mats.append((np.trace(blk) / k) * np.eye(k))
    return AlgebraElement(a.shape, mats)


@dataclass(frozen=True)
class SpectralDecomposition:
    """Finite spectral resolution a = sum(lam_i * p_i).

    eigenvalues are strictly decreasing; projections are mutually
    orthogonal and sum to the identity of the algebra.
    """

    eigenvalues: tuple[float, ...]
    projections: tuple[AlgebraElement, ...]


def spectral_decomposition(a: AlgebraElement, tol: float | None = None) -> SpectralDecomposition:
    """Spectral resolution of a self-adjoint element.

    Eigenvalues closer than tol are merged into one spectral projection;
    tol defaults to 1e-9 * ||a||.
    """
    _check_selfadjoint(a, "input")
    if tol is None:
        tol = 1e-9 * a.norm()
    entries = []  # (value, block, row eigenvector)
    for b, blk in enumerate(a.blocks):
        eg = eig_hermitian(_sym(blk))
        for r in range(eg.values.shape[0]):
            entries.append((float(eg.values[r]), b, eg.vectors[r]))
    entries.sort(key=lambda e: -e[0])

    groups: list[list] = []
    for e in entries:
        if groups and groups[-1][-1][0] - e[0] <= tol:
            groups[-1].append(e)
        else:
            groups.append([e])

    shape = a.shape
    eigenvalues = []
    projections = []
    for grp in groups:
        eigenvalues.append(float(np.mean([e[0] for e in grp])))
        mats = [np.zeros((k, k), dtype=np.complex128) for k in shape.block_sizes]
        for _, b, vec in grp:
            mats[b] = mats[b] + np.outer(np.conj(vec), vec)
        projections.append(AlgebraElement(shape, mats))
    return SpectralDecomposition(tuple(eigenvalues), tuple(projections))


def sqrt_pinv(a: AlgebraElement, rank_tol: float = 1e-8) -> tuple[AlgebraElement, AlgebraElement]:
    """Pseudo-inverse square root of a positive element.

    Returns (s, q) with s = a^(-1/2) on the support of a and q the support
    projection, so that s * a * s = q up to round-off. Eigenvalues below
    rank_tol * ||a|| count as zero; an eigenvalue below the negative of
    that threshold raises NotPositiveError.
    """
    _check_selfadjoint(a, "input")
    cut = rank_tol * a.norm()
    s_mats = []
    q_mats = []
    for blk in a.blocks:
        eg = eig_hermitian(_sym(blk))
        if eg.values[-1] < -max(cut, 1e-14):
            raise NotPositiveError(
                f"negative eigenvalue {eg.values[-1]:.3e} beyond tolerance"
            )
        keep = eg.values > cut
        inv_sqrt = np.where(keep, 1.0 / np.sqrt(np.where(keep, eg.values, 1.0)), 0.0)
        vh = eg.vectors.conj().T
        s_mats.append(vh @ np.diag(inv_sqrt) @ eg.vectors)
        q_mats.append(vh @ np.diag(keep.astype(np.complex128)) @ eg.vectors)
    return AlgebraElement(a.shape, s_mats), AlgebraElement(a.shape, q_mats)
