"""Bounded module maps on a free Hilbert module.

An operator is stored per algebra block as an (n*k, n*k) complex matrix
acting on stacked row strips from the right. With this convention the left
algebra action commutes with every operator by construction, entry (i, j)
of the operator is the k x k block at rows i*k.. and columns j*k.., and
composition, adjoint and norms are single matrix operations per block.
"""

from __future__ import annotations

from numbers import Complex
from typing import Sequence

import numpy as np

from .algebra import AlgebraElement, ShapeMismatchError, is_projection
from .eigen import eig_hermitian
from .modules import HilbertModule, ModuleElement

__all__ = [
    "ModuleOperator",
    "theta",
    "central_decompose",
]


class ModuleOperator:
    """A-linear map on A^n, represented per block by its flattened action."""

    __slots__ = ("module", "blocks")

    def __init__(self, module: HilbertModule, blocks: Sequence):
        mats = []
        for k, raw in zip(module.shape.block_sizes, blocks):
            m = np.array(raw, dtype=np.complex128)
            want = module.rank * k
            if m.shape != (want, want):
                raise ShapeMismatchError(f"operator block must be {want}x{want}, got {m.shape}")
            if not np.isfinite(m).all():
                raise ValueError("operator has non-finite entries")
            m.setflags(write=False)
            mats.append(m)
        if len(mats) != module.shape.num_blocks:
            raise ShapeMismatchError("wrong number of operator blocks")
        self.module = module
        self.blocks = tuple(mats)

    @classmethod
    def zero(cls, module: HilbertModule) -> ModuleOperator:
        return cls(module, [np.zeros((module.rank * k,) * 2) for k in module.shape.block_sizes])

    @classmethod
    def identity(cls, module: HilbertModule) -> ModuleOperator:
        return cls(module, [np.eye(module.rank * k) for k in module.shape.block_sizes])

    @classmethod
    def from_entries(cls, module: HilbertModule, entries: Sequence[Sequence[AlgebraElement]]) -> ModuleOperator:
        """Build from an n x n array of algebra elements.

        The action is (T x)_j = sum_i x_i * entries[i][j].
        """
        n = module.rank
        if len(entries) != n or any(len(row) != n for row in entries):
            raise ShapeMismatchError(f"entries must form an {n}x{n} array")
        mats = []
        for b, k in enumerate(module.shape.block_sizes):
            flat = np.zeros((n * k, n * k), dtype=np.complex128)
            for i in range(n):
                for j in range(n):
                    ent = entries[i][j]
                    if ent.shape != module.shape:
                        raise ShapeMismatchError("entry from a different algebra")
                    flat[i * k : (i + 1) * k, j * k : (j + 1) * k] = ent.blocks[b]
            mats.append(flat)
        return cls(module, mats)

    def entry(self, i: int, j: int) -> AlgebraElement:
        n = self.module.rank
        if not (0 <= i < n and 0 <= j < n):
            raise IndexError("entry index out of range")
        mats = [
            blk[i * k : (i + 1) * k, j * k : (j + 1) * k]
            for k, blk in zip(self.module.shape.block_sizes, self.blocks)
        ]
        return AlgebraElement(self.module.shape, mats)

    def entries(self) -> list[list[AlgebraElement]]:
        n = self.module.rank
        return [[self.entry(i, j) for j in range(n)] for i in range(n)]

    def __call__(self, x: ModuleElement) -> ModuleElement:
        if x.module != self.module:
            raise ShapeMismatchError("element from a different module")
        return ModuleElement(self.module, [st @ blk for st, blk in zip(x.stacked, self.blocks)])

    def compose(self, other: ModuleOperator) -> ModuleOperator:
        """self after other: (self.compose(other))(x) = self(other(x))."""
        self._require_same(other)
        return ModuleOperator(
            self.module, [b @ a for a, b in zip(self.blocks, other.blocks)]
        )

    def __matmul__(self, other):
        if not isinstance(other, ModuleOperator):
            return NotImplemented
        return self.compose(other)

    def adjoint(self) -> ModuleOperator:
        return ModuleOperator(self.module, [blk.conj().T for blk in self.blocks])

    def _require_same(self, other: ModuleOperator):
        if self.module != other.module:
            raise ShapeMismatchError("operators act on different modules")

    def __add__(self, other):
        if not isinstance(other, ModuleOperator):
            return NotImplemented
        self._require_same(other)
        return ModuleOperator(self.module, [a + b for a, b in zip(self.blocks, other.blocks)])

    def __sub__(self, other):
        if not isinstance(other, ModuleOperator):
            return NotImplemented
        self._require_same(other)
        return ModuleOperator(self.module, [a - b for a, b in zip(self.blocks, other.blocks)])

    def __neg__(self):
        return ModuleOperator(self.module, [-a for a in self.blocks])

    def __mul__(self, other):
        if isinstance(other, Complex):
            z = complex(other)
            return ModuleOperator(self.module, [z * a for a in self.blocks])
        return NotImplemented

    __rmul__ = __mul__

    def norm(self) -> float:
        """Operator norm: the top singular value of the flattened action."""
        out = 0.0
        for blk in self.blocks:
            if not blk.any():
                continue
            gram = blk.conj().T @ blk
            top = eig_hermitian(gram).values[0]
            out = max(out, float(np.sqrt(max(top, 0.0))))
        return out

    def entrywise_max(self) -> float:
        return max(float(np.abs(blk).max()) for blk in self.blocks)

    def is_selfadjoint(self, tol: float = 1e-10) -> bool:
        defect = max(float(np.abs(blk - blk.conj().T).max()) for blk in self.blocks)
        return defect <= tol * (1.0 + self.entrywise_max())

    def is_normal(self, tol: float = 1e-10) -> bool:
        scale = self.entrywise_max()
        for blk in self.blocks:
            comm = blk @ blk.conj().T - blk.conj().T @ blk
            if float(np.abs(comm).max()) > tol * (1.0 + scale * scale):
                return False
        return True

    def __repr__(self):
        return f"ModuleOperator(rank={self.module.rank}, blocks={self.module.shape.block_sizes})"


def theta(x: ModuleElement, y: ModuleElement) -> ModuleOperator:
    """Rank-one style map z -> <z, x> y; entry (i, j) is x_i* y_j."""
    x._require_same(y)
    mats = [xa.conj().T @ ya for xa, ya in zip(x.stacked, y.stacked)]
    return ModuleOperator(x.module, mats)


def central_decompose(
    op: ModuleOperator, projection: AlgebraElement, tol: float = 1e-10
) -> tuple[ModuleOperator, ModuleOperator]:
    """Split op = p.op (+) (1-p).op along a central projection p.

    p must be central (each block a scalar multiple of its identity) and a
    projection, so every block scalar is 0 or 1; the two returned operators
    are supported on the corresponding central summands.
    """
    if projection.shape != op.module.shape:
        raise ShapeMismatchError("projection from a different algebra")
    if not is_projection(projection, tol=max(tol, 1e-9)):
        raise ValueError("central_decompose needs a projection")
    flags = []
    for k, blk in zip(projection.shape.block_sizes, projection.blocks):
        c = complex(np.trace(blk) / k)
        if float(np.abs(blk - c * np.eye(k)).max()) > tol:
            raise ValueError("projection is not central")
        flags.append(abs(c - 1.0) <= abs(c))
    part = ModuleOperator(
        op.module,
        [blk if keep else np.zeros_like(blk) for keep, blk in zip(flags, op.blocks)],
    )
    rest = ModuleOperator(
        op.module,
        [np.zeros_like(blk) if keep else blk for keep, blk in zip(flags, op.blocks)],
    )
    return part, rest
