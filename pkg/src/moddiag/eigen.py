"""Dense complex Hermitian and normal eigensolvers.

A self-contained cyclic Jacobi implementation. Every spectral computation
in this package funnels through the two entry points below, which keeps
accuracy and tie-breaking behaviour in one place. Intended for the small
dense matrices this library works with.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

__all__ = [
    "MAX_SWEEPS",
    "ConvergenceError",
    "HermitianEig",
    "NotHermitianError",
    "NotNormalError",
    "eig_hermitian",
    "eig_normal",
]

MAX_SWEEPS = 60


class ConvergenceError(RuntimeError):
    """Jacobi sweeps failed to reach the off-diagonal target."""


class NotHermitianError(ValueError):
    """Input matrix is not Hermitian within tolerance."""


class NotNormalError(ValueError):
    """Input matrix is not normal within tolerance."""


class HermitianEig(NamedTuple):
    """Eigensystem of a Hermitian matrix.

    ``values`` is real and sorted descending. ``vectors`` is unitary with
    the eigenvector of ``values[r]`` in row r, so
    ``vectors @ H @ vectors.conj().T`` equals ``diag(values)`` up to
    round-off.
    """

    values: np.ndarray
    vectors: np.ndarray


def _square_complex(matrix) -> np.ndarray:
    a = np.asarray(matrix, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise ValueError(f"expected a nonempty square matrix, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise ValueError("matrix has non-finite entries")
    return a


def _offdiag_norm(a: np.ndarray) -> float:
    # summing the masked entries avoids the cancellation of total minus
    # diagonal, which floors near sqrt(eps) * frobenius and never converges
    off = np.abs(a) ** 2
    np.fill_diagonal(off, 0.0)
    return float(np.sqrt(off.sum()))


def _fix_row_phases(vectors: np.ndarray) -> np.ndarray:
    """Rotate each row so its first sizable entry lands on the positive real axis."""
    out = np.array(vectors)
    for r in range(out.shape[0]):
        mags = np.abs(out[r])
        top = mags.max()
        if top == 0.0:
            continue
        lead = int(np.argmax(mags > 1e-8 * top))
        pivot = out[r, lead]
        out[r] *= np.conj(pivot) / abs(pivot)
    return out


def eig_hermitian(matrix, tol: float = 1e-12) -> HermitianEig:
    """Diagonalize a Hermitian matrix by cyclic complex Jacobi rotations.

    Parameters
    ----------
    matrix : (d, d) array_like
        Hermitian up to ``tol * (1 + max|entry|)`` in entrywise distance.
    tol : float
        Also sets the sweep target: rotations stop once the off-diagonal
        Frobenius mass drops below ``tol * frobenius(matrix)``. At most
        ``MAX_SWEEPS`` sweeps are attempted.

    Returns
    -------
    HermitianEig
        Descending eigenvalues and a unitary matrix of row eigenvectors.
        Ties keep the sweep order (stable sort); each row's phase is fixed
        by making its first sizable component real positive, so the output
        is deterministic for a fixed input.
    """
    h = _square_complex(matrix)
    scale = float(np.abs(h).max())
    if float(np.abs(h - h.conj().T).max()) > tol * (1.0 + scale):
        raise NotHermitianError("matrix is not Hermitian within tolerance")
    d = h.shape[0]
    a = 0.5 * (h + h.conj().T)
    v = np.eye(d, dtype=np.complex128)
    if d == 1:
        vals = np.array([a[0, 0].real])
        return HermitianEig(vals, v)

    frob = float(np.sqrt((np.abs(a) ** 2).sum()))
    target = max(tol, 1e-14) * frob
    converged = frob == 0.0
    for _ in range(MAX_SWEEPS):
        if converged or _offdiag_norm(a) <= target:
            converged = True
            break
        thr = target / (2.0 * d)
        for p in range(d - 1):
            for q in range(p + 1, d):
                m = a[p, q]
                beta = abs(m)
                if beta <= thr:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * beta)
                t = 1.0 / (abs(tau) + np.sqrt(1.0 + tau * tau))
                if tau < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(1.0 + t * t)
                sc = (t * c) * (m / beta)
                csc = np.conj(sc)
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - csc * col_q
                a[:, q] = sc * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - sc * row_q
                a[q, :] = csc * row_p + c * row_q
                # the 2x2 core is known in closed form; writing it back
                # kills the rounding drift of the slice updates
                a[p, p] = app - t * beta
                a[q, q] = aqq + t * beta
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp = v[p, :].copy()
                vq = v[q, :].copy()
                v[p, :] = c * vp - sc * vq
                v[q, :] = csc * vp + c * vq
    if not converged and _offdiag_norm(a) > target:
        raise ConvergenceError(
            f"Jacobi did not converge within {MAX_SWEEPS} sweeps (d={d})"
        )

    vals = np.real(np.diag(a)).copy()
    order = np.argsort(-vals, kind="stable")
    values = vals[order]
    vectors = _fix_row_phases(v[order])
    return HermitianEig(values, vectors)


def eig_normal(matrix, tol: float = 1e-10) -> tuple[np.ndarray, np.ndarray]:
    """Diagonalize a normal matrix.

    Splits N into its Hermitian part H and skew part S (both Hermitian,
    commuting exactly when N is normal), diagonalizes H, then diagonalizes
    the compression of S inside every eigenspace of H.

    Returns ``(values, vectors)`` with complex values sorted by descending
    real part (descending imaginary part breaks ties) and row eigenvectors
    forming a unitary, so ``vectors @ N @ vectors.conj().T`` is diagonal.
    """
    n_ = _square_complex(matrix)
    scale = float(np.abs(n_).max())
    comm = n_ @ n_.conj().T - n_.conj().T @ n_
    if float(np.abs(comm).max()) > tol * (1.0 + scale * scale):
        raise NotNormalError("matrix is not normal within tolerance")

    herm = 0.5 * (n_ + n_.conj().T)
    skew = (n_ - n_.conj().T) / 2j
    base = eig_hermitian(herm)
    vec = np.array(base.vectors)
    hv = base.values
    d = n_.shape[0]

    gap = max(tol, 1e-12) * (1.0 + float(np.abs(hv).max()))
    start = 0
    while start < d:
        stop = start + 1
        while stop < d and hv[stop - 1] - hv[stop] <= gap:
            stop += 1
        if stop - start > 1:
            sub = vec[start:stop]
            comp = sub @ skew @ sub.conj().T
            comp = 0.5 * (comp + comp.conj().T)
            refine = eig_hermitian(comp)
            vec[start:stop] = refine.vectors @ sub
        start = stop

    m = vec @ n_ @ vec.conj().T
    values = np.diag(m).copy()
    resid = float(np.abs(m - np.diag(values)).max())
    if resid > 10.0 * max(tol, 1e-12) * (1.0 + scale):
        raise NotNormalError(
            "matrix could not be diagonalized to tolerance; it is either "
            "not normal or has nearly degenerate Hermitian-part eigenvalues"
        )
    order = np.lexsort((-values.imag, -values.real))
    values = values[order]
    vectors = _fix_row_phases(vec[order])
    return values, vectors
