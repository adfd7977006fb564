"""Jacobi eigensolver checked against numpy.linalg as an independent oracle."""

import numpy as np
import pytest

from moddiag import ConvergenceError, NotHermitianError, NotNormalError, eig_hermitian, eig_normal

from helpers import random_hermitian

VALUE_TOL = 1e-11
RESIDUAL_TOL = 1e-11
UNITARY_TOL = 1e-12


def test_matches_numpy_eigenvalues():
    rng = np.random.default_rng(11)
    for d in (1, 2, 3, 5, 8, 13, 21, 40):
        a = random_hermitian(rng, d)
        got = eig_hermitian(a).values
        want = np.sort(np.linalg.eigvalsh(a))[::-1]
        scale = 1.0 + np.abs(want).max()
        assert np.abs(got - want).max() <= VALUE_TOL * scale


def test_reconstruction_and_unitarity():
    rng = np.random.default_rng(12)
    for d in (2, 4, 7, 16, 33):
        a = random_hermitian(rng, d)
        res = eig_hermitian(a)
        q, vals = res.vectors, res.values
        scale = 1.0 + np.abs(a).max()
        # rows of q are the eigenvectors, so q A q* is the diagonal
        recon = q.conj().T @ np.diag(vals) @ q
        assert np.abs(recon - a).max() <= RESIDUAL_TOL * scale
        assert np.abs(q @ q.conj().T - np.eye(d)).max() <= UNITARY_TOL


def test_values_sorted_descending():
    rng = np.random.default_rng(13)
    vals = eig_hermitian(random_hermitian(rng, 12)).values
    assert np.all(np.diff(vals) <= 0)


def test_deterministic_repeat():
    rng = np.random.default_rng(14)
    a = random_hermitian(rng, 9)
    first = eig_hermitian(a)
    second = eig_hermitian(a)
    assert np.array_equal(first.values, second.values)
    assert np.array_equal(first.vectors, second.vectors)


def test_one_by_one():
    res = eig_hermitian(np.array([[3.5 + 0j]]))
    assert res.values[0] == 3.5
    assert res.vectors[0, 0] == 1.0


def test_already_diagonal():
    a = np.diag([4.0, 4.0, 1.0]).astype(complex)
    res = eig_hermitian(a)
    assert np.array_equal(res.values, np.array([4.0, 4.0, 1.0]))


def test_degenerate_spectrum():
    # projector with a fat eigenspace; eigenvalues must still come out exact
    rng = np.random.default_rng(15)
    q = np.linalg.qr(rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6)))[0]
    a = q[:, :4] @ q[:, :4].conj().T
    vals = eig_hermitian(a).values
    assert np.abs(vals - np.array([1, 1, 1, 1, 0, 0])).max() <= 1e-12


def test_rejects_non_hermitian():
    a = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    with pytest.raises(NotHermitianError):
        eig_hermitian(a)


def test_rejects_non_square():
    with pytest.raises(ValueError):
        eig_hermitian(np.zeros((2, 3), dtype=complex))


def test_rejects_non_finite():
    a = np.array([[np.nan, 0.0], [0.0, 1.0]], dtype=complex)
    with pytest.raises(ValueError):
        eig_hermitian(a)


def test_normal_matches_numpy():
    rng = np.random.default_rng(16)
    for d in (2, 3, 6, 10):
        q = np.linalg.qr(rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)))[0]
        diag = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        a = q @ np.diag(diag) @ q.conj().T
        vals, vecs = eig_normal(a)
        want = np.array(sorted(np.linalg.eigvals(a), key=lambda z: (-z.real, -z.imag)))
        scale = 1.0 + np.abs(want).max()
        assert np.abs(vals - want).max() <= 1e-8 * scale
        recon = vecs.conj().T @ np.diag(vals) @ vecs
        assert np.abs(recon - a).max() <= 1e-8 * scale
        assert np.abs(vecs @ vecs.conj().T - np.eye(d)).max() <= 1e-9


def test_normal_with_tied_real_parts():
    # two eigenvalues share a real part and only separate in the skew part
    vals = np.array([1.0 + 1.0j, 1.0 + 2.0j, 3.0 + 0.0j])
    rng = np.random.default_rng(17)
    q = np.linalg.qr(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))[0]
    a = q @ np.diag(vals) @ q.conj().T
    got = eig_normal(a)[0]
    want = np.array([3.0 + 0.0j, 1.0 + 2.0j, 1.0 + 1.0j])
    assert np.abs(got - want).max() <= 1e-9


def test_normal_accepts_hermitian_input():
    rng = np.random.default_rng(18)
    a = random_hermitian(rng, 7)
    vals = eig_normal(a)[0]
    assert np.abs(vals.imag).max() <= 1e-10
    want = np.sort(np.linalg.eigvalsh(a))[::-1]
    assert np.abs(vals.real - want).max() <= 1e-9


def test_normal_rejects_non_normal():
    a = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    with pytest.raises(NotNormalError):
        eig_normal(a)


def test_convergence_error_is_exported():
    assert issubclass(ConvergenceError, Exception)
