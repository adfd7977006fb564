"""Module elements, the algebra-valued inner product, and frame utilities."""

import numpy as np
import pytest

from moddiag import (
    AlgebraShape,
    HilbertModule,
    ShapeMismatchError,
    inner,
    is_projection,
    left_action,
    leq,
    module_norm,
    normalize_to_projection,
    orthogonal_complement_trivial,
    right_action,
)

from helpers import module_over, random_algebra_element, random_element

TOL = 1e-10

MOD = module_over((2, 3), 3)


def test_basis_elements():
    for i in range(MOD.rank):
        e = MOD.basis_element(i)
        for j in range(MOD.rank):
            want = MOD.shape.identity() if i == j else MOD.shape.zero()
            assert e.coord(j).isclose(want)
    assert inner(MOD.basis_element(0), MOD.basis_element(1)).norm() == 0.0


def test_coords_round_trip():
    rng = np.random.default_rng(31)
    x = random_element(MOD, rng)
    again = MOD.element(x.coords())
    for st1, st2 in zip(x.stacked, again.stacked):
        assert np.array_equal(st1, st2)


def test_inner_first_slot_linear():
    rng = np.random.default_rng(32)
    x = random_element(MOD, rng)
    y = random_element(MOD, rng)
    z = random_element(MOD, rng)
    a = random_algebra_element(MOD.shape, rng)
    lhs = inner(left_action(a, x) + z, y)
    rhs = a * inner(x, y) + inner(z, y)
    assert lhs.isclose(rhs, tol=TOL * (1 + rhs.norm()))


def test_inner_adjoint_symmetry():
    rng = np.random.default_rng(33)
    x = random_element(MOD, rng)
    y = random_element(MOD, rng)
    assert inner(x, y).adjoint().isclose(inner(y, x), tol=TOL)


def test_inner_positive():
    rng = np.random.default_rng(34)
    x = random_element(MOD, rng)
    g = inner(x, x)
    assert g.is_selfadjoint()
    assert leq(MOD.shape.zero(), g)


def test_inner_matches_coordinate_sum():
    rng = np.random.default_rng(35)
    x = random_element(MOD, rng)
    y = random_element(MOD, rng)
    acc = MOD.shape.zero()
    for i in range(MOD.rank):
        acc = acc + x.coord(i) * y.coord(i).adjoint()
    assert inner(x, y).isclose(acc, tol=TOL * (1 + acc.norm()))


def test_actions_commute():
    # (a . x) . b has coordinates a x_i b
    rng = np.random.default_rng(36)
    x = random_element(MOD, rng)
    a = random_algebra_element(MOD.shape, rng)
    b = random_algebra_element(MOD.shape, rng)
    lhs = right_action(left_action(a, x), b)
    rhs = left_action(a, right_action(x, b))
    for i in range(MOD.rank):
        want = a * x.coord(i) * b
        assert lhs.coord(i).isclose(want, tol=TOL * (1 + want.norm()))
        assert rhs.coord(i).isclose(want, tol=TOL * (1 + want.norm()))


def test_right_action_via_mul_operator():
    rng = np.random.default_rng(37)
    x = random_element(MOD, rng)
    a = random_algebra_element(MOD.shape, rng)
    assert (x * a).coord(1).isclose(right_action(x, a).coord(1), tol=1e-14)


def test_scalar_and_vector_arithmetic():
    rng = np.random.default_rng(38)
    x = random_element(MOD, rng)
    y = random_element(MOD, rng)
    z = 2.0 * x - y + x * 0.5
    for i in range(MOD.rank):
        want = 2.5 * x.coord(i) - y.coord(i)
        assert z.coord(i).isclose(want, tol=TOL)
    assert (x - x).norm() == 0.0


def test_module_norm_is_gram_norm_sqrt():
    rng = np.random.default_rng(39)
    x = random_element(MOD, rng)
    assert module_norm(x) == pytest.approx(np.sqrt(inner(x, x).norm()), rel=1e-12)
    assert x.norm() == pytest.approx(module_norm(x), rel=1e-12)


def test_cauchy_schwarz():
    rng = np.random.default_rng(40)
    for _ in range(20):
        x = random_element(MOD, rng)
        y = random_element(MOD, rng)
        lhs = inner(x, y).norm() ** 2
        assert lhs <= inner(x, x).norm() * inner(y, y).norm() * (1 + 1e-12)


def test_normalize_to_projection():
    rng = np.random.default_rng(41)
    x = random_element(MOD, rng)
    u, q = normalize_to_projection(x)
    g = inner(u, u)
    assert is_projection(g, tol=1e-9)
    assert g.isclose(q, tol=1e-9)
    # full-rank input normalizes to a unit vector
    assert g.isclose(MOD.shape.identity(), tol=1e-8)


def test_normalize_to_projection_rank_deficient():
    shape = AlgebraShape((2,))
    mod = HilbertModule(shape, 2)
    x = mod.element([shape.diagonal([[3.0, 0.0]]), shape.zero()])
    u, q = normalize_to_projection(x)
    want = shape.diagonal([[1.0, 0.0]])
    assert q.isclose(want, tol=1e-10)
    assert inner(u, u).isclose(want, tol=1e-10)
    # the support acts as the identity on the normalized vector
    assert (left_action(q, u) - u).norm() <= 1e-12


def test_normalize_zero_vector_raises():
    with pytest.raises(ValueError):
        normalize_to_projection(MOD.zero_element())


def test_complement_trivial_for_full_basis():
    basis = [MOD.basis_element(i) for i in range(MOD.rank)]
    assert orthogonal_complement_trivial(basis)


def test_complement_not_trivial_when_one_missing():
    basis = [MOD.basis_element(i) for i in range(MOD.rank - 1)]
    assert not orthogonal_complement_trivial(basis)
    assert not orthogonal_complement_trivial([])


def test_complement_cross_check_with_svd():
    # compare against the rank of the stacked span computed by numpy
    rng = np.random.default_rng(42)
    vecs = [random_element(MOD, rng) for _ in range(MOD.rank)]
    stacked = [np.vstack([v.stacked[b] for v in vecs]) for b in range(MOD.shape.num_blocks)]
    full = all(
        np.linalg.matrix_rank(s, tol=1e-10) == s.shape[1] for s in stacked
    )
    assert orthogonal_complement_trivial(vecs) == full


def test_mixed_module_raises():
    other = module_over((2, 3), 2)
    with pytest.raises(ShapeMismatchError):
        inner(MOD.zero_element(), other.zero_element())
