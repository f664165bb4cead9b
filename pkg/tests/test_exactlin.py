"""Exact rational linear algebra kernel."""
from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from ckforms.exactlin import (
    CoordinateSolver,
    Subspace,
    fmat,
    fvec,
    intersect,
    is_rational_square,
    kernel,
    primitive_vector,
    rank,
    rank_at_least_modp,
    rational_sqrt,
    rref,
    signature,
)


def test_rank_frozen_cases():
    assert rank(fmat([[1, 2], [2, 4]])) == 1
    assert rank(fmat(np.eye(3))) == 3
    assert rank(fmat([[0, 0], [0, 0]])) == 0
    assert rank(fmat([[Fraction(1, 3), 1], [1, 3]])) == 1


def test_rank_agrees_with_numpy_on_random_integer_matrices():
    rng = np.random.default_rng(7)
    for _ in range(20):
        m = rng.integers(-4, 5, size=(7, 9))
        expected = np.linalg.matrix_rank(m.astype(float))
        assert rank(fmat(m)) == expected


def test_rref_is_idempotent_and_preserves_rank():
    rng = np.random.default_rng(3)
    m = fmat(rng.integers(-3, 4, size=(5, 6)))
    r1, piv1 = rref(m)
    r2, piv2 = rref(r1)
    assert piv1 == piv2
    assert rank(r1) == rank(m) == len(piv1)
    assert np.array_equal(r1, r2)


def test_kernel_vectors_annihilate_and_span_the_nullspace():
    m = fmat([[1, 1, 0], [2, 2, 0]])
    ker = kernel(m)
    assert len(ker) == 2
    for v in ker:
        prod = m @ v
        assert all(x == 0 for x in prod)


def test_intersection_of_coordinate_planes_is_the_shared_axis():
    xy = Subspace.from_rows([[1, 0, 0], [0, 1, 0]])
    yz = Subspace.from_rows([[0, 1, 0], [0, 0, 1]])
    meet = intersect(xy, yz)
    assert meet.dim == 1
    v = primitive_vector(meet.basis[0])
    assert list(v) in ([0, 1, 0], [0, -1, 0])


def test_intersection_of_complementary_planes_is_zero():
    a = Subspace.from_rows([[1, 0, 0, 0], [0, 1, 0, 0]])
    b = Subspace.from_rows([[0, 0, 1, 0], [0, 0, 0, 1]])
    assert intersect(a, b).dim == 0


def test_signature_frozen_cases():
    assert signature(fmat([[1, 0, 0], [0, -1, 0], [0, 0, 0]])) == (1, 1, 1)
    assert signature(fmat(np.eye(4))) == (4, 0, 0)
    assert signature(fmat([[0, 1], [1, 0]])) == (1, 1, 0)


def test_signature_is_invariant_under_congruence():
    rng = np.random.default_rng(11)
    d = fmat(np.diag([2, 2, -3, -3, 0]))
    found = 0
    while found < 5:
        s = rng.integers(-3, 4, size=(5, 5))
        if abs(round(np.linalg.det(s.astype(float)))) < 1:
            continue
        s = fmat(s)
        assert signature(s.T @ d @ s) == (2, 2, 1)
        found += 1


def test_modular_rank_certificate_matches_exact_rank():
    rng = np.random.default_rng(19)
    m = fmat(rng.integers(-9, 10, size=(40, 40)))
    r = rank(m)
    assert rank_at_least_modp(m, r)
    assert not rank_at_least_modp(fmat([[1, 2], [2, 4]]), 2)


def test_coordinate_solver_round_trip():
    basis = fmat([[1, 0, 1, 0], [0, 2, 0, 0], [0, 0, 0, 3]])
    sol = CoordinateSolver(basis)
    target = fvec([2, 4, 2, -3])
    x = sol.coords(target)
    recon = x @ basis
    assert all(a == b for a, b in zip(recon, target))
    assert sol.try_coords(fvec([1, 0, 0, 0])) is None


def test_primitive_vector_clears_denominators_and_content():
    v = primitive_vector(fvec([Fraction(2, 3), Fraction(4, 3)]))
    assert list(v) == [1, 2]
    w = primitive_vector(fvec([-6, -9]))
    assert list(w) in ([2, 3], [-2, -3])


def test_rational_square_detection():
    assert is_rational_square(Fraction(49, 4))
    assert rational_sqrt(Fraction(49, 4)) == Fraction(7, 2)
    assert not is_rational_square(Fraction(2))
    assert rational_sqrt(Fraction(0)) == 0


def test_subspace_containment_and_dims():
    v = Subspace.from_rows([[1, 1], [2, 2]])
    assert v.dim == 1
    assert v.contains(fvec([3, 3]))
    assert not v.contains(fvec([1, 0]))


@given(
    st.lists(
        st.lists(st.integers(-9, 9), min_size=4, max_size=4),
        min_size=1,
        max_size=6,
    )
)
@settings(max_examples=60, deadline=None)
def test_rank_nullity_and_transpose_invariance(rows):
    m = fmat(rows)
    r = rank(m)
    assert r == rank(m.T)
    ker = kernel(m)
    assert r + len(ker) == 4
    for v in ker:
        assert all(x == 0 for x in m @ v)
