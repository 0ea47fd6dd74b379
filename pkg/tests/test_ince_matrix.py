"""Construction of the coupling matrices and characteristic minors."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from incewave.errors import InvalidArgumentError
from incewave.ince_matrix import (Parity, build_even_matrix, build_odd_matrix,
                                  char_poly_eval, char_poly_scaled)


def test_even_n1_a5_entries():
    m = build_even_matrix(1, 5.0)
    assert m.parity is Parity.EVEN
    assert (m.row_index_lo, m.row_index_hi) == (0, 1)
    np.testing.assert_array_equal(m.diag, [0.0, 4.0])
    np.testing.assert_array_equal(m.super, [5.0])
    np.testing.assert_array_equal(m.sub, [5.0])


def test_even_n2_a1_entries():
    m = build_even_matrix(2, 1.0)
    np.testing.assert_array_equal(m.diag, [4.0, 0.0, 4.0, 16.0])
    np.testing.assert_array_equal(m.super, [1.0, 2.0, 3.0])
    np.testing.assert_array_equal(m.sub, [3.0, 2.0, 1.0])


def test_even_n15_a12_shape():
    m = build_even_matrix(15, 12.0)
    assert m.dim == 30
    np.testing.assert_array_equal(m.super, 12.0 * np.arange(1, 30))
    assert m.super[0] == 12.0 and m.super[-1] == 348.0
    assert m.diag[0] == 4 * 14**2
    assert m.diag[14] == 0.0  # r = 0 row
    assert m.diag[-1] == 4 * 15**2


def test_odd_n0_entries():
    m = build_odd_matrix(0, 7.0)
    assert m.dim == 1
    np.testing.assert_array_equal(m.diag, [1.0])
    assert m.super.size == 0 and m.sub.size == 0


def test_odd_n1_a2_entries():
    m = build_odd_matrix(1, 2.0)
    np.testing.assert_array_equal(m.diag, [1.0, 1.0, 9.0])
    np.testing.assert_array_equal(m.super, [2.0, 4.0])
    np.testing.assert_array_equal(m.sub, [4.0, 2.0])


def test_odd_n2_a0_diagonal():
    m = build_odd_matrix(2, 0.0)
    np.testing.assert_array_equal(m.diag, [9.0, 1.0, 1.0, 9.0, 25.0])
    np.testing.assert_array_equal(m.super, np.zeros(4))


def test_invalid_arguments():
    with pytest.raises(InvalidArgumentError):
        build_even_matrix(0, 1.0)
    with pytest.raises(InvalidArgumentError):
        build_even_matrix(-3, 1.0)
    with pytest.raises(InvalidArgumentError):
        build_odd_matrix(-1, 1.0)
    with pytest.raises(InvalidArgumentError):
        build_even_matrix(2, -0.5)
    with pytest.raises(InvalidArgumentError):
        build_odd_matrix(2, float("nan"))
    with pytest.raises(InvalidArgumentError):
        build_even_matrix(2, float("inf"))


@given(n=st.integers(1, 12),
       a=st.one_of(st.just(0.0), st.floats(1e-6, 50.0, allow_nan=False)))
@settings(max_examples=60, deadline=None)
def test_even_invariants(n, a):
    m = build_even_matrix(n, a)
    assert m.dim == 2 * n
    assert m.diag.size == m.dim
    assert m.super.size == m.dim - 1 and m.sub.size == m.dim - 1
    # mirror symmetry of the coupling lists
    np.testing.assert_array_equal(m.super[::-1], m.sub)
    if a > 0:
        assert np.all(m.offdiag_products() > 0)
        assert m.super[0] == a and m.sub[-1] == a
    # the series terminates below r = -n + 1: there is no r = -n row
    assert m.row_index_lo == -n + 1


@given(n=st.integers(0, 12),
       a=st.one_of(st.just(0.0), st.floats(1e-6, 50.0, allow_nan=False)))
@settings(max_examples=60, deadline=None)
def test_odd_invariants(n, a):
    m = build_odd_matrix(n, a)
    assert m.dim == 2 * n + 1
    np.testing.assert_array_equal(m.super[::-1], m.sub)
    np.testing.assert_array_equal(m.diag, (2.0 * m.row_indices + 1) ** 2)
    if a > 0 and n > 0:
        assert np.all(m.offdiag_products() > 0)


def test_char_poly_1x1_root():
    m = build_odd_matrix(0, 3.0)
    assert char_poly_eval(m, 1.0) == 0.0


def test_char_poly_2x2_hand_value():
    m = build_even_matrix(1, 3.0)
    assert char_poly_eval(m, 0.0) == -9.0


@pytest.mark.parametrize("a", [1.0, 12.0])
def test_char_poly_quadratic_roots(a):
    m = build_even_matrix(1, a)
    root = 2.0 + math.sqrt(4.0 + a * a)
    assert abs(char_poly_eval(m, root)) < 1e-10


def test_char_poly_matches_exact_rational():
    # the scaled recurrence agrees with exact Fraction arithmetic
    for n, a, eta in [(2, 3, 5), (3, 2, -7), (4, 1, 17), (2, 12, 0)]:
        m = build_even_matrix(n, float(a))
        pm2, pm1 = Fraction(1), Fraction(int(m.diag[0]) - eta)
        for j in range(1, m.dim):
            p = (Fraction(int(m.diag[j]) - eta)) * pm1 \
                - Fraction(int(m.super[j - 1])) * Fraction(int(m.sub[j - 1])) * pm2
            pm2, pm1 = pm1, p
        assert char_poly_eval(m, float(eta)) == pytest.approx(float(pm1), rel=1e-12)


def test_char_poly_matches_dense_determinant():
    rng_etas = [0.0, 1.5, -3.25, 40.0]
    m = build_odd_matrix(3, 2.5)
    for eta in rng_etas:
        dense = m.to_dense() - eta * np.eye(m.dim)
        assert char_poly_eval(m, eta) == pytest.approx(np.linalg.det(dense), rel=1e-10)


def test_char_poly_sign_alternates_between_eigenvalues():
    from incewave.eigensolver import eigen_decompose

    for builder, n in [(build_even_matrix, 3), (build_even_matrix, 6), (build_odd_matrix, 5)]:
        m = builder(n, 4.0)
        vals = eigen_decompose(m).eigenvalues  # descending
        mids = 0.5 * (vals[:-1] + vals[1:])
        signs = [math.copysign(1.0, char_poly_eval(m, x)) for x in mids]
        for s1, s2 in zip(signs, signs[1:]):
            assert s1 == -s2


def test_char_poly_scaled_no_overflow():
    # dimension 80 with eta ~ 1e4 would overflow a raw minor recurrence
    m = build_even_matrix(40, 12.0)
    mant, exp2 = char_poly_scaled(m, 7000.0)
    assert math.isfinite(mant) and mant != 0.0
    assert exp2 > 0


def test_rows_immutable():
    m = build_even_matrix(2, 1.0)
    with pytest.raises(ValueError):
        m.diag[0] = 99.0
