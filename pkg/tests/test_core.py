"""Matrix representation, constructors and the sign involution."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tridiag.core import (
    DiagonalShape,
    PerturbationParams,
    TridiagonalMatrix,
    apply_sign_involution,
    diagonal_shape,
    kac_principal,
    leading_principal,
    make_alternating,
    make_two_periodic,
    make_zero_diag,
    materialize_dense,
    nilpotent_example,
    sign_pattern,
    strip_diagonal,
    sylvester_kac,
)
from tridiag.errors import (
    LengthMismatch,
    NonFiniteEntry,
    NonZeroDiagonalInput,
    ZeroOffDiagonal,
)

offdiagonal = st.complex_numbers(min_magnitude=0.1, max_magnitude=2, allow_nan=False, allow_infinity=False)
param = st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False)


@st.composite
def zero_diag_matrices(draw, max_n=10):
    n = draw(st.integers(2, max_n))
    sub = draw(st.lists(offdiagonal, min_size=n - 1, max_size=n - 1))
    sup = draw(st.lists(offdiagonal, min_size=n - 1, max_size=n - 1))
    return make_zero_diag(sub, sup)


def test_make_zero_diag():
    J = make_zero_diag([1, 2], [3, 4j])
    assert J.n == 3
    assert J.irreducible
    assert J.has_zero_diagonal()
    np.testing.assert_array_equal(J.products, [3, 8j])


def test_make_zero_diag_rejects_bad_input():
    with pytest.raises(LengthMismatch):
        make_zero_diag([1, 2], [1])
    with pytest.raises(LengthMismatch):
        make_zero_diag([], [])
    with pytest.raises(ZeroOffDiagonal):
        make_zero_diag([1, 0], [1, 1])
    with pytest.raises(NonFiniteEntry):
        make_zero_diag([1, np.nan], [1, 1])


def test_reducible_matrix_is_flagged():
    T = TridiagonalMatrix(sub=[1, 0], diag=[0, 0, 0], sup=[1, 1])
    assert not T.irreducible


def test_matrix_is_immutable():
    J = nilpotent_example()
    with pytest.raises(ValueError):
        J.sub[0] = 5


def test_sign_pattern():
    np.testing.assert_array_equal(sign_pattern(5), [1, -1, 1, -1, 1])


def test_alternating_and_two_periodic_diagonals():
    J = make_zero_diag([1, 1, 1, 1], [1, 1, 1, 1])
    A = make_alternating(J, 2)
    np.testing.assert_array_equal(A.diag, [2, -2, 2, -2, 2])
    B = make_two_periodic(J, PerturbationParams(1, 2j))
    np.testing.assert_array_equal(B.diag, [1, 2j, 1, 2j, 1])
    np.testing.assert_array_equal(B.sub, J.sub)
    with pytest.raises(NonZeroDiagonalInput):
        make_alternating(A, 1)


def test_perturbation_params():
    p = PerturbationParams(3, 1)
    assert p.half_difference == 1
    assert p.half_sum == 2
    with pytest.raises(NonFiniteEntry):
        PerturbationParams(np.inf, 0)


def test_sylvester_kac():
    K = sylvester_kac(3)
    assert K.n == 4
    np.testing.assert_array_equal(K.sup, [1, 2, 3])
    np.testing.assert_array_equal(K.sub, [3, 2, 1])
    assert K.has_zero_diagonal()
    with pytest.raises(LengthMismatch):
        sylvester_kac(0)


def test_kac_principal():
    P = kac_principal(3)
    assert P.n == 3
    np.testing.assert_array_equal(P.sup, [1, 2])
    np.testing.assert_array_equal(P.sub, [3, 2])


def test_leading_principal_bounds():
    J = nilpotent_example()
    assert leading_principal(J, 1).n == 1
    with pytest.raises(LengthMismatch):
        leading_principal(J, 6)


def test_diagonal_shape():
    J = nilpotent_example()
    assert diagonal_shape(J)[0] is DiagonalShape.ZERO

    shape, params = diagonal_shape(make_alternating(J, 1 + 1j))
    assert shape is DiagonalShape.ALTERNATING
    assert params.x == 1 + 1j

    shape, params = diagonal_shape(make_two_periodic(J, PerturbationParams(1, 2)))
    assert shape is DiagonalShape.TWO_PERIODIC
    assert (params.x, params.y) == (1, 2)

    other = J.with_diagonal([1, 2, 3, 4, 5])
    assert diagonal_shape(other) == (DiagonalShape.OTHER, None)


def test_dense_round_trip():
    J = make_zero_diag([1, 2j], [3, -1])
    M = materialize_dense(J)
    np.testing.assert_array_equal(M, [[0, 3, 0], [1, 0, -1], [0, 2j, 0]])
    back = TridiagonalMatrix.from_dense(M)
    np.testing.assert_array_equal(back.sub, J.sub)
    np.testing.assert_array_equal(back.sup, J.sup)
    with pytest.raises(LengthMismatch):
        TridiagonalMatrix.from_dense(np.ones((3, 3)))


def test_strip_diagonal():
    J = nilpotent_example()
    B = make_two_periodic(J, PerturbationParams(1, 2))
    assert strip_diagonal(B).has_zero_diagonal()
    np.testing.assert_array_equal(strip_diagonal(B).sup, J.sup)


def test_frobenius():
    J = make_zero_diag([3], [4])
    assert J.frobenius == 5.0


def test_sign_involution_on_columns():
    V = np.ones((3, 2))
    np.testing.assert_array_equal(apply_sign_involution(V), [[1, 1], [-1, -1], [1, 1]])
    with pytest.raises(LengthMismatch):
        apply_sign_involution([])


@settings(max_examples=50, deadline=None)
@given(st.lists(param, min_size=1, max_size=12))
def test_sign_involution_is_an_involution(v):
    np.testing.assert_array_equal(apply_sign_involution(apply_sign_involution(v)), np.asarray(v, dtype=complex))


@settings(max_examples=50, deadline=None)
@given(zero_diag_matrices())
def test_zero_diagonal_anticommutes_with_signs(J):
    M = materialize_dense(J)
    e = sign_pattern(J.n)
    assert np.max(np.abs(M * e[None, :] + e[:, None] * M)) == 0


@settings(max_examples=50, deadline=None)
@given(zero_diag_matrices(), param)
def test_sign_conjugation_negates_alternating_parameter(J, x):
    # E A(x) E = -A(-x)
    A = materialize_dense(make_alternating(J, x))
    e = sign_pattern(J.n)
    np.testing.assert_array_equal(e[:, None] * A * e[None, :], -materialize_dense(make_alternating(J, -x)))
