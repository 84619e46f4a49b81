import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from birkhoff_schatten.birkhoff import sample_convex, sample_sinkhorn
from birkhoff_schatten.errors import (
    DimensionMismatch,
    NonFiniteInput,
    NotCentralForm,
    NotDoublyStochastic,
)
from birkhoff_schatten.matrices import (
    CentralForm,
    PermutationMatrix,
    as_square,
    central_form_decompose,
    frobenius_inner,
    jn,
    make_doubly_stochastic,
    matrix_product,
    permutation_product,
    trace,
    transpose,
)


def test_identity_is_doubly_stochastic():
    D = make_doubly_stochastic(np.eye(3), 1e-9)
    np.testing.assert_array_equal(D.matrix, np.eye(3))
    assert not D.clamped


def test_all_thirds_equals_jn():
    D = make_doubly_stochastic(np.full((3, 3), 1 / 3), 1e-9)
    np.testing.assert_array_equal(D.matrix, jn(3).matrix)


def test_row_sum_violation_reported():
    with pytest.raises(NotDoublyStochastic) as info:
        make_doubly_stochastic([[0.6, 0.6], [0.4, 0.4]], 1e-9)
    assert info.value.kind == "row"
    assert info.value.deviation == pytest.approx(0.2 - 1e-9, abs=1e-12)


def test_negative_entry_reported():
    with pytest.raises(NotDoublyStochastic) as info:
        make_doubly_stochastic([[1.1, -0.1], [-0.1, 1.1]], 1e-9)
    assert info.value.kind == "entry"


def test_tiny_negatives_are_clamped():
    M = np.array([[1.0 + 1e-12, -1e-12], [-1e-12, 1.0 + 1e-12]])
    D = make_doubly_stochastic(M, 1e-9)
    assert D.clamped
    assert D.matrix[0, 1] == 0.0 and D.matrix[1, 0] == 0.0


def test_doubly_stochastic_is_immutable():
    D = make_doubly_stochastic(np.eye(2))
    with pytest.raises(ValueError):
        D.matrix[0, 0] = 5.0


@pytest.mark.parametrize("bad", [np.ones((2, 3)), np.ones(4), np.zeros((0, 0))])
def test_as_square_rejects_shapes(bad):
    with pytest.raises(DimensionMismatch):
        as_square(bad)


def test_as_square_rejects_nan():
    with pytest.raises(NonFiniteInput):
        as_square([[1.0, np.nan], [0.0, 1.0]])


def test_negative_tol_rejected():
    with pytest.raises(ValueError):
        make_doubly_stochastic(np.eye(2), -1.0)


@pytest.mark.parametrize("n", [1, 2, 4, 7])
def test_jn_entries(n):
    J = jn(n).matrix
    assert J.shape == (n, n)
    assert np.all(J == 1.0 / n)
    np.testing.assert_allclose(J.sum(axis=1), 1.0, atol=1e-15)


def test_frobenius_inner_examples():
    assert frobenius_inner(np.eye(3), np.eye(3)) == 3.0
    A = np.array([[1.0, 2.0], [3.0, 4.0]])
    assert frobenius_inner(A, A) == 30.0
    for n in (2, 3, 5):
        P = PermutationMatrix(tuple(np.roll(np.arange(n), 1))).dense()
        assert frobenius_inner(jn(n).matrix, P) == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(DimensionMismatch):
        frobenius_inner(np.eye(2), np.eye(3))


def test_trace():
    assert trace([[1.0, 5.0], [7.0, 2.0]]) == 3.0


class TestPermutationMatrix:
    def test_rejects_non_bijection(self):
        with pytest.raises(DimensionMismatch):
            PermutationMatrix((0, 0, 1))

    def test_dense_layout(self):
        P = PermutationMatrix((2, 0, 1)).dense()
        np.testing.assert_array_equal(P, [[0, 0, 1], [1, 0, 0], [0, 1, 0]])

    def test_product_matches_dense(self, rng):
        for n in range(1, 8):
            P = PermutationMatrix(tuple(rng.permutation(n)))
            Q = PermutationMatrix(tuple(rng.permutation(n)))
            np.testing.assert_array_equal((P @ Q).dense(), P.dense() @ Q.dense())

    def test_inverse(self, rng):
        P = PermutationMatrix(tuple(rng.permutation(6)))
        assert permutation_product(P, P.inverse()) == PermutationMatrix.identity(6)
        np.testing.assert_array_equal(P.inverse().dense(), P.dense().T)

    def test_from_dense_roundtrip(self):
        P = PermutationMatrix((3, 1, 0, 2))
        assert PermutationMatrix.from_dense(P.dense()) == P

    def test_size_mismatch(self):
        with pytest.raises(DimensionMismatch):
            permutation_product(PermutationMatrix((0, 1)), PermutationMatrix((0, 1, 2)))

    def test_dense_is_doubly_stochastic(self, rng):
        P = PermutationMatrix(tuple(rng.permutation(5)))
        D = make_doubly_stochastic(P.dense(), 0.0)
        assert set(np.unique(D.matrix)) <= {0.0, 1.0}


def test_ds_times_jn_is_jn():
    D = sample_sinkhorn(3, seed=11).matrix
    J = jn(3).matrix
    assert np.linalg.norm(matrix_product(D, J) - J) <= 1e-9
    assert np.linalg.norm(matrix_product(J, D) - J) <= 1e-9


def test_transpose_involution(rng):
    A = rng.normal(size=(4, 4))
    np.testing.assert_array_equal(transpose(transpose(A)), A)


def test_matrix_product_mismatch():
    with pytest.raises(DimensionMismatch):
        matrix_product(np.eye(2), np.eye(3))


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 7), st.integers(0, 2**32 - 1))
def test_closure_under_permutations(n, seed):
    D = sample_sinkhorn(n, seed).matrix
    rng = np.random.default_rng(seed)
    P = PermutationMatrix(tuple(rng.permutation(n))).dense()
    make_doubly_stochastic(P @ D)
    make_doubly_stochastic(D @ P)
    J = jn(n).matrix
    assert np.linalg.norm(D @ J - J) <= 1e-9
    assert np.linalg.norm(J @ D - J) <= 1e-9


class TestCentralForm:
    def test_examples(self):
        J4 = jn(4).matrix
        cf = central_form_decompose(3 * np.eye(4) + 2 * J4)
        assert cf.a == pytest.approx(3.0, abs=1e-12)
        assert cf.b == pytest.approx(2.0, abs=1e-12)
        cf = central_form_decompose(jn(5).matrix)
        assert cf.a == pytest.approx(0.0, abs=1e-12)
        assert cf.b == pytest.approx(1.0, abs=1e-12)

    def test_rejects_non_central(self):
        with pytest.raises(NotCentralForm):
            central_form_decompose([[1.0, 2.0], [3.0, 4.0]])

    def test_rejects_n1(self):
        with pytest.raises(DimensionMismatch):
            central_form_decompose([[1.0]])

    def test_near_central_within_tol(self):
        A = 2.0 * np.eye(3) + 0.5 + np.diag([0.0, 1e-11, -1e-11])
        cf = central_form_decompose(A, 1e-9)
        assert cf.a == pytest.approx(2.0, abs=1e-10)
        assert cf.b == pytest.approx(1.5, abs=1e-10)

    def test_random_recovery(self, rng):
        for _ in range(100):
            a, b = rng.uniform(-10, 10, size=2)
            n = int(rng.integers(2, 9))
            cf = central_form_decompose(CentralForm(a, b).matrix(n), 1e-9)
            assert abs(cf.a - a) <= 1e-10 and abs(cf.b - b) <= 1e-10

    def test_doubly_stochastic_coefficients(self, rng):
        for n in range(2, 7):
            for lam in rng.uniform(0, 1, size=5):
                D = make_doubly_stochastic(lam * np.eye(n) + (1 - lam) * jn(n).matrix)
                cf = central_form_decompose(D.matrix)
                assert cf.a >= -1e-9 and cf.b >= -1e-9
                assert abs(cf.a + cf.b - 1) <= 1e-9


def test_sample_convex_single_term_is_permutation():
    D = sample_convex(4, 1, seed=3).matrix
    PermutationMatrix.from_dense(D)
