import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from birkhoff_schatten.errors import DimensionMismatch, InvalidExponent, NonConvergence
from birkhoff_schatten.matrices import PermutationMatrix, jn
from birkhoff_schatten import spectral
from birkhoff_schatten.spectral import (
    check_exponent,
    frobenius_norm,
    schatten_from_values,
    schatten_norm,
    singular_values,
    von_neumann_gap,
)

finite = st.floats(-100, 100, allow_nan=False, allow_infinity=False)


def square(n_min=1, n_max=7):
    return st.integers(n_min, n_max).flatmap(lambda n: arrays(np.float64, (n, n), elements=finite))


class TestSingularValues:
    def test_identity(self):
        np.testing.assert_allclose(singular_values(np.eye(5)), np.ones(5), atol=1e-15)

    def test_rank_one(self):
        np.testing.assert_allclose(singular_values([[1.0, 1.0], [1.0, 1.0]]), [2.0, 0.0], atol=1e-15)

    def test_alpha_line_spectrum(self):
        A = 3.0 * jn(4).matrix - np.eye(4)
        np.testing.assert_allclose(singular_values(A), [2.0, 1.0, 1.0, 1.0], atol=1e-14)

    def test_one_by_one(self):
        np.testing.assert_array_equal(singular_values([[-3.0]]), [3.0])

    def test_zero_matrix(self):
        np.testing.assert_array_equal(singular_values(np.zeros((4, 4))), np.zeros(4))

    def test_stack_shape(self, rng):
        sv = singular_values(rng.normal(size=(10, 4, 4)))
        assert sv.shape == (10, 4)

    def test_against_lapack(self, rng):
        for n in range(1, 13):
            A = rng.normal(size=(30, n, n))
            ref = np.linalg.svd(A, compute_uv=False)
            got = singular_values(A)
            assert np.all(np.abs(got - ref) <= 1e-10 * ref + 1e-12)

    def test_graded_matrix_relative_accuracy(self):
        # singular values spanning many orders of magnitude
        rng = np.random.default_rng(5)
        U, _ = np.linalg.qr(rng.normal(size=(6, 6)))
        V, _ = np.linalg.qr(rng.normal(size=(6, 6)))
        s = np.array([1.0, 1e-2, 1e-4, 1e-6, 1e-8, 0.0])
        got = singular_values(U @ np.diag(s) @ V.T)
        assert np.all(np.abs(got - s) <= 1e-10 * s + 1e-12)

    @pytest.mark.parametrize("scale", [1e-300, 1e-150, 1e150, 1e300])
    def test_extreme_scales(self, rng, scale):
        A = rng.normal(size=(5, 5))
        A[:, 1:] = A[:, :1]
        A *= scale
        ref = np.linalg.svd(A, compute_uv=False)
        np.testing.assert_allclose(singular_values(A), ref, rtol=0, atol=1e-13 * ref[0])

    def test_nonincreasing_and_nonnegative(self, rng):
        sv = singular_values(rng.normal(size=(50, 6, 6)))
        assert np.all(sv >= 0)
        assert np.all(np.diff(sv, axis=1) <= 0)

    def test_iteration_cap(self, monkeypatch, rng):
        monkeypatch.setattr(spectral, "MAX_SWEEPS", 1)
        with pytest.raises(NonConvergence):
            singular_values(rng.normal(size=(6, 6)))

    def test_rejects_non_square(self):
        with pytest.raises(DimensionMismatch):
            singular_values(np.ones((2, 3, 4)))


def test_top_singular_value_of_doubly_stochastic():
    from birkhoff_schatten.birkhoff import sample_convex, sample_sinkhorn

    for seed in range(100):
        n = 2 + seed % 9
        D = (sample_sinkhorn(n, seed) if seed % 2 else sample_convex(n, n, seed)).matrix
        assert abs(singular_values(D)[0] - 1.0) <= 1e-9


class TestExponent:
    @pytest.mark.parametrize("p", [0.5, -1, math.inf, math.nan, "x"])
    def test_rejects(self, p):
        with pytest.raises(InvalidExponent):
            check_exponent(p)

    def test_accepts(self):
        assert check_exponent(1) == 1.0
        assert check_exponent("2.5") == 2.5


class TestSchattenNorm:
    def test_jn_is_one(self):
        assert schatten_norm(jn(3).matrix, 2) == pytest.approx(1.0, abs=1e-12)

    def test_permutation(self):
        P = PermutationMatrix((3, 0, 4, 1, 2)).dense()
        assert schatten_norm(P, 3) == pytest.approx(5 ** (1 / 3), abs=1e-12)

    def test_rank_one_nuclear(self):
        assert schatten_norm([[1.0, 1.0], [1.0, 1.0]], 1) == pytest.approx(2.0, abs=1e-14)

    def test_zero(self):
        assert schatten_norm(np.zeros((3, 3)), 1.7) == 0.0

    def test_general_p_against_direct_sum(self, rng):
        A = rng.normal(size=(5, 5))
        s = np.linalg.svd(A, compute_uv=False)
        for p in (1.0, 1.3, 2.0, 2.5, 7.0):
            assert schatten_norm(A, p) == pytest.approx(np.sum(s**p) ** (1 / p), rel=1e-12)

    def test_large_p_no_overflow(self):
        assert schatten_from_values([1e200, 1e200], 4.0) == pytest.approx(1e200 * 2**0.25, rel=1e-12)

    def test_p2_matches_frobenius(self, rng):
        for n in range(1, 10):
            A = rng.normal(scale=10, size=(n, n))
            f = frobenius_norm(A)
            assert abs(schatten_norm(A, 2) - f) <= 1e-10 * (1 + f)


class TestFrobenius:
    def test_identity(self):
        assert frobenius_norm(np.eye(7)) == pytest.approx(math.sqrt(7), abs=1e-15)

    def test_jn(self):
        assert frobenius_norm(jn(6).matrix) == pytest.approx(1.0, abs=1e-15)

    def test_pythagoras(self):
        assert frobenius_norm([[3.0, 4.0], [0.0, 0.0]]) == 5.0


class TestVonNeumannGap:
    def test_equality_case(self):
        assert von_neumann_gap(np.eye(3), np.eye(3)) == pytest.approx(0.0, abs=1e-14)

    def test_alpha_line_pair(self):
        n, alpha = 4, 2.0
        C = alpha * np.full((n, n), 1.0 / n) - np.eye(n)
        # dense oracle for both sides
        expected = np.dot(np.linalg.svd(np.eye(n), compute_uv=False), np.linalg.svd(C, compute_uv=False)) - abs(
            np.trace(C)
        )
        assert expected == pytest.approx(2.0, abs=1e-12)
        assert von_neumann_gap(np.eye(n), C) == pytest.approx(2.0, abs=1e-12)

    def test_random_nonnegative(self, rng):
        for _ in range(200):
            B, C = rng.normal(size=(2, 5, 5))
            ref = np.dot(np.linalg.svd(B, compute_uv=False), np.linalg.svd(C, compute_uv=False)) - abs(
                np.trace(B @ C)
            )
            gap = von_neumann_gap(B, C)
            assert gap >= -1e-9
            assert gap == pytest.approx(ref, abs=1e-10)

    def test_shared_eigenvectors(self, rng):
        Q, _ = np.linalg.qr(rng.normal(size=(5, 5)))
        # sort both spectra the same way so the trace pairs largest with largest
        eb, ec = np.sort(rng.uniform(0, 3, 5)), np.sort(rng.uniform(0, 3, 5))
        B, C = Q @ np.diag(eb) @ Q.T, Q @ np.diag(ec) @ Q.T
        assert abs(von_neumann_gap(B, C)) <= 1e-9

    def test_mismatch(self):
        with pytest.raises(DimensionMismatch):
            von_neumann_gap(np.eye(2), np.eye(3))


@settings(max_examples=150, deadline=None)
@given(square(), st.floats(1.0, 10.0), st.floats(1.0, 10.0))
def test_monotone_in_p(A, p, q):
    p, q = min(p, q), max(p, q)
    sv = singular_values(A)
    s1, sp, sq = (schatten_from_values(sv, x) for x in (1.0, p, q))
    scale = 1e-9 * (1 + s1)
    assert s1 >= sp - scale
    assert sp >= sq - scale


@settings(max_examples=100, deadline=None)
@given(square(2, 6), st.randoms(use_true_random=False), st.sampled_from([1.0, 1.5, 2.0, 3.0]))
def test_permutation_invariance(A, rnd, p):
    n = A.shape[0]
    P = PermutationMatrix(tuple(rnd.sample(range(n), n))).dense()
    Q = PermutationMatrix(tuple(rnd.sample(range(n), n))).dense()
    a = schatten_norm(A, p)
    assert abs(schatten_norm(P @ A @ Q, p) - a) <= 1e-9 * (1 + a)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.tuples(*[arrays(np.float64, (n, n), elements=st.floats(-5, 5))] * 2)),
       st.sampled_from([1.0, 1.5, 2.0, 3.0, 5.0]))
def test_submultiplicative(pair, p):
    A, B = pair
    a, b = schatten_norm(A, p), schatten_norm(B, p)
    assert schatten_norm(A @ B, p) <= a * b + 1e-9 * (1 + a * b)
