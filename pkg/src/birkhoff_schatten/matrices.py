"""Dense square matrices, doubly stochastic and permutation types.

Square matrices are plain ``float64`` numpy arrays; :func:`as_square` is the
single validation gate. Doubly stochastic and permutation matrices get small
immutable wrappers because their invariants are worth carrying around.

Permutations are 0-indexed. A :class:`PermutationMatrix` with vector ``sigma``
has its dense form ``P[i, sigma[i]] = 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    CommutationFailure,
    DimensionMismatch,
    NonFiniteInput,
    NotCentralForm,
    NotDoublyStochastic,
)

DEFAULT_TOL = 1e-9


def as_square(A) -> np.ndarray:
    """Return ``A`` as a fresh read-only ``(n, n)`` float64 array.

    Raises :class:`DimensionMismatch` for anything that is not a non-empty
    square 2-D array and :class:`NonFiniteInput` for NaN or infinite entries.
    """
    if isinstance(A, (DoublyStochasticMatrix, PermutationMatrix)):
        A = A.dense()
    arr = np.array(A, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise DimensionMismatch(f"expected a non-empty square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteInput("matrix contains NaN or infinite entries")
    arr.setflags(write=False)
    return arr


def _same_size(A: np.ndarray, B: np.ndarray) -> None:
    if A.shape != B.shape:
        raise DimensionMismatch(f"dimension mismatch: {A.shape} vs {B.shape}")


def identity(n: int) -> np.ndarray:
    return as_square(np.eye(n))


@dataclass(frozen=True)
class PermutationMatrix:
    """A permutation matrix stored as its permutation vector."""

    sigma: tuple[int, ...]

    def __post_init__(self):
        sigma = tuple(int(s) for s in self.sigma)
        n = len(sigma)
        if n < 1 or sorted(sigma) != list(range(n)):
            raise DimensionMismatch(f"not a permutation of 0..{n - 1}: {sigma}")
        object.__setattr__(self, "sigma", sigma)

    @classmethod
    def identity(cls, n: int) -> PermutationMatrix:
        return cls(tuple(range(n)))

    @classmethod
    def from_dense(cls, P, tol: float = 0.0) -> PermutationMatrix:
        arr = as_square(P)
        if np.any(np.abs(arr * (1.0 - arr)) > tol) or np.any(np.abs(arr.sum(axis=1) - 1) > tol):
            raise DimensionMismatch("matrix is not a permutation matrix")
        return cls(tuple(int(j) for j in np.argmax(arr, axis=1)))

    @property
    def n(self) -> int:
        return len(self.sigma)

    def dense(self) -> np.ndarray:
        out = np.zeros((self.n, self.n))
        out[np.arange(self.n), self.sigma] = 1.0
        return out

    def inverse(self) -> PermutationMatrix:
        inv = [0] * self.n
        for i, s in enumerate(self.sigma):
            inv[s] = i
        return PermutationMatrix(tuple(inv))

    def transpose(self) -> PermutationMatrix:
        return self.inverse()

    def __matmul__(self, other):
        if isinstance(other, PermutationMatrix):
            return permutation_product(self, other)
        return NotImplemented

    def __array__(self, dtype=None, copy=None):
        return self.dense() if dtype is None else self.dense().astype(dtype)


def permutation_product(P: PermutationMatrix, Q: PermutationMatrix) -> PermutationMatrix:
    """Product ``P @ Q`` computed on the permutation vectors."""
    if P.n != Q.n:
        raise DimensionMismatch(f"dimension mismatch: {P.n} vs {Q.n}")
    # (PQ)[i, j] = Q[sigma_P[i], j]
    return PermutationMatrix(tuple(Q.sigma[s] for s in P.sigma))


@dataclass(frozen=True, eq=False)
class DoublyStochasticMatrix:
    """A validated element of the Birkhoff polytope.

    Build it with :func:`make_doubly_stochastic`; ``matrix`` is read-only.
    ``clamped`` records whether any slightly negative entry was set to zero.
    """

    matrix: np.ndarray
    tol: float = DEFAULT_TOL
    clamped: bool = field(default=False)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def dense(self) -> np.ndarray:
        return np.array(self.matrix)

    def __array__(self, dtype=None, copy=None):
        return self.dense() if dtype is None else self.dense().astype(dtype)


def _exact_sums(arr: np.ndarray, axis: int) -> np.ndarray:
    lines = arr if axis == 1 else arr.T
    return np.array([math.fsum(line) for line in lines])


def make_doubly_stochastic(M, tol: float = DEFAULT_TOL) -> DoublyStochasticMatrix:
    """Validate ``M`` as doubly stochastic within ``tol`` and wrap it.

    Entries in ``[-tol, tol]`` are clamped to exactly 0. Row and column sums
    are accumulated with :func:`math.fsum`.
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    arr = np.array(as_square(M))
    worst = ("entry", None, 0.0)
    low = arr.min()
    if low < -tol:
        idx = np.unravel_index(np.argmin(arr), arr.shape)
        worst = ("entry", (int(idx[0]), int(idx[1])), float(-low - tol))
    for kind, axis in (("row", 1), ("column", 0)):
        dev = np.abs(_exact_sums(arr, axis) - 1.0)
        i = int(np.argmax(dev))
        if dev[i] > tol and dev[i] - tol > worst[2]:
            worst = (kind, i, float(dev[i] - tol))
    if worst[1] is not None:
        kind, index, deviation = worst
        raise NotDoublyStochastic(
            f"not doubly stochastic: worst {kind} {index} exceeds tolerance {tol:g} by {deviation:.3e}",
            kind=kind,
            index=index,
            deviation=deviation,
        )
    small = np.abs(arr) <= tol
    clamped = bool(np.any(small & (arr != 0.0)))
    arr[small] = 0.0
    arr.setflags(write=False)
    return DoublyStochasticMatrix(arr, tol=tol, clamped=clamped)


def jn(n: int) -> DoublyStochasticMatrix:
    """The barycenter ``J_n`` with every entry ``1/n``."""
    if n < 1:
        raise ValueError("n must be positive")
    arr = np.full((n, n), 1.0 / n)
    arr.setflags(write=False)
    return DoublyStochasticMatrix(arr, tol=DEFAULT_TOL)


def frobenius_inner(A, B) -> float:
    A, B = as_square(A), as_square(B)
    _same_size(A, B)
    return math.fsum((A * B).ravel())


def trace(A) -> float:
    return math.fsum(np.diag(as_square(A)))


def matrix_product(A, B) -> np.ndarray:
    A, B = as_square(A), as_square(B)
    _same_size(A, B)
    return as_square(A @ B)


def transpose(A) -> np.ndarray:
    return as_square(as_square(A).T)


@dataclass(frozen=True)
class CentralForm:
    """Coefficients of ``A = a*I + b*J``."""

    a: float
    b: float

    def matrix(self, n: int) -> np.ndarray:
        return as_square(self.a * np.eye(n) + self.b * np.full((n, n), 1.0 / n))


def _generators(n: int) -> Sequence[PermutationMatrix]:
    swap = list(range(n))
    swap[0], swap[1] = 1, 0
    cycle = [(i + 1) % n for i in range(n)]
    return PermutationMatrix(tuple(swap)), PermutationMatrix(tuple(cycle))


def central_form_decompose(A, tol: float = DEFAULT_TOL) -> CentralForm:
    """Write a permutation-commuting matrix as ``a*I + b*J``.

    The diagonal and off-diagonal entries must each agree within ``tol``;
    their means give ``a = diag - offdiag`` and ``b = n * offdiag``. The matrix
    is also checked to commute with the transposition (0 1) and the n-cycle,
    which generate the symmetric group.
    """
    A = as_square(A)
    n = A.shape[0]
    if n < 2:
        raise DimensionMismatch("central form needs n >= 2")
    diag = np.diag(A)
    off = A[~np.eye(n, dtype=bool)]
    if np.ptp(diag) > tol or np.ptp(off) > tol:
        raise NotCentralForm(
            f"diagonal spread {np.ptp(diag):.3e} / off-diagonal spread {np.ptp(off):.3e} exceed {tol:g}"
        )
    for P in _generators(n):
        Pd = P.dense()
        gap = np.max(np.abs(A @ Pd - Pd @ A))
        if gap > tol:
            raise CommutationFailure(f"A does not commute with {P.sigma}: gap {gap:.3e}")
    d = math.fsum(diag) / n
    o = math.fsum(off) / off.size
    return CentralForm(a=d - o, b=n * o)
