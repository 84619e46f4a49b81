"""Constructive operations on the Birkhoff polytope.

Samplers draw from numpy's ``PCG64`` bit generator (``numpy.random.default_rng``)
seeded explicitly; there is no module-level random state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .assignment import all_permutations
from .errors import DimensionTooLarge, MatchingNotFound, NonConvergence
from .matrices import (
    DEFAULT_TOL,
    DoublyStochasticMatrix,
    PermutationMatrix,
    as_square,
    make_doubly_stochastic,
)

SUPPORT_EPS = 1e-12
RESIDUAL_TOL = 1e-9
AVERAGE_MAX_N = 7


@dataclass(frozen=True)
class BirkhoffDecomposition:
    terms: tuple[tuple[float, PermutationMatrix], ...]

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for w, _ in self.terms])

    def reconstruct(self) -> np.ndarray:
        n = self.terms[0][1].n
        out = np.zeros((n, n))
        for w, P in self.terms:
            out[np.arange(n), P.sigma] += w
        return out

    def __len__(self):
        return len(self.terms)


def perfect_matching(support: np.ndarray) -> list[int] | None:
    """Kuhn's augmenting-path matching on a boolean ``(n, n)`` support.

    Returns ``match`` with ``match[row] = column`` or ``None`` if no perfect
    matching exists.
    """
    n = support.shape[0]
    adj = [np.flatnonzero(support[i]).tolist() for i in range(n)]
    col_owner = [-1] * n

    def augment(row: int, seen: list[bool]) -> bool:
        for col in adj[row]:
            if seen[col]:
                continue
            seen[col] = True
            if col_owner[col] == -1 or augment(col_owner[col], seen):
                col_owner[col] = row
                return True
        return False

    for i in range(n):
        if not augment(i, [False] * n):
            return None
    match = [0] * n
    for c, r in enumerate(col_owner):
        match[r] = c
    return match


def birkhoff_decompose(D) -> BirkhoffDecomposition:
    """Greedy Birkhoff peeling.

    Each step finds a perfect matching on the entries above ``SUPPORT_EPS`` and
    subtracts the smallest matched entry times that permutation, which zeroes
    at least one entry. Stops when the residual Frobenius norm drops to
    ``RESIDUAL_TOL``.
    """
    R = np.array(as_square(D))
    n = R.shape[0]
    rows = np.arange(n)
    terms = []
    while math.sqrt(math.fsum((R * R).ravel())) > RESIDUAL_TOL:
        R[R <= SUPPORT_EPS] = 0.0
        match = perfect_matching(R > 0.0)
        if match is None:
            raise MatchingNotFound("support has no perfect matching; input is not doubly stochastic")
        w = float(R[rows, match].min())
        R[rows, match] -= w
        terms.append((w, PermutationMatrix(tuple(match))))
    return BirkhoffDecomposition(tuple(terms))


def average_all_permutations(n: int) -> np.ndarray:
    """Uniform average of all ``n!`` permutation matrices, by enumeration."""
    if n > AVERAGE_MAX_N:
        raise DimensionTooLarge(f"enumeration limited to n <= {AVERAGE_MAX_N}, got {n}")
    counts = np.zeros((n, n), dtype=np.int64)
    perms = all_permutations(n)
    for sigma in perms:
        counts[np.arange(n), sigma] += 1
    return as_square(counts / len(perms))


def sample_convex(n: int, k: int, seed: int) -> DoublyStochasticMatrix:
    """Convex combination of ``k`` uniform random permutations, Dirichlet(1) weights."""
    if k < 1:
        raise ValueError("k must be >= 1")
    rng = np.random.default_rng(seed)
    perms = [rng.permutation(n) for _ in range(k)]
    weights = rng.dirichlet(np.ones(k))
    M = np.zeros((n, n))
    for w, sigma in zip(weights, perms):
        M[np.arange(n), sigma] += w
    return make_doubly_stochastic(M, DEFAULT_TOL)


def sample_sinkhorn(n: int, seed: int, max_iters: int = 10_000, tol: float = 1e-12) -> DoublyStochasticMatrix:
    """Sinkhorn-Knopp balancing of a random matrix with entries in (0.1, 1)."""
    if max_iters < 1 or tol <= 0:
        raise ValueError("need max_iters >= 1 and tol > 0")
    rng = np.random.default_rng(seed)
    M = rng.uniform(0.1, 1.0, size=(n, n))
    for _ in range(max_iters):
        M /= M.sum(axis=1, keepdims=True)
        M /= M.sum(axis=0, keepdims=True)
        if np.max(np.abs(M.sum(axis=1) - 1.0)) <= tol:
            return make_doubly_stochastic(M, max(tol, DEFAULT_TOL))
    raise NonConvergence(f"Sinkhorn balancing did not reach {tol:g} in {max_iters} iterations")


def khoury_projection(B) -> np.ndarray:
    """``(I - J) B (I - J) + J``: closest matrix with unit row/column sums."""
    B = as_square(B)
    n = B.shape[0]
    J = np.full((n, n), 1.0 / n)
    W = np.eye(n) - J
    return as_square(W @ B @ W + J)
