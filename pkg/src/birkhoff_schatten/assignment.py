"""Minimal trace ``min_P tr(A P)``: Hungarian solver and brute-force oracle.

Convention: an *assignment* ``tau`` sends row ``i`` to column ``tau[i]`` and
costs ``sum_i A[i, tau[i]]``. That diagonal sum equals ``tr(A P)`` for the
permutation matrix with ones at ``(tau[i], i)``, i.e. the
:class:`PermutationMatrix` whose vector is ``tau^{-1}``. ``MinTraceResult``
stores both so callers never have to redo the inversion.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionTooLarge
from .matrices import PermutationMatrix, as_square

BRUTEFORCE_MAX_N = 9


@dataclass(frozen=True)
class MinTraceResult:
    value: float
    argmin: PermutationMatrix
    method: str = "hungarian"

    @property
    def assignment(self) -> tuple[int, ...]:
        """Row-to-column assignment realizing the minimal diagonal sum."""
        return self.argmin.inverse().sigma


def _result(A: np.ndarray, tau, method: str) -> MinTraceResult:
    tau = tuple(int(t) for t in tau)
    value = math.fsum(A[i, t] for i, t in enumerate(tau))
    return MinTraceResult(value, PermutationMatrix(tau).inverse(), method)


def min_trace_hungarian(A) -> MinTraceResult:
    """Exact linear assignment by shortest augmenting paths with potentials.

    One row is inserted per phase; each phase runs a Dijkstra-like search over
    columns using reduced costs ``A[i, j] - u[i] - v[j]``. O(n^3) overall.
    """
    A = as_square(A)
    n = A.shape[0]
    inf = math.inf
    # 1-based rows and columns; column 0 is the virtual root of each search.
    cost = np.zeros((n + 1, n + 1))
    cost[1:, 1:] = A
    u = np.zeros(n + 1)
    v = np.zeros(n + 1)
    owner = np.zeros(n + 1, dtype=np.int64)  # owner[j] = row matched to column j
    way = np.zeros(n + 1, dtype=np.int64)
    for i in range(1, n + 1):
        owner[0] = i
        j0 = 0
        minv = np.full(n + 1, inf)
        used = np.zeros(n + 1, dtype=bool)
        while True:
            used[j0] = True
            i0 = owner[j0]
            free = ~used
            free[0] = False
            cur = cost[i0] - u[i0] - v
            better = free & (cur < minv)
            minv[better] = cur[better]
            way[better] = j0
            cand = np.where(free, minv, inf)
            j1 = int(np.argmin(cand))
            delta = cand[j1]
            u[owner[used]] += delta
            v[used] -= delta
            minv[free] -= delta
            j0 = j1
            if owner[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            owner[j0] = owner[j1]
            j0 = j1
    tau = [0] * n
    for j in range(1, n + 1):
        tau[owner[j] - 1] = j - 1
    return _result(A, tau, "hungarian")


def all_permutations(n: int) -> np.ndarray:
    """All permutations of ``range(n)`` as rows, in lexicographic order."""
    return np.array(list(itertools.permutations(range(n))), dtype=np.intp).reshape(-1, n)


def min_trace_bruteforce(A) -> MinTraceResult:
    """Enumerate all ``n!`` diagonals; ties go to the lexicographically first."""
    A = as_square(A)
    n = A.shape[0]
    if n > BRUTEFORCE_MAX_N:
        raise DimensionTooLarge(f"brute force limited to n <= {BRUTEFORCE_MAX_N}, got {n}")
    perms = all_permutations(n)
    sums = A[np.arange(n), perms].sum(axis=1)
    return _result(A, perms[int(np.argmin(sums))], "bruteforce")


def min_trace_from_radius(D) -> float:
    """Recover ``tr_min(D)`` from the Frobenius bounding-ball radius.

    The radius is taken from the exhaustive maximum of ``||D - P||_F`` when
    ``n`` is small enough to enumerate, so the result is independent of the
    assignment solver; larger inputs fall back to the closed form.
    """
    from .geometry import ENUM_MAX_N, bounding_ball_radius_enum, bounding_ball_radius_s2
    from .spectral import frobenius_norm

    A = as_square(D)
    n = A.shape[0]
    if n <= ENUM_MAX_N:
        r = bounding_ball_radius_enum(A, 2).radius
    else:
        r = bounding_ball_radius_s2(A).radius
    return (frobenius_norm(A) ** 2 + n - r * r) / 2.0
