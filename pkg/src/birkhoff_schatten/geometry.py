"""Bounding balls and the Chebyshev center of the Birkhoff polytope.

A norm is convex, so ``max_{D in Omega_n} ||A - D||`` is attained at a
permutation matrix; every radius here is therefore a maximum over
permutations, computed either in closed form (Frobenius) or by enumeration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .assignment import all_permutations, min_trace_hungarian
from .errors import DimensionTooLarge
from .matrices import DoublyStochasticMatrix, PermutationMatrix, as_square, jn, make_doubly_stochastic
from .spectral import check_exponent, frobenius_norm, schatten_from_values, singular_values

ENUM_MAX_N = 8
PROBE_MAX_N = 6
TIE_RTOL = 1e-12
_CHUNK = 8192


class Method(str, Enum):
    CLOSED_FORM_S2 = "closed_form_s2"
    ENUMERATION = "enumeration"
    SAMPLED_LOWER_BOUND = "sampled_lower_bound"


@dataclass(frozen=True, eq=False)
class BoundingBallReport:
    center: np.ndarray
    p: float
    radius: float
    witness: PermutationMatrix
    method: Method


@dataclass(frozen=True, eq=False)
class ChebyshevReport:
    n: int
    p: float
    radius: float
    center: np.ndarray


class RadiusBounds(tuple):
    """``(lo, hi)`` pair from the Frobenius sandwich, plus the cruder pair."""

    def __new__(cls, lo, hi, crude_lo, crude_hi):
        self = super().__new__(cls, (lo, hi))
        self.lo, self.hi = lo, hi
        self.crude_lo, self.crude_hi = crude_lo, crude_hi
        return self


@dataclass(frozen=True)
class EquidistanceReport:
    max_dev: float
    distances: tuple[float, ...]
    common_value: float
    passed: bool


@dataclass(frozen=True)
class UniquenessReport:
    n: int
    p: float
    trials: int
    chebyshev_radius: float
    min_margin: float
    falsifiers: tuple[tuple[float, ...], ...]

    @property
    def passed(self) -> bool:
        return not self.falsifiers


def _distances(A: np.ndarray, perms: np.ndarray, p: float) -> np.ndarray:
    """``||A - P||_{S_p}`` for every permutation vector in ``perms``.

    The Frobenius case is computed entrywise; other exponents need a full
    singular spectrum per permutation.
    """
    n = A.shape[0]
    rows = np.arange(n)
    out = np.empty(len(perms))
    for start in range(0, len(perms), _CHUNK):
        chunk = perms[start : start + _CHUNK]
        diff = np.broadcast_to(A, (len(chunk), n, n)).copy()
        diff[np.arange(len(chunk))[:, None], rows, chunk] -= 1.0
        if p == 2.0:
            out[start : start + len(chunk)] = np.sqrt(np.einsum("kij,kij->k", diff, diff))
        else:
            out[start : start + len(chunk)] = schatten_from_values(singular_values(diff), p)
    return out


def _farthest(d: np.ndarray) -> int:
    # first (lexicographically smallest) index within round-off of the max
    top = d.max()
    return int(np.flatnonzero(d >= top - TIE_RTOL * max(1.0, top))[0])


def _permutation_pool(n: int, samples: int | None, seed: int) -> tuple[np.ndarray, Method]:
    if samples is None:
        if n > ENUM_MAX_N:
            raise DimensionTooLarge(
                f"exact enumeration limited to n <= {ENUM_MAX_N}, got {n}; pass samples= for a lower bound"
            )
        return all_permutations(n), Method.ENUMERATION
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    perms = np.array([rng.permutation(n) for _ in range(samples)], dtype=np.intp)
    return perms, Method.SAMPLED_LOWER_BOUND


def bounding_ball_radius_s2(A) -> BoundingBallReport:
    """Frobenius radius ``sqrt(||A||_F^2 + n - 2 tr_min(A))``.

    The farthest permutation matrix is the one whose diagonal realizes
    ``tr_min(A)``, placed as ``P[i, tau[i]] = 1``.
    """
    A = as_square(A)
    n = A.shape[0]
    res = min_trace_hungarian(A)
    r2 = frobenius_norm(A) ** 2 + n - 2.0 * res.value
    witness = PermutationMatrix(res.assignment)
    return BoundingBallReport(A, 2.0, math.sqrt(max(r2, 0.0)), witness, Method.CLOSED_FORM_S2)


def bounding_ball_radius_enum(A, p, samples: int | None = None, seed: int = 0) -> BoundingBallReport:
    """Maximum of ``||A - P||_{S_p}`` over permutations.

    Exact for ``n <= ENUM_MAX_N``. With ``samples`` set, ``samples`` uniform
    random permutations are used instead and the result is only a lower bound
    (``method == SAMPLED_LOWER_BOUND``).
    """
    A = as_square(A)
    p = check_exponent(p)
    n = A.shape[0]
    perms, method = _permutation_pool(n, samples, seed)
    d = _distances(A, perms, p)
    k = _farthest(d)
    return BoundingBallReport(A, p, float(d.max()), PermutationMatrix(tuple(perms[k])), method)


def radius_bounds_s2(D) -> RadiusBounds:
    """Frobenius radius bounds for a doubly stochastic center.

    Returns ``(lo, hi) = (sqrt(||D||^2 + n - 2), sqrt(||D||^2 + n))``; the
    attributes ``crude_lo``/``crude_hi`` hold ``sqrt(n - 1)`` and ``sqrt(2n)``.
    """
    if not isinstance(D, DoublyStochasticMatrix):
        D = make_doubly_stochastic(D)
    n = D.n
    f2 = frobenius_norm(D.matrix) ** 2
    lo, hi = math.sqrt(f2 + n - 2.0), math.sqrt(f2 + n)
    crude_lo, crude_hi = math.sqrt(n - 1.0), math.sqrt(2.0 * n)
    slack = 1e-9
    if lo < crude_lo - slack or hi > crude_hi + slack:
        raise AssertionError(f"norm of D outside [1, sqrt(n)]: lo={lo}, hi={hi}")
    return RadiusBounds(lo, hi, crude_lo, crude_hi)


def chebyshev_radius(n: int, p) -> ChebyshevReport:
    """Chebyshev radius ``(n - 1)**(1/p)`` of Omega_n, centered at ``J_n``."""
    if n < 1:
        raise ValueError("n must be positive")
    p = check_exponent(p)
    radius = (n - 1.0) ** (1.0 / p) if n > 1 else 0.0
    return ChebyshevReport(n, p, radius, jn(n).matrix)


def alpha_line_norm(alpha: float, n: int, p) -> float:
    """``||alpha J_n - I_n||_{S_p} = (n - 1 + |1 - alpha|**p)**(1/p)``."""
    if n < 2:
        raise ValueError("n must be >= 2")
    p = check_exponent(p)
    return (n - 1.0 + abs(1.0 - alpha) ** p) ** (1.0 / p)


def equidistance_check(A, p, tol: float = 1e-10, samples: int | None = None, seed: int = 0) -> EquidistanceReport:
    """Spread of ``||A - P||_{S_p}`` over permutations (all, or sampled)."""
    A = as_square(A)
    p = check_exponent(p)
    n = A.shape[0]
    if samples is None and n > ENUM_MAX_N:
        samples = 10_000
    perms, _ = _permutation_pool(n, samples, seed)
    d = _distances(A, perms, p)
    spread = float(d.max() - d.min())
    return EquidistanceReport(spread, tuple(float(x) for x in d), float(np.mean(d)), spread <= tol)


def center_uniqueness_probe(n: int, p, trials: int, seed: int) -> UniquenessReport:
    """Randomized search for a second Chebyshev center.

    Half of the candidates are ``J_n`` plus a random perturbation with
    Frobenius size log-uniform in ``[1e-3, 1]``; the other half are random
    doubly stochastic matrices (Sinkhorn-balanced, then convex combinations of
    permutations) at least ``1e-3`` away from ``J_n``. A candidate whose exact
    enclosing radius does not exceed ``(n - 1)**(1/p)`` is a falsifier. Finding
    none is evidence, not proof.
    """
    from .birkhoff import sample_convex, sample_sinkhorn

    p = check_exponent(p)
    if n > PROBE_MAX_N:
        raise DimensionTooLarge(f"uniqueness probe limited to n <= {PROBE_MAX_N}, got {n}")
    if n < 2:
        raise ValueError("uniqueness probe needs n >= 2")
    rng = np.random.default_rng(seed)
    J = jn(n).matrix
    target = chebyshev_radius(n, p).radius
    perms = all_permutations(n)
    margins, falsifiers = [], []
    for t in range(trials):
        if t % 2 == 0:
            E = rng.normal(size=(n, n))
            scale = 10.0 ** rng.uniform(-3.0, 0.0)
            A = J + scale * E / np.linalg.norm(E)
        else:
            sub_seed = int(rng.integers(2**63))
            if t % 4 == 1:
                A = sample_sinkhorn(n, sub_seed).matrix
            else:
                A = sample_convex(n, int(rng.integers(1, n * n + 1)), sub_seed).matrix
            if np.linalg.norm(A - J) < 1e-3:
                continue
        margin = float(_distances(A, perms, p).max()) - target
        margins.append(margin)
        if margin <= 0.0:
            falsifiers.append(tuple(float(x) for x in A.ravel()))
    min_margin = min(margins) if margins else math.inf
    return UniquenessReport(n, p, len(margins), target, min_margin, tuple(falsifiers))

