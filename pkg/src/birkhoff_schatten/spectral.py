"""Singular values and Schatten p-norms.

Singular values come from a one-sided (Hestenes) Jacobi iteration written
against stacks of matrices, so enumerations over thousands of permutations
run as a handful of vectorized sweeps instead of thousands of Python loops.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionMismatch, InvalidExponent, NonConvergence, NonFiniteInput
from .matrices import as_square

MAX_SWEEPS = 60


def check_exponent(p) -> float:
    """Validate a Schatten exponent: a finite real ``p >= 1``."""
    try:
        p = float(p)
    except (TypeError, ValueError):
        raise InvalidExponent(f"Schatten exponent must be a real number, got {p!r}") from None
    if not math.isfinite(p):
        raise InvalidExponent("p = inf is not supported; use 1 <= p < inf")
    if p < 1.0:
        raise InvalidExponent(f"Schatten exponent must satisfy p >= 1, got {p}")
    return p


def _as_stack(A) -> tuple[np.ndarray, bool]:
    arr = np.asarray(A, dtype=np.float64)
    if arr.ndim == 2:
        return as_square(arr)[None, :, :], True
    if arr.ndim != 3 or arr.shape[1] != arr.shape[2] or arr.shape[1] < 1:
        raise DimensionMismatch(f"expected (n, n) or (k, n, n), got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteInput("matrix contains NaN or infinite entries")
    return arr, False


def _jacobi_column_norms(stack: np.ndarray) -> np.ndarray:
    U = np.array(stack, dtype=np.float64)
    k, _, n = U.shape
    if n == 1:
        return np.abs(U[:, :, 0])
    rel = n * np.finfo(np.float64).eps
    # a column of pure round-off noise never becomes "orthogonal" relative to
    # its own norm; pairs whose inner product is negligible against ||A||_F^2 stop
    floor = rel * rel * np.einsum("kmn,kmn->k", U, U)
    pairs = [(i, j) for i in range(n - 1) for j in range(i + 1, n)]
    for _ in range(MAX_SWEEPS):
        rotated = False
        for i, j in pairs:
            ui = U[:, :, i]
            uj = U[:, :, j]
            a = np.einsum("km,km->k", ui, ui)
            b = np.einsum("km,km->k", uj, uj)
            c = np.einsum("km,km->k", ui, uj)
            need = (np.abs(c) > rel * np.sqrt(a * b)) & (np.abs(c) > floor)
            if not need.any():
                continue
            rotated = True
            c_safe = np.where(need, c, 1.0)
            zeta = (b - a) / (2.0 * c_safe)
            t = np.where(zeta >= 0, 1.0, -1.0) / (np.abs(zeta) + np.sqrt(1.0 + zeta * zeta))
            cs = np.where(need, 1.0 / np.sqrt(1.0 + t * t), 1.0)
            sn = np.where(need, cs * t, 0.0)
            ui_new = cs[:, None] * ui - sn[:, None] * uj
            U[:, :, j] = sn[:, None] * ui + cs[:, None] * uj
            U[:, :, i] = ui_new
        if not rotated:
            return np.sqrt(np.einsum("kmn,kmn->kn", U, U))
    raise NonConvergence(f"Jacobi SVD did not converge in {MAX_SWEEPS} sweeps")


def singular_values(A) -> np.ndarray:
    """Singular values of ``A`` in nonincreasing order.

    ``A`` may be a single ``(n, n)`` matrix or a ``(k, n, n)`` stack, in which
    case a ``(k, n)`` array is returned.

    >>> singular_values([[1.0, 1.0], [1.0, 1.0]]).round(12).tolist()
    [2.0, 0.0]
    """
    stack, single = _as_stack(A)
    # normalize by the largest entry so Gram products neither overflow nor underflow
    scale = np.abs(stack).max(axis=(1, 2))
    scale = np.where(scale > 0, scale, 1.0)
    norms = _jacobi_column_norms(stack / scale[:, None, None]) * scale[:, None]
    sv = -np.sort(-norms, axis=1)
    return sv[0] if single else sv


def schatten_from_values(sv, p) -> np.ndarray | float:
    """Schatten norm from precomputed singular values (last axis)."""
    p = check_exponent(p)
    sv = np.asarray(sv, dtype=np.float64)
    if p == 1.0:
        out = sv.sum(axis=-1)
    elif p == 2.0:
        out = np.sqrt(np.einsum("...i,...i->...", sv, sv))
    else:
        top = sv.max(axis=-1, keepdims=True)
        scale = np.where(top > 0, top, 1.0)
        total = np.sum((sv / scale) ** p, axis=-1)
        out = np.where(top[..., 0] > 0, scale[..., 0] * np.where(total > 0, total, 1.0) ** (1.0 / p), 0.0)
    return float(out) if np.ndim(out) == 0 else out


def schatten_norm(A, p) -> np.ndarray | float:
    """``(sum_i sigma_i(A)**p)**(1/p)`` for a matrix or a stack of matrices."""
    p = check_exponent(p)
    return schatten_from_values(singular_values(A), p)


def frobenius_norm(A) -> float:
    """Entrywise 2-norm, no SVD involved."""
    A = as_square(A)
    return math.sqrt(math.fsum((A * A).ravel()))


def von_neumann_gap(B, C) -> float:
    """``sum_i sigma_i(B) sigma_i(C) - |tr(BC)|``; nonnegative up to round-off."""
    B, C = as_square(B), as_square(C)
    if B.shape != C.shape:
        raise DimensionMismatch(f"dimension mismatch: {B.shape} vs {C.shape}")
    sv = singular_values(np.stack([B, C]))
    bound = math.fsum(sv[0] * sv[1])
    tr = math.fsum(np.einsum("ij,ji->i", B, C))
    return bound - abs(tr)
