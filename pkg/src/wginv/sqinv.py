"""Generalized inverses of square matrices: Drazin, core-EP, and the m-fold
weak group inverse, each certified on construction."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matcore import (
    DEFAULT_TOL,
    CertificationError,
    DimensionError,
    ToleranceConfig,
    _passes,
    as_matrix,
    index_of,
    matrix_power,
    mp_inverse,
    projector_onto,
    rank_of,
    spectral_norm,
)

__all__ = ["SquareInverseResult", "drazin", "core_ep", "m_wgi"]


@dataclass(frozen=True)
class SquareInverseResult:
    """Computed inverse with the index that was used and the raw residuals of
    the defining equations."""

    value: np.ndarray
    index_used: int
    residuals: dict


def _square(S) -> np.ndarray:
    S = as_matrix(S)
    if S.shape[0] != S.shape[1]:
        raise DimensionError(f"expected a square matrix, got {S.shape}")
    return S


def _certify(kind: str, checks: dict, tol: ToleranceConfig) -> dict:
    # checks: label -> (residual, reference norm); raises on the worst offender
    residuals = {}
    worst = None
    for label, (residual, ref_norm) in checks.items():
        residuals[label] = residual
        if not _passes(residual, ref_norm, tol):
            if worst is None or residual > worst[1]:
                worst = (label, residual)
    if worst is not None:
        raise CertificationError(
            f"{kind}: equation {worst[0]!r} has residual {worst[1]:.3e} beyond tolerance"
        )
    return residuals


def _eq(lhs, rhs) -> tuple:
    return (spectral_norm(lhs - rhs), spectral_norm(rhs))


def drazin(S, tol: ToleranceConfig = DEFAULT_TOL) -> SquareInverseResult:
    """Drazin inverse through the power representation S^k (S^(2k+1))^+ S^k."""
    S = _square(S)
    k = index_of(S, tol)
    Sk = matrix_power(S, k)
    X = Sk @ mp_inverse(matrix_power(S, 2 * k + 1), tol) @ Sk
    residuals = _certify(
        "drazin",
        {
            "outer": _eq(X @ S @ X, X),
            "commute": _eq(S @ X, X @ S),
            "power": _eq(matrix_power(S, k + 1) @ X, Sk),
        },
        tol,
    )
    return SquareInverseResult(value=X, index_used=k, residuals=residuals)


def core_ep(S, tol: ToleranceConfig = DEFAULT_TOL) -> SquareInverseResult:
    """Core-EP inverse S^D S^k (S^k)^+; its range and null space both come
    from S^k."""
    S = _square(S)
    k = index_of(S, tol)
    Sk = matrix_power(S, k)
    P = projector_onto(Sk, tol)
    X = drazin(S, tol).value @ P
    r_range = max(
        spectral_norm(X - P @ X),
        spectral_norm(Sk - projector_onto(X, tol) @ Sk),
    )
    residuals = _certify(
        "core_ep",
        {
            "outer": _eq(X @ S @ X, X),
            "projector": _eq(S @ X, P),
            "range equality": (r_range, max(spectral_norm(X), spectral_norm(Sk))),
        },
        tol,
    )
    # defensive: the construction already forces rank(X) = rank(S^k)
    if rank_of(X, tol) != rank_of(Sk, tol):
        raise CertificationError("core_ep: rank differs from rank(S^k)")
    return SquareInverseResult(value=X, index_used=k, residuals=residuals)


def m_wgi(S, m: int, tol: ToleranceConfig = DEFAULT_TOL) -> SquareInverseResult:
    """m-fold weak group inverse (S^core-EP)^(m+1) S^m.

    m = 1 is the weak group inverse; large m approaches the Drazin inverse.
    """
    S = _square(S)
    if m < 1:
        raise ValueError(f"m must be a positive integer, got {m}")
    k = index_of(S, tol)
    Sk = matrix_power(S, k)
    C = core_ep(S, tol).value
    X = matrix_power(C, m + 1) @ matrix_power(S, m)
    residuals = _certify(
        "m_wgi",
        {
            "outer": _eq(X @ S @ X, X),
            "product": _eq(S @ X, matrix_power(C, m) @ matrix_power(S, m)),
            "range": (
                spectral_norm(X - projector_onto(Sk, tol) @ X),
                spectral_norm(X),
            ),
        },
        tol,
    )
    return SquareInverseResult(value=X, index_used=k, residuals=residuals)
