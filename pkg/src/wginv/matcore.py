"""Dense-matrix substrate: pseudoinverse, rank, matrix index, projectors,
subspace tests, and the shared report/tolerance types."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "DimensionError",
    "CertificationError",
    "HypothesisError",
    "GenerationError",
    "ToleranceConfig",
    "DEFAULT_TOL",
    "VerificationReport",
    "WeightedPair",
    "weighted_pair",
    "as_matrix",
    "matrix_power",
    "mp_inverse",
    "rank_of",
    "index_of",
    "range_inclusion",
    "projector_onto",
    "oblique_projector_check",
    "spectral_norm",
]


class DimensionError(ValueError):
    """Matrix dimensions are incompatible with the requested operation."""


class CertificationError(RuntimeError):
    """A constructed value failed its defining-equation residual check."""


class HypothesisError(RuntimeError):
    """A stated hypothesis does not hold for the given inputs."""


class GenerationError(RuntimeError):
    """Random instance generation could not satisfy the required constraints."""


def as_matrix(a) -> np.ndarray:
    """Coerce to a finite complex 2-d array."""
    A = np.asarray(a, dtype=complex)
    if A.ndim != 2:
        raise DimensionError(f"expected a 2-d array, got shape {A.shape}")
    if A.size and not np.all(np.isfinite(A)):
        raise ValueError("matrix entries must be finite")
    return A


@dataclass(frozen=True)
class ToleranceConfig:
    """Shared numerical thresholds.

    rank_rtol scales the singular-value cutoff for rank decisions;
    residual_atol is the absolute floor for equation-residual pass/fail,
    applied as residual <= residual_atol * (1 + ||reference||).
    """

    rank_rtol: float = 1e-10
    residual_atol: float = 1e-8
    norm_kind: str = "spectral"

    def __post_init__(self):
        if self.rank_rtol <= 0.0 or self.residual_atol <= 0.0:
            raise ValueError("tolerances must be positive")
        if self.norm_kind != "spectral":
            raise ValueError(f"unsupported norm kind: {self.norm_kind!r}")


DEFAULT_TOL = ToleranceConfig()


def spectral_norm(A) -> float:
    """Largest singular value; 0 for empty matrices."""
    A = np.asarray(A, dtype=complex)
    if A.size == 0:
        return 0.0
    return float(np.linalg.norm(A, 2))


def _passes(residual: float, ref_norm: float, tol: ToleranceConfig) -> bool:
    return residual <= tol.residual_atol * (1.0 + ref_norm)


def matrix_power(A, j: int) -> np.ndarray:
    """A**j by repeated multiplication; j=0 gives the identity."""
    A = as_matrix(A)
    if A.shape[0] != A.shape[1]:
        raise DimensionError(f"powers need a square matrix, got {A.shape}")
    if j < 0:
        raise ValueError("negative powers are not defined here")
    return np.linalg.matrix_power(A, j)


def mp_inverse(A, tol: ToleranceConfig = DEFAULT_TOL, floor: float = 0.0) -> np.ndarray:
    """Moore-Penrose inverse, SVD-truncated at the shared rank threshold.

    `floor` raises the cutoff scale above sigma_max: a sub-block carved out of
    a larger matrix passes the parent's norm so that a block of pure roundoff
    inverts to zero instead of to noise^-1.
    """
    A = as_matrix(A)
    if A.size == 0:
        return np.zeros((A.shape[1], A.shape[0]), dtype=complex)
    U, s, Vh = np.linalg.svd(A, full_matrices=False)
    scale = max(float(s[0]) if s.size else 0.0, floor)
    if scale == 0.0:
        return np.zeros((A.shape[1], A.shape[0]), dtype=complex)
    keep = s > tol.rank_rtol * scale * max(A.shape)
    inv = np.zeros_like(s)
    inv[keep] = 1.0 / s[keep]
    return Vh.conj().T @ np.diag(inv).astype(complex) @ U.conj().T


def rank_of(A, tol: ToleranceConfig = DEFAULT_TOL) -> int:
    """Number of singular values above rank_rtol * sigma_max * max(rows, cols)."""
    A = as_matrix(A)
    return _rank_floored(A, 0.0, tol)


def _rank_floored(A: np.ndarray, floor: float, tol: ToleranceConfig) -> int:
    # Rank with the cutoff scale floored at `floor`: high powers of a nearly
    # nilpotent matrix must not pick up roundoff rank, so callers working with
    # S^j pass floor = ||S||^j.
    if A.size == 0:
        return 0
    s = np.linalg.svd(A, compute_uv=False)
    scale = max(float(s[0]) if s.size else 0.0, floor)
    if scale == 0.0:
        return 0
    return int(np.count_nonzero(s > tol.rank_rtol * scale * max(A.shape)))


def index_of(S, tol: ToleranceConfig = DEFAULT_TOL) -> int:
    """Smallest k >= 0 with rank(S^k) = rank(S^(k+1)), where S^0 = I."""
    S = as_matrix(S)
    n, nc = S.shape
    if n != nc:
        raise DimensionError(f"the index needs a square matrix, got {S.shape}")
    if n == 0:
        return 0
    norm_s = spectral_norm(S)
    prev_rank = n  # rank of S^0
    P = np.eye(n, dtype=complex)
    for k in range(1, n + 2):
        P = P @ S
        r = _rank_floored(P, norm_s**k, tol)
        if r == prev_rank:
            return k - 1
        prev_rank = r
    return n


def projector_onto(A, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Orthogonal projector onto the column space, A A^+."""
    A = as_matrix(A)
    return A @ mp_inverse(A, tol)


def range_inclusion(A, B, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """True iff every column of A lies in the column space of B."""
    A = as_matrix(A)
    B = as_matrix(B)
    if A.shape[0] != B.shape[0]:
        raise DimensionError(
            f"column spaces live in different dimensions: {A.shape[0]} vs {B.shape[0]}"
        )
    residual = spectral_norm(A - projector_onto(B, tol) @ A)
    return _passes(residual, spectral_norm(A), tol)


@dataclass
class VerificationReport:
    """Per-condition residual norms with pass flags.

    `conditions` holds (label, residual, pass) triples and decides `overall`.
    `notes` holds informational (label, value) pairs that are reported but
    never asserted.
    """

    theorem_id: str
    tolerances: ToleranceConfig = DEFAULT_TOL
    conditions: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, label: str, residual: float, ok: bool) -> None:
        self.conditions.append((str(label), float(residual), bool(ok)))

    def add_equation(self, label: str, lhs, rhs) -> float:
        """Record ||lhs - rhs|| against the (1 + ||rhs||)-scaled threshold."""
        lhs = np.asarray(lhs, dtype=complex)
        rhs = np.asarray(rhs, dtype=complex)
        residual = spectral_norm(lhs - rhs)
        self.add(label, residual, _passes(residual, spectral_norm(rhs), self.tolerances))
        return residual

    def add_rank_gap(self, label: str, r1: int, r2: int) -> None:
        gap = float(abs(int(r1) - int(r2)))
        self.add(label, gap, gap == 0.0)

    def note(self, label: str, value: float) -> None:
        self.notes.append((str(label), float(value)))

    def merge(self, other: "VerificationReport", prefix: str = "") -> None:
        for label, residual, ok in other.conditions:
            self.add(prefix + label, residual, ok)
        for label, value in other.notes:
            self.notes.append((prefix + label, float(value)))

    @property
    def overall(self) -> bool:
        return all(ok for _, _, ok in self.conditions)

    def worst_residual(self) -> float:
        return max((r for _, r, _ in self.conditions), default=0.0)

    def to_dict(self) -> dict:
        doc = {
            "theorem_id": self.theorem_id,
            "tolerances": {
                "rank_rtol": f"{self.tolerances.rank_rtol:.16e}",
                "residual_atol": f"{self.tolerances.residual_atol:.16e}",
                "norm_kind": self.tolerances.norm_kind,
            },
            "conditions": [
                {"label": label, "residual": f"{residual:.16e}", "pass": ok}
                for label, residual, ok in self.conditions
            ],
            "overall": self.overall,
        }
        if self.notes:
            doc["notes"] = [
                {"label": label, "value": f"{value:.16e}"} for label, value in self.notes
            ]
        return doc


def oblique_projector_check(
    P, range_gen, null_gen, tol: ToleranceConfig = DEFAULT_TOL
) -> VerificationReport:
    """Check that P is idempotent with column space R(range_gen) and null
    space N(null_gen).

    Null-space equality is decided by rank tests on stacked rows: N(P) equals
    N(F) exactly when the row spaces agree, i.e. rank([F; P]) = rank(F) = rank(P).
    """
    P = as_matrix(P)
    G = as_matrix(range_gen)
    F = as_matrix(null_gen)
    if P.shape[0] != P.shape[1]:
        raise DimensionError(f"projector must be square, got {P.shape}")
    n = P.shape[0]
    if G.shape[0] != n:
        raise DimensionError(f"range generator rows {G.shape[0]} != {n}")
    if F.shape[1] != n:
        raise DimensionError(f"null generator columns {F.shape[1]} != {n}")

    report = VerificationReport("oblique-projector", tol)
    report.add_equation("idempotent", P @ P, P)

    r_pg = spectral_norm(P - projector_onto(G, tol) @ P)
    r_gp = spectral_norm(G - projector_onto(P, tol) @ G)
    ok = _passes(r_pg, spectral_norm(P), tol) and _passes(r_gp, spectral_norm(G), tol)
    report.add("column-space equality", max(r_pg, r_gp), ok)

    stacked = rank_of(np.vstack([F, P]), tol)
    gap = float(max(stacked - rank_of(F, tol), stacked - rank_of(P, tol)))
    report.add("null-space equality", gap, gap == 0.0)
    return report


@dataclass(frozen=True)
class WeightedPair:
    """A rectangular matrix B (m x n) with weight W (n x m) and the indices
    of both products."""

    B: np.ndarray
    W: np.ndarray
    k_bw: int
    k_wb: int

    @property
    def m(self) -> int:
        return self.B.shape[0]

    @property
    def n(self) -> int:
        return self.B.shape[1]

    def bw(self) -> np.ndarray:
        return self.B @ self.W

    def wb(self) -> np.ndarray:
        return self.W @ self.B

    def bw_power(self, j: int) -> np.ndarray:
        return matrix_power(self.B @ self.W, j)

    def wb_power(self, j: int) -> np.ndarray:
        return matrix_power(self.W @ self.B, j)


def weighted_pair(B, W, tol: ToleranceConfig = DEFAULT_TOL) -> WeightedPair:
    """Validate shapes, reject the zero weight, and cache both indices."""
    B = as_matrix(B)
    W = as_matrix(W)
    m, n = B.shape
    if W.shape != (n, m):
        raise DimensionError(f"weight shape {W.shape} does not match required ({n}, {m})")
    if spectral_norm(W) == 0.0:
        raise ValueError("the zero weight is excluded")
    return WeightedPair(B=B, W=W, k_bw=index_of(B @ W, tol), k_wb=index_of(W @ B, tol))
