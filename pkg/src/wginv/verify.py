"""Residual checkers for the characterization, projector, and solution-family
statements. Each checker returns a VerificationReport whose conditions carry
the worst raw residual of the item they certify."""

from __future__ import annotations

import numpy as np

from .matcore import (
    DEFAULT_TOL,
    HypothesisError,
    ToleranceConfig,
    VerificationReport,
    WeightedPair,
    _passes,
    as_matrix,
    mp_inverse,
    oblique_projector_check,
    projector_onto,
    rank_of,
    spectral_norm,
)
from .sqinv import drazin
from .winv import (
    _left_member_residual,
    _right_member_residual,
    w_dmp,
    w_drazin,
    w_mpd,
    weak_dmp,
    weak_mpd,
)

__all__ = [
    "check_mrwwd",
    "check_mrwwd_right",
    "check_weak_mpd_system",
    "check_weak_dmp_system",
    "check_mpd_characterizations",
    "check_dmp_characterizations",
    "check_wdrazin_specialization",
    "check_projectors",
    "check_projectors_right",
    "check_unique_projector_solution",
    "check_mp_drazin_absorption",
    "one_inverse_family",
    "one_inverse_family_right",
    "mpd_general_solution",
]


def _eqc(lhs, rhs, tol: ToleranceConfig) -> tuple:
    r = spectral_norm(np.asarray(lhs) - np.asarray(rhs))
    return r, _passes(r, spectral_norm(rhs), tol)


def _range_eqc(A, B, tol: ToleranceConfig) -> tuple:
    r_ab = spectral_norm(A - projector_onto(B, tol) @ A)
    r_ba = spectral_norm(B - projector_onto(A, tol) @ B)
    ok = _passes(r_ab, spectral_norm(A), tol) and _passes(r_ba, spectral_norm(B), tol)
    return max(r_ab, r_ba), ok


def _null_eqc(A, B, tol: ToleranceConfig) -> tuple:
    # N(A) = N(B) iff the row spaces agree iff stacking adds no rank
    stacked = rank_of(np.vstack([A, B]), tol)
    gap = float(max(stacked - rank_of(A, tol), stacked - rank_of(B, tol)))
    return gap, gap == 0.0


def _rank_eqc(r1: int, r2: int) -> tuple:
    gap = float(abs(int(r1) - int(r2)))
    return gap, gap == 0.0


def _item(report: VerificationReport, label: str, comps: list) -> None:
    report.add(
        label,
        max((r for r, _ in comps), default=0.0),
        all(ok for _, ok in comps),
    )


def _require_left_member(pair: WeightedPair, X, tol: ToleranceConfig) -> np.ndarray:
    X = as_matrix(X)
    ok, residual, rank_gap = _left_member_residual(pair, X, tol)
    if not ok:
        raise HypothesisError(
            f"X is not a left family member (residual {residual:.3e}, rank gap {rank_gap})"
        )
    return X


def _require_right_member(pair: WeightedPair, Z, tol: ToleranceConfig) -> np.ndarray:
    Z = as_matrix(Z)
    ok, residual, rank_gap = _right_member_residual(pair, Z, tol)
    if not ok:
        raise HypothesisError(
            f"Z is not a right family member (residual {residual:.3e}, rank gap {rank_gap})"
        )
    return Z


def check_mrwwd(
    pair: WeightedPair, X, tol: ToleranceConfig = DEFAULT_TOL, power: int | None = None
) -> VerificationReport:
    """Seven equivalent characterizations of membership in the left family of
    X W (BW)^(k+1) = (BW)^k at rank((BW)^k)."""
    X = as_matrix(X)
    B, W = pair.B, pair.W
    k = pair.k_bw if power is None else int(power)
    K = pair.bw_power(k)
    M = W @ pair.bw_power(k + 1)
    BW = pair.bw()

    report = VerificationReport("thm2.1", tol)
    eq = _eqc(X @ M, K, tol)
    rank = _rank_eqc(rank_of(X, tol), rank_of(K, tol))
    rng = _range_eqc(X, K, tol)

    _item(report, "(i) power equation, rank", [eq, rank])
    _item(report, "(ii) power equation, range", [eq, rng])
    _item(report, "(iii) outer inverse, range", [_eqc(X @ W @ B @ W @ X, X, tol), rng])
    _item(report, "(iv) core projector fixes X", [_eqc(projector_onto(K, tol) @ X, X, tol), eq])
    _item(report, "(v) power equation, rank, range", [eq, rank, rng])
    _item(report, "(vi) left absorption", [_eqc(B @ W @ X @ W @ X, X, tol), eq])
    _item(
        report,
        "(vii) Drazin projector fixes X",
        [_eqc(drazin(BW, tol).value @ BW @ X, X, tol), eq],
    )
    return report


def check_mrwwd_right(
    pair: WeightedPair, Z, tol: ToleranceConfig = DEFAULT_TOL, power: int | None = None
) -> VerificationReport:
    """Mirrored characterizations for the right family (WB)^(k+1) W Z-side
    equation M Z = N with N = (WB)^k."""
    Z = as_matrix(Z)
    B, W = pair.B, pair.W
    k = pair.k_wb if power is None else int(power)
    N = pair.wb_power(k)
    M = W @ pair.bw_power(k + 1)
    WB = pair.wb()

    report = VerificationReport("thm2.8", tol)
    eq = _eqc(M @ Z, N, tol)
    rank = _rank_eqc(rank_of(Z, tol), rank_of(N, tol))
    nul = _null_eqc(Z, N, tol)

    _item(report, "(i) power equation, rank", [eq, rank])
    _item(report, "(ii) power equation, null space", [eq, nul])
    _item(report, "(iii) outer inverse, null space", [_eqc(Z @ W @ B @ W @ Z, Z, tol), nul])
    _item(
        report,
        "(iv) row projector fixes Z",
        [_eqc(Z @ mp_inverse(N, tol) @ N, Z, tol), eq],
    )
    _item(report, "(v) power equation, rank, null space", [eq, rank, nul])
    _item(report, "(vi) right absorption", [_eqc(Z @ W @ Z @ W @ B, Z, tol), eq])
    _item(
        report,
        "(vii) Drazin projector fixes Z",
        [_eqc(Z @ drazin(WB, tol).value @ WB, Z, tol), eq],
    )
    return report


def check_weak_mpd_system(
    pair: WeightedPair, X, Y, tol: ToleranceConfig = DEFAULT_TOL
) -> VerificationReport:
    """The three-equation system whose unique solution is the weak MPD inverse
    B^+ B W X W of the member X."""
    X = as_matrix(X)
    Y = as_matrix(Y)
    B, W = pair.B, pair.W
    k = pair.k_bw
    Bp = mp_inverse(B, tol)
    P1 = pair.bw_power(k + 1)

    report = VerificationReport("thm3.1", tol)
    _, m_res, m_gap = _left_member_residual(pair, X, tol)
    _item(report, "X in left family", [( m_res, _passes(m_res, spectral_norm(pair.bw_power(k)), tol)), (float(m_gap), m_gap == 0)])
    report.add_equation("outer: Y B Y = Y", Y @ B @ Y, Y)
    report.add_equation("image: B Y = B W X W", B @ Y, B @ W @ X @ W)
    report.add_equation("power: Y (BW)^(k+1) = B^+ (BW)^(k+1)", Y @ P1, Bp @ P1)
    report.add_equation("uniqueness: Y = B^+ B W X W", Y, Bp @ B @ W @ X @ W)
    return report


def check_weak_dmp_system(
    pair: WeightedPair, Z, Y1, tol: ToleranceConfig = DEFAULT_TOL
) -> VerificationReport:
    """Mirrored system for the weak DMP inverse W Z W B B^+."""
    Z = as_matrix(Z)
    Y1 = as_matrix(Y1)
    B, W = pair.B, pair.W
    k = pair.k_wb
    Bp = mp_inverse(B, tol)
    P1 = pair.wb_power(k + 1)

    report = VerificationReport("lem3.2", tol)
    _, m_res, m_gap = _right_member_residual(pair, Z, tol)
    _item(report, "Z in right family", [(m_res, _passes(m_res, spectral_norm(pair.wb_power(k)), tol)), (float(m_gap), m_gap == 0)])
    report.add_equation("outer: Y1 B Y1 = Y1", Y1 @ B @ Y1, Y1)
    report.add_equation("image: Y1 B = W Z W B", Y1 @ B, W @ Z @ W @ B)
    report.add_equation("power: (WB)^(k+1) Y1 = (WB)^(k+1) B^+", P1 @ Y1, P1 @ Bp)
    report.add_equation("uniqueness: Y1 = W Z W B B^+", Y1, W @ Z @ W @ B @ Bp)
    return report


def check_mpd_characterizations(
    pair: WeightedPair, X, Y, tol: ToleranceConfig = DEFAULT_TOL
) -> VerificationReport:
    """Seven equivalent descriptions of the weak MPD inverse of member X."""
    X = as_matrix(X)
    Y = as_matrix(Y)
    B, W = pair.B, pair.W
    k = pair.k_bw
    Bp = mp_inverse(B, tol)
    BWXW = B @ W @ X @ W
    P1 = pair.bw_power(k + 1)

    report = VerificationReport("thm3.3", tol)
    outer = _eqc(Y @ B @ Y, Y, tol)
    image = _eqc(B @ Y, BWXW, tol)
    power = _eqc(Y @ P1, Bp @ P1, tol)
    left_abs = _eqc(Y @ B, Bp @ B @ Y @ B, tol)
    mp_fix = _eqc(Y, Bp @ B @ Y, tol)

    _item(report, "(i) direct formula", [_eqc(Y, Bp @ BWXW, tol)])
    _item(
        report,
        "(ii) outer, sandwich, image, power",
        [outer, _eqc(B @ Y @ B, BWXW @ B, tol), image, power],
    )
    _item(report, "(iii) outer, image, left absorption", [outer, image, left_abs])
    _item(report, "(iv) image, left absorption, MP fix", [image, left_abs, mp_fix])
    _item(
        report,
        "(v) outer, image, power, member absorption",
        [outer, image, power, _eqc(Y @ X, Bp @ X, tol)],
    )
    _item(
        report,
        "(vi) MP fix, image, member sandwich",
        [mp_fix, image, _eqc(Y @ X @ Bp, Bp @ X @ Bp, tol)],
    )
    _item(
        report,
        "(vii) MP fix, image, weighted member absorption",
        [mp_fix, image, _eqc(Y @ X @ W @ B, Bp @ X @ W @ B, tol)],
    )
    return report


def check_dmp_characterizations(
    pair: WeightedPair, Z, Y1, tol: ToleranceConfig = DEFAULT_TOL
) -> VerificationReport:
    """Mirrored descriptions of the weak DMP inverse of member Z."""
    Z = as_matrix(Z)
    Y1 = as_matrix(Y1)
    B, W = pair.B, pair.W
    k = pair.k_wb
    Bp = mp_inverse(B, tol)
    WZWB = W @ Z @ W @ B
    P1 = pair.wb_power(k + 1)

    report = VerificationReport("thm3.4", tol)
    outer = _eqc(Y1 @ B @ Y1, Y1, tol)
    image = _eqc(Y1 @ B, WZWB, tol)
    power = _eqc(P1 @ Y1, P1 @ Bp, tol)
    right_abs = _eqc(B @ Y1, B @ Y1 @ B @ Bp, tol)
    mp_fix = _eqc(Y1, Y1 @ B @ Bp, tol)

    _item(report, "(i) direct formula", [_eqc(Y1, WZWB @ Bp, tol)])
    _item(
        report,
        "(ii) outer, sandwich, image, power",
        [outer, _eqc(B @ Y1 @ B, B @ WZWB, tol), image, power],
    )
    _item(report, "(iii) outer, image, right absorption", [outer, image, right_abs])
    _item(report, "(iv) image, right absorption, MP fix", [image, right_abs, mp_fix])
    _item(
        report,
        "(v) outer, image, power, member absorption",
        [outer, image, power, _eqc(Z @ Y1, Z @ Bp, tol)],
    )
    _item(
        report,
        "(vi) MP fix, image, member sandwich",
        [mp_fix, image, _eqc(Bp @ Z @ Y1, Bp @ Z @ Bp, tol)],
    )
    _item(
        report,
        "(vii) MP fix, image, weighted member absorption",
        [mp_fix, image, _eqc(B @ W @ Z @ Y1, B @ W @ Z @ Bp, tol)],
    )
    return report


def check_wdrazin_specialization(
    pair: WeightedPair, tol: ToleranceConfig = DEFAULT_TOL
) -> VerificationReport:
    """The characterizations specialized to the weighted Drazin member, where
    the weak MPD inverse collapses to the weighted MPD inverse."""
    X = w_drazin(pair, tol).value
    Y = weak_mpd(pair, X, tol).value
    inner = check_mpd_characterizations(pair, X, Y, tol)
    report = VerificationReport("thm3.5", tol)
    report.merge(inner)
    report.add_equation("weak MPD equals weighted MPD", Y, w_mpd(pair, tol).value)
    return report


def check_projectors(
    pair: WeightedPair, X, Y=None, tol: ToleranceConfig = DEFAULT_TOL
) -> VerificationReport:
    """B Y and Y B as oblique projectors determined by the member X, plus the
    range and null space of Y itself."""
    X = _require_left_member(pair, X, tol)
    B, W = pair.B, pair.W
    if Y is None:
        Y = weak_mpd(pair, X, tol).value
    Y = as_matrix(Y)
    k = pair.k_bw
    K = pair.bw_power(k)
    col_gen = mp_inverse(B, tol) @ pair.bw_power(k + 1)

    report = VerificationReport("lem3.6", tol)
    report.merge(oblique_projector_check(B @ Y, K, X @ W, tol), prefix="(i) B Y: ")
    report.merge(
        oblique_projector_check(Y @ B, col_gen, X @ W @ B, tol), prefix="(ii) Y B: "
    )
    outer = _eqc(Y @ B @ Y, Y, tol)
    rng = _range_eqc(Y, col_gen, tol)
    nul = _null_eqc(Y, X @ W, tol)
    _item(report, "(iii) outer, range, null space", [outer, rng, nul])
    return report


def check_projectors_right(
    pair: WeightedPair, Z, Y1=None, tol: ToleranceConfig = DEFAULT_TOL
) -> VerificationReport:
    """Mirrored projector geometry for the weak DMP inverse of member Z."""
    Z = _require_right_member(pair, Z, tol)
    B, W = pair.B, pair.W
    if Y1 is None:
        Y1 = weak_dmp(pair, Z, tol).value
    Y1 = as_matrix(Y1)
    k = pair.k_wb
    N = pair.wb_power(k)
    null_gen = pair.wb_power(k + 1) @ mp_inverse(B, tol)

    report = VerificationReport("lem3.7", tol)
    report.merge(
        oblique_projector_check(B @ Y1, B @ W @ Z, null_gen, tol), prefix="(i) B Y1: "
    )
    report.merge(oblique_projector_check(Y1 @ B, W @ Z, N, tol), prefix="(ii) Y1 B: ")
    outer = _eqc(Y1 @ B @ Y1, Y1, tol)
    rng = _range_eqc(Y1, W @ Z, tol)
    nul = _null_eqc(Y1, null_gen, tol)
    _item(report, "(iii) outer, range, null space", [outer, rng, nul])
    return report


def check_unique_projector_solution(
    pair: WeightedPair,
    member,
    Y,
    tol: ToleranceConfig = DEFAULT_TOL,
    side: str = "left",
) -> VerificationReport:
    """Uniqueness of the weak MPD / DMP inverse among row-space (resp.
    column-space) constrained solutions of the projector equation.

    The uniqueness condition compares Y against an independently computed
    least-squares path through the same projector.
    """
    Y = as_matrix(Y)
    B, W = pair.B, pair.W
    rcond = tol.rank_rtol * max(B.shape)
    report = VerificationReport("thm3.8", tol)
    if side == "left":
        X = _require_left_member(pair, member, tol)
        K = pair.bw_power(pair.k_bw)
        report.merge(oblique_projector_check(B @ Y, K, X @ W, tol), prefix="projector: ")
        r_row = spectral_norm(Y - projector_onto(B.conj().T, tol) @ Y)
        report.add(
            "column space inside row space of B", r_row, _passes(r_row, spectral_norm(Y), tol)
        )
        alt = np.linalg.lstsq(B, B @ Y, rcond=rcond)[0]
        report.add_equation("uniqueness via least squares", Y, alt)
    elif side == "right":
        Z = _require_right_member(pair, member, tol)
        N = pair.wb_power(pair.k_wb)
        report.merge(oblique_projector_check(Y @ B, W @ Z, N, tol), prefix="projector: ")
        r_col = spectral_norm(Y.conj().T - projector_onto(B, tol) @ Y.conj().T)
        report.add(
            "column space inside range of B", r_col, _passes(r_col, spectral_norm(Y), tol)
        )
        alt = np.linalg.lstsq(B.conj().T, (Y @ B).conj().T, rcond=rcond)[0].conj().T
        report.add_equation("uniqueness via least squares", Y, alt)
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return report


def check_mp_drazin_absorption(
    pair: WeightedPair, X, Z, tol: ToleranceConfig = DEFAULT_TOL
) -> VerificationReport:
    """The Moore-Penrose factor in both weak inverses can be replaced by the
    corresponding weighted MPD / DMP inverse."""
    X = _require_left_member(pair, X, tol)
    Z = _require_right_member(pair, Z, tol)
    B, W = pair.B, pair.W
    Bp = mp_inverse(B, tol)
    report = VerificationReport("lem3.10", tol)
    BWXW = B @ W @ X @ W
    report.add_equation(
        "weighted MPD absorbs the MP factor", Bp @ BWXW, w_mpd(pair, tol).value @ BWXW
    )
    WZWB = W @ Z @ W @ B
    report.add_equation(
        "weighted DMP absorbs the MP factor", WZWB @ Bp, WZWB @ w_dmp(pair, tol).value
    )
    return report


def one_inverse_family(
    pair: WeightedPair, U, tol: ToleranceConfig = DEFAULT_TOL, X=None
) -> tuple:
    """Q = B^+ + U (I - K K^+) absorbs like B^+ against the stabilized powers
    and the member-weighted product. Returns (Q, report); the {1}-inverse
    residual of Q itself is reported as a note, not asserted."""
    U = as_matrix(U)
    B, W = pair.B, pair.W
    if U.shape != (pair.n, pair.m):
        raise ValueError(f"U must be {pair.n} x {pair.m}, got {U.shape}")
    if X is None:
        X = w_drazin(pair, tol).value
    X = _require_left_member(pair, X, tol)
    k = pair.k_bw
    Bp = mp_inverse(B, tol)
    K = pair.bw_power(k)
    Q = Bp + U @ (np.eye(pair.m, dtype=complex) - projector_onto(K, tol))
    P1 = pair.bw_power(k + 1)

    report = VerificationReport("thm3.12", tol)
    report.add_equation("power absorption", Q @ P1, Bp @ P1)
    report.add_equation("member product absorption", Q @ B @ W @ X @ W, Bp @ B @ W @ X @ W)
    report.note("inner defect of Q", spectral_norm(B @ Q @ B - B))
    return Q, report


def one_inverse_family_right(
    pair: WeightedPair, U, tol: ToleranceConfig = DEFAULT_TOL, Z=None
) -> tuple:
    """Mirror of the one-sided family: Q = B^+ + (I - N^+ N) U."""
    U = as_matrix(U)
    B, W = pair.B, pair.W
    if U.shape != (pair.n, pair.m):
        raise ValueError(f"U must be {pair.n} x {pair.m}, got {U.shape}")
    if Z is None:
        Z = w_drazin(pair, tol).value
    Z = _require_right_member(pair, Z, tol)
    k = pair.k_wb
    Bp = mp_inverse(B, tol)
    N = pair.wb_power(k)
    Np = mp_inverse(N, tol)
    Q = Bp + (np.eye(pair.n, dtype=complex) - Np @ N) @ U
    P1 = pair.wb_power(k + 1)

    report = VerificationReport("lem3.13", tol)
    report.add_equation("power absorption", P1 @ Q, P1 @ Bp)
    report.add_equation("member product absorption", W @ Z @ W @ B @ Q, W @ Z @ W @ B @ Bp)
    report.note("inner defect of Q", spectral_norm(B @ Q @ B - B))
    return Q, report


def mpd_general_solution(
    pair: WeightedPair, X, Zfree, tol: ToleranceConfig = DEFAULT_TOL
) -> tuple:
    """General solution Y = B^+ + Zfree (I - B W X W) of the power identity
    Y (BW)^(k+1) = B^+ (BW)^(k+1). Returns (Y, report)."""
    X = _require_left_member(pair, X, tol)
    Zfree = as_matrix(Zfree)
    B, W = pair.B, pair.W
    if Zfree.shape != (pair.n, pair.m):
        raise ValueError(f"Zfree must be {pair.n} x {pair.m}, got {Zfree.shape}")
    k = pair.k_bw
    Bp = mp_inverse(B, tol)
    Y = Bp + Zfree @ (np.eye(pair.m, dtype=complex) - B @ W @ X @ W)
    P1 = pair.bw_power(k + 1)

    report = VerificationReport("lem3.14", tol)
    report.add_equation("power identity", Y @ P1, Bp @ P1)
    return Y, report
