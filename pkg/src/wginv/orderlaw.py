"""Order laws for products A W B (and A W B W C): when do combinations of
family members of the factors solve the product's power equation, and when do
the weighted Drazin inverses multiply exactly."""

from __future__ import annotations

from dataclasses import dataclass, field

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
    spectral_norm,
    weighted_pair,
)
from ._gen import commuting_products, ex2_matrices, ex2_member, rol_matrices
from .verify import check_mrwwd
from .winv import mrwwd_family, w_drazin, weak_mpd

__all__ = [
    "OrderLawCase",
    "GeneralSolutionFamily",
    "ex2_case",
    "commuting_case",
    "rol_case",
    "reverse_order_weak",
    "forward_order_weak",
    "reverse_order_minimal",
    "forward_order_minimal",
    "wdrazin_order_corollaries",
    "triple_reverse",
    "triple_forward",
    "reverse_order_weak_mpd",
    "matrix_equation_solution",
]


@dataclass
class OrderLawCase:
    """Factors with a shared weight, chosen family members for each factor,
    and the commutation flags the order laws hypothesize.

    Members: Z-slots belong to the first factor A, Y-slots to the second
    factor B, U1 to the third factor C. Z1/Y2 are plain weak members; Z2/Y3
    (aliased Z3/Y4 in the triple laws) carry the rank condition as well.
    """

    W: np.ndarray
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray | None = None
    inverses: dict = field(default_factory=dict)
    commutation_flags: dict = field(default_factory=dict)
    flag_residuals: dict = field(default_factory=dict)


def _set_flag(case: OrderLawCase, name: str, L, R, tol: ToleranceConfig) -> None:
    r = spectral_norm(L @ R - R @ L)
    case.flag_residuals[name] = r
    case.commutation_flags[name] = _passes(r, spectral_norm(L @ R), tol)


def _require_case_flags(case: OrderLawCase, names) -> None:
    bad = []
    for name in names:
        if not case.commutation_flags.get(name, False):
            bad.append(f"{name} (residual {case.flag_residuals.get(name, float('nan')):.3e})")
    if bad:
        raise HypothesisError(f"commutation hypotheses fail: {bad}")


def _populate_flags(case: OrderLawCase, tol: ToleranceConfig) -> None:
    W = case.W
    AW = case.A @ W
    BW = case.B @ W
    inv = case.inverses
    _set_flag(case, "awbw_commute", AW, BW, tol)
    _set_flag(case, "y3w_aw_commute", inv["Y3"] @ W, AW, tol)
    _set_flag(case, "z2w_bw_commute", inv["Z2"] @ W, BW, tol)
    pa = weighted_pair(case.A, W, tol)
    pb = weighted_pair(case.B, W, tol)
    _set_flag(case, "adw_bw_commute", w_drazin(pa, tol).value @ W, BW, tol)
    _set_flag(case, "bdw_aw_commute", w_drazin(pb, tol).value @ W, AW, tol)
    if case.C is not None:
        CW = case.C @ W
        AWBW = AW @ BW
        _set_flag(case, "awcw_commute", AW, CW, tol)
        _set_flag(case, "bwcw_commute", BW, CW, tol)
        _set_flag(case, "u1w_awbw_commute", inv["U1"] @ W, AWBW, tol)
        _set_flag(case, "z3wy4w_cw_commute", inv["Z3"] @ W @ inv["Y4"] @ W, CW, tol)


def ex2_case(
    z=(1, 1, 1), y=(1, 1), u=1, tol: ToleranceConfig = DEFAULT_TOL
) -> OrderLawCase:
    """The integer fixture case: members are first-row matrices whose free
    entries are exactly the given parameters."""
    A, B, C, W = ex2_matrices()
    Z2 = ex2_member((1, z[0], z[1], z[2]))
    Y3 = ex2_member((1, y[0], 0, y[1]))
    U1 = ex2_member((1, u, 0, 0))
    case = OrderLawCase(
        W=W,
        A=A,
        B=B,
        C=C,
        inverses={"Z1": Z2, "Y2": Y3, "Z2": Z2, "Y3": Y3, "Z3": Z2, "Y4": Y3, "U1": U1},
    )
    _populate_flags(case, tol)
    return case


def commuting_case(
    m: int,
    n: int,
    seed,
    with_c: bool = False,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> OrderLawCase:
    """Random case whose products all commute by construction.

    The rank-constrained member slots carry the weighted Drazin inverses (so
    the member commutation hypotheses hold structurally); the plain weak
    slots draw random members from the factor families.
    """
    W, mats = commuting_products(m, n, seed, count=3 if with_c else 2)
    A, B = mats[0], mats[1]
    C = mats[2] if with_c else None
    rng = np.random.default_rng([0 if seed is None else seed, 17])

    pa = weighted_pair(A, W, tol)
    pb = weighted_pair(B, W, tol)
    ZD = w_drazin(pa, tol).value
    YD = w_drazin(pb, tol).value
    # plain weak slots: any member of the factor's own family works, and the
    # power equations transport to the shared stabilization power
    Z1 = mrwwd_family(pa, tol).member(0.3 * rng.standard_normal((m, n)))
    Y2 = mrwwd_family(pb, tol).member(0.3 * rng.standard_normal((m, n)))

    inverses = {"Z1": Z1, "Y2": Y2, "Z2": ZD, "Y3": YD, "Z3": ZD, "Y4": YD}
    if with_c:
        pc = weighted_pair(C, W, tol)
        inverses["U1"] = w_drazin(pc, tol).value

    case = OrderLawCase(W=W, A=A, B=B, C=C, inverses=inverses)
    _populate_flags(case, tol)
    return case


def rol_case(n: int, seed, tol: ToleranceConfig = DEFAULT_TOL) -> OrderLawCase:
    """Square invertible-weight case for the weak MPD reverse order law, with
    weighted Drazin members in the rank-constrained slots."""
    W, A, B = rol_matrices(n, seed)
    pa = weighted_pair(A, W, tol)
    pb = weighted_pair(B, W, tol)
    ZD = w_drazin(pa, tol).value
    YD = w_drazin(pb, tol).value
    case = OrderLawCase(
        W=W,
        A=A,
        B=B,
        inverses={"Z1": ZD, "Y2": YD, "Z2": ZD, "Y3": YD, "Z3": ZD, "Y4": YD},
    )
    _populate_flags(case, tol)
    return case


def _pair_product(case: OrderLawCase, tol: ToleranceConfig) -> tuple:
    """Product pair for A W B along with the shared stabilization power."""
    ppair = weighted_pair(case.A @ case.W @ case.B, case.W, tol)
    pa = weighted_pair(case.A, case.W, tol)
    pb = weighted_pair(case.B, case.W, tol)
    k = max(pa.k_bw, pb.k_bw, ppair.k_bw)
    return ppair, k


def _triple_product(case: OrderLawCase, tol: ToleranceConfig) -> tuple:
    if case.C is None:
        raise ValueError("this order law needs a third factor C")
    W = case.W
    ppair = weighted_pair(case.A @ W @ case.B @ W @ case.C, W, tol)
    pa = weighted_pair(case.A, W, tol)
    pb = weighted_pair(case.B, W, tol)
    pc = weighted_pair(case.C, W, tol)
    k = max(pa.k_bw, pb.k_bw, pc.k_bw, ppair.k_bw)
    return ppair, k


def reverse_order_weak(case: OrderLawCase, tol: ToleranceConfig = DEFAULT_TOL) -> VerificationReport:
    """Y2 W Z1 solves the product's power equation (no rank condition)."""
    _require_case_flags(case, ["awbw_commute"])
    ppair, k = _pair_product(case, tol)
    P = case.inverses["Y2"] @ case.W @ case.inverses["Z1"]
    report = VerificationReport("thm3.25", tol)
    report.add_equation(
        "power equation for the reverse product",
        P @ case.W @ ppair.bw_power(k + 1),
        ppair.bw_power(k),
    )
    report.note("stabilization power", float(k))
    return report


def forward_order_weak(case: OrderLawCase, tol: ToleranceConfig = DEFAULT_TOL) -> VerificationReport:
    """Z1 W Y2 solves the same power equation."""
    _require_case_flags(case, ["awbw_commute"])
    ppair, k = _pair_product(case, tol)
    P = case.inverses["Z1"] @ case.W @ case.inverses["Y2"]
    report = VerificationReport("thm3.26", tol)
    report.add_equation(
        "power equation for the forward product",
        P @ case.W @ ppair.bw_power(k + 1),
        ppair.bw_power(k),
    )
    report.note("stabilization power", float(k))
    return report


def reverse_order_minimal(case: OrderLawCase, tol: ToleranceConfig = DEFAULT_TOL) -> VerificationReport:
    """Y3 W Z2 is a full member of the product's solution family."""
    _require_case_flags(case, ["awbw_commute", "y3w_aw_commute"])
    ppair, k = _pair_product(case, tol)
    P = case.inverses["Y3"] @ case.W @ case.inverses["Z2"]
    report = VerificationReport("thm3.27", tol)
    report.merge(check_mrwwd(ppair, P, tol, power=k), prefix="product member: ")
    report.note("stabilization power", float(k))
    return report


def forward_order_minimal(case: OrderLawCase, tol: ToleranceConfig = DEFAULT_TOL) -> VerificationReport:
    """Z2 W Y3 is a full member of the product's solution family."""
    _require_case_flags(case, ["awbw_commute", "z2w_bw_commute"])
    ppair, k = _pair_product(case, tol)
    P = case.inverses["Z2"] @ case.W @ case.inverses["Y3"]
    report = VerificationReport("thm3.28", tol)
    report.merge(check_mrwwd(ppair, P, tol, power=k), prefix="product member: ")
    report.note("stabilization power", float(k))
    return report


def wdrazin_order_corollaries(case: OrderLawCase, tol: ToleranceConfig = DEFAULT_TOL) -> VerificationReport:
    """Weighted Drazin order laws: the forward product equals the product's
    weighted Drazin inverse exactly; the reverse product is a family member
    but generally differs from it, so only membership is asserted and the
    equality residual is reported as a note."""
    ppair, k = _pair_product(case, tol)
    W = case.W
    ADW = w_drazin(weighted_pair(case.A, W, tol), tol).value
    BDW = w_drazin(weighted_pair(case.B, W, tol), tol).value
    product_drazin = w_drazin(ppair, tol).value

    report = VerificationReport("thm3.29", tol)
    _require_case_flags(case, ["adw_bw_commute"])
    report.add_equation("forward product equals the product inverse", ADW @ W @ BDW, product_drazin)
    _require_case_flags(case, ["bdw_aw_commute"])
    reverse = BDW @ W @ ADW
    report.merge(check_mrwwd(ppair, reverse, tol, power=k), prefix="reverse product member: ")
    report.note(
        "reverse equality residual", spectral_norm(reverse - product_drazin)
    )
    return report


def triple_reverse(case: OrderLawCase, tol: ToleranceConfig = DEFAULT_TOL) -> VerificationReport:
    """U1 W Y4 W Z3 is a member of the triple product's family; the weighted
    Drazin specialization is appended when its hypotheses hold."""
    _require_case_flags(
        case, ["awbw_commute", "awcw_commute", "bwcw_commute", "u1w_awbw_commute"]
    )
    ppair, k = _triple_product(case, tol)
    W = case.W
    inv = case.inverses
    P = inv["U1"] @ W @ inv["Y4"] @ W @ inv["Z3"]
    report = VerificationReport("thm3.31", tol)
    report.merge(check_mrwwd(ppair, P, tol, power=k), prefix="product member: ")

    ADW = w_drazin(weighted_pair(case.A, W, tol), tol).value
    BDW = w_drazin(weighted_pair(case.B, W, tol), tol).value
    CDW = w_drazin(weighted_pair(case.C, W, tol), tol).value
    rev = CDW @ W @ BDW @ W @ ADW
    commute = spectral_norm(
        (CDW @ W) @ (case.A @ W @ case.B @ W) - (case.A @ W @ case.B @ W) @ (CDW @ W)
    )
    if _passes(commute, spectral_norm(CDW @ W @ case.A @ W @ case.B @ W), tol):
        report.merge(check_mrwwd(ppair, rev, tol, power=k), prefix="Drazin reverse member: ")
    else:
        report.note("Drazin reverse commutation residual (hypothesis fails)", commute)
    report.note(
        "Drazin reverse equality residual",
        spectral_norm(rev - w_drazin(ppair, tol).value),
    )
    return report


def triple_forward(case: OrderLawCase, tol: ToleranceConfig = DEFAULT_TOL) -> VerificationReport:
    """Z3 W Y4 W U1 is a member of the triple product's family; the forward
    weighted Drazin product equals the product inverse when the factor
    inverses commute with the remaining product."""
    _require_case_flags(
        case, ["awbw_commute", "awcw_commute", "bwcw_commute", "z3wy4w_cw_commute"]
    )
    ppair, k = _triple_product(case, tol)
    W = case.W
    inv = case.inverses
    P = inv["Z3"] @ W @ inv["Y4"] @ W @ inv["U1"]
    report = VerificationReport("thm3.32", tol)
    report.merge(check_mrwwd(ppair, P, tol, power=k), prefix="product member: ")

    ADW = w_drazin(weighted_pair(case.A, W, tol), tol).value
    BDW = w_drazin(weighted_pair(case.B, W, tol), tol).value
    CDW = w_drazin(weighted_pair(case.C, W, tol), tol).value
    fwd = ADW @ W @ BDW @ W @ CDW
    commute = spectral_norm(
        (ADW @ W @ BDW @ W) @ (case.C @ W) - (case.C @ W) @ (ADW @ W @ BDW @ W)
    )
    if _passes(commute, spectral_norm(ADW @ W @ BDW @ W @ case.C @ W), tol):
        report.add_equation(
            "forward Drazin product equals the product inverse",
            fwd,
            w_drazin(ppair, tol).value,
        )
    else:
        report.note("Drazin forward commutation residual (hypothesis fails)", commute)
    return report


def reverse_order_weak_mpd(
    case: OrderLawCase,
    tol: ToleranceConfig = DEFAULT_TOL,
    require_hypotheses: bool = True,
) -> VerificationReport:
    """Reverse order law for the weak MPD inverse itself: under four
    subspace/commutation hypotheses, the weak MPD inverse of A W B at member
    Y3 W Z2 factors as (weak MPD of B) W^+ (weak MPD of A).

    With require_hypotheses=False the hypotheses are reported as conditions
    and the conclusion is evaluated only if they all hold.
    """
    A, B, W = case.A, case.B, case.W
    Y3, Z2 = case.inverses["Y3"], case.inverses["Z2"]
    Wp = mp_inverse(W, tol)
    Ap = mp_inverse(A, tol)

    report = VerificationReport("thm3.30", tol)
    T = W @ B @ B.conj().T @ W.conj().T @ A.conj().T
    r_h1 = spectral_norm(T - (Ap @ A) @ T)
    report.add("H1 range condition", r_h1, _passes(r_h1, spectral_norm(T), tol))
    L2, R2 = Wp @ W, B @ B.conj().T
    report.add_equation("H2 weight-row commutation", L2 @ R2, R2 @ L2)
    L3, R3 = Wp @ Ap, B @ W @ Y3 @ W
    report.add_equation("H3 mixed commutation", L3 @ R3, R3 @ L3)
    L4, R4 = A @ W, Y3 @ W
    report.add_equation("H4 member commutation", L4 @ R4, R4 @ L4)

    hyps_ok = report.overall
    if not hyps_ok:
        if require_hypotheses:
            raise HypothesisError("weak MPD reverse order law hypotheses fail")
        return report

    ppair = weighted_pair(A @ W @ B, W, tol)
    pa = weighted_pair(A, W, tol)
    pb = weighted_pair(B, W, tol)
    product_member = Y3 @ W @ Z2
    lhs = weak_mpd(ppair, product_member, tol).value
    B_wmpd = weak_mpd(pb, Y3, tol).value
    A_wmpd = weak_mpd(pa, Z2, tol).value
    report.add_equation("factored weak MPD inverse", lhs, B_wmpd @ Wp @ A_wmpd)
    report.note(
        "unweighted factoring residual",
        spectral_norm(lhs - B_wmpd @ A @ A_wmpd),
    )
    return report


@dataclass(frozen=True)
class GeneralSolutionFamily:
    """Affine solution set member(Zfree) = particular + Zfree @ annihilator of
    the one-sided equation Y @ power_matrix = rhs."""

    particular: np.ndarray
    annihilator: np.ndarray
    power_matrix: np.ndarray
    rhs: np.ndarray
    label: str

    def member(self, Zfree) -> np.ndarray:
        Zfree = as_matrix(Zfree)
        if Zfree.shape != self.particular.shape:
            raise ValueError(
                f"free parameter shape {Zfree.shape} != {self.particular.shape}"
            )
        return self.particular + Zfree @ self.annihilator

    def equation_residual(self, Y) -> float:
        return spectral_norm(as_matrix(Y) @ self.power_matrix - self.rhs)


def matrix_equation_solution(
    A,
    B,
    W,
    member,
    R=None,
    Zfree=None,
    C=None,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> tuple:
    """General solution of Y (product W)^(k+1) = R (product W)^k, where the
    product is A W B (or A W B W C) and `member` belongs to the product's
    family at the shared stabilization power.

    Returns (family, report). R defaults to the weight itself.
    """
    A = as_matrix(A)
    B = as_matrix(B)
    W = as_matrix(W)
    member = as_matrix(member)
    label = "pair" if C is None else "triple"
    if C is None:
        product = A @ W @ B
        factors = [A, B]
    else:
        C = as_matrix(C)
        product = A @ W @ B @ W @ C
        factors = [A, B, C]
    ppair = weighted_pair(product, W, tol)
    k = max(
        [weighted_pair(F, W, tol).k_bw for F in factors] + [ppair.k_bw]
    )
    Pk = ppair.bw_power(k)
    Pk1 = ppair.bw_power(k + 1)

    r_member = spectral_norm(member @ W @ Pk1 - Pk)
    if not _passes(r_member, spectral_norm(Pk), tol):
        raise HypothesisError(
            f"member fails the product power equation (residual {r_member:.3e})"
        )

    n, m = W.shape
    R = W.copy() if R is None else as_matrix(R)
    if R.shape != (n, m):
        raise ValueError(f"R must be {n} x {m}, got {R.shape}")
    Zfree = np.zeros((n, m), dtype=complex) if Zfree is None else as_matrix(Zfree)
    if Zfree.shape != (n, m):
        raise ValueError(f"Zfree must be {n} x {m}, got {Zfree.shape}")

    annihilator = np.eye(m, dtype=complex) - product @ W @ member @ W
    family = GeneralSolutionFamily(
        particular=R @ member @ W,
        annihilator=annihilator,
        power_matrix=Pk1,
        rhs=R @ Pk,
        label=label,
    )

    report = VerificationReport("mateq-pair" if C is None else "mateq-triple", tol)
    report.add_equation(
        "particular solution", family.particular @ Pk1, family.rhs
    )
    report.add_equation(
        "free member solution", family.member(Zfree) @ Pk1, family.rhs
    )
    report.add_equation(
        "annihilator kills the powers", annihilator @ Pk1, np.zeros_like(Pk1)
    )
    report.note("stabilization power", float(k))
    return family, report
