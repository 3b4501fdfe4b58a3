import numpy as np
import pytest

from wginv._gen import ex2_matrices, ex2_member
from wginv.matcore import HypothesisError, spectral_norm, weighted_pair
from wginv.orderlaw import (
    commuting_case,
    ex2_case,
    forward_order_minimal,
    forward_order_weak,
    matrix_equation_solution,
    reverse_order_minimal,
    reverse_order_weak,
    reverse_order_weak_mpd,
    rol_case,
    triple_forward,
    triple_reverse,
    wdrazin_order_corollaries,
)
from wginv.winv import _left_member_residual, mrwwd_family
from wginv.matcore import DEFAULT_TOL


def test_fixture_factors_commute_exactly():
    A, B, C, W = ex2_matrices()
    assert spectral_norm(A @ W @ B @ W - B @ W @ A @ W) == 0.0
    assert spectral_norm(A @ W @ C @ W - C @ W @ A @ W) == 0.0
    assert spectral_norm(B @ W @ C @ W - C @ W @ B @ W) == 0.0


def test_fixture_rows_are_left_members():
    # the first-row matrices solve the left power equation of their own
    # factor exactly; they are not right-family members in general
    A, B, C, W = ex2_matrices()
    for F, row in ((A, (1, 2, -1, 3)), (B, (1, 0, 1, 0)), (C, (1, 1, 0, 0))):
        pair = weighted_pair(F, W)
        ok, residual, gap = _left_member_residual(pair, ex2_member(row), DEFAULT_TOL)
        assert ok and residual == 0.0 and gap == 0


def test_fixture_pair_order_laws_exact():
    case = ex2_case(z=(2, -1, 3), y=(1, -2), u=2)
    assert reverse_order_weak(case).worst_residual() == 0.0
    assert forward_order_weak(case).worst_residual() == 0.0
    assert reverse_order_minimal(case).overall
    assert forward_order_minimal(case).overall
    assert reverse_order_minimal(case).worst_residual() <= 1e-12
    assert forward_order_minimal(case).worst_residual() <= 1e-12


def test_fixture_drazin_corollaries():
    case = ex2_case()
    report = wdrazin_order_corollaries(case)
    assert report.overall, report.to_dict()
    notes = dict(report.notes)
    # the reverse product is a member but differs from the product inverse
    assert abs(notes["reverse equality residual"] - np.sqrt(2)) <= 1e-10


def test_fixture_triple_laws():
    case = ex2_case()
    assert triple_reverse(case).overall
    assert triple_forward(case).overall
    assert triple_reverse(case).worst_residual() <= 1e-12


def test_commuting_case_runs_every_pair_law():
    for seed in (0, 1, 2):
        case = commuting_case(5, 4, seed)
        for fn in (
            reverse_order_weak,
            forward_order_weak,
            reverse_order_minimal,
            forward_order_minimal,
            wdrazin_order_corollaries,
        ):
            report = fn(case)
            assert report.overall, (seed, fn.__name__, report.to_dict())
            assert report.worst_residual() <= 1e-9


def test_commuting_case_triple_laws():
    for seed in (0, 3):
        case = commuting_case(6, 5, seed, with_c=True)
        assert triple_reverse(case).overall, seed
        assert triple_forward(case).overall, seed


def test_hypothesis_gate_blocks_broken_flags():
    case = commuting_case(5, 4, 0)
    case.commutation_flags["awbw_commute"] = False
    with pytest.raises(HypothesisError):
        reverse_order_weak(case)


def test_weak_mpd_reverse_law_on_invertible_weight():
    for seed in (0, 1, 2):
        case = rol_case(5, seed)
        report = reverse_order_weak_mpd(case)
        assert report.overall, (seed, report.to_dict())
        assert report.worst_residual() <= 1e-10


def test_weak_mpd_reverse_law_fixture_hypotheses_fail():
    # the integer fixture genuinely breaks two hypotheses; the report stops
    # at the flags and the gated form raises
    case = ex2_case()
    report = reverse_order_weak_mpd(case, require_hypotheses=False)
    assert not report.overall
    by_label = {label: ok for label, _, ok in report.conditions}
    assert by_label["H1 range condition"]
    assert not by_label["H2 weight-row commutation"]
    assert not by_label["H3 mixed commutation"]
    assert by_label["H4 member commutation"]
    # no conclusion rows were evaluated
    assert "factored weak MPD inverse" not in by_label
    with pytest.raises(HypothesisError):
        reverse_order_weak_mpd(case)


def test_matrix_equation_pair_family():
    A, B, C, W = ex2_matrices()
    case = ex2_case()
    member = case.inverses["Y3"] @ W @ case.inverses["Z2"]
    family, report = matrix_equation_solution(A, B, W, member)
    assert report.overall, report.to_dict()
    rng = np.random.default_rng(5)
    for _ in range(3):
        Y = family.member(rng.standard_normal(W.shape))
        assert family.equation_residual(Y) <= 1e-9
    with pytest.raises(ValueError):
        family.member(np.zeros((2, 2)))


def test_matrix_equation_triple_and_custom_rhs():
    A, B, C, W = ex2_matrices()
    case = ex2_case()
    member = case.inverses["U1"] @ W @ case.inverses["Y4"] @ W @ case.inverses["Z3"]
    rng = np.random.default_rng(8)
    R = rng.standard_normal(W.shape)
    family, report = matrix_equation_solution(A, B, W, member, R=R, C=C)
    assert report.overall, report.to_dict()
    assert family.label == "triple"
    Y = family.member(rng.standard_normal(W.shape))
    assert family.equation_residual(Y) <= 1e-9


def test_matrix_equation_rejects_non_member():
    A, B, C, W = ex2_matrices()
    with pytest.raises(HypothesisError):
        matrix_equation_solution(A, B, W, np.ones((5, 4)))
    case = ex2_case()
    member = case.inverses["Y3"] @ W @ case.inverses["Z2"]
    with pytest.raises(ValueError):
        matrix_equation_solution(A, B, W, member, R=np.zeros((2, 2)))


def test_plain_weak_slots_accept_generic_members():
    # the plain order laws need no rank condition: any family member of each
    # factor works in the Z1 / Y2 slots
    case = commuting_case(5, 4, 4)
    pa = weighted_pair(case.A, case.W)
    pb = weighted_pair(case.B, case.W)
    rng = np.random.default_rng(3)
    case.inverses["Z1"] = mrwwd_family(pa).member(rng.standard_normal((5, 4)))
    case.inverses["Y2"] = mrwwd_family(pb).member(rng.standard_normal((5, 4)))
    assert reverse_order_weak(case).overall
    assert forward_order_weak(case).overall
