import numpy as np
import pytest

from wginv._gen import ex1_member, ex1_pair, random_pair
from wginv.matcore import HypothesisError, mp_inverse, spectral_norm
from wginv.verify import (
    check_dmp_characterizations,
    check_mp_drazin_absorption,
    check_mpd_characterizations,
    check_mrwwd,
    check_mrwwd_right,
    check_projectors,
    check_projectors_right,
    check_unique_projector_solution,
    check_wdrazin_specialization,
    check_weak_dmp_system,
    check_weak_mpd_system,
    mpd_general_solution,
    one_inverse_family,
    one_inverse_family_right,
)
from wginv.winv import (
    mrwwd_family,
    mrwwd_right_family,
    w_drazin,
    weak_dmp,
    weak_mpd,
)


def _bump(A, rng):
    G = rng.standard_normal(A.shape)
    return A + 0.05 * max(1.0, spectral_norm(A)) * G / spectral_norm(G)


def _case(i):
    rng = np.random.default_rng([97, i])
    m = int(rng.integers(3, 8))
    n = int(rng.integers(3, 8))
    t = min(int(rng.integers(1, 4)), min(m, n) - 1)
    pair = random_pair(m, n, t, rng)
    X = mrwwd_family(pair).member(0.5 * rng.standard_normal((m, n)))
    Z = mrwwd_right_family(pair).member(0.5 * rng.standard_normal((m, n)))
    return pair, X, Z, rng


def test_left_membership_accepts_and_rejects_uniformly():
    pair = ex1_pair()
    good = check_mrwwd(pair, ex1_member(2, -1))
    assert good.overall
    assert len(good.conditions) == 7
    rng = np.random.default_rng(3)
    bad = check_mrwwd(pair, _bump(ex1_member(2, -1), rng))
    # every characterization is equivalent: a non-member must fail all seven
    assert all(not ok for _, _, ok in bad.conditions)


def test_right_membership_accepts_and_rejects_uniformly():
    for i in range(4):
        pair, _, Z, rng = _case(i)
        good = check_mrwwd_right(pair, Z)
        assert good.overall, good.to_dict()
        bad = check_mrwwd_right(pair, _bump(Z, rng))
        assert all(not ok for _, _, ok in bad.conditions), i


def test_membership_at_higher_power_still_holds():
    # the power equation transports upward: a member at the pair's own index
    # stays a member when checked at any larger power
    pair, X, Z, _ = _case(1)
    up = check_mrwwd(pair, X, power=pair.k_bw + 2)
    assert up.overall
    up_r = check_mrwwd_right(pair, Z, power=pair.k_wb + 2)
    assert up_r.overall


def test_weak_mpd_system_closed_form():
    pair = ex1_pair()
    X = ex1_member(-1, 4)
    Y = weak_mpd(pair, X).value
    report = check_weak_mpd_system(pair, X, Y)
    assert report.overall, report.to_dict()
    # the system pins Y down: any other candidate breaks uniqueness
    Bp = mp_inverse(pair.B)
    report_bad = check_weak_mpd_system(pair, X, Bp)
    assert not report_bad.overall


def test_weak_dmp_system_closed_form():
    pair, _, Z, _ = _case(2)
    Y1 = weak_dmp(pair, Z).value
    report = check_weak_dmp_system(pair, Z, Y1)
    assert report.overall, report.to_dict()


def test_mpd_characterizations_random():
    for i in range(6):
        pair, X, _, rng = _case(i)
        Y = weak_mpd(pair, X).value
        report = check_mpd_characterizations(pair, X, Y)
        assert report.overall, (i, report.to_dict())
        bad = check_mpd_characterizations(pair, X, _bump(Y, rng))
        assert all(not ok for _, _, ok in bad.conditions), i


def test_dmp_characterizations_random():
    for i in range(6):
        pair, _, Z, rng = _case(i)
        Y1 = weak_dmp(pair, Z).value
        report = check_dmp_characterizations(pair, Z, Y1)
        assert report.overall, (i, report.to_dict())
        bad = check_dmp_characterizations(pair, Z, _bump(Y1, rng))
        assert all(not ok for _, _, ok in bad.conditions), i


def test_wdrazin_specialization_collapses_to_weighted_mpd():
    for i in range(4):
        pair, _, _, _ = _case(i)
        report = check_wdrazin_specialization(pair)
        assert report.overall, (i, report.to_dict())


def test_projector_geometry_both_sides():
    for i in range(4):
        pair, X, Z, _ = _case(i)
        left = check_projectors(pair, X)
        assert left.overall, (i, left.to_dict())
        right = check_projectors_right(pair, Z)
        assert right.overall, (i, right.to_dict())


def test_projector_geometry_requires_membership():
    pair = ex1_pair()
    with pytest.raises(HypothesisError):
        check_projectors(pair, np.ones((5, 4)))
    with pytest.raises(HypothesisError):
        check_projectors_right(pair, np.ones((5, 4)))


def test_unique_projector_solution_left_and_right():
    for i in range(4):
        pair, X, Z, _ = _case(i)
        Y = weak_mpd(pair, X).value
        rep = check_unique_projector_solution(pair, X, Y, side="left")
        assert rep.overall, (i, rep.to_dict())
        Y1 = weak_dmp(pair, Z).value
        rep = check_unique_projector_solution(pair, Z, Y1, side="right")
        assert rep.overall, (i, rep.to_dict())
    with pytest.raises(ValueError):
        check_unique_projector_solution(pair, X, Y, side="middle")


def test_mp_drazin_absorption():
    for i in range(4):
        pair, X, Z, _ = _case(i)
        report = check_mp_drazin_absorption(pair, X, Z)
        assert report.overall, (i, report.to_dict())


def test_one_inverse_families_absorb_like_mp():
    for i in range(4):
        pair, X, Z, rng = _case(i)
        U = rng.standard_normal((pair.n, pair.m))
        Q, rep = one_inverse_family(pair, U, X=X)
        assert rep.overall, (i, rep.to_dict())
        assert Q.shape == (pair.n, pair.m)
        # generic U leaves an inner defect; it is noted, never asserted
        labels = [label for label, _ in rep.notes]
        assert "inner defect of Q" in labels
        Qr, rep_r = one_inverse_family_right(pair, U, Z=Z)
        assert rep_r.overall, (i, rep_r.to_dict())
    with pytest.raises(ValueError):
        one_inverse_family(pair, np.zeros((2, 2)))


def test_mpd_general_solution_power_identity():
    for i in range(4):
        pair, X, _, rng = _case(i)
        Zfree = rng.standard_normal((pair.n, pair.m))
        Y, rep = mpd_general_solution(pair, X, Zfree)
        assert rep.overall, (i, rep.to_dict())
    with pytest.raises(ValueError):
        mpd_general_solution(pair, X, np.zeros((2, 2)))


def test_drazin_member_reproduces_weighted_inverses():
    pair = ex1_pair()
    Xd = w_drazin(pair).value
    Y = weak_mpd(pair, Xd).value
    Y1 = weak_dmp(pair, Xd).value
    rep = check_mpd_characterizations(pair, Xd, Y)
    assert rep.overall
    rep = check_dmp_characterizations(pair, Xd, Y1)
    assert rep.overall
