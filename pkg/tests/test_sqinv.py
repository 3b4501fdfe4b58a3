import numpy as np
import pytest

from wginv.matcore import CertificationError, index_of, spectral_norm
from wginv.sqinv import core_ep, drazin, m_wgi
from wginv._gen import random_square_with_index

# S is idempotent-like (S^2 = S), so its Drazin inverse is S itself and the
# core-EP inverse is the projector onto its range.
S_IDEM = np.array([[1.0, 1.0], [0.0, 0.0]])

# index-2 upper triangular with hand-computed Drazin inverse
J = np.array([[2.0, 1.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]])
J_DRAZIN = np.array([[0.5, 0.25, 0.125], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]])


def test_drazin_oracles():
    res = drazin(S_IDEM)
    assert res.index_used == 1
    assert np.allclose(res.value, S_IDEM, atol=1e-12)

    res = drazin(J)
    assert res.index_used == 2
    assert np.allclose(res.value, J_DRAZIN, atol=1e-12)

    A = np.array([[2.0, 1.0], [1.0, 1.0]])
    assert np.allclose(drazin(A).value, np.linalg.inv(A), atol=1e-12)

    N = np.eye(3, k=1)
    assert np.allclose(drazin(N).value, 0.0, atol=1e-14)


def test_drazin_defining_equations_random():
    for i in range(20):
        rng = np.random.default_rng([41, i])
        n = int(rng.integers(3, 8))
        t = int(rng.integers(0, min(3, n - 1) + 1))
        A = random_square_with_index(n, t, rng)
        k = index_of(A)
        assert k == t
        D = drazin(A).value
        scale = 1.0 + spectral_norm(A) ** (k + 1)
        assert spectral_norm(D @ A @ D - D) <= 1e-9 * (1.0 + spectral_norm(D))
        assert spectral_norm(A @ D - D @ A) <= 1e-9 * scale
        Ak = np.linalg.matrix_power(A, k)
        assert spectral_norm(Ak @ A @ D - Ak) <= 1e-9 * scale


def test_core_ep_oracle_and_projector_property():
    res = core_ep(S_IDEM)
    assert np.allclose(res.value, [[1.0, 0.0], [0.0, 0.0]], atol=1e-12)
    for i in range(10):
        rng = np.random.default_rng([43, i])
        A = random_square_with_index(5, 2, rng)
        C = core_ep(A).value
        # outer inverse whose product with A is an orthogonal projector
        assert spectral_norm(C @ A @ C - C) <= 1e-9 * (1.0 + spectral_norm(C))
        P = A @ C
        assert spectral_norm(P - P.conj().T) <= 1e-9 * (1.0 + spectral_norm(P))
        assert spectral_norm(P @ P - P) <= 1e-9 * (1.0 + spectral_norm(P))


def test_m_wgi_values_and_m_validation():
    assert np.allclose(m_wgi(S_IDEM, 1).value, S_IDEM, atol=1e-12)
    assert np.allclose(m_wgi(S_IDEM, 2).value, S_IDEM, atol=1e-12)
    with pytest.raises(ValueError):
        m_wgi(S_IDEM, 0)


def test_square_input_required():
    with pytest.raises(Exception):
        drazin(np.ones((2, 3)))


def test_certification_failure_reports_worst_condition():
    # a certification failure must name the offending equation, which we can
    # force with tolerances too tight for honest floating point
    from wginv.matcore import ToleranceConfig

    rng = np.random.default_rng(7)
    A = random_square_with_index(6, 2, rng)
    tight = ToleranceConfig(rank_rtol=1e-10, residual_atol=1e-300)
    with pytest.raises(CertificationError):
        drazin(A, tight)
