import math

import numpy as np
import pytest

from isonlcs.errors import TruncationError
from isonlcs.fockspace import TruncatedBasis
from isonlcs.states import canonical_build, fock_state, nlcs_build
from isonlcs.witnesses import (
    a3_parameter,
    amp2_squeeze,
    canonical_number_moments_series,
    expectation,
    mandel_from_moments,
    mandel_g2,
    mean_number,
    moment_matrix,
    moment_set,
    nlcs_moments_series,
    quad_squeeze,
    squeeze_report,
    theta_grid,
)


def test_moment_matrix_shape():
    m = moment_matrix([1.0, 2.0, 3.0, 4.0])
    assert m.shape == (3, 3)
    assert m[0, 0] == 1.0 and m[2, 2] == 4.0


@pytest.mark.parametrize("alpha", [0.5, 1.0, 2 + 1j, 5.0, 10 * np.exp(0.3j)])
def test_moments_matrix_vs_series(basis, ladders, alpha):
    ms = moment_set(nlcs_build(alpha, basis), ladders)
    m_ser, mu_ser = nlcs_moments_series(alpha)
    np.testing.assert_allclose(ms.m, m_ser, rtol=1e-10, atol=1e-14)
    np.testing.assert_allclose(ms.mu, mu_ser, rtol=1e-10, atol=1e-14)


def test_canonical_moments_series(basis, ladders):
    zeta = 1.5 - 0.5j
    s = canonical_build(zeta, basis)
    n1, n2 = canonical_number_moments_series(zeta)
    assert mean_number(s, ladders) == pytest.approx(n1, rel=1e-12)
    assert expectation(s, ladders.number_power(2)).real == pytest.approx(n2, rel=1e-12)
    assert n1 == pytest.approx(abs(zeta) ** 2, rel=1e-12)


def test_a3_fock_and_canonical(basis, ladders):
    fock = a3_parameter(moment_set(fock_state(5, basis), ladders))
    assert fock.value == pytest.approx(-1.0, abs=1e-10)
    assert fock.det_m == pytest.approx(-200.0)
    can = a3_parameter(moment_set(canonical_build(2.0, basis), ladders))
    assert abs(can.value) < 1e-10


def test_a3_nlcs_range(basis, ladders):
    for r in np.linspace(0.5, 10, 12):
        res = a3_parameter(moment_set(nlcs_build(r, basis), ladders))
        assert -1 < res.value < 0


def test_a3_vacuum_degenerate(basis, ladders):
    res = a3_parameter(moment_set(fock_state(0, basis), ladders))
    assert res.degenerate and math.isnan(res.value)


def test_mandel_canonical(basis, ladders):
    q, g2 = mandel_g2(canonical_build(2.0, basis), ladders)
    assert abs(q) < 1e-10 and abs(g2 - 1) < 1e-10


def test_mandel_fock(basis, ladders):
    q, g2 = mandel_g2(fock_state(5, basis), ladders)
    assert q == pytest.approx(-1.0) and g2 == pytest.approx(0.8)
    assert all(math.isnan(v) for v in mandel_g2(fock_state(0, basis), ladders))


def test_mandel_nlcs_matrix_vs_series(basis, ladders):
    alpha = 3.0
    q, g2 = mandel_g2(nlcs_build(alpha, basis), ladders)
    _, mu = nlcs_moments_series(alpha)
    q_s, g2_s = mandel_from_moments(mu[0], mu[1])
    assert q == pytest.approx(q_s, abs=1e-10)
    assert g2 == pytest.approx(g2_s, abs=1e-10)
    assert q < 0


def test_canonical_uncertainties(basis, ladders):
    zeta = 2.0
    rep = squeeze_report(canonical_build(zeta, basis), ladders)
    for v in (rep.var_x, rep.var_p):
        assert abs(v - 0.5) < 1e-10
    for v in (rep.var_X, rep.var_P):
        assert abs(v - (2 * zeta ** 2 + 1)) < 1e-10
    for v in (rep.I1, rep.I2, rep.I3, rep.I4):
        assert abs(v) < 1e-10


def test_squeezing_identities(basis, ladders):
    s = nlcs_build(3 * np.exp(0.4j), basis)
    rep = squeeze_report(s, ladders)
    assert rep.I1 == pytest.approx(2 * rep.var_x - 1, abs=1e-12)
    assert rep.I2 == pytest.approx(2 * rep.var_p - 1, abs=1e-12)
    n1 = mean_number(s, ladders)
    assert rep.I3 == pytest.approx(rep.var_X / 2 - n1 - 0.5, abs=1e-10)
    assert rep.I4 == pytest.approx(rep.var_P / 2 - n1 - 0.5, abs=1e-10)


def test_nlcs_squeezing_scan(basis):
    thetas = theta_grid(720)
    reps = quad_squeeze(5.0, thetas, basis)
    i1 = np.array([r.I1 for r in reps])
    i2 = np.array([r.I2 for r in reps])
    i3 = np.array([r.I3 for r in reps])
    i4 = np.array([r.I4 for r in reps])
    assert i1.min() < 0 and i2.min() < 0
    assert np.ptp(i1 + i2) < 1e-10
    assert np.any(np.sign(i3) != np.sign(i4))
    assert len(amp2_squeeze(5.0, thetas[:3], basis)) == 3


def test_margin_guard():
    b = TruncatedBasis(16)
    with pytest.raises(TruncationError):
        moment_set(fock_state(12, b))
