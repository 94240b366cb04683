import numpy as np
import pytest

from isonlcs.errors import DomainError, UsageError
from isonlcs.fockspace import (
    SELECTORS,
    OperatorMatrix,
    TruncatedBasis,
    algebra_report,
    algebra_residual,
    build_deformed_ladders,
    build_rescaled_ladders,
    build_undeformed_ladders,
    casimir_h,
    casimir_value,
    deformation_f,
    rescaling_F,
)


def test_basis_shape():
    b = TruncatedBasis(10)
    assert b.dim == 11
    assert b.levels()[0] == 3 and b.levels()[-1] == 13
    assert len(b.interior()) == 7
    with pytest.raises(DomainError):
        TruncatedBasis(5)


def test_deformation_function():
    assert deformation_f(3) == 0.0
    assert deformation_f(4) == pytest.approx(np.sqrt(3.0))
    assert deformation_f(5) == pytest.approx(np.sqrt(8.0))


def test_deformed_ladder_elements(small_basis):
    n_minus, n_plus, n_zero = build_deformed_ladders(small_basis)
    # physical n -> n-1 with sqrt(n (n-1) (n-3))
    for j in range(1, 10):
        n = j + 3
        assert n_minus.entries[j - 1, j].real == pytest.approx(np.sqrt(n * (n - 1) * (n - 3)))
        assert n_plus.entries[j, j - 1].real == pytest.approx(np.sqrt(n * (n - 1) * (n - 3)))
    assert np.all(n_minus.entries[:, 0] == 0)
    np.testing.assert_array_equal(n_zero.diagonal().real, small_basis.levels())
    assert np.allclose(n_plus.entries, n_minus.dag().entries)


def test_undeformed_ladders(small_basis):
    a, ad = build_undeformed_ladders(small_basis)
    assert a.entries[0, 1].real == pytest.approx(2.0)
    assert np.allclose(ad.entries, a.dag().entries)


def test_rescaling_F():
    n = np.arange(3, 30)
    np.testing.assert_allclose(rescaling_F(n), 1.0 / (n * (n + 1)))
    with pytest.raises(DomainError):
        rescaling_F(2)


def test_case_iii_is_shifted_boson(small_basis):
    k_minus, k_plus, k_zero = build_rescaled_ladders(small_basis, "iii")
    j = np.arange(1, small_basis.dim)
    np.testing.assert_allclose(np.diag(k_minus.entries, 1).real, np.sqrt(j), rtol=1e-14)
    np.testing.assert_allclose(np.diag(k_plus.entries, -1).real, np.sqrt(j), rtol=1e-14)
    np.testing.assert_allclose(k_zero.diagonal().real, np.arange(small_basis.dim), atol=1e-13)


def test_case_i_element(small_basis):
    _, cal_plus, _ = build_rescaled_ladders(small_basis, "i")
    assert cal_plus.entries[1, 0].real == pytest.approx(np.sqrt(3.0) / 6.0)
    with pytest.raises(DomainError):
        build_rescaled_ladders(small_basis, "iv")


def test_operator_algebra(small_basis):
    n_minus, n_plus, _ = build_deformed_ladders(small_basis)
    prod = n_plus @ n_minus
    assert np.allclose(prod.entries, n_plus.entries @ n_minus.entries)
    assert np.allclose((n_plus + n_minus - n_minus).entries, n_plus.entries)
    assert np.allclose((2 * n_plus).entries, 2 * n_plus.entries)
    assert np.allclose(n_plus.power(3).entries, np.linalg.matrix_power(n_plus.entries, 3))
    other = OperatorMatrix(np.eye(TruncatedBasis(12).dim), TruncatedBasis(12))
    with pytest.raises(UsageError):
        n_plus @ other


def test_casimir_function():
    n = np.arange(3, 50, dtype=float)
    np.testing.assert_allclose(casimir_h(n), 2.5 * n * (n + 1) - n * (n + 1) * (n + 0.5))


def test_casimir_identically_zero(basis):
    left, right = casimir_value(basis)
    assert np.max(np.abs(left)) < 1e-10
    assert np.max(np.abs(right)) < 1e-10
    assert np.max(np.abs(left - right)) < 1e-10


@pytest.mark.parametrize("which", SELECTORS)
def test_algebra_residuals_small_basis(small_basis, which):
    assert algebra_residual(small_basis, which) < 1e-12


def test_algebra_report_full_basis(basis):
    report = algebra_report(basis)
    assert set(report) == set(SELECTORS)
    for name, value in report.items():
        assert value < 1e-10, name


def test_double_precision_floor_is_visible(basis):
    # double rounding of the O(1e7) products alone exceeds 1e-10 near n = 200
    assert algebra_residual(basis, "QUAD", dtype=complex) > algebra_residual(basis, "QUAD")


def test_unknown_selector(small_basis):
    with pytest.raises(DomainError):
        algebra_residual(small_basis, "NOPE")
