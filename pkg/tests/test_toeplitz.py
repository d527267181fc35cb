import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gapscale.errors import DomainError, PivotFailure, RecursionBreakdown
from gapscale.sets import ArcSet, IntervalSet
from gapscale.toeplitz import (
    cd_kernel,
    diff_identity_check,
    fredholm_limit_gap,
    limit_arcs,
    log_toeplitz_det_chol,
    log_toeplitz_dets_levinson,
    log_toeplitz_det_szego,
    orthonormal_poly_eval,
    symbol_coefficients,
    toeplitz_matrix,
)

ONE_ARC = ArcSet.one_arc(1.0, -1.0)
# 300-digit Levinson recursion on exact moments
LOGD_ONE_ARC_300 = -11754.262294058291
LOGD_ONE_ARC_100 = -1307.2483975650973
TWO_ARCS = ArcSet(((0.1, 2.9), (3.1, 2 * math.pi - 0.15)))
LOGD_TWO_ARCS_120 = -48.049279864765566
# nearly the full circle: the Toeplitz matrix is well conditioned
WIDE = ArcSet(((0.05, 3.0), (3.1, 2 * math.pi - 0.05)))


@pytest.mark.parametrize("k", [0, 1, 2, 7, -3])
def test_symbol_coefficients_against_quadrature(k):
    want = 0
    for a, b in TWO_ARCS.arcs:
        want += mpmath.quad(lambda t: mpmath.expj(-k * t), [a, b]) / (2 * mpmath.pi)
    assert symbol_coefficients(TWO_ARCS, k) == pytest.approx(complex(want), abs=1e-15)


def test_toeplitz_matrix_hermitian():
    T = toeplitz_matrix(TWO_ARCS, 6)
    np.testing.assert_allclose(T, T.conj().T, atol=0)
    assert T[0, 0] == pytest.approx(TWO_ARCS.measure / (2 * math.pi))


def test_full_circle_is_identity():
    J = ArcSet.full_circle()
    assert abs(log_toeplitz_det_szego(J, 50).log_det) < 1e-12
    assert abs(log_toeplitz_det_chol(J, 20)) < 1e-13


def test_szego_against_mp_levinson():
    data = log_toeplitz_det_szego(ONE_ARC, 300)
    assert data.log_det == pytest.approx(LOGD_ONE_ARC_300, rel=1e-12)
    assert data.log_dets[99] == pytest.approx(LOGD_ONE_ARC_100, rel=1e-12)
    assert log_toeplitz_det_szego(TWO_ARCS, 120).log_det == pytest.approx(LOGD_TWO_ARCS_120, rel=1e-12)


def test_mp_levinson_small():
    v = log_toeplitz_dets_levinson(ONE_ARC, 100, dps=120)
    assert v[-1] == pytest.approx(LOGD_ONE_ARC_100, rel=1e-14)


@pytest.mark.parametrize("n", [10, 60, 200])
def test_dual_algorithms_agree(n):
    chol = log_toeplitz_det_chol(WIDE, n)
    szego = log_toeplitz_det_szego(WIDE, n).log_det
    lev = log_toeplitz_dets_levinson(WIDE, n)[-1]
    assert chol == pytest.approx(szego, abs=1e-8)
    assert lev == pytest.approx(szego, abs=1e-8)


def test_ill_conditioned_failures_are_reported():
    with pytest.raises(PivotFailure) as exc:
        log_toeplitz_det_chol(ONE_ARC, 60)
    assert exc.value.smallest_pivot < 1e-10
    with pytest.raises(RecursionBreakdown):
        log_toeplitz_dets_levinson(ONE_ARC, 80)


def test_orthonormality_on_arcs():
    data = log_toeplitz_det_szego(TWO_ARCS, 30)
    # independent fine rule on each arc
    nodes, weights = [], []
    for a, b in TWO_ARCS.arcs:
        x, w = np.polynomial.legendre.leggauss(200)
        nodes.append(0.5 * (a + b) + 0.5 * (b - a) * x)
        weights.append(0.5 * (b - a) * w / (2 * math.pi))
    t, w = np.concatenate(nodes), np.concatenate(weights)
    z = np.exp(1j * t)
    P = np.array([data.eval(j, z) for j in range(31)])
    G = (P * w) @ P.conj().T
    np.testing.assert_allclose(G, np.eye(31), atol=1e-11)


def test_leading_coefficients_and_horner():
    data = log_toeplitz_det_szego(TWO_ARCS, 20)
    z = np.exp(1j * np.linspace(0, 6, 5)) * 0.9
    for j in (0, 3, 20):
        np.testing.assert_allclose(data.eval_horner(j, z), data.eval(j, z), rtol=1e-10)
        np.testing.assert_allclose(orthonormal_poly_eval(data, j, z), data.eval(j, z), rtol=1e-10)
        assert data.coeff_table[j][-1].real == pytest.approx(data.chi[j], rel=1e-12)
    # D_n = prod chi_j^{-2}
    assert data.log_det == pytest.approx(-2 * np.sum(data.log_chi[:20]), rel=1e-13)
    with pytest.raises(DomainError):
        data.eval(21, 1.0)


def test_derivative_by_complex_step():
    data = log_toeplitz_det_szego(TWO_ARCS, 12)
    z = 0.7 + 0.2j
    p, dp = data.eval(12, z, derivative=True)
    h = 1e-6
    fd = (data.eval(12, z + h) - data.eval(12, z - h)) / (2 * h)
    assert dp == pytest.approx(fd, rel=1e-8)


def test_F_is_minus_kernel_diagonal_on_circle():
    data = log_toeplitz_det_szego(TWO_ARCS, 16)
    z = np.exp(1j * np.array([0.3, 1.7, 3.05, -0.4]))
    np.testing.assert_allclose(data.F(z), -np.real(data.kernel_sum(z, z)) + 0 * z.real, rtol=1e-10)


def test_cd_kernel_hermitian_and_closed_form():
    J = limit_arcs(3.0, IntervalSet.two_gaps(-1, 1, 0.2), 64)
    data = log_toeplitz_det_szego(J, 64)
    y1, y2 = 0.3, -0.55
    h12, h21 = cd_kernel(data, 3.0, y1, y2), cd_kernel(data, 3.0, y2, y1)
    assert h12 == pytest.approx(np.conj(h21), rel=1e-12)
    direct = (3.0 / (math.pi * 64)) * data.kernel_sum(np.exp(2j * 3 * y1 / 64), np.exp(2j * 3 * y2 / 64))
    assert h12 == pytest.approx(complex(direct), rel=1e-9)
    # near-diagonal branch is continuous with the closed form
    a = cd_kernel(data, 3.0, 0.1, 0.1 + 1e-4)
    b = cd_kernel(data, 3.0, 0.1, 0.1 + 1e-9)
    assert abs(a - b) < 1e-3 * abs(a)


def test_cd_kernel_full_circle_is_dirichlet():
    data = log_toeplitz_det_szego(ArcSet.full_circle(), 40)
    s, n = 2.0, 40
    y1, y2 = 0.7, -0.2
    t = s * (y1 - y2) / n
    want = (s / (math.pi * n)) * math.sin(n * t) / math.sin(t)
    got = cd_kernel(data, s, y1, y2) * np.exp(-1j * (n - 1) * t)
    assert got == pytest.approx(want, rel=1e-12, abs=1e-15)


@given(st.sampled_from([8, 16, 24]), st.floats(0.05, 1.5))
def test_differential_identity(n, theta0):
    lhs, rhs = diff_identity_check(n, theta0)
    assert lhs == pytest.approx(rhs, rel=1e-6)


def test_differential_identity_domain():
    with pytest.raises(DomainError):
        diff_identity_check(8, 1e-6)


def test_limit_gap_shrinks():
    A = IntervalSet.two_gaps(-1.0, 1.0, 0.1)
    gaps = [fredholm_limit_gap(2.0, A, n) for n in (64, 128, 256)]
    assert gaps[0] > gaps[1] > gaps[2]


def test_domain_errors():
    for fn in (log_toeplitz_det_szego, log_toeplitz_det_chol):
        with pytest.raises(DomainError):
            fn(ONE_ARC, 0)
