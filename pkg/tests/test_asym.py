import math
import warnings

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import gapscale.asym as asym_mod
from gapscale.asym import (
    kappa_normalization_gap,
    nu_for,
    one_arc_toeplitz_asymptotic,
    one_gap_asymptotic,
    transition_asymptotic,
    transition_params,
    two_arc_toeplitz_asymptotic,
    two_gap_geometry,
    two_gap_leading,
    two_gap_oscillation,
)
from gapscale.errors import DomainError, RegimeWarning, SingularSystemError
from gapscale.specfun import c_of_k, theta3

C0 = -0.43850116605469068


def test_one_gap_example_terms():
    b = one_gap_asymptotic(8.0, -1.0, 1.0)
    assert b.names == ("leading", "log_s", "log_length", "constant")
    assert b.total == pytest.approx(-32.0 - 0.25 * math.log(8.0) + C0, abs=1e-13)
    assert b.total == pytest.approx(-32.9584, abs=1e-4)
    assert b["log_length"] == 0.0
    assert b.as_dict()["constant"] == pytest.approx(C0, abs=1e-15)


@given(st.floats(0.5, 50.0), st.floats(-3.0, 0.0), st.floats(0.1, 3.0))
def test_one_gap_doubling_and_sum(s, a, L):
    b1, b2 = one_gap_asymptotic(s, a, a + L), one_gap_asymptotic(2 * s, a, a + L)
    assert b2.total - b1.total == pytest.approx(-L * L * 3 * s * s / 8 - 0.25 * math.log(2), rel=1e-12, abs=1e-12)
    assert b1.total == pytest.approx(sum(v for _, v in b1.terms), abs=1e-13 * max(1, abs(b1.total)))


def test_one_arc_terms():
    b = one_arc_toeplitz_asymptotic(512, 1.0, -1.0)
    assert b["leading"] == pytest.approx(512**2 * math.log(math.cos(0.5)))
    b2 = one_arc_toeplitz_asymptotic(1024, 1.0, -1.0)
    assert b2["leading"] == pytest.approx(4 * b["leading"])
    wider = one_arc_toeplitz_asymptotic(512, 3.0, -3.0)
    assert wider["leading"] < b["leading"]
    with pytest.raises(DomainError):
        one_arc_toeplitz_asymptotic(10, -1.0, 1.0)


def test_transition_params_examples():
    p = transition_params(8.0, -1.0, 1.0, 1e-3)
    assert p.gamma == 0.25
    assert p.omega == pytest.approx(8.0 / math.log(4000.0), rel=1e-15)
    assert p.omega == pytest.approx(0.9646, abs=1e-4)
    assert p.k == 1 and p.x == pytest.approx(-0.0354, abs=1e-4)
    s = 5.0
    q = transition_params(s, -1.0, 1.0, 4.0 * math.exp(-s))
    assert q.omega == pytest.approx(1.0, rel=1e-14) and q.k == 1 and abs(q.x) < 1e-13
    with pytest.raises(DomainError):
        transition_params(8.0, -0.01, 0.2, 0.1)  # gamma nu > 1
    with pytest.raises(DomainError):
        transition_params(8.0, -1.0, 1.0, 1.5)


@given(st.floats(0.5, 60.0), st.floats(-3.0, -0.2), st.floats(0.2, 3.0), st.floats(1e-12, 0.1))
def test_decomposition_invariants(s, a, b, nu):
    p = transition_params(s, a, b, nu)
    assert -0.5 <= p.x < 0.5
    assert p.k >= 0 and p.k + p.x == pytest.approx(p.omega, rel=1e-14, abs=1e-15)
    assert 0 < p.gamma_nu < 1
    assert nu_for(s, a, b, p.omega) == pytest.approx(nu, rel=1e-9)


def test_transition_example_terms():
    b = transition_asymptotic(8.0, -1.0, 1.0, 1e-3)
    assert b.names == ("one_gap", "exponent", "c_k", "delta_k")
    assert b["exponent"] == pytest.approx(7.706, abs=1e-3)
    assert b["c_k"] == pytest.approx(math.log(2 / math.pi), abs=1e-15)
    assert b["delta_k"] == pytest.approx(8.2e-4, abs=1e-5)
    assert b["one_gap"] == pytest.approx(one_gap_asymptotic(8.0, -1.0, 1.0).total)


def test_transition_k0_limit():
    b = transition_asymptotic(8.0, -1.0, 1.0, 1e-40)
    p = transition_params(8.0, -1.0, 1.0, 1e-40)
    assert p.k == 0 and p.x < 0.1
    assert b.total - b["one_gap"] == pytest.approx(0.0, abs=1e-6)


def test_transition_boundary_mismatch_is_second_order():
    # the two decompositions at |x| = 1/2 differ only by the (gamma nu)^2 parts of delta_k
    from gapscale.specfun import kappa_standard

    nu = 1e-3
    g = 0.25 * nu
    for k in (1, 4, 9):
        s = (k + 0.5) * math.log(1 / g)
        lo = transition_asymptotic(s, -1, 1, nu, decomposition=(k, 0.5))
        hi = transition_asymptotic(s, -1, 1, nu, decomposition=(k + 1, -0.5))
        assert lo["exponent"] == hi["exponent"] and lo["one_gap"] == hi["one_gap"]
        own = lambda b: b["c_k"] + b["delta_k"]
        want = math.log1p(2 * math.pi * kappa_standard(k - 1) ** 2 * g * g) - math.log1p(
            g * g / (2 * math.pi * kappa_standard(k + 1) ** 2)
        )
        assert own(lo) - own(hi) == pytest.approx(want, abs=2e-13)
    with pytest.raises(DomainError):
        transition_asymptotic(8.0, -1, 1, 1e-3, decomposition=(2, 0.5))


def test_large_k_variant():
    with pytest.warns(RegimeWarning):
        b = transition_asymptotic(8.0, -1.0, 1.0, 1e-3, variant="large-k")
    assert b["constant"] == pytest.approx(math.log(2) / 6 + 6 * -0.16542114370045092921, abs=1e-15)
    # at fixed gamma nu and x = 0 the variants differ by log(1 + gamma nu) plus o(1) in k
    g = 1e-4
    diffs = []
    for k in (10, 20, 40):
        s = k * math.log(1 / g)
        nu = g / 0.25
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RegimeWarning)
            a = transition_asymptotic(s, -1, 1, nu, "finite-k").total
            b = transition_asymptotic(s, -1, 1, nu, "large-k").total
        diffs.append(abs(a - b - math.log1p(g)))
    assert diffs[2] < diffs[1] < diffs[0] < 1e-3
    with pytest.raises(DomainError):
        transition_asymptotic(8.0, -1, 1, 1e-3, variant="exact")


def test_two_arc_shares_added_terms():
    with pytest.warns(RegimeWarning):
        two = two_arc_toeplitz_asymptotic(100, 8.0, -1.0, 1.0, 1e-3)
    ta = transition_asymptotic(8.0, -1.0, 1.0, 1e-3)
    for name in ("exponent", "c_k", "delta_k"):
        assert two[name] == ta[name]
    one = one_arc_toeplitz_asymptotic(100, 16.0 / 100, -16.0 / 100)
    assert two["one_arc"] == one.total
    assert two.total - two["one_arc"] == pytest.approx(ta.total - ta["one_gap"], abs=1e-13)
    tiny = two_arc_toeplitz_asymptotic(100000, 4.0, -1.0, 1.0, 1e-40)
    assert tiny.total - tiny["one_arc"] == pytest.approx(0.0, abs=1e-6)


def test_kappa_normalization():
    for k in (5, 10, 50, 500):
        assert kappa_normalization_gap(k) < 2.0 / k


def _mp_geometry(a1, b1, a2, b2):
    """q, G1, V and tau by mpmath tanh-sinh quadrature."""
    with mpmath.workdps(30):
        P = lambda x: abs((x - a1) * (x - b1) * (x - a2) * (x - b2))
        mom = lambda lo, hi, j: mpmath.quad(lambda x: x**j / mpmath.sqrt(P(x)), [lo, hi])
        M = mpmath.matrix([[mom(a1, b1, 1), mom(a1, b1, 0)], [mom(a2, b2, 1), mom(a2, b2, 0)]])
        rhs = mpmath.matrix([-mom(a1, b1, 2), -mom(a2, b2, 2)])
        q1, q0 = mpmath.lu_solve(M, rhs)
        V = -(mom(b1, a2, 2) + q1 * mom(b1, a2, 1) + q0 * mom(b1, a2, 0)) / mpmath.pi
        tau = mom(b1, a2, 0) / mom(a2, b2, 0)
        return float(q1), float(q0), float(V), float(tau)


@pytest.mark.parametrize("pts", [(-1.0, -0.3, 0.3, 1.0), (-1.3, -0.2, 0.5, 1.1), (-1.0, -0.01, 0.01, 1.0)])
def test_geometry_against_mpmath(pts):
    g = two_gap_geometry(*pts)
    q1, q0, V, tau = _mp_geometry(*pts)
    assert g.q1 == pytest.approx(q1, abs=1e-12)
    assert g.q0 == pytest.approx(q0, rel=1e-12)
    assert g.V == pytest.approx(V, rel=1e-11)
    assert g.tau.imag == pytest.approx(tau, rel=1e-11) and g.tau.real == 0.0
    assert max(g.period_residuals) < 1e-10
    assert abs(g.residue_at_infinity) < 1e-10


def test_G1_against_large_z_limit():
    g = two_gap_geometry(-1.3, -0.2, 0.5, 1.1)
    with mpmath.workdps(40):
        z = mpmath.mpf(10) ** 8
        r = mpmath.sqrt((z - g.alpha1) * (z - g.beta1) * (z - g.alpha2) * (z - g.beta2))
        q = z * z + mpmath.mpf(g.q1) * z + mpmath.mpf(g.q0)
        limit = float((q / r - 1) * z * z)
    assert g.G1 == pytest.approx(limit, rel=1e-7)


def test_geometry_symmetric_small_gap():
    g = two_gap_geometry(-1.0, -1e-8, 1e-8, 1.0)
    assert abs(g.q1) < 1e-12
    L = -math.log(0.25 * 1e-8)
    assert g.G1 + 1.0 / L == pytest.approx(0.5, abs=0.02)
    with pytest.raises(DomainError):
        two_gap_geometry(0.0, -1.0, 0.5, 1.0)


def test_geometry_singular_system(monkeypatch):
    monkeypatch.setattr(asym_mod, "integrate_inv_sqrt", lambda *a, **k: 1.0)
    with pytest.raises(SingularSystemError):
        two_gap_geometry(-1.0, -0.3, 0.3, 1.0)


def test_oscillation_properties():
    g = two_gap_geometry(-1.0, -0.3, 0.3, 1.0)
    for s in (0.3, 5.0, 11.7):
        assert two_gap_oscillation(s + 1.0 / g.V, g) == pytest.approx(two_gap_oscillation(s, g), abs=1e-10)
    assert two_gap_oscillation(0.0, g) > 0
    tau = 1j * g.tau.imag
    amp = math.log(theta3(0.0, tau).real / theta3(0.5, tau).real)
    vals = [two_gap_oscillation(s, g) for s in np.linspace(0, 20, 101)]
    assert max(vals) - min(vals) <= amp + 1e-12
    lead = two_gap_leading(3.0, g)
    assert lead["leading"] == pytest.approx(-9 * g.G1)
