"""Asymptotic formulas for gap probabilities and arc Toeplitz determinants,
returned term by term."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, RegimeWarning, SingularSystemError
from .quad import integrate_inv_sqrt
from .specfun import (
    c_of_k,
    delta_k,
    kappa_standard,
    log_theta3,
    two_gap_limit_constant,
    widom_dyson_constant,
)

VARIANTS = ("finite-k", "large-k")


@dataclass(frozen=True)
class AsymptoticBreakdown:
    terms: tuple[tuple[str, float], ...]

    @property
    def total(self) -> float:
        return math.fsum(v for _, v in self.terms)

    def __getitem__(self, name: str) -> float:
        for key, val in self.terms:
            if key == name:
                return val
        raise KeyError(name)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(k for k, _ in self.terms)

    def as_dict(self) -> dict:
        return dict(self.terms)


def _breakdown(*pairs) -> AsymptoticBreakdown:
    return AsymptoticBreakdown(tuple((str(k), float(v)) for k, v in pairs))


def one_gap_asymptotic(s: float, alpha: float, beta: float) -> AsymptoticBreakdown:
    """log P_s((alpha, beta)) ~ -(b-a)^2 s^2/8 - log(s)/4 - log((b-a)/2)/4 + c0."""
    if not s > 0:
        raise DomainError("s must be positive")
    if not alpha < beta:
        raise DomainError("need alpha < beta")
    L = beta - alpha
    return _breakdown(
        ("leading", -L * L * s * s / 8.0),
        ("log_s", -0.25 * math.log(s)),
        ("log_length", -0.25 * math.log(0.5 * L)),
        ("constant", widom_dyson_constant()),
    )


def one_arc_toeplitz_asymptotic(n: int, theta1: float, theta2: float) -> AsymptoticBreakdown:
    """log D_n for the symbol supported off the arc (theta2, theta1)."""
    d = theta1 - theta2
    if not 0 < d < 2 * math.pi:
        raise DomainError("need 0 < theta1 - theta2 < 2 pi")
    if n < 1:
        raise DomainError("n must be positive")
    q = 0.25 * d
    return _breakdown(
        ("leading", n * n * math.log(math.cos(q))),
        ("log_n_sin", -0.25 * math.log(n * math.sin(q))),
        ("constant", widom_dyson_constant()),
    )


@dataclass(frozen=True)
class TransitionParams:
    s: float
    alpha: float
    beta: float
    nu: float
    gamma: float
    omega: float
    k: int
    x: float

    @property
    def gamma_nu(self) -> float:
        return self.gamma * self.nu

    @property
    def log_inv_gamma_nu(self) -> float:
        return -math.log(self.gamma_nu)

    @property
    def root(self) -> float:
        return math.sqrt(abs(self.alpha * self.beta))


def _gamma(alpha: float, beta: float) -> float:
    return (1.0 / beta - 1.0 / alpha) / 8.0


def _check_abn(alpha: float, beta: float, nu: float):
    if not alpha < 0 < nu < beta:
        raise DomainError("need alpha < 0 < nu < beta")


def transition_params(s: float, alpha: float, beta: float, nu: float) -> TransitionParams:
    """gamma, omega = s sqrt|alpha beta| / log(1/(gamma nu)) and omega = k + x, x in [-1/2, 1/2)."""
    if not s > 0:
        raise DomainError("s must be positive")
    _check_abn(alpha, beta, nu)
    gamma = _gamma(alpha, beta)
    if not gamma * nu < 1.0:
        raise DomainError(f"gamma * nu = {gamma * nu:.4g} is not below 1")
    omega = s * math.sqrt(abs(alpha * beta)) / -math.log(gamma * nu)
    k = math.floor(omega + 0.5)
    x = omega - k
    if x >= 0.5:
        k, x = k + 1, x - 1.0
    return TransitionParams(float(s), float(alpha), float(beta), float(nu), gamma, omega, int(k), x)


def nu_for(s: float, alpha: float, beta: float, omega: float) -> float:
    """Inverse of transition_params: the nu giving a prescribed omega."""
    return math.exp(-s * math.sqrt(abs(alpha * beta)) / omega) / _gamma(alpha, beta)


def _added_terms(p: TransitionParams, k: int, x: float):
    return (
        ("exponent", p.s * p.root * (p.omega - x * x / p.omega)),
        ("c_k", c_of_k(k)),
        ("delta_k", delta_k(k, x, p.gamma_nu)),
    )


def _resolve(p: TransitionParams, decomposition):
    if decomposition is None:
        return p.k, p.x
    k, x = decomposition
    if int(k) != k or k < 0 or not -0.5 <= x <= 0.5:
        raise DomainError("decomposition needs an integer k >= 0 and |x| <= 1/2")
    if abs(k + x - p.omega) > 1e-12 * max(1.0, p.omega):
        raise DomainError(f"k + x = {k + x} does not equal omega = {p.omega}")
    return int(k), float(x)


def transition_asymptotic(
    s: float, alpha: float, beta: float, nu: float, variant: str = "finite-k", decomposition=None
) -> AsymptoticBreakdown:
    """Asymptotics of log P_s((alpha, -nu) U (nu, beta)) as the middle gap closes.

    ``finite-k`` adds the exponent, c(k) and delta_k(x) terms to the one-gap
    expansion; ``large-k`` is its reduction for k large, written through
    log(1/(gamma nu)).  ``decomposition`` may give (k, x) with k + x = omega
    explicitly, which matters only on the boundary |x| = 1/2.
    """
    if variant not in VARIANTS:
        raise DomainError(f"variant must be one of {VARIANTS}")
    p = transition_params(s, alpha, beta, nu)
    k, x = _resolve(p, decomposition)
    if variant == "finite-k":
        base = one_gap_asymptotic(s, alpha, beta).total
        return _breakdown(("one_gap", base), *_added_terms(p, k, x))
    if k < 5:
        warnings.warn(f"large-k reduction used with k = {k}", RegimeWarning, stacklevel=2)
    lg = p.log_inv_gamma_nu
    L = beta - alpha
    return _breakdown(
        ("leading", s * s * (-L * L / 8.0 + abs(alpha * beta) / lg)),
        ("log_s", -0.5 * math.log(s)),
        ("loglog", 0.25 * math.log(lg)),
        ("x_squared", -x * x * lg),
        ("correction", math.log1p(p.gamma_nu ** (1.0 - 2.0 * abs(x)))),
        ("log_geometry", -0.25 * math.log(0.5 * L * p.root)),
        ("constant", two_gap_limit_constant()),
    )


def two_arc_toeplitz_asymptotic(
    n: int, s: float, alpha: float, beta: float, nu: float, decomposition=None
) -> AsymptoticBreakdown:
    """log D_n for the arcs (-2 s nu/n, 2 s nu/n) and the complement of (2 s alpha/n, 2 s beta/n)."""
    p = transition_params(s, alpha, beta, nu)
    k, x = _resolve(p, decomposition)
    if s**3 / n > 0.1:
        warnings.warn(f"s^3/n = {s**3 / n:.3g} is not small", RegimeWarning, stacklevel=2)
    base = one_arc_toeplitz_asymptotic(n, 2 * s * beta / n, 2 * s * alpha / n).total
    return _breakdown(("one_arc", base), *_added_terms(p, k, x))


def kappa_normalization_gap(k: int) -> float:
    """|2 pi kappa_k^2 - 1|, of order 1/k."""
    return abs(2 * math.pi * kappa_standard(k) ** 2 - 1.0)


@dataclass(frozen=True)
class TwoGapGeometry:
    """Data of the quartic r(z)^2 = (z-a1)(z-b1)(z-a2)(z-b2) and q(z) = z^2 + q1 z + q0.

    r has its cuts on A1 = (a1, b1) and A2 = (a2, b2) and is positive right
    of b2, so r = -|r| on the gap (b1, a2).
    """

    alpha1: float
    beta1: float
    alpha2: float
    beta2: float
    q1: float
    q0: float
    G1: float
    V: float
    tau: complex
    period_residuals: tuple[float, float]

    @property
    def quartic_coefficients(self) -> tuple[float, float, float, float]:
        """(a3, a2, a1, a0) of the monic quartic."""
        c = np.poly([self.alpha1, self.beta1, self.alpha2, self.beta2])
        return float(c[1]), float(c[2]), float(c[3]), float(c[4])

    @property
    def residue_at_infinity(self) -> float:
        """Coefficient of 1/z in q/r at infinity, q1 - a3/2."""
        return self.q1 - 0.5 * self.quartic_coefficients[0]

    def q(self, x):
        x = np.asarray(x, dtype=float)
        return x * x + self.q1 * x + self.q0


def _moments(f_other, a: float, b: float, grade, m: int) -> tuple[float, float, float]:
    """Integrals of x^j f_other(x) / sqrt((x-a)(b-x)) over (a, b), j = 0, 1, 2."""
    return tuple(
        integrate_inv_sqrt(lambda x, j=j: x**j * f_other(x), a, b, m=m, grade=grade) for j in range(3)
    )


def two_gap_geometry(alpha1: float, beta1: float, alpha2: float, beta2: float, m: int = 64) -> TwoGapGeometry:
    if not alpha1 < beta1 < alpha2 < beta2:
        raise DomainError("need alpha1 < beta1 < alpha2 < beta2")
    gap = alpha2 - beta1
    span = beta2 - alpha1

    def other12(x):
        return 1.0 / np.sqrt((alpha2 - x) * (beta2 - x))

    def other21(x):
        return 1.0 / np.sqrt((x - alpha1) * (x - beta1))

    def other_gap(x):
        return 1.0 / np.sqrt((x - alpha1) * (beta2 - x))

    # grading toward an end whose neighbouring branch point is close
    g = gap if gap < 0.25 * span else None
    mom1 = _moments(other12, alpha1, beta1, (None, g), m)
    mom2 = _moments(other21, alpha2, beta2, (g, None), m)
    # x^2 + q1 x + q0 has vanishing integrals against both weights
    mat = np.array([[mom1[1], mom1[0]], [mom2[1], mom2[0]]])
    rhs = -np.array([mom1[2], mom2[2]])
    scale = np.abs(mat).max()
    if abs(np.linalg.det(mat / scale)) < 1e-14:
        raise SingularSystemError("moment matrix is numerically singular")
    q1, q0 = np.linalg.solve(mat, rhs)
    res = tuple(
        float(abs(mm[2] + q1 * mm[1] + q0 * mm[0]) / max(abs(mm[2]), 1.0)) for mm in (mom1, mom2)
    )
    a3, a2 = np.poly([alpha1, beta1, alpha2, beta2])[1:3]
    G1 = q0 - q1 * a3 / 2.0 - a2 / 2.0 + 3.0 * a3 * a3 / 8.0
    # the gap integrals also have inverse square-root ends at b1 and a2
    gap_grade = (None, None)
    gq = _moments(other_gap, beta1, alpha2, gap_grade, m)
    V = -(gq[2] + q1 * gq[1] + q0 * gq[0]) / math.pi
    tau = 1j * gq[0] / mom2[0]
    return TwoGapGeometry(
        float(alpha1), float(beta1), float(alpha2), float(beta2),
        float(q1), float(q0), float(G1), float(V), complex(tau), res,
    )


def two_gap_oscillation(s: float, geom: TwoGapGeometry) -> float:
    """log theta3(s V; tau), real for purely imaginary tau."""
    tau = complex(0.0, geom.tau.imag)
    return float(np.real(log_theta3(s * geom.V, tau)))


def two_gap_leading(s: float, geom: TwoGapGeometry) -> AsymptoticBreakdown:
    """Computable part -G1 s^2 + log theta3(s V; tau) of the fixed two-gap expansion."""
    return _breakdown(("leading", -geom.G1 * s * s), ("theta", two_gap_oscillation(s, geom)))
