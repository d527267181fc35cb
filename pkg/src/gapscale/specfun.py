"""Special functions: Barnes G at integers, zeta'(-1), Jacobi theta,
orthonormal Legendre polynomials and the constants built from them."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DomainError

# zeta'(-1) = 1/12 - log(A), A the Glaisher-Kinkelin constant
ZETA_PRIME_MINUS_ONE = -0.16542114370045092921
LOG2 = math.log(2.0)
LOGPI = math.log(math.pi)


def zeta_prime_minus_one() -> float:
    return ZETA_PRIME_MINUS_ONE


def widom_dyson_constant() -> float:
    """Constant term of the one-gap expansion, log(2)/12 + 3 zeta'(-1)."""
    return LOG2 / 12.0 + 3.0 * ZETA_PRIME_MINUS_ONE


def two_gap_limit_constant() -> float:
    """log(2)/6 + 6 zeta'(-1)."""
    return LOG2 / 6.0 + 6.0 * ZETA_PRIME_MINUS_ONE


@lru_cache(maxsize=8)
def _log_factorial_prefix(kmax: int) -> np.ndarray:
    # out[k] = log G(k) for k = 0..kmax (out[0] unused)
    lf = np.array([math.lgamma(j + 1) for j in range(max(kmax, 2))])
    out = np.zeros(kmax + 1)
    # log G(k) = sum_{j=1}^{k-2} log j!
    cs = np.cumsum(lf)
    for k in range(3, kmax + 1):
        out[k] = cs[k - 2] - lf[0]
    return out


def log_barnes_g(k: int) -> float:
    """log G(k) for a positive integer k, from accumulated log-factorials."""
    if int(k) != k or k < 1:
        raise DomainError(f"log_barnes_g needs a positive integer, got {k}")
    k = int(k)
    if k <= 2:
        return 0.0
    if k <= 4096:
        return float(_log_factorial_prefix(4096)[k])
    return math.fsum(math.lgamma(j + 1) for j in range(1, k - 1))


def theta_truncation(z: complex, tau: complex, tol: float = 1e-15, min_terms: int = 8) -> int:
    """Smallest M >= min_terms with 2 exp(-pi Im(tau) M^2 + 2 pi |Im z| M) < tol."""
    b = tau.imag
    if b <= 0:
        raise DomainError("theta needs Im(tau) > 0")
    c = abs(z.imag)
    M = min_terms
    while math.log(2.0) - math.pi * b * M * M + 2 * math.pi * c * M >= math.log(tol):
        M += 1
    return M


def theta3(z, tau: complex):
    """Jacobi theta function sum_m exp(2 pi i m z + pi i tau m^2)."""
    tau = complex(tau)
    if tau.imag <= 0:
        raise DomainError("theta needs Im(tau) > 0")
    zarr = np.asarray(z, dtype=complex)
    M = max(theta_truncation(complex(v), tau) for v in zarr.ravel()) if zarr.size else 8
    m = np.arange(-M, M + 1)
    ph = 2j * np.pi * zarr[..., None] * m + 1j * np.pi * tau * m * m
    out = np.exp(ph).sum(axis=-1)
    return complex(out) if out.ndim == 0 else out


def log_theta3(z, tau: complex):
    """Principal log of theta3, computed with the exponent offset factored out."""
    tau = complex(tau)
    zarr = np.asarray(z, dtype=complex)
    M = max(theta_truncation(complex(v), tau) for v in zarr.ravel()) if zarr.size else 8
    m = np.arange(-M, M + 1)
    ph = 2j * np.pi * zarr[..., None] * m + 1j * np.pi * tau * m * m
    shift = ph.real.max(axis=-1, keepdims=True)
    out = np.log(np.exp(ph - shift).sum(axis=-1)) + shift[..., 0]
    return complex(out) if out.ndim == 0 else out


def _log_central_binomial(k: int) -> float:
    return math.lgamma(2 * k + 1) - 2.0 * math.lgamma(k + 1)


def log_kappa_standard(j: int) -> float:
    """log of the leading coefficient of the orthonormal Legendre polynomial of degree j on [-2, 2]."""
    if j < 0:
        return -math.inf
    return -(j + 0.5) * math.log(4.0) + 0.5 * math.log(2 * j + 1) + _log_central_binomial(j)


def kappa_standard(j: int) -> float:
    """kappa_j on [-2, 2]; kappa_0 = 1/2 and kappa_{-1} = 0."""
    return 0.0 if j < 0 else math.exp(log_kappa_standard(j))


@dataclass(frozen=True)
class LegendreBasis:
    """Orthonormal Legendre polynomials L_k on [eta1, eta2], k <= cap.

    L_k(x) = kappa_k x^k + mu_k x^(k-1) + nu_k x^(k-2) + ...
    """

    eta1: float = -2.0
    eta2: float = 2.0
    cap: int = 64
    _coeffs: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.eta1 < self.eta2:
            raise DomainError("LegendreBasis needs eta1 < eta2")

    @property
    def width(self) -> float:
        return self.eta2 - self.eta1

    def _check(self, k: int):
        if k < 0 or k > self.cap:
            raise DomainError(f"degree {k} outside 0..{self.cap}")

    def _t(self, x):
        return (2.0 * np.asarray(x, dtype=float) - self.eta1 - self.eta2) / self.width

    def _standard(self, k: int, t):
        """P_j(t) and P_j'(t) for j = k-1, k by the three-term recurrence."""
        p_prev, p = np.zeros_like(t), np.ones_like(t)
        d_prev, d = np.zeros_like(t), np.zeros_like(t)
        for j in range(k):
            p_next = ((2 * j + 1) * t * p - j * p_prev) / (j + 1)
            # P'_{j+1} = P'_{j-1} + (2j+1) P_j
            d_next = d_prev + (2 * j + 1) * p
            p_prev, p = p, p_next
            d_prev, d = d, d_next
        return p_prev, p, d_prev, d

    def eval(self, k: int, x):
        self._check(k)
        t = self._t(x)
        _, p, _, _ = self._standard(k, t)
        out = math.sqrt((2 * k + 1) / self.width) * p
        return float(out) if np.ndim(out) == 0 else out

    def derivative(self, k: int, x):
        self._check(k)
        t = self._t(x)
        _, _, _, d = self._standard(k, t)
        out = math.sqrt((2 * k + 1) / self.width) * d * (2.0 / self.width)
        return float(out) if np.ndim(out) == 0 else out

    def eval_pair(self, k: int, x):
        """(L_{k-1}(x), L_k(x), L'_{k-1}(x), L'_k(x)) for k >= 1."""
        self._check(k)
        t = self._t(x)
        pm, p, dm, d = self._standard(k, t)
        ck = math.sqrt((2 * k + 1) / self.width)
        cm = math.sqrt((2 * k - 1) / self.width)
        sc = 2.0 / self.width
        return cm * pm, ck * p, cm * dm * sc, ck * d * sc

    def kappa(self, k: int) -> tuple[float, float, float]:
        """(kappa_k, mu_k, nu_k); mu is 0 for k < 1 and nu is 0 for k < 2."""
        if k < 0:
            return 0.0, 0.0, 0.0
        w = self.width
        e1, e2 = self.eta1, self.eta2
        base = -(k + 0.5) * math.log(w) + 0.5 * math.log(2 * k + 1)
        kap = math.exp(base + _log_central_binomial(k))
        mu = -kap * 0.5 * k * (e1 + e2) if k >= 1 else 0.0
        if k >= 2:
            lb = math.lgamma(2 * k - 1) - math.lgamma(k - 1) - math.lgamma(k + 1)
            nu = math.exp(base + lb) * 0.5 * k * (k * (e1 + e2) ** 2 - (e1 * e1 + e2 * e2))
        else:
            nu = 0.0
        return kap, mu, nu

    def series_eval(self, k: int, x):
        """Explicit binomial-sum form of L_k; exact-arithmetic reference for small k."""
        y = (np.asarray(x, dtype=float) - self.eta2) / self.width
        total = sum(math.comb(k, j) * math.comb(k + j, j) * y**j for j in range(k + 1))
        return math.sqrt((2 * k + 1) / self.width) * total


def legendre_eval(basis: LegendreBasis, k: int, x):
    return basis.eval(k, x)


def legendre_kappa(basis: LegendreBasis, k: int) -> tuple[float, float, float]:
    return basis.kappa(k)


def c_of_k_barnes(k: int) -> float:
    """(2k^2 - k) log 2 - k log pi + 4 log G(k+1) - log G(2k+1)."""
    if k < 0:
        raise DomainError("c(k) needs k >= 0")
    if k == 0:
        return 0.0
    return (
        (2 * k * k - k) * LOG2 - k * LOGPI + 4.0 * log_barnes_g(k + 1) - log_barnes_g(2 * k + 1)
    )


def c_of_k_kappa(k: int) -> float:
    """-sum_{j<k} log(2 pi kappa_j^2) with kappa_j on [-2, 2]."""
    if k < 0:
        raise DomainError("c(k) needs k >= 0")
    return -math.fsum(math.log(2 * math.pi) + 2.0 * log_kappa_standard(j) for j in range(k))


def c_of_k(k: int) -> float:
    return c_of_k_barnes(k)


def delta_k(k: int, x: float, gamma_nu: float) -> float:
    """Two-logarithm correction of the transition regime.

    log(1 + 2 pi kappa_{k-1}^2 (gamma nu)^(1+2x)) + log(1 + (gamma nu)^(1-2x) / (2 pi kappa_k^2)).
    """
    if not 0.0 < gamma_nu < 1.0:
        raise DomainError("delta_k needs gamma*nu in (0, 1)")
    if k < 0:
        raise DomainError("delta_k needs k >= 0")
    lg = math.log(gamma_nu)
    first = 0.0
    if k >= 1:
        first = math.log1p(math.exp(math.log(2 * math.pi) + 2 * log_kappa_standard(k - 1) + (1 + 2 * x) * lg))
    second = math.log1p(math.exp((1 - 2 * x) * lg - math.log(2 * math.pi) - 2 * log_kappa_standard(k)))
    return first + second


_STD = LegendreBasis(-2.0, 2.0, cap=512)


def k_leg(k: int, x, y):
    """Rank-k Legendre projection kernel on [-2, 2] in Christoffel-Darboux form."""
    if k < 1:
        raise DomainError("k_leg needs k >= 1")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    x, y = np.broadcast_arrays(x, y)
    ratio = kappa_standard(k - 1) / kappa_standard(k)
    lxm, lx, dxm, dx = _STD.eval_pair(k, x)
    lym, ly, _, _ = _STD.eval_pair(k, y)
    diff = x - y
    near = np.abs(diff) < 1e-3
    safe = np.where(near, 1.0, diff)
    off = ratio * (lx * lym - lxm * ly) / safe
    # close to the diagonal use the equivalent finite sum
    if np.any(near):
        ssum = np.zeros(x.shape)
        for j in range(k):
            ssum = ssum + _STD.eval(j, x) * _STD.eval(j, y)
        off = np.where(near, ssum, off)
    return float(off) if off.ndim == 0 else off


def k_leg_diagonal(k: int, x):
    """K_Leg(x, x) from the derivative form of the Christoffel-Darboux limit."""
    ratio = kappa_standard(k - 1) / kappa_standard(k)
    lxm, lx, dxm, dx = _STD.eval_pair(k, np.asarray(x, dtype=float))
    out = ratio * (dx * lxm - lx * dxm)
    return float(out) if np.ndim(out) == 0 else out
