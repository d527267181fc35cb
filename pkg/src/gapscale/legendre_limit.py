"""Rescaled Christoffel-Darboux kernel near a closing gap versus the Legendre kernel."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .asym import nu_for
from .errors import DomainError
from .quad import gauss_legendre
from .sets import IntervalSet
from .specfun import LegendreBasis, k_leg, k_leg_diagonal
from .toeplitz import cd_kernel, limit_arcs, log_toeplitz_det_szego

MAX_TUPLE = 3

_OFF = np.array([-0.8, -0.4, 0.0, 0.4, 0.8])
_OFF2 = np.array([-0.7, -0.3, 0.1, 0.5, 0.9])
DEFAULT_PROBES = tuple(
    [(float(a), float(b)) for a in _OFF for b in _OFF2] + [(0.2, 0.2), (-0.6, -0.6)]
)


@dataclass(frozen=True)
class KernelLimitReport:
    s: float
    k: int
    n: int
    nu: float
    residual: float
    target_max: float
    trace: float
    min_rho: float

    @property
    def relative_residual(self) -> float:
        return self.residual / self.target_max


def legendre_target(k: int, x1, x2):
    """2 K_Leg(2 x1, 2 x2) for the rank-k kernel."""
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    diag = x1 == x2
    off = 2.0 * k_leg(k, 2 * x1, 2 * np.where(diag, x2 + 1.0, x2))
    out = np.where(diag, 2.0 * k_leg_diagonal(k, 2 * x1), off)
    return float(out) if out.ndim == 0 else out


def _gauged_kernel(data, s: float, n: int, y1, y2):
    # H_n times a unimodular gauge factor; determinants of the kernel are unchanged
    h = cd_kernel(data, s, y1, y2)
    return h * np.exp(-1j * (n - 1) * s * (np.asarray(y1) - np.asarray(y2)) / n)


def kernel_limit(
    s: float,
    alpha: float,
    beta: float,
    k: int,
    n: int,
    probes=DEFAULT_PROBES,
    trace_nodes: int = 64,
) -> KernelLimitReport:
    """Compare nu H_n(nu x1, nu x2) with 2 K_Leg(2 x1, 2 x2) where nu puts omega at k exactly."""
    if k < 1:
        raise DomainError("k must be at least 1")
    nu = nu_for(s, alpha, beta, float(k))
    if not alpha < -nu < nu < beta:
        raise DomainError(f"nu = {nu:.3g} does not fit inside ({alpha}, {beta})")
    if 2 * s * nu / n < 1e-12:
        raise DomainError("arc (-2 s nu/n, 2 s nu/n) is below angular resolution")
    A = IntervalSet(((alpha, -nu), (nu, beta)))
    data = log_toeplitz_det_szego(limit_arcs(s, A, n), n)
    pr = np.asarray(probes, dtype=float)
    x1, x2 = pr[:, 0], pr[:, 1]
    if np.any(np.abs(pr) >= 1.0):
        raise DomainError("probe points must lie in (-1, 1)")
    got = nu * _gauged_kernel(data, s, n, nu * x1, nu * x2)
    want = legendre_target(k, x1, x2)
    residual = float(np.max(np.abs(got - want)))
    rule = gauss_legendre(trace_nodes, -1.0, 1.0)
    diag = np.real(cd_kernel(data, s, nu * rule.nodes, nu * rule.nodes))
    trace = float(nu * rule.apply(diag))
    return KernelLimitReport(
        float(s), int(k), int(n), nu, residual, float(np.max(np.abs(want))), trace, float(data.rhos.min())
    )


def kernel_limit_residual(s: float, alpha: float, beta: float, k: int, n: int, probes=DEFAULT_PROBES) -> float:
    return kernel_limit(s, alpha, beta, k, n, probes).residual


def _kernel_matrix(k: int, x: np.ndarray) -> np.ndarray:
    basis = LegendreBasis(-2.0, 2.0, cap=max(k, 1))
    phi = np.array([basis.eval(j, x) for j in range(k)])
    return phi.T @ phi


def tuple_expectation(k: int, m: int | None = None, nodes: int | None = None) -> float:
    """(1/m!) times the integral over (-2, 2)^m of det(K_Leg(x_i, x_j)) for the rank-k kernel.

    m defaults to k.  The integrand is a polynomial of degree at most 2(k-1) in
    each variable, so a tensor Gauss rule with k + 2 nodes is exact.
    """
    m = k if m is None else m
    if k < 1 or m < 1:
        raise DomainError("k and m must be positive")
    if m > MAX_TUPLE:
        raise DomainError(f"tuple integrals are capped at m = {MAX_TUPLE}")
    rule = gauss_legendre(nodes or k + 2, -2.0, 2.0)
    K = _kernel_matrix(k, rule.nodes)
    w = rule.weights
    N = len(w)
    total = 0.0
    for idx in itertools.product(range(N), repeat=m):
        ix = np.array(idx)
        total += np.prod(w[ix]) * np.linalg.det(K[np.ix_(ix, ix)])
    return float(total / math.factorial(m))
