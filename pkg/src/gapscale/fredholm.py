"""Sine-kernel Fredholm determinants on unions of intervals by Nystrom discretization."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.linalg as sla

from .errors import DomainError, PrecisionLossError, RegimeWarning
from .quad import QuadRule, composite_rule, default_nodes
from .sets import IntervalSet, as_interval_set

# 1 - lambda below this leaves fewer than ~2 correct digits in log(1 - lambda)
MIN_GAP = 1e-14


def sine_kernel(s: float, x, y):
    """sin(s(x-y)) / (pi (x-y)), with a Taylor series near the diagonal."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    d = x - y
    near = np.abs(d) < 1e-8 * (1.0 + np.abs(x))
    sd = s * d
    safe = np.where(near, 1.0, d)
    out = np.where(
        near,
        (s / math.pi) * (1.0 - sd * sd / 6.0 + sd**4 / 120.0),
        np.sin(sd) / (math.pi * safe),
    )
    return float(out) if out.ndim == 0 else out


def _kernel_matrix(s: float, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    d = x[:, None] - y[None, :]
    # np.sinc handles the removable singularity exactly
    return (s / math.pi) * np.sinc((s / math.pi) * d)


@dataclass
class NystromSystem:
    """Symmetrized Nystrom matrix sqrt(w_i) K_s(x_i, x_j) sqrt(w_j)."""

    s: float
    rule: QuadRule
    matrix: np.ndarray
    _eigenvalues: Optional[np.ndarray] = field(default=None, repr=False)

    @classmethod
    def build(cls, s: float, A: IntervalSet, m: int | None = None) -> "NystromSystem":
        if not s > 0:
            raise DomainError("s must be positive")
        A = as_interval_set(A)
        need = max(default_nodes(s, b - a) for a, b in A.intervals)
        if m is None:
            m = need
        elif m < need:
            warnings.warn(
                f"{m} nodes per interval is below the bandlimit heuristic {need}",
                RegimeWarning,
                stacklevel=3,
            )
        rule = composite_rule(A, m)
        sw = np.sqrt(rule.weights)
        mat = sw[:, None] * _kernel_matrix(s, rule.nodes, rule.nodes) * sw[None, :]
        return cls(float(s), rule, mat)

    @property
    def eigenvalues(self) -> np.ndarray:
        if self._eigenvalues is None:
            self._eigenvalues = np.linalg.eigvalsh(self.matrix)
        return self._eigenvalues

    def log_det(self) -> float:
        lam = self.eigenvalues
        gap = 1.0 - lam.max()
        if gap < MIN_GAP:
            raise PrecisionLossError(
                f"1 - lambda_max = {gap:.3e} is below {MIN_GAP:g}; reduce s"
            )
        lam = np.clip(lam, 0.0, None)
        return float(math.fsum(np.log1p(-lam)))


def log_gap_probability(s: float, A, m: int | None = None) -> float:
    """log det(I - K_s) restricted to A, the log-probability of no points in A."""
    return NystromSystem.build(s, as_interval_set(A), m).log_det()


def conditional_ratio(s: float, A0, nu: float, m: int | None = None) -> float:
    """log det(I + K_s (I - K_s)^{-1}) on (-nu, nu), with the operator taken on A0.

    Equals log P_s(A0 minus [-nu, nu]) - log P_s(A0).
    """
    A0 = as_interval_set(A0)
    if len(A0) != 1:
        raise DomainError("conditional_ratio needs a single interval A0")
    alpha, beta = A0.intervals[0]
    if not 0 < nu < min(-alpha, beta):
        raise DomainError("need 0 < nu < min(-alpha, beta)")
    outer = IntervalSet(((alpha, -nu), (nu, beta)))
    need = max(default_nodes(s, b - a) for a, b in outer.intervals)
    m = need if m is None else m
    r_out = composite_rule(outer, m)
    r_in = composite_rule(IntervalSet(((-nu, nu),)), max(m // 2, default_nodes(s, 2 * nu)))
    x = np.concatenate([r_out.nodes, r_in.nodes])
    sw = np.sqrt(np.concatenate([r_out.weights, r_in.weights]))
    M = np.eye(len(x)) - sw[:, None] * _kernel_matrix(s, x, x) * sw[None, :]
    nb = len(r_in.nodes)
    try:
        cf = sla.cho_factor(M, lower=True)
    except np.linalg.LinAlgError as exc:
        raise PrecisionLossError("I - K_s is numerically singular on A0") from exc
    rhs = np.zeros((len(x), nb))
    rhs[-nb:, :] = np.eye(nb)
    X = sla.cho_solve(cf, rhs)[-nb:, :]
    # X is the (-nu, nu) block of (I - K)^{-1} = I + K (I - K)^{-1}
    sign, logdet = np.linalg.slogdet(0.5 * (X + X.T))
    if sign <= 0:
        raise PrecisionLossError("resolvent block is not positive definite")
    return float(logdet)
