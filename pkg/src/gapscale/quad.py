"""Gauss-Legendre rules, composite rules over interval unions and
endpoint-singular rules for integrands with inverse square-root weights."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import EvaluationError, InvalidIntervalError, NonConvergenceError
from .sets import IntervalSet, as_interval_set

NEWTON_TOL = 1e-15
NEWTON_MAXITER = 100


@dataclass(frozen=True)
class QuadRule:
    nodes: np.ndarray
    weights: np.ndarray
    interval: tuple[float, float]

    def __len__(self) -> int:
        return len(self.nodes)

    def apply(self, values) -> float:
        return float(np.dot(self.weights, values))

    def integrate(self, f: Callable) -> float:
        vals = np.asarray(f(self.nodes))
        if not np.all(np.isfinite(vals)):
            raise EvaluationError("integrand returned a non-finite value")
        return float(np.dot(self.weights, vals))


def _legendre_and_derivative(m: int, x: np.ndarray):
    p0 = np.ones_like(x)
    p1 = x.copy()
    for k in range(2, m + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    dp = m * (x * p1 - p0) / (x * x - 1.0)
    return p1, dp


@lru_cache(maxsize=256)
def _reference_rule(m: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on (-1, 1), computed by Newton iteration."""
    if m == 1:
        return np.array([0.0]), np.array([2.0])
    # Chebyshev-type initial guesses, descending
    k = np.arange(1, m // 2 + 1)
    x = np.cos(math.pi * (k - 0.25) / (m + 0.5))
    for _ in range(NEWTON_MAXITER):
        p, dp = _legendre_and_derivative(m, x)
        dx = p / dp
        x = x - dx
        if np.max(np.abs(dx)) <= NEWTON_TOL:
            break
    else:
        raise NonConvergenceError(f"Gauss-Legendre nodes for m={m} did not converge")
    _, dp = _legendre_and_derivative(m, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    if m % 2:
        p, dp0 = _legendre_and_derivative(m, np.array([0.0]))
        mid_x, mid_w = np.array([0.0]), 2.0 / dp0**2
        nodes = np.concatenate([-x, mid_x, x[::-1]])
        weights = np.concatenate([w, mid_w, w[::-1]])
    else:
        nodes = np.concatenate([-x, x[::-1]])
        weights = np.concatenate([w, w[::-1]])
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def gauss_legendre(m: int, a: float = -1.0, b: float = 1.0) -> QuadRule:
    """m-point Gauss-Legendre rule on (a, b)."""
    if int(m) != m or m < 1:
        raise ValueError("m must be a positive integer")
    if not (math.isfinite(a) and math.isfinite(b)) or not a < b:
        raise InvalidIntervalError(f"invalid interval ({a}, {b})")
    t, w = _reference_rule(int(m))
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    return QuadRule(mid + half * t, half * w, (float(a), float(b)))


def composite_rule(intervals, m_per_interval: int) -> QuadRule:
    """Concatenated Gauss-Legendre rules, one per interval of the set."""
    A = as_interval_set(intervals)
    parts = [gauss_legendre(m_per_interval, a, b) for a, b in A.intervals]
    nodes = np.concatenate([p.nodes for p in parts])
    weights = np.concatenate([p.weights for p in parts])
    return QuadRule(nodes, weights, A.hull)


def paneled_rule(a: float, b: float, max_panel: float, m_per_panel: int) -> QuadRule:
    """Composite rule on (a, b) using equal panels no longer than max_panel."""
    if not a < b:
        raise InvalidIntervalError(f"invalid interval ({a}, {b})")
    npan = max(1, math.ceil((b - a) / max_panel))
    t, w = _reference_rule(m_per_panel)
    edges = np.linspace(a, b, npan + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * t[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return QuadRule(nodes, weights, (float(a), float(b)))


def integrate(f: Callable, intervals: IntervalSet, m_per_interval: int = 32) -> float:
    """Composite Gauss-Legendre estimate of the integral of f over a union of intervals."""
    return composite_rule(intervals, m_per_interval).integrate(f)


def default_nodes(s: float, length: float) -> int:
    """Bandlimit-driven node count for a sine kernel of bandwidth s."""
    return 16 + math.ceil(4.0 * s * length)


def _graded_unit_rule(m: int, grade: float | None) -> tuple[np.ndarray, np.ndarray]:
    """Rule on (0, 1) for smooth integrands, optionally graded towards 0.

    ``grade`` is the distance scale of a nearby singularity outside the
    interval; panels shrink geometrically down to that scale.
    """
    if grade is None or grade >= 0.25:
        t, w = _reference_rule(m)
        return 0.5 * (t + 1.0), 0.5 * w
    levels = max(1, math.ceil(math.log(0.25 / grade) / math.log(4.0)))
    edges = [0.0] + [grade * 4.0**j for j in range(levels)] + [1.0]
    edges = np.unique(np.clip(edges, 0.0, 1.0))
    t, w = _reference_rule(m)
    nodes, weights = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        nodes.append(0.5 * (lo + hi) + 0.5 * (hi - lo) * t)
        weights.append(0.5 * (hi - lo) * w)
    return np.concatenate(nodes), np.concatenate(weights)


def _uscale(dist: float | None, L: float) -> float | None:
    # both substitutions make x - end ~ u^2, so distances scale like sqrt
    return None if dist is None else 0.5 * math.sqrt(dist / L)


def inv_sqrt_rule(
    a: float,
    b: float,
    m: int,
    singular_ends: tuple[bool, bool] = (True, True),
    grade: tuple[float | None, float | None] = (None, None),
) -> QuadRule:
    """Rule for integrals of f(x)/sqrt(w(x)) with inverse square-root endpoint singularities.

    With both ends singular, w(x) = (x - a)(b - x) and x = c + h sin(t).
    With one singular end, w(x) is x - a (or b - x) and x = a + u^2 (or b - u^2).
    The returned weights already contain the weight 1/sqrt(w) and the Jacobian.
    ``grade`` gives, per end, the distance from that end to a nearby branch
    point outside (a, b); the rule is refined geometrically toward that end.
    """
    if not (math.isfinite(a) and math.isfinite(b)) or not a < b:
        raise InvalidIntervalError(f"invalid interval ({a}, {b})")
    left, right = singular_ends
    L = b - a
    if left and right:
        # t in (-pi/2, pi/2); dx/sqrt((x-a)(b-x)) = dt. Split at 0 to grade each half.
        u_r, w_r = _graded_unit_rule(m, _uscale(grade[1], L))
        u_l, w_l = _graded_unit_rule(m, _uscale(grade[0], L))
        # t = +-pi/2 (1 - u); offsets from the end are 2h sin^2(pi u / 4),
        # computed from u directly so that nodes near the ends keep full precision
        h = 0.5 * L
        x = np.concatenate([
            a + 2.0 * h * np.sin(0.25 * math.pi * u_l) ** 2,
            b - 2.0 * h * np.sin(0.25 * math.pi * u_r) ** 2,
        ])
        wt = 0.5 * math.pi * np.concatenate([w_l, w_r])
        order = np.argsort(x)
        return QuadRule(x[order], wt[order], (float(a), float(b)))
    if left or right:
        # u in (0, sqrt(L)); dx/sqrt(x-a) = 2 du
        g = grade[0] if left else grade[1]
        u, w = _graded_unit_rule(m, _uscale(g, L))
        r = math.sqrt(L)
        u = u * r
        w = 2.0 * w * r
        if left:
            x = a + u * u
        else:
            x = b - u * u
        order = np.argsort(x)
        return QuadRule(x[order], w[order], (float(a), float(b)))
    t, w = _reference_rule(m)
    return QuadRule(0.5 * (a + b) + 0.5 * L * t, 0.5 * L * w, (float(a), float(b)))


def integrate_inv_sqrt(
    f: Callable,
    a: float,
    b: float,
    m: int = 64,
    singular_ends: tuple[bool, bool] = (True, True),
    grade: tuple[float | None, float | None] = (None, None),
) -> float:
    """Integral of f(x)/sqrt((x-a)(b-x)) (or the one-sided analogue) over (a, b)."""
    return inv_sqrt_rule(a, b, m, singular_ends, grade).integrate(f)
