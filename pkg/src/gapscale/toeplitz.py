"""Toeplitz determinants of arc-indicator symbols and the associated
orthonormal polynomials on the unit circle."""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .errors import DomainError, PivotFailure, RecursionBreakdown
from .fredholm import log_gap_probability
from .quad import _reference_rule
from .sets import ArcSet, IntervalSet, as_interval_set

# halt when |alpha_j| >= 1 - ALPHA_GUARD
ALPHA_GUARD = 1e-12
# Gauss-Legendre panels used to discretize the arc measure
PANEL_NODES = 40
PANEL_PHASE = 16.0
# degrees for which explicit coefficient vectors are stored
COEFF_TABLE_MAX = 64


def symbol_coefficients(J: ArcSet, k):
    """Fourier coefficients f_k of the indicator of J with respect to d theta / 2 pi."""
    k = np.asarray(k)
    out = np.zeros(k.shape, dtype=complex)
    kf = k.astype(float)
    nz = k != 0
    safe = np.where(nz, kf, 1.0)
    for a, b in J.arcs:
        c, L = 0.5 * (a + b), b - a
        # (e^{-ika} - e^{-ikb}) / (2 pi i k) written without cancellation
        term = np.exp(-1j * safe * c) * np.sin(0.5 * safe * L) / (math.pi * safe)
        out += np.where(nz, term, L / (2 * math.pi))
    return complex(out) if out.ndim == 0 else out


def toeplitz_matrix(J: ArcSet, n: int) -> np.ndarray:
    f = symbol_coefficients(J, np.arange(n))
    idx = np.arange(n)[:, None] - np.arange(n)[None, :]
    T = np.where(idx >= 0, f[np.abs(idx)], np.conj(f[np.abs(idx)]))
    return T


def log_toeplitz_det_chol(J: ArcSet, n: int) -> float:
    """log D_n from a triangular factorization of the Hermitian Toeplitz matrix."""
    if n < 1:
        raise DomainError("n must be at least 1")
    T = toeplitz_matrix(J, n).astype(complex)
    scale = float(T[0, 0].real)
    logdet = 0.0
    smallest = math.inf
    # right-looking outer-product factorization, keeping the pivots
    for j in range(n):
        piv = T[j, j].real
        smallest = min(smallest, piv)
        if not piv > 1e-15 * scale:
            raise PivotFailure(f"pivot {j} is {piv:.3e}; matrix is numerically singular", piv)
        logdet += math.log(piv)
        if j + 1 < n:
            col = T[j + 1 :, j] / piv
            T[j + 1 :, j + 1 :] -= np.outer(col, np.conj(T[j + 1 :, j]))
    return logdet


def _fk_mp(J: ArcSet, k: int):
    s = mpmath.mpf(0)
    for a, b in J.arcs:
        a, b = mpmath.mpf(a), mpmath.mpf(b)
        c, L = (a + b) / 2, b - a
        if k == 0:
            s += L / (2 * mpmath.pi)
        else:
            s += mpmath.expj(-k * c) * mpmath.sin(k * L / 2) / (mpmath.pi * k)
    return s


def log_toeplitz_dets_levinson(J: ArcSet, n: int, dps: int | None = None) -> np.ndarray:
    """log D_1, ..., log D_n by the Levinson-Durbin recursion on the moments.

    With ``dps`` set the recursion runs in mpmath at that many digits.
    """
    if n < 1:
        raise DomainError("n must be at least 1")
    if dps is None:
        f = list(symbol_coefficients(J, np.arange(n)))
        conj, log, absq = np.conj, math.log, lambda v: abs(v) ** 2
    else:
        with mpmath.workdps(dps):
            f = [_fk_mp(J, k) for k in range(n)]
            return _levinson(f, mpmath.conj, mpmath.log, lambda v: abs(v) ** 2, mp=True)
    return _levinson(f, conj, log, absq, mp=False)


def _levinson(f, conj, log, absq, mp: bool) -> np.ndarray:
    n = len(f)
    E = f[0].real if not mp else mpmath.re(f[0])
    a: list = []
    logd = log(E)
    out = [logd]
    for j in range(1, n):
        acc = f[j]
        for i in range(len(a)):
            acc += a[i] * f[j - 1 - i]
        refl = -acc / E
        if absq(refl) >= 1 - ALPHA_GUARD:
            raise RecursionBreakdown(f"reflection coefficient {j} has modulus >= 1", j, complex(refl))
        a = [a[i] + refl * conj(a[len(a) - 1 - i]) for i in range(len(a))] + [refl]
        E = E * (1 - absq(refl))
        logd = logd + log(E)
        out.append(logd)
    return np.array([float(mpmath.re(v)) if mp else float(np.real(v)) for v in out])


def _arc_panel_edges(a: float, b: float, max_panel: float, finest: float) -> np.ndarray:
    """Panel edges on (a, b): uniform in the interior, halving toward both ends."""
    L = b - a
    if L <= 2 * finest:
        return np.array([a, b])
    grade = []
    h = min(max_panel, 0.25 * L)
    while h > finest:
        grade.append(h)
        h *= 0.5
    grade = np.array(grade + [0.0])
    lo = a + grade[::-1]
    hi = b - grade
    core_a, core_b = lo[-1], hi[0]
    npan = max(1, math.ceil((core_b - core_a) / max_panel))
    core = np.linspace(core_a, core_b, npan + 1)
    return np.concatenate([lo[:-1], core, hi[1:]])


def _measure_rule(J: ArcSet, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights discretizing d theta / 2 pi on J.

    Panels are short enough to resolve frequencies up to n + 1 and are refined
    geometrically toward each arc end, where phi_n varies on a 1/n^2 scale.
    """
    t, w = _reference_rule(PANEL_NODES)
    max_panel = min(0.5, PANEL_PHASE / (n + 2))
    finest = 0.01 / (n + 2) ** 2
    nodes, weights = [], []
    for a, b in J.arcs:
        edges = _arc_panel_edges(a, b, max_panel, finest)
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[:-1] + edges[1:])
        nodes.append((mid[:, None] + half[:, None] * t[None, :]).ravel())
        weights.append((half[:, None] * w[None, :]).ravel() / (2 * math.pi))
    return np.concatenate(nodes), np.concatenate(weights)


@dataclass(frozen=True)
class SzegoData:
    """Recurrence data of the orthonormal polynomials phi_0..phi_n on J.

    phi_{j+1}  = (z phi_j - conj(alpha_j) phi_j^*) / rho_j
    phi*_{j+1} = (phi_j^* - alpha_j z phi_j) / rho_j
    """

    J: ArcSet
    n: int
    f0: float
    alphas: np.ndarray
    rhos: np.ndarray
    log_dets: np.ndarray
    log_chi: np.ndarray
    coeff_table: tuple

    @property
    def log_det(self) -> float:
        return float(self.log_dets[-1])

    @property
    def chi(self) -> np.ndarray:
        return np.exp(self.log_chi)

    @property
    def coefficients(self) -> np.ndarray:
        return symbol_coefficients(self.J, np.arange(self.n))

    def eval(self, j: int, z, derivative: bool = False):
        """phi_j(z) (and phi_j'(z)) by the forward recurrence."""
        if not 0 <= j <= self.n:
            raise DomainError(f"degree {j} outside 0..{self.n}")
        z = np.asarray(z, dtype=complex)
        c0 = 1.0 / math.sqrt(self.f0)
        p = np.full(z.shape, c0, dtype=complex)
        ps = p.copy()
        dp = np.zeros(z.shape, dtype=complex)
        dps = np.zeros(z.shape, dtype=complex)
        for i in range(j):
            ab = np.conj(self.alphas[i])
            al = self.alphas[i]
            r = self.rhos[i]
            zp = z * p
            if derivative:
                dzp = p + z * dp
                dp, dps = (dzp - ab * dps) / r, (dps - al * dzp) / r
            p, ps = (zp - ab * ps) / r, (ps - al * zp) / r
        if derivative:
            return p, dp
        return p

    def eval_horner(self, j: int, z):
        """phi_j(z) by Horner's rule on the stored coefficient vector."""
        if j >= len(self.coeff_table):
            raise DomainError(f"coefficients stored only up to degree {len(self.coeff_table) - 1}")
        c = self.coeff_table[j]
        z = np.asarray(z, dtype=complex)
        acc = np.zeros(z.shape, dtype=complex)
        for coef in c[::-1]:
            acc = acc * z + coef
        return acc

    def F(self, z):
        """n |phi_n|^2 - 2 Re(z conj(phi_n) phi_n'); equals -sum_{k<n} |phi_k|^2 on the circle."""
        p, dp = self.eval(self.n, z, derivative=True)
        z = np.asarray(z, dtype=complex)
        return self.n * np.abs(p) ** 2 - 2.0 * np.real(z * np.conj(p) * dp)

    def kernel_sum(self, z1, z2):
        """sum_{j<n} phi_j(z1) conj(phi_j(z2)) by direct summation."""
        z1 = np.asarray(z1, dtype=complex)
        z2 = np.asarray(z2, dtype=complex)
        z1, z2 = np.broadcast_arrays(z1, z2)
        c0 = 1.0 / math.sqrt(self.f0)
        p1 = np.full(z1.shape, c0, dtype=complex)
        p1s = p1.copy()
        p2, p2s = p1.copy(), p1.copy()
        acc = p1 * np.conj(p2)
        for i in range(self.n - 1):
            ab, al, r = np.conj(self.alphas[i]), self.alphas[i], self.rhos[i]
            q1, q2 = z1 * p1, z2 * p2
            p1, p1s = (q1 - ab * p1s) / r, (p1s - al * q1) / r
            p2, p2s = (q2 - ab * p2s) / r, (p2s - al * q2) / r
            acc = acc + p1 * np.conj(p2)
        return acc


def log_toeplitz_det_szego(J: ArcSet, n: int) -> SzegoData:
    """Szego recursion run on a quadrature discretization of the arc measure.

    The recursion works on the values of phi_j and phi_j^* at the nodes, so
    each step costs one pass over the nodes and no moment matrix is formed.
    """
    if n < 1:
        raise DomainError("n must be at least 1")
    t, w = _measure_rule(J, n)
    z = np.exp(1j * t)
    sw = np.sqrt(w)
    f0 = float(symbol_coefficients(J, 0).real)
    phi = sw / math.sqrt(f0)
    phis = phi.copy()
    alphas = np.zeros(n, dtype=complex)
    rhos = np.zeros(n)
    for j in range(n):
        zp = z * phi
        abar = np.vdot(phis, zp)
        if abs(abar) >= 1 - ALPHA_GUARD:
            raise RecursionBreakdown(f"|alpha_{j}| = {abs(abar):.15f} reached 1", j, complex(np.conj(abar)))
        new = zp - abar * phis
        news = phis - np.conj(abar) * zp
        r = float(np.linalg.norm(new))
        phi, phis = new / r, news / r
        alphas[j] = np.conj(abar)
        rhos[j] = r
    log_rho = np.log(rhos)
    log_chi = -0.5 * math.log(f0) - np.concatenate([[0.0], np.cumsum(log_rho)])
    # log D_{j+1} = log D_j - 2 log chi_j
    log_dets = np.cumsum(-2.0 * log_chi[:n])
    table = _coefficient_table(f0, alphas, rhos, min(n, COEFF_TABLE_MAX))
    return SzegoData(J, n, f0, alphas, rhos, log_dets, log_chi, table)


def _coefficient_table(f0: float, alphas, rhos, jmax: int) -> tuple:
    c = np.array([1.0 / math.sqrt(f0)], dtype=complex)
    table = [c]
    for j in range(jmax):
        cs = np.conj(c[::-1])
        zc = np.concatenate([[0.0], c])
        cs = np.concatenate([cs, [0.0]])
        ab = np.conj(alphas[j])
        c = (zc - ab * cs) / rhos[j]
        table.append(c)
    return tuple(table)


def orthonormal_poly_eval(data: SzegoData, j: int, z):
    if j < len(data.coeff_table):
        return data.eval_horner(j, z)
    return data.eval(j, z)


def cd_kernel(data: SzegoData, s: float, y1, y2):
    """Christoffel-Darboux kernel H_n(y1, y2) with z_j = exp(2 i s y_j / n).

    H_n(y1, y2) = (s / pi n) sum_{j<n} phi_j(z1) conj(phi_j(z2)); it is
    Hermitian, H_n(y2, y1) = conj(H_n(y1, y2)).
    """
    n = data.n
    y1 = np.asarray(y1, dtype=float)
    y2 = np.asarray(y2, dtype=float)
    y1, y2 = np.broadcast_arrays(y1, y2)
    z1 = np.exp(2j * s * y1 / n)
    z2 = np.exp(2j * s * y2 / n)
    p1 = data.eval(n, z1)
    p2 = data.eval(n, z2)
    w = z1 / z2
    num = w**n * p2 * np.conj(p1) - np.conj(p2) * p1
    den = 1.0 - w
    near = np.abs(2 * s * (y1 - y2) / n) < 1e-6
    safe = np.where(near, 1.0, den)
    out = (s / (math.pi * n)) * num / safe
    if np.any(near):
        direct = (s / (math.pi * n)) * data.kernel_sum(z1, z2)
        out = np.where(near, direct, out)
    return complex(out) if out.ndim == 0 else out


def arcs_for_identity(theta0: float, theta1: float, theta2: float) -> ArcSet:
    return ArcSet.with_small_arc(theta0, theta1, theta2)


def diff_identity_check(
    n: int,
    theta0: float,
    theta1: float = 2.0,
    theta2: float = -2.0,
    step: float = 1e-5,
    dps: int = 40,
) -> tuple[float, float]:
    """Both sides of d/d theta0 log D_n(J) = -(F(a) + F(conj a)) / 2 pi.

    The left side is a central difference of log D_n from high-precision
    Levinson on exact moments; the right side uses phi_n and its exact
    derivative from the Szego recursion.
    """
    if not 10 * step < theta0 < min(theta1, -theta2) - 10 * step:
        raise DomainError("theta0 too close to an endpoint for the difference step")

    def logd(t0):
        return log_toeplitz_dets_levinson(arcs_for_identity(t0, theta1, theta2), n, dps=dps)[-1]

    lhs = (logd(theta0 + step) - logd(theta0 - step)) / (2 * step)
    data = log_toeplitz_det_szego(arcs_for_identity(theta0, theta1, theta2), n)
    a = np.exp(1j * theta0)
    rhs = -float(data.F(a) + data.F(np.conj(a))) / (2 * math.pi)
    return float(lhs), rhs


def limit_arcs(s: float, A: IntervalSet, n: int) -> ArcSet:
    """Arc set whose complement is exp(2 i s A / n)."""
    return ArcSet.scaled_complement(s, as_interval_set(A), n)


def fredholm_limit_gap(s: float, A, n: int, m: int | None = None) -> float:
    """|D_n(J^(n)) - det(I - K_s)_A| for the arcs whose complement is exp(2 i s A / n)."""
    A = as_interval_set(A)
    J = limit_arcs(s, A, n)
    logd = log_toeplitz_det_szego(J, n).log_det
    logp = log_gap_probability(s, A, m)
    return abs(math.exp(logd) - math.exp(logp))
