"""Scalar functions built on two arcs near z = 1: g1, h, the local map zeta
and the constant Omega fixed by zeta(a) - zeta(conj a) = 4.

Geometry: J1 = {e^{it}: |t| < theta0} and J2 = {e^{it}: theta1 < t <= pi or
-pi < t < theta2}, with b_j = e^{i theta_j} and a = e^{i theta0}.  The "+" side
of a positively oriented arc of the unit circle is the inside of the disc.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import BracketFailure, BranchError, DomainError

SIDE_OFFSET = 1e-9
U0_RADIUS_CONSTANT = 0.25


def _expm1i(t: float) -> complex:
    """e^{it} - 1 without cancellation."""
    return 2j * math.sin(0.5 * t) * complex(math.cos(0.5 * t), math.sin(0.5 * t))


def _log1p_c(u):
    """Principal log(1 + u) for complex u, accurate when |u| is small."""
    u = np.asarray(u, dtype=complex)
    re = 0.5 * np.log1p(2.0 * u.real + u.real**2 + u.imag**2)
    im = np.arctan2(u.imag, 1.0 + u.real)
    return re + 1j * im


@dataclass(frozen=True)
class ScalingContext:
    theta0: float
    theta1: float
    theta2: float
    omega: float | None = None
    s: float | None = None
    n: float | None = None
    radius_constant: float = U0_RADIUS_CONSTANT

    def __post_init__(self):
        if not -math.pi < self.theta2 < 0 < self.theta0 < self.theta1 < math.pi:
            raise DomainError("need -pi < theta2 < 0 < theta0 < theta1 < pi")
        if self.theta0 >= -self.theta2:
            raise DomainError("J1 must not reach b2")

    @classmethod
    def from_u(cls, s: float, n: float, u0: float, u1: float, u2: float, **kw) -> "ScalingContext":
        return cls(s * u0 / n, s * u1 / n, s * u2 / n, s=s, n=n, **kw)

    # endpoints and small differences e_j = 1 - b_j
    @property
    def a(self) -> complex:
        return complex(math.cos(self.theta0), math.sin(self.theta0))

    @property
    def b1(self) -> complex:
        return complex(math.cos(self.theta1), math.sin(self.theta1))

    @property
    def b2(self) -> complex:
        return complex(math.cos(self.theta2), math.sin(self.theta2))

    @property
    def e1(self) -> complex:
        return -_expm1i(self.theta1)

    @property
    def e2(self) -> complex:
        return -_expm1i(self.theta2)

    @property
    def u0(self) -> float:
        return self.theta0 * self.n / self.s

    @property
    def u1(self) -> float:
        return self.theta1 * self.n / self.s

    @property
    def u2(self) -> float:
        return self.theta2 * self.n / self.s

    def omega_leading(self) -> float:
        """pi s sqrt|u1 u2| / (n log(8 / ((1/u1 - 1/u2) u0)))."""
        t0, t1, t2 = self.theta0, self.theta1, self.theta2
        # invariant under the s/n scaling: written directly in angles
        return math.pi * math.sqrt(abs(t1 * t2)) / math.log(8.0 / ((1 / t1 - 1 / t2) * t0))

    def _scale(self) -> float:
        # s/n when known; otherwise the arc scale sqrt|theta1 theta2|
        if self.s is not None and self.n is not None:
            return self.s / self.n
        return math.sqrt(abs(self.theta1 * self.theta2))

    def u0_radius(self) -> float:
        """Radius c s / (n log(1/u0)) of the disc around 1 on which zeta is used."""
        sn = self._scale()
        return self.radius_constant * sn / math.log(sn / self.theta0)

    # points are handled through their offset z - 1 to keep precision near 1
    @staticmethod
    def circle_offset(theta, radius=1.0):
        """z - 1 for z = radius * e^{i theta}, without cancellation."""
        theta = np.asarray(theta, dtype=float)
        radius = np.asarray(radius, dtype=float)
        e = 2j * np.sin(0.5 * theta) * np.exp(0.5j * theta)
        out = radius * e + (radius - 1.0)
        return complex(out) if out.ndim == 0 else out

    @staticmethod
    def _offset(z=None, offset=None) -> np.ndarray:
        if (z is None) == (offset is None):
            raise ValueError("give exactly one of z and offset")
        if offset is not None:
            return np.asarray(offset, dtype=complex)
        return np.asarray(z, dtype=complex) - 1.0

    def _diffs(self, zm1):
        """(z - 1, z - b1, z - b2), exact zeros at the branch points."""
        zm1 = np.asarray(zm1, dtype=complex)
        zb1 = zm1 + self.e1
        zb2 = zm1 + self.e2
        snap1 = np.abs(zb1) < 1e-14
        snap2 = np.abs(zb2) < 1e-14
        zm1 = np.where(snap1, -self.e1, np.where(snap2, -self.e2, zm1))
        zb1 = np.where(snap1, 0.0, np.where(snap2, self.e1 - self.e2, zb1))
        zb2 = np.where(snap2, 0.0, np.where(snap1, self.e2 - self.e1, zb2))
        return zm1, zb1, zb2

    # square root r(z) = ((z - b1)(z - b2))^{1/2}, cut on J2, r ~ z at +infinity
    def _cut_direction(self) -> complex:
        mid = -complex(math.cos(0.5 * (self.theta1 + self.theta2)), math.sin(0.5 * (self.theta1 + self.theta2)))
        w = (mid - self.b2) / (mid - self.b1)
        return w / abs(w)

    def _sqrt_cut(self, w):
        # principal sqrt rotated so that its cut is the image of J2 under w
        d = self._cut_direction()
        return np.sqrt(-d) * np.sqrt(w / (-d))

    def _r(self, zm1):
        _, zb1, zb2 = self._diffs(zm1)
        safe = np.where(zb1 == 0, 1.0, zb1)
        sigma = 1.0 / complex(self._sqrt_cut(1.0 + 0j))
        return np.where(zb1 == 0, 0.0, sigma * safe * self._sqrt_cut(zb2 / safe))

    def r(self, z=None, *, offset=None):
        out = self._r(self._offset(z, offset))
        return complex(out) if out.ndim == 0 else out

    def r_one(self) -> complex:
        return complex(self._r(np.asarray(0j)))

    # g1
    def _g1(self, zm1, rz):
        sb1 = complex(math.cos(0.5 * self.theta1), math.sin(0.5 * self.theta1))
        sb2 = complex(math.cos(0.5 * self.theta2), math.sin(0.5 * self.theta2))
        # z + sqrt(b1 b2) + r - (sqrt b1 + sqrt b2) = (z-1) + (1-sqrt b1)(1-sqrt b2) + r
        f1 = -_expm1i(0.5 * self.theta1)
        f2 = -_expm1i(0.5 * self.theta2)
        zm1, _, _ = self._diffs(zm1)
        return _log1p_c((zm1 + f1 * f2 + rz) / (sb1 + sb2))

    def g1(self, z=None, *, offset=None):
        """log((z + sqrt(b1 b2) + r(z)) / (sqrt b1 + sqrt b2)), principal logarithm."""
        zm1 = self._offset(z, offset)
        if np.any(self._on_j2(zm1)):
            raise BranchError("g1 evaluated on J2; use g1_side")
        out = self._g1(zm1, self._r(zm1))
        return complex(out) if out.ndim == 0 else out

    # h = log R, continuous off the arc from b1 counterclockwise to 1
    def _R(self, zm1, rz=None):
        e1, e2 = self.e1, self.e2
        rz = self._r(zm1) if rz is None else rz
        zm1, _, _ = self._diffs(zm1)
        num = 0.5 * (e1 - e2) * zm1
        den = 0.5 * (e1 + e2) * zm1 + e1 * e2 + rz * self.r_one()
        return num / den

    def R(self, z=None, *, offset=None):
        """exp(h(z)) = ((b2-b1)/2)(z-1) / (z(1-(b1+b2)/2) + b1 b2 - (b1+b2)/2 + r(z) r(1))."""
        out = self._R(self._offset(z, offset))
        return complex(out) if out.ndim == 0 else out

    def _angle_radius(self, zm1):
        z = 1.0 + zm1
        return np.angle(z), np.abs(z)

    def _on_j2(self, zm1, tol: float = 1e-13):
        zm1 = np.asarray(zm1, dtype=complex)
        th, rad = self._angle_radius(zm1)
        # the branch points themselves carry no jump
        ends = (np.abs(zm1 + self.e1) < 1e-14) | (np.abs(zm1 + self.e2) < 1e-14)
        return (np.abs(rad - 1.0) <= tol) & ((th >= self.theta1 - tol) | (th <= self.theta2 + tol)) & ~ends

    def _on_h_cut(self, zm1, tol: float = 1e-13):
        zm1 = np.asarray(zm1, dtype=complex)
        th, rad = self._angle_radius(zm1)
        # h is continuous at b1, where both boundary values vanish
        at_b1 = np.abs(zm1 + self.e1) < 1e-14
        return (np.abs(rad - 1.0) <= tol) & ((th >= self.theta1 - tol) | (th <= tol)) & ~at_b1

    def _h_path(self, z: complex):
        """Parametrized path t in [0, 1] from a point of the arc (0, theta1) to z avoiding the cut of h.

        Points inside the disc are reached along a chord; points outside go
        out radially to radius at least 2, around, and back in, so that the
        path meets the unit circle only at its end.
        """
        p = complex(math.cos(0.5 * self.theta1), math.sin(0.5 * self.theta1))
        rho = abs(z)
        if rho <= 1.0:
            return lambda t: p + (z - p) * t
        big = max(rho, 2.0)
        phi0, phi1 = 0.5 * self.theta1, math.atan2(z.imag, z.real)

        def path(t):
            t = 3.0 * np.asarray(t, dtype=float)
            a = np.clip(t, 0.0, 1.0)
            b = np.clip(t - 1.0, 0.0, 1.0)
            c = np.clip(t - 2.0, 0.0, 1.0)
            radius = np.where(t <= 1.0, 1.0 + (big - 1.0) * a, np.where(t <= 2.0, big, big + (rho - big) * c))
            angle = phi0 + (phi1 - phi0) * b
            return radius * np.exp(1j * angle)

        return path

    def _h_phase(self, z: complex) -> float:
        """Unwrapped phase of R at z, continued from the arc (0, theta1) where h is real."""
        path = self._h_path(z)
        # parameter samples clustered geometrically toward both path ends
        t = np.concatenate([np.linspace(0, 1, 257), 1 - np.logspace(-16, -0.5, 160), np.logspace(-16, -0.5, 160)])
        t = np.unique(np.clip(t, 0, 1))
        ang = np.unwrap(np.angle(self._R(path(t) - 1.0)))
        for _ in range(60):
            jumps = np.abs(np.diff(ang)) > 0.5
            if not np.any(jumps):
                break
            mids = 0.5 * (t[:-1] + t[1:])[jumps]
            t = np.insert(t, np.nonzero(jumps)[0] + 1, mids)
            ang = np.unwrap(np.angle(self._R(path(t) - 1.0)))
        else:
            raise BranchError("could not track the phase of exp(h) along the path")
        return float(ang[-1] - round(ang[0] / (2 * math.pi)) * 2 * math.pi)

    def _h_point(self, zm1: complex, rz=None, phase_from: complex | None = None) -> complex:
        val = complex(self._R(np.asarray(zm1), rz))
        base = complex(np.log(val))
        target = self._h_phase(1.0 + (zm1 if phase_from is None else phase_from))
        k = round((target - base.imag) / (2 * math.pi))
        return base + 2j * math.pi * k

    def h(self, z=None, *, offset=None):
        """Continuous logarithm of R on the complement of the arc from b1 to 1 through -1."""
        zm1 = np.atleast_1d(self._offset(z, offset))
        if np.any(np.abs(zm1) < 1e-300):
            raise DomainError("h has a logarithmic singularity at z = 1")
        if np.any(self._on_h_cut(zm1)):
            raise BranchError("h evaluated on its cut; use h_side")
        out = np.array([self._h_point(complex(v)) for v in zm1.ravel()]).reshape(zm1.shape)
        scalar = np.ndim(z if offset is None else offset) == 0
        return complex(out[0]) if scalar else out

    def h_infinity(self) -> complex:
        """log((b2 - b1) / ((1 - b1)^{1/2} + (1 - b2)^{1/2})^2), principal branches."""
        val = (self.b2 - self.b1) / (np.sqrt(self.e1) + np.sqrt(self.e2)) ** 2
        return complex(np.log(val))

    # boundary values on the unit circle; "+" is the inside of the disc
    @staticmethod
    def _side_offset(zm1: complex, side: str) -> complex:
        if side not in ("+", "-"):
            raise ValueError("side must be '+' or '-'")
        d = SIDE_OFFSET if side == "+" else -SIDE_OFFSET
        # z (1 - d) - 1
        return zm1 * (1.0 - d) - d

    def _r_side(self, zm1: complex, side: str) -> complex:
        ref = complex(self._r(np.asarray(self._side_offset(zm1, side))))
        _, zb1, zb2 = self._diffs(zm1)
        r0 = complex(np.sqrt(zb1) * np.sqrt(zb2))
        return r0 if abs(r0 - ref) <= abs(r0 + ref) else -r0

    def _each(self, fn, z, offset):
        zm1 = np.atleast_1d(self._offset(z, offset))
        out = np.array([fn(complex(v)) for v in zm1.ravel()]).reshape(zm1.shape)
        scalar = np.ndim(z if offset is None else offset) == 0
        return complex(out[0]) if scalar else out

    def r_side(self, z=None, side: str = "+", *, offset=None):
        """Boundary value of r on J2 from the given side."""
        return self._each(lambda v: self._r_side(v, side), z, offset)

    def g1_side(self, z=None, side: str = "+", *, offset=None):
        return self._each(lambda v: complex(self._g1(np.asarray(v), self._r_side(v, side))), z, offset)

    def h_side(self, z=None, side: str = "+", *, offset=None):
        """Boundary value of h on its cut from the given side."""

        def one(v):
            rz = self._r_side(v, side) if bool(self._on_j2(v)) else None
            return self._h_point(v, rz, phase_from=self._side_offset(v, side))

        return self._each(one, z, offset)

    # zeta and Omega
    def _zeta_parts(self, zm1):
        zm1 = np.asarray(zm1, dtype=complex)
        return self._R(zm1), self._g1(zm1, self._r(zm1)) - 0.5 * _log1p_c(zm1)

    def in_u0(self, z=None, *, offset=None) -> np.ndarray:
        return np.abs(self._offset(z, offset)) < self.u0_radius()

    def zeta(self, z=None, omega: float | None = None, check_domain: bool = True, *, offset=None):
        """R(z) exp((2 pi / Omega)(g1(z) - log(z)/2)); single-valued near 1."""
        om = self.omega if omega is None else omega
        if om is None:
            raise DomainError("Omega has not been solved; call solve_omega first")
        zm1 = self._offset(z, offset)
        if check_domain and not np.all(np.abs(zm1) < self.u0_radius()):
            raise DomainError("zeta is only defined on the disc U0 around 1")
        Rz, gz = self._zeta_parts(zm1)
        out = Rz * np.exp((2 * math.pi / om) * gz)
        return complex(out) if np.ndim(out) == 0 else out

    def zeta_gap(self, omega: float) -> float:
        """zeta(a) - zeta(conj a) as a function of Omega (real up to rounding)."""
        za = self.circle_offset(self.theta0)
        zb = self.circle_offset(-self.theta0)
        Ra, ga = self._zeta_parts(za)
        Rb, gb = self._zeta_parts(zb)
        val = Ra * np.exp((2 * math.pi / omega) * ga) - Rb * np.exp((2 * math.pi / omega) * gb)
        return float(np.real(val))

    def solve_omega(self, tol: float = 1e-13, maxiter: int = 400) -> "ScalingContext":
        """Bisection in log Omega on [Omega_hat / 10, 10 Omega_hat]."""
        lead = self.omega_leading()
        lo, hi = lead / 10.0, 10.0 * lead
        flo, fhi = self.zeta_gap(lo) - 4.0, self.zeta_gap(hi) - 4.0
        if not (flo > 0 > fhi):
            raise BracketFailure("zeta(a) - zeta(conj a) - 4 does not change sign on the bracket", flo, fhi)
        mid = math.sqrt(lo * hi)
        for _ in range(maxiter):
            mid = math.sqrt(lo * hi)
            fm = self.zeta_gap(mid) - 4.0
            if abs(fm) <= tol or hi / lo - 1.0 < 4e-16:
                break
            if fm > 0:
                lo = mid
            else:
                hi = mid
        return replace(self, omega=mid)

    def omega_residual(self) -> float:
        if self.omega is None:
            raise DomainError("Omega has not been solved")
        return abs(self.zeta_gap(self.omega) - 4.0)


def g1(ctx: ScalingContext, z):
    return ctx.g1(z)


def h_func(ctx: ScalingContext, z):
    return ctx.h(z)


def zeta_map(ctx: ScalingContext, z):
    return ctx.zeta(z)


def solve_omega(ctx: ScalingContext) -> float:
    return ctx.solve_omega().omega


def _grid(lo: float, hi: float, m: int) -> np.ndarray:
    # interior points, denser toward both ends
    u = 0.5 - 0.5 * np.cos(np.pi * (np.arange(m) + 0.5) / m)
    return lo + (hi - lo) * u


def identity_report(ctx: ScalingContext, points: int = 100) -> dict:
    """Maximal errors of the jump and special-value relations of g1 and h, and the Omega solve."""
    O = ctx.circle_offset
    t_j2 = _grid(ctx.theta1, 2 * math.pi + ctx.theta2, points)
    z_j2 = O(t_j2)
    # g1 is a principal logarithm, so its own cut decides where the 2 pi i lands
    d = ctx.g1_side(offset=z_j2, side="+") + ctx.g1_side(offset=z_j2, side="-") - 1j * t_j2
    jump_g1 = np.abs(d - 2j * math.pi * np.round(d.imag / (2 * math.pi))).max()
    value_g1 = max(
        abs(ctx.g1(offset=O(ctx.theta1)) - 0.5j * ctx.theta1),
        abs(ctx.g1(offset=O(ctx.theta2)) - 0.5j * ctx.theta2),
    )
    hp, hm = ctx.h_side(offset=z_j2, side="+"), ctx.h_side(offset=z_j2, side="-")
    jumps = [np.abs(hp + hm).max()]
    for lo, hi, want in ((0.0, ctx.theta1, 0.0), (ctx.theta2, 0.0, 2j * math.pi)):
        z = O(_grid(lo, hi, points))
        jumps.append(np.abs(ctx.h_side(offset=z, side="+") - ctx.h_side(offset=z, side="-") - want).max())
    value_h = max(
        abs(ctx.h(offset=O(ctx.theta1))),
        abs(ctx.h_side(offset=O(ctx.theta2), side="+") - 1j * math.pi),
        abs(ctx.h_side(offset=O(ctx.theta2), side="-") + 1j * math.pi),
    )
    solved = ctx.solve_omega()
    return {
        "jump_g1": float(jump_g1),
        "value_g1": float(value_g1),
        "jump_h": float(max(jumps)),
        "value_h": float(value_h),
        "omega_leading": ctx.omega_leading(),
        "omega_solved": float(solved.omega),
        "omega_residual": solved.omega_residual(),
    }
