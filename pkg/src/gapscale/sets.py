"""Unions of real intervals and of arcs on the unit circle."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidIntervalError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class IntervalSet:
    """Sorted union of disjoint open intervals ``(left, right)``."""

    intervals: tuple[tuple[float, float], ...]

    def __post_init__(self):
        ivs = tuple((float(a), float(b)) for a, b in self.intervals)
        if not ivs:
            raise InvalidIntervalError("an IntervalSet needs at least one interval")
        for a, b in ivs:
            if not (math.isfinite(a) and math.isfinite(b)) or not a < b:
                raise InvalidIntervalError(f"invalid interval ({a}, {b})")
        ivs = tuple(sorted(ivs))
        for (_, b0), (a1, _) in zip(ivs, ivs[1:]):
            if a1 < b0:
                raise InvalidIntervalError(f"intervals overlap near {a1}")
        object.__setattr__(self, "intervals", ivs)

    @classmethod
    def of(cls, *pairs: Sequence[float]) -> "IntervalSet":
        return cls(tuple(tuple(p) for p in pairs))

    @classmethod
    def two_gaps(cls, alpha: float, beta: float, nu: float) -> "IntervalSet":
        """``(alpha, -nu) U (nu, beta)``; a single interval when ``nu == 0``."""
        if nu == 0:
            return cls(((alpha, beta),))
        if not alpha < -nu < 0 < nu < beta:
            raise InvalidIntervalError("need alpha < -nu < 0 < nu < beta")
        return cls(((alpha, -nu), (nu, beta)))

    @property
    def length(self) -> float:
        return math.fsum(b - a for a, b in self.intervals)

    @property
    def hull(self) -> tuple[float, float]:
        return self.intervals[0][0], self.intervals[-1][1]

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def contains(self, x) -> np.ndarray | bool:
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape, dtype=bool)
        for a, b in self.intervals:
            out |= (x > a) & (x < b)
        return out if out.ndim else bool(out)

    def issubset(self, other: "IntervalSet") -> bool:
        return all(
            any(c <= a and b <= d for c, d in other.intervals) for a, b in self.intervals
        )


def _wrap(theta: float) -> float:
    """Representative of ``theta`` in ``[0, 2*pi)``."""
    t = math.fmod(theta, TWO_PI)
    return t + TWO_PI if t < 0 else t


@dataclass(frozen=True)
class ArcSet:
    """Union of disjoint open arcs ``{exp(i t): start < t < end}``.

    Arcs are positively oriented; ``end - start`` lies in ``(0, 2*pi]`` and the
    endpoints may be any real angles, so an arc through ``-1`` is written
    e.g. ``(theta1, 2*pi + theta2)``.
    """

    arcs: tuple[tuple[float, float], ...]

    def __post_init__(self):
        arcs = tuple((float(a), float(b)) for a, b in self.arcs)
        if not arcs:
            raise InvalidIntervalError("an ArcSet needs at least one arc")
        for a, b in arcs:
            if not a < b or b - a > TWO_PI * (1 + 1e-15):
                raise InvalidIntervalError(f"invalid arc ({a}, {b})")
        arcs = tuple(sorted(arcs, key=lambda ab: _wrap(ab[0])))
        if math.fsum(b - a for a, b in arcs) > TWO_PI * (1 + 1e-14):
            raise InvalidIntervalError("arcs cover more than the full circle")
        starts = [_wrap(a) for a, _ in arcs]
        for i, (a, b) in enumerate(arcs):
            nxt = starts[(i + 1) % len(arcs)] + (TWO_PI if i + 1 == len(arcs) else 0.0)
            if len(arcs) > 1 and starts[i] + (b - a) > nxt + 1e-14:
                raise InvalidIntervalError("arcs overlap")
        object.__setattr__(self, "arcs", arcs)

    @classmethod
    def full_circle(cls) -> "ArcSet":
        return cls(((-math.pi, math.pi),))

    @classmethod
    def one_arc(cls, theta1: float, theta2: float) -> "ArcSet":
        """The arc ``(theta1, pi] U (-pi, theta2)`` for ``theta2 < theta1``."""
        return cls(((theta1, TWO_PI + theta2),))

    @classmethod
    def with_small_arc(cls, theta0: float, theta1: float, theta2: float) -> "ArcSet":
        """``(-theta0, theta0)`` together with the arc ``(theta1, pi] U (-pi, theta2)``."""
        if not -math.pi < theta2 < 0 < theta0 < theta1 < math.pi or theta0 >= -theta2:
            raise InvalidIntervalError("need -pi < theta2 < -theta0 < 0 < theta0 < theta1 < pi")
        return cls(((-theta0, theta0), (theta1, TWO_PI + theta2)))

    @classmethod
    def scaled_complement(cls, s: float, A: IntervalSet, n: int) -> "ArcSet":
        """Complement of ``{exp(2 i s x / n): x in A}`` on the circle."""
        lo, hi = A.hull
        if 2 * s * max(abs(lo), abs(hi)) / n >= math.pi:
            raise InvalidIntervalError("scaled set wraps around the circle; increase n")
        gaps = cls(tuple((2 * s * a / n, 2 * s * b / n) for a, b in A.intervals))
        return gaps.complement()

    @property
    def measure(self) -> float:
        return math.fsum(b - a for a, b in self.arcs)

    def contains(self, theta) -> np.ndarray | bool:
        t = np.asarray(theta, dtype=float)
        out = np.zeros(t.shape, dtype=bool)
        for a, b in self.arcs:
            d = np.mod(t - a, TWO_PI)
            out |= (d > 0) & (d < b - a)
        return out if out.ndim else bool(out)

    def complement(self) -> "ArcSet":
        if self.measure >= TWO_PI * (1 - 1e-15):
            raise InvalidIntervalError("complement of the full circle is empty")
        starts = [a for a, _ in self.arcs]
        ends = [b for _, b in self.arcs]
        out = []
        for i in range(len(self.arcs)):
            a = ends[i]
            b = starts[(i + 1) % len(self.arcs)]
            b = a + math.fmod(b - a, TWO_PI)
            if b < a:
                b += TWO_PI
            if b - a > 0:
                out.append((a, b))
        return ArcSet(tuple(out))

    def __iter__(self):
        return iter(self.arcs)

    def __len__(self) -> int:
        return len(self.arcs)


def as_interval_set(obj: IntervalSet | Iterable[Sequence[float]]) -> IntervalSet:
    if isinstance(obj, IntervalSet):
        return obj
    return IntervalSet(tuple(tuple(p) for p in obj))
