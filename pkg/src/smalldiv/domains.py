"""Complex multiplier domains built from a circle distance profile.

The excluded set is a finite union of open intervals around rationals,
viewed on the circle R/Z.  The distance to the kept set A is a tent over
each excluded arc and zero on A; intervals touching both endpoints 0 and 1
are one arc through the seam and get a single wrapped tent.  Lifting with
E(z) = exp(2 pi i z) turns

    {z : |Im z| >= profile(Re z)}  together with 0 and infinity

into a compact set K whose complement components are images of open
diamonds over the excluded arcs.  Truncating the exclusions at a
denominator cutoff only lowers the profile, so the computed K is a
superset of the untruncated one; the interval set's provenance records
the cutoff.  Tent apexes stay at height <= 1/2, hence every complement
point of K has modulus strictly between e^(-pi) and e^(pi).
"""

from __future__ import annotations

import bisect
import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .arith_sets import IntervalSet
from .errors import BoundaryTooClose

TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class Diamond:
    """Open diamond {|Im z| < min(Re z - lo, hi - Re z)} over an excluded
    arc; lo may be negative for the arc through the seam."""

    lo: Fraction
    hi: Fraction

    @property
    def apex(self) -> Tuple[Fraction, Fraction]:
        return (self.lo + self.hi) / 2, (self.hi - self.lo) / 2

    def height(self, x: Fraction) -> Fraction:
        if not self.lo < x < self.hi:
            return Fraction(0)
        return min(x - self.lo, self.hi - x)

    def contains_z(self, z: complex) -> bool:
        x, y = z.real, z.imag
        lo, hi = float(self.lo), float(self.hi)
        return lo < x < hi and abs(y) < min(x - lo, hi - x)


class DistanceProfile:
    """Piecewise-linear x -> dist(x, A) on the circle, exact at rationals."""

    def __init__(self, excluded: IntervalSet):
        ivs = list(excluded.intervals)
        if len(ivs) == 1 and ivs[0][0] == 0 and ivs[0][1] == 1:
            raise ValueError("excluded set covers the whole circle")
        wrapped = len(ivs) >= 2 and ivs[0][0] == 0 and ivs[-1][1] == 1
        diamonds = []
        if wrapped:
            (a_last, _), (_, b_first) = ivs[-1], ivs[0]
            diamonds.append(Diamond(a_last - 1, b_first))
            ivs = ivs[1:-1]
        diamonds.extend(Diamond(a, b) for a, b in ivs)
        diamonds.sort(key=lambda d: d.lo)
        for d in diamonds:
            if d.apex[1] > Fraction(1, 2):
                raise ValueError("an excluded arc is longer than the half circle")
        self.excluded = excluded
        self.diamonds: Tuple[Diamond, ...] = tuple(diamonds)
        self._los = [d.lo for d in diamonds]
        self._base = diamonds[0].lo if diamonds else Fraction(0)
        self._f_lo = np.array([float(d.lo) for d in diamonds])
        self._f_hi = np.array([float(d.hi) for d in diamonds])

    def _reduce(self, x: Fraction) -> Fraction:
        x = Fraction(x)
        x -= x.numerator // x.denominator          # into [0, 1)
        if x >= self._base + 1:
            x -= 1                                  # into [base, base + 1)
        return x

    def phi(self, x) -> Fraction:
        """Exact distance from x (mod 1) to the kept set."""
        if not self.diamonds:
            return Fraction(0)
        x = self._reduce(x)
        idx = bisect.bisect_right(self._los, x) - 1
        if idx < 0:
            return Fraction(0)
        return self.diamonds[idx].height(x)

    def phi_float(self, x):
        """Vectorized float profile; x is taken mod 1."""
        if not self.diamonds:
            return np.zeros_like(np.asarray(x, dtype=float))
        xv = np.asarray(x, dtype=float)
        base = float(self._base)
        xr = base + np.mod(xv - base, 1.0)
        idx = np.searchsorted(self._f_lo, xr, side="right") - 1
        idx = np.clip(idx, 0, len(self._f_lo) - 1)
        tent = np.minimum(xr - self._f_lo[idx], self._f_hi[idx] - xr)
        out = np.where(tent > 0, tent, 0.0)
        return out if out.shape else float(out)

    @property
    def max_height(self) -> Fraction:
        return max((d.apex[1] for d in self.diamonds), default=Fraction(0))

    def breakpoints(self) -> List[Fraction]:
        """Sorted profile kinks over one period [base, base + 1]."""
        pts = {self._base, self._base + 1}
        for d in self.diamonds:
            pts.update((d.lo, d.apex[0], d.hi))
        return sorted(pts)

    def slope_at(self, lo: Fraction, hi: Fraction) -> int:
        """Profile slope on a kink-free piece (lo, hi): -1, 0, or +1."""
        mid = (lo + hi) / 2
        idx = bisect.bisect_right(self._los, mid) - 1
        if idx < 0:
            return 0
        d = self.diamonds[idx]
        if not d.lo < mid < d.hi:
            return 0
        return 1 if mid < d.apex[0] else -1


@dataclass(frozen=True)
class MelnikovResult:
    value: float
    error_estimate: float
    nodes: int
    min_distance: float


class MultiplierDomain:
    """The compact multiplier set K determined by a distance profile."""

    def __init__(self, profile: Union[DistanceProfile, IntervalSet]):
        if isinstance(profile, IntervalSet):
            profile = DistanceProfile(profile)
        self.profile = profile

    # ---- membership ----------------------------------------------------

    @staticmethod
    def coordinates(q: complex) -> Tuple[float, float]:
        """Inverse of q = exp(2 pi i (x + i y)): returns (x mod 1, y)."""
        q = complex(q)
        if q == 0:
            raise ValueError("q = 0 has no finite logarithm")
        x = cmath.phase(q) / TWO_PI % 1.0
        y = -math.log(abs(q)) / TWO_PI
        return x, y

    def contains(self, q) -> bool:
        """Float membership; 0 and infinity belong to K by definition."""
        q = complex(q)
        if q == 0 or abs(q) == math.inf:
            return True
        x, y = self.coordinates(q)
        return abs(y) >= self.profile.phi_float(x)

    def contains_exact(self, x: Fraction, y: Fraction) -> bool:
        """Exact membership of q = exp(2 pi i (x + i y)) given rational x, y."""
        return abs(Fraction(y)) >= self.profile.phi(x)

    def circle_contains(self, x) -> bool:
        """Exact: does exp(2 pi i x) lie in K (equivalently x in A)?"""
        return self.profile.phi(x) == 0

    def annulus_bounds(self) -> Tuple[float, float]:
        """Moduli reachable by complement points lie inside these bounds."""
        h = float(self.profile.max_height)
        return math.exp(-TWO_PI * h), math.exp(TWO_PI * h)

    # ---- boundary curves -----------------------------------------------

    def curve(self, side: str, n: int = 1024) -> np.ndarray:
        """Sampled boundary curve exp(2 pi i x) exp(-+ 2 pi profile(x)).

        side "inner" runs inside the unit circle, "outer" outside.
        """
        if side not in ("inner", "outer"):
            raise ValueError("side must be 'inner' or 'outer'")
        sgn = -1.0 if side == "inner" else 1.0
        x = np.linspace(0.0, 1.0, n, endpoint=False)
        r = np.exp(sgn * TWO_PI * self.profile.phi_float(x))
        return r * np.exp(2j * math.pi * x)

    def _pieces(self) -> List[Tuple[Fraction, Fraction, int]]:
        pts = self.profile.breakpoints()
        out = []
        for lo, hi in zip(pts[:-1], pts[1:]):
            if hi > lo:
                out.append((lo, hi, self.profile.slope_at(lo, hi)))
        return out

    def melnikov_sum(self, q: complex, base_nodes: int = 512,
                     min_clearance: float = 1e-9) -> MelnikovResult:
        """Quadrature of |d zeta| / |zeta - q|^3 over both boundary curves.

        On each kink-free piece of the profile the speed is
        2 pi sqrt(1 + slope^2) |zeta|; composite midpoint at two
        resolutions gives the value and a difference-based error estimate.
        Points closer than min_clearance to a curve are refused.
        """
        q = complex(q)
        total = 0.0
        err = 0.0
        nodes = 0
        min_dist = math.inf
        pieces = self._pieces()
        for sgn in (-1.0, 1.0):
            for lo, hi, slope in pieces:
                length = float(hi - lo)
                m = max(8, int(base_nodes * length))
                speed = TWO_PI * math.hypot(1.0, float(slope))
                vals = []
                for mm in (m, 2 * m):
                    t = float(lo) + length * (np.arange(mm) + 0.5) / mm
                    zeta = np.exp(2j * math.pi * t) * \
                        np.exp(sgn * TWO_PI * self.profile.phi_float(t))
                    d = np.abs(zeta - q)
                    min_dist = min(min_dist, float(d.min()))
                    if min_dist < min_clearance:
                        raise BoundaryTooClose(
                            f"q within {min_dist:.3g} of a boundary curve")
                    vals.append(float(np.sum(speed * np.abs(zeta) / d ** 3))
                                * length / mm)
                total += vals[1]
                err += abs(vals[1] - vals[0])
                nodes += 3 * m
        return MelnikovResult(total, err, nodes, min_dist)


@dataclass(frozen=True)
class Cone:
    """Non-tangential approach region at the circle point exp(2 pi i x):

        slope * |theta - x| <= |r - 1| <= depth

    for q = r exp(2 pi i theta).  A slope above 2 pi keeps the region
    inside K at points where the profile vanishes, by the Lipschitz bound
    on the profile."""

    x: Fraction
    slope: float = 7.0
    depth: float = 0.2

    def contains(self, q: complex) -> bool:
        q = complex(q)
        if q == 0:
            return False
        r = abs(q)
        theta = cmath.phase(q) / TWO_PI % 1.0
        dt = abs(theta - float(self.x) % 1.0)
        dt = min(dt, 1.0 - dt)
        return self.slope * dt <= abs(r - 1.0) <= self.depth

    def radial_points(self, n: int, side: str = "inner",
                      ratio: float = 0.5) -> np.ndarray:
        """Geometric radial approach along theta = x, inside the cone."""
        if side not in ("inner", "outer"):
            raise ValueError("side must be 'inner' or 'outer'")
        sgn = -1.0 if side == "inner" else 1.0
        base = cmath.exp(2j * math.pi * float(self.x))
        radii = 1.0 + sgn * self.depth * ratio ** np.arange(n)
        return radii * base


def cone_inside_domain(domain: MultiplierDomain, cone: Cone,
                       samples: int = 400, rng=None) -> Tuple[bool, Optional[complex]]:
    """Sample the cone; return (all inside K, first escape witness)."""
    rng = rng or np.random.default_rng(0)
    thetas = float(cone.x) + (rng.random(samples) - 0.5) * 2 * cone.depth / max(cone.slope, 1e-9)
    dts = np.abs(thetas - float(cone.x))
    lo = cone.slope * dts
    spans = np.maximum(cone.depth - lo, 0.0)
    offs = lo + rng.random(samples) * spans
    signs = np.where(rng.random(samples) < 0.5, -1.0, 1.0)
    qs = (1.0 + signs * offs) * np.exp(2j * math.pi * thetas)
    for q in qs:
        if cone.contains(q) and not domain.contains(q):
            return False, complex(q)
    return True, None
