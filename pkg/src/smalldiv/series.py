"""Truncated power series and finite Fourier series.

PowerSeries keeps coefficients c_0..c_N in any ring with +, -, * (ints,
Fractions, complex, sympy expressions, dual numbers); a tail_discarded
flag records whether the object is an exact polynomial or a jet whose
higher coefficients are unknown.  Operations on exact polynomials stay
exact; once a truncated operand enters, the result is truncated at the
smallest truncation order involved.

FourierSeries keeps modes -N..N as complex numbers.  Evaluation runs two
Horner passes (nonnegative powers of w = exp(2 pi i theta), positive
powers of 1/w) so strips of moderate width never overflow, coefficient
recovery on n >= 2N+1 equidistant points is exact for band-limited data
via the FFT, and norms come either from grid suprema on |Im theta| = rho
or from the certified coefficient-sum upper bound sum |c_k| e^(2 pi |k| rho).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Sequence, Tuple, Union

import numpy as np

TWO_PI = 2 * math.pi
TWO_PI_I = 2j * math.pi


def _is_zero(c) -> bool:
    try:
        return c == 0
    except Exception:
        return False


@dataclass(frozen=True)
class PowerSeries:
    coeffs: Tuple
    tail_discarded: bool = False

    @staticmethod
    def from_coeffs(cs: Sequence, tail_discarded: bool = False) -> "PowerSeries":
        cs = tuple(cs)
        if not cs:
            cs = (0,)
        return PowerSeries(cs, tail_discarded)

    @staticmethod
    def zero() -> "PowerSeries":
        return PowerSeries((0,))

    @staticmethod
    def identity() -> "PowerSeries":
        return PowerSeries((0, 1))

    @staticmethod
    def monomial(k: int, c=1) -> "PowerSeries":
        return PowerSeries((0,) * k + (c,))

    @property
    def order(self) -> int:
        """Highest represented degree."""
        return len(self.coeffs) - 1

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def truncate(self, n: int) -> "PowerSeries":
        """Keep degrees <= n and mark the tail as discarded."""
        return PowerSeries(self.coeffs[:n + 1] or (0,), True)

    def _join_order(self, other: "PowerSeries") -> Optional[int]:
        orders = [s.order for s in (self, other) if s.tail_discarded]
        return min(orders) if orders else None

    def __add__(self, other):
        if not isinstance(other, PowerSeries):
            cs = list(self.coeffs)
            cs[0] = cs[0] + other
            return PowerSeries(tuple(cs), self.tail_discarded)
        cut = self._join_order(other)
        n = max(self.order, other.order) if cut is None else cut
        cs = tuple(self[k] + other[k] for k in range(n + 1))
        return PowerSeries(cs, cut is not None)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(tuple(-c for c in self.coeffs), self.tail_discarded)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            return PowerSeries(tuple(c * other for c in self.coeffs),
                               self.tail_discarded)
        cut = self._join_order(other)
        n = self.order + other.order if cut is None else cut
        out = [0] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if i > n or _is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                if i + j > n:
                    break
                out[i + j] = out[i + j] + a * b
        return PowerSeries(tuple(out), cut is not None)

    __rmul__ = __mul__

    def compose(self, inner: "PowerSeries", order: Optional[int] = None) -> "PowerSeries":
        """Horner composition self(inner(z)); inner must kill the constant
        term unless both series are exact polynomials.

        Coefficients of degree <= order only involve coefficients of the
        same degrees of the operands, so intermediates can be cut there.
        """
        if order is None and (self.tail_discarded or inner.tail_discarded):
            order = min(s.order for s in (self, inner) if s.tail_discarded)
        if order is not None and not _is_zero(inner[0]):
            raise ValueError("inner series needs zero constant term for a truncated compose")
        inner_x = PowerSeries(inner.coeffs)      # exact within the Horner loop
        acc = PowerSeries((self.coeffs[-1],))
        for k in range(self.order - 1, -1, -1):
            acc = acc * inner_x + self.coeffs[k]
            if order is not None:
                acc = PowerSeries(acc.coeffs[:order + 1])
        if order is not None:
            return PowerSeries(acc.coeffs[:order + 1], True)
        return acc

    def derivative(self) -> "PowerSeries":
        if self.order == 0:
            return PowerSeries((0,), self.tail_discarded)
        return PowerSeries(tuple(k * c for k, c in enumerate(self.coeffs))[1:],
                           self.tail_discarded)

    def map(self, f: Callable) -> "PowerSeries":
        return PowerSeries(tuple(f(c) for c in self.coeffs), self.tail_discarded)

    def __call__(self, z):
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * z + c
        return acc

    def nonzero_degrees(self) -> Tuple[int, ...]:
        return tuple(k for k, c in enumerate(self.coeffs) if not _is_zero(c))


@dataclass(frozen=True)
class FourierSeries:
    """Trigonometric polynomial sum_{k=-N..N} c_k exp(2 pi i k theta)."""

    coeffs: Tuple[complex, ...]

    def __post_init__(self):
        if len(self.coeffs) % 2 != 1:
            raise ValueError("need an odd number of modes -N..N")

    @staticmethod
    def zero(n: int) -> "FourierSeries":
        return FourierSeries((0j,) * (2 * n + 1))

    @staticmethod
    def from_modes(modes: Dict[int, complex], n: Optional[int] = None) -> "FourierSeries":
        if n is None:
            n = max((abs(k) for k in modes), default=0)
        cs = [0j] * (2 * n + 1)
        for k, c in modes.items():
            if abs(k) > n:
                raise ValueError(f"mode {k} outside band {n}")
            cs[k + n] = complex(c)
        return FourierSeries(tuple(cs))

    @property
    def n(self) -> int:
        return (len(self.coeffs) - 1) // 2

    def mode(self, k: int) -> complex:
        if abs(k) > self.n:
            return 0j
        return self.coeffs[k + self.n]

    @property
    def mean(self) -> complex:
        return self.mode(0)

    def modes(self) -> Dict[int, complex]:
        return {k: self.mode(k) for k in range(-self.n, self.n + 1)
                if self.mode(k) != 0}

    def pad(self, n: int) -> "FourierSeries":
        if n < self.n:
            raise ValueError("pad cannot shrink the band")
        extra = (0j,) * (n - self.n)
        return FourierSeries(extra + self.coeffs + extra)

    def _binop(self, other: "FourierSeries", f) -> "FourierSeries":
        n = max(self.n, other.n)
        a, b = self.pad(n), other.pad(n)
        return FourierSeries(tuple(f(x, y) for x, y in zip(a.coeffs, b.coeffs)))

    def __add__(self, other):
        if isinstance(other, FourierSeries):
            return self._binop(other, lambda x, y: x + y)
        cs = list(self.coeffs)
        cs[self.n] += complex(other)
        return FourierSeries(tuple(cs))

    __radd__ = __add__

    def __neg__(self):
        return FourierSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other if isinstance(other, FourierSeries) else -complex(other))

    def __mul__(self, other):
        if isinstance(other, FourierSeries):
            cs = np.convolve(np.array(self.coeffs), np.array(other.coeffs))
            return FourierSeries(tuple(cs))
        return FourierSeries(tuple(c * complex(other) for c in self.coeffs))

    __rmul__ = __mul__

    def zero_mean(self) -> "FourierSeries":
        cs = list(self.coeffs)
        cs[self.n] = 0j
        return FourierSeries(tuple(cs))

    def derivative(self) -> "FourierSeries":
        """d/d theta, i.e. mode k scaled by 2 pi i k."""
        return FourierSeries(tuple(TWO_PI_I * k * c for k, c in
                                   zip(range(-self.n, self.n + 1), self.coeffs)))

    def shift(self, alpha: complex) -> "FourierSeries":
        """theta -> theta + alpha, i.e. modes scaled by exp(2 pi i k alpha)."""
        return FourierSeries(tuple(
            c * cmath.exp(TWO_PI_I * k * alpha)
            for k, c in zip(range(-self.n, self.n + 1), self.coeffs)))

    def __call__(self, theta):
        """Evaluate at complex theta (scalar or ndarray), overflow-safe."""
        w = np.exp(TWO_PI_I * np.asarray(theta))
        n = self.n
        pos = np.zeros_like(w)
        for k in range(2 * n, n - 1, -1):           # modes n..0, Horner in w
            pos = pos * w + self.coeffs[k]
        neg = np.zeros_like(w)
        u = 1.0 / w
        for k in range(0, n):                       # modes -n..-1, Horner in 1/w
            neg = neg * u + self.coeffs[k]
        out = pos + neg * u
        return complex(out) if out.shape == () else out

    def sample(self, grid: int) -> np.ndarray:
        """Values on theta_j = j/grid, j = 0..grid-1."""
        return self(np.arange(grid) / grid)

    @staticmethod
    def from_samples(values: Sequence[complex], n: int) -> "FourierSeries":
        """Band-limited coefficient recovery; exact when the sampled
        function has no modes beyond the grid's Nyquist band."""
        v = np.asarray(values, dtype=complex)
        grid = len(v)
        if grid < 2 * n + 1:
            raise ValueError("need at least 2n+1 samples")
        F = np.fft.fft(v) / grid
        cs = [F[k % grid] for k in range(-n, n + 1)]
        return FourierSeries(tuple(complex(c) for c in cs))

    # ---- norms ----------------------------------------------------------

    def grid_norm(self, rho: float = 0.0, grid: int = 1024) -> float:
        """max |f| sampled on the two lines Im theta = +-rho."""
        x = np.arange(grid) / grid
        vals = [np.abs(self(x + 1j * rho)).max()]
        if rho:
            vals.append(np.abs(self(x - 1j * rho)).max())
        return float(max(vals))

    def upper_norm(self, rho: float = 0.0) -> float:
        """Certified upper bound sum |c_k| e^(2 pi |k| rho) for the sup of
        |f| on the closed strip |Im theta| <= rho."""
        return float(sum(abs(c) * math.exp(TWO_PI * abs(k) * rho)
                         for k, c in zip(range(-self.n, self.n + 1), self.coeffs)))

    def decay_profile(self) -> Tuple[Tuple[int, float], ...]:
        return tuple((k, abs(self.mode(k))) for k in range(-self.n, self.n + 1))

    def decay_ok(self, rho: float, bound: float) -> bool:
        """Check |c_k| <= bound * e^(-2 pi |k| rho) for every mode."""
        return all(abs(c) <= bound * math.exp(-TWO_PI * abs(k) * rho)
                   for k, c in zip(range(-self.n, self.n + 1), self.coeffs))
