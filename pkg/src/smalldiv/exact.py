"""Exact arithmetic building blocks.

Everything in this module is integer or rational arithmetic: directed
rational bounds for fractional powers, interval enclosures with Fraction
endpoints, quadratic surds with an exact continued-fraction state machine,
and first-order dual numbers for derivatives of rational formulas.

Floating point never enters any decision made here; callers that need a
yes/no answer get it from integer comparisons or receive "undecided".
"""

from __future__ import annotations

import contextlib
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Tuple


@contextlib.contextmanager
def unlimited_int_digits():
    """Lift the int-to-str conversion cap while serializing exact values.

    Certified interval data legitimately carries integers beyond the
    interpreter's default 4300-digit guard; rounding them would destroy
    the certificates, so exports disable the cap locally instead.
    """
    old = sys.get_int_max_str_digits()
    sys.set_int_max_str_digits(0)
    try:
        yield
    finally:
        sys.set_int_max_str_digits(old)


def iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for integers n >= 0, k >= 1."""
    if n < 0:
        raise ValueError("iroot of negative integer")
    if k < 1:
        raise ValueError("root order must be >= 1")
    if n == 0 or k == 1:
        return n if k == 1 else 0
    if k == 2:
        return math.isqrt(n)
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def root_bounds(n: int, k: int, bits: int = 80) -> Tuple[Fraction, Fraction]:
    """Rational lo <= n**(1/k) <= hi with hi - lo <= 2**-bits."""
    if n < 0:
        raise ValueError("root of negative integer")
    t = iroot(n << (k * bits), k)
    scale = 1 << bits
    return Fraction(t, scale), Fraction(t + 1, scale)


def pow_bounds(m: int, alpha: Fraction, bits: int = 80) -> Tuple[Fraction, Fraction]:
    """Rational bounds lo <= m**alpha <= hi for m >= 1, alpha >= 0 rational.

    Exact (lo == hi) when alpha is an integer.
    """
    if m < 1:
        raise ValueError("base must be >= 1")
    alpha = Fraction(alpha)
    if alpha < 0:
        raise ValueError("exponent must be >= 0")
    p, q = alpha.numerator, alpha.denominator
    if q == 1:
        v = Fraction(m ** p)
        return v, v
    lo, hi = root_bounds(m ** p, q, bits)
    return lo, max(hi, lo)


def power_radius_cmp(x: Fraction, c: Fraction, m: int, expo: Fraction) -> int:
    """Sign of x - c / m**expo, decided exactly for rational expo >= 0.

    Requires x >= 0 and c > 0.  Returns -1, 0, or +1.  Used for membership
    decisions of the form |alpha - n/m| >= c * m**-expo without rounding.
    """
    if x < 0 or c <= 0:
        raise ValueError("power_radius_cmp needs x >= 0 and c > 0")
    expo = Fraction(expo)
    p, q = expo.numerator, expo.denominator
    # x ? c/m^(p/q)  <=>  x^q * m^p ? c^q   (all exact integers after clearing)
    lhs = x ** q * m ** p
    rhs = c ** q
    if lhs < rhs:
        return -1
    if lhs > rhs:
        return 1
    return 0


def fibonacci(k: int) -> int:
    """F_k with F_1 = F_2 = 1 (F_0 = 0)."""
    if k < 0:
        raise ValueError("negative Fibonacci index")
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


@dataclass(frozen=True)
class RationalInterval:
    """Closed interval [lo, hi] with Fraction endpoints.

    Comparisons come in three outcomes: True, False, or None when the
    intervals overlap and the order of the underlying points is not
    determined at this width.
    """

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("interval endpoints out of order")

    @staticmethod
    def point(x) -> "RationalInterval":
        x = Fraction(x)
        return RationalInterval(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __add__(self, other):
        if isinstance(other, RationalInterval):
            return RationalInterval(self.lo + other.lo, self.hi + other.hi)
        other = Fraction(other)
        return RationalInterval(self.lo + other, self.hi + other)

    __radd__ = __add__

    def __neg__(self):
        return RationalInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-other if isinstance(other, RationalInterval) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + Fraction(other)

    def __mul__(self, other):
        if isinstance(other, RationalInterval):
            prods = [self.lo * other.lo, self.lo * other.hi,
                     self.hi * other.lo, self.hi * other.hi]
            return RationalInterval(min(prods), max(prods))
        other = Fraction(other)
        a, b = self.lo * other, self.hi * other
        return RationalInterval(min(a, b), max(a, b))

    __rmul__ = __mul__

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return RationalInterval(Fraction(0), max(-self.lo, self.hi))

    def __contains__(self, x) -> bool:
        x = Fraction(x)
        return self.lo <= x <= self.hi

    def strictly_less(self, other) -> Optional[bool]:
        """self < other as real numbers; None if undecided at this width."""
        if not isinstance(other, RationalInterval):
            other = RationalInterval.point(other)
        if self.hi < other.lo:
            return True
        if self.lo >= other.hi:
            return False
        return None

    def strictly_greater(self, other) -> Optional[bool]:
        if not isinstance(other, RationalInterval):
            other = RationalInterval.point(other)
        return other.strictly_less(self)

    def sign(self) -> Optional[int]:
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        return None

    def floor(self) -> Optional[int]:
        a = self.lo.numerator // self.lo.denominator
        b = self.hi.numerator // self.hi.denominator
        return a if a == b else None


def _reduce_surd(p: int, s: int, d: int, r: int) -> Tuple[int, int, int, int]:
    if r == 0:
        raise ZeroDivisionError("surd denominator is zero")
    if d <= 0:
        raise ValueError("radicand must be positive")
    # pull square factors of d into s
    f = 1
    n = 2
    while n * n <= d:
        while d % (n * n) == 0:
            d //= n * n
            f *= n
        n += 1
    s *= f
    if d == 1:
        raise ValueError("surd reduces to a rational; use Fraction")
    if r < 0:
        p, s, r = -p, -s, -r
    g = math.gcd(math.gcd(abs(p), abs(s)), r)
    return p // g, s // g, d, r // g


@dataclass(frozen=True)
class Surd:
    """Quadratic irrational (p + s*sqrt(d)) / r with integer fields.

    d is kept square-free-ish (square factors folded into s), r > 0, and
    gcd(p, s, r) == 1.  s == 0 is rejected: rationals take the Fraction path.
    """

    p: int
    s: int
    d: int
    r: int

    def __post_init__(self):
        p, s, d, r = _reduce_surd(self.p, self.s, self.d, self.r)
        if s == 0:
            raise ValueError("not irrational")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "r", r)

    @staticmethod
    def sqrt(d: int) -> "Surd":
        return Surd(0, 1, d, 1)

    @staticmethod
    def golden() -> "Surd":
        """(sqrt(5) - 1) / 2, the golden mean in (0, 1)."""
        return Surd(-1, 1, 5, 2)

    def enclosure(self, bits: int = 128) -> RationalInterval:
        """Rational enclosure of width <= |s| * 2**-bits."""
        lo, hi = root_bounds(self.d, 2, bits)
        if self.s >= 0:
            a, b = self.p + self.s * lo, self.p + self.s * hi
        else:
            a, b = self.p + self.s * hi, self.p + self.s * lo
        return RationalInterval(a / self.r, b / self.r)

    def __float__(self) -> float:
        return (self.p + self.s * math.sqrt(self.d)) / self.r

    def conjugate(self) -> "Surd":
        return Surd(self.p, -self.s, self.d, self.r)

    def __add__(self, other) -> "Surd":
        other = Fraction(other)
        num, den = other.numerator, other.denominator
        return Surd(self.p * den + num * self.r, self.s * den, self.d, self.r * den)

    __radd__ = __add__

    def __rsub__(self, other) -> "Surd":
        # other - self
        other = Fraction(other)
        num, den = other.numerator, other.denominator
        return Surd(num * self.r - self.p * den, -self.s * den, self.d, self.r * den)

    def __sub__(self, other) -> "Surd":
        return self + (-Fraction(other))

    def __mul__(self, other) -> "Surd":
        other = Fraction(other)
        if other == 0:
            raise ValueError("not irrational")
        return Surd(self.p * other.numerator, self.s * other.numerator,
                    self.d, self.r * other.denominator)

    __rmul__ = __mul__

    def reciprocal(self) -> "Surd":
        # r / (p + s sqrt(d)) = r (p - s sqrt(d)) / (p^2 - s^2 d)
        norm = self.p * self.p - self.s * self.s * self.d
        return Surd(self.r * self.p, -self.r * self.s, self.d, norm)

    def quotients(self) -> Iterator[int]:
        """Exact continued-fraction quotients, an infinite generator."""
        # normalize to (P + sqrt(D)) / Q with Q | D - P^2
        if self.s >= 0:
            P, D, Q = self.p, self.s * self.s * self.d, self.r
        else:
            P, D, Q = -self.p, self.s * self.s * self.d, -self.r
        if (D - P * P) % Q != 0:
            P, D, Q = P * abs(Q), D * Q * Q, Q * abs(Q)
        bits = 32
        while True:
            while True:
                lo, hi = root_bounds(D, 2, bits)
                cand = RationalInterval((P + lo) / Q, (P + hi) / Q) if Q > 0 \
                    else RationalInterval((P + hi) / Q, (P + lo) / Q)
                a = cand.floor()
                if a is not None:
                    break
                bits *= 2
            yield a
            P = a * Q - P
            num = D - P * P
            if num % Q != 0:
                raise AssertionError("surd state lost divisibility")
            Q = num // Q

    def expansion_with_period(self, max_steps: int = 10000):
        """Quotients until the (P, Q) state repeats.

        Returns (quotients, period_start) where quotients[period_start:]
        repeats forever.  Every quadratic surd is eventually periodic.
        """
        if self.s >= 0:
            P, D, Q = self.p, self.s * self.s * self.d, self.r
        else:
            P, D, Q = -self.p, self.s * self.s * self.d, -self.r
        if (D - P * P) % Q != 0:
            P, D, Q = P * abs(Q), D * Q * Q, Q * abs(Q)
        seen = {}
        quotients = []
        bits = 32
        for step in range(max_steps):
            key = (P, Q)
            if key in seen:
                return quotients, seen[key]
            seen[key] = step
            while True:
                lo, hi = root_bounds(D, 2, bits)
                cand = RationalInterval((P + lo) / Q, (P + hi) / Q) if Q > 0 \
                    else RationalInterval((P + hi) / Q, (P + lo) / Q)
                a = cand.floor()
                if a is not None:
                    break
                bits *= 2
            quotients.append(a)
            P = a * Q - P
            Q = (D - P * P) // Q
        raise RuntimeError("period not found within max_steps")

    def quotient_bound(self) -> int:
        """Max partial quotient a_k over k >= 1, certified via periodicity."""
        qs, start = self.expansion_with_period()
        tail = qs[1:] if start == 0 else qs[1:] + qs[start:]
        return max(tail) if tail else 1


@dataclass(frozen=True)
class PeriodicQuotients:
    """Eventually periodic quotient sequence a_0, a_1, ... given explicitly."""

    prefix: Tuple[int, ...]
    period: Tuple[int, ...]

    def __post_init__(self):
        if not self.period:
            raise ValueError("period must be nonempty")
        for a in list(self.prefix[1:]) + list(self.period):
            if a < 1:
                raise ValueError("partial quotients a_k (k >= 1) must be >= 1")

    def __iter__(self) -> Iterator[int]:
        yield from self.prefix
        while True:
            yield from self.period

    def quotient_bound(self) -> int:
        tail = list(self.prefix[1:]) + list(self.period)
        return max(tail)


def golden_quotients() -> PeriodicQuotients:
    return PeriodicQuotients((0,), (1,))


@dataclass(frozen=True, eq=False)
class Jet:
    """First-order dual number a + b*eps with eps^2 = 0.

    Running a rational algorithm on Jet(q, 1) produces the value and the
    derivative with respect to q in one pass.
    """

    val: complex
    dot: complex = 0

    @staticmethod
    def lift(x) -> "Jet":
        return x if isinstance(x, Jet) else Jet(x, 0)

    def __eq__(self, other):
        if isinstance(other, Jet):
            return self.val == other.val and self.dot == other.dot
        try:
            return self.val == other and self.dot == 0
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.val, self.dot))

    def __add__(self, other):
        o = Jet.lift(other)
        return Jet(self.val + o.val, self.dot + o.dot)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.val, -self.dot)

    def __sub__(self, other):
        return self + (-Jet.lift(other))

    def __rsub__(self, other):
        return Jet.lift(other) + (-self)

    def __mul__(self, other):
        o = Jet.lift(other)
        return Jet(self.val * o.val, self.val * o.dot + self.dot * o.val)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Jet.lift(other)
        inv = 1 / o.val
        return Jet(self.val * inv, (self.dot - self.val * o.dot * inv) * inv)

    def __rtruediv__(self, other):
        return Jet.lift(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("Jet powers are nonnegative integers")
        out = Jet(1, 0)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out
