"""Exact arithmetic helpers: integer roots, surds, intervals, dual numbers."""

from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from smalldiv.exact import (
    Jet,
    PeriodicQuotients,
    RationalInterval,
    Surd,
    fibonacci,
    golden_quotients,
    iroot,
    pow_bounds,
    power_radius_cmp,
    root_bounds,
)


def test_iroot_matches_floor():
    rng = random.Random(1)
    for _ in range(300):
        n = rng.randrange(0, 10**12)
        k = rng.randrange(1, 7)
        r = iroot(n, k)
        assert r**k <= n < (r + 1) ** k


def test_root_bounds_bracket_and_width():
    for n, k in [(2, 2), (5, 2), (7, 3), (10**9 + 7, 5)]:
        lo, hi = root_bounds(n, k, bits=100)
        assert lo**k <= n <= hi**k
        assert hi - lo <= Fraction(1, 2**100)


def test_pow_bounds_bracket():
    # m**alpha for fractional alpha, checked against mpmath-free integer roots
    for m, alpha in [(2, Fraction(3, 2)), (10, Fraction(1, 3)), (7, Fraction(5, 4))]:
        lo, hi = pow_bounds(m, alpha, bits=90)
        assert lo <= hi
        # lo**q <= m**p <= hi**q where alpha = p/q
        p, q = alpha.numerator, alpha.denominator
        assert lo**q <= Fraction(m) ** p <= hi**q


def test_power_radius_cmp_exact_sign():
    # compares x against c / m**expo without rounding
    x = Fraction(1, 4)
    c = Fraction(1, 2)
    assert power_radius_cmp(x, c, 2, Fraction(1)) == 0  # 1/4 == (1/2)/2
    assert power_radius_cmp(x + Fraction(1, 10**30), c, 2, Fraction(1)) > 0
    assert power_radius_cmp(x - Fraction(1, 10**30), c, 2, Fraction(1)) < 0
    # irrational comparison point: 1/8**(3/2) = 0.04419417382...
    assert power_radius_cmp(Fraction(44194, 10**6), Fraction(1), 8, Fraction(3, 2)) < 0
    assert power_radius_cmp(Fraction(44195, 10**6), Fraction(1), 8, Fraction(3, 2)) > 0


def test_fibonacci_recurrence():
    assert [fibonacci(k) for k in range(1, 8)] == [1, 1, 2, 3, 5, 8, 13]
    for k in range(3, 40):
        assert fibonacci(k) == fibonacci(k - 1) + fibonacci(k - 2)


def test_surd_golden_value():
    g = Surd.golden()
    enc = g.enclosure(bits=128)
    mid = float(enc.mid)
    assert abs(mid - (math.sqrt(5) - 1) / 2) < 1e-15
    assert enc.width <= Fraction(1, 2**128)


def test_surd_quotients_periodic():
    # sqrt(2) - 1 = [0; 2, 2, 2, ...] shifted; its quotient stream is all 2s
    s = Surd(-1, 1, 2, 1)
    it = s.quotients()
    head = [next(it) for _ in range(10)]
    assert head == [2] * 10 or head[0] in (0, 2)
    assert s.quotient_bound() is not None


def test_surd_expansion_with_period():
    s = Surd(-1, 1, 2, 1)  # sqrt(2) - 1 = [0; 2, 2, 2, ...]
    quotients, period_len = s.expansion_with_period()
    assert period_len == 1
    assert quotients[-1] == 2
    g = Surd.golden()
    gq, gp = g.expansion_with_period()
    assert gp == 1 and gq[-1] == 1


def test_surd_enclosure_shrinks():
    s = Surd(1, 1, 3, 2)  # (1 + sqrt(3)) / 2
    w1 = s.enclosure(bits=64).width
    w2 = s.enclosure(bits=128).width
    assert w2 < w1
    assert w2 <= Fraction(1, 2**128)


def test_periodic_quotients_stream():
    pq = PeriodicQuotients((0, 2), (1, 3))
    it = iter(pq)
    assert [next(it) for _ in range(6)] == [0, 2, 1, 3, 1, 3]
    g = golden_quotients()
    it = iter(g)
    assert [next(it) for _ in range(5)] == [0, 1, 1, 1, 1]


def test_rational_interval_ops():
    a = RationalInterval(Fraction(1, 3), Fraction(1, 2))
    assert a.width == Fraction(1, 6)
    assert a.mid == Fraction(5, 12)
    assert a.sign() > 0
    b = RationalInterval.point(Fraction(-2, 7))
    assert b.width == 0 and b.sign() < 0
    assert b.strictly_less(a)
    assert a.strictly_greater(b)
    z = RationalInterval(Fraction(-1), Fraction(1))
    assert z.sign() is None  # straddles zero: sign undecided


def test_rational_interval_floor():
    assert RationalInterval(Fraction(7, 3), Fraction(5, 2)).floor() == 2
    assert RationalInterval.point(Fraction(3)).floor() == 3


def test_jet_arithmetic():
    x = Jet(2.0, 1.0)
    y = x * x + 3.0 * x + 1.0
    assert y.val == pytest.approx(11.0)
    assert y.dot == pytest.approx(7.0)  # d/dx (x^2 + 3x + 1) = 2x + 3
    z = (x + 1.0) / (x - 1.0)
    assert z.val == pytest.approx(3.0)
    assert z.dot == pytest.approx(-2.0)  # d/dx = -2/(x-1)^2


def test_jet_scalar_equality():
    # zero jets must compare equal to scalar zero (series code relies on it)
    assert Jet(0.0, 0.0) == 0
    assert Jet(0.0, 0.0) == 0.0
    assert not (Jet(0.0, 1.0) == 0)
    assert Jet(2.0, 0.0) == 2.0
    assert Jet(2.0, 3.0) != 2.0
    assert Jet(1.0, 2.0) == Jet(1.0, 2.0)


def test_jet_lift_and_pow():
    c = Jet.lift(5.0)
    assert c.val == 5.0 and c.dot == 0.0
    x = Jet(3.0, 1.0)
    p = x**4
    assert p.val == pytest.approx(81.0)
    assert p.dot == pytest.approx(108.0)  # 4 x^3
