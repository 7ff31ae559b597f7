"""Continued fractions: expansion, gap law, best approximations, Bruno sums."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from smalldiv import (
    ContinuedFraction,
    Surd,
    TailModel,
    bruno,
    cf_expand,
    check_best_approx,
    convergent_gap_checks,
    enclosure_for,
)

# frozen oracle: classical Bruno sum of sqrt(2) - 1, computed independently
# with mpmath at 60 digits from the denominator recurrence m_k = 2m_{k-1} + m_{k-2}
BRUNO_SQRT2_CLASSICAL = 2.5622561997358712519227169660369


def reconstruct(quotients):
    """Fold a finite quotient list back into a Fraction."""
    x = Fraction(quotients[-1])
    for a in reversed(quotients[:-1]):
        x = a + 1 / x
    return x


def test_rational_roundtrip():
    rng = random.Random(7)
    for _ in range(200):
        m = rng.randrange(2, 10**6)
        n = rng.randrange(1, m)
        x = Fraction(n, m)
        cf = cf_expand(x, 64)
        assert cf.exhausted
        assert cf.value() == x
        assert reconstruct(list(cf.quotients)) == x


def test_convergents_recurrence_and_bezout():
    cf = cf_expand(Fraction(16, 113), 30)
    n, m = zip(*cf.convergents)
    for k in range(2, len(n)):
        a = cf.quotients[k]
        assert n[k] == a * n[k - 1] + n[k - 2]
        assert m[k] == a * m[k - 1] + m[k - 2]
    for k in range(1, len(n)):
        assert m[k] * n[k - 1] - n[k] * m[k - 1] == (-1) ** k


def test_surd_expansion_and_bracket():
    s = Surd(-1, 1, 2, 1)  # sqrt(2) - 1
    cf = cf_expand(s, 20)
    assert not cf.exhausted
    assert set(cf.quotients[1:]) == {2}
    br = cf.bracket()
    assert br.lo <= br.hi
    enc = enclosure_for(s, bits=128)
    assert br.lo <= enc.hi and enc.lo <= br.hi  # brackets overlap the enclosure


def test_gap_law_surd():
    cf = cf_expand(Surd(-1, 1, 2, 1), 25)
    rep = convergent_gap_checks(cf, bits=256)
    assert rep.all_ok
    assert len(rep.checks) >= 20
    for chk in rep.checks:
        assert chk.lower_margin > 0 and chk.upper_margin > 0


def test_gap_law_rational_terminates():
    cf = cf_expand(Fraction(355, 113), 40)
    rep = convergent_gap_checks(cf, bits=256)
    assert rep.all_ok  # truncated to indices where the law applies


def test_best_approx_verdicts():
    cf = cf_expand(Surd(-1, 1, 2, 1), 30)  # x = 0.41421...
    rep = check_best_approx(cf, 3, 7, bits=256)
    assert rep.verdict == "pass"
    assert all(c.margin > 0 for c in rep.checks)
    # a convergent is excluded from the comparison law
    rep2 = check_best_approx(cf, 2, 5, bits=256)
    assert rep2.verdict == "not_applicable"
    # reducible input reduces to a convergent too
    rep3 = check_best_approx(cf, 4, 10, bits=256)
    assert rep3.verdict == "not_applicable"


def test_best_approx_golden():
    cf = cf_expand(Surd.golden(), 30)
    rep = check_best_approx(cf, 7, 11, bits=256)
    assert rep.verdict == "pass"


def test_bruno_classical_oracle():
    s = Surd(-1, 1, 2, 1)
    cf = cf_expand(s, 60)
    tm = TailModel.quotient_bounded(cf.quotient_bound())
    bv = bruno(cf, depth=50, tail_model=tm, classical=True)
    assert float(bv.lower) <= BRUNO_SQRT2_CLASSICAL <= float(bv.upper)
    assert float(bv.upper) - float(bv.lower) < 1e-6


def test_bruno_golden_log_quotients_zero():
    # all partial quotients are 1, so the log-of-quotient sum vanishes
    cf = cf_expand(Surd.golden(), 40)
    bv = bruno(cf, depth=30, tail_model=TailModel.quotient_bounded(1))
    assert bv.lo == 0 and bv.hi == 0


def test_bruno_rational_is_finite_sum():
    cf = cf_expand(Fraction(16, 113), 30)
    bv = bruno(cf)
    assert bv.rational
    assert bv.tail_bound == 0
    assert bv.lo == bv.hi


def test_bruno_monotone_in_depth():
    cf = cf_expand(Surd(-1, 1, 2, 1), 60)
    tm = TailModel.quotient_bounded(cf.quotient_bound())
    prev_width = None
    for depth in (10, 20, 40):
        bv = bruno(cf, depth=depth, tail_model=tm, classical=True)
        width = float(bv.upper) - float(bv.lower)
        if prev_width is not None:
            assert width < prev_width
        prev_width = width


def test_bruno_without_tail_model_has_no_upper():
    cf = cf_expand(Surd(-1, 1, 2, 1), 40)
    bv = bruno(cf, depth=20, classical=True)
    assert bv.upper is None  # partial sums only bound from below
    assert bv.lower is not None


def test_quotient_bound_sources():
    assert cf_expand(Surd(-1, 1, 2, 1), 20).quotient_bound() == 2
    assert cf_expand(Surd.golden(), 20).quotient_bound() == 1
