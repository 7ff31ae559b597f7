"""Excluded-interval constructions, measure certificates, membership verdicts."""

from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from smalldiv import (
    IntervalSet,
    PeriodicQuotients,
    Surd,
    TailModel,
    cf_expand,
    complement_C,
    complement_L,
    dc_bruno_bound,
    dc_bruno_threshold_check,
    dc_complement,
    dc_density_check,
    fibonacci,
    measure_bound_certificate,
    member_C,
    member_DC,
    member_L,
    member_S,
    noble_surd,
    ones_interval,
    rank_interval,
    zeta_bounds,
    zsum_upper,
)

ZETA_32 = 2.612375348685488  # zeta(3/2)
ZETA_2 = math.pi**2 / 6


def test_zeta_bounds_straddle():
    lo, hi = zeta_bounds(Fraction(3, 2), terms=2000)
    assert float(lo) <= ZETA_32 <= float(hi)
    lo2, hi2 = zeta_bounds(Fraction(2), terms=2000)
    assert float(lo2) <= ZETA_2 <= float(hi2)


def test_zeta_bounds_tighten_with_terms():
    w1 = (lambda b: b[1] - b[0])(zeta_bounds(Fraction(3, 2), terms=100))
    w2 = (lambda b: b[1] - b[0])(zeta_bounds(Fraction(3, 2), terms=4000))
    assert w2 < w1


def test_zsum_upper_dominates_tail():
    # upper bound for sum_{m > N} m^(-1-alpha); compare against a long partial sum
    alpha, N = Fraction(1, 2), 10
    bound = zsum_upper(alpha, N)
    tail_est = sum(m ** (-1.5) for m in range(N + 1, 200000))
    assert tail_est < float(bound)


def test_complement_C_measure_certificate():
    iset = complement_C(10, Fraction(1, 2), 200)
    ok, lhs, rhs = measure_bound_certificate(iset, 10, Fraction(1, 2))
    assert ok
    assert lhs < rhs
    assert iset.measure <= lhs


def test_complement_C_excludes_rationals():
    iset = complement_C(10, Fraction(1, 2), 100)
    # every interior rational with small denominator sits inside an excluded interval
    for m in range(2, 20):
        for n in range(1, m):
            if math.gcd(n, m) == 1:
                assert iset.contains(Fraction(n, m))


def test_complement_C_interval_set_roundtrip():
    iset = complement_C(10, Fraction(1, 2), 50)
    obj = iset.to_json_obj()
    back = IntervalSet.from_json_obj(obj)
    assert back.measure == iset.measure  # interval endpoints stay exact
    # tail bound is serialized as a decimal rounded up, so it stays a bound
    assert back.tail_measure_bound >= iset.tail_measure_bound
    assert back.tail_measure_bound - iset.tail_measure_bound < Fraction(1, 10**28)


def test_dc_complement_contains_rationals_not_surd():
    iset = dc_complement(Fraction(1, 30), 1, 100)
    assert iset.contains(Fraction(1, 2))
    assert iset.contains(Fraction(2, 3))
    # golden stays clear of every excluded interval at this gamma
    g = Surd.golden().enclosure(bits=128)
    assert not iset.contains(g.lo) and not iset.contains(g.hi)


def test_complement_L_tail_is_tiny():
    iset = complement_L(5, 60)
    assert float(iset.tail_measure_bound) < 1e-100  # doubly exponential falloff
    assert 0 < float(iset.measure) < 1


def test_member_C_verdicts():
    s = Surd(-1, 1, 2, 1)
    rep = member_C(s, 10, Fraction(1, 2), 200)
    assert rep.verdict == "in"
    rep_rat = member_C(Fraction(1, 2), 10, Fraction(1, 2), 200)
    assert rep_rat.verdict == "out"
    with pytest.raises(ValueError):
        member_C(s, 2, Fraction(1, 2), 50)  # M below the 2*zeta threshold


def test_member_DC_verdicts():
    g = Surd.golden()
    assert member_DC(g, Fraction(1, 10), 0, 100).verdict == "in"
    # tau = 0 tail certificate fails when 2*gamma*(A+1) > 1
    rep = member_DC(g, Fraction(1, 3), 0, 100)
    assert rep.verdict == "undecided"
    assert member_DC(Fraction(3, 7), Fraction(1, 10), 0, 100).verdict == "out"


def test_member_L_verdicts():
    cf = cf_expand(Surd(-1, 1, 2, 1), 40)
    assert member_L(cf, 10).verdict == "undecided"  # no tail model
    assert member_L(cf, 10, tail_model=TailModel.quotient_bounded(2)).verdict == "in"
    # a huge early quotient pushes log(m_{k+1})/m_k above small M
    spiky = cf_expand(PeriodicQuotients((0, 1, 50), (2,)), 30)
    assert member_L(spiky, Fraction(6, 5)).verdict == "out"
    with pytest.raises(ValueError):
        member_L(cf, 1)  # M must exceed log 3
    assert member_L(cf_expand(Fraction(2, 7), 10), 5).verdict == "out"  # rational


def test_member_S_verdicts():
    cf = cf_expand(Surd(-1, 1, 2, 1), 40)
    assert member_S(cf, 10, tail_model=TailModel.quotient_bounded(2)).verdict == "in"
    assert member_S(cf, Fraction(1, 5)).verdict == "out"  # partial sum already too big
    assert member_S(cf, 10).verdict == "undecided"  # no tail model


def test_rank_interval_endpoints():
    ri = rank_interval([2, 2])  # quotients a_1, a_2 of sqrt(2) - 1
    # endpoints are the convergent n_k/m_k and the mediant refinement
    assert ri.length == ri.hi - ri.lo
    assert 0 < ri.lo < ri.hi < 1
    assert ri.contains(Surd(-1, 1, 2, 1).enclosure().mid)
    # length formula 1/(m_k (m_k + m_{k-1})): here m_2 = 5, m_1 = 2
    assert ri.length == Fraction(1, 5 * 7)


def test_ones_interval_fibonacci_length():
    for k in range(1, 16):
        assert ones_interval(k).length == Fraction(1, fibonacci(k + 1) * fibonacci(k + 2))


def test_ones_interval_nested():
    prev = ones_interval(1)
    for k in range(2, 10):
        cur = ones_interval(k)
        assert prev.lo <= cur.lo and cur.hi <= prev.hi
        prev = cur


def test_dc_density_check_passes():
    rep = dc_density_check(Fraction(1, 100), 1, 4)
    assert rep.passed
    assert rep.margin > 0
    assert rep.structure_ok
    # flagged rationals have denominator at least the interval rank floor
    assert rep.min_flagged_denominator is None or rep.min_flagged_denominator >= 5


def test_dc_density_margin_positive_across_gammas():
    # target (1 - 26 gamma)|I_k| tightens as gamma shrinks, but the check
    # keeps a positive margin at every configured level
    for gamma in (Fraction(1, 30), Fraction(1, 100), Fraction(1, 1000)):
        rep = dc_density_check(gamma, 1, 3)
        assert rep.passed and rep.margin > 0


def test_dc_bruno_bound_decreasing_in_k():
    g = Fraction(1, 100)
    vals = [dc_bruno_bound(g, 1, k) for k in range(1, 8)]
    assert all(vals[i] > vals[i + 1] for i in range(len(vals) - 1))


def test_dc_bruno_threshold_check():
    rep = dc_bruno_threshold_check(Fraction(1, 100), 1, 10)
    assert rep.bound_at_kbar <= 10
    assert rep.kbar >= 1
    assert rep.all_samples_in
    assert len(rep.samples) >= 1


def test_noble_surd_quotient_tail():
    ns = noble_surd(3, 2)
    cf = cf_expand(ns, 30)
    assert set(cf.quotients[-20:]) == {1}  # golden tail: eventually all ones
    assert 2 in cf.quotients[:6]  # the injected quotient survives up front


def test_interval_set_contains_is_strict_interior():
    iset = IntervalSet.from_pairs([(Fraction(1, 4), Fraction(1, 2))], Fraction(0))
    assert iset.contains(Fraction(1, 3))
    assert not iset.contains(Fraction(1, 4))  # boundary excluded
    assert not iset.contains(Fraction(1, 2))
    assert not iset.contains(Fraction(3, 4))


def test_interval_set_covers():
    big = IntervalSet.from_pairs([(Fraction(0), Fraction(1))], Fraction(0))
    small = IntervalSet.from_pairs(
        [(Fraction(1, 4), Fraction(1, 2)), (Fraction(2, 3), Fraction(3, 4))], Fraction(0))
    assert big.covers(small)
    assert not small.covers(big)
