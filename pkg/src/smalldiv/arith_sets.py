"""Arithmetical condition sets on the unit interval, exactly.

Four families of full-measure sets are covered, parametrized by a size
parameter M (and exponents tau, gamma):

  L   sup_k log(m_{k+1})/m_k <= M           (denominator growth)
  S   sum_k log(a_{k+1})/m_k <= M           (Bruno sum)
  C   |x - n/m| >= 1/(M m^(2+tau)) for all rationals
  DC  |x - n/m| >= gamma/m^(2+tau) for rationals in (0, 1)

Complements of the C and DC conditions are finite unions of open intervals
around rationals, truncated at a denominator cutoff m_max; the omitted part
is controlled by the tail of sum m^(-1-alpha), bounded by

    Z_alpha(N) = sum_{m>=N} m^(-1-alpha) < 1 / (alpha (N-1)^alpha),  N >= 2,

always rounded upward.  All interval endpoints, measures, and verdict
comparisons are exact rational arithmetic.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from mpmath import iv

from .config import precision_bits
from .contfrac import (ContinuedFraction, TailModel, bruno, cf_expand,
                       enclosure_for, mpf_to_fraction, _convergents)
from .exact import (PeriodicQuotients, RationalInterval, Surd, fibonacci,
                    pow_bounds, unlimited_int_digits)

UNIT = (Fraction(0), Fraction(1))


def _iv_frac(x: Fraction):
    x = Fraction(x)
    return iv.mpf(x.numerator) / x.denominator


def frac_to_decimal(x: Fraction, digits: int = 30, direction: str = "up") -> str:
    """Decimal string for a Fraction with directed rounding."""
    if x == 0:
        return "0"
    sign = "-" if x < 0 else ""
    x = abs(x)
    scaled = x * 10 ** digits
    num, den = scaled.numerator, scaled.denominator
    q, rem = divmod(num, den)
    if rem and ((direction == "up") != (sign == "-")):
        q += 1
    s = str(q).rjust(digits + 1, "0")
    whole, frac = s[:-digits], s[-digits:]
    frac = frac.rstrip("0")
    return f"{sign}{whole}.{frac}" if frac else f"{sign}{whole}"


def _fraction_sum(vals) -> Fraction:
    """Balanced pairwise sum; keeps intermediate denominators small."""
    vals = list(vals)
    if not vals:
        return Fraction(0)
    while len(vals) > 1:
        nxt = [vals[i] + vals[i + 1] for i in range(0, len(vals) - 1, 2)]
        if len(vals) % 2:
            nxt.append(vals[-1])
        vals = nxt
    return vals[0]


def power_ge(m: int, expo: Fraction, z: Fraction) -> bool:
    """Exact test m**expo >= z for m >= 1, rational expo >= 0, z > 0."""
    expo = Fraction(expo)
    z = Fraction(z)
    if z <= 0:
        return True
    return Fraction(m) ** expo.numerator >= z ** expo.denominator


def zsum_upper(alpha: Fraction, N: int, bits: int = 80) -> Fraction:
    """Rational upper bound for Z_alpha(N) = sum_{m>=N} m^(-1-alpha), N >= 2."""
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError("tail sum diverges for alpha <= 0")
    if N < 2:
        raise ValueError("tail bound needs N >= 2")
    lo, _ = pow_bounds(N - 1, alpha, bits)
    return 1 / (alpha * lo)


@lru_cache(maxsize=64)
def zeta_bounds(s: Fraction, terms: int = 400, bits: int = 80) -> Tuple[Fraction, Fraction]:
    """Rational bounds on zeta(s) for rational s > 1 via partial sum + tail."""
    s = Fraction(s)
    if s <= 1:
        raise ValueError("zeta bounds need s > 1")
    lo = Fraction(0)
    hi = Fraction(0)
    for m in range(1, terms + 1):
        plo, phi = pow_bounds(m, s, bits)
        lo += 1 / phi
        hi += 1 / plo
    hi += zsum_upper(s - 1, terms + 1, bits)
    return lo, hi


@dataclass(frozen=True)
class IntervalSet:
    """Sorted disjoint open intervals with exact endpoints in (0, 1).

    tail_measure_bound is an upper bound for the measure of whatever the
    truncated construction left out; None means no finite bound is known.
    """

    intervals: Tuple[Tuple[Fraction, Fraction], ...]
    tail_measure_bound: Optional[Fraction] = Fraction(0)
    provenance: Dict[str, str] = field(default_factory=dict, compare=False)

    @staticmethod
    def from_pairs(pairs: Sequence[Tuple[Fraction, Fraction]],
                   tail: Optional[Fraction] = Fraction(0),
                   clip: Tuple[Fraction, Fraction] = UNIT,
                   provenance: Optional[Dict[str, str]] = None) -> "IntervalSet":
        lo_clip, hi_clip = clip
        clipped = []
        maxbits = 1
        for a, b in pairs:
            a, b = max(Fraction(a), lo_clip), min(Fraction(b), hi_clip)
            if a < b:
                clipped.append((a, b))
                maxbits = max(maxbits, a.denominator.bit_length(),
                              b.denominator.bit_length())
        # integer sort keys: distinct endpoints with denominators below
        # 2^maxbits differ by more than 2^-(2 maxbits), so this shift keeps
        # the exact order while sorting native ints
        shift = 2 * maxbits + 8
        clipped.sort(key=lambda ab: ((ab[0].numerator << shift) // ab[0].denominator,
                                     (ab[1].numerator << shift) // ab[1].denominator))
        merged: List[Tuple[Fraction, Fraction]] = []
        for a, b in clipped:
            if merged and a < merged[-1][1]:
                pa, pb = merged[-1]
                merged[-1] = (pa, max(pb, b))
            else:
                merged.append((a, b))
        return IntervalSet(tuple(merged), tail, provenance or {})

    @property
    def measure(self) -> Fraction:
        return _fraction_sum(b - a for a, b in self.intervals)

    def contains(self, x) -> bool:
        x = Fraction(x)
        idx = bisect.bisect_right([a for a, _ in self.intervals], x)
        if idx == 0:
            return False
        a, b = self.intervals[idx - 1]
        return a < x < b

    def covers(self, other: "IntervalSet") -> bool:
        """True if every interval of `other` sits inside one of ours."""
        los = [a for a, _ in self.intervals]
        for a, b in other.intervals:
            idx = bisect.bisect_right(los, a)
            if idx == 0:
                return False
            ca, cb = self.intervals[idx - 1]
            if not (ca <= a and b <= cb):
                return False
        return True

    def to_json_obj(self, digits: int = 30) -> dict:
        # endpoints go out as "num/den" strings: exact, and safe for JSON
        # readers that cannot hold thousand-digit number literals
        tail = self.tail_measure_bound
        with unlimited_int_digits():
            return {
                "intervals": [[str(a), str(b)] for a, b in self.intervals],
                "tail_measure_bound":
                    "inf" if tail is None else frac_to_decimal(tail, digits, "up"),
                "exact_measure": str(self.measure),
                "provenance": dict(self.provenance),
            }

    @staticmethod
    def from_json_obj(obj: dict) -> "IntervalSet":
        with unlimited_int_digits():
            pairs = [(Fraction(a), Fraction(b)) for a, b in obj["intervals"]]
            raw = obj.get("tail_measure_bound", "0")
            tail = None if raw == "inf" else Fraction(raw)
        return IntervalSet.from_pairs(pairs, tail,
                                      provenance=obj.get("provenance") or {})

    def write_csv(self, path: str) -> None:
        with unlimited_int_digits(), open(path, "w", encoding="utf-8") as fh:
            fh.write("lo_num,lo_den,hi_num,hi_den,lo_float,hi_float\n")
            for a, b in self.intervals:
                fh.write(f"{a.numerator},{a.denominator},{b.numerator},{b.denominator},"
                         f"{float(a)!r},{float(b)!r}\n")


def _reduced_fractions(m: int, unit_interior: bool) -> List[int]:
    if m == 1:
        return [] if unit_interior else [0, 1]
    lo = 1 if unit_interior else 0
    hi = m - 1 if unit_interior else m
    return [n for n in range(lo, hi + 1) if gcd(n, m) == 1]


def _radius_upper(coeff: Fraction, m: int, expo: Fraction, bits: int) -> Fraction:
    """Upper bound for coeff / m**expo (exact when expo is an integer)."""
    plo, _ = pow_bounds(m, expo, bits)
    return coeff / plo


def complement_C(M, tau, m_max: int, bits: int = 80) -> IntervalSet:
    """Union of intervals (n/m - r, n/m + r), r = 1/(M m^(2+tau)), m <= m_max.

    Endpoints are rounded outward when tau is not an integer, so the result
    is a superset of the true truncated complement.  The tail bound covers
    denominators beyond m_max:  sum_{m>m_max} 2 m^(-1-tau) / M.
    """
    M, tau = Fraction(M), Fraction(tau)
    if tau <= 0:
        raise ValueError("tau must be positive")
    zlo, zhi = zeta_bounds(1 + tau)
    if not M > 2 * zhi:
        raise ValueError(f"M must exceed 2*zeta(1+tau) (> {float(2 * zhi):.6f})")
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    pairs = []
    for m in range(1, m_max + 1):
        r = _radius_upper(1 / M, m, 2 + tau, bits)
        for n in _reduced_fractions(m, unit_interior=False):
            c = Fraction(n, m)
            pairs.append((c - r, c + r))
    tail = (2 / M) * zsum_upper(tau, m_max + 1, bits)
    return IntervalSet.from_pairs(pairs, tail, provenance={
        "kind": "C", "M": str(M), "tau": str(tau), "m_max": str(m_max)})


def dc_complement(gamma, tau, m_max: int, bits: int = 80) -> IntervalSet:
    """Union of intervals (n/m - r, n/m + r), r = gamma/m^(2+tau), m <= m_max.

    For tau == 0 the tail sum diverges and the tail bound is None.
    """
    gamma, tau = Fraction(gamma), Fraction(tau)
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    if tau < 0:
        raise ValueError("tau must be >= 0")
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    pairs = []
    for m in range(1, m_max + 1):
        r = _radius_upper(gamma, m, 2 + tau, bits)
        for n in _reduced_fractions(m, unit_interior=False):
            c = Fraction(n, m)
            pairs.append((c - r, c + r))
    tail = 2 * gamma * zsum_upper(tau, m_max + 1, bits) if tau > 0 else None
    return IntervalSet.from_pairs(pairs, tail, provenance={
        "kind": "DC", "gamma": str(gamma), "tau": str(tau), "m_max": str(m_max)})


def complement_L(M, m_max: int, prec: Optional[int] = None) -> IntervalSet:
    """Union of intervals (n/m - r, n/m + r), r = 1/(m e^(M m)), m <= m_max.

    Points avoiding all such intervals (for every m) satisfy the growth
    condition L; the cutoff makes the reported set a truncated superset of
    that inner approximation.  Radii are rounded outward.
    """
    M = Fraction(M)
    old = iv.prec
    iv.prec = prec or precision_bits()
    try:
        if not mpf_to_fraction(iv.exp(_iv_frac(M)).a) > 3:
            raise ValueError("M must exceed log 3")
        pairs = []
        for m in range(1, m_max + 1):
            e_lo = mpf_to_fraction(iv.exp(_iv_frac(M) * m).a)
            r = 1 / (m * e_lo)
            for n in _reduced_fractions(m, unit_interior=False):
                c = Fraction(n, m)
                pairs.append((c - r, c + r))
        # tail: sum_{m>m_max} phi(m) * 2/(m e^(Mm)) <= 2 e^(-M(m_max+1)) / (1 - e^(-M))
        emt = iv.exp(-_iv_frac(M))
        t = 2 * emt ** (m_max + 1) / (1 - emt)
        tail = mpf_to_fraction(t.b)
    finally:
        iv.prec = old
    return IntervalSet.from_pairs(pairs, tail, provenance={
        "kind": "L", "M": str(M), "m_max": str(m_max),
        "note": "inner-approximation radii 1/(m e^(Mm))"})


@dataclass(frozen=True)
class MembershipReport:
    verdict: str                        # in | out | undecided
    reason: str
    witnesses: Tuple = ()
    provenance: Dict[str, str] = field(default_factory=dict, compare=False)


def member_L(cf: ContinuedFraction, M, tail_model: Optional[TailModel] = None,
             prec: Optional[int] = None) -> MembershipReport:
    """Decide sup_k log(m_{k+1})/m_k <= M over the computed expansion.

    "in" needs a quotient-bounded tail model: beyond the last computed
    index, m_{k+1} <= (A+1) m_k gives log(m_{k+1})/m_k <= (log(A+1) +
    log(m_k))/m_k, decreasing in m_k, so checking it at the last
    denominator certifies the rest.
    """
    M = Fraction(M)
    if cf.exhausted:
        return MembershipReport("out", "rational input, growth condition is void")
    old = iv.prec
    iv.prec = prec or precision_bits()
    try:
        Miv = _iv_frac(M)
        if not mpf_to_fraction(iv.exp(Miv).a) > 3:
            raise ValueError("M must exceed log 3")
        for k in range(cf.depth):
            mk, mk1 = cf.denominator(k), cf.denominator(k + 1)
            lhs = iv.log(mk1)
            rhs = Miv * mk
            if mpf_to_fraction(lhs.a) > mpf_to_fraction(rhs.b):
                return MembershipReport("out", f"log(m_{k + 1})/m_{k} > M", ((k, mk, mk1),))
            if not mpf_to_fraction(lhs.b) <= mpf_to_fraction(rhs.a):
                return MembershipReport("undecided", f"ratio at k={k} too close to M")
        if tail_model is None or tail_model.kind != "quotient-bounded":
            return MembershipReport(
                "undecided", f"verified for k < {cf.depth}; no tail model",
                provenance={"depth": str(cf.depth)})
        A = tail_model.bound             # bounds quotients beyond the computed depth
        mlast = cf.denominator(cf.depth)
        if mlast < 2:
            return MembershipReport("undecided", "expand further: last denominator < 2")
        lhs = iv.log(A + 1) + iv.log(mlast)
        rhs = _iv_frac(M) * mlast
        if mpf_to_fraction(lhs.b) <= mpf_to_fraction(rhs.a):
            return MembershipReport("in", "computed ratios and tail certificate both below M",
                                    provenance={"depth": str(cf.depth), "A": str(A)})
        return MembershipReport("undecided", "tail certificate inconclusive at this depth")
    finally:
        iv.prec = old


def member_S(cf: ContinuedFraction, M, tail_model: Optional[TailModel] = None,
             depth: Optional[int] = None, prec: Optional[int] = None) -> MembershipReport:
    """Decide whether the Bruno sum is <= M."""
    M = Fraction(M)
    if M <= 0:
        raise ValueError("M must be positive")
    if cf.exhausted:
        return MembershipReport("out", "rational input, Bruno sum diverges")
    val = bruno(cf, depth=depth, tail_model=tail_model, prec=prec)
    if val.lo > M:
        return MembershipReport("out", "partial Bruno sum already exceeds M",
                                ((str(val.lo), str(val.hi)),),
                                provenance={"depth": str(val.depth)})
    if val.upper is not None and val.upper <= M:
        return MembershipReport("in", "partial sum plus tail bound stays below M",
                                ((str(val.lo), str(val.upper)),),
                                provenance={"depth": str(val.depth)})
    return MembershipReport("undecided",
                            "tail unbounded or bound too coarse at this depth",
                            provenance={"depth": str(val.depth)})


def _nearest_candidates(enc: RationalInterval, m: int) -> List[int]:
    t_lo = (enc.lo * m)
    t_hi = (enc.hi * m)
    lo_n = t_lo.numerator // t_lo.denominator
    hi_n = -((-t_hi.numerator) // t_hi.denominator)   # ceil
    return list(range(lo_n, hi_n + 1))


def _diophantine_member(x, coeff: Fraction, tau: Fraction, m_max: int,
                        unit_interior: bool, bits: int = 256) -> MembershipReport:
    """Shared verifier for |x - n/m| >= coeff / m^(2+tau).

    Exhaustive over m <= m_max with exact power comparisons; beyond the
    cutoff, certified through the convergent gap bounds when the input
    carries a certified quotient bound:

      non-convergents with m <= m_{k+1}:  |mx - n| > |m_k x - n_k| > 1/(2 m_{k+1})
      the convergent m_{k+1} itself:      |m_{k+1} x - n_{k+1}| > 1/(2 m_{k+2})

    so it is enough that m^(1+tau) >= 2 coeff m_{k+1} at the block floor and
    m_{k+1}^(1+tau) >= 2 coeff m_{k+2} per index, which a quotient bound A
    makes self-sustaining once m_k^tau >= 2 coeff (A+1).
    """
    coeff, tau = Fraction(coeff), Fraction(tau)
    if isinstance(x, (int, Fraction)):
        return MembershipReport("out", "rational input is at distance 0 from itself",
                                ((Fraction(x).numerator, Fraction(x).denominator),))
    enc = enclosure_for(x, bits)
    if unit_interior and not (0 < enc.lo and enc.hi < 1):
        raise ValueError("input must lie in (0, 1)")
    expo = 1 + tau

    def scan(lo_m: int, hi_m: int) -> Optional[MembershipReport]:
        nonlocal enc, bits
        for m in range(lo_m, hi_m + 1):
            if unit_interior and m == 1:
                continue
            for n in _nearest_candidates(enc, m):
                if gcd(abs(n), m) != 1:
                    continue
                if unit_interior and not (0 < Fraction(n, m) < 1):
                    continue
                dist = abs(enc * m - n)   # |m x - n|, need >= coeff / m^(1+tau)
                for _ in range(3):
                    lo_ok = power_ge(m, expo, coeff / dist.lo) if dist.lo > 0 else False
                    hi_bad = dist.hi > 0 and not power_ge(m, expo, coeff / dist.hi)
                    if lo_ok or hi_bad or dist.lo == dist.hi:
                        break
                    bits *= 2
                    enc = enclosure_for(x, bits)
                    dist = abs(enc * m - n)
                if lo_ok:
                    continue
                if dist.hi == 0 or not power_ge(m, expo, coeff / dist.hi):
                    return MembershipReport("out", "witness rational too close",
                                            ((n, m),), {"m_max": str(m_max)})
                return MembershipReport("undecided", f"enclosure too wide at n/m = {n}/{m}")
        return None

    found = scan(1, m_max)
    if found is not None:
        return found

    # tail certification beyond the cutoff, via the best-approximation law
    bound = None
    if isinstance(x, (Surd, PeriodicQuotients)):
        bound = x.quotient_bound()
    if bound is None:
        return MembershipReport("undecided", f"verified for m <= {m_max}; no quotient bound",
                                provenance={"m_max": str(m_max)})
    A = bound
    if tau == 0 and 2 * coeff * (A + 1) > 1:
        return MembershipReport("undecided",
                                "tau = 0 tail certificate needs 2*coeff*(A+1) <= 1",
                                provenance={"m_max": str(m_max), "A": str(A)})
    depth = 16
    while True:
        cf = cf_expand(x, depth)
        if cf.denominator(cf.depth - 2) > m_max and \
                power_ge(cf.denominator(cf.depth - 2), tau, 2 * coeff * (A + 1)):
            break
        depth *= 2
        if depth > 1 << 14:
            return MembershipReport("undecided", "tail certificate depth overflow")
    m_eff = m_max
    if cf.denominator(1) > m_max:
        # the law below starts at convergent index 1; close the gap by scanning
        m_eff = cf.denominator(1)
        if m_eff > 10 ** 6:
            return MembershipReport("undecided",
                                    "first convergent denominator exceeds the scan cap")
        found = scan(m_max + 1, m_eff)
        if found is not None:
            return found
    k0 = max(k for k in range(1, cf.depth + 1) if cf.denominator(k) <= m_eff)
    for k in range(k0, cf.depth - 1):
        mk, mk1, mk2 = (cf.denominator(k), cf.denominator(k + 1), cf.denominator(k + 2))
        floor_m = max(mk, m_eff) + 1
        ok_block = power_ge(floor_m, expo, 2 * coeff * mk1)
        ok_conv = mk1 <= m_eff or power_ge(mk1, expo, 2 * coeff * mk2)
        if not (ok_block and ok_conv):
            return MembershipReport(
                "undecided", f"tail certificate fails at convergent index {k}",
                provenance={"m_max": str(m_max), "A": str(A)})
        if power_ge(mk, tau, 2 * coeff * (A + 1)):
            return MembershipReport(
                "in", "exhaustive below cutoff, convergent tail certificate above",
                provenance={"m_max": str(m_max), "A": str(A), "k_cert": str(k)})
    return MembershipReport("undecided", "tail certificate did not stabilize")


def member_C(x, M, tau, m_max: int, bits: int = 256) -> MembershipReport:
    """Decide |x - n/m| >= 1/(M m^(2+tau)) over all rationals."""
    M, tau = Fraction(M), Fraction(tau)
    if tau <= 0:
        raise ValueError("tau must be positive")
    zlo, zhi = zeta_bounds(1 + tau)
    if not M > 2 * zhi:
        raise ValueError(f"M must exceed 2*zeta(1+tau) (> {float(2 * zhi):.6f})")
    return _diophantine_member(x, 1 / M, tau, m_max, unit_interior=False, bits=bits)


def member_DC(x, gamma, tau, m_max: int, bits: int = 256) -> MembershipReport:
    """Decide |x - n/m| >= gamma/m^(2+tau) over rationals in (0, 1)."""
    gamma, tau = Fraction(gamma), Fraction(tau)
    if not 0 < gamma:
        raise ValueError("gamma must be positive")
    if tau < 0:
        raise ValueError("tau must be >= 0")
    return _diophantine_member(x, gamma, tau, m_max, unit_interior=True, bits=bits)


@dataclass(frozen=True)
class RankInterval:
    """Open interval of reals whose expansion starts 0, a_1, ..., a_k."""

    quotients: Tuple[int, ...]
    lo: Fraction
    hi: Fraction
    convergent: Tuple[int, int]         # (n_k, m_k)
    previous: Tuple[int, int]           # (n_{k-1}, m_{k-1})

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        x = Fraction(x)
        return self.lo < x < self.hi


def rank_interval(quotients: Sequence[int]) -> RankInterval:
    """Endpoints n_k/m_k and (n_k + n_{k-1})/(m_k + m_{k-1}), ordered by
    the parity of k; the length is 1/(m_k (m_k + m_{k-1})) exactly."""
    qs = tuple(int(a) for a in quotients)
    if not qs:
        raise ValueError("need at least one quotient")
    if any(a < 1 for a in qs):
        raise ValueError("quotients must be >= 1")
    conv = _convergents((0,) + qs)
    k = len(qs)
    nk, mk = conv[k]
    nk1, mk1 = conv[k - 1]
    a = Fraction(nk, mk)
    b = Fraction(nk + nk1, mk + mk1)
    lo, hi = (a, b) if k % 2 == 0 else (b, a)
    out = RankInterval(qs, lo, hi, (nk, mk), (nk1, mk1))
    assert out.length == Fraction(1, mk * (mk + mk1))
    return out


def ones_interval(k: int) -> RankInterval:
    """Rank interval of the all-ones word; endpoints are Fibonacci ratios."""
    return rank_interval((1,) * k)


@dataclass(frozen=True)
class DCDensityReport:
    gamma: Fraction
    tau: Fraction
    k: int
    m_max: int
    interval: RankInterval
    excluded_measure: Fraction
    tail_bound: Fraction
    dc_lower_bound: Fraction            # certified lower bound for |DC ∩ I_k|
    target: Fraction                    # (1 - 26 gamma) |I_k|
    passed: bool
    min_flagged_denominator: Optional[int]
    structure_ok: bool                  # m >= m_k and p_m < 3 + m |I_k|
    flagged_counts: Dict[int, int]

    @property
    def margin(self) -> Fraction:
        return self.dc_lower_bound - self.target


def dc_density_check(gamma, tau, k: int, m_max: Optional[int] = None,
                     bits: int = 80) -> DCDensityReport:
    """Certify that DC_{gamma,tau} fills the all-ones rank interval I_k.

    Flags every reduced n/m (m <= m_max) whose exclusion interval of radius
    gamma/m^(2+tau) meets I_k, measures the union exactly, bounds the
    remaining denominators by the per-denominator count p_m < 3 + m |I_k|,
    and compares the resulting lower bound for |DC ∩ I_k| against
    (1 - 26 gamma)|I_k|.  Needs tau >= 1, 0 < gamma < 1/26, k >= 2.
    """
    gamma, tau = Fraction(gamma), Fraction(tau)
    if not 0 < gamma < Fraction(1, 26):
        raise ValueError("gamma must lie in (0, 1/26)")
    if tau < 1:
        raise ValueError("tau must be >= 1")
    if k < 2:
        raise ValueError("k must be >= 2")
    I = ones_interval(k)
    mk = I.convergent[1]
    assert mk == fibonacci(k + 1)
    L = I.length
    if m_max is None:
        m_max = max(128, 8 * mk)
    if m_max < mk:
        raise ValueError("m_max must reach the interval's own denominator m_k")

    expo = 2 + tau
    pairs = []
    counts: Dict[int, int] = {}
    min_m = None
    structure_ok = True
    for m in range(1, m_max + 1):
        r_up = _radius_upper(gamma, m, expo, bits)
        lo_n = ((I.lo - r_up) * m).numerator // ((I.lo - r_up) * m).denominator
        hi_t = (I.hi + r_up) * m
        hi_n = -((-hi_t.numerator) // hi_t.denominator)
        for n in range(lo_n, hi_n + 1):
            if gcd(abs(n), m) != 1:
                continue
            c = Fraction(n, m)
            # exact flag: dist(c, I) < gamma/m^(2+tau)
            d = I.lo - c if c <= I.lo else (c - I.hi if c >= I.hi else Fraction(0))
            if d > 0 and power_ge(m, expo, gamma / d):
                continue                 # m^(2+tau) >= gamma/d, no overlap
            if not (0 < c < 1):
                continue
            counts[m] = counts.get(m, 0) + 1
            min_m = m if min_m is None else min(min_m, m)
            if m < mk:
                structure_ok = False
            if tau.denominator == 1:
                r = gamma / Fraction(m) ** (2 + tau)
            else:
                r = r_up
            pairs.append((c - r, c + r))
    for m, cnt in counts.items():
        if not Fraction(cnt) < 3 + m * L:
            structure_ok = False

    excluded = IntervalSet.from_pairs(pairs, Fraction(0), clip=(I.lo, I.hi)).measure
    tail = 2 * gamma * (3 * zsum_upper(1 + tau, m_max + 1, bits)
                        + L * zsum_upper(tau, m_max + 1, bits))
    lower = L - excluded - tail
    target = (1 - 26 * gamma) * L
    return DCDensityReport(
        gamma, tau, k, m_max, I, excluded, tail, lower, target,
        passed=bool(lower > target and structure_ok),
        min_flagged_denominator=min_m, structure_ok=structure_ok,
        flagged_counts=counts)


@dataclass(frozen=True)
class BrunoThresholdReport:
    gamma: Fraction
    tau: Fraction
    M: Fraction
    kbar: int
    bound_at_kbar: Fraction
    samples: Tuple[Tuple[str, str, str], ...]   # (label, dc verdict, bruno verdict)

    @property
    def all_samples_in(self) -> bool:
        return all(dc == "in" and br == "in" for _, dc, br in self.samples)


def dc_bruno_bound(gamma, tau, k: int, prec: Optional[int] = None) -> Fraction:
    """Upper bound for the Bruno sum of any point of DC_{gamma,tau} whose
    expansion starts with k ones:

        sum_{l >= k} (log(1/gamma) phi^(l-1) + 2 tau phi^((l-1)/2))

    with phi the golden mean in (0, 1); evaluated as a rational upper bound.
    """
    gamma, tau = Fraction(gamma), Fraction(tau)
    if not 0 < gamma <= 1:
        raise ValueError("gamma must lie in (0, 1]")
    if tau < 0 or k < 1:
        raise ValueError("need tau >= 0 and k >= 1")
    old = iv.prec
    iv.prec = prec or precision_bits()
    try:
        phi = (iv.sqrt(5) - 1) / 2
        total = iv.mpf(0)
        if gamma != 1:
            total += iv.log(_iv_frac(1 / gamma)) * phi ** (k - 1) / (1 - phi)
        if tau != 0:
            total += 2 * _iv_frac(tau) * iv.sqrt(phi) ** (k - 1) / (1 - iv.sqrt(phi))
        return mpf_to_fraction(total.b)
    finally:
        iv.prec = old


def noble_surd(k: int, a: int) -> Surd:
    """The point [0; 1, ..., 1 (k ones), a, 1, 1, ...], a quadratic surd
    inside the all-ones rank interval I_k."""
    if k < 1 or a < 1:
        raise ValueError("need k >= 1 and a >= 1")
    w = Surd.golden() + a                # tail [a; 1, 1, ...] = a + phi
    for _ in range(k):
        w = 1 + w.reciprocal()           # prepend one quotient 1
    return w.reciprocal()                # leading 0: x = 1/[1; ...]


def dc_bruno_threshold_check(gamma, tau, M, k: Optional[int] = None,
                             offsets: Sequence[int] = (2, 3),
                             m_max: int = 400,
                             prec: Optional[int] = None) -> BrunoThresholdReport:
    """Find the smallest kbar with dc_bruno_bound(..., kbar) <= M, then
    certify sampled surds of DC ∩ I_k (k >= kbar) as Bruno-admissible."""
    gamma, tau, M = Fraction(gamma), Fraction(tau), Fraction(M)
    if M <= 0:
        raise ValueError("M must be positive")
    kbar = None
    for j in range(1, 400):
        if dc_bruno_bound(gamma, tau, j, prec) <= M:
            kbar = j
            break
    if kbar is None:
        raise RuntimeError("threshold not found below k = 400")
    if k is None:
        k = kbar
    if k < kbar:
        raise ValueError(f"k must be >= the computed threshold {kbar}")
    samples = []
    for a in offsets:
        x = noble_surd(k, a)
        I = ones_interval(k)
        enc = x.enclosure(128)
        inside = I.lo < enc.lo and enc.hi < I.hi
        dc = member_DC(x, gamma, tau, m_max)
        cf = cf_expand(x, max(2 * k + 16, 48))
        br = member_S(cf, M, TailModel.quotient_bounded(x.quotient_bound()))
        label = f"[0;{'1,' * k}{a},1,1,...]"
        samples.append((label, dc.verdict if inside else "outside-interval", br.verdict))
    return BrunoThresholdReport(gamma, tau, M, kbar,
                                dc_bruno_bound(gamma, tau, kbar, prec),
                                tuple(samples))


def measure_bound_certificate(iset: IntervalSet, M, tau,
                              zeta_terms: int = 400) -> Tuple[bool, Fraction, Fraction]:
    """Check exact_measure + tail < 2 zeta(1+tau) / M with directed rounding.

    Returns (ok, lhs_upper, rhs_lower); the comparison is rigorous because
    the left side is an upper bound and the right side a lower bound.
    """
    M, tau = Fraction(M), Fraction(tau)
    zlo, _ = zeta_bounds(1 + tau, terms=zeta_terms)
    rhs = 2 * zlo / M
    if iset.tail_measure_bound is None:
        return False, iset.measure, rhs
    lhs = iset.measure + iset.tail_measure_bound
    return lhs < rhs, lhs, rhs
