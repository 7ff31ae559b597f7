"""Continued fractions with exact convergents and certified Bruno sums.

The expansion a_0 = floor(x), xi_0 = x - a_0, a_{k+1} = floor(1/xi_k),
xi_{k+1} = 1/xi_k - a_{k+1} is carried out exactly for rationals (Euclid),
quadratic surds (integer state machine), and explicitly given quotient
sequences.  Convergents n_k/m_k follow the two-term recurrence

    n_k = a_k n_{k-1} + n_{k-2},    m_k = a_k m_{k-1} + m_{k-2}

seeded with n_{-1} = 1, n_{-2} = 0, m_{-1} = 0, m_{-2} = 1, so the Bezout
identity m_k n_{k-1} - n_k m_{k-1} = (-1)^k holds at every index.

Bruno sums sum_k log(a_{k+1})/m_k are evaluated in interval arithmetic and
reported as rational lower/upper bounds; tail bounds use the Fibonacci
growth m_k >= Phi^(k-1) and are rounded up, so "upper" stays an upper bound.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple, Union

from mpmath import iv, mp

from .config import precision_bits
from .exact import PeriodicQuotients, RationalInterval, Surd

CFInput = Union[int, Fraction, Surd, PeriodicQuotients, Sequence[int]]


def mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = mp.mpf(x)._mpf_
    if man == 0 and exp != 0:
        raise OverflowError("nonfinite value has no rational representation")
    v = Fraction(man) * (Fraction(2) ** exp)
    return -v if sign else v


@dataclass(frozen=True)
class ContinuedFraction:
    """A computed expansion prefix a_0..a_K with its convergents."""

    quotients: Tuple[int, ...]
    convergents: Tuple[Tuple[int, int], ...]
    exhausted: bool
    source: object = None

    @property
    def depth(self) -> int:
        """Largest computed index K."""
        return len(self.quotients) - 1

    def numerator(self, k: int) -> int:
        return self.convergents[k][0]

    def denominator(self, k: int) -> int:
        return self.convergents[k][1]

    def value(self) -> Fraction:
        if not self.exhausted:
            raise ValueError("value of a non-terminating expansion prefix")
        n, m = self.convergents[-1]
        return Fraction(n, m)

    def bracket(self) -> RationalInterval:
        """Interval containing the represented number, from the last
        two convergents (consecutive convergents straddle the value)."""
        if self.exhausted:
            return RationalInterval.point(self.value())
        if self.depth == 0:
            a0 = self.quotients[0]
            return RationalInterval(Fraction(a0), Fraction(a0 + 1))
        a = Fraction(*self.convergents[-2])
        b = Fraction(*self.convergents[-1])
        return RationalInterval(min(a, b), max(a, b))

    def quotient_bound(self) -> Optional[int]:
        """Certified bound on a_k for all k >= 1, when the source allows one."""
        if isinstance(self.source, (Surd, PeriodicQuotients)):
            return self.source.quotient_bound()
        if self.exhausted:
            return max(self.quotients[1:], default=1)
        return None


def _convergents(quotients: Sequence[int]) -> Tuple[Tuple[int, int], ...]:
    out = []
    n1, n2 = 1, 0   # n_{k-1}, n_{k-2}
    m1, m2 = 0, 1
    for a in quotients:
        n, m = a * n1 + n2, a * m1 + m2
        out.append((n, m))
        n2, n1 = n1, n
        m2, m1 = m1, m
    return tuple(out)


def _euclid_quotients(x: Fraction) -> list:
    num, den = x.numerator, x.denominator
    out = []
    while den:
        a, rem = divmod(num, den)
        out.append(a)
        num, den = den, rem
    return out


def cf_expand(x: CFInput, depth: int) -> ContinuedFraction:
    """Expand x to at most `depth` (index of the last quotient).

    Rationals terminate early and are flagged exhausted; surds and quotient
    sequences yield exactly depth + 1 quotients.  Finite quotient lists are
    taken literally as terminating expansions.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    source = x
    if isinstance(x, bool):
        raise TypeError("boolean is not a number here")
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, float):
        raise TypeError("float input is ambiguous; pass a Fraction or a Surd")
    if isinstance(x, Fraction):
        qs = _euclid_quotients(x)
        exhausted = len(qs) <= depth + 1
        qs = qs[: depth + 1]
    elif isinstance(x, Surd):
        qs = list(itertools.islice(x.quotients(), depth + 1))
        exhausted = False
    elif isinstance(x, PeriodicQuotients):
        qs = list(itertools.islice(iter(x), depth + 1))
        exhausted = False
    elif isinstance(x, Iterable):
        qs = list(itertools.islice(iter(x), depth + 2))
        exhausted = len(qs) <= depth + 1
        qs = qs[: depth + 1]
        for a in qs[1:]:
            if not isinstance(a, int) or a < 1:
                raise ValueError("partial quotients a_k (k >= 1) must be integers >= 1")
        if not qs or not isinstance(qs[0], int):
            raise ValueError("a_0 must be an integer")
    else:
        raise TypeError(f"cannot expand {type(x).__name__}")
    return ContinuedFraction(tuple(qs), _convergents(qs), exhausted, source)


def enclosure_for(x: CFInput, bits: int = 256) -> RationalInterval:
    """Rational enclosure of x with width <= 2**-bits where attainable."""
    if isinstance(x, int):
        return RationalInterval.point(Fraction(x))
    if isinstance(x, Fraction):
        return RationalInterval.point(x)
    if isinstance(x, Surd):
        return x.enclosure(bits + max(0, x.s.bit_length()))
    if isinstance(x, PeriodicQuotients):
        target = Fraction(1, 1 << bits)
        depth = 8
        while True:
            cf = cf_expand(x, depth)
            br = cf.bracket()
            if br.width <= target:
                return br
            depth *= 2
    if isinstance(x, Iterable):
        cf = cf_expand(list(x), 10 ** 9)
        if cf.exhausted:
            return RationalInterval.point(cf.value())
        raise ValueError("finite prefix does not pin the value down")
    raise TypeError(f"no enclosure for {type(x).__name__}")


@dataclass(frozen=True)
class BestApproxCheck:
    k: int
    comparison: Optional[bool]          # |m x - n| > |m_k x - n_k|
    margin: Optional[Fraction]          # distance between the two interval hulls


@dataclass(frozen=True)
class BestApproxReport:
    verdict: str                        # pass | fail | not_applicable | undecided
    n: int
    m: int
    checks: Tuple[BestApproxCheck, ...]
    reason: str = ""
    enclosure_width: Optional[Fraction] = None


def check_best_approx(cf: ContinuedFraction, n: int, m: int,
                      x_enclosure: Optional[RationalInterval] = None,
                      k: Optional[int] = None,
                      bits: int = 256) -> BestApproxReport:
    """Test the best-approximation law at the computed convergents.

    For every applicable index k (m <= m_{k+1}, both convergents computed)
    and a non-convergent n/m, the law asserts |m x - n| > |m_k x - n_k|.
    Sign decisions are exact interval comparisons; if the enclosure is too
    wide to decide, the source is refined when possible, otherwise the
    verdict is "undecided".
    """
    if m <= 0:
        raise ValueError("denominator must be positive")
    fr = Fraction(n, m)
    n, m = fr.numerator, fr.denominator
    if (n, m) in cf.convergents:
        return BestApproxReport("not_applicable", n, m, (),
                                reason="n/m is a convergent of x")
    ks = [k] if k is not None else [
        j for j in range(1, cf.depth) if m <= cf.denominator(j + 1)
    ]
    if k is not None and not (1 <= k < cf.depth):
        raise ValueError("index k must satisfy 1 <= k <= depth - 1")
    if k is not None and m > cf.denominator(k + 1):
        return BestApproxReport("not_applicable", n, m, (),
                                reason=f"m > m_{k + 1}, law does not apply")
    if not ks:
        return BestApproxReport("not_applicable", n, m, (),
                                reason="no computed index with m <= m_{k+1}")

    enc = x_enclosure if x_enclosure is not None else enclosure_for(cf.source, bits)
    checks = []
    verdicts = []
    for j in ks:
        nk, mk = cf.convergents[j]
        for attempt in range(3):
            lhs = abs(enc * m - n)
            rhs = abs(enc * mk - nk)
            cmpres = lhs.strictly_greater(rhs)
            if cmpres is not None or x_enclosure is not None:
                break
            bits *= 2
            enc = enclosure_for(cf.source, bits)
        margin = None
        if cmpres is True:
            margin = lhs.lo - rhs.hi
        elif cmpres is False:
            margin = rhs.lo - lhs.hi
        checks.append(BestApproxCheck(j, cmpres, margin))
        verdicts.append(cmpres)
    if any(v is False for v in verdicts):
        verdict = "fail"
    elif any(v is None for v in verdicts):
        verdict = "undecided"
    else:
        verdict = "pass"
    return BestApproxReport(verdict, n, m, tuple(checks),
                            enclosure_width=enc.width)


@dataclass(frozen=True)
class GapCheck:
    k: int
    lower_ok: Optional[bool]            # 1/(2 m_{k+1}) < |m_k x - n_k|
    upper_ok: Optional[bool]            # |m_k x - n_k| < 1/m_{k+1}
    sign_ok: Optional[bool]             # sign(m_k x - n_k) == (-1)^k
    lower_margin: Optional[Fraction]
    upper_margin: Optional[Fraction]


@dataclass(frozen=True)
class GapReport:
    checks: Tuple[GapCheck, ...]
    note: str = ""

    @property
    def all_ok(self) -> bool:
        return all(c.lower_ok and c.upper_ok and c.sign_ok for c in self.checks)


def convergent_gap_checks(cf: ContinuedFraction,
                          x_enclosure: Optional[RationalInterval] = None,
                          bits: int = 256) -> GapReport:
    """Verify 1/(2 m_{k+1}) < |m_k x - n_k| < 1/m_{k+1} for k >= 1.

    Also checks that m_k x - n_k alternates sign with parity.  For a
    terminated (rational) expansion the last index hits equality and the
    checks stop one index earlier.
    """
    last = cf.depth - 1 if not cf.exhausted else cf.depth - 2
    note = ""
    if cf.exhausted:
        note = "finite expansion, checks vacuous beyond last index"
    if last < 1:
        return GapReport((), note or "need at least indices k and k+1")
    enc = x_enclosure if x_enclosure is not None else enclosure_for(cf.source, bits)
    checks = []
    for k in range(1, last + 1):
        nk, mk = cf.convergents[k]
        mk1 = cf.denominator(k + 1)
        err = enc * mk - nk
        dist = abs(err)
        lo_b = Fraction(1, 2 * mk1)
        hi_b = Fraction(1, mk1)
        lower = dist.strictly_greater(lo_b)
        upper = dist.strictly_less(hi_b)
        sgn = err.sign()
        sign_ok = None if sgn is None else (sgn == (1 if k % 2 == 0 else -1))
        checks.append(GapCheck(
            k, lower, upper, sign_ok,
            None if lower is None else dist.lo - lo_b,
            None if upper is None else hi_b - dist.hi,
        ))
    return GapReport(tuple(checks), note)


@dataclass(frozen=True)
class TailModel:
    """Declares what is assumed about quotients beyond the computed prefix."""

    kind: str                           # "quotient-bounded" | "none"
    bound: Optional[int] = None

    @staticmethod
    def quotient_bounded(bound: int) -> "TailModel":
        if bound < 1:
            raise ValueError("quotient bound must be >= 1")
        return TailModel("quotient-bounded", bound)

    @staticmethod
    def none() -> "TailModel":
        return TailModel("none")


@dataclass(frozen=True)
class BrunoValue:
    """Certified partial sum of a Bruno series plus a tail bound.

    lo/hi bound the computed partial sum (directed rounding); tail_bound
    is an upper bound for the omitted terms under the declared tail model,
    None meaning unbounded/unknown.
    """

    lo: Fraction
    hi: Fraction
    tail_bound: Optional[Fraction]
    depth: int
    classical: bool
    rational: bool
    requested_depth: Optional[int] = None

    @property
    def partial(self) -> float:
        return float((self.lo + self.hi) / 2)

    @property
    def upper(self) -> Optional[Fraction]:
        """Rigorous upper bound on the full series, when the tail is bounded."""
        if self.tail_bound is None:
            return None
        return self.hi + self.tail_bound

    @property
    def lower(self) -> Fraction:
        return self.lo


def bruno(cf: ContinuedFraction, depth: Optional[int] = None,
          tail_model: Optional[TailModel] = None,
          classical: bool = False, prec: Optional[int] = None) -> BrunoValue:
    """Bruno sum over the expansion: sum_{k<depth} log(a_{k+1}) / m_k.

    classical=True sums log(m_{k+1}) / m_k instead.  Tail bounds for the
    quotient-bounded model use m_l >= Phi^(l-1):

        variant:   log(A) * Phi^(3-d)
        classical: log(m_d) * Phi^(3-d) + log(A+1) * Phi^(5-d)

    Terminating (rational) inputs get tail 0 and the rational flag.
    """
    avail = cf.depth                    # terms k = 0 .. avail-1 are computable
    if depth is None:
        d = avail
    elif depth < 0:
        raise ValueError("depth must be >= 0")
    else:
        d = min(depth, avail)
        if depth > avail and not cf.exhausted:
            if tail_model is None or tail_model.kind != "quotient-bounded":
                raise ValueError(
                    "depth exceeds computed quotients; supply a quotient-bounded tail model")
    if tail_model is not None and tail_model.kind == "quotient-bounded":
        beyond = cf.quotients[d + 1:]
        if any(a > tail_model.bound for a in beyond):
            raise ValueError("observed quotients exceed the declared tail bound")

    old = iv.prec
    iv.prec = prec or precision_bits()
    try:
        total = iv.mpf(0)
        for k in range(d):
            mk = cf.denominator(k)
            top = cf.denominator(k + 1) if classical else cf.quotients[k + 1]
            total += iv.log(top) / mk
        lo, hi = mpf_to_fraction(total.a), mpf_to_fraction(total.b)

        if cf.exhausted and d >= avail:
            tail: Optional[Fraction] = Fraction(0)
        elif tail_model is None or tail_model.kind == "none":
            tail = None
        else:
            a_bound = tail_model.bound
            phi_big = (1 + iv.sqrt(5)) / 2
            if classical:
                md = cf.denominator(d)
                t = iv.log(md) * phi_big ** (3 - d) \
                    + iv.log(a_bound + 1) * phi_big ** (5 - d)
            else:
                t = iv.log(a_bound) * phi_big ** (3 - d)
            tail = mpf_to_fraction(t.b)
            if tail < 0:
                tail = Fraction(0)
    finally:
        iv.prec = old
    return BrunoValue(lo, hi, tail, d, classical, cf.exhausted,
                      requested_depth=depth)
