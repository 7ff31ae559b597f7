"""Empirical probes of boundary regularity for the model problems.

These are harnesses, not proofs.  The Whitney probe measures first-order
Taylor defect ratios of q -> h(q, .) at anchors inside the multiplier
domain; the limit experiment tracks Cauchy trends along non-tangential
rays toward a circle point; the two-sided demo compares interior and
exterior solutions approaching the same circle point.  Verdicts are
deliberately weak trend checks: the underlying theory gives existence of
limits and derivatives, not rates.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np

from .arith_sets import (MembershipReport, complement_L, dc_bruno_bound,
                         dc_complement, member_S)
from .contfrac import ContinuedFraction, TailModel, cf_expand
from .domains import Cone, MultiplierDomain
from .errors import Undecided
from .exact import Jet, Surd
from .series import PowerSeries
from .solvers import radius_L, radius_S, solve_L, solve_S

TWO_PI = 2.0 * math.pi
GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def default_perturbation() -> PowerSeries:
    """The quadratic model forcing z^2."""
    return PowerSeries((0.0, 0.0, 1.0))


def disc_norm(coeffs: Sequence[complex], r: float) -> float:
    """Upper bound sum |c_k| r^k for the sup norm on the disk |z| <= r."""
    return float(sum(abs(c) * r ** k for k, c in enumerate(coeffs)))


def coeff_diff(a: Sequence[complex], b: Sequence[complex]) -> Tuple[complex, ...]:
    n = max(len(a), len(b))
    pa = tuple(a) + (0,) * (n - len(a))
    pb = tuple(b) + (0,) * (n - len(b))
    return tuple(x - y for x, y in zip(pa, pb))


def solution_coeffs(problem: str, g: PowerSeries, q: complex,
                    order: int) -> Tuple[complex, ...]:
    if problem == "L":
        return tuple(complex(c) for c in solve_L(g, complex(q), order).h.coeffs)
    if problem == "S":
        return tuple(complex(c) for c in solve_S(g, complex(q), order).h.coeffs)
    raise ValueError("problem must be 'L' or 'S'")


def derivative_coeffs(problem: str, g: PowerSeries, q: complex,
                      order: int) -> Tuple[complex, ...]:
    """Coefficientwise d/dq of the solution map.

    For the linear problem the closed form -(k-1) q^(k-2) g_k /
    (q^(k-1) - 1)^2 is used; for the Siegel problem the recurrence is
    run on first-order dual numbers, which differentiates it exactly.
    """
    q = complex(q)
    if problem == "L":
        out = [0j, 0j]
        for k in range(2, order + 1):
            gk = complex(g[k])
            div = q ** (k - 1) - 1.0
            out.append(-gk * (k - 1) * q ** (k - 2) / (div * div))
        return tuple(out)
    if problem == "S":
        sol = solve_S(g, Jet(q, 1.0), order)
        return tuple(Jet.lift(c).dot for c in sol.h.coeffs)
    raise ValueError("problem must be 'L' or 'S'")


def _calibrated_gamma(M: float) -> Fraction:
    """Largest convenient gamma with certified Bruno bound <= M.

    Any point satisfying the (gamma, 1) Diophantine condition has Bruno
    sum at most log(1/gamma)/(1-phi) + 2 sqrt(phi)/... evaluated at
    level 1; inverting that threshold picks gamma so the Diophantine
    domain sits inside the Bruno-type domain at level M.
    """
    phi = GOLDEN
    base = 2.0 / (1.0 - math.sqrt(phi))
    log_inv = (M - base) * (1.0 - phi)
    if log_inv <= math.log(26.0):
        raise ValueError(
            "domain level too small to calibrate a Diophantine proxy; "
            f"need roughly M > {base + math.log(26.0) / (1.0 - phi):.1f}")
    gamma = Fraction(math.exp(-log_inv)).limit_denominator(10 ** 12)
    for _ in range(8):
        if gamma < Fraction(1, 26) and dc_bruno_bound(gamma, 1, 1) <= M:
            return gamma
        gamma = gamma * Fraction(19, 20)
    raise ValueError("gamma calibration failed to certify")


def _whitney_domain(problem: str, M: float, m_max: int):
    if problem == "L":
        iset = complement_L(M, m_max)
        prov = {"kind": "L-exclusions", "M": M, "m_max": m_max}
    elif problem == "S":
        gamma = _calibrated_gamma(M)
        iset = dc_complement(gamma, 1, m_max)
        prov = {"kind": "diophantine-proxy", "M": M, "m_max": m_max,
                "gamma": str(gamma), "tau": 1,
                "bruno_bound": float(dc_bruno_bound(gamma, 1, 1))}
    else:
        raise ValueError("problem must be 'L' or 'S'")
    return MultiplierDomain(iset), prov


@dataclass(frozen=True)
class WhitneyAnchor:
    """Defect-ratio table of one anchor across dyadic scales."""

    q: complex
    depth: float                       # |Im alpha|; 0 means on the circle
    rows: Tuple[Tuple[float, float], ...]   # (|q2 - q1|, defect ratio)
    slope: Optional[float]             # fitted log-log decay rate
    decays: bool


@dataclass(frozen=True)
class WhitneyReport:
    problem: str
    M: float
    order: int
    r_cmp: float
    scales: Tuple[float, ...]
    anchors: Tuple[WhitneyAnchor, ...]
    flagged: Tuple[int, ...]           # anchor indices whose ratios fail to decay
    provenance: dict


def _anchor_table(problem: str, g: PowerSeries, q1: complex, order: int,
                  r_cmp: float, scales: Sequence[float],
                  domain: MultiplierDomain) -> Optional[WhitneyAnchor]:
    if not domain.contains(q1):
        return None
    c1 = solution_coeffs(problem, g, q1, order)
    d1 = derivative_coeffs(problem, g, q1, order)
    rows = []
    for delta in scales:
        # move radially inward: the distance profile only constrains |Im alpha|
        q2 = q1 * math.exp(-TWO_PI * delta)
        if not domain.contains(q2):
            return None
        dq = q2 - q1
        c2 = solution_coeffs(problem, g, q2, order)
        defect = coeff_diff(c2, tuple(a + dq * b for a, b in zip(c1, d1)))
        rows.append((abs(dq), disc_norm(defect, r_cmp) / abs(dq)))
    ratios = [r for _, r in rows]
    if all(r == 0.0 for r in ratios):
        slope: Optional[float] = None
        decays = True
    else:
        xs = np.log([d for d, _ in rows])
        ys = np.log(np.maximum(ratios, 1e-300))
        slope = float(np.polyfit(xs, ys, 1)[0])
        decays = ratios[-1] <= 0.9 * ratios[0]
    x, y = MultiplierDomain.coordinates(q1)
    return WhitneyAnchor(q1, abs(y), tuple(rows), slope, decays)


def whitney_probe(problem: str, M: float, sample_count: int = 8,
                  scales: int = 5, g: Optional[PowerSeries] = None,
                  order: int = 16, m_max: int = 60, r_cmp: float = 0.25,
                  base_scale: float = 1e-2, seed: int = 0) -> WhitneyReport:
    """Measure Whitney defect ratios of the solution map at domain anchors.

    Half the anchors sit deep in the interior (|q| <= 0.5, ordinary
    analyticity, ratios decay linearly); the rest ladder down toward the
    unit circle along a badly-approximable ray, finishing on the circle
    itself.  With g = 0 the map is constant and every defect is exactly
    zero.  Raises when fewer than two anchors certify inside the domain.
    """
    if g is None:
        g = default_perturbation()
    domain, prov = _whitney_domain(problem, M, m_max)
    rng = np.random.default_rng(seed)
    scale_list = tuple(base_scale * 2.0 ** (-s) for s in range(scales))

    anchor_points = []
    n_interior = max(1, sample_count // 2)
    tries = 0
    while len(anchor_points) < n_interior and tries < 50 * n_interior:
        tries += 1
        x = rng.uniform(0.0, 1.0)
        y = rng.uniform(0.12, 0.35)
        anchor_points.append(cmath.exp(2j * math.pi * (x + 1j * y)))
    ray_x = GOLDEN
    n_ray = sample_count - n_interior
    for t in range(n_ray):
        y = 0.08 * 2.0 ** (-t) if t < n_ray - 1 else 0.0
        anchor_points.append(cmath.exp(2j * math.pi * (ray_x + 1j * y)))

    anchors = []
    for q1 in anchor_points:
        row = _anchor_table(problem, g, q1, order, r_cmp, scale_list, domain)
        if row is not None:
            anchors.append(row)
    if len(anchors) < 2:
        raise ValueError("insufficient certified samples inside the domain")
    flagged = tuple(i for i, a in enumerate(anchors) if not a.decays)
    prov = dict(prov, order=order, r_cmp=r_cmp, seed=seed)
    return WhitneyReport(problem, M, order, r_cmp, scale_list,
                         tuple(anchors), flagged, prov)


def _require_irrational(x) -> ContinuedFraction:
    if isinstance(x, ContinuedFraction):
        cf = x
    else:
        cf = cf_expand(x, depth=48)
    if cf.exhausted:
        raise ValueError("target is rational: not in any admissible set")
    return cf


def _certify_target(cf: ContinuedFraction, M: float,
                    prec: int = 256) -> MembershipReport:
    bound = cf.quotient_bound()
    tail = TailModel.quotient_bounded(bound) if bound is not None else None
    report = member_S(cf, M, tail_model=tail, prec=prec)
    if report.verdict == "out":
        raise ValueError(f"target certified outside the level-{M} set: "
                         f"{report.reason}")
    if report.verdict == "undecided":
        raise Undecided(f"membership undecided: {report.reason}")
    return report


def _target_angle(cf: ContinuedFraction) -> float:
    br = cf.bracket()
    mid = (br.lo + br.hi) / 2
    return float(mid % 1)


@dataclass(frozen=True)
class LimitRow:
    j: int
    distance: float        # |r - 1| of the j-th point
    q: complex
    diff_to_next: Optional[float]


@dataclass(frozen=True)
class LimitTable:
    problem: str
    target: str
    rows: Tuple[LimitRow, ...]
    cauchy_pass: bool
    r_cmp: float
    provenance: dict


def nontangential_limit_experiment(problem: str, x, g: Optional[PowerSeries] = None,
                                   M: float = 3.0, c: float = 7.0, d: float = 0.2,
                                   steps: int = 10, order: int = 16,
                                   r_cmp: Optional[float] = None,
                                   path: str = "radial",
                                   prec: int = 256) -> LimitTable:
    """Track h(q_j, .) along a cone ray q_j -> e^(2 pi i x).

    The target must certify inside the level-M Bruno-type set (rational
    targets and "out" verdicts are refused; "undecided" raises the
    undecided error so the CLI can map it to its own exit code).  The
    Cauchy verdict passes when successive differences decrease by a
    factor <= 0.9 per dyadic step over the final half of the table; the
    theory promises the limit exists but gives no rate, so this check is
    deliberately weak.
    """
    if g is None:
        g = default_perturbation()
    cf = _require_irrational(x)
    report = _certify_target(cf, M, prec)
    angle = _target_angle(cf)
    cone = Cone(angle, slope=c, depth=d)

    points = []
    for j in range(steps):
        # start one dyadic level inside so the boundary point is avoided
        dist = d * 2.0 ** (-(j + 1))
        if path == "radial":
            qj = (1.0 - dist) * cmath.exp(2j * math.pi * angle)
        elif path == "circular":
            # constant radial offset, shrinking angular offset: not an approach
            qj = (1.0 - d * 2.0 ** (-steps)) \
                * cmath.exp(2j * math.pi * (angle + dist))
        else:
            raise ValueError("path must be 'radial' or 'circular'")
        if not cone.contains(qj):
            raise ValueError(
                f"approach point {j} leaves the non-tangential cone")
        points.append((j, dist, qj))

    if r_cmp is None:
        cert = radius_L(1.0, M) if problem == "L" else radius_S(1.0, M)
        r_cmp = cert / 2.0
    sols = [solution_coeffs(problem, g, qj, order) for _, _, qj in points]
    diffs = [disc_norm(coeff_diff(sols[i + 1], sols[i]), r_cmp)
             for i in range(len(sols) - 1)]

    rows = tuple(LimitRow(j, dist, qj, diffs[i] if i < len(diffs) else None)
                 for i, (j, dist, qj) in enumerate(points))
    half = len(diffs) // 2
    tail = diffs[half:]
    ok = all(b <= 0.9 * a for a, b in zip(tail, tail[1:])) and len(tail) >= 2
    prov = {"membership": report.verdict, "membership_reason": report.reason,
            "M": M, "cone_slope": c, "cone_depth": d, "order": order,
            "path": path, "provenance": report.provenance}
    return LimitTable(problem, str(x), rows, ok, r_cmp, prov)


@dataclass(frozen=True)
class PseudoRow:
    j: int
    distance: float
    gap: float


@dataclass(frozen=True)
class PseudoReport:
    problem: str
    target: str
    rows: Tuple[PseudoRow, ...]
    monotone: bool
    final_over_initial: float
    r_cmp: float
    provenance: dict


def pseudocontinuation_demo(problem: str, x, g: Optional[PowerSeries] = None,
                            M: float = 3.0, j_lo: int = 3, j_hi: int = 12,
                            order: int = 16, r_cmp: Optional[float] = None,
                            prec: int = 256) -> PseudoReport:
    """Compare interior and exterior solutions approaching the same circle point.

    Solves at q = (1 -+ 2^(-j)) e^(2 pi i x) for j in [j_lo, j_hi] and
    reports the sup-norm gap on a shared disk.  The gap shrinking to
    zero exhibits the two branches gluing along the circle; nothing here
    claims a rate.  Refuses rational targets and targets certified
    outside the set; g = 0 gives identically zero gaps.
    """
    if g is None:
        g = default_perturbation()
    cf = _require_irrational(x)
    report = _certify_target(cf, M, prec)
    angle = _target_angle(cf)
    if r_cmp is None:
        cert = radius_L(1.0, M) if problem == "L" else radius_S(1.0, M)
        r_cmp = cert / 2.0

    rows = []
    for j in range(j_lo, j_hi + 1):
        dist = 2.0 ** (-j)
        base = cmath.exp(2j * math.pi * angle)
        ci = solution_coeffs(problem, g, (1.0 - dist) * base, order)
        ce = solution_coeffs(problem, g, (1.0 + dist) * base, order)
        rows.append(PseudoRow(j, dist, disc_norm(coeff_diff(ci, ce), r_cmp)))
    gaps = [r.gap for r in rows]
    monotone = all(b < a or (a == 0.0 and b == 0.0)
                   for a, b in zip(gaps, gaps[1:]))
    ratio = 0.0 if gaps[0] == 0.0 else gaps[-1] / gaps[0]
    prov = {"membership": report.verdict, "membership_reason": report.reason,
            "M": M, "order": order, "provenance": report.provenance}
    return PseudoReport(problem, str(x), tuple(rows), monotone, ratio,
                        r_cmp, prov)
