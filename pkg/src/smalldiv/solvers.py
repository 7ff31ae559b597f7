"""Solvers for the three model conjugacy problems on the multiplier domain.

Linearization (L): find h with h(qz) - q h(z) = q g(z), normalized h_1 = 1.
Mode k of the unknown divides by q^(k-1) - 1, so the solution is direct.

Siegel (S): find h tangent to the identity with h(qz) = q G(h(z)) where
G(w) = w + g(w).  The same divisors appear, but each coefficient feeds the
later ones through the composition, making the recurrence triangular.

Circle (C): find a periodic v with v = eps * g(theta + E_q v), where E_q
divides Fourier mode k by q^k - 1 and annihilates the mean.  For |q| != 1
the map is a contraction on a ball of radius r' * C once |eps| < r', with
r' = R / (8 * E * C) and E = E(R, Lam) the mode-division norm bound.

Conventions: q is the multiplier, never a root of unity at a resonant
order; norms are sup norms over closed strips/annuli, approximated by
grid maxima (grid max <= true sup, so certificates stay one-sided).
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import AnnulusEscape, NonContraction, ResonantMultiplier
from .series import FourierSeries, PowerSeries, _is_zero


def _scale_arg(ps: PowerSeries, q) -> PowerSeries:
    """Coefficients of z -> ps(q z): c_k becomes c_k * q^k."""
    out = [ps.coeffs[0]] if ps.coeffs else []
    for k in range(1, len(ps.coeffs)):
        out.append(ps.coeffs[k] * q ** k)
    return PowerSeries(tuple(out), ps.tail_discarded)


def _is_infinite(q) -> bool:
    if q is None:
        return False
    try:
        if isinstance(q, complex):
            return cmath.isinf(q)
        if isinstance(q, (int, float, Fraction)):
            return math.isinf(q)
    except TypeError:
        pass
    # sympy.oo and friends expose is_infinite
    return bool(getattr(q, "is_infinite", False))


def _validate_perturbation(g: PowerSeries) -> None:
    # order >= 2: no constant term, no linear term
    if len(g.coeffs) > 0 and not _is_zero(g.coeffs[0]):
        raise ValueError("perturbation must vanish at 0")
    if len(g.coeffs) > 1 and not _is_zero(g.coeffs[1]):
        raise ValueError("perturbation must have zero linear term")


def _float_abs(c) -> Optional[float]:
    try:
        return float(abs(c))
    except (TypeError, ValueError):
        return None


def _empirical_radius(coeffs: Sequence) -> Optional[float]:
    """Root-test estimate 1 / max_k |c_k|^(1/k) of the convergence radius."""
    best = 0.0
    for k, c in enumerate(coeffs):
        if k < 2 or _is_zero(c):
            continue
        a = _float_abs(c)
        if a is None:
            return None
        if a > 0:
            best = max(best, a ** (1.0 / k))
    if best == 0.0:
        return math.inf
    return 1.0 / best


def radius_L(R: float, M: float) -> float:
    """Certified lower bound R * exp(-3M) for the linearization radius."""
    return float(R) * math.exp(-3.0 * float(M))


def radius_S(R: float, M: float, delta: float = 0.5) -> float:
    """Certified lower bound R * exp(-(3 + delta) M) for the Siegel radius."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    return float(R) * math.exp(-(3.0 + float(delta)) * float(M))


@dataclass(frozen=True)
class LinearSolution:
    """Solution of h(qz) - q h(z) = q g(z) with h_1 = 1."""

    h: PowerSeries
    q: object
    radius_certificate: Optional[float] = None
    radius_kind: Optional[str] = None  # "declared" | "empirical"


@dataclass(frozen=True)
class SiegelSolution:
    """Solution of h(qz) = q (h + g(h))(z) with h'(0) = 1."""

    h: PowerSeries
    q: object
    order: int


@dataclass(frozen=True)
class SolverConstants:
    """Constants controlling the circle-map contraction."""

    R: float
    Lam: float
    E: float          # mode-division norm bound E(R, Lam)
    C: float          # sup of |g| on the closed strip of half-width R
    r_prime: float    # admissible |eps| bound R / (8 E C)


@dataclass(frozen=True)
class CircleSolution:
    """Fixed point of v = eps g(theta + E_q v) plus derived conjugacy data."""

    v: FourierSeries
    beta: complex
    u: FourierSeries
    q: complex
    eps: complex
    iterations: int
    final_defect: float
    certified: bool
    constants: Optional[SolverConstants] = None
    contraction_ratios: tuple = field(default=())
    ball_ok: bool = True


def solve_L(g: PowerSeries, q, order: Optional[int] = None,
            domain_R: Optional[float] = None,
            domain_M: Optional[float] = None) -> LinearSolution:
    """Divide mode by mode: h_k = g_k / (q^(k-1) - 1) for k >= 2, h_1 = 1.

    A vanishing divisor with a nonzero g_k is a genuine resonance and
    raises; with g_k = 0 the mode is set to 0.  When the multiplier is
    declared inside the truncated domain via (domain_R, domain_M) the
    radius certificate R exp(-3M) is attached, otherwise a root-test
    estimate from the computed coefficients is reported.
    """
    _validate_perturbation(g)
    n = len(g.coeffs) - 1 if order is None else order
    one = q ** 0
    h = [0 * one, one]
    for k in range(2, n + 1):
        gk = g[k]
        div = q ** (k - 1) - 1
        if _is_zero(div):
            if _is_zero(gk):
                h.append(0 * one)
                continue
            raise ResonantMultiplier(
                f"q^{k - 1} = 1 with nonzero forcing coefficient at degree {k}")
        h.append(gk / div)
    hs = PowerSeries(tuple(h[:n + 1]), tail_discarded=True)
    if domain_R is not None and domain_M is not None:
        return LinearSolution(hs, q, radius_L(domain_R, domain_M), "declared")
    rad = _empirical_radius(hs.coeffs)
    return LinearSolution(hs, q, rad, None if rad is None else "empirical")


def residual_L(sol: LinearSolution, g: PowerSeries) -> PowerSeries:
    """Coefficients of h(qz) - q h(z) - q g(z); zero through the solved order."""
    h, q = sol.h, sol.q
    return _scale_arg(h, q) - (h * q) - (g.truncate(h.order) * q)


def solve_S(g: PowerSeries, q, order: int,
            simplify: Optional[Callable] = None) -> SiegelSolution:
    """Triangular recurrence h_k = [z^k](g o h) / (q^(k-1) - 1), h_1 = 1.

    The composition coefficient at degree k only involves h_2 .. h_{k-1}
    (every monomial of g has degree >= 2), so h can be built degree by
    degree.  q = 0 works through the same formula (divisor -1) and yields
    the inverse of G; an infinite q returns the identity.  An optional
    simplify hook is applied to each new coefficient, useful for symbolic
    multipliers.
    """
    _validate_perturbation(g)
    if order < 1:
        raise ValueError("order must be >= 1")
    if _is_infinite(q):
        return SiegelSolution(PowerSeries.identity(), q, order)
    one = q ** 0
    h = [0 * one, one]
    for k in range(2, order + 1):
        partial = PowerSeries(tuple(h), tail_discarded=True)
        sk = g.truncate(k).compose(partial, order=k)[k]
        div = q ** (k - 1) - 1
        if _is_zero(div):
            if _is_zero(sk):
                h.append(0 * one)
                continue
            raise ResonantMultiplier(
                f"q^{k - 1} = 1 with nonzero composition coefficient "
                f"at degree {k}")
        hk = sk / div
        if simplify is not None:
            hk = simplify(hk)
        h.append(hk)
    return SiegelSolution(PowerSeries(tuple(h), tail_discarded=True), q, order)


def residual_S(sol: SiegelSolution, g: PowerSeries) -> PowerSeries:
    """Coefficients of h(qz) - q (h + g o h)(z); zero through the solved order."""
    h, q = sol.h, sol.q
    if _is_infinite(q):
        raise ValueError("residual undefined for the infinite multiplier")
    comp = g.truncate(h.order).compose(h, order=h.order)
    return _scale_arg(h, q) - ((h + comp) * q)


def calE(R: float, Lam: float) -> float:
    """Norm bound 2 + 1/(e^(2 pi R) - 1) + 1/(2 sinh(pi Lam)^2) for E_q.

    Valid for multipliers with | log|q| | / (2 pi) >= Lam > 0; the first
    two terms bound the mode-sign projections on the strip of half-width
    R/2, the last sums the geometric series of circle distances.
    """
    if R <= 0:
        raise ValueError("R must be positive")
    if Lam <= 0:
        return math.inf
    return 2.0 + 1.0 / math.expm1(2.0 * math.pi * R) \
        + 0.5 / math.sinh(math.pi * Lam) ** 2


def circle_distance(q: complex) -> float:
    """Logarithmic distance | log|q| | / (2 pi) from the unit circle."""
    aq = abs(complex(q))
    if aq == 0 or math.isinf(aq):
        return math.inf
    return abs(math.log(aq)) / (2.0 * math.pi)


def apply_Eq(v: FourierSeries, q: complex) -> FourierSeries:
    """Divide mode k by q^k - 1 and drop the mean.

    Exact resonance (q^k = 1 for a nonzero mode in the band) raises; a
    non-resonant q on the unit circle is allowed but carries no norm
    certificate, so a warning is emitted.
    """
    q = complex(q)
    if q == 0:
        raise ValueError("q = 0 is outside the domain of the mode division")
    if abs(abs(q) - 1.0) < 1e-15 and v.n > 0:
        warnings.warn("multiplier on the unit circle: no norm certificate",
                      stacklevel=2)
    out = []
    for k, c in zip(range(-v.n, v.n + 1), v.coeffs):
        if k == 0:
            out.append(0j)
            continue
        div = q ** k - 1.0
        if div == 0:
            raise ResonantMultiplier(f"q^{k} = 1 inside the mode band")
        out.append(c / div)
    return FourierSeries(tuple(out))


def apply_Eq_exterior(v: FourierSeries, q: complex) -> FourierSeries:
    """Mode division for |q| > 1 via the interior operator at 1/q.

    Uses E_q v = -(v - v_0) - E_{1/q} v, which swaps the roles of the
    mode signs; agrees with direct division wherever both are defined.
    """
    q = complex(q)
    if abs(q) <= 1.0:
        raise ValueError("exterior form requires |q| > 1")
    interior = apply_Eq(v, 1.0 / q)
    return (-(v - v.mean)) - interior


@dataclass(frozen=True)
class ProbeResult:
    max_ratio: float
    bound: float
    ok: bool
    trials: int


def operator_norm_probe(q: complex, R: float, Lam: float, trials: int = 100,
                        n_modes: int = 24, grid: int = 1024,
                        seed: int = 0) -> ProbeResult:
    """Empirical check of the mode-division bound against calE(R, Lam).

    Draws random band-limited functions, measures the ratio of grid sup
    norms of E_q v and v on the boundary lines of the strip of half-width
    R/2, and compares the maximum against the certified constant.  Grid
    maxima underestimate true sups, so a small slack is left to the
    caller when asserting.
    """
    q = complex(q)
    if circle_distance(q) < Lam * (1.0 - 1e-12) - 1e-15:
        raise ValueError("multiplier closer to the unit circle than declared")
    rng = np.random.default_rng(seed)
    bound = calE(R, Lam)
    rho = R / 2.0
    worst = 0.0
    for t in range(trials):
        re = rng.standard_normal(2 * n_modes + 1)
        im = rng.standard_normal(2 * n_modes + 1)
        coeffs = re + 1j * im
        if t % 2 == 1:
            # decaying spectra mimic genuine strip functions
            ks = np.abs(np.arange(-n_modes, n_modes + 1))
            coeffs = coeffs * np.exp(-math.pi * R * ks)
        v = FourierSeries(tuple(coeffs))
        ev = apply_Eq(v, q)
        denom = v.grid_norm(rho, grid)
        if denom == 0.0:
            continue
        worst = max(worst, ev.grid_norm(rho, grid) / denom)
    return ProbeResult(worst, bound, worst <= bound * 1.01, trials)


def constants(R: float, Lam: float, g: FourierSeries,
              grid: int = 2048) -> SolverConstants:
    """Package E(R, Lam), C = sup |g| on the closed strip, r' = R/(8 E C)."""
    if R <= 0:
        raise ValueError("R must be positive")
    E = calE(R, Lam)
    C = g.grid_norm(R, grid)
    if not math.isfinite(E):
        return SolverConstants(R, Lam, E, C, 0.0)
    if C == 0.0:
        return SolverConstants(R, Lam, E, C, math.inf)
    return SolverConstants(R, Lam, E, C, R / (8.0 * E * C))


def _mode_scaled(v: FourierSeries, q: complex) -> FourierSeries:
    """Coefficients of theta -> u(theta + alpha) where q = e^(2 pi i alpha).

    Computed as v_k / (1 - q^(-k)) for the shifted division series, which
    avoids overflowing powers on wide bands.
    """
    out = []
    for k, c in zip(range(-v.n, v.n + 1), v.coeffs):
        if k == 0:
            out.append(0j)
            continue
        out.append(c / (1.0 - q ** (-k)))
    return FourierSeries(tuple(out))


def solve_C(g: FourierSeries, q: complex, eps: complex,
            R: float = 1.0, Lam: Optional[float] = None,
            tol: float = 1e-14, max_iter: int = 100,
            n_modes: Optional[int] = None, grid: Optional[int] = None,
            defect_grid: int = 2048) -> CircleSolution:
    """Iterate v -> eps g(theta + E_q v) to its fixed point.

    The iteration runs on a real sampling grid; each step truncates to
    the working band, so the band is kept wide (4x the band of g at
    least) and the grid oversamples it to keep aliasing far below the
    reported defect.  With |eps| < r' the map is a certified contraction
    and the iterates stay in the ball of radius r' C; otherwise the same
    loop runs best-effort and the result is flagged uncertified.

    The reported defect is the conjugacy defect sup_grid |h(theta+alpha)
    - G(h(theta))| for h = id + u, G = rotation by alpha - beta plus
    eps g, evaluated on an independent finer grid.
    """
    q = complex(q)
    eps = complex(eps)
    if abs(g.mean) > 1e-13:
        raise ValueError("forcing term must have zero mean")
    dist = circle_distance(q)
    if Lam is None:
        Lam = dist if math.isfinite(dist) else 1.0
    elif dist < Lam * (1.0 - 1e-12) - 1e-15:
        raise ValueError("multiplier closer to the unit circle than declared")
    consts = constants(R, Lam, g)
    certified = abs(eps) < consts.r_prime
    if n_modes is None:
        n_modes = max(16, 4 * g.n)
    if grid is None:
        grid = 4 * n_modes + 1
    if grid < 2 * n_modes + 1:
        raise ValueError("grid must resolve the working band")

    theta = np.arange(grid) / grid
    v = FourierSeries.zero(n_modes)
    if eps == 0:
        u0 = FourierSeries.zero(n_modes)
        return CircleSolution(v, 0j, u0, q, eps, 0, 0.0, certified, consts)

    ball_radius = consts.r_prime * consts.C
    ratios: list = []
    prev_delta = None
    converged = False
    iterations = 0
    ball_ok = True
    for iterations in range(1, max_iter + 1):
        u = apply_Eq(v, q)
        uvals = u(theta)
        if np.max(np.abs(uvals.imag)) > 0.75 * R:
            raise AnnulusEscape(
                "argument leaves the strip of half-width 3R/4")
        vals = eps * g(theta + uvals)
        v_new = FourierSeries.from_samples(vals, n_modes)
        delta = (v_new - v).grid_norm(0.0, grid)
        if prev_delta is not None and prev_delta > 0:
            ratios.append(delta / prev_delta)
        prev_delta = delta
        v = v_new
        if certified and ball_radius > 0:
            if v.grid_norm(0.0, grid) > ball_radius * 1.01:
                ball_ok = False
        if delta <= tol * max(1.0, v.grid_norm(0.0, grid)):
            converged = True
            break
    if not converged:
        raise NonContraction(
            f"no convergence within {max_iter} iterations "
            f"(last step {prev_delta:.3e}; certified={certified})")

    beta = v.mean
    u = apply_Eq(v, q)
    u_shift = _mode_scaled(v, q)
    ft = np.arange(defect_grid) / defect_grid
    uv = u(ft)
    defect = np.abs(u_shift(ft) - uv + beta - eps * g(ft + uv))
    return CircleSolution(v, beta, u, q, eps, iterations,
                          float(np.max(defect)), certified, consts,
                          tuple(ratios), ball_ok)
