"""Small-divisor laboratory.

Continued fractions with exact interval certificates, arithmetical
interval sets and their measure bounds, complex multiplier domains,
formal and contraction solvers for the three model conjugacy problems,
and empirical boundary-regularity experiments.
"""

from .arith_sets import (BrunoThresholdReport, DCDensityReport, IntervalSet,
                         MembershipReport, RankInterval, complement_C,
                         complement_L, dc_bruno_bound, dc_bruno_threshold_check,
                         dc_complement, dc_density_check,
                         measure_bound_certificate, member_C, member_DC,
                         member_L, member_S, noble_surd, ones_interval,
                         rank_interval, zeta_bounds, zsum_upper)
from .contfrac import (BestApproxReport, BrunoValue, ContinuedFraction,
                       GapReport, TailModel, bruno, cf_expand,
                       check_best_approx, convergent_gap_checks,
                       enclosure_for)
from .domains import (Cone, Diamond, DistanceProfile, MelnikovResult,
                      MultiplierDomain, cone_inside_domain)
from .errors import (AnnulusEscape, BoundaryTooClose, EnclosureTooWide,
                     NonContraction, ResonantMultiplier, SmalldivError,
                     Undecided)
from .exact import (Jet, PeriodicQuotients, RationalInterval, Surd,
                    fibonacci, golden_quotients)
from .experiments import (LimitTable, PseudoReport, WhitneyReport,
                          nontangential_limit_experiment,
                          pseudocontinuation_demo, whitney_probe)
from .series import FourierSeries, PowerSeries
from .solvers import (CircleSolution, LinearSolution, ProbeResult,
                      SiegelSolution, SolverConstants, apply_Eq,
                      apply_Eq_exterior, calE, circle_distance, constants,
                      operator_norm_probe, radius_L, radius_S, residual_L,
                      residual_S, solve_C, solve_L, solve_S)

__version__ = "0.1.0"

__all__ = [
    "AnnulusEscape", "BestApproxReport", "BoundaryTooClose",
    "BrunoThresholdReport", "BrunoValue", "CircleSolution", "Cone",
    "ContinuedFraction", "DCDensityReport", "Diamond", "DistanceProfile",
    "EnclosureTooWide", "FourierSeries", "GapReport", "IntervalSet", "Jet",
    "LimitTable", "LinearSolution", "MelnikovResult", "MembershipReport",
    "MultiplierDomain", "NonContraction", "PeriodicQuotients", "PowerSeries",
    "ProbeResult", "PseudoReport", "RankInterval", "RationalInterval",
    "ResonantMultiplier", "SiegelSolution", "SmalldivError",
    "SolverConstants", "Surd", "TailModel", "Undecided", "WhitneyReport",
    "apply_Eq", "apply_Eq_exterior", "bruno", "calE", "cf_expand",
    "check_best_approx", "circle_distance", "complement_C", "complement_L",
    "cone_inside_domain", "constants", "convergent_gap_checks",
    "dc_bruno_bound", "dc_bruno_threshold_check", "dc_complement",
    "dc_density_check", "enclosure_for", "fibonacci", "golden_quotients",
    "measure_bound_certificate", "member_C", "member_DC", "member_L",
    "member_S", "noble_surd", "nontangential_limit_experiment",
    "ones_interval", "operator_norm_probe", "pseudocontinuation_demo",
    "radius_L", "radius_S", "rank_interval", "residual_L", "residual_S",
    "solve_C", "solve_L", "solve_S", "whitney_probe", "zeta_bounds",
    "zsum_upper",
]
