"""Boundary-behavior experiment harnesses built on the certified solvers."""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from smalldiv import (
    PowerSeries,
    Surd,
    Undecided,
    nontangential_limit_experiment,
    pseudocontinuation_demo,
    radius_L,
    whitney_probe,
)
from smalldiv.experiments import derivative_coeffs, solution_coeffs


def test_whitney_L_defect_decays():
    rep = whitney_probe("L", 3.0, sample_count=4, scales=5, seed=0)
    assert rep.problem == "L"
    assert len(rep.anchors) >= 4
    assert rep.flagged == ()
    for anchor in rep.anchors:
        assert anchor.decays
        assert 0.7 < anchor.slope < 1.3  # first-order Taylor defect: slope 1


def test_whitney_includes_circle_anchor():
    rep = whitney_probe("L", 3.0, sample_count=3, scales=4, seed=1)
    depths = [a.depth for a in rep.anchors]
    assert min(depths) == 0.0  # ladder lands on the unit circle itself
    on_circle = [a for a in rep.anchors if a.depth == 0.0]
    assert all(a.decays for a in on_circle)


def test_whitney_zero_perturbation_is_exact():
    rep = whitney_probe("L", 3.0, sample_count=3, scales=3,
                        g=PowerSeries((0.0, 0.0, 0.0)))
    for anchor in rep.anchors:
        assert anchor.slope is None  # all defects identically zero
        assert anchor.decays
    assert rep.flagged == ()


def test_whitney_S_problem_runs():
    rep = whitney_probe("S", 20.0, sample_count=3, scales=4, order=10, seed=0)
    assert rep.problem == "S"
    assert "gamma" in rep.provenance
    for anchor in rep.anchors:
        assert anchor.decays


def test_whitney_rejects_uncalibratable_level():
    with pytest.raises(ValueError):
        whitney_probe("S", 5.0, sample_count=2, scales=2)


def test_whitney_rejects_unknown_problem():
    with pytest.raises(ValueError):
        whitney_probe("X", 3.0)


def test_derivative_matches_finite_differences_L():
    g = PowerSeries((0.0, 0.0, 1.0))
    q = cmath.exp(2j * math.pi * (0.3 + 0.2j))
    d = derivative_coeffs("L", g, q, 10)
    h = 1e-6
    fd = (np.asarray(solution_coeffs("L", g, q + h, 10))
          - np.asarray(solution_coeffs("L", g, q - h, 10))) / (2 * h)
    assert np.max(np.abs(np.asarray(d) - fd)) < 1e-6


def test_derivative_matches_finite_differences_S():
    g = PowerSeries((0.0, 0.0, 1.0))
    q = cmath.exp(2j * math.pi * (0.3 + 0.2j))
    d = derivative_coeffs("S", g, q, 8)
    h = 1e-5
    fd = (np.asarray(solution_coeffs("S", g, q + h, 8))
          - np.asarray(solution_coeffs("S", g, q - h, 8))) / (2 * h)
    assert np.max(np.abs(np.asarray(d) - fd)) < 1e-4


def test_limit_experiment_golden_passes():
    tab = nontangential_limit_experiment("L", Surd.golden(), steps=8)
    assert tab.cauchy_pass
    assert len(tab.rows) == 8
    diffs = [r.diff_to_next for r in tab.rows if r.diff_to_next is not None]
    assert all(b < a for a, b in zip(diffs, diffs[1:]))  # geometric approach
    assert tab.r_cmp == pytest.approx(radius_L(1.0, 3.0) / 2.0)
    assert tab.provenance["membership"] == "in"


def test_limit_experiment_distances_halve():
    tab = nontangential_limit_experiment("L", Surd.golden(), steps=6, d=0.2)
    dists = [r.distance for r in tab.rows]
    for a, b in zip(dists, dists[1:]):
        assert b == pytest.approx(a / 2.0)
    assert dists[0] == pytest.approx(0.1)  # one dyadic level inside the mouth


def test_limit_experiment_S_problem():
    tab = nontangential_limit_experiment("S", Surd.golden(), M=20.0, steps=6, order=10)
    assert tab.cauchy_pass


def test_limit_rejects_rational_target():
    with pytest.raises(ValueError):
        nontangential_limit_experiment("L", Fraction(2, 7))


def test_limit_rejects_target_outside_set():
    # sqrt(2)-1 has positive quotient logs; at tiny M the partial sum is out
    with pytest.raises(ValueError):
        nontangential_limit_experiment("L", Surd(-1, 1, 2, 1), M=1.2)


def test_limit_rejects_tangential_path():
    with pytest.raises(ValueError):
        nontangential_limit_experiment("L", Surd.golden(), path="circular")


def test_pseudo_demo_gap_stays_open():
    rep = pseudocontinuation_demo("L", Surd.golden(), j_lo=3, j_hi=10)
    assert rep.monotone
    gaps = [r.gap for r in rep.rows]
    assert all(g > 0 for g in gaps)
    assert gaps[-1] < gaps[0]
    # the mismatch shrinks linearly with the distance, not faster
    assert rep.final_over_initial > 2.0 ** -(len(gaps) + 2)


def test_pseudo_demo_zero_perturbation():
    rep = pseudocontinuation_demo("L", Surd.golden(), j_lo=3, j_hi=6,
                                  g=PowerSeries((0.0, 0.0, 0.0)))
    assert all(r.gap == 0 for r in rep.rows)
    assert rep.final_over_initial == 0.0


def test_pseudo_demo_rejects_rational():
    with pytest.raises(ValueError):
        pseudocontinuation_demo("L", Fraction(1, 3))
