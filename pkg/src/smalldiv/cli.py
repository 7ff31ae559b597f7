"""Command-line laboratory.

Subcommands wrap the library: continued fractions and Bruno sums,
interval-set construction, multiplier-domain geometry, the three model
solvers, lemma verification, and the regularity experiments.  Outputs
are deterministic JSON/CSV files plus a short human summary on stdout;
figures are rendered to --figdir when given.

Exit codes: 0 success, 1 invalid arguments, 2 undecided/inconclusive
verdict, 3 numerical failure (resonance, non-contraction, escape).
"""

from __future__ import annotations

import argparse
import cmath
import csv
import json
import math
import sys
from fractions import Fraction
from pathlib import Path
from typing import Dict, Optional, Sequence

from . import arith_sets, config, contfrac, domains, experiments, solvers
from .errors import (AnnulusEscape, BoundaryTooClose, EnclosureTooWide,
                     NonContraction, ResonantMultiplier, SmalldivError,
                     Undecided)
from .exact import Surd, unlimited_int_digits
from .series import FourierSeries, PowerSeries


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 by default; 2 means "undecided" here, so remap
    def error(self, message):
        raise _Usage(f"{self.prog}: {message}")


# ---------------------------------------------------------------- parsing

def parse_rational(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise _Usage(f"not a rational: {s!r}") from exc


def parse_target(s: str):
    """Number specs: 'phi', 'sqrt:D', 'surd:p,s,d,r', or a rational."""
    s = s.strip()
    if s == "phi":
        return Surd.golden()
    if s.startswith("sqrt:"):
        d = int(s.split(":", 1)[1])
        return Surd.sqrt(d)
    if s.startswith("surd:"):
        parts = s.split(":", 1)[1].split(",")
        if len(parts) != 4:
            raise _Usage("surd spec needs p,s,d,r")
        p, sc, d, r = (int(t) for t in parts)
        return Surd(p, sc, d, r)
    return parse_rational(s)


def _parse_complex(s: str) -> complex:
    try:
        return complex(s.replace(" ", "").replace("i", "j"))
    except ValueError as exc:
        raise _Usage(f"not a complex number: {s!r}") from exc


def parse_multiplier(s: str):
    """Multiplier specs: 'inf', 'exp(2*pi*i*(...))', or a complex literal.

    A pure rational rotation exp(2*pi*i*(p/r)) is kept exact (symbolic)
    so resonance detection is not at the mercy of rounding.
    """
    s = s.strip()
    if s in ("inf", "oo"):
        return math.inf
    prefix, suffix = "exp(2*pi*i*(", "))"
    if s.startswith(prefix) and s.endswith(suffix):
        body = s[len(prefix):-len(suffix)]
        try:
            alpha = Fraction(body)
        except ValueError:
            z = _parse_complex(body)
            return cmath.exp(2j * math.pi * z)
        import sympy
        return sympy.exp(2 * sympy.pi * sympy.I *
                         sympy.Rational(alpha.numerator, alpha.denominator))
    return _parse_complex(s)


def parse_power_series(s: str) -> PowerSeries:
    """'zpoly:c0,c1,c2,...' with rational coefficients (degree 0 first)."""
    s = s.strip()
    if not s.startswith("zpoly:"):
        raise _Usage("power-series spec must be 'zpoly:c0,c1,...'")
    coeffs = tuple(parse_rational(t) for t in s.split(":", 1)[1].split(","))
    return PowerSeries(coeffs)


def parse_fourier(s: str) -> FourierSeries:
    """'modes:1,-1' (unit coefficients) or 'modes:1=0.5,-1=0.5'."""
    s = s.strip()
    if not s.startswith("modes:"):
        raise _Usage("Fourier spec must be 'modes:k1,k2,...' or 'modes:k=c,...'")
    modes: Dict[int, complex] = {}
    for item in s.split(":", 1)[1].split(","):
        if "=" in item:
            k, c = item.split("=", 1)
            modes[int(k)] = _parse_complex(c)
        else:
            modes[int(item)] = 1.0
    if not modes:
        raise _Usage("empty mode list")
    return FourierSeries.from_modes(modes)


# ---------------------------------------------------------------- output

def _cnum(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, complex):
        return _cnum(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(t) for t in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    return str(x)


def write_json(path: Path, obj) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with unlimited_int_digits(), open(path, "w", encoding="utf-8") as fh:
        json.dump(_jsonable(obj), fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_csv(path: Path, header: Sequence[str], rows) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with unlimited_int_digits(), open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow(row)


def _outdir(args, cfg) -> Path:
    out = Path(args.out if args.out is not None else cfg["out"])
    out.mkdir(parents=True, exist_ok=True)
    return out


def _figdir(args) -> Optional[Path]:
    return Path(args.figdir) if args.figdir else None


# ---------------------------------------------------------------- subcommands

def _interval_set(args, prec: int):
    kind = args.kind
    if kind == "C":
        if args.M is None or args.tau is None:
            raise _Usage("kind C needs --M and --tau")
        return arith_sets.complement_C(parse_rational(args.M),
                                       parse_rational(args.tau),
                                       args.mmax, bits=prec)
    if kind == "DC":
        if args.gamma is None or args.tau is None:
            raise _Usage("kind DC needs --gamma and --tau")
        return arith_sets.dc_complement(parse_rational(args.gamma),
                                        parse_rational(args.tau), args.mmax)
    if kind == "L":
        if args.M is None:
            raise _Usage("kind L needs --M")
        return arith_sets.complement_L(parse_rational(args.M), args.mmax,
                                       prec=prec)
    raise _Usage(f"unknown set kind {kind!r}")


def cmd_cf(args, cfg) -> int:
    if args.target is None:
        raise _Usage("cf needs --surd or --rational")
    target = parse_target(args.target)
    depth = args.depth if args.depth is not None else 20
    cf = contfrac.cf_expand(target, depth)
    out = _outdir(args, cfg)
    rows = [(k, cf.quotients[k] if k < len(cf.quotients) else "",
             n, m) for k, (n, m) in enumerate(cf.convergents)]
    write_csv(out / "cf_table.csv", ["k", "a_k", "n_k", "m_k"], rows)
    write_json(out / "cf.json", {
        "target": args.target, "depth": cf.depth,
        "quotients": list(cf.quotients),
        "convergents": [[n, m] for n, m in cf.convergents],
        "exhausted": cf.exhausted,
    })
    print(f"quotients: {list(cf.quotients)}")
    br = cf.bracket()
    print(f"bracket: [{float(br.lo):.15f}, {float(br.hi):.15f}]")
    print(f"wrote {out / 'cf_table.csv'}")
    return 0


def cmd_bruno(args, cfg) -> int:
    target = parse_target(args.target)
    depth = args.depth if args.depth is not None else 30
    prec = _resolve_precision(args, cfg)
    cf = contfrac.cf_expand(target, depth)
    bound = cf.quotient_bound()
    tail = contfrac.TailModel.quotient_bounded(bound) if bound else None
    val = contfrac.bruno(cf, depth=depth, tail_model=tail,
                         classical=args.classical, prec=prec)
    out = _outdir(args, cfg)
    write_json(out / "bruno.json", {
        "target": args.target, "classical": bool(args.classical),
        "depth": depth, "partial_lo": str(val.lo), "partial_hi": str(val.hi),
        "tail_bound": None if val.tail_bound is None else str(val.tail_bound),
        "upper": None if val.upper is None else str(val.upper),
        "lower": str(val.lower),
        "tail_model": "quotient-bounded" if tail else "none",
    })
    kind = "classical" if args.classical else "quotient"
    up = "inf" if val.upper is None else f"{float(val.upper):.12f}"
    print(f"bruno[{kind}] in [{float(val.lower):.12f}, {up}]")
    print(f"wrote {out / 'bruno.json'}")
    return 0


def cmd_set(args, cfg) -> int:
    prec = _resolve_precision(args, cfg)
    iset = _interval_set(args, prec)
    out = _outdir(args, cfg)
    export = Path(args.export) if args.export else out / "intervals.json"
    write_json(export, iset.to_json_obj())
    if args.csv:
        iset.write_csv(args.csv)
    measure = float(iset.measure)
    tail = iset.tail_measure_bound
    print(f"{len(iset.intervals)} intervals, exact measure {measure:.6f}, "
          f"tail bound {'inf' if tail is None else float(tail)}")
    if args.kind == "C":
        ok, lhs, rhs = arith_sets.measure_bound_certificate(
            iset, parse_rational(args.M), parse_rational(args.tau))
        word = "holds" if ok else "FAILS"
        print(f"measure bound {word}: {float(lhs):.6f} < 2*zeta(1+tau)/M "
              f"= {float(rhs):.6f}")
    fd = _figdir(args)
    if fd:
        from . import plotting
        print("figure:", plotting.save_interval_barcode(
            iset, fd / "intervals.png"))
    print(f"wrote {export}")
    return 0


def cmd_domain(args, cfg) -> int:
    prec = _resolve_precision(args, cfg)
    iset = _interval_set(args, prec)
    profile = domains.DistanceProfile(iset)
    dom = domains.MultiplierDomain(profile)
    out = _outdir(args, cfg)
    n = args.samples
    inner = dom.curve("inner", n)
    outer = dom.curve("outer", n)
    rows = [(i / n, zi.real, zi.imag, zo.real, zo.imag)
            for i, (zi, zo) in enumerate(zip(inner, outer))]
    write_csv(out / "domain_curves.csv",
              ["t", "inner_re", "inner_im", "outer_re", "outer_im"], rows)
    lo, hi = dom.annulus_bounds()
    print(f"profile apex {float(profile.max_height):.6f}; "
          f"annulus moduli in [{lo:.6f}, {hi:.6f}]")
    summary = {"apex": float(profile.max_height),
               "annulus": [lo, hi], "samples": n}
    if args.melnikov_q:
        qm = _parse_complex(args.melnikov_q)
        res = dom.melnikov_sum(qm)
        print(f"cubic boundary integral at q={qm}: {res.value:.6f} "
              f"(est err {res.error_estimate:.2e}, nodes {res.nodes})")
        summary["melnikov"] = {"q": _cnum(qm), "value": res.value,
                               "error_estimate": res.error_estimate,
                               "nodes": res.nodes,
                               "min_distance": res.min_distance}
    write_json(out / "domain.json", summary)
    fd = _figdir(args)
    if fd:
        from . import plotting
        print("figure:", plotting.save_domain_figure(dom, fd / "domain.png"))
        print("figure:", plotting.save_profile_figure(
            profile, fd / "profile.png"))
    print(f"wrote {out / 'domain_curves.csv'}")
    return 0


def _serial_coeffs(coeffs) -> list:
    out = []
    for c in coeffs:
        try:
            out.append(_cnum(complex(c)))
        except (TypeError, ValueError):
            out.append(str(c))
    return out


def _residual_defect(res: PowerSeries) -> float:
    worst = 0.0
    for c in res.coeffs:
        try:
            worst = max(worst, abs(complex(c)))
        except (TypeError, ValueError):
            import sympy
            if sympy.simplify(c) != 0:
                return math.nan
    return worst


def cmd_solve(args, cfg) -> int:
    out = _outdir(args, cfg)
    export = Path(args.export) if args.export else out / "solution.json"
    problem = args.problem
    if problem in ("L", "S"):
        g = parse_power_series(args.g) if args.g else \
            PowerSeries((Fraction(0), Fraction(0), Fraction(1)))
        q = parse_multiplier(args.q)
        order = args.order if args.order is not None else int(cfg["n_power"])
        if problem == "L":
            sol = solvers.solve_L(g, q, order,
                                  domain_R=args.R_declared,
                                  domain_M=args.M_declared)
            res = solvers.residual_L(sol, g)
            cert = {"radius_certificate": sol.radius_certificate,
                    "radius_kind": sol.radius_kind}
        else:
            sol = solvers.solve_S(g, q, order)
            res = None if solvers._is_infinite(q) else solvers.residual_S(sol, g)
            cert = {"radius_certificate":
                    solvers.radius_S(args.R_declared, args.M_declared)
                    if args.R_declared and args.M_declared else None}
        defect = 0.0 if res is None else _residual_defect(res)
        payload = {"problem": problem, "q": str(q), "eps": None,
                   "coefficients": _serial_coeffs(sol.h.coeffs),
                   "defect": defect, "certificates": cert}
        write_json(export, payload)
        print(f"solved {problem} at q={q}; residual defect {defect:.3e}")
        fd = _figdir(args)
        if fd:
            from . import plotting
            try:
                print("figure:", plotting.save_series_figure(
                    [complex(c) for c in sol.h.coeffs], fd / "solution.png"))
            except (TypeError, ValueError):
                pass  # symbolic coefficients have no magnitude plot
        print(f"wrote {export}")
        return 0

    if problem != "C":
        raise _Usage("problem must be L, S, or C")
    g = parse_fourier(args.g) if args.g else FourierSeries.from_modes({1: 1.0, -1: 1.0})
    q = complex(parse_multiplier(args.q))
    eps_list = [_parse_complex(t) for t in
                (args.sweep_eps.split(",") if args.sweep_eps else [args.eps or "1e-3"])]
    R = args.R_declared if args.R_declared else 1.0
    rows = []
    last = None
    for eps in eps_list:
        sol = solvers.solve_C(g, q, eps, R=R, Lam=args.Lam,
                              tol=args.tol, max_iter=args.max_iter)
        rows.append((q.real, q.imag, eps.real, eps.imag, sol.final_defect,
                     sol.iterations, sol.certified))
        last = sol
    if args.sweep_eps:
        write_csv(out / "sweep.csv",
                  ["re_q", "im_q", "re_eps", "im_eps", "defect",
                   "iterations", "certified"], rows)
        print(f"wrote {out / 'sweep.csv'}")
    sol = last
    payload = {"problem": "C", "q": _cnum(q), "eps": _cnum(sol.eps),
               "coefficients": _serial_coeffs(sol.v.coeffs),
               "defect": sol.final_defect,
               "certificates": {
                   "certified": sol.certified,
                   "r_prime": sol.constants.r_prime,
                   "E": sol.constants.E, "C": sol.constants.C,
                   "ball_ok": sol.ball_ok,
                   "max_ratio": max(sol.contraction_ratios, default=None),
                   "iterations": sol.iterations}}
    write_json(export, payload)
    word = "certified" if sol.certified else "best-effort"
    print(f"solved C at q={q}, eps={sol.eps}: defect {sol.final_defect:.3e} "
          f"({word}, {sol.iterations} iterations)")
    fd = _figdir(args)
    if fd:
        from . import plotting
        print("figure:", plotting.save_circle_solution_figure(
            sol, fd / "circle_solution.png"))
    print(f"wrote {export}")
    return 0


def _verify_measure(args, prec) -> list:
    lines = []
    M = parse_rational(args.M) if args.M else Fraction(10)
    tau = parse_rational(args.tau) if args.tau else Fraction(1)
    iset = arith_sets.complement_C(M, tau, args.mmax, bits=prec)
    ok, lhs, rhs = arith_sets.measure_bound_certificate(iset, M, tau)
    lines.append(("measure", ok, f"{float(lhs):.6f} < {float(rhs):.6f} "
                  f"(M={M}, tau={tau}, m_max={args.mmax})"))
    return lines


def _verify_density(args) -> list:
    gamma = parse_rational(args.gamma) if args.gamma else Fraction(1, 100)
    tau = parse_rational(args.tau) if args.tau else Fraction(1)
    k = args.k if args.k else 4
    rep = arith_sets.dc_density_check(gamma, tau, k)
    ok = rep.passed and rep.structure_ok
    return [("density", ok,
             f"lower {float(rep.dc_lower_bound):.6f} > target "
             f"{float(rep.target):.6f}, structure "
             f"{'ok' if rep.structure_ok else 'violated'} "
             f"(gamma={gamma}, tau={tau}, k={k})")]


def _verify_threshold(args, prec) -> list:
    gamma = parse_rational(args.gamma) if args.gamma else Fraction(1, 100)
    tau = parse_rational(args.tau) if args.tau else Fraction(1)
    M = parse_rational(args.M) if args.M else Fraction(4)
    rep = arith_sets.dc_bruno_threshold_check(gamma, tau, M, prec=prec)
    lines = [("threshold", True,
              f"kbar={rep.kbar}, bound {float(rep.bound_at_kbar):.4f} <= {M}")]
    contradiction = any(dc == "in" and br == "out"
                        for _, dc, br in rep.samples)
    lines.append(("threshold-samples", not contradiction,
                  "; ".join(f"{lab}: dc={dc}, bruno={br}"
                            for lab, dc, br in rep.samples)))
    return lines


def _verify_rank(args) -> list:
    ok = True
    from .exact import fibonacci
    for k in range(1, 16):
        ri = arith_sets.ones_interval(k)
        expect = Fraction(1, fibonacci(k + 1) * fibonacci(k + 2))
        if ri.length != expect:
            ok = False
    return [("rank", ok, "lengths 1/(F_{k+1} F_{k+2}) for k=1..15")]


def _verify_bestapprox(args, prec) -> list:
    lines = []
    for label, target in (("sqrt2", Surd.sqrt(2)), ("phi", Surd.golden())):
        cf = contfrac.cf_expand(target, 20)
        gaps = contfrac.convergent_gap_checks(cf, bits=prec)
        ok = gaps.all_ok
        x = float(cf.bracket().lo)
        for m in (7, 13, 99):
            for n_off in (0, 1):
                law = contfrac.check_best_approx(cf, int(m * x) + n_off, m,
                                                 bits=prec)
                if law.verdict != "not_applicable":
                    break
            ok = ok and law.verdict == "pass"
        lines.append((f"bestapprox[{label}]", ok,
                      f"depth {cf.depth}, {len(gaps.checks)} gap checks, "
                      f"law at m in (7, 13, 99)"))
    return lines


def cmd_verify(args, cfg) -> int:
    prec = _resolve_precision(args, cfg)
    which = args.check
    lines = []
    if which in ("measure", "all"):
        lines += _verify_measure(args, prec)
    if which in ("density", "all"):
        lines += _verify_density(args)
    if which in ("threshold", "all"):
        lines += _verify_threshold(args, prec)
    if which in ("rank", "all"):
        lines += _verify_rank(args)
    if which in ("bestapprox", "all"):
        lines += _verify_bestapprox(args, prec)
    if not lines:
        raise _Usage(f"unknown check {which!r}")
    failed = False
    for name, ok, detail in lines:
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
        failed = failed or not ok
    return 3 if failed else 0


def cmd_whitney(args, cfg) -> int:
    seed = args.seed if args.seed is not None else int(cfg["seed"])
    rep = experiments.whitney_probe(
        args.problem, float(args.M), sample_count=args.samples,
        scales=args.scales, order=args.order or 16, seed=seed)
    out = _outdir(args, cfg)
    write_json(out / "whitney.json", {
        "problem": rep.problem, "M": rep.M, "order": rep.order,
        "r_cmp": rep.r_cmp, "scales": list(rep.scales),
        "flagged": list(rep.flagged),
        "anchors": [{"q": _cnum(a.q), "depth": a.depth,
                     "rows": [list(r) for r in a.rows],
                     "slope": a.slope, "decays": a.decays}
                    for a in rep.anchors],
        "provenance": rep.provenance,
    })
    print(f"{len(rep.anchors)} anchors; flagged: {list(rep.flagged) or 'none'}")
    for a in rep.anchors:
        print(f"  depth {a.depth:.4f}: slope {a.slope if a.slope is None else round(a.slope, 3)}")
    fd = _figdir(args)
    if fd:
        from . import plotting
        print("figure:", plotting.save_whitney_figure(rep, fd / "whitney.png"))
    print(f"wrote {out / 'whitney.json'}")
    return 0


def cmd_limit(args, cfg) -> int:
    target = parse_target(args.target)
    prec = _resolve_precision(args, cfg)
    table = experiments.nontangential_limit_experiment(
        args.problem, target, M=float(args.M), c=args.cone_slope,
        d=args.cone_depth, steps=args.steps, order=args.order or 16,
        prec=prec)
    out = _outdir(args, cfg)
    write_csv(out / "limit.csv", ["j", "distance", "re_q", "im_q", "diff"],
              [(r.j, r.distance, r.q.real, r.q.imag,
                "" if r.diff_to_next is None else r.diff_to_next)
               for r in table.rows])
    write_json(out / "limit.json", {
        "problem": table.problem, "target": table.target,
        "cauchy_pass": table.cauchy_pass, "r_cmp": table.r_cmp,
        "rows": [{"j": r.j, "distance": r.distance, "q": _cnum(r.q),
                  "diff_to_next": r.diff_to_next} for r in table.rows],
        "provenance": table.provenance,
    })
    print(f"cauchy trend: {'pass' if table.cauchy_pass else 'inconclusive'}")
    fd = _figdir(args)
    if fd:
        from . import plotting
        diffs = [(r.distance, r.diff_to_next) for r in table.rows
                 if r.diff_to_next is not None]
        print("figure:", plotting.save_trend_figure(
            [d for d, _ in diffs], [v for _, v in diffs],
            fd / "limit.png", "distance to circle", "step difference",
            "non-tangential Cauchy trend", loglog=True))
    print(f"wrote {out / 'limit.csv'}")
    return 0 if table.cauchy_pass else 2


def cmd_pseudo(args, cfg) -> int:
    target = parse_target(args.target)
    prec = _resolve_precision(args, cfg)
    rep = experiments.pseudocontinuation_demo(
        args.problem, target, M=float(args.M), j_lo=args.jlo, j_hi=args.jhi,
        order=args.order or 16, prec=prec)
    out = _outdir(args, cfg)
    write_csv(out / "pseudo.csv", ["j", "distance", "gap"],
              [(r.j, r.distance, r.gap) for r in rep.rows])
    write_json(out / "pseudo.json", {
        "problem": rep.problem, "target": rep.target,
        "monotone": rep.monotone, "final_over_initial": rep.final_over_initial,
        "r_cmp": rep.r_cmp,
        "rows": [{"j": r.j, "distance": r.distance, "gap": r.gap}
                 for r in rep.rows],
        "provenance": rep.provenance,
    })
    print(f"two-sided gap: monotone={rep.monotone}, "
          f"final/initial={rep.final_over_initial:.4e}")
    fd = _figdir(args)
    if fd:
        from . import plotting
        print("figure:", plotting.save_trend_figure(
            [r.distance for r in rep.rows], [r.gap for r in rep.rows],
            fd / "pseudo.png", "distance to circle", "interior/exterior gap",
            "two-sided coherence", loglog=True))
    print(f"wrote {out / 'pseudo.csv'}")
    return 0


# ---------------------------------------------------------------- wiring

def _resolve_precision(args, cfg) -> int:
    if getattr(args, "precision", None) is not None:
        return int(args.precision)
    if cfg.get("precision") != config.DEFAULTS["precision"]:
        return int(cfg["precision"])
    return config.precision_bits()


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat KEY=VALUE config file")
    p.add_argument("--out", help="output directory")
    p.add_argument("--figdir", help="write PNG figures to this directory")
    p.add_argument("--precision", type=int, help="working precision in bits")
    p.add_argument("--seed", type=int, help="seed for randomized sampling")


def build_parser() -> _Parser:
    top = _Parser(prog="smalldiv", description=__doc__,
                  formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cf", parents=[], help="continued-fraction expansion")
    p.add_argument("--surd", dest="target", help="number spec")
    p.add_argument("--rational", dest="target", help="rational spec")
    p.add_argument("--depth", type=int)
    _add_common(p)
    p.set_defaults(func=cmd_cf)

    p = sub.add_parser("bruno", help="Bruno sum enclosure")
    p.add_argument("--surd", dest="target", required=True)
    p.add_argument("--depth", type=int)
    p.add_argument("--classical", action="store_true",
                   help="sum log m_(k+1) / m_k instead of log a_(k+1) / m_k")
    _add_common(p)
    p.set_defaults(func=cmd_bruno)

    p = sub.add_parser("set", help="build an excluded-interval set")
    p.add_argument("--kind", required=True, choices=["C", "DC", "L"])
    p.add_argument("--M")
    p.add_argument("--tau")
    p.add_argument("--gamma")
    p.add_argument("--mmax", type=int, default=200)
    p.add_argument("--export", help="JSON output path")
    p.add_argument("--csv", help="CSV output path")
    _add_common(p)
    p.set_defaults(func=cmd_set)

    p = sub.add_parser("domain", help="multiplier-domain geometry")
    p.add_argument("--kind", required=True, choices=["C", "DC", "L"])
    p.add_argument("--M")
    p.add_argument("--tau")
    p.add_argument("--gamma")
    p.add_argument("--mmax", type=int, default=60)
    p.add_argument("--samples", type=int, default=1024)
    p.add_argument("--melnikov-q", dest="melnikov_q",
                   help="evaluate the cubic boundary integral at this q")
    _add_common(p)
    p.set_defaults(func=cmd_domain)

    p = sub.add_parser("solve", help="solve a model problem")
    p.add_argument("--problem", required=True, choices=["L", "S", "C"])
    p.add_argument("--q", required=True, help="multiplier spec")
    p.add_argument("--eps", help="perturbation size (problem C)")
    p.add_argument("--g", help="'zpoly:...' (L/S) or 'modes:...' (C)")
    p.add_argument("--order", type=int, help="truncation order (L/S)")
    p.add_argument("--R", dest="R_declared", type=float,
                   help="declared strip/domain parameter R")
    p.add_argument("--M", dest="M_declared", type=float,
                   help="declared domain level M (radius certificates)")
    p.add_argument("--Lam", type=float, help="declared circle distance")
    p.add_argument("--tol", type=float, default=1e-14)
    p.add_argument("--max-iter", dest="max_iter", type=int, default=100)
    p.add_argument("--sweep-eps", dest="sweep_eps",
                   help="comma list of eps values -> sweep.csv")
    p.add_argument("--export", help="JSON output path")
    _add_common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="run lemma/bound verifications")
    p.add_argument("--check", required=True,
                   choices=["measure", "density", "threshold", "rank",
                            "bestapprox", "all"])
    p.add_argument("--M")
    p.add_argument("--tau")
    p.add_argument("--gamma")
    p.add_argument("--k", type=int)
    p.add_argument("--mmax", type=int, default=500)
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("whitney", help="Whitney-regularity probe")
    p.add_argument("--problem", required=True, choices=["L", "S"])
    p.add_argument("--M", required=True)
    p.add_argument("--samples", type=int, default=8)
    p.add_argument("--scales", type=int, default=5)
    p.add_argument("--order", type=int)
    _add_common(p)
    p.set_defaults(func=cmd_whitney)

    p = sub.add_parser("limit", help="non-tangential limit experiment")
    p.add_argument("--problem", required=True, choices=["L", "S"])
    p.add_argument("--target", required=True)
    p.add_argument("--M", default="3")
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--cone-slope", dest="cone_slope", type=float, default=7.0)
    p.add_argument("--cone-depth", dest="cone_depth", type=float, default=0.2)
    p.add_argument("--order", type=int)
    _add_common(p)
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("pseudo", help="two-sided boundary coherence demo")
    p.add_argument("--problem", required=True, choices=["L", "S"])
    p.add_argument("--target", required=True)
    p.add_argument("--M", default="3")
    p.add_argument("--jlo", type=int, default=3)
    p.add_argument("--jhi", type=int, default=12)
    p.add_argument("--order", type=int)
    _add_common(p)
    p.set_defaults(func=cmd_pseudo)

    return top


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = config.merged_config(getattr(args, "config", None), {})
        return args.func(args, cfg)
    except _Usage as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Undecided as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return 2
    except EnclosureTooWide as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return 2
    except (ResonantMultiplier, NonContraction, AnnulusEscape,
            BoundaryTooClose) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except SmalldivError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
