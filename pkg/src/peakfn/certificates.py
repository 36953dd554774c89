"""Numerical certificates for every inequality the construction rests on.

Each check produces a record with its worst margin and a pass flag; a pass
means the inequality cleared the relative guard band on conservative
enclosure sides, so it is a genuine numerical certificate rather than a
point estimate.  Failures are data, not exceptions: the report carries
them to the caller (the CLI turns a failed report into exit code 2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import hypothesis as hyp
from ._kernels import radius_bound_sweep
from .enclosure import Enclosure
from .hypothesis import GUARD, Constants
from .schedule import Schedule
from .weights import WeightEngine


@dataclass
class CertificateReport:
    constants: dict
    records: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r["passed"] for r in self.records)

    def record(self, rec: dict) -> None:
        self.records.append(rec)

    def failing(self) -> list:
        return [r["name"] for r in self.records if not r["passed"]]

    def to_dict(self) -> dict:
        return {
            "constants": self.constants,
            "records": self.records,
            "passed": self.passed,
        }


def check_first_shell(consts: Constants) -> dict:
    """First-shell inequality (1-alpha)/2 * D^((1-alpha)/C) >= D^s.

    Evaluated through logs, deliberately a different code path from the
    chooser in the constants module.
    """
    a, s, c, d = consts.alpha, consts.s, consts.C, consts.D
    log_d = math.log(d)
    lhs = math.exp(math.log((1.0 - a) / 2.0) + ((1.0 - a) / c) * log_d)
    rhs = math.exp(s * log_d)
    margin = lhs - rhs
    return {
        "name": "first-shell",
        "range": f"D={d!r}",
        "min_margin": margin,
        "min_rel_margin": hyp.rel_margin(rhs, lhs),
        "guard": GUARD,
        "passed": hyp.strictly_less(rhs, lhs),
        "details": {"lhs": lhs, "rhs": rhs},
    }


def check_eps_condition(consts: Constants, m_range=(3, 120)) -> dict:
    """Neighborhood-shrink exponent inequality, re-derived independently.

    The chooser evaluates the left coefficient as (1+Mt)(1-alpha)/(2M(1-t));
    here the identity (1+Mt)/(M(1-t)) = 1/p collapses it to (1-alpha)/(2p),
    giving a second route through different floating-point operations.
    """
    lo, hi = int(m_range[0]), int(m_range[1])
    if lo < 3:
        raise ValueError("eps condition applies from m = 3 on")
    a, s, t = consts.alpha, consts.s, consts.t
    big_a, big_m = consts.A, consts.M
    p, q = consts.p, consts.q
    c1 = (1.0 - a) / (2.0 * p)
    c2 = math.log(1.0 / big_a) * s / p
    min_rel = math.inf
    argmin = 0
    ok = True
    for m in range(lo, hi + 1):
        lhs = c1 * (math.pow(float(m + 1), 1.0 - q) - math.pow(2.0, 1.0 - q))
        rhs = c2 * (math.pow(float(m - 1), p) - 1.0)
        r = hyp.rel_margin(lhs, rhs)
        if r < min_rel:
            min_rel = r
            argmin = m
        if not hyp.strictly_less(lhs, rhs):
            ok = False
    # tail certificate beyond the checked range, with the same coefficients
    d_hi = c2 * math.pow(float(hi - 1), p) - c1 * math.pow(float(hi + 1), 1.0 - q)
    min_diff = math.inf
    prev = d_hi
    for m in range(hi + 1, 4 * hi + 1):
        cur = c2 * math.pow(float(m - 1), p) - c1 * math.pow(float(m + 1), 1.0 - q)
        diff = cur - prev
        if diff < min_diff:
            min_diff = diff
        prev = cur
    tail_ok = (hyp.strictly_less(1.0 - q, p) and d_hi > 0.0 and min_diff > 0.0)
    # cross-validate against the chooser's route
    other = hyp.eps_condition_report(a, s, t, big_a, big_m, p, q, hi)
    routes_agree = (other["passed"] == bool(ok and tail_ok))
    return {
        "name": "eps-condition",
        "range": f"m in [{lo}, {hi}] plus tail certificate",
        "min_rel_margin": min_rel,
        "argmin_m": argmin,
        "guard": GUARD,
        "passed": bool(ok and tail_ok and routes_agree),
        "details": {
            "head_passed": ok,
            "tail_certificate": {
                "exponent_gap": p - (1.0 - q),
                "d_at_m_check": d_hi,
                "min_discrete_increase": min_diff,
                "passed": tail_ok,
            },
            "dual_route_agreement": routes_agree,
        },
    }


def check_claim1(engine: WeightEngine, m_range=(1, 120)) -> dict:
    """Per-index cap on the head term: (C psi(m)^t - 1) sigma_m < mk * tail(m).

    Left side taken at upper enclosure ends, right side at the lower end.
    """
    lo, hi = int(m_range[0]), int(m_range[1])
    consts = engine.consts
    min_rel = math.inf
    argmin = 0
    ok = True
    for m in range(lo, hi + 1):
        psit = Enclosure.from_libm(
            math.pow(engine.schedule.psi(float(m)), consts.t), ulps=8)
        lhs = (consts.C * psit.hi - 1.0) * engine.sigma(m).hi
        rhs = consts.mk * engine.tail(m).lo
        r = hyp.rel_margin(lhs, rhs)
        if r < min_rel:
            min_rel = r
            argmin = m
        if not hyp.strictly_less(lhs, rhs):
            ok = False
    return {
        "name": "claim-1",
        "range": f"m in [{lo}, {hi}]",
        "min_rel_margin": min_rel,
        "argmin_m": argmin,
        "guard": GUARD,
        "passed": bool(ok),
        "details": {"sides": "lhs at enclosure.hi, rhs at enclosure.lo"},
    }


def check_claim2(engine: WeightEngine, m_range=(2, 120)) -> dict:
    """Tail-dominates-head inequality:
    mk * tail(m) > eps_{m-1}^s * sum_{j<m} sigma_j, conservative sides."""
    lo, hi = int(m_range[0]), int(m_range[1])
    if lo < 2:
        raise ValueError("claim 2 applies from m = 2 on")
    consts = engine.consts
    sched = engine.schedule
    min_rel = math.inf
    argmin = 0
    ok = True
    for m in range(lo, hi + 1):
        eps_pow = math.exp(-consts.s * sched.log_inv_eps(m - 1))
        rhs = eps_pow * engine.sigma_prefix(m - 1).hi
        lhs = consts.mk * engine.tail(m).lo
        r = hyp.rel_margin(rhs, lhs)
        if r < min_rel:
            min_rel = r
            argmin = m
        if not hyp.strictly_less(rhs, lhs):
            ok = False
    return {
        "name": "claim-2",
        "range": f"m in [{lo}, {hi}]",
        "min_rel_margin": min_rel,
        "argmin_m": argmin,
        "guard": GUARD,
        "passed": bool(ok),
        "details": {"sides": "tail at enclosure.lo, head at enclosure.hi"},
    }


def check_lemma(engine: WeightEngine, x_samples=(0.0, 1.0, 5.0, 25.0),
                x_offset: float = 50.0, residual_tol: float = 1e-6) -> dict:
    """Decay-lemma battery: integral-equation residuals, decay witnesses,
    and the certified divergence of the exponent integral."""
    residuals = []
    worst = 0.0
    ok = True
    for x in x_samples:
        rec = engine.integral_equation_residual(float(x), x_offset)
        residuals.append(rec)
        worst = max(worst, rec["relative_residual"])
        if rec["relative_residual"] > residual_tol:
            ok = False
    decay = engine.decay_bound_check()
    divergence = engine.divergence_certificate()
    passed = bool(ok and decay["passed"] and divergence["passed"])
    return {
        "name": "lemma-decay",
        "range": f"x in {list(x_samples)!r}, X = x + {x_offset!r}",
        "max_relative_residual": worst,
        "residual_tol": residual_tol,
        "guard": GUARD,
        "passed": passed,
        "details": {
            "residuals": residuals,
            "decay_bound": decay,
            "divergence": divergence,
        },
    }


def check_schedule_identities(sched: Schedule, m_equiv: int = 200,
                              m_major: int = 1000,
                              m_bracket: int = 10_000) -> list:
    """Schedule-level certificates: recursion/closed-form agreement, the
    partial-sum sandwich brackets, and both routes to the radius bound."""
    worst_rel = 0.0
    arg = 1
    for m in range(1, m_equiv + 1):
        a = sched.log_inv_radius(m)
        b = sched.log_inv_radius_closed(m)
        rel = abs(a - b) / max(abs(a), abs(b), 1e-300)
        if rel > worst_rel:
            worst_rel = rel
            arg = m
    rec_equiv = {
        "name": "radius-recursion-closed-form",
        "range": f"m in [1, {m_equiv}]",
        "max_rel_difference": worst_rel,
        "tolerance": 1e-9,
        "passed": bool(worst_rel <= 1e-9),
        "details": {"argmax_m": arg},
    }
    brackets = sched.check_sum_brackets(m_bracket)
    rec_bracket = {
        "name": "partial-sum-brackets",
        "range": f"m in [2, {m_bracket}], p = {sched.consts.p!r}",
        "min_rel_margin": brackets["min_rel_margin"],
        "guard": GUARD,
        "passed": brackets["passed"],
        "details": brackets["min_rel_margins"],
    }
    # psi-majorant route: direct comparison of cached sequences
    worst_m = math.inf
    argm = 1
    for m in range(1, m_major + 1):
        lir = sched.log_inv_radius(m)
        ps = sched.psi(float(m))
        rel = hyp.rel_margin(lir, ps)
        if rel < worst_m:
            worst_m = rel
            argm = m
    rec_major = {
        "name": "psi-majorant",
        "range": f"m in [1, {m_major}]",
        "min_rel_margin": worst_m,
        "guard": GUARD,
        "passed": bool(worst_m > GUARD),
        "details": {"argmin_m": argm},
    }
    # growth-bound route: kernel sweep of the explicit power formula
    margin, argk = radius_bound_sweep(
        m_major, sched.consts.p, sched.consts.log_inv_D,
        sched.consts.log_inv_A, sched.consts.L)
    rec_power = {
        "name": "radius-power-bound",
        "range": f"m in [1, {m_major}], L = {sched.consts.L!r}",
        "min_rel_margin": margin,
        "guard": GUARD,
        "passed": bool(margin > GUARD),
        "details": {"argmin_m": argk},
    }
    return [rec_equiv, rec_bracket, rec_major, rec_power]


def run_all(consts: Constants, m_max: int = 120,
            quad_rel_tol: float = 1e-10) -> CertificateReport:
    """Full certificate battery for one constants set."""
    if m_max < 3:
        raise ValueError("m_max must be at least 3")
    report = CertificateReport(constants=consts.to_dict())
    engine = WeightEngine(consts, quad_rel_tol=quad_rel_tol)
    report.record(check_first_shell(consts))
    report.record(check_eps_condition(consts, (3, m_max)))
    for rec in check_schedule_identities(engine.schedule):
        report.record(rec)
    report.record(check_claim1(engine, (1, m_max)))
    report.record(check_claim2(engine, (2, m_max)))
    report.record(check_lemma(engine))
    return report
