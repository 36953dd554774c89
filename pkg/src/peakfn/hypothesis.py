"""Hypothesis constants: validation, normalization, and derivation.

The construction needs five user constants (alpha, s, t, A, C) and six
derived ones (D, M, p, q, L, k).  Every derivation here follows an explicit
inequality; the chooser functions certify their own output and report
margins, so downstream modules can treat the constants as pre-validated.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

from . import _kernels
from .errors import (
    InfeasibleParametersError,
    InvalidHypothesisError,
    InvalidParameterError,
)

# relative guard band: inequalities must clear this margin, ties fail
GUARD = 1e-12

# normalization floor for t; any fixed value in (1/2, 1) works
T_FLOOR = 0.75

# minimum slack of M above 1
DELTA_M = 0.5

# cap for the geometric M search, as a multiple of C
M_CAP_FACTOR = 2.0 ** 20

# default radius-bound constant candidate
L_CANDIDATE = 5.0

# p values swept when validating L (p is in (0,1) for all admissible t, M)
P_GRID = tuple(round(0.05 * i, 2) for i in range(1, 20))


def strictly_less(small: float, big: float, guard: float = GUARD) -> bool:
    """True iff small < big with relative clearance guard (ties fail)."""
    return big - small > guard * max(abs(small), abs(big))


def rel_margin(small: float, big: float) -> float:
    """Signed relative margin of small < big."""
    scale = max(abs(small), abs(big))
    if scale == 0.0:
        return 0.0
    return (big - small) / scale


@dataclass(frozen=True, slots=True)
class HypothesisConstants:
    """User-supplied constants of the barrier hypothesis."""

    alpha: float
    s: float
    t: float
    A: float
    C: float

    def validate(self) -> None:
        if not (0.0 < self.alpha < 1.0):
            raise InvalidHypothesisError(f"alpha must be in (0,1), got {self.alpha!r}")
        if not (0.0 < self.s <= 1.0):
            raise InvalidHypothesisError(f"s must be in (0,1], got {self.s!r}")
        if not (0.0 < self.t < 1.0):
            raise InvalidHypothesisError(f"t must be in (0,1), got {self.t!r}")
        if not (0.0 < self.A < 1.0):
            raise InvalidHypothesisError(f"A must be in (0,1), got {self.A!r}")
        if not (self.C > 0.0 and math.isfinite(self.C)):
            raise InvalidHypothesisError(f"C must be positive, got {self.C!r}")

    def normalized(self) -> "HypothesisConstants":
        """Apply the t and C adjustments; idempotent."""
        self.validate()
        t = adjust_t(self.t)
        c = adjust_C(self.alpha, self.s, self.C)
        return HypothesisConstants(self.alpha, self.s, t, self.A, c)


@dataclass(frozen=True, slots=True)
class Constants:
    """Normalized hypothesis constants plus all derived constants."""

    alpha: float
    s: float
    t: float
    A: float
    C: float
    D: float
    M: float
    p: float
    q: float
    L: float
    k: float

    @property
    def log_inv_D(self) -> float:
        return math.log(1.0 / self.D)

    @property
    def log_inv_A(self) -> float:
        return math.log(1.0 / self.A)

    @property
    def mk(self) -> float:
        # M*k collapses to (1-alpha)/2 exactly
        return (1.0 - self.alpha) / 2.0

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha, "s": self.s, "t": self.t, "A": self.A,
            "C": self.C, "D": self.D, "M": self.M, "p": self.p,
            "q": self.q, "L": self.L, "k": self.k,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Constants":
        return cls(**{f: float(d[f]) for f in
                      ("alpha", "s", "t", "A", "C", "D", "M", "p", "q", "L", "k")})


def adjust_t(t: float) -> float:
    """Raise t to the working floor; raising t only weakens the growth cap."""
    if not (0.0 < t < 1.0):
        raise InvalidHypothesisError(f"t must be in (0,1), got {t!r}")
    return max(t, T_FLOOR)


def adjust_C(alpha: float, s: float, C: float) -> float:
    """Minimal raise of C so that s - (1-alpha)/C is strictly positive."""
    return max(C, 2.0 * (1.0 - alpha) / s)


def first_shell_margin(alpha: float, s: float, C: float, D: float) -> float:
    """Margin of the first-shell inequality (1-alpha)/2 * D^((1-alpha)/C) >= D^s."""
    lhs = (1.0 - alpha) / 2.0 * math.pow(D, (1.0 - alpha) / C)
    return lhs - math.pow(D, s)


def choose_D(alpha: float, s: float, C: float) -> float:
    """Pick the first radius D strictly inside the first-shell inequality.

    The inequality holds for all D below the equality point D_eq (the
    exponent gap s - (1-alpha)/C is positive after adjust_C).  Policy:
    return 0.1 when it clears the guard band, else half the equality point.
    """
    gap = s - (1.0 - alpha) / C
    if not (gap > 0.0):
        raise InvalidHypothesisError(
            f"need s - (1-alpha)/C > 0 (run adjust_C first), got gap {gap!r}")

    def shell_ok(d: float) -> bool:
        lhs = (1.0 - alpha) / 2.0 * math.pow(d, (1.0 - alpha) / C)
        rhs = math.pow(d, s)
        return strictly_less(rhs, lhs)

    # bisect the equality point of (1-alpha)/2 * D^((1-alpha)/C) = D^s;
    # margin is positive at 0+ and negative near 1
    lo, hi = 1e-15, 1.0 - 1e-15
    if first_shell_margin(alpha, s, C, hi) >= 0.0:
        # inequality holds on the whole range; any D works
        d_eq = hi
    else:
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if first_shell_margin(alpha, s, C, mid) >= 0.0:
                lo = mid
            else:
                hi = mid
        d_eq = lo
    if d_eq > 0.1 and shell_ok(0.1):
        return 0.1
    d = 0.5 * d_eq
    while d > 0.0 and not shell_ok(d):
        d *= 0.5
    if d <= 0.0:
        raise InfeasibleParametersError("no D satisfies the first-shell inequality")
    return d


def derive_pq(t: float, M: float) -> tuple[float, float]:
    """Exponent pair p = M(1-t)/(1+Mt), q = (t+Mt)/(1+Mt)."""
    if not (0.5 < t < 1.0):
        raise InvalidParameterError(f"t must be in (1/2,1) after adjust_t, got {t!r}")
    if not (M > 1.0):
        raise InvalidParameterError(
            f"M must exceed 1 (else 1-q < p fails), got {M!r}")
    denom = 1.0 + M * t
    p = M * (1.0 - t) / denom
    q = (t + M * t) / denom
    return p, q


def eps_exponent_sides(alpha: float, s: float, t: float, A: float,
                       M: float, p: float, q: float, m: int) -> tuple[float, float]:
    """LHS and RHS exponents of the neighborhood-shrink inequality at m.

    LHS: [(1+Mt)(1-alpha)/(2M(1-t))] * [(m+1)^(1-q) - 2^(1-q)]
    RHS: log(1/A) * (s/p) * [(m-1)^p - 1]
    """
    c1 = (1.0 + M * t) * (1.0 - alpha) / (2.0 * M * (1.0 - t))
    lhs = c1 * (math.pow(m + 1.0, 1.0 - q) - math.pow(2.0, 1.0 - q))
    rhs = math.log(1.0 / A) * (s / p) * (math.pow(m - 1.0, p) - 1.0)
    return lhs, rhs


def _eps_tail_certificate(alpha: float, s: float, t: float, A: float,
                          M: float, p: float, q: float, m_check: int) -> dict:
    """Sufficient condition for the shrink inequality beyond m_check.

    With c1, c2 the two exponent coefficients, d(m) = c2*(m-1)^p -
    c1*(m+1)^(1-q) must be positive at m_check and discretely increasing on
    [m_check, 4*m_check], and p must exceed 1-q.  Then the dominant term of
    the RHS outgrows the LHS for all larger m.
    """
    c1 = (1.0 + M * t) * (1.0 - alpha) / (2.0 * M * (1.0 - t))
    c2 = math.log(1.0 / A) * (s / p)

    def d(m: float) -> float:
        return c2 * math.pow(m - 1.0, p) - c1 * math.pow(m + 1.0, 1.0 - q)

    exp_ok = strictly_less(1.0 - q, p)
    d0 = d(float(m_check))
    positive_ok = d0 > 0.0
    min_diff = math.inf
    prev = d0
    for m in range(m_check + 1, 4 * m_check + 1):
        cur = d(float(m))
        diff = cur - prev
        if diff < min_diff:
            min_diff = diff
        prev = cur
    increasing_ok = min_diff > 0.0
    return {
        "exponent_gap": p - (1.0 - q),
        "exponent_ok": exp_ok,
        "d_at_m_check": d0,
        "d_positive": positive_ok,
        "min_discrete_increase": min_diff,
        "d_increasing": increasing_ok,
        "passed": bool(exp_ok and positive_ok and increasing_ok),
    }


def eps_condition_report(alpha: float, s: float, t: float, A: float,
                         M: float, p: float, q: float, m_check: int) -> dict:
    """Per-m margins of the shrink inequality on [3, m_check] plus tail."""
    margins = []
    min_rel = math.inf
    argmin = 0
    ok = True
    for m in range(3, m_check + 1):
        lhs, rhs = eps_exponent_sides(alpha, s, t, A, M, p, q, m)
        r = rel_margin(lhs, rhs)
        margins.append([m, lhs, rhs, rhs - lhs])
        if r < min_rel:
            min_rel = r
            argmin = m
        if not strictly_less(lhs, rhs):
            ok = False
    tail = _eps_tail_certificate(alpha, s, t, A, M, p, q, m_check)
    return {
        "m_range": [3, m_check],
        "per_m": margins,
        "min_rel_margin": min_rel,
        "argmin_m": argmin,
        "head_passed": ok,
        "tail_certificate": tail,
        "passed": bool(ok and tail["passed"]),
    }


def choose_M(h: HypothesisConstants, m_check: int = 120) -> tuple[float, dict]:
    """Smallest M on a geometric grid satisfying the shrink inequality.

    Candidates are max(C, 1+DELTA_M) * 2^i starting one doubling above the
    base (the base itself sits too close to the regime boundary to leave
    useful margin).  Each candidate is checked on [3, m_check] plus the
    documented tail certificate.
    """
    if m_check < 3:
        raise InvalidParameterError("m_check must be at least 3")
    base = max(h.C, 1.0 + DELTA_M)
    cap = M_CAP_FACTOR * max(h.C, 1.0)
    candidate = 2.0 * base
    best_margin = -math.inf
    while candidate <= cap:
        p, q = derive_pq(h.t, candidate)
        report = eps_condition_report(h.alpha, h.s, h.t, h.A,
                                      candidate, p, q, m_check)
        if report["passed"]:
            return candidate, report
        if report["min_rel_margin"] > best_margin:
            best_margin = report["min_rel_margin"]
        candidate *= 2.0
    raise InfeasibleParametersError(
        f"no admissible M up to cap {cap!r}", best_margin=best_margin)


def choose_L(p_grid=P_GRID, m_max: int = 10_000) -> float:
    """Radius-bound constant validated by brute-force sweep over m and p."""
    return _choose_L_cached(tuple(p_grid), int(m_max))


@functools.lru_cache(maxsize=None)
def _choose_L_cached(p_grid: tuple, m_max: int) -> float:
    if m_max < 2:
        raise InvalidParameterError("m_max must be at least 2")
    big_l = L_CANDIDATE
    while big_l < 2.0 ** 30:
        worst = math.inf
        for p in p_grid:
            if not (0.0 < p < 1.0):
                raise InvalidParameterError(f"p grid value outside (0,1): {p!r}")
            margin, _ = _kernels.choose_l_sweep(m_max, p, big_l)
            if margin < worst:
                worst = margin
        if worst > GUARD:
            return big_l
        big_l *= 2.0
    raise InfeasibleParametersError("no L found below cap")


def derive_constants(h: HypothesisConstants,
                     D: float | None = None,
                     M: float | None = None,
                     L: float | None = None,
                     m_check: int = 120) -> tuple[Constants, dict]:
    """Full derivation pipeline; overrides are recorded, not re-judged.

    Overridden D/M/L values are carried into the Constants as-is; the
    certificates module is the authority that accepts or rejects them.
    """
    hn = h.normalized()
    report: dict = {
        "input": {"alpha": h.alpha, "s": h.s, "t": h.t, "A": h.A, "C": h.C},
        "normalized": {"t": hn.t, "C": hn.C},
    }
    if D is None:
        D = choose_D(hn.alpha, hn.s, hn.C)
        report["D_policy"] = "derived"
    else:
        D = float(D)
        report["D_policy"] = "override"
        if not (0.0 < D < 1.0):
            raise InvalidParameterError(f"D must be in (0,1), got {D!r}")
    report["first_shell_margin"] = first_shell_margin(hn.alpha, hn.s, hn.C, D)

    if M is None:
        M, eps_report = choose_M(hn, m_check=m_check)
        report["M_policy"] = "derived"
    else:
        M = float(M)
        report["M_policy"] = "override"
        if not (M > 1.0):
            raise InvalidParameterError(f"M must exceed 1, got {M!r}")
        p_tmp, q_tmp = derive_pq(hn.t, M)
        eps_report = eps_condition_report(hn.alpha, hn.s, hn.t, hn.A,
                                          M, p_tmp, q_tmp, m_check)
    report["eps_condition"] = eps_report

    p, q = derive_pq(hn.t, M)
    if L is None:
        L = choose_L()
        report["L_policy"] = "derived"
    else:
        L = float(L)
        report["L_policy"] = "override"
        if not (L > 0.0):
            raise InvalidParameterError(f"L must be positive, got {L!r}")
    k = (1.0 - hn.alpha) / (2.0 * M)
    consts = Constants(alpha=hn.alpha, s=hn.s, t=hn.t, A=hn.A, C=hn.C,
                       D=D, M=M, p=p, q=q, L=L, k=k)
    report["derived"] = consts.to_dict()
    report["identity_residuals"] = {
        "(1+p)t-q": (1.0 + p) * hn.t - q,
        "(1-q)-p/M": (1.0 - q) - p / M,
    }
    return consts, report
