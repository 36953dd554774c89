"""Barrier families: the function oracle the peak series is built from.

A family maps a radius r (supplied as log(1/r), since schedule radii
underflow doubles) to a function f_r on the closed domain satisfying the
four barrier conditions for the family's claimed constants:

  (1) f_r = 1 at the peak point;
  (2) |f_r| <= alpha off the radius-r ball around the peak;
  (3) |f_r| <= C * log^t(1/r) inside the ball;
  (4) |f_r| < 1 + eps^s on the ball of radius A*r*eps, for every eps in (0,1).

Two instances ship: a continuous piecewise family on [0,1] whose sup-norms
genuinely grow like log^t(1/r), and a bounded holomorphic exponential
family on the closed unit disk (the classical regime, for regression).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError, FamilyAuditError, InvalidParameterError
from .hypothesis import GUARD

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True, slots=True)
class DomainModel:
    """Closed bounded domain with a marked peak point."""

    name: str
    dimension: int
    peak: complex
    diameter: float
    _member: Callable[[complex], bool]

    def contains(self, y) -> bool:
        return self._member(complex(y))

    def distance_to_peak(self, y) -> float:
        return abs(complex(y) - self.peak)

    def require(self, y) -> complex:
        z = complex(y)
        if not self._member(z):
            raise DomainError(f"point {y!r} lies outside domain {self.name!r}")
        return z


def _interval_member(z: complex) -> bool:
    return z.imag == 0.0 and -1e-13 <= z.real <= 1.0 + 1e-13


def _disk_member(z: complex) -> bool:
    return abs(z) <= 1.0 + 1e-13


UNIT_INTERVAL = DomainModel("interval-0-1", 1, 0.0 + 0.0j, 1.0, _interval_member)
UNIT_DISK = DomainModel("unit-disk", 2, 1.0 + 0.0j, 2.0, _disk_member)


@dataclass(frozen=True, slots=True)
class Barrier:
    """One instantiated barrier function at a fixed radius."""

    log_inv_r: float
    peak_cap: float  # the condition-(3) ceiling C * log^t(1/r)
    func: Callable[[complex], complex]

    def __call__(self, y) -> complex:
        return self.func(complex(y))


@dataclass(frozen=True, slots=True)
class BarrierFamily:
    """Radius-indexed barrier functions with claimed constants."""

    name: str
    domain: DomainModel
    alpha: float
    s: float
    t: float
    A: float
    C: float
    exact_off_value: float | None  # constant value off the ball, if any
    min_log_inv_r: float  # radii restricted to r <= exp(-min_log_inv_r)
    radius_model: str
    _make: Callable[[float], Barrier]
    default_audit_radii: tuple = field(default=())
    default_audit_grid: int = 1000

    @property
    def exact_off_neighborhood(self) -> bool:
        return self.exact_off_value is not None

    def barrier(self, log_inv_r: float) -> Barrier:
        if not (log_inv_r >= self.min_log_inv_r - 1e-12):
            r_max = math.exp(-self.min_log_inv_r)
            raise FamilyAuditError(
                f"family {self.name!r} is audited for r <= {r_max:.6g}; "
                f"got log(1/r) = {log_inv_r!r}")
        return self._make(float(log_inv_r))


# -- continuous piecewise family on [0, 1] ---------------------------------


def synthetic_family(h) -> BarrierFamily:
    """Piecewise-linear-plus-power family on [0,1] peaking at 0.

    f_r rises from 1 at 0 to 3/2 at A*r as 1 + (1/2)(y/(A*r))^s, climbs
    linearly to the cap C*log^t(1/r) at (A*r + r)/2, descends linearly to
    alpha at r, and stays exactly alpha on [r, 1].  Its sup-norm therefore
    realizes the condition-(3) ceiling, which is the regime the series
    construction is designed for.  Condition (4) holds with margin: the
    first segment reaches 1 + eps^s only at y = 2^(1/s) * A*r*eps, strictly
    beyond the radius-(A*r*eps) ball.
    """
    alpha = float(h.alpha)
    s = float(h.s)
    t = float(h.t)
    big_a = float(h.A)
    big_c = float(h.C)
    log_a = math.log(big_a)
    w_mid = math.log((1.0 + big_a) / 2.0)
    two_over_gap = 2.0 / (1.0 - big_a)

    def make(lir: float) -> Barrier:
        cap = big_c * math.pow(lir, t)
        if not (cap >= 1.5):
            raise FamilyAuditError(
                f"radius too large: C*log^t(1/r) = {cap!r} < 3/2 at "
                f"log(1/r) = {lir!r}")

        def f(z: complex) -> complex:
            y = z.real
            if y <= 0.0:
                return complex(1.0, 0.0)
            # w = log(y/r); segment tests stay in log space so underflowed
            # radii still evaluate correctly
            w = math.log(y) + lir
            if w > 0.0:
                return complex(alpha, 0.0)
            if w <= log_a:
                return complex(1.0 + 0.5 * math.exp(s * (w - log_a)), 0.0)
            ratio = math.exp(w)  # y/r, in (A, 1]
            if w <= w_mid:
                frac = (ratio - big_a) * two_over_gap
                return complex(1.5 + (cap - 1.5) * frac, 0.0)
            frac = (ratio - (1.0 + big_a) / 2.0) * two_over_gap
            return complex(cap + (alpha - cap) * frac, 0.0)

        return Barrier(log_inv_r=lir, peak_cap=cap, func=f)

    return BarrierFamily(
        name="synthetic",
        domain=UNIT_INTERVAL,
        alpha=alpha, s=s, t=t, A=big_a, C=big_c,
        exact_off_value=alpha,
        min_log_inv_r=math.log(10.0),
        radius_model="exact",
        _make=make,
        default_audit_radii=(1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6),
        default_audit_grid=1000,
    )


# -- bounded holomorphic family on the closed unit disk --------------------


def disk_exponential_family(alpha: float, h=None) -> BarrierFamily:
    """Scaled exponentials exp(lambda_r (z-1)) on the closed unit disk.

    lambda_r = 2*log(1/alpha)/r^2 makes condition (2) hold because
    Re(z-1) <= -|z-1|^2/2 on the disk; |f_r| <= 1 everywhere, so (3) and
    (4) hold for any claimed C >= 1 once log^t(1/r) >= 1.  This is the
    classical uniformly bounded regime.
    """
    alpha = float(alpha)
    if not (0.0 < alpha < 1.0):
        raise InvalidParameterError(f"alpha must be in (0,1), got {alpha!r}")
    s = float(h.s) if h is not None else 1.0
    t = float(h.t) if h is not None else 0.75
    big_a = float(h.A) if h is not None else 0.5
    big_c = max(float(h.C), 1.0) if h is not None else 1.0
    log_2_log_inv_alpha = math.log(2.0 * math.log(1.0 / alpha))

    def make(lir: float) -> Barrier:
        log_lam = log_2_log_inv_alpha + 2.0 * lir
        cap = big_c * math.pow(lir, t)

        def f(z: complex) -> complex:
            dz = z - 1.0
            if dz == 0.0:
                return complex(1.0, 0.0)
            # Re(z) <= 1 on the closed disk; clamp tolerance-shell overshoot
            dx = min(dz.real, 0.0)
            dy = dz.imag
            # exponent lambda*dz computed componentwise in log space;
            # lambda itself can overflow for schedule radii
            if dx == 0.0:
                wre = 0.0
            else:
                lw = log_lam + math.log(abs(dx))
                if lw > 7.0 and dx < 0.0:
                    return complex(0.0, 0.0)
                wre = math.copysign(math.exp(min(lw, 709.0)), dx)
            if dy == 0.0:
                wim = 0.0
            else:
                wim = math.copysign(
                    math.exp(min(log_lam + math.log(abs(dy)), 709.0)), dy)
            if wre < -745.0:
                return complex(0.0, 0.0)
            return cmath.exp(complex(wre, wim))

        return Barrier(log_inv_r=lir, peak_cap=cap, func=f)

    return BarrierFamily(
        name="disk-exp",
        domain=UNIT_DISK,
        alpha=alpha, s=s, t=t, A=big_a, C=big_c,
        exact_off_value=None,
        min_log_inv_r=math.log(1.0 / 0.2),
        radius_model="exact",
        _make=make,
        default_audit_radii=(0.05, 0.1, 0.2),
        default_audit_grid=10_000,
    )


FAMILY_NAMES = ("synthetic", "disk-exp")


def family_by_name(name: str, consts) -> BarrierFamily:
    if name == "synthetic":
        return synthetic_family(consts)
    if name == "disk-exp":
        return disk_exponential_family(consts.alpha, consts)
    raise InvalidParameterError(
        f"unknown family {name!r}; expected one of {FAMILY_NAMES}")


# -- audit -------------------------------------------------------------------


def _interval_audit_points(r: float, n: int) -> list[float]:
    # uniform coverage plus log refinement toward the peak plus the exact
    # segment seams of the synthetic family
    pts = set(np.linspace(0.0, 1.0, n).tolist())
    lo = max(r * 1e-8, 1e-280)
    pts.update(np.geomspace(lo, 1.0, n).tolist())
    for seam in (0.25 * r, 0.5 * r, 0.75 * r, r, 1.5 * r, 2.0 * r):
        if 0.0 < seam <= 1.0:
            pts.add(seam)
            pts.add(math.nextafter(seam, 0.0))
            pts.add(math.nextafter(seam, 1.0))
    return sorted(pts)


def _disk_audit_points(n: int) -> list[complex]:
    nr = max(2, int(round(math.sqrt(n))))
    ntheta = max(4, n // nr)
    pts = [0.0 + 0.0j]
    for i in range(1, nr + 1):
        rho = i / nr
        for jj in range(ntheta):
            theta = _TWO_PI * jj / ntheta
            pts.append(complex(rho * math.cos(theta), rho * math.sin(theta)))
    return pts


def _ball_probe_points(domain: DomainModel, radius: float) -> list[complex]:
    """Points inside B(peak, radius) for the condition-(4) probe."""
    if radius <= 0.0:
        return []
    out: list[complex] = []
    dists = np.geomspace(max(radius * 1e-6, 1e-280), radius * (1.0 - 1e-9), 8)
    if domain.dimension == 1:
        for d in dists:
            y = complex(float(d), 0.0)
            if domain.contains(y):
                out.append(y)
    else:
        for d in dists:
            for phi in (0.0, 0.5 * math.pi, math.pi, 1.5 * math.pi):
                z = domain.peak - float(d) * cmath.exp(complex(0.0, phi))
                if domain.contains(z):
                    out.append(z)
    return out


@dataclass
class AuditReport:
    family: str
    radii: list
    grid_size: int
    condition_margins: dict
    failures: list
    passed: bool

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "radii": list(self.radii),
            "grid_size": self.grid_size,
            "condition_margins": self.condition_margins,
            "failures": self.failures,
            "passed": self.passed,
        }


def audit_family(fam: BarrierFamily, radii=None, grid_size: int | None = None,
                 eps_grid=None) -> AuditReport:
    """Pointwise check of the four barrier conditions on a grid.

    Conditions (2) and (3) are checked with the guard-band tolerance on
    every grid point; condition (1) is exact; condition (4) is probed on an
    epsilon grid with points planted inside each shrunken ball.  Any
    violation lands in the failures list with its condition, radius, and
    point.
    """
    if radii is None:
        radii = fam.default_audit_radii
    if grid_size is None:
        grid_size = fam.default_audit_grid
    if eps_grid is None:
        eps_grid = [0.01 * i for i in range(1, 100)]
    worst = {
        "condition_1": math.inf,
        "condition_2": math.inf,
        "condition_3": math.inf,
        "condition_4": math.inf,
    }
    failures: list[dict] = []

    def fail(cond: str, r: float, point, margin: float) -> None:
        failures.append({
            "condition": cond,
            "radius": r,
            "point": repr(point),
            "margin": margin,
        })

    for r in radii:
        r = float(r)
        if not (0.0 < r < 1.0):
            raise InvalidParameterError(f"audit radius outside (0,1): {r!r}")
        lir = -math.log(r)
        bar = fam.barrier(lir)
        # condition (1): exact equality at the peak
        m1 = -abs(bar(fam.domain.peak) - 1.0)
        worst["condition_1"] = min(worst["condition_1"], m1)
        if m1 < 0.0:
            fail("condition_1", r, fam.domain.peak, m1)
        if fam.domain.dimension == 1:
            grid = [complex(v, 0.0) for v in _interval_audit_points(r, grid_size)]
        else:
            grid = _disk_audit_points(grid_size)
        tol2 = GUARD * max(1.0, fam.alpha)
        tol3 = GUARD * max(1.0, bar.peak_cap)
        for z in grid:
            d = fam.domain.distance_to_peak(z)
            mod = abs(bar(z))
            if d >= r:
                margin = fam.alpha - mod
                worst["condition_2"] = min(worst["condition_2"], margin)
                if margin < -tol2:
                    fail("condition_2", r, z, margin)
            else:
                margin = bar.peak_cap - mod
                worst["condition_3"] = min(worst["condition_3"], margin)
                if margin < -tol3:
                    fail("condition_3", r, z, margin)
        for eps in eps_grid:
            ball = fam.A * r * eps
            threshold = 1.0 + math.pow(eps, fam.s)
            for z in _ball_probe_points(fam.domain, ball):
                mod = abs(bar(z))
                margin = threshold - mod
                worst["condition_4"] = min(worst["condition_4"], margin)
                if not margin > GUARD * threshold:
                    fail("condition_4", r, z, margin)
    report = AuditReport(
        family=fam.name,
        radii=[float(r) for r in radii],
        grid_size=int(grid_size),
        condition_margins={kk: (vv if math.isfinite(vv) else None)
                           for kk, vv in worst.items()},
        failures=failures,
        passed=not failures,
    )
    return report


# -- evaluation grids --------------------------------------------------------


def make_grid(fam: BarrierFamily, kind: str, lo: float, hi: float,
              count: int) -> list[complex]:
    """Deterministic evaluation grid approaching the peak.

    Grid points are parameterized by distance to the peak, spaced log or
    linear on [lo, hi].  On the interval the point at distance d is d
    itself; on the disk each distance shell carries eight points
    peak - d*exp(i*phi), filtered to the closed disk.  The floor protects
    the certified regime: distances below 1e-30 are out of scope.
    """
    if kind not in ("log", "linear"):
        raise InvalidParameterError(f"grid kind must be log|linear, got {kind!r}")
    if count < 1:
        raise InvalidParameterError(f"grid count must be >= 1, got {count!r}")
    if not (0.0 < lo <= hi):
        raise InvalidParameterError("grid needs 0 < lo <= hi")
    if lo < 1e-30:
        raise InvalidParameterError(
            f"grid floor is 1e-30; got lo = {lo!r}")
    if hi > fam.domain.diameter:
        raise InvalidParameterError(
            f"grid hi {hi!r} exceeds the domain diameter {fam.domain.diameter!r}")
    if fam.domain.dimension == 1:
        dists = (np.geomspace(lo, hi, count) if kind == "log"
                 else np.linspace(lo, hi, count))
        return [complex(float(d), 0.0) for d in dists]
    n_shell = max(1, count // 8)
    dists = (np.geomspace(lo, hi, n_shell) if kind == "log"
             else np.linspace(lo, hi, n_shell))
    pts = []
    for d in dists:
        for jj in range(8):
            phi = _TWO_PI * jj / 8.0
            z = fam.domain.peak - float(d) * cmath.exp(complex(0.0, phi))
            # strictly inside the closed disk, clear of the tolerance shell
            if abs(z) <= 1.0 and z != fam.domain.peak:
                pts.append(z)
    return pts
