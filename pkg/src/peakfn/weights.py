"""Weight engine: g, sigma_j, and certified normalizer/tail enclosures.

Everything rests on one exact identity: integrating g * psi^(-t) from x to
infinity gives g(x)/k in closed form.  That converts every infinite tail
into a finite bracket, which is what makes the series certifiable at desk
scale (the weights decay only like exp(-c*x^(1-q)) with q close to 1, so
explicit summation alone would never converge usefully).
"""

from __future__ import annotations

import math
import threading

from . import _kernels
from .enclosure import ZERO, Enclosure
from .errors import DomainError, InvalidParameterError, ToleranceFailureError
from .hypothesis import GUARD, Constants
from .schedule import Schedule

# integer points cached with unit-panel quadrature; beyond this a single
# long adaptive panel is used per query
UNIT_CACHE_CAP = 20_000

# quadrature error-estimate inflation folded into enclosures
ERR_SAFETY = 10.0
ACC_REL_GUARD = 1e-14


def _adaptive_quad(f, a: float, b: float, rel_tol: float) -> tuple[float, float]:
    """Adaptive Gauss-Kronrod 7-15 for a smooth Python callable.

    Same rule and same deterministic left-first bisection as the kernel
    quadrature; used only for integrands that need engine callbacks.
    """
    if b <= a:
        return 0.0, 0.0
    xs, wk, wg = _kernels.GK_X, _kernels.GK_WK, _kernels.GK_WG
    stack = [(a, b, 0)]
    total = 0.0
    err = 0.0
    while stack:
        lo, hi, depth = stack.pop()
        c = 0.5 * (lo + hi)
        h = 0.5 * (hi - lo)
        fc = f(c)
        resk = fc * wk[7]
        resg = fc * wg[3]
        for i in range(7):
            dx = h * xs[i]
            f1 = f(c - dx)
            f2 = f(c + dx)
            resk += wk[i] * (f1 + f2)
            if i == 1 or i == 3 or i == 5:
                resg += wg[i // 2] * (f1 + f2)
        val = resk * h
        e = abs((resk - resg) * h)
        if e <= rel_tol * abs(val) or depth >= 48:
            total += val
            err += e
        else:
            mid = 0.5 * (lo + hi)
            stack.append((mid, hi, depth + 1))
            stack.append((lo, mid, depth + 1))
    return total, err


class WeightEngine:
    """Cached enclosures of I, g, sigma and their prefix sums and tails."""

    def __init__(self, consts: Constants, schedule: Schedule | None = None,
                 quad_rel_tol: float = 1e-10):
        self.consts = consts
        self.schedule = schedule if schedule is not None else Schedule(consts)
        self.quad_rel_tol = float(quad_rel_tol)
        self._lid = consts.log_inv_D
        self._ca = self.schedule.psi_power_coefficient
        psi1 = self.schedule.psi(1.0)
        # psi(1)^(-t) through two libm calls: pad generously
        self._psi1_negt = Enclosure.from_libm(math.pow(psi1, -consts.t), ulps=8)
        self._i_enc: list[Enclosure] = [ZERO]
        self._sigma: list[Enclosure] = []
        self._sigma_prefix: list[Enclosure] = [ZERO]
        self._lock = threading.RLock()

    # -- quadrature ------------------------------------------------------

    def _quad_panel(self, a: float, b: float) -> Enclosure:
        """Enclosure of the psi^(-t) integral over [a, b], a >= 1."""
        val, err = _kernels.quad_psi_negt(
            a, b, self._lid, self._ca, self.consts.p, self.consts.t,
            self.quad_rel_tol)
        if err > 100.0 * self.quad_rel_tol * abs(val) + 1e-300:
            raise ToleranceFailureError(
                f"quadrature stalled on [{a!r}, {b!r}]",
                achieved=err / max(abs(val), 1e-300))
        return Enclosure.from_midrad(val, ERR_SAFETY * err + abs(val) * ACC_REL_GUARD)

    def _ensure_integer_i(self, n: int) -> None:
        if n < len(self._i_enc):
            return
        with self._lock:
            if n < len(self._i_enc):
                return
            cache = self._i_enc
            while len(cache) <= n:
                j = len(cache)  # next integer point
                if j == 1:
                    cache.append(self._psi1_negt * 1.0)
                else:
                    cache.append(cache[-1] + self._quad_panel(float(j - 1), float(j)))

    # -- core quantities ---------------------------------------------------

    def integral_I(self, x: float) -> Enclosure:
        """Enclosure of the accumulated decay integral from 0 to x."""
        if x < 0.0:
            raise DomainError(f"integral_I needs x >= 0, got {x!r}")
        if x == 0.0:
            return ZERO
        if x <= 1.0:
            # psi is flat below 1, so the integral is exactly linear here
            return self._psi1_negt * x
        base = min(int(math.floor(x)), UNIT_CACHE_CAP)
        self._ensure_integer_i(base)
        enc = self._i_enc[base]
        if x > float(base):
            enc = enc + self._quad_panel(float(base), x)
        return enc

    def g(self, x: float) -> Enclosure:
        """Decay factor exp(-k * I(x)); equals 1 at x = 0."""
        if x == 0.0:
            return Enclosure(1.0, 1.0)
        return (self.integral_I(x) * (-self.consts.k)).exp()

    def _ensure_sigma(self, n: int) -> None:
        if n <= len(self._sigma):
            return
        with self._lock:
            if n <= len(self._sigma):
                return
            self._ensure_integer_i(min(n, UNIT_CACHE_CAP))
            m_const = self.consts.M
            t = self.consts.t
            while len(self._sigma) < n:
                j = len(self._sigma) + 1
                g_enc = self.g(float(j))
                psit = Enclosure.from_libm(
                    math.pow(self.schedule.psi(float(j)), t), ulps=8)
                sig = g_enc / (psit * m_const)
                self._sigma.append(sig)
                self._sigma_prefix.append(self._sigma_prefix[-1] + sig)

    def sigma(self, j: int) -> Enclosure:
        """Weight sigma_j = g(j) / (M * psi(j)^t)."""
        if j < 1:
            raise InvalidParameterError(f"sigma needs j >= 1, got {j!r}")
        self._ensure_sigma(j)
        return self._sigma[j - 1]

    def sigma_prefix(self, n: int) -> Enclosure:
        """Enclosure of sum_{j<=n} sigma_j (zero for n = 0)."""
        if n < 0:
            raise InvalidParameterError(f"prefix needs n >= 0, got {n!r}")
        self._ensure_sigma(n)
        return self._sigma_prefix[n]

    def sigma_range(self, a: int, b: int) -> Enclosure:
        """Enclosure of sum_{j=a..b} sigma_j; zero when the range is empty."""
        if b < a:
            return ZERO
        return self.sigma_prefix(b) - self.sigma_prefix(a - 1)

    def tail(self, m: int, sharpen: int = 0) -> Enclosure:
        """Enclosure of sum_{j>m} sigma_j.

        The summand is decreasing, so the integral comparison sandwiches the
        remainder between g(m+1)/(M k) and sigma_{m+1} + g(m+1)/(M k) (the
        integral is exactly g/(M k) by the closed-form identity).  With
        sharpen = n, the first n terms are summed explicitly before
        bracketing, which tightens the width to roughly sigma_{m+n+1}.
        """
        if m < 0:
            raise InvalidParameterError(f"tail needs m >= 0, got {m!r}")
        if sharpen < 0:
            raise InvalidParameterError(f"sharpen must be >= 0, got {sharpen!r}")
        m2 = m + sharpen
        head = self.sigma_range(m + 1, m2)
        gref = self.g(float(m2 + 1))
        integral = gref / self.consts.mk
        upper = self.sigma(m2 + 1) + integral
        bracket = Enclosure(integral.lo, upper.hi)
        return head + bracket

    # -- lemma-facing checks ----------------------------------------------

    def integral_equation_residual(self, x: float, x_offset: float = 50.0) -> dict:
        """Consistency of g with its defining integral equation.

        Checks k * int_x^X g * psi^(-t) + g(X) = g(x) with X = x + x_offset,
        the tail beyond X replaced by its exact closed form.  Returns the
        relative residual; quadrature on midpoint values (this is a
        consistency check, not an enclosure).
        """
        if x < 0.0:
            raise DomainError(f"x must be >= 0, got {x!r}")
        big_x = x + x_offset
        k = self.consts.k

        def integrand(s: float) -> float:
            return math.exp(-k * self.integral_I(s).mid) * \
                math.pow(self.schedule.psi(s), -self.consts.t)

        # psi has a kink at 1: keep it on a panel boundary
        if x < 1.0 < big_x:
            v1, e1 = _adaptive_quad(integrand, x, 1.0, 1e-9)
            v2, e2 = _adaptive_quad(integrand, 1.0, big_x, 1e-9)
            val, err = v1 + v2, e1 + e2
        else:
            val, err = _adaptive_quad(integrand, x, big_x, 1e-9)
        gx = self.g(x).mid
        gbig = self.g(big_x).mid
        residual = abs(k * val + gbig - gx) / gx
        return {
            "x": x,
            "X": big_x,
            "quad_error_estimate": err,
            "relative_residual": residual,
        }

    def divergence_certificate(self, s1: float = 1.0e3, s2: float = 1.0e6) -> dict:
        """Certified unboundedness of u(x) = k * I(x).

        psi(tau) <= psi(1) * tau^(1+p) for tau >= 1, so u(s2) - u(s1) is at
        least k * psi(1)^(-t) * (s2^(1-q) - s1^(1-q))/(1-q); the same closed
        form grows without bound since 1-q > 0.  Checks the measured
        increase against the minorant and reports both.
        """
        if not (1.0 <= s1 < s2):
            raise InvalidParameterError("need 1 <= s1 < s2")
        k = self.consts.k
        one_minus_q = 1.0 - self.consts.q
        u1 = k * self.integral_I(s1).mid
        u2 = k * self.integral_I(s2).mid
        measured = u2 - u1
        minorant = k * self._psi1_negt.lo * \
            (math.pow(s2, one_minus_q) - math.pow(s1, one_minus_q)) / one_minus_q
        passed = (measured >= minorant * (1.0 - 1e-9)) and one_minus_q > GUARD
        return {
            "s1": s1,
            "s2": s2,
            "u_s1": u1,
            "u_s2": u2,
            "measured_increase": measured,
            "certified_minorant": minorant,
            "divergence_exponent": one_minus_q,
            "passed": bool(passed),
        }

    def decay_bound_check(self, x_samples=(0.0, 1.0, 10.0, 100.0, 1000.0),
                          x_on: float = 10.0) -> dict:
        """Witness constants for the stretched-exponential decay of g.

        Finds A2, A3 with A3^(1/t) * s^(1+p) <= psi(s) <= A2^(1/t) * s^(1+p)
        for s >= x_on (the ratio psi(s)/s^(1+p) decreases to the power
        coefficient), then A1 = exp(k * x_on^(1-q)/(A2*(1-q))), and checks
        0 < g(x) <= A1 * exp(-k * x^(1-q)/(A2*(1-q))) at each sample.  The
        bound extends below x_on because there the right side exceeds 1.
        """
        t = self.consts.t
        p = self.consts.p
        k = self.consts.k
        one_minus_q = 1.0 - self.consts.q

        def ratio(s: float) -> float:
            return self.schedule.psi(s) / math.pow(s, 1.0 + p)

        r_on = ratio(x_on)
        a2 = math.pow(r_on, t)
        a3 = math.pow(self._ca, t)
        # the ratio must sit inside [ca, ratio(x_on)] on [x_on, inf)
        bracket_ok = True
        bracket_samples = []
        s = x_on
        while s <= 1.0e6:
            r = ratio(s)
            ok = (self._ca * (1.0 - GUARD) <= r <= r_on * (1.0 + GUARD))
            bracket_samples.append([s, r, bool(ok)])
            bracket_ok = bracket_ok and ok
            s *= 10.0
        rate = k / (math.pow(r_on, t) * one_minus_q)
        a1 = math.exp(rate * math.pow(x_on, one_minus_q))
        samples = []
        all_ok = bracket_ok
        for x in x_samples:
            g_enc = self.g(float(x))
            bound = a1 * math.exp(-rate * math.pow(float(x), one_minus_q))
            ok = g_enc.lo > 0.0 and g_enc.hi <= bound * (1.0 + GUARD)
            samples.append([float(x), g_enc.hi, bound, bool(ok)])
            all_ok = all_ok and ok
        return {
            "x_on": x_on,
            "A1": a1,
            "A2": a2,
            "A3": a3,
            "ratio_at_onset": r_on,
            "ratio_limit": self._ca,
            "ratio_bracket_samples": bracket_samples,
            "samples": samples,
            "passed": bool(all_ok),
        }
