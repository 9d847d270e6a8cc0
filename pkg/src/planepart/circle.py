"""Assembly of the superasymptotic estimate for p2(n).

Builds the per-arc terms psi^(m)_{h,k} and phi^(m)_k, finds the optimal
(superasymptotic) truncation point in m for each k, chooses the arc cutoff in
k, and aggregates everything into an EstimateReport with an error ledger.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import mpmath
from mpmath import mp

from .arith import (PrecisionContext, PrecisionError, constants,
                    derived_constants, precision_for)
from .almkvist import almkvist_series, saddle_data
from .dedekind import CoeffGenerator, _roots_row, b_coeffs, c_hk
from .exact import p2_exact_table

DEFAULT_K_THRESHOLD = "0.01"
DEFAULT_M_FLOOR = "0.001"


def lambda_param(n: int, k: int, ctx: PrecisionContext):
    """lam = k^2 / (24 c2 n^(2/3))."""
    if n < 1 or k < 1:
        raise ValueError("lambda_param requires n, k >= 1")
    der = derived_constants(ctx)
    with ctx.workdps():
        return mpmath.mpf(k * k) / (24 * der.c2 * mpmath.mpf(n) ** (mpmath.mpf(2) / 3))


def c_of_lambda(lam, ctx: PrecisionContext):
    """c(lam) = 4 pi^2 e^{-f1'(lam)/2} / (2a)^(1/3)."""
    cst = constants(ctx)
    with ctx.workdps():
        sd = saddle_data(lam, ctx)
        return 4 * cst.pi**2 * mp.exp(-sd.f1p / 2) / mp.cbrt(2 * cst.a)


def d_of_lambda(lam, ctx: PrecisionContext):
    """d(lam) = 72 a lam 4^-3 exp(24 zeta'(-1) + (1 + f1(lam))/lam)."""
    cst = constants(ctx)
    with ctx.workdps():
        lv = mpmath.mpf(lam)
        if lv <= 0:
            raise ValueError("d_of_lambda requires lam > 0")
        sd = saddle_data(lv, ctx)
        return (72 * cst.a * lv / 64
                * mp.exp(24 * cst.zeta_prime_m1 + (1 + sd.f1) / lv))


@lru_cache(maxsize=None)
def _lambda_c_at(dps: int):
    ctx = PrecisionContext(decimal_digits=dps)
    with ctx.workdps():
        lo, hi = mpmath.mpf("0.01"), mpmath.mpf("1.0")  # d decreasing, d(lo) > 1 > d(hi)
        for _ in range(int(dps * 3.4) + 20):
            mid = (lo + hi) / 2
            if d_of_lambda(mid, ctx) > 1:
                lo = mid
            else:
                hi = mid
        return (lo + hi) / 2


def lambda_c(ctx: PrecisionContext):
    """The lam where d(lam) = 1 (arc-classification threshold)."""
    return _lambda_c_at(ctx.decimal_digits)


# ---------------------------------------------------------------------------
# Term records and the per-k series engine
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TermRecord:
    k: int
    m: int
    value: mpmath.mpf
    abs_value: mpmath.mpf


@dataclass
class PhiBreakdown:
    k: int
    m_star_used: int
    terms: list[TermRecord]
    phi_value: mpmath.mpf
    trunc_error_est: mpmath.mpf
    stop_reason: str  # minimum-found | below-floor | exhausted


@dataclass
class EstimateReport:
    n: int
    N_used: int
    per_k: list[PhiBreakdown]
    estimate: mpmath.mpf
    rounded: int
    estimated_error: mpmath.mpf
    exact: int | None = None
    actual_error: mpmath.mpf | None = None


class _PhiSeries:
    """Sequential phi^(m)_k(n) terms for one k, in increasing m."""

    def __init__(self, n: int, k: int, ctx: PrecisionContext):
        self.n, self.k, self.ctx = n, k, ctx
        self.real = k <= 2
        cst = constants(ctx)
        with ctx.workdps():
            a = cst.a
            kf = mpmath.mpf(k)
            self.x = mp.sqrt(a / kf**3) * n
            self.sqrt_ak3 = mp.sqrt(a / kf**3)
            self.pow_m = mpmath.mpf(1)
            base = mp.exp(k * cst.zeta_prime_m1) * (a / kf) ** (
                mpmath.mpf(1) / 2 + kf / 24) / kf
            if k == 1:
                hs = [0]
            else:
                hs = [h for h in range(1, k) if math.gcd(h, k) == 1]
            self.gens = [CoeffGenerator(h, k, ctx) for h in hs]
            if k == 1:
                coefs = [base]
            elif k == 2:
                # e^(-2 pi i n h / 2) = (-1)^(n h), exactly real
                coefs = [base * (-1) ** (n * h) * mp.exp(c_hk(h, k, ctx))
                         for h in hs]
            else:
                roots = _roots_row(k)
                coefs = [base * roots[(-n * h) % k] * mp.exp(c_hk(h, k, ctx))
                         for h in hs]
            self.coefs = coefs
            self.im_tol = mpmath.mpf(10) ** (-(ctx.decimal_digits // 2))

    def term(self, m: int):
        """phi^(m)_k(n) as a real mpf; terms may be requested in any order but
        increasing m reuses all coefficient work."""
        with self.ctx.workdps():
            for gen in self.gens:
                gen.extend_to(m)
            gamma = -mpmath.mpf(self.k) / 12 - m
            A = almkvist_series(self.x, gamma, self.ctx).value
            if self.real:
                acc = mp.fsum(c * g.b[m] for c, g in zip(self.coefs, self.gens))
            else:
                acc = sum((c * g.b[m] for c, g in zip(self.coefs, self.gens)),
                          mpmath.mpc(0))
            scale = self.sqrt_ak3 ** m
            val = scale * A * acc
            if not self.real:
                if abs(val.imag) / max(abs(val.real), mpmath.mpf(1)) > self.im_tol:
                    raise PrecisionError(
                        f"phi_{self.k}^({m})({self.n}) has a non-negligible "
                        f"imaginary part; increase precision")
                val = val.real
            return val


def mstar_theory(n: int, k: int, ctx: PrecisionContext):
    """Predicted truncation point M*(n,k) from the saddle-point analysis."""
    if n < 1 or k < 1:
        raise ValueError("mstar_theory requires n, k >= 1")
    der = derived_constants(ctx)
    with ctx.workdps():
        lam = lambda_param(n, k, ctx)
        sd = saddle_data(lam, ctx)
        c = c_of_lambda(lam, ctx)
        n13 = mpmath.mpf(n) ** (mpmath.mpf(1) / 3)
        return (c / k) * n13 - (c * c / (4 * der.c2 * k)) * sd.f1pp


def mstar_numeric(n: int, k: int, ctx: PrecisionContext,
                  floor=DEFAULT_M_FLOOR) -> PhiBreakdown:
    """Sum phi^(m)_k in increasing m, truncating at the superasymptotic
    minimum term (declared after two consecutive increases of |phi^(m)| on the
    structurally-nonzero subsequence) or earlier when |phi^(m)| < floor."""
    series = _PhiSeries(n, k, ctx)
    step = 2 if k <= 2 else 1
    with ctx.workdps():
        floor_v = mpmath.mpf(floor)
        theory = mstar_theory(n, k, ctx)
        cap = int(3 * theory) + 60
        # Near-cancellation dips in the head of the series (before the
        # asymptotic decay regime) can mimic the superasymptotic minimum;
        # the minimum rules stay disarmed until m reaches half the
        # theoretical minimum location.
        min_gate = int(theory / 2)
        records: list[TermRecord] = []
        abs_seq: list = []
        stop_reason = "exhausted"
        m_star = None
        trunc = None
        max_ab = mpmath.mpf(0)
        min_entry = None  # (m, ab, record index) of the running minimum
        m = 0
        while m <= cap:
            val = series.term(m)
            ab = abs(val)
            records.append(TermRecord(k=k, m=m, value=val, abs_value=ab))
            # Structural zeros (exact h-sum cancellation) carry no size
            # information: they are kept in the sum but ignored by the
            # floor and minimum rules.  A value at the roundoff floor of
            # the largest term seen so far is such a zero contaminated by
            # cancellation error, not a genuinely small term.
            max_ab = max(max_ab, ab)
            if ab != 0 and ab > max_ab * ctx.eps:
                if ab < floor_v:
                    stop_reason = "below-floor"
                    m_star = m
                    trunc = ab
                    break
                if m < min_gate:
                    m += step
                    continue
                abs_seq.append((m, ab, len(records) - 1))
                if min_entry is None or ab < min_entry[1]:
                    min_entry = abs_seq[-1]
                # The minimum term is declared either after two consecutive
                # increases of |phi^(m)| or once a term exceeds 8x the
                # running minimum (the divergent tail can zig-zag between
                # parities, which defeats the consecutive-increase test).
                two_incr = (len(abs_seq) >= 3
                            and abs_seq[-1][1] > abs_seq[-2][1] > abs_seq[-3][1])
                blowup = ab > 8 * min_entry[1]
                if two_incr or blowup:
                    stop_reason = "minimum-found"
                    m_star = min_entry[0]
                    # first neglected nonzero term after the minimum
                    trunc = next(r.abs_value
                                 for r in records[min_entry[2] + 1:]
                                 if r.abs_value > 0)
                    records = records[:min_entry[2] + 1]
                    break
            m += step
        if m_star is None:
            m_star = records[-1].m if records else 0
            trunc = records[-1].abs_value if records else mpmath.mpf(0)
        phi_value = mp.fsum(r.value for r in records)
        return PhiBreakdown(k=k, m_star_used=m_star, terms=records,
                            phi_value=phi_value, trunc_error_est=trunc,
                            stop_reason=stop_reason)


def psi_m(n: int, h: int, k: int, m: int, ctx: PrecisionContext):
    """Single arc term psi^(m)_{h,k}(n) (complex)."""
    if k < 1 or m < 0:
        raise ValueError("psi_m requires k >= 1 and m >= 0")
    ok = (h == 0 and k == 1) or (1 <= h < k and math.gcd(h, k) == 1)
    if not ok:
        raise ValueError("psi_m requires gcd(h,k) = 1 (h = 0 only for k = 1)")
    cst = constants(ctx)
    with ctx.workdps():
        a = cst.a
        kf = mpmath.mpf(k)
        bm = b_coeffs(h, k, m, ctx).b[m]
        A = almkvist_series(mp.sqrt(a / kf**3) * n, -kf / 12 - m, ctx).value
        phase = mpmath.mpc(1) if k == 1 else _roots_row(k)[(-n * h) % k]
        pref = mp.exp(k * cst.zeta_prime_m1 + c_hk(h, k, ctx)) \
            * (a / kf) ** (mpmath.mpf(1) / 2 + kf / 24) / kf
        return phase * pref * bm * mp.sqrt(a / kf**3) ** m * A


def phi_m(n: int, k: int, m: int, ctx: PrecisionContext):
    """phi^(m)_k(n), the h-sum of psi^(m)_{h,k}, as a real value."""
    if k <= 2 and m % 2 == 1:
        return mpmath.mpf(0)
    series = _PhiSeries(n, k, ctx)
    step = 2 if k <= 2 else 1
    val = None
    for mm in range(0, m + 1, step):
        val = series.term(mm)
    return val


def n_cutoff_theory(n: int, kappa2=0, kappa3="0.06", ctx: PrecisionContext | None = None):
    """Major-arc cutoff N(n) = 2.948 n^(1/3) + (2.936 k2 - 1.468) log n + beta3."""
    if n < 1:
        raise ValueError("n_cutoff_theory requires n >= 1")
    dps = ctx.decimal_digits if ctx else 30
    with mp.workdps(dps):
        n13 = mpmath.mpf(n) ** (mpmath.mpf(1) / 3)
        beta3 = mpmath.mpf("1.587") + mpmath.mpf("2.936") * mpmath.mpf(kappa3)
        return (mpmath.mpf("2.948") * n13
                + (mpmath.mpf("2.936") * mpmath.mpf(kappa2) - mpmath.mpf("1.468"))
                * mp.log(n) + beta3)


def cutoff_probe(n: int, k: int, ctx: PrecisionContext):
    """Size probe for the k-th arc: |phi^(0)_k(n)|, the magnitude of its
    leading (m = 0) term.

    This is what the closed-form proxy
    k^(k/12) e^(k zeta'(-1)) (a/k)^(1/2 + k/24) A(sqrt(a/k^3) n | -k/12)
    estimates; evaluating the term itself keeps the h-sum phases, which the
    proxy overstates by several orders of magnitude at cutoff scale.  The
    probe can be exactly zero when the h-sum cancels structurally.
    """
    with ctx.workdps():
        return abs(_PhiSeries(n, k, ctx).term(0))


def n_cutoff_numeric(n: int, ctx: PrecisionContext,
                     threshold=DEFAULT_K_THRESHOLD) -> int:
    """Smallest k whose (nonzero) probe drops below threshold.

    Structural zeros of the m = 0 term are skipped: they say nothing about
    the arc's size (its higher-m terms do not cancel).
    """
    with ctx.workdps():
        thr = mpmath.mpf(threshold)
        for k in range(1, 500):
            probe = cutoff_probe(n, k, ctx)
            if probe != 0 and probe < thr:
                return k
    raise PrecisionError("cutoff probe never dropped below threshold")


def sa_error_bound(n: int, k: int, ctx: PrecisionContext):
    """Superasymptotic truncation-error bound for arc k (valid for lam <= lam_c)."""
    cst = constants(ctx)
    der = derived_constants(ctx)
    with ctx.workdps():
        lam = lambda_param(n, k, ctx)
        if lam > lambda_c(ctx):
            raise ValueError("sa_error_bound is only claimed for lam <= lam_c")
        c = c_of_lambda(lam, ctx)
        mstar = mstar_theory(n, k, ctx)
        nf = mpmath.mpf(n)
        n13 = nf ** (mpmath.mpf(1) / 3)
        n23 = n13 * n13
        pref = (mpmath.mpf(k) ** (-mpmath.mpf(1) / 2) * der.c1**k
                * (k * k / n23) ** (1 + mpmath.mpf(k) / 24)
                / (cst.pi**2 * (2 * cst.a) ** (-mpmath.mpf(1) / 6)
                   * mp.sqrt(3 * mstar)))
        expo = (-c * c / (4 * der.c2) - c * n13 + der.c2 * n23) / k
        return pref * mp.exp(expo)


@dataclass(frozen=True)
class MinorArcBound:
    type1: mpmath.mpf
    type2: mpmath.mpf


def minor_arc_bound(n: int, kappa2, ctx: PrecisionContext,
                    lambda0="0.25") -> MinorArcBound:
    """Type I and Type II minor-arc bounds; lambda0 must exceed lam_c."""
    if n < 1:
        raise ValueError("minor_arc_bound requires n >= 1")
    with ctx.workdps():
        lam0 = mpmath.mpf(lambda0)
        if lam0 <= lambda_c(ctx):
            raise ValueError("minor_arc_bound requires lambda0 > lambda_c")
        kappa3 = mp.log(mpmath.mpf("1.06"))
        nf = mpmath.mpf(n)
        type1 = mpmath.mpf("1.06") * nf ** (-mpmath.mpf(kappa2)) * mp.exp(-kappa3)
        d0 = d_of_lambda(lam0, ctx)
        beta1 = mpmath.mpf("2.948")
        c3 = -(beta1 / 24) * mp.log(d0)
        type2 = (mpmath.mpf("2.07") / mp.sqrt(nf)
                 / (1 - d0 ** (mpmath.mpf(1) / 24))
                 * mp.exp(-c3 * nf ** (mpmath.mpf(1) / 3)))
        return MinorArcBound(type1=type1, type2=type2)


def phi0_bound(n: int, k: int, ctx: PrecisionContext):
    """Upper bound for |phi^(0)_k(n)|: the minimum of the two published forms."""
    cst = constants(ctx)
    der = derived_constants(ctx)
    with ctx.workdps():
        lam = lambda_param(n, k, ctx)
        sd = saddle_data(lam, ctx)
        nf = mpmath.mpf(n)
        n23 = nf ** (mpmath.mpf(2) / 3)
        kf = mpmath.mpf(k)
        bound1 = (der.c1**k * (kf * kf / n23) ** (1 + kf / 24)
                  / ((2 * cst.a) ** (-mpmath.mpf(1) / 6) * mp.sqrt(6 * cst.pi * kf**3))
                  * mp.exp((der.c2 * n23 / k) * (1 + sd.f1)) * (1 + sd.f2))
        if k == 1:
            # c1 carries the (k 2^-alpha)^(k/12) estimate (alpha = 3) for
            # e^{C_{h,k}} over 1 <= h < k; the k = 1 arc is the single
            # h = 0 term with C_{0,1} = 0, so the 2^{-1/4} factor must be
            # undone.
            bound1 *= 2 ** (mpmath.mpf(1) / 4)
        bound2 = None
        if lam > 0:
            d0 = d_of_lambda(lam, ctx)
            bound2 = mp.sqrt(72 * cst.a / (cst.pi * kf**3)) * d0 ** (kf / 24)
        return bound1 if bound2 is None else min(bound1, bound2)


def p2_estimate(n: int, kappa2=None, k_threshold=DEFAULT_K_THRESHOLD,
                m_floor=DEFAULT_M_FLOOR, digits: int | None = None,
                with_exact: bool = False) -> EstimateReport:
    """Full superasymptotic estimate of p2(n) with an error ledger.

    Arcs k are included up to the numeric cutoff (last k whose probe is still
    >= k_threshold) by default, or up to [N(n)] when kappa2 is given; each arc
    is truncated in m per mstar_numeric.  estimated_error aggregates the per-k
    truncation estimates plus the probe at the first neglected k.
    """
    if n < 1:
        raise ValueError("p2_estimate requires n >= 1")
    ctx = PrecisionContext(decimal_digits=digits) if digits else precision_for(n)
    if kappa2 is not None:
        with ctx.workdps():
            n_incl = max(1, int(mp.floor(n_cutoff_theory(n, kappa2, ctx=ctx))))
    else:
        n_incl = max(1, n_cutoff_numeric(n, ctx, k_threshold) - 1)
    per_k = [mstar_numeric(n, k, ctx, m_floor) for k in range(1, n_incl + 1)]
    with ctx.workdps():
        estimate = mp.fsum(b.phi_value for b in per_k)
        probe_next = mpmath.mpf(0)
        for k_next in range(n_incl + 1, n_incl + 8):
            probe_next = abs(cutoff_probe(n, k_next, ctx))
            if probe_next != 0:
                break
        est_err = mp.fsum(b.trunc_error_est for b in per_k) + probe_next
        rounded = int(mp.nint(estimate))
    report = EstimateReport(n=n, N_used=n_incl, per_k=per_k, estimate=estimate,
                            rounded=rounded, estimated_error=est_err)
    if with_exact:
        exact = p2_exact_table(n)[n]
        with ctx.workdps():
            report.exact = exact
            report.actual_error = estimate - exact
    return report
