"""Rigorous zeta enclosures from partial sums, explicit tails, and reflection.

Routing: for sigma >= 1.1 the Dirichlet series plus the explicit tail bound
x^{1-sigma}/(sigma-1) (1 + (sigma-1)/x) is used when a feasible cutoff meets
the target; for 0 < sigma < 1 with t >= 16 pi the Riemann-Siegel auxiliary
function provides zeta(s) = R(s) + chi(s) conj(R(1 - conj(s))); for
sigma <= 0 the functional equation zeta(s) = chi(s) zeta(1-s) reflects to
the right half plane.  The remaining strip (small t, or sigma in [1, 1.1))
has no formula in scope, so an alternating-series (eta) evaluator with a
self-contained truncation bound fills the gap; results from that route are
"extra-paper" but carry honest radii.

The eta evaluator uses the kernel p(x) = (x(1-x))^n: with c = p(-1) = (-2)^n
and q = (p - c)/(1 + x),

    eta(s) = -(1/c) sum_{k<2n} q_k (k+1)^{-s} + gamma_n(s),
    |gamma_n(s)| <= 4^{-n} Gamma(sigma) / (|c| |Gamma(s)|),      sigma > 0,

which follows from eta(s) Gamma(s) = int_0^1 (-log x)^{s-1}/(1+x) dx by
splitting off the polynomial part; zeta = eta / (1 - 2^{1-s}).
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import gmpy2
from gmpy2 import mpfr

from .balls import (
    ComplexBall,
    DomainError,
    PoleError,
    Precision,
    RealBall,
    get_precision,
    log2pi_ball,
    pi_ball,
    precision,
)
from .chitheta import TaggedBound, _chi_value
from .gammafn import log_gamma

__all__ = [
    "ZetaTail",
    "partial_sum",
    "zeta_tail_bound",
    "zeta_eval",
    "zeta_minus_partial_sum",
    "zeta_region_bound",
]

SERIES_CUTOFF_CAP = 50_000
ETA_TERMS_CAP = 30_000


@dataclass(frozen=True)
class ZetaTail:
    """Tail bound for |zeta(s) - sum_{n<=x} n^-s| with the branch that fired."""

    x: float
    bound: RealBall
    branch_used: str  # "seven_s_bound" | "sigma_gt1_bound"


# --------------------------------------------------------------------------
# n^{-s} and partial sums
# --------------------------------------------------------------------------

_log_lock = threading.Lock()
_log_cache: dict[int, tuple[int, RealBall]] = {}


def log_int(n: int) -> RealBall:
    """Cached enclosure of log n at (at least) the working precision."""
    bits = get_precision()
    hit = _log_cache.get(n)
    if hit is not None and hit[0] >= bits:
        return hit[1]
    ball = RealBall.exact(n).log()
    with _log_lock:
        old = _log_cache.get(n)
        if old is None or old[0] < bits:
            _log_cache[n] = (bits, ball)
    return ball


def n_pow_minus_s(n: int, s: ComplexBall) -> ComplexBall:
    """Enclosure of n^{-s} = exp(-s log n)."""
    if n == 1:
        return ComplexBall.exact(1)
    return (-s).mul_real(log_int(n)).exp()


def _floor_scalar(x) -> int:
    if isinstance(x, int):
        return x
    if isinstance(x, RealBall):
        lo, hi = gmpy2.floor(x.lower()), gmpy2.floor(x.upper())
        if lo != hi:
            raise DomainError("partial_sum: cutoff ball straddles an integer")
        return int(lo)
    return int(gmpy2.floor(mpfr(x, 53) if isinstance(x, float) else x))


def partial_sum(s: ComplexBall, x) -> ComplexBall:
    """Enclosure of sum_{n <= x} n^{-s}; the empty sum is exactly 0."""
    m = _floor_scalar(x)
    if m < 0:
        raise DomainError("partial_sum requires x >= 0")
    acc = ComplexBall.exact(0)
    for n in range(1, m + 1):
        acc = acc + n_pow_minus_s(n, s)
    return acc


def range_sum(s: ComplexBall, a: int, b: int) -> ComplexBall:
    """Enclosure of sum_{a < n <= b} n^{-s} accumulated directly."""
    acc = ComplexBall.exact(0)
    for n in range(a + 1, b + 1):
        acc = acc + n_pow_minus_s(n, s)
    return acc


# --------------------------------------------------------------------------
# explicit tail bounds
# --------------------------------------------------------------------------


def _seven_s_bound(s: ComplexBall, x: float) -> RealBall | None:
    sigma = s.re
    if not (sigma.lower() >= 0):
        return None
    if not (abs(s - 1) >= 2):
        return None
    xb = RealBall.exact(mpfr(x, 53))
    if not (xb.lower() > 0 and abs(s) >= xb):
        return None
    return 7 * abs(s) * xb.pow(-sigma)

def _sigma_gt1_bound(s: ComplexBall, x: float) -> RealBall | None:
    sigma = s.re
    if not (sigma > 1):
        return None
    xb = RealBall.exact(mpfr(x, 53))
    if not xb.is_positive():
        return None
    sm1 = sigma - 1
    return xb.pow(-sm1) / sm1 * (1 + sm1 / xb)


def zeta_tail_bound(s: ComplexBall, x) -> ZetaTail:
    """Smaller applicable explicit bound for |zeta(s) - sum_{n<=x} n^{-s}|.

    Branch "seven_s_bound" = 7 |s| x^{-sigma} (sigma >= 0, |s-1| >= 2,
    0 < x <= |s|); branch "sigma_gt1_bound" = x^{1-sigma}/(sigma-1)
    (1 + (sigma-1)/x) (sigma > 1).
    """
    xf = float(x)
    candidates = []
    b7 = _seven_s_bound(s, xf)
    if b7 is not None:
        candidates.append((b7, "seven_s_bound"))
    b1 = _sigma_gt1_bound(s, xf)
    if b1 is not None:
        candidates.append((b1, "sigma_gt1_bound"))
    if not candidates:
        raise DomainError("zeta_tail_bound: neither branch hypothesis certifiable")
    bound, branch = min(candidates, key=lambda c: c[0].upper())
    return ZetaTail(x=xf, bound=bound, branch_used=branch)


# --------------------------------------------------------------------------
# eta (alternating series) route
# --------------------------------------------------------------------------

_eta_lock = threading.Lock()
_eta_coeffs: dict[int, tuple[int, list[int]]] = {}


def _eta_coefficients(n: int) -> tuple[int, list[int]]:
    """(c, q) for the kernel (x(1-x))^n: exact integers, cached."""
    hit = _eta_coeffs.get(n)
    if hit is not None:
        return hit
    p = [0] * (2 * n + 1)
    b = 1
    for j in range(n + 1):  # p_{n+j} = (-1)^j C(n, j)
        p[n + j] = b if j % 2 == 0 else -b
        b = b * (n - j) // (j + 1)
    c = (-2) ** n
    q = [0] * (2 * n)
    q[2 * n - 1] = p[2 * n]
    for k in range(2 * n - 1, 0, -1):
        q[k - 1] = p[k] - q[k]
    assert p[0] - q[0] == c
    with _eta_lock:
        _eta_coeffs.setdefault(n, (c, q))
    return _eta_coeffs[n]


def _eta_plan(s: ComplexBall, target: float) -> tuple[int, int] | None:
    """(n, extra_bits) for the eta route, or None if uncertifiable/infeasible."""
    sigma = s.re
    if not sigma.is_positive():
        return None
    try:
        lg_s = log_gamma(s)
        lg_sigma = log_gamma(ComplexBall(sigma))
    except DomainError:
        return None
    ln_gs_lo = float(lg_s.re.lower())
    ln_gsig_hi = float(lg_sigma.re.upper())
    dlo = abs(_one_minus_two_pow(s)).lower()
    if not dlo > 0:
        return None
    need = ln_gsig_hi - ln_gs_lo - math.log(float(dlo)) + math.log(4.0 / target)
    n = max(6, int(math.ceil(need / math.log(8.0))) + 4)
    n = (n + 7) // 8 * 8  # quantize for coefficient-cache reuse
    if n > ETA_TERMS_CAP:
        return None
    extra = int(math.ceil(math.log2(max(n, 2)))) + 8
    return n, extra


def _one_minus_two_pow(s: ComplexBall) -> ComplexBall:
    """1 - 2^{1-s}."""
    log2 = RealBall.exact(2).log()
    return ComplexBall.exact(1) - (ComplexBall.exact(1) - s).mul_real(log2).exp()


def _eta_zeta_small(s: ComplexBall, target: float) -> ComplexBall:
    """zeta(s) on the small disk |s| <= 3/4 with 0 <= sigma <= 1.2.

    Same kernel, but with the truncation bound refined to

        |gamma_n(s)| <= (4^-n + 2^-n / n) |1/Gamma(s)| / |c|,

    valid for 0 <= sigma <= 1.2 (split the integral at x = 1/2 and use
    |p| <= 4^-n on the left, (x(1-x))^n <= (1-x)^n on the right), and with
    1/Gamma(s) = s exp(-log Gamma(s+1)) so that s = 0 is exact: there the
    remainder vanishes and eta(0) = 1/2 comes out of the coefficients alone.
    """
    sigma = s.re
    if not (sigma.lower() >= 0 and sigma.upper() <= 1.2 and abs(s).upper() <= 0.75):
        raise DomainError("small-disk eta route out of its validity region")
    inv_gamma_hi = (abs(s) * (-log_gamma(s + 1).re).exp()).upper()
    sup = float(inv_gamma_hi)
    if sup == 0.0:
        n = 8
    else:
        n = max(8, int(math.ceil((math.log(sup + 1.0) + math.log(4.0 / target)) / math.log(4.0))) + 2)
    n = min((n + 7) // 8 * 8, ETA_TERMS_CAP)
    bits = max(get_precision(), int(math.ceil(-math.log2(target))) + 16)
    with precision(bits):
        c, q = _eta_coefficients(n)
        acc = ComplexBall.exact(0)
        for k, qk in enumerate(q):
            if qk:
                acc = acc + n_pow_minus_s(k + 1, s).mul_real(RealBall.exact(qk))
        eta = -(acc.mul_real(RealBall.exact(1) / RealBall.exact(c)))
        up = gmpy2.context(precision=64, round=gmpy2.RoundUp)
        i_n = up.add(gmpy2.exp2(mpfr(-2 * n)), up.div(gmpy2.exp2(mpfr(-n)), n))
        rad = up.div(up.mul(i_n, inv_gamma_hi), gmpy2.exp2(mpfr(n)))
        eta = eta + ComplexBall(RealBall.error_bound(rad), RealBall.error_bound(rad))
        return eta / _one_minus_two_pow(s)


def _eta_zeta(s: ComplexBall, target: float) -> ComplexBall:
    """zeta(s) via the alternating-series kernel; requires sigma > 0."""
    plan = _eta_plan(s, target)
    if plan is None:
        raise DomainError("eta route not certifiable/feasible for this ball")
    n, extra = plan
    bits = max(get_precision(), int(math.ceil(-math.log2(target))) + extra)
    with precision(bits):
        c, q = _eta_coefficients(n)
        acc = ComplexBall.exact(0)
        for k, qk in enumerate(q):
            if qk == 0:
                continue
            acc = acc + n_pow_minus_s(k + 1, s).mul_real(RealBall.exact(qk))
        eta = -(acc.mul_real(RealBall.exact(1) / RealBall.exact(c)))
        # truncation: |gamma_n| <= 4^-n Gamma(sigma) / (|c| |Gamma(s)|)
        g_hi = log_gamma(ComplexBall(s.re)).re.exp().upper()
        gs_lo = log_gamma(s).re.exp().lower()
        up = gmpy2.context(precision=64, round=gmpy2.RoundUp)
        rad = up.div(up.mul(gmpy2.exp2(mpfr(-3 * n)), g_hi), gs_lo)
        eta = eta + ComplexBall(RealBall.error_bound(rad), RealBall.error_bound(rad))
        return eta / _one_minus_two_pow(s)


# --------------------------------------------------------------------------
# routing
# --------------------------------------------------------------------------


def _series_cutoff(sigma_lo: float, target: float) -> int | None:
    """Smallest x with the sigma>1 tail below target/2, or None if infeasible."""
    if sigma_lo <= 1.001:
        return None
    try:
        x = (2.0 / (target * (sigma_lo - 1.0))) ** (1.0 / (sigma_lo - 1.0))
    except OverflowError:
        return None
    x = int(math.ceil(x)) + 1
    return x if x <= SERIES_CUTOFF_CAP else None


def _series_route(s: ComplexBall, x: int) -> ComplexBall:
    tail = zeta_tail_bound(s, x)
    pad = RealBall.error_bound(tail.bound)
    return partial_sum(s, x) + ComplexBall(pad, pad)


def _pole_check(s: ComplexBall) -> None:
    d = abs(s - 1)
    up = gmpy2.context(precision=64, round=gmpy2.RoundUp)
    margin = up.add(mpfr(2) ** -20, s.radius_bound())
    if not (d.lower() >= margin):
        raise PoleError("zeta_eval: ball too close to the pole s = 1")


def _zeta_route(s: ComplexBall, target: float) -> ComplexBall:
    sigma = s.re
    t16 = pi_ball() * 16
    if sigma.lower() >= 0 and abs(s).upper() <= 0.5:
        # near the origin the reflection 1-s lands at the pole; the refined
        # small-disk eta bound covers this zone directly (sigma = 0 included)
        return _eta_zeta_small(s, target)
    if sigma.lower() >= 1.1:
        x = _series_cutoff(float(sigma.lower()), target)
        if x is not None:
            return _series_route(s, x)
        try:
            return _eta_zeta(s, target)
        except DomainError:
            return _series_route(s, SERIES_CUTOFF_CAP)  # best effort, honest radius
    if sigma <= 0:
        refl = _chi_value(s, lenient=True)
        return refl * _zeta_route(ComplexBall.exact(1) - s, target)
    if sigma.is_positive() and sigma < 1 and s.im > t16:
        from .rs import zeta_via_R  # deferred: rs depends on this module

        viaR = zeta_via_R(s)
        if float(viaR.radius_bound()) <= target:
            return viaR
        try:
            return _eta_zeta(s, target)
        except DomainError:
            return viaR
    # strip fallback (small t, or sigma in [1, 1.1)): extra-paper eta route
    try:
        return _eta_zeta(s, target)
    except DomainError:
        # last resort: partial sum with the 7|s| tail, wide but rigorous
        xf = float(abs(s).lower())
        tail = zeta_tail_bound(s, min(xf, float(SERIES_CUTOFF_CAP)))
        pad = RealBall.error_bound(tail.bound)
        return partial_sum(s, tail.x) + ComplexBall(pad, pad)


def zeta_eval(s: ComplexBall, prec: Precision = Precision()) -> ComplexBall:
    """Enclosure of zeta(s), escalating working precision toward the target.

    Returns the best enclosure found; if the target radius is unreachable
    (e.g. series tails too slow and no sharper route applies) the result is
    best-effort and its radius says so.
    """
    _pole_check(s)
    target = float(prec.target_abs_error)
    best: ComplexBall | None = None
    bits = prec.working_bits
    for _ in range(4):
        with precision(bits):
            try:
                r = _zeta_route(s, target)
            except PoleError:
                raise
            except DomainError:
                bits *= 2
                continue
        if best is None or float(r.radius_bound()) < float(best.radius_bound()):
            best = r
        if float(r.radius_bound()) <= target:
            return r
        bits *= 2
    if best is None:
        raise DomainError("zeta_eval: no route certifiable for this ball")
    return best


def zeta_minus_partial_sum(s: ComplexBall, x, prec: Precision = Precision()) -> ComplexBall:
    """Enclosure of zeta(s) - sum_{n<=x} n^{-s}.

    For sigma > 1 the tail is accumulated directly (avoiding the
    cancellation of two O(1) enclosures); otherwise it is the difference of
    zeta_eval and the partial sum.
    """
    m = _floor_scalar(x)
    sigma = s.re
    if sigma > 1:
        with precision(max(get_precision(), prec.working_bits)):
            m2 = max(2 * m, m + 400)
            tail = zeta_tail_bound(s, m2)
            pad = RealBall.error_bound(tail.bound)
            return range_sum(s, m, m2) + ComplexBall(pad, pad)
    return zeta_eval(s, prec) - partial_sum(s, m)


# --------------------------------------------------------------------------
# region bounds (section-4 propositions)
# --------------------------------------------------------------------------


def zeta_region_bound(s: ComplexBall) -> TaggedBound:
    """Tightest applicable |zeta| bound among the four section-4 regions.

    prop4.1: |zeta| < 2 for sigma >= 2; prop4.2: 2 (2pi)^sigma
    ((1-sigma)^2+t^2)^{1/4-sigma/2} for sigma <= -1, |t| >= 1/2;
    prop4.3: 1 + t/sigma for 0 < sigma <= 2, t >= 2; prop4.4: 3t for
    sigma >= 1/2, t >= 2.  Each bound is gated strictly by its stated
    hypotheses.
    """
    sigma, t = s.re, s.im
    candidates: list[TaggedBound] = []
    if sigma >= 2:
        candidates.append(TaggedBound(RealBall.exact(2), "prop4.1-right-halfplane"))
    half = RealBall.exact(1) / 2
    if sigma <= -1 and abs(t) >= half:
        one_minus = 1 - sigma
        body = one_minus * one_minus + t * t
        b = 2 * (log2pi_ball() * sigma).exp() * body.pow(RealBall.exact(1) / 4 - sigma / 2)
        candidates.append(TaggedBound(b, "prop4.2-left-halfplane"))
    if sigma.is_positive() and sigma <= 2 and t >= 2:
        candidates.append(TaggedBound(1 + t / sigma, "prop4.3-critical-strip"))
    if sigma >= half and t >= 2:
        candidates.append(TaggedBound(3 * t, "prop4.4-right"))
    if not candidates:
        raise DomainError("zeta_region_bound: no proposition region certifiable")
    return min(candidates, key=lambda c: c.value.upper())
