"""The functional-equation factor chi, its fixed log branch, and theta.

chi(s) = (2 pi)^s / (2 Gamma(s) cos(pi s / 2)) has zeros at even integers
<= 0 and poles at odd integers >= 1, so log chi admits an analytic branch on
Omega = C minus the real cuts (-inf, 0] and [1, +inf); the branch is pinned
by log chi(1/2) = 0.  On and above the critical line the branch is computed
from the decomposition

    log chi(s) = s log 2pi + i pi s / 2 - log(1 + e^{i pi s}) - log Gamma(s),

which is analytic wherever 1 + e^{i pi s} stays in the right half plane (in
particular on all of Im s >= 0 within Omega, and in a neighbourhood of the
critical line); below the axis the branch follows by conjugation.  The
right-hand side vanishes identically at s = 1/2, so no winding bookkeeping
is needed.

theta(t) = -(1/2i) log chi(1/2 + it) extends analytically to C minus the
cuts +-i [1/2, inf) and is real and odd for real t.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr

from .balls import (
    ComplexBall,
    DomainError,
    PoleError,
    RealBall,
    get_precision,
    pi_ball,
    log2pi_ball,
    e_ball,
)
from .gammafn import log_gamma

__all__ = [
    "ChiValue",
    "ThetaValue",
    "TaggedBound",
    "chi",
    "chi_abs",
    "log_chi",
    "chi_upper_bound",
    "theta",
    "theta_asymptotic",
    "theta_growth_bound",
]


@dataclass(frozen=True)
class TaggedBound:
    """An upper-bound enclosure together with the proposition that produced it."""

    value: RealBall
    tag: str

    def upper(self) -> mpfr:
        return self.value.upper()


@dataclass(frozen=True)
class ChiValue:
    value: ComplexBall
    log_branch: ComplexBall | None


@dataclass(frozen=True)
class ThetaValue:
    value: ComplexBall

    @property
    def real(self) -> RealBall:
        return self.value.re


# --------------------------------------------------------------------------
# the fixed branch of log chi
# --------------------------------------------------------------------------


def _in_omega(s: ComplexBall) -> bool:
    """Ball lies in Omega (avoids the cuts (-inf,0] and [1,inf))."""
    if not s.im.contains_zero():
        return True
    return s.re.is_positive() and s.re < 1


def _log_chi_upper(s: ComplexBall) -> ComplexBall:
    """The branch on Im s >= 0 (also valid across the axis near the line)."""
    pis = s.mul_real(pi_ball())
    w = pis.mul_i().exp()  # e^{i pi s}
    log1pw = (ComplexBall.exact(1) + w).log()
    return s.mul_real(log2pi_ball()) + pis.mul_i().mul_real(RealBall.from_fraction(Fraction(1, 2))) - log1pw - log_gamma(s)


def log_chi(s: ComplexBall) -> ComplexBall:
    """The analytic branch of log chi on Omega with log chi(1/2) = 0."""
    if not _in_omega(s):
        raise DomainError("log chi: ball leaves Omega (touches a real-axis cut)")
    if s.im.lower() >= 0 or s.im.contains_zero():
        # contains_zero implies the ball sits in the strip 0 < Re s < 1,
        # where the decomposition is analytic and agrees with the branch
        return _log_chi_upper(s)
    return _log_chi_upper(s.conj()).conj()


# --------------------------------------------------------------------------
# chi values
# --------------------------------------------------------------------------


def _near_real_integers(s: ComplexBall, parity: int, lo_limit: int | None, hi_limit: int | None, margin: mpfr) -> bool:
    """True if the ball comes within ``margin`` of an integer of given parity in [lo,hi]."""
    if s.im.mignitude() >= margin:
        return False
    lo = gmpy2.floor(s.re.lower() - margin)
    hi = gmpy2.ceil(s.re.upper() + margin)
    n = int(lo)
    while n <= int(hi):
        if n % 2 == (parity % 2) and (lo_limit is None or n >= lo_limit) and (hi_limit is None or n <= hi_limit):
            d = abs(s.re - n)
            if not (d.lower() >= margin):
                return True
        n += 1
    return False


def _pole_margin(s: ComplexBall) -> mpfr:
    up = gmpy2.context(precision=64, round=gmpy2.RoundUp)
    return up.add(up.mul(mpfr(2), s.radius_bound()), mpfr(2) ** -10)


def _chi_value(s: ComplexBall, lenient: bool = False) -> ComplexBall:
    """Enclosure of chi(s); ``lenient`` permits balls at/near the trivial zeros.

    Tries the defining formula first and falls back to the reflected form
    chi(s) = 2 (2 pi)^{s-1} Gamma(1-s) sin(pi s / 2), which stays finite at
    the zeros (even integers <= 0).
    """
    margin = _pole_margin(s)
    if _near_real_integers(s, parity=1, lo_limit=1, hi_limit=None, margin=margin):
        raise PoleError("chi: ball too close to a pole (odd integer >= 1)")
    if not lenient and _near_real_integers(s, parity=0, lo_limit=None, hi_limit=0, margin=margin):
        raise DomainError("chi: ball too close to a zero (even integer <= 0)")
    halfpis = s.mul_real(pi_ball() / 2)
    try:
        num = s.mul_real(log2pi_ball()).exp()
        return num / (log_gamma(s).exp() * halfpis.cos().mul_real(RealBall.exact(2)))
    except DomainError:
        one_minus = ComplexBall.exact(1) - s
        lg = log_gamma(one_minus)
        pref = (s - 1).mul_real(log2pi_ball()).exp()
        return pref.mul_real(RealBall.exact(2)) * lg.exp() * halfpis.sin()


def chi(s: ComplexBall) -> ChiValue:
    """chi(s) with, when s lies in Omega, the fixed branch of log chi."""
    value = _chi_value(s)
    branch = log_chi(s) if _in_omega(s) else None
    return ChiValue(value=value, log_branch=branch)


def chi_abs(s: ComplexBall) -> RealBall:
    """Enclosure of |chi(s)|."""
    return abs(_chi_value(s, lenient=True))


def chi_upper_bound(s: ComplexBall) -> TaggedBound:
    """Tightest applicable explicit upper bound for |chi(s)|.

    Candidates: (2 pi e)^sigma |s|^{1/2-sigma} and its product form
    (sigma^2+t^2)^{1/4} (4 pi^2 e^2 / (sigma^2+t^2))^{sigma/2} for sigma > 0,
    t > 1/2; the bare (sigma^2+t^2)^{1/4} when additionally |s| >= 2 pi e;
    and 6 (2 pi)^{sigma-1} ((1-sigma)^2+t^2)^{1/4-sigma/2} for sigma <= 0,
    t >= 1/2.
    """
    sigma, t = s.re, s.im
    s2 = sigma * sigma + t * t
    quarter = RealBall.from_fraction(Fraction(1, 4))
    half = RealBall.from_fraction(Fraction(1, 2))
    twopie = pi_ball() * e_ball() * 2
    candidates: list[TaggedBound] = []
    if sigma.is_positive() and t > half:
        b1 = twopie.pow(sigma) * abs(s).pow(half - sigma)
        candidates.append(TaggedBound(b1, "prop2.3-2pie-power"))
        b2 = s2.pow(quarter) * (twopie * twopie / s2).pow(sigma / 2)
        candidates.append(TaggedBound(b2, "prop2.3-combined"))
        if abs(s) >= twopie:
            candidates.append(TaggedBound(s2.pow(quarter), "prop2.3-fourth-root"))
    if (sigma <= 0) and t >= half:
        one_minus = 1 - sigma
        body = one_minus * one_minus + t * t
        b4 = 6 * (log2pi_ball() * (sigma - 1)).exp() * body.pow(quarter - sigma / 2)
        candidates.append(TaggedBound(b4, "prop2.4-left"))
    if not candidates:
        raise DomainError("chi_upper_bound: no proposition region certifiable for this ball")
    return min(candidates, key=lambda c: c.value.upper())


# --------------------------------------------------------------------------
# theta
# --------------------------------------------------------------------------


def _s_of_t(t: ComplexBall) -> ComplexBall:
    """s = 1/2 + i t."""
    return ComplexBall(RealBall.from_fraction(Fraction(1, 2)) - t.im, t.re)


def theta(t: RealBall | ComplexBall) -> ThetaValue:
    """Riemann-Siegel theta: -(1/2i) log chi(1/2 + it) on the fixed branch.

    Real input produces a value whose imaginary enclosure contains 0.  The
    input must avoid the cuts +-i [1/2, inf); for complex t this is the
    Omega condition on s = 1/2 + it.
    """
    tc = t if isinstance(t, ComplexBall) else ComplexBall(t)
    s = _s_of_t(tc)
    try:
        lc = log_chi(s)
    except DomainError:
        return _theta_asymptotic_value(tc)
    return ThetaValue(value=lc.mul_i().mul_real(RealBall.from_fraction(Fraction(1, 2))))


def _theta_asymptotic_value(t: ComplexBall) -> ThetaValue:
    s = _s_of_t(t)
    y = s.im
    if not (s.re.is_positive() and y >= 1):
        raise DomainError("theta: cut touched and asymptotic region (Re s > 0, Im s >= 1) not certifiable")
    main = (s - RealBall.from_fraction(Fraction(1, 2))).div_i() * (
        s.log() - ComplexBall(log2pi_ball())
    ).mul_real(RealBall.from_fraction(Fraction(1, 2))) - s.mul_real(pi_ball() / 4) + s.mul_i().mul_real(
        RealBall.from_fraction(Fraction(1, 2))
    )
    err = (RealBall.from_fraction(Fraction(3, 20)) / y).upper()
    pad = ComplexBall(RealBall.error_bound(err), RealBall.error_bound(err))
    return ThetaValue(value=main + pad)


def theta_asymptotic(t: RealBall | ComplexBall) -> ThetaValue:
    """theta via the explicit asymptotic form with its O*(0.15/y) remainder."""
    tc = t if isinstance(t, ComplexBall) else ComplexBall(t)
    return _theta_asymptotic_value(tc)


def theta_growth_bound(t: RealBall | ComplexBall) -> RealBall:
    """The bound 2 |t| log |t|, valid for |t| >= 4, |Re t| >= 1."""
    tc = t if isinstance(t, ComplexBall) else ComplexBall(t)
    at = abs(tc)
    if not (at >= 4):
        raise DomainError("theta_growth_bound requires |t| >= 4")
    if not (abs(tc.re) >= 1):
        raise DomainError("theta_growth_bound requires |Re t| >= 1")
    return 2 * at * at.log()
