"""log-Gamma with an explicit Stirling remainder, and two-sided |Gamma| bounds.

The Stirling correction is

    mu(z) = log Gamma(z) - (z - 1/2) log z + z - log sqrt(2 pi),

evaluated as a truncated Bernoulli series plus a fully explicit remainder
bound, so every log-Gamma value is a rigorous enclosure.  The branch of
log Gamma is the one that is real on (0, oo), analytic off the cut
(-inf, 0].  Arguments with small modulus are shifted right with
log Gamma(z) = log Gamma(z+m) - sum_k log(z+k) before the series is applied,
because the remainder bound only becomes small for large |z|.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr

from .balls import (
    ComplexBall,
    DomainError,
    RealBall,
    get_precision,
    log2pi_ball,
    pi_ball,
)

__all__ = [
    "StirlingParams",
    "MuResult",
    "bernoulli",
    "stirling_mu",
    "log_gamma",
    "gamma_abs",
    "gamma_magnitude_bounds",
]


# --------------------------------------------------------------------------
# Bernoulli numbers (exact, cached)
# --------------------------------------------------------------------------

_bern_lock = threading.Lock()
_bern_even: list[Fraction] = [Fraction(1)]  # B_0, B_2, B_4, ...


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n for even n >= 2.

    Computed from the defining recurrence sum_{k<=m} C(m+1, k) B_k = 0
    (convention B_1 = -1/2) in exact rational arithmetic; results are cached.
    """
    if n <= 0 or n % 2 != 0:
        raise DomainError(f"Bernoulli index must be a positive even integer, got {n}")
    m = n // 2
    if m < len(_bern_even):
        return _bern_even[m]
    with _bern_lock:
        while len(_bern_even) <= m:
            k = len(_bern_even)
            deg = 2 * k
            # sum over even indices < deg, plus the lone odd contribution B_1
            s = sum(Fraction(math.comb(deg + 1, 2 * j)) * _bern_even[j] for j in range(k))
            s += Fraction(deg + 1) * Fraction(-1, 2)
            _bern_even.append(-s / (deg + 1))
    return _bern_even[m]


@dataclass(frozen=True)
class StirlingParams:
    """Truncation order for the Bernoulli series, with the shared coefficient cache."""

    K: int

    def __post_init__(self):
        if self.K < 1:
            raise ValueError("K must be >= 1")

    def coefficient(self, n: int) -> Fraction:
        """Series coefficient B_{2n} / ((2n-1) 2n)."""
        return bernoulli(2 * n) / ((2 * n - 1) * (2 * n))

    @property
    def bernoulli_cache(self) -> dict[int, Fraction]:
        return {2 * j: b for j, b in enumerate(_bern_even) if j > 0}


@dataclass(frozen=True)
class MuResult:
    """Stirling correction enclosure and the remainder radius actually applied."""

    mu: ComplexBall
    remainder_radius: RealBall


def _stirling_remainder(K: int, z_abs_lo: mpfr) -> RealBall:
    """Remainder bound |B_{2K+2}| / ((2K-1)(2K+2) |z|^{2K+1}) (1 + (2K+1)/2 sqrt(pi/K))."""
    b = RealBall.from_fraction(abs(bernoulli(2 * K + 2)))
    zpow = RealBall.exact(z_abs_lo).pow_int(2 * K + 1)
    factor = 1 + RealBall.exact(2 * K + 1) * (pi_ball() / K).sqrt() / 2
    return b / ((2 * K - 1) * (2 * K + 2)) / zpow * factor


def stirling_mu(z: ComplexBall, K: int) -> MuResult:
    """Enclosure of mu(z) from K Bernoulli terms plus the explicit remainder.

    Requires Re z > 0 over the whole ball.  The remainder is evaluated with
    |z| replaced by its rigorous lower bound and added to the radius.
    """
    if K < 1:
        raise DomainError("K must be >= 1")
    if not z.re.is_positive():
        raise DomainError("stirling_mu requires Re z > 0 over the ball")
    z_abs_lo = abs(z).lower()
    if not z_abs_lo > 0:
        raise DomainError("stirling_mu requires |z| bounded away from 0")
    inv = ComplexBall.exact(1) / z
    inv2 = inv * inv
    p = inv
    acc = ComplexBall.exact(0)
    for n in range(1, K + 1):
        c = RealBall.from_fraction(bernoulli(2 * n) / ((2 * n - 1) * (2 * n)))
        acc = acc + p.mul_real(c)
        if n < K:
            p = p * inv2
    rem = _stirling_remainder(K, z_abs_lo)
    mu = acc + ComplexBall(RealBall.error_bound(rem), RealBall.error_bound(rem))
    return MuResult(mu=mu, remainder_radius=RealBall.from_endpoints(mpfr(0), rem.upper()))


# --------------------------------------------------------------------------
# log Gamma
# --------------------------------------------------------------------------

# candidate shift radii; K is capped at 40 so very small targets need a
# larger shift rather than more series terms
_SHIFT_RADII = (10, 13, 16, 20, 26, 34, 45, 60, 80, 110, 150, 200, 256)
_K_CAP = 40


def _plan_shift(target: float) -> tuple[float, int]:
    """Smallest tabulated radius R (with K = min(40, round(pi R))) meeting target/4."""
    for R in _SHIFT_RADII:
        K = min(_K_CAP, max(1, round(math.pi * R)))
        # float estimate of the remainder formula; the rigorous value is
        # recomputed with balls once the actual |z| lower bound is known
        b = abs(bernoulli(2 * K + 2))
        est = (
            float(b.numerator) / float(b.denominator)
            / ((2 * K - 1) * (2 * K + 2))
            * math.exp(-(2 * K + 1) * math.log(R))
            * (1 + (2 * K + 1) / 2 * math.sqrt(math.pi / K))
        )
        if est <= target / 4:
            return float(R), K
    return float(_SHIFT_RADII[-1]), _K_CAP


def _check_off_cut(z: ComplexBall, what: str) -> None:
    if z.im.contains_zero() and not z.re.is_positive():
        raise DomainError(f"{what}: ball touches the branch cut (-inf, 0]")


def log_gamma(z: ComplexBall, target: float | None = None) -> ComplexBall:
    """Enclosure of log Gamma(z), real on (0, oo), analytic off (-inf, 0].

    ``target`` is the absolute error aimed for by the truncation policy
    (default: one ulp at the working precision).  Rounding and truncation
    are both carried in the returned radius either way.
    """
    _check_off_cut(z, "log_gamma")
    if target is None:
        target = 2.0 ** (-get_precision())
    R, K = _plan_shift(target)

    re_lo = z.re.lower()
    im_mig = z.im.mignitude()
    if im_mig >= R:
        m = max(0, int(math.ceil(1 - re_lo)))
    else:
        m = max(0, int(math.ceil(R - re_lo)))
    w = z + m if m else z

    lg = (w - ComplexBall.exact(1) / 2) * w.log() - w + log2pi_ball() / 2 + stirling_mu(w, K).mu
    for k in range(m):
        lg = lg - (z + k).log()
    return lg


def gamma_abs(s: ComplexBall) -> RealBall:
    """Rigorous enclosure of |Gamma(s)| via exp(Re log Gamma(s))."""
    return log_gamma(s).re.exp()


def gamma_magnitude_bounds(sigma: RealBall, t: RealBall) -> tuple[RealBall, RealBall]:
    """Two-sided |Gamma(sigma + it)| bounds for sigma > 0, |s| >= 1.

    Returns enclosures of the bound values

        lower = 2 e^{-sigma} e^{-pi |t| / 2} (sigma^2 + t^2)^{sigma/2 - 1/4}
        upper = 3           e^{-pi |t| / 2} (sigma^2 + t^2)^{sigma/2 - 1/4}

    whose outer endpoints certify 'lower < |Gamma| < upper'.  The bound
    depends on |t| only, and t = 0 is allowed.
    """
    if not sigma.is_positive():
        raise DomainError("gamma_magnitude_bounds requires sigma > 0")
    s2 = sigma * sigma + t * t
    if not (s2 >= 1):
        raise DomainError("gamma_magnitude_bounds requires |s| >= 1")
    halfpi_t = pi_ball() * abs(t) / 2
    power = s2.pow(sigma / 2 - RealBall.from_fraction(Fraction(1, 4)))
    common = (-halfpi_t).exp() * power
    lower = 2 * (-sigma).exp() * common
    upper = 3 * common
    return lower, upper
