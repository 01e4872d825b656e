"""Ball arithmetic: midpoint-radius enclosures over MPFR.

A ``RealBall`` represents the closed interval ``[mid - rad, mid + rad]``;
a ``ComplexBall`` is a coordinatewise rectangle of two real balls.  Every
operation rounds outward, so the exact image of the operand sets is always
contained in the result.  Midpoints are computed at the current working
precision (see :func:`precision`); radii are accumulated upward at a fixed
64-bit precision.

All values are immutable and all operations are pure, so balls are safe to
share between threads.  If a radius computation overflows, the result
degrades to a full-line ball (infinite radius) instead of failing.
"""

from __future__ import annotations

import contextlib
import contextvars
import threading
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

import gmpy2
from gmpy2 import mpfr

__all__ = [
    "DomainError",
    "PoleError",
    "BoundaryStraddle",
    "RealBall",
    "ComplexBall",
    "Region",
    "Containment",
    "Precision",
    "precision",
    "get_precision",
    "ball_contains",
    "region_contains",
]


class DomainError(ValueError):
    """An operation's validity hypothesis cannot be certified on the input ball."""


class PoleError(DomainError):
    """The input ball touches a pole."""


class BoundaryStraddle(DomainError):
    """A quantity that must round to an integer straddles one."""


# --------------------------------------------------------------------------
# working precision and rounding contexts
# --------------------------------------------------------------------------

_PREC: contextvars.ContextVar[int] = contextvars.ContextVar("zetaguard_prec", default=64)

RAD_PREC = 64  # radius bookkeeping precision; always rounded up

_tls = threading.local()


def get_precision() -> int:
    """Current working precision in bits for ball midpoints."""
    return _PREC.get()


@contextlib.contextmanager
def precision(bits: int):
    """Context manager setting the working precision for ball midpoints."""
    if bits < 8:
        raise ValueError("working precision must be at least 8 bits")
    token = _PREC.set(int(bits))
    try:
        yield
    finally:
        _PREC.reset(token)


def _cx(bits: int, rnd) -> gmpy2.context:
    """Thread-local cached context (all traps disabled)."""
    try:
        cache = _tls.ctxs
    except AttributeError:
        cache = _tls.ctxs = {}
    key = (bits, rnd)
    ctx = cache.get(key)
    if ctx is None:
        ctx = gmpy2.context(precision=bits, round=rnd)
        cache[key] = ctx
    return ctx


def _rn() -> gmpy2.context:
    return _cx(_PREC.get(), gmpy2.RoundToNearest)


def _up() -> gmpy2.context:
    return _cx(RAD_PREC, gmpy2.RoundUp)


def _dn_full() -> gmpy2.context:
    return _cx(_PREC.get(), gmpy2.RoundDown)


def _up_full() -> gmpy2.context:
    return _cx(_PREC.get(), gmpy2.RoundUp)


_ZERO = mpfr(0)
_INF = mpfr("inf")


def _neg(x: mpfr) -> mpfr:
    """Exact negation.

    Bare ``-x`` and ``abs(x)`` on mpfr values round to the ambient thread
    context (53 bits by default), so they must never touch midpoints.
    """
    return _cx(max(x.precision, 2), gmpy2.RoundToNearest).minus(x)


def _absx(x: mpfr) -> mpfr:
    """Exact absolute value (see :func:`_neg`)."""
    return _neg(x) if x < 0 else x


@lru_cache(maxsize=65536)
def _exp2(k: int) -> mpfr:
    """Exact power of two, clamped upward into the exponent range."""
    if k > 1 << 30:
        return _INF
    k = max(k, -(1 << 30) + 64)
    return gmpy2.exp2(mpfr(k))


def _ulp(v: mpfr) -> mpfr:
    """Upper bound for the round-to-nearest error of computing ``v``.

    One full ulp of ``v``.  MPFR yields an exact zero only when the true
    result is zero or underflows, so a zero midpoint contributes at most
    the underflow threshold.
    """
    if not gmpy2.is_finite(v):
        return _INF
    if v == 0:
        return _exp2(-(1 << 30) + 64)
    return _exp2(gmpy2.get_exp(v) - _PREC.get())


def _as_mpfr(x) -> mpfr:
    """Exact conversion to mpfr; raises if the value cannot be represented exactly."""
    if isinstance(x, mpfr):
        return x
    if isinstance(x, int):
        v = mpfr(x, max(x.bit_length(), 2))
        if int(v) != x:
            raise ValueError(f"integer {x} not exactly representable")
        return v
    if isinstance(x, float):
        return mpfr(x, 53)
    raise TypeError(f"cannot convert {type(x).__name__} to mpfr exactly")


# --------------------------------------------------------------------------
# RealBall
# --------------------------------------------------------------------------


class RealBall:
    """Interval ``[mid - rad, mid + rad]`` with arbitrary-precision midpoint.

    The radius is a nonnegative 64-bit upper bound.  Arithmetic follows the
    usual midpoint-radius rules with one extra ulp for the midpoint rounding,
    which keeps every operation inclusion-isotonic and outward rounded.
    """

    __slots__ = ("mid", "rad")

    def __init__(self, mid: mpfr, rad: mpfr = _ZERO):
        if gmpy2.is_nan(mid) or gmpy2.is_nan(rad):
            mid, rad = _ZERO, _INF
        if gmpy2.is_infinite(mid):
            mid, rad = _ZERO, _INF
        if rad < 0:
            raise ValueError("radius must be nonnegative")
        self.mid = mid
        self.rad = rad

    # -- constructors ------------------------------------------------------

    @classmethod
    def exact(cls, x) -> "RealBall":
        """Point ball from an exactly representable value (int, float, mpfr)."""
        return cls(_as_mpfr(x))

    @classmethod
    def from_fraction(cls, q: Fraction, bits: int | None = None) -> "RealBall":
        """Enclosure of an exact rational, one ulp wide unless dyadic."""
        bits = bits or _PREC.get()
        mid = gmpy2.mpfr(q, bits)
        if mid == 0 and q != 0:
            return cls(_ZERO, _INF)
        rad = _ZERO if Fraction(*mid.as_integer_ratio()) == q else _exp2(gmpy2.get_exp(mid) - bits)
        return cls(mid, rad)

    @classmethod
    def from_midrad(cls, mid, rad) -> "RealBall":
        return cls(_as_mpfr(mid), _up().add(_as_mpfr(rad), _ZERO))

    @classmethod
    def from_endpoints(cls, lo: mpfr, hi: mpfr) -> "RealBall":
        if lo > hi:
            raise ValueError("lo > hi")
        rn, up = _rn(), _up()
        mid = rn.div(rn.add(lo, hi), mpfr(2))
        rad = up.maxnum(up.sub(hi, mid), up.sub(mid, lo))
        return cls(mid, rad)

    @classmethod
    def entire(cls) -> "RealBall":
        return cls(_ZERO, _INF)

    @classmethod
    def zero(cls) -> "RealBall":
        return cls(_ZERO)

    @classmethod
    def error_bound(cls, rad) -> "RealBall":
        """Ball centered at 0 with the given radius (an O*-style bound)."""
        r = rad.upper() if isinstance(rad, RealBall) else _as_mpfr(rad)
        return cls(_ZERO, _up().add(r, _ZERO))

    # -- basic queries -----------------------------------------------------

    def lower(self) -> mpfr:
        """Rigorous lower endpoint (rounded down)."""
        return _dn_full().sub(self.mid, self.rad)

    def upper(self) -> mpfr:
        """Rigorous upper endpoint (rounded up)."""
        return _up_full().add(self.mid, self.rad)

    def mag(self) -> mpfr:
        """Upper bound for |x| over the ball."""
        return _up().add(_absx(self.mid), self.rad)

    def mignitude(self) -> mpfr:
        """Lower bound for |x| over the ball (0 if it straddles zero)."""
        m = _cx(RAD_PREC, gmpy2.RoundDown).sub(_absx(self.mid), self.rad)
        return m if m > 0 else _ZERO

    def is_finite(self) -> bool:
        return gmpy2.is_finite(self.rad)

    def is_exact(self) -> bool:
        return self.rad == 0

    def contains(self, x) -> bool:
        """True iff the exact value ``x`` may lie in the ball (outward decision)."""
        if not self.is_finite():
            return True
        if isinstance(x, RealBall):
            return x.lower() >= self.lower() and x.upper() <= self.upper()
        if isinstance(x, Fraction):
            lo = Fraction(*self.lower().as_integer_ratio())
            hi = Fraction(*self.upper().as_integer_ratio())
            return lo <= x <= hi
        x = mpfr(x, 53) if isinstance(x, float) else _as_mpfr(x)
        return self.lower() <= x <= self.upper()

    def contains_zero(self) -> bool:
        return abs(self.mid) <= self.rad

    def intersects(self, other: "RealBall") -> bool:
        return self.lower() <= other.upper() and other.lower() <= self.upper()

    def is_positive(self) -> bool:
        """Certified x > 0 for every x in the ball."""
        return self.lower() > 0

    def is_negative(self) -> bool:
        return self.upper() < 0

    def __ge__(self, x) -> bool:
        """Certified comparison: every point of self >= every point of x."""
        return self.lower() >= (x.upper() if isinstance(x, RealBall) else _as_mpfr(x))

    def __le__(self, x) -> bool:
        return self.upper() <= (x.lower() if isinstance(x, RealBall) else _as_mpfr(x))

    def __gt__(self, x) -> bool:
        return self.lower() > (x.upper() if isinstance(x, RealBall) else _as_mpfr(x))

    def __lt__(self, x) -> bool:
        return self.upper() < (x.lower() if isinstance(x, RealBall) else _as_mpfr(x))

    def __repr__(self) -> str:
        return f"RealBall({self.mid!r} +/- {self.rad!r})"

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "RealBall":
        if isinstance(x, RealBall):
            return x
        return RealBall(_as_mpfr(x))

    def __neg__(self) -> "RealBall":
        return RealBall(_neg(self.mid), self.rad)

    def __abs__(self) -> "RealBall":
        # enclosure of |x|; clip at zero
        lo = self.mignitude()
        hi = self.mag()
        return RealBall.from_endpoints(lo, hi)

    def __add__(self, other) -> "RealBall":
        o = self._coerce(other)
        rn, up = _rn(), _up()
        mid = rn.add(self.mid, o.mid)
        rad = up.add(up.add(self.rad, o.rad), _ulp(mid))
        return RealBall(mid, rad)

    __radd__ = __add__

    def __sub__(self, other) -> "RealBall":
        o = self._coerce(other)
        rn, up = _rn(), _up()
        mid = rn.sub(self.mid, o.mid)
        rad = up.add(up.add(self.rad, o.rad), _ulp(mid))
        return RealBall(mid, rad)

    def __rsub__(self, other) -> "RealBall":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RealBall":
        o = self._coerce(other)
        rn, up = _rn(), _up()
        mid = rn.mul(self.mid, o.mid)
        rad = up.add(
            up.add(up.mul(_absx(self.mid), o.rad), up.mul(_absx(o.mid), self.rad)),
            up.add(up.mul(self.rad, o.rad), _ulp(mid)),
        )
        return RealBall(mid, rad)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RealBall":
        o = self._coerce(other)
        if not (gmpy2.is_finite(self.rad) and gmpy2.is_finite(o.rad)):
            return RealBall.entire()
        bm = _absx(o.mid)
        if bm <= o.rad:
            raise DomainError("division by a ball containing zero")
        rn, up = _rn(), _up()
        mid = rn.div(self.mid, o.mid)
        dn64 = _cx(RAD_PREC, gmpy2.RoundDown)
        den = dn64.mul(bm, dn64.sub(bm, o.rad))
        num = up.add(up.mul(bm, self.rad), up.mul(_absx(self.mid), o.rad))
        rad = up.add(up.div(num, den), _ulp(mid))
        return RealBall(mid, rad)

    def __rtruediv__(self, other) -> "RealBall":
        return self._coerce(other) / self

    # -- lattice helpers ---------------------------------------------------

    def hull(self, other: "RealBall") -> "RealBall":
        lo = min(self.lower(), other.lower())
        hi = max(self.upper(), other.upper())
        return RealBall.from_endpoints(lo, hi)

    def intersect(self, other: "RealBall") -> "RealBall":
        """Intersection (both must contain the true value for this to be sound)."""
        lo = max(self.lower(), other.lower())
        hi = min(self.upper(), other.upper())
        if lo > hi:
            raise DomainError("empty intersection of enclosures")
        return RealBall.from_endpoints(lo, hi)

    # -- elementary functions ----------------------------------------------

    def _monotone(self, fname: str, check=None, errmsg: str = "") -> "RealBall":
        if not self.is_finite():
            return RealBall.entire()
        lo, hi = self.lower(), self.upper()
        if check is not None and not check(lo):
            raise DomainError(errmsg or f"{fname} domain violated on [{lo}, {hi}]")
        dn, up = _dn_full(), _up_full()
        return RealBall.from_endpoints(getattr(dn, fname)(lo), getattr(up, fname)(hi))

    def exp(self) -> "RealBall":
        if not self.is_finite():
            return RealBall.entire()
        rn, up = _rn(), _up()
        mid = rn.exp(self.mid)
        # |e^x - e^m| <= e^m (e^r - 1) for |x - m| <= r
        spread = up.mul(_up_full().exp(self.mid), _up_full().expm1(self.rad))
        return RealBall(mid, up.add(spread, _ulp(mid)))

    def log(self) -> "RealBall":
        return self._monotone("log", check=lambda lo: lo > 0, errmsg="log of interval touching (-inf, 0]")

    def sqrt(self) -> "RealBall":
        return self._monotone("sqrt", check=lambda lo: lo >= 0, errmsg="sqrt of interval touching negatives")

    def atan(self) -> "RealBall":
        return self._monotone("atan")

    def sinh(self) -> "RealBall":
        return self._monotone("sinh")

    def cosh(self) -> "RealBall":
        if not self.is_finite():
            return RealBall.entire()
        lo, hi = self.lower(), self.upper()
        dn, up = _dn_full(), _up_full()
        top = up.maxnum(up.cosh(lo), up.cosh(hi))
        if lo <= 0 <= hi:
            return RealBall.from_endpoints(mpfr(1), top)
        bot = dn.cosh(lo) if lo > 0 else dn.cosh(hi)
        return RealBall.from_endpoints(bot, top)

    def _lipschitz1(self, fname: str) -> "RealBall":
        """Enclosure for a 1-Lipschitz function (sin, cos), clipped to [-1, 1]."""
        if not self.is_finite():
            return RealBall.from_endpoints(mpfr(-1), mpfr(1))
        rn, up = _rn(), _up()
        mid = getattr(rn, fname)(self.mid)
        rad = up.add(self.rad, _ulp(mid))
        b = RealBall(mid, rad)
        lo, hi = max(b.lower(), mpfr(-1)), min(b.upper(), mpfr(1))
        return RealBall.from_endpoints(lo, hi)

    def sin(self) -> "RealBall":
        return self._lipschitz1("sin")

    def cos(self) -> "RealBall":
        return self._lipschitz1("cos")

    def pow_int(self, k: int) -> "RealBall":
        """x**k for integer k; requires a sign-definite ball for negative/even cases."""
        if k == 0:
            return RealBall.exact(1)
        if k < 0:
            return RealBall.exact(1) / self.pow_int(-k)
        if not self.is_finite():
            return RealBall.entire()
        lo, hi = self.lower(), self.upper()
        dn, up = _dn_full(), _up_full()
        if k % 2 == 1 or lo >= 0:
            return RealBall.from_endpoints(dn.pow(lo, k), up.pow(hi, k))
        if hi <= 0:
            return RealBall.from_endpoints(dn.pow(hi, k), up.pow(lo, k))
        # even power of a straddling interval
        return RealBall.from_endpoints(_ZERO, up.maxnum(up.pow(_neg(lo), k), up.pow(hi, k)))

    def pow(self, e: "RealBall") -> "RealBall":
        """x**e = exp(e log x) for a certifiably positive base."""
        return (self._coerce(e) * self.log()).exp()

    @staticmethod
    def atan2(y: "RealBall", x: "RealBall") -> "RealBall":
        """Enclosure of atan2 over a rectangle avoiding the branch cut.

        Uses atan2(y,x) = atan(y/x) for x > 0 and
        atan2(y,x) = sign(y) pi/2 - atan(x/y) for sign-definite y, which
        covers every rectangle disjoint from the cut (-inf, 0].
        """
        if x.is_positive():
            return (y / x).atan()
        halfpi = pi_ball() / 2
        if y.is_positive():
            return halfpi - (x / y).atan()
        if y.is_negative():
            return -halfpi - (x / y).atan()
        raise DomainError("argument rectangle touches the branch cut (-inf, 0]")


# --------------------------------------------------------------------------
# cached constants
# --------------------------------------------------------------------------

_const_lock = threading.Lock()
_const_cache: dict[tuple[str, int], RealBall] = {}


def _const(name: str) -> RealBall:
    bits = _PREC.get()
    key = (name, bits)
    ball = _const_cache.get(key)
    if ball is None:
        dn, up = _dn_full(), _up_full()
        if name == "pi":
            lo, hi = dn.const_pi(), up.const_pi()
        elif name == "log2":
            lo, hi = dn.const_log2(), up.const_log2()
        elif name == "log2pi":
            d8 = _cx(bits + 8, gmpy2.RoundDown)
            u8 = _cx(bits + 8, gmpy2.RoundUp)
            lo = d8.log(d8.mul(d8.const_pi(), mpfr(2)))
            hi = u8.log(u8.mul(u8.const_pi(), mpfr(2)))
        elif name == "e":
            lo, hi = dn.exp(mpfr(1)), up.exp(mpfr(1))
        else:  # pragma: no cover
            raise KeyError(name)
        ball = RealBall.from_endpoints(lo, hi)
        with _const_lock:
            _const_cache[key] = ball
    return ball


def pi_ball() -> RealBall:
    return _const("pi")


def log2pi_ball() -> RealBall:
    """Enclosure of log(2 pi)."""
    return _const("log2pi")


def e_ball() -> RealBall:
    return _const("e")


# --------------------------------------------------------------------------
# ComplexBall
# --------------------------------------------------------------------------


class ComplexBall:
    """Coordinatewise rectangle ``re x im`` of two real balls."""

    __slots__ = ("re", "im")

    def __init__(self, re: RealBall, im: RealBall | None = None):
        self.re = re if isinstance(re, RealBall) else RealBall._coerce(re)
        self.im = im if isinstance(im, RealBall) else (RealBall.zero() if im is None else RealBall._coerce(im))

    @classmethod
    def exact(cls, re, im=0) -> "ComplexBall":
        return cls(RealBall.exact(re), RealBall.exact(im))

    @classmethod
    def entire(cls) -> "ComplexBall":
        return cls(RealBall.entire(), RealBall.entire())

    def __repr__(self) -> str:
        return f"ComplexBall({self.re!r}, {self.im!r})"

    @staticmethod
    def _coerce(z) -> "ComplexBall":
        if isinstance(z, ComplexBall):
            return z
        if isinstance(z, RealBall):
            return ComplexBall(z)
        if isinstance(z, complex):
            return ComplexBall(RealBall.exact(z.real), RealBall.exact(z.imag))
        return ComplexBall(RealBall._coerce(z))

    def is_finite(self) -> bool:
        return self.re.is_finite() and self.im.is_finite()

    def contains(self, z) -> bool:
        if isinstance(z, ComplexBall):
            return self.re.contains(z.re) and self.im.contains(z.im)
        if isinstance(z, complex):
            return self.re.contains(z.real) and self.im.contains(z.imag)
        return self.re.contains(z) and self.im.contains(0)

    def intersects(self, other: "ComplexBall") -> bool:
        return self.re.intersects(other.re) and self.im.intersects(other.im)

    def conj(self) -> "ComplexBall":
        return ComplexBall(self.re, -self.im)

    def __neg__(self) -> "ComplexBall":
        return ComplexBall(-self.re, -self.im)

    def __add__(self, other) -> "ComplexBall":
        o = self._coerce(other)
        return ComplexBall(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other) -> "ComplexBall":
        o = self._coerce(other)
        return ComplexBall(self.re - o.re, self.im - o.im)

    def __rsub__(self, other) -> "ComplexBall":
        return self._coerce(other) - self

    def __mul__(self, other) -> "ComplexBall":
        o = self._coerce(other)
        return ComplexBall(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ComplexBall":
        o = self._coerce(other)
        den = o.re * o.re + o.im * o.im
        num = self * o.conj()
        return ComplexBall(num.re / den, num.im / den)

    def __rtruediv__(self, other) -> "ComplexBall":
        return self._coerce(other) / self

    def __abs__(self) -> RealBall:
        """Rigorous enclosure of the modulus over the rectangle."""
        up = _up_full()
        hi = up.sqrt(up.add(up.square(self.re.mag()), up.square(self.im.mag())))
        relo, imlo = self.re.mignitude(), self.im.mignitude()
        dn = _dn_full()
        lo = dn.sqrt(dn.add(dn.square(relo), dn.square(imlo)))
        return RealBall.from_endpoints(lo, hi)

    def abs_squared(self) -> RealBall:
        return self.re * self.re + self.im * self.im

    def exp(self) -> "ComplexBall":
        r = self.re.exp()
        return ComplexBall(r * self.im.cos(), r * self.im.sin())

    def log(self) -> "ComplexBall":
        """Principal branch; the rectangle must avoid the cut (-inf, 0]."""
        return ComplexBall(self.abs_squared().log() / 2, self.arg())

    def arg(self) -> RealBall:
        return RealBall.atan2(self.im, self.re)

    def cos(self) -> "ComplexBall":
        return ComplexBall(self.re.cos() * self.im.cosh(), -(self.re.sin() * self.im.sinh()))

    def sin(self) -> "ComplexBall":
        return ComplexBall(self.re.sin() * self.im.cosh(), self.re.cos() * self.im.sinh())

    def mul_i(self) -> "ComplexBall":
        return ComplexBall(-self.im, self.re)

    def div_i(self) -> "ComplexBall":
        return ComplexBall(self.im, -self.re)

    def mul_real(self, x) -> "ComplexBall":
        b = RealBall._coerce(x)
        return ComplexBall(self.re * b, self.im * b)

    def pow(self, e) -> "ComplexBall":
        """z**e via exp(e log z); rectangle must avoid the cut."""
        return (self._coerce(e) * self.log()).exp()

    def hull(self, other: "ComplexBall") -> "ComplexBall":
        return ComplexBall(self.re.hull(other.re), self.im.hull(other.im))

    def radius_bound(self) -> mpfr:
        """Upper bound for the distance from the midpoint to any point of the set."""
        up = _up()
        return up.sqrt(up.add(up.square(self.re.rad), up.square(self.im.rad)))


# --------------------------------------------------------------------------
# regions and containment
# --------------------------------------------------------------------------


class Containment(Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"
    UNCERTAIN = "boundary-uncertain"


def _edge_ball(x) -> RealBall | None:
    if x is None:
        return None
    if isinstance(x, RealBall):
        return x
    return RealBall.exact(x)


@dataclass(frozen=True)
class Region:
    """Rectangle [sigma_lo, sigma_hi] x [t_lo, t_hi] in the s-plane.

    Edges may be ``None`` (unbounded) or enclosures of irrational endpoints;
    ``open_*`` marks a strict inequality.  Containment decisions are
    conservative: "inside"/"outside" only when certifiable for the whole ball.
    """

    sigma_lo: RealBall | None = None
    sigma_hi: RealBall | None = None
    t_lo: RealBall | None = None
    t_hi: RealBall | None = None
    open_sigma_lo: bool = False
    open_sigma_hi: bool = False
    open_t_lo: bool = False
    open_t_hi: bool = False

    def __post_init__(self):
        for lo, hi, name in ((self.sigma_lo, self.sigma_hi, "sigma"), (self.t_lo, self.t_hi, "t")):
            if lo is not None and hi is not None and lo.lower() > hi.upper():
                raise ValueError(f"empty {name} range")

    @staticmethod
    def make(sigma_lo=None, sigma_hi=None, t_lo=None, t_hi=None, **flags) -> "Region":
        return Region(
            _edge_ball(sigma_lo), _edge_ball(sigma_hi), _edge_ball(t_lo), _edge_ball(t_hi), **flags
        )

    def contains_ball(self, s: ComplexBall) -> Containment:
        verdicts = [
            _edge_side(s.re, self.sigma_lo, self.open_sigma_lo, lower=True),
            _edge_side(s.re, self.sigma_hi, self.open_sigma_hi, lower=False),
            _edge_side(s.im, self.t_lo, self.open_t_lo, lower=True),
            _edge_side(s.im, self.t_hi, self.open_t_hi, lower=False),
        ]
        if any(v is Containment.OUTSIDE for v in verdicts):
            return Containment.OUTSIDE
        if all(v is Containment.INSIDE for v in verdicts):
            return Containment.INSIDE
        return Containment.UNCERTAIN


def _edge_side(x: RealBall, edge: RealBall | None, is_open: bool, lower: bool) -> Containment:
    if edge is None:
        return Containment.INSIDE
    if lower:
        inside = x.lower() > edge.upper() if is_open else x.lower() >= edge.upper()
        outside = x.upper() < edge.lower() or (is_open and x.upper() <= edge.lower())
    else:
        inside = x.upper() < edge.lower() if is_open else x.upper() <= edge.lower()
        outside = x.lower() > edge.upper() or (is_open and x.lower() >= edge.upper())
    if inside:
        return Containment.INSIDE
    if outside:
        return Containment.OUTSIDE
    return Containment.UNCERTAIN


@dataclass(frozen=True)
class Precision:
    """Evaluation request: working bits plus an absolute-error target."""

    working_bits: int = 64
    target_abs_error: float = 2.0 ** -53

    def __post_init__(self):
        if self.working_bits < 8:
            raise ValueError("working_bits must be >= 8")
        if not self.target_abs_error > 0:
            raise ValueError("target_abs_error must be positive")


def ball_contains(b: RealBall, x) -> bool:
    """True iff |x - mid| <= rad, decided with outward rounding."""
    return b.contains(x)


def region_contains(r: Region, s: ComplexBall) -> Containment:
    """Tri-state containment of a complex ball in a region."""
    return r.contains_ball(s)
