"""Riemann-Siegel expansion of the auxiliary function R, and Hardy's Z.

For t > 0 and sigma > 0,

    R(s) = sum_{n<=N} n^{-s}
           + (-1)^{N-1} U a^{-sigma} { C0(p) + C1(p)/a + RS_1 },

with a = sqrt(t/2pi), N = floor(a), p = 1 - 2(a - N),
U = exp(-i((t/2) log(t/2pi) - t/2 - pi/8)),

    C0(p) = F(p) = (e^{i pi (p^2/2 + 3/8)} - i sqrt2 cos(pi p / 2)) / (2 cos pi p),
    C1(p) = F'''(p) / (12 pi^2) + i (sigma - 1/2) F'(p) / (2 pi),
    |RS_1| <= (1/7) 2^{3 sigma / 2} (1.1 / a)^2.

F is entire (the zeros of cos pi p at half-integers are removable), |F| <= 1/2
on [-1, 1], and F is even.  Values and the two needed derivatives come from
degree-3 jet arithmetic on the closed form; within |cos pi p| < 2^-6 of the
removable points a rigorously tailed Taylor model centred at 1/2 takes over
(evenness maps p near -1/2 to the same model).

Z(t) is evaluated as Re(e^{i theta(t)} zeta(1/2 + it)); the imaginary
residual is kept as a reality check.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr

from .balls import (
    BoundaryStraddle,
    ComplexBall,
    DomainError,
    Precision,
    RealBall,
    get_precision,
    pi_ball,
    log2pi_ball,
    precision,
)
from .chitheta import TaggedBound, _chi_value, theta
from .zetafn import partial_sum, zeta_eval

__all__ = [
    "RSTerms",
    "ZValue",
    "F",
    "F_derivatives",
    "rs_terms",
    "rs_correction",
    "R_eval",
    "R_left_eval",
    "zeta_via_R",
    "R_region_bound",
    "Z_eval",
]

_SING_THRESHOLD = mpfr(2) ** -6  # |cos pi p| below this -> Taylor model
_MODEL_RADIUS = Fraction(1, 4)  # Cauchy circle radius for the tail majorant


# --------------------------------------------------------------------------
# degree-3 jets over ComplexBall (value + first three derivatives)
# --------------------------------------------------------------------------


class _Jet:
    """Truncated Taylor series c0 + c1 h + c2 h^2 + c3 h^3 with ball coefficients."""

    __slots__ = ("c",)

    def __init__(self, c: list[ComplexBall]):
        self.c = c

    @classmethod
    def variable(cls, p: ComplexBall) -> "_Jet":
        one = ComplexBall.exact(1)
        zero = ComplexBall.exact(0)
        return cls([p, one, zero, zero])

    @classmethod
    def const(cls, v: ComplexBall) -> "_Jet":
        zero = ComplexBall.exact(0)
        return cls([v, zero, zero, zero])

    def __add__(self, o: "_Jet") -> "_Jet":
        return _Jet([a + b for a, b in zip(self.c, o.c)])

    def __sub__(self, o: "_Jet") -> "_Jet":
        return _Jet([a - b for a, b in zip(self.c, o.c)])

    def __mul__(self, o: "_Jet") -> "_Jet":
        a, b = self.c, o.c
        return _Jet([
            a[0] * b[0],
            a[0] * b[1] + a[1] * b[0],
            a[0] * b[2] + a[1] * b[1] + a[2] * b[0],
            a[0] * b[3] + a[1] * b[2] + a[2] * b[1] + a[3] * b[0],
        ])

    def scale(self, v) -> "_Jet":
        vb = v if isinstance(v, ComplexBall) else ComplexBall._coerce(v)
        return _Jet([ci * vb for ci in self.c])

    def __truediv__(self, o: "_Jet") -> "_Jet":
        a, b = self.c, o.c
        h0 = a[0] / b[0]
        h1 = (a[1] - h0 * b[1]) / b[0]
        h2 = (a[2] - h0 * b[2] - h1 * b[1]) / b[0]
        h3 = (a[3] - h0 * b[3] - h1 * b[2] - h2 * b[1]) / b[0]
        return _Jet([h0, h1, h2, h3])

    def exp(self) -> "_Jet":
        f = self.c
        g0 = f[0].exp()
        g1 = f[1] * g0
        g2 = (f[1] * g1 + f[2].mul_real(RealBall.exact(2)) * g0) / 2
        g3 = (f[1] * g2 + f[2].mul_real(RealBall.exact(2)) * g1 + f[3].mul_real(RealBall.exact(3)) * g0) / 3
        return _Jet([g0, g1, g2, g3])

    def cos(self) -> "_Jet":
        f = self.c
        c0, s0 = f[0].cos(), f[0].sin()
        # s' = f' cos, c' = -f' sin (coefficientwise, k g_k = sum j f_j g_{k-j})
        s1 = f[1] * c0
        c1 = -(f[1] * s0)
        s2 = (f[1] * c1 + f[2].mul_real(RealBall.exact(2)) * c0) / 2
        c2 = -(f[1] * s1 + f[2].mul_real(RealBall.exact(2)) * s0) / 2
        s3 = (f[1] * c2 + f[2].mul_real(RealBall.exact(2)) * c1 + f[3].mul_real(RealBall.exact(3)) * c0) / 3
        c3 = -(f[1] * s2 + f[2].mul_real(RealBall.exact(2)) * s1 + f[3].mul_real(RealBall.exact(3)) * s0) / 3
        return _Jet([c0, c1, c2, c3])

    def derivatives(self) -> tuple[ComplexBall, ComplexBall, ComplexBall]:
        """(f, f', f''')."""
        return self.c[0], self.c[1], self.c[3].mul_real(RealBall.exact(6))


def _F_jet_closed_form(p: ComplexBall) -> _Jet:
    """Jet of F at p via the closed form; needs |cos pi p| bounded from 0."""
    pj = _Jet.variable(p)
    pi_b = pi_ball()
    half = RealBall.from_fraction(Fraction(1, 2))
    arg = (pj * pj).scale(ComplexBall(half)) + _Jet.const(ComplexBall(RealBall.from_fraction(Fraction(3, 8))))
    e_jet = arg.scale(ComplexBall(RealBall.zero(), pi_b)).exp()
    cos_half = pj.scale(ComplexBall(pi_b * half)).cos()
    i_sqrt2 = ComplexBall(RealBall.zero(), RealBall.exact(2).sqrt())
    num = e_jet - cos_half.scale(i_sqrt2)
    den = pj.scale(ComplexBall(pi_b)).cos().scale(ComplexBall.exact(2))
    return num / den


# --------------------------------------------------------------------------
# Taylor model of F centred at 1/2
# --------------------------------------------------------------------------

_model_lock = threading.Lock()
_model_cache: dict[int, tuple[list[ComplexBall], RealBall, int]] = {}


def _factorial_ball(n: int) -> RealBall:
    return RealBall.from_fraction(Fraction(math.factorial(n)))


def _model_order(bits: int) -> int:
    # per-term decay is (delta / R0) ~ 2^-5.5 at the switch threshold
    return max(26, bits // 5 + 10)


def _f_taylor_model(bits: int) -> tuple[list[ComplexBall], RealBall, int]:
    """(coefficients f_k of F(1/2+h), sup bound M on |h| = 1/4, order K)."""
    hit = _model_cache.get(bits)
    if hit is not None:
        return hit
    with precision(max(bits, 64) * 2):
        K = _model_order(bits)
        L = 2 * K + 4
        pi_half = pi_ball() / 2
        i_ball = ComplexBall(RealBall.zero(), RealBall.exact(1))
        # numerator N(1/2+h) = i e^{i pi h/2} e^{i pi h^2/2} - i(cos(pi h/2) - sin(pi h/2))
        ipow = [ComplexBall.exact(1)]
        for _ in range(L):
            ipow.append(ipow[-1] * i_ball)
        w = [pi_half.pow_int(m) for m in range(L + 1)]
        ncoef: list[ComplexBall] = []
        for k in range(L + 1):
            e_k = ComplexBall.exact(0)
            for b in range(0, k // 2 + 1):
                a = k - 2 * b
                e_k = e_k + ipow[a + b].mul_real(w[a + b] / (_factorial_ball(a) * _factorial_ball(b)))
            e_k = e_k * i_ball
            if k % 2 == 0:
                trig = w[k] / _factorial_ball(k)
                if (k // 2) % 2 == 1:
                    trig = -trig
            else:
                trig = -(w[k] / _factorial_ball(k))
                if ((k - 1) // 2) % 2 == 1:
                    trig = -trig
            c_k = i_ball.mul_real(trig)
            ncoef.append(e_k - c_k)
        # N(1/2) = i - i sqrt2 cos(pi/4) = 0 exactly (the singularity is removable),
        # so dropping the k = 0 enclosure below loses nothing
        assert ncoef[0].contains(0) and float(ncoef[0].radius_bound()) < 2.0 ** -20
        # denominator D(1/2+h) = -2 sin(pi h)
        dcoef = [ComplexBall.exact(0)] * (L + 1)
        pib = pi_ball()
        for k in range(1, L + 1, 2):
            v = pib.pow_int(k) / _factorial_ball(k) * (-2)
            if ((k - 1) // 2) % 2 == 1:
                v = -v
            dcoef[k] = ComplexBall(v)
        # divide shifted series (both have a simple zero at h = 0)
        nt = ncoef[1:]
        dt = dcoef[1:]
        f: list[ComplexBall] = []
        for k in range(K):
            acc = nt[k]
            for j in range(k):
                acc = acc - f[j] * dt[k - j]
            f.append(acc / dt[0])
        # sup of |F| on the circle |h| = 1/4, by 48 rigorous arcs
        R0 = RealBall.from_fraction(_MODEL_RADIUS)
        M = RealBall.zero()
        two_pi = pi_ball() * 2
        for j in range(48):
            phi = RealBall.from_endpoints((two_pi * j / 48).lower(), (two_pi * (j + 1) / 48).upper())
            h = ComplexBall(R0 * phi.cos(), R0 * phi.sin())
            p = ComplexBall(RealBall.from_fraction(Fraction(1, 2))) + h
            val = abs(_F_direct(p))
            M = M.hull(val) if j else val
        M_hi = RealBall.from_endpoints(M.upper(), M.upper())
        result = (f, M_hi, K)
    with _model_lock:
        _model_cache.setdefault(bits, result)
    return _model_cache[bits]


def _F_direct(p: ComplexBall) -> ComplexBall:
    """Closed form of F (no derivatives); requires cos pi p away from 0."""
    pi_b = pi_ball()
    half = RealBall.from_fraction(Fraction(1, 2))
    arg = (p * p).mul_real(half) + ComplexBall(RealBall.from_fraction(Fraction(3, 8)))
    e = ComplexBall(RealBall.zero(), pi_b) * arg
    num = e.exp() - p.mul_real(pi_b * half).cos() * ComplexBall(RealBall.zero(), RealBall.exact(2).sqrt())
    return num / p.mul_real(pi_b).cos().mul_real(RealBall.exact(2))


def _geom_tail(M: RealBall, x: RealBall, K: int, order: int) -> RealBall:
    """Upper bound for sum_{k>=K} k(k-1)...(k-order+1) M x^{k-order}.

    These are derivatives of the geometric majorant x^K/(1-x); order 3 uses
    the Leibniz expansion of d^3/dx^3 [x^K (1-x)^{-1}].
    """
    if not (x < 1):
        raise DomainError("Taylor model evaluated outside its disk")
    om = 1 - x
    if order == 0:
        return M * x.pow_int(K) / om
    if order == 1:
        return M * (K * x.pow_int(K - 1) * om + x.pow_int(K)) / om.pow_int(2)
    if order == 3:
        total = RealBall.zero()
        for j in range(4):
            coef = math.comb(3, j) * math.factorial(3 - j) * (math.factorial(K) // math.factorial(K - j))
            total = total + coef * x.pow_int(K - j) / om.pow_int(4 - j)
        return M * total
    raise ValueError(order)


def _F_jet_taylor(p: ComplexBall) -> tuple[ComplexBall, ComplexBall, ComplexBall]:
    """(F, F', F''') near +-1/2 from the cached Taylor model at +1/2."""
    at_plus = p.re.mid > 0
    q = p if at_plus else -p  # F even, so F(p) = F(q), F'(p) = +-F'(q), F'''(p) = +-F'''(q)
    f, M, K = _f_taylor_model(get_precision())
    h = q - ComplexBall(RealBall.from_fraction(Fraction(1, 2)))
    habs = abs(h)
    R0 = RealBall.from_fraction(_MODEL_RADIUS)
    x = RealBall.from_endpoints(mpfr(0), (habs / R0).upper())
    # Horner for value and the needed derivative sums
    val = ComplexBall.exact(0)
    d1 = ComplexBall.exact(0)
    d3 = ComplexBall.exact(0)
    for k in range(K - 1, -1, -1):
        val = val * h + f[k]
        if k >= 1:
            d1 = d1 * h + f[k].mul_real(RealBall.exact(k))
        if k >= 3:
            d3 = d3 * h + f[k].mul_real(RealBall.exact(k * (k - 1) * (k - 2)))
    pad0 = _geom_tail(M, x, K, 0).upper()
    pad1 = (_geom_tail(M, x, K, 1) / R0).upper()
    pad3 = (_geom_tail(M, x, K, 3) / R0.pow_int(3)).upper()
    val = val + ComplexBall(RealBall.error_bound(pad0), RealBall.error_bound(pad0))
    d1 = d1 + ComplexBall(RealBall.error_bound(pad1), RealBall.error_bound(pad1))
    d3 = d3 + ComplexBall(RealBall.error_bound(pad3), RealBall.error_bound(pad3))
    if not at_plus:
        d1, d3 = -d1, -d3
    return val, d1, d3


def F_derivatives(p: RealBall | ComplexBall) -> tuple[ComplexBall, ComplexBall, ComplexBall]:
    """Enclosures of (F(p), F'(p), F'''(p)), total for p in [-1, 1] (and a bit beyond)."""
    pc = p if isinstance(p, ComplexBall) else ComplexBall(p)
    cos_mig = pc.mul_real(pi_ball()).cos().re.mignitude() if pc.im.contains_zero() else abs(pc.mul_real(pi_ball()).cos()).lower()
    if cos_mig >= _SING_THRESHOLD:
        return _F_jet_closed_form(pc).derivatives()
    return _F_jet_taylor(pc)


def F(p: RealBall | ComplexBall) -> ComplexBall:
    """Enclosure of the Riemann-Siegel leading coefficient F(p) = C0(p)."""
    return F_derivatives(p)[0]


# --------------------------------------------------------------------------
# Riemann-Siegel terms and R
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class RSTerms:
    a: RealBall
    N: int
    p: RealBall
    U: ComplexBall
    C0: ComplexBall
    C1: ComplexBall
    RS1_radius: RealBall


@dataclass(frozen=True)
class ZValue:
    value: RealBall
    im_residual: RealBall


def _phase_U(t: RealBall) -> ComplexBall:
    psi = t / 2 * (t.log() - log2pi_ball()) - t / 2 - pi_ball() / 8
    return ComplexBall(psi.cos(), -psi.sin())


def rs_terms(s: ComplexBall, n_override: int | None = None) -> RSTerms:
    """All Riemann-Siegel ingredients at s; requires t > 0 and sigma > 0.

    If the ball of a = sqrt(t/2pi) straddles an integer the floor is not
    certifiable and BoundaryStraddle is raised unless ``n_override`` forces
    a branch (used by the caller to hull both sides).
    """
    sigma, t = s.re, s.im
    if not t.is_positive():
        raise DomainError("rs_terms requires t > 0")
    if not sigma.is_positive():
        raise DomainError("rs_terms requires sigma > 0")
    a = (t / (pi_ball() * 2)).sqrt()
    if n_override is None:
        nlo, nhi = gmpy2.floor(a.lower()), gmpy2.floor(a.upper())
        if nlo != nhi:
            raise BoundaryStraddle("a straddles an integer; evaluate both branches")
        N = int(nlo)
    else:
        N = n_override
    p = 1 - (a - N) * 2
    U = _phase_U(t)
    c0, f1, f3 = F_derivatives(p)
    inv_12pi2 = 1 / (12 * pi_ball() * pi_ball())
    c1 = f3.mul_real(inv_12pi2) + f1.mul_i().mul_real((sigma - RealBall.exact(1) / 2) / (2 * pi_ball()))
    rs1 = (RealBall.exact(1) / 7) * (RealBall.exact(2).log() * sigma * 3 / 2).exp() * (RealBall.from_fraction(Fraction(11, 10)) / a).pow_int(2)
    rs1 = RealBall.from_endpoints(mpfr(0), rs1.upper())
    return RSTerms(a=a, N=N, p=p, U=U, C0=c0, C1=c1, RS1_radius=rs1)


def rs_correction(s: ComplexBall, n_override: int | None = None) -> ComplexBall:
    """The correction (-1)^{N-1} U a^{-sigma} (C0 + C1/a + RS_1) alone."""
    terms = rs_terms(s, n_override=n_override)
    sigma = s.re
    a_pow = (-(sigma) * terms.a.log()).exp()
    pad = RealBall.error_bound(terms.RS1_radius)
    inner = terms.C0 + terms.C1.mul_real(1 / terms.a) + ComplexBall(pad, pad)
    sign = 1 if (terms.N - 1) % 2 == 0 else -1
    return terms.U.mul_real(a_pow * sign) * inner


_T_GATE = 16  # R_eval is gated at t >= 16 pi


def _check_r_region(s: ComplexBall) -> None:
    if not s.re.is_positive():
        raise DomainError("R_eval requires sigma > 0")
    if not (s.im > pi_ball() * _T_GATE):
        raise DomainError("R_eval requires t > 16 pi")


def R_eval(s: ComplexBall, prec: Precision | None = None) -> ComplexBall:
    """Enclosure of R(s) for sigma > 0, t > 16 pi.

    When a straddles an integer both neighbouring branches are evaluated on
    the full ball and hulled; each branch's expansion is valid on its side,
    so the hull contains R over the whole ball.
    """
    _check_r_region(s)
    with precision(max(get_precision(), prec.working_bits if prec else 0)):
        try:
            terms = rs_terms(s)
            return partial_sum(s, terms.N) + rs_correction(s)
        except BoundaryStraddle:
            a_lo = int(gmpy2.floor((s.im / (pi_ball() * 2)).sqrt().lower()))
            lo_branch = partial_sum(s, a_lo) + rs_correction(s, n_override=a_lo)
            hi_branch = partial_sum(s, a_lo + 1) + rs_correction(s, n_override=a_lo + 1)
            return lo_branch.hull(hi_branch)


def zeta_via_R(s: ComplexBall) -> ComplexBall:
    """zeta(s) = R(s) + chi(s) conj(R(1 - conj(s))) for 0 < sigma < 1, t > 16 pi."""
    if not (s.re.is_positive() and s.re < 1):
        raise DomainError("zeta_via_R requires 0 < sigma < 1")
    refl = ComplexBall.exact(1) - s.conj()
    return R_eval(s) + _chi_value(s, lenient=True) * R_eval(refl).conj()


def R_left_eval(s: ComplexBall) -> ComplexBall:
    """R(s) for sigma <= 0, t >= 16 pi, via R(s) = conj((zeta(1-conj s) - R(1-conj s)) / chi(1-conj s))."""
    if not (s.re <= 0):
        raise DomainError("R_left_eval requires sigma <= 0")
    w = ComplexBall.exact(1) - s.conj()
    z = zeta_eval(w)
    r = R_eval(w)
    c = _chi_value(w, lenient=True)
    return ((z - r) / c).conj()


def R_region_bound(s: ComplexBall) -> TaggedBound:
    """Tightest applicable |R| region bound (props 5.2-5.4)."""
    sigma, t = s.re, s.im
    t16 = pi_ball() * _T_GATE
    quarter = RealBall.from_fraction(Fraction(1, 4))
    candidates: list[TaggedBound] = []
    if sigma.is_positive() and t > t16:
        candidates.append(TaggedBound(2 * (t / (pi_ball() * 2)).sqrt(), "prop5.3-right"))
    if sigma <= 0 and t >= t16:
        one_minus = 1 - sigma
        body = one_minus * one_minus + t * t
        b = 19 * t * (log2pi_ball() * (sigma - 1)).exp() * body.pow(quarter - sigma / 2)
        candidates.append(TaggedBound(b, "prop5.4-left"))
    if sigma >= 2 and t > t16:
        b = 1 + R_minus_one_bound(s)
        candidates.append(TaggedBound(b, "prop5.2-near-one"))
    if not candidates:
        raise DomainError("R_region_bound: no proposition region certifiable")
    return min(candidates, key=lambda c: c.value.upper())


def R_minus_one_bound(s: ComplexBall) -> RealBall:
    """Prop 5.2: |R(s) - 1| <= 3/2^sigma + (2pi/t)^{min(sigma,1)/2} for sigma >= 2, t > 16 pi."""
    sigma, t = s.re, s.im
    if not (sigma >= 2 and t > pi_ball() * _T_GATE):
        raise DomainError("R_minus_one_bound requires sigma >= 2, t > 16 pi")
    # min(sigma, 1) = 1 in the valid region
    return 3 * (-(RealBall.exact(2).log()) * sigma).exp() + ((pi_ball() * 2) / t).sqrt()


def Z_eval(t: RealBall, prec: Precision = Precision()) -> ZValue:
    """Hardy Z: value = Re(e^{i theta(t)} zeta(1/2+it)); im_residual must contain 0."""
    th = theta(t).value
    s = ComplexBall(RealBall.from_fraction(Fraction(1, 2)), t)
    z = zeta_eval(s, prec)
    rotated = th.mul_i().exp() * z
    return ZValue(value=rotated.re, im_residual=rotated.im)
