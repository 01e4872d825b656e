"""Catalogue of the paper's explicit inequalities, verified by region sweeps.

Every bound case pairs an enclosure-valued left-hand side with an
upper-bound-valued right-hand side on the cited validity region; a sweep
samples deterministic exact dyadic points (uniform in sigma, log-uniform in
t, 10% hugging each finite edge), evaluates both sides in ball arithmetic,
and reports margins rhs_lo - lhs_hi.  A violation is recorded only when
lhs_lo > rhs_hi, i.e. when the inequality rigorously fails at the sample;
anything ambiguous is retried at doubled precision and finally skipped.

Sampling uses the counter-based Philox generator keyed by the seed, with
one jumped stream per case, so identical (id, n, seed, prec) inputs give
byte-identical serialized reports.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import gmpy2
from gmpy2 import mpfr
from numpy.random import Generator, Philox

from .balls import (
    ComplexBall,
    Containment,
    DomainError,
    Precision,
    RealBall,
    Region,
    pi_ball,
    log2pi_ball,
    e_ball,
    precision,
)
from .chitheta import chi_abs, theta, theta_growth_bound
from .gammafn import gamma_abs
from .rs import (
    F,
    F_derivatives,
    R_eval,
    R_left_eval,
    R_minus_one_bound,
    rs_correction,
    rs_terms,
)
from .zetafn import zeta_eval, zeta_minus_partial_sum

__all__ = [
    "BoundCase",
    "VerificationReport",
    "UnknownBoundError",
    "registry",
    "get_case",
    "sample_region",
    "verify_bound",
    "report_json",
    "report_csv",
]


class UnknownBoundError(KeyError):
    """Requested bound id is not registered."""


SIGMA_CAP = 20.0
T_CAP = 1.0e4
T_FLOOR = 0.5
GRID = 2.0 ** -20  # dyadic quantum for sample coordinates


@dataclass(frozen=True)
class BoundCase:
    """One machine-checkable inequality: lhs(s) <= rhs(s) on a region.

    ``var`` says how sample coordinates are interpreted: "s" (the s-plane),
    "t-plane" (complex t for the theta bound), "p" (the Riemann-Siegel
    variable on [-1,1]; second coordinate unused), "sigma-p" (first is
    sigma, second is p), and "s-x" (s-plane plus an auxiliary cutoff x).
    """

    id: str
    anchor: str
    region: Region
    lhs: Callable[[ComplexBall, float | None], RealBall]
    rhs: Callable[[ComplexBall, float | None], RealBall]
    var: str = "s"
    predicate: Callable[[ComplexBall], bool] | None = None
    aux: str | None = None  # "x-of-s" (x = u |s|) or "x-log" (log-uniform in [1, 2000])
    t_scale: str = "log"  # "log" | "uniform"


@dataclass(frozen=True)
class VerificationReport:
    bound_id: str
    anchor: str
    sample_count: int
    seed: int
    stream: int
    prec_bits: int
    min_margin: RealBall | None
    median_margin: float | None
    violations: list[dict]
    skipped: int
    rows: list[tuple] = field(repr=False, default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


# --------------------------------------------------------------------------
# rhs / lhs helpers
# --------------------------------------------------------------------------


def _quarter() -> RealBall:
    return RealBall.from_fraction(Fraction(1, 4))


def _half() -> RealBall:
    return RealBall.from_fraction(Fraction(1, 2))


def _gamma_lower_formula(s: ComplexBall, _x=None) -> RealBall:
    sigma, t = s.re, s.im
    s2 = sigma * sigma + t * t
    return 2 * (-sigma).exp() * (-(pi_ball() * abs(t) / 2)).exp() * s2.pow(sigma / 2 - _quarter())


def _gamma_upper_formula(s: ComplexBall, _x=None) -> RealBall:
    sigma, t = s.re, s.im
    s2 = sigma * sigma + t * t
    return 3 * (-(pi_ball() * abs(t) / 2)).exp() * s2.pow(sigma / 2 - _quarter())


def _chi_2pie_formula(s: ComplexBall, _x=None) -> RealBall:
    sigma = s.re
    return (pi_ball() * e_ball() * 2).pow(sigma) * abs(s).pow(_half() - sigma)


def _chi_combined_formula(s: ComplexBall, _x=None) -> RealBall:
    sigma, t = s.re, s.im
    s2 = sigma * sigma + t * t
    twopie = pi_ball() * e_ball() * 2
    return s2.pow(_quarter()) * (twopie * twopie / s2).pow(sigma / 2)


def _chi_fourthroot_formula(s: ComplexBall, _x=None) -> RealBall:
    s2 = s.re * s.re + s.im * s.im
    return s2.pow(_quarter())


def _chi_left_formula(s: ComplexBall, _x=None) -> RealBall:
    sigma, t = s.re, s.im
    om = 1 - sigma
    return 6 * (log2pi_ball() * (sigma - 1)).exp() * (om * om + t * t).pow(_quarter() - sigma / 2)


def _zeta_42_formula(s: ComplexBall, _x=None) -> RealBall:
    sigma, t = s.re, s.im
    om = 1 - sigma
    return 2 * (log2pi_ball() * sigma).exp() * (om * om + t * t).pow(_quarter() - sigma / 2)


def _r_54_formula(s: ComplexBall, _x=None) -> RealBall:
    sigma, t = s.re, s.im
    om = 1 - sigma
    return 19 * t * (log2pi_ball() * (sigma - 1)).exp() * (om * om + t * t).pow(_quarter() - sigma / 2)


def _rs1_formula(s: ComplexBall, _x=None) -> RealBall:
    sigma, t = s.re, s.im
    a = (t / (pi_ball() * 2)).sqrt()
    return (RealBall.exact(1) / 7) * (RealBall.exact(2).log() * sigma * 3 / 2).exp() * (
        RealBall.from_fraction(Fraction(11, 10)) / a
    ).pow_int(2)


import contextvars

_SWEEP_PREC: contextvars.ContextVar[Precision] = contextvars.ContextVar(
    "zetaguard_sweep_prec", default=Precision()
)


def _sweep_prec(bits: int, attempt: int) -> Precision:
    """Evaluation budget for one sweep attempt; tighter on every retry."""
    return Precision(working_bits=bits, target_abs_error=2.0 ** -(12 + 10 * attempt))


def _c1_of(sigma: RealBall, p: RealBall) -> ComplexBall:
    _, f1, f3 = F_derivatives(p)
    return f3.mul_real(1 / (12 * pi_ball() * pi_ball())) + f1.mul_i().mul_real(
        (sigma - _half()) / (2 * pi_ball())
    )


# --------------------------------------------------------------------------
# the registry
# --------------------------------------------------------------------------

_registry_cache: tuple[BoundCase, ...] | None = None


def registry() -> tuple[BoundCase, ...]:
    """The complete, deterministic, duplicate-free list of bound cases."""
    global _registry_cache
    if _registry_cache is not None:
        return _registry_cache

    pi16 = pi_ball() * 16
    pi3 = pi_ball() * 3
    sqrt3 = RealBall.exact(3).sqrt()
    cases: list[BoundCase] = []

    def add(case: BoundCase) -> None:
        cases.append(case)

    # -- section 2: Gamma and chi --------------------------------------
    add(BoundCase(
        id="prop2.2-gamma-lower",
        anchor="Prop. 2.2: 2 e^-sigma e^{-pi|t|/2} (sigma^2+t^2)^{sigma/2-1/4} < |Gamma(sigma+it)|, sigma>0, |s|>=1 (t=0 allowed by continuity)",
        region=Region.make(GRID, SIGMA_CAP, GRID, T_CAP, open_sigma_lo=True),
        lhs=_gamma_lower_formula,
        rhs=lambda s, _x=None: gamma_abs(s),
        predicate=lambda s: bool(abs(s) >= 1),
    ))
    add(BoundCase(
        id="prop2.2-gamma-upper",
        anchor="Prop. 2.2: |Gamma(sigma+it)| < 3 e^{-pi|t|/2} (sigma^2+t^2)^{sigma/2-1/4}, sigma>0, |s|>=1 (t=0 allowed by continuity)",
        region=Region.make(GRID, SIGMA_CAP, GRID, T_CAP, open_sigma_lo=True),
        lhs=lambda s, _x=None: gamma_abs(s),
        rhs=_gamma_upper_formula,
        predicate=lambda s: bool(abs(s) >= 1),
    ))
    add(BoundCase(
        id="prop2.3-chi-2pie",
        anchor="Prop. 2.3: |chi(sigma+it)| <= (2 pi e)^sigma |s|^{1/2-sigma}, sigma>0, t>1/2",
        region=Region.make(GRID, SIGMA_CAP, 0.5, T_CAP, open_sigma_lo=True, open_t_lo=True),
        lhs=lambda s, _x=None: chi_abs(s),
        rhs=_chi_2pie_formula,
    ))
    add(BoundCase(
        id="prop2.3-chi-combined",
        anchor="Prop. 2.3 proof, eq. (chimenos2): |chi(s)| <= (sigma^2+t^2)^{1/4} (4 pi^2 e^2/(sigma^2+t^2))^{sigma/2}, sigma>0, t>1/2",
        region=Region.make(GRID, SIGMA_CAP, 0.5, T_CAP, open_sigma_lo=True, open_t_lo=True),
        lhs=lambda s, _x=None: chi_abs(s),
        rhs=_chi_combined_formula,
    ))
    add(BoundCase(
        id="prop2.3-chi-fourth-root",
        anchor="Prop. 2.3, eq. (chimas): |chi(s)| <= (sigma^2+t^2)^{1/4}, sigma>0, t>1/2, |s|>=2 pi e",
        region=Region.make(GRID, SIGMA_CAP, 0.5, T_CAP, open_sigma_lo=True, open_t_lo=True),
        lhs=lambda s, _x=None: chi_abs(s),
        rhs=_chi_fourthroot_formula,
        predicate=lambda s: bool(abs(s) >= pi_ball() * e_ball() * 2),
    ))
    add(BoundCase(
        id="prop2.4-chi-left",
        anchor="Prop. 2.4: |chi(sigma+it)| <= 6 (2 pi)^{sigma-1} ((1-sigma)^2+t^2)^{1/4-sigma/2}, sigma<=0, t>=1/2; "
               "t <= -1/2 follows by conjugate symmetry",
        region=Region.make(-SIGMA_CAP, 0.0, 0.5, T_CAP),
        lhs=lambda s, _x=None: chi_abs(s),
        rhs=_chi_left_formula,
    ))
    # -- section 3: theta ------------------------------------------------
    add(BoundCase(
        id="prop3.1-theta-growth",
        anchor="Prop. 3.1: |theta(t)| <= 2 |t| log |t| for |t| >= 4, |Re t| >= 1; Re t <= -1 by oddness",
        region=Region.make(1.0, 1000.0, -40.0, 40.0),
        lhs=lambda s, _x=None: abs(theta(s).value),
        rhs=lambda s, _x=None: theta_growth_bound(s),
        var="t-plane",
        predicate=lambda s: bool(abs(s) >= 4),
        t_scale="uniform",
    ))
    # -- section 4: zeta -------------------------------------------------
    add(BoundCase(
        id="prop4.1-right-halfplane",
        anchor="Prop. 4.1: |zeta(sigma+it)| < 2 for sigma >= 2",
        region=Region.make(2.0, SIGMA_CAP, T_FLOOR, T_CAP),
        lhs=_abs_zeta_case,
        rhs=lambda s, _x=None: RealBall.exact(2),
    ))
    add(BoundCase(
        id="prop4.2-left-halfplane",
        anchor="Prop. 4.2: |zeta(sigma+it)| <= 2 (2 pi)^sigma ((1-sigma)^2+t^2)^{1/4-sigma/2}, sigma<=-1, |t|>=1/2",
        region=Region.make(-SIGMA_CAP, -1.0, 0.5, T_CAP),
        lhs=_abs_zeta_case,
        rhs=_zeta_42_formula,
    ))
    add(BoundCase(
        id="prop4.3-critical-strip",
        anchor="Prop. 4.3: |zeta(s)| <= 1 + t/sigma for 0 < sigma <= 2, t >= 2",
        region=Region.make(GRID, 2.0, 2.0, T_CAP, open_sigma_lo=True),
        lhs=_abs_zeta_case,
        rhs=lambda s, _x=None: 1 + s.im / s.re,
    ))
    add(BoundCase(
        id="prop4.4-right",
        anchor="Cor. 4.4: |zeta(sigma+it)| <= 3t for sigma >= 1/2, t >= 2",
        region=Region.make(0.5, SIGMA_CAP, 2.0, T_CAP),
        lhs=_abs_zeta_case,
        rhs=lambda s, _x=None: 3 * s.im,
    ))
    # -- section 5: R ----------------------------------------------------
    add(BoundCase(
        id="thm5.1-strip",
        anchor="Thm. 5.1: |R(s) - sum_{n<=a} n^-s| <= (t/2pi)^{-sigma/2}, 0<=sigma<=1, t>=3pi",
        region=Region.make(GRID, 1.0, pi3, T_CAP, open_sigma_lo=True),
        lhs=lambda s, _x=None: abs(rs_correction(s)),
        rhs=lambda s, _x=None: (s.im / (pi_ball() * 2)).pow(-(s.re) / 2),
    ))
    add(BoundCase(
        id="thm5.1-right",
        anchor="Thm. 5.1: |R(s) - sum_{n<=a} n^-s| <= (t/2pi)^{-1/2}, sigma>=1, t>=16pi",
        region=Region.make(1.0, SIGMA_CAP, pi16, T_CAP),
        lhs=lambda s, _x=None: abs(rs_correction(s)),
        rhs=lambda s, _x=None: (s.im / (pi_ball() * 2)).pow(-_half()),
    ))
    add(BoundCase(
        id="rs-c0-cap",
        anchor="[A1] Thm. 6.1 as cited: |C0(p)| = |F(p)| <= 1/2 on [-1, 1]",
        region=Region.make(-1.0, 1.0, 0.0, 0.0),
        lhs=lambda s, _x=None: abs(F(s.re)),
        rhs=lambda s, _x=None: _half(),
        var="p",
    ))
    add(BoundCase(
        id="rs-c1-cap",
        anchor="|C1(p)| <= 1/(6 pi) + |sigma - 1/2|/(2 pi) (from |F'''| <= 2 pi, |F'| <= 1)",
        region=Region.make(0.0, 8.0, -1.0, 1.0),
        lhs=lambda s, _x=None: abs(_c1_of(s.re, s.im)),
        rhs=lambda s, _x=None: 1 / (6 * pi_ball()) + abs(s.re - _half()) / (2 * pi_ball()),
        var="sigma-p",
        t_scale="uniform",
    ))
    add(BoundCase(
        id="rs-rs1-cap",
        anchor="[A1] Thm. 4.2 as cited: |RS_1| <= (1/7) 2^{3 sigma/2} (1.1/a)^2; "
               "the radius applied by rs_terms may exceed the recomputed formula only by rounding",
        region=Region.make(GRID, 8.0, pi16, T_CAP, open_sigma_lo=True),
        lhs=lambda s, _x=None: RealBall.exact(rs_terms(s).RS1_radius.upper()),
        rhs=lambda s, _x=None: _rs1_formula(s) * (1 + RealBall.exact(mpfr(2) ** -32)),
    ))
    add(BoundCase(
        id="prop5.2-R-near-one",
        anchor="Prop. 5.2: |R(s) - 1| <= 3/2^sigma + (2pi/t)^{min(sigma,1)/2}, sigma>=2, t>16pi",
        region=Region.make(2.0, SIGMA_CAP, pi16, T_CAP, open_t_lo=True),
        lhs=lambda s, _x=None: abs(R_eval(s) - ComplexBall.exact(1)),
        rhs=lambda s, _x=None: R_minus_one_bound(s),
    ))
    add(BoundCase(
        id="prop5.3-R-right",
        anchor="Prop. 5.3: |R(sigma+it)| <= 2 sqrt(t/2pi), sigma>0, t>16pi",
        region=Region.make(GRID, SIGMA_CAP, pi16, T_CAP, open_sigma_lo=True, open_t_lo=True),
        lhs=lambda s, _x=None: abs(R_eval(s)),
        rhs=lambda s, _x=None: 2 * (s.im / (pi_ball() * 2)).sqrt(),
    ))
    add(BoundCase(
        id="prop5.4-R-left",
        anchor="Prop. 5.4: |R(sigma+it)| <= 19 t (2pi)^{sigma-1} ((1-sigma)^2+t^2)^{1/4-sigma/2}, sigma<=0, t>=16pi",
        region=Region.make(-SIGMA_CAP, 0.0, pi16, T_CAP),
        lhs=lambda s, _x=None: abs(R_left_eval(s)),
        rhs=_r_54_formula,
    ))
    # -- final proposition: zeta tails ------------------------------------
    add(BoundCase(
        id="finalprop-tail-seven-s",
        anchor="Final Prop.: |zeta(s) - sum_{n<=x} n^-s| <= 7 |s| x^-sigma, sigma>=0, |s-1|>=2, 0<x<=|s|",
        region=Region.make(0.0, SIGMA_CAP, T_FLOOR, T_CAP),
        lhs=_tail_lhs,
        rhs=lambda s, x: 7 * abs(s) * RealBall.exact(mpfr(x, 53)).pow(-(s.re)),
        predicate=lambda s: bool(abs(s - 1) >= 2),
        aux="x-of-s",
    ))
    add(BoundCase(
        id="finalprop-tail-sigma-gt1",
        anchor="Final Prop.: |zeta(s) - sum_{n<=x} n^-s| <= x^{1-sigma}/(sigma-1) (1+(sigma-1)/x), sigma>1",
        region=Region.make(1.0, SIGMA_CAP, T_FLOOR, T_CAP, open_sigma_lo=True),
        lhs=_tail_lhs,
        rhs=_tail_gt1_rhs,
        aux="x-log",
    ))
    # -- in-proof numerical claim -----------------------------------------
    add(BoundCase(
        id="zeta-2sqrt-claim",
        anchor='Final Prop. proof: "a numerical study shows that |zeta(s)| <= 2 |s|^{1/2}" on [0,1/2] x [sqrt3, 16pi]',
        region=Region.make(0.0, 0.5, sqrt3, pi16),
        lhs=_abs_zeta_case,
        rhs=lambda s, _x=None: 2 * abs(s).sqrt(),
    ))

    ids = [c.id for c in cases]
    assert len(ids) == len(set(ids)) and len(ids) >= 19
    _registry_cache = tuple(cases)
    return _registry_cache


def _abs_zeta_case(s: ComplexBall, _x=None) -> RealBall:
    return abs(zeta_eval(s, _SWEEP_PREC.get()))


def _tail_lhs(s: ComplexBall, x: float) -> RealBall:
    return abs(zeta_minus_partial_sum(s, math.floor(x), _SWEEP_PREC.get()))


def _tail_gt1_rhs(s: ComplexBall, x: float) -> RealBall:
    sm1 = s.re - 1
    xb = RealBall.exact(mpfr(x, 53))
    return xb.pow(-sm1) / sm1 * (1 + sm1 / xb)


def get_case(bound_id: str) -> BoundCase:
    for case in registry():
        if case.id == bound_id:
            return case
    raise UnknownBoundError(bound_id)


# --------------------------------------------------------------------------
# sampling
# --------------------------------------------------------------------------


def _quantize(v: float, lo: float, hi: float) -> mpfr:
    """Snap to the dyadic grid, strictly inside (lo, hi)."""
    q = math.floor(v / GRID) * GRID
    q = min(max(q, lo + GRID), hi - GRID)
    return mpfr(q, 53)


def _edge_val(edge, default: float) -> float:
    if edge is None:
        return default
    return float(edge.upper())


def sample_region(
    r: Region,
    n: int,
    seed: int,
    stream: int = 0,
    t_scale: str = "log",
    edge_fraction: float = 0.10,
) -> list[tuple[mpfr, mpfr]]:
    """n deterministic exact dyadic points strictly interior to r.

    Infinite edges are truncated at sigma in [-20, 20], t in [0.5, 1e4].
    ``edge_fraction`` of the points are placed within 1e-3 of each finite
    boundary in turn, since hypothesis edges are where bounds fail first.
    """
    if n < 1:
        raise DomainError("sample_region requires n >= 1")
    slo = float(r.sigma_lo.upper()) if r.sigma_lo is not None else -SIGMA_CAP
    shi = float(r.sigma_hi.lower()) if r.sigma_hi is not None else SIGMA_CAP
    tlo = float(r.t_lo.upper()) if r.t_lo is not None else T_FLOOR
    thi = float(r.t_hi.lower()) if r.t_hi is not None else T_CAP
    if not (slo < shi and (tlo < thi or tlo == thi)):
        raise DomainError("sample_region: empty region")
    gen = Generator(Philox(key=seed).jumped(stream))
    finite_edges = []
    if r.sigma_lo is not None:
        finite_edges.append("slo")
    if r.sigma_hi is not None:
        finite_edges.append("shi")
    if r.t_lo is not None and tlo > 0:
        finite_edges.append("tlo")
    if r.t_hi is not None:
        finite_edges.append("thi")
    n_edge = int(n * edge_fraction) if finite_edges else 0
    pts: list[tuple[mpfr, mpfr]] = []
    for i in range(n):
        u1 = gen.integers(0, 1 << 53) / float(1 << 53)
        u2 = gen.integers(0, 1 << 53) / float(1 << 53)
        sigma = slo + u1 * (shi - slo)
        if t_scale == "log" and tlo > 0:
            t = math.exp(math.log(tlo + GRID) + u2 * (math.log(thi) - math.log(tlo + GRID)))
        else:
            t = tlo + u2 * (thi - tlo)
        if i < n_edge:
            edge = finite_edges[i % len(finite_edges)]
            u3 = gen.integers(0, 1 << 53) / float(1 << 53)
            off = 1.0e-3 * u3 + 2 * GRID
            if edge == "slo":
                sigma = slo + off
            elif edge == "shi":
                sigma = shi - off
            elif edge == "tlo":
                t = tlo + off
            elif edge == "thi":
                t = thi - off
        if tlo == thi:
            pts.append((_quantize(sigma, slo, shi), mpfr(tlo, 53)))
        else:
            pts.append((_quantize(sigma, slo, shi), _quantize(t, tlo, thi)))
    return pts


# --------------------------------------------------------------------------
# verification sweeps
# --------------------------------------------------------------------------


def _fmt(v) -> str:
    return repr(float(v))


def verify_bound(
    bound_id: str,
    n: int,
    seed: int,
    prec: Precision = Precision(working_bits=128),
    max_retries: int = 3,
) -> VerificationReport:
    """Sweep one bound case over n deterministic samples.

    Each sample is retried at doubled working precision (and a tighter
    evaluation target) up to ``max_retries`` times before being skipped.
    """
    case = get_case(bound_id)
    stream = [c.id for c in registry()].index(bound_id)
    want_aux = case.aux is not None
    gen = Generator(Philox(key=seed).jumped(1000 + stream))
    raw = sample_region(case.region, 4 * n, seed, stream=stream, t_scale=case.t_scale)
    margins: list[float] = []
    rows: list[tuple] = []
    violations: list[dict] = []
    skipped = 0
    taken = 0
    for sigma, t in raw:
        if taken >= n:
            break
        point = ComplexBall(RealBall.exact(sigma), RealBall.exact(t))
        if case.region.contains_ball(point) is not Containment.INSIDE:
            continue
        if case.predicate is not None and not case.predicate(point):
            continue
        taken += 1
        aux = None
        if want_aux:
            u = gen.integers(0, 1 << 53) / float(1 << 53)
            if case.aux == "x-of-s":
                s_abs = float(abs(point).lower())
                aux = max(math.floor(max(u, 0.05) * s_abs * (1 << 20)) / float(1 << 20), GRID)
            else:  # "x-log"
                aux = math.floor(math.exp(u * math.log(2000.0)) * (1 << 20)) / float(1 << 20)
        outcome = None
        bits = prec.working_bits
        for attempt in range(max_retries + 1):
            token = _SWEEP_PREC.set(_sweep_prec(bits, attempt))
            try:
                with precision(bits):
                    lv = case.lhs(point, aux)
                    rv = case.rhs(point, aux)
            except DomainError:
                bits *= 2
                continue
            finally:
                _SWEEP_PREC.reset(token)
            lhs_hi, lhs_lo = lv.upper(), lv.lower()
            rhs_lo, rhs_hi = rv.lower(), rv.upper()
            if rhs_lo >= lhs_hi:
                dn = gmpy2.context(precision=64, round=gmpy2.RoundDown)
                outcome = ("pass", float(dn.sub(rhs_lo, lhs_hi)), lhs_hi, rhs_lo)
                break
            if lhs_lo > rhs_hi:
                outcome = ("violation", float(gmpy2.context(precision=64).sub(rhs_lo, lhs_hi)), lhs_hi, rhs_lo)
                break
            bits *= 2
        if outcome is None:
            skipped += 1
            continue
        kind, margin, lhs_hi, rhs_lo = outcome
        margins.append(margin)
        rows.append((float(sigma), float(t), float(lhs_hi), float(rhs_lo), margin))
        if kind == "violation":
            violations.append({
                "point": {"sigma": _fmt(sigma), "t": _fmt(t), **({"x": _fmt(aux)} if aux is not None else {})},
                "lhs_lo": _fmt(float(lv.lower())),
                "lhs_hi": _fmt(float(lhs_hi)),
                "rhs_lo": _fmt(float(rhs_lo)),
                "rhs_hi": _fmt(float(rv.upper())),
            })
    violations.sort(key=lambda v: (float(v["point"]["sigma"]), float(v["point"]["t"])))
    rows.sort(key=lambda r: (r[0], r[1]))
    min_margin = RealBall.exact(mpfr(min(margins), 53)) if margins else None
    median = sorted(margins)[(len(margins) - 1) // 2] if margins else None
    return VerificationReport(
        bound_id=bound_id,
        anchor=case.anchor,
        sample_count=taken,
        seed=seed,
        stream=stream,
        prec_bits=prec.working_bits,
        min_margin=min_margin,
        median_margin=median,
        violations=violations,
        skipped=skipped,
        rows=rows,
    )


def report_json(rep: VerificationReport) -> str:
    payload = {
        "bound_id": rep.bound_id,
        "anchor": rep.anchor,
        "samples": rep.sample_count,
        "seed": rep.seed,
        "stream": rep.stream,
        "prec_bits": rep.prec_bits,
        "min_margin": {
            "mid": _fmt(float(rep.min_margin.mid)) if rep.min_margin else None,
            "rad": _fmt(float(rep.min_margin.rad)) if rep.min_margin else None,
        },
        "median_margin": _fmt(rep.median_margin) if rep.median_margin is not None else None,
        "violations": rep.violations,
        "skipped": rep.skipped,
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def report_csv(rep: VerificationReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["sigma", "t", "lhs_hi", "rhs_lo", "margin"])
    for row in rep.rows:
        w.writerow([repr(v) for v in row])
    return buf.getvalue()
