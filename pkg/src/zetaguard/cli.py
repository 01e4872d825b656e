"""Command-line front end: evaluation, bound lookup, and verification sweeps.

Exit codes: 0 success; 1 rigorous violation found by verify; 2 input parse
failure; 3 domain error (a validity hypothesis failed); 4 unknown bound id.

Inputs are exact decimal strings like "3", "0.5+14.1i", "-2.5-0.25i",
converted to dyadic rationals at the parse precision, so region hypotheses
certify cleanly.  Printed enclosures always carry an explicit radius, and
the printed radius is inflated to cover the decimal rounding of the printed
midpoint, so re-parsing a printed enclosure yields a ball containing the
original one.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import math
import os
import re
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from pathlib import Path

import gmpy2
from gmpy2 import mpfr

from .balls import ComplexBall, Containment, DomainError, Precision, RealBall, precision
from .chitheta import chi, theta
from .gammafn import log_gamma
from .registry import (
    UnknownBoundError,
    get_case,
    registry,
    report_csv,
    report_json,
    verify_bound,
)
from .rs import R_eval, Z_eval
from .zetafn import zeta_eval

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_UNKNOWN_ID = 4

_COMPLEX_RE = re.compile(
    r"^\s*(?P<re>[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)"
    r"(?:(?P<im>[+-](?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)[ij])?\s*$"
)


class ParseFailure(ValueError):
    pass


def _decimal_to_mpfr(text: str, bits: int) -> mpfr:
    try:
        q = Fraction(Decimal(text))
    except (InvalidOperation, ValueError) as exc:
        raise ParseFailure(f"not an exact decimal: {text!r}") from exc
    return gmpy2.mpfr(q, bits)


def parse_complex(text: str, bits: int) -> ComplexBall:
    """Parse "<re>[+|-]<im>i" into an exact dyadic point ball."""
    m = _COMPLEX_RE.match(text)
    if not m:
        raise ParseFailure(f"cannot parse complex number: {text!r}")
    re_part = _decimal_to_mpfr(m.group("re"), bits)
    im_part = _decimal_to_mpfr(m.group("im"), bits) if m.group("im") else mpfr(0)
    return ComplexBall(RealBall.exact(re_part), RealBall.exact(im_part))


def parse_real(text: str, bits: int) -> RealBall:
    m = _COMPLEX_RE.match(text)
    if not m or m.group("im"):
        raise ParseFailure(f"expected a real decimal: {text!r}")
    return RealBall.exact(_decimal_to_mpfr(m.group("re"), bits))


# --------------------------------------------------------------------------
# enclosure formatting
# --------------------------------------------------------------------------


def _format_mpfr(x: mpfr, digits: int) -> str:
    """Deterministic scientific-notation rendering with ``digits`` digits."""
    if x == 0:
        return "0"
    sign = "-" if x < 0 else ""
    ds, exp, _ = gmpy2.mpfr(abs(x)).digits(10, digits)
    return f"{sign}0.{ds}e{exp}"


def _reparse_error(x: mpfr, rendered: str) -> Fraction:
    """Exact |x - parse(rendered)|."""
    got = Fraction(Decimal(rendered.replace("e", "E"))) if rendered != "0" else Fraction(0)
    num, den = x.as_integer_ratio()
    return abs(Fraction(int(num), int(den)) - got)


def format_enclosure(z: ComplexBall, bits: int) -> dict:
    """Printable {mid_re, mid_im, rad}; the radius covers the print rounding."""
    digits = max(3, math.ceil(bits * 0.3))
    mid_re = _format_mpfr(z.re.mid, digits)
    mid_im = _format_mpfr(z.im.mid, digits)
    up = gmpy2.context(precision=64, round=gmpy2.RoundUp)
    rad = up.add(z.radius_bound(), mpfr(0))
    for x, rendered in ((z.re.mid, mid_re), (z.im.mid, mid_im)):
        err = _reparse_error(x, rendered)
        if err:
            rad = up.add(rad, gmpy2.mpfr(err, 64))
    rad_print = float(up.mul(rad, 1 + mpfr(2) ** -40)) if gmpy2.is_finite(rad) else float("inf")
    return {"mid_re": mid_re, "mid_im": mid_im, "rad": repr(rad_print)}


def reparse_enclosure(payload: dict, bits: int = 256) -> ComplexBall:
    """Inverse of format_enclosure (used by the round-trip tests)."""
    re_mid = _decimal_to_mpfr(payload["mid_re"].replace("e", "E"), bits)
    im_mid = _decimal_to_mpfr(payload["mid_im"].replace("e", "E"), bits)
    rad = mpfr(payload["rad"], 64)
    return ComplexBall(RealBall.from_midrad(re_mid, rad), RealBall.from_midrad(im_mid, rad))


# --------------------------------------------------------------------------
# eval command
# --------------------------------------------------------------------------

_NEEDS_T = {"theta", "Z"}


def _evaluate(fn: str, arg, prec: Precision) -> tuple[ComplexBall, dict]:
    extra: dict = {}
    with precision(prec.working_bits):
        if fn == "zeta":
            value = zeta_eval(arg, prec)
        elif fn == "loggamma":
            value = log_gamma(arg, target=float(prec.target_abs_error))
        elif fn == "chi":
            cv = chi(arg)
            value = cv.value
            if cv.log_branch is not None:
                extra["log_branch"] = format_enclosure(cv.log_branch, prec.working_bits)
        elif fn == "R":
            value = R_eval(arg, prec)
        elif fn == "theta":
            value = theta(arg).value
        elif fn == "Z":
            zv = Z_eval(arg, prec)
            value = ComplexBall(zv.value, zv.im_residual)
            extra["im_residual_contains_zero"] = bool(zv.im_residual.contains(0))
        else:  # pragma: no cover
            raise ValueError(fn)
    return value, extra


def cmd_eval(args, prec: Precision) -> int:
    fn = args.function
    bits = prec.working_bits
    try:
        if fn in _NEEDS_T:
            if args.t is None:
                raise ParseFailure(f"{fn} requires --t")
            arg = parse_real(args.t, bits)
            shown = args.t
        else:
            if args.s is None:
                raise ParseFailure(f"{fn} requires --s")
            arg = parse_complex(args.s, bits)
            shown = args.s
    except ParseFailure as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        value, extra = _evaluate(fn, arg, prec)
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    payload = format_enclosure(value, bits)
    payload.update(extra)
    payload["function"] = fn
    payload["input"] = shown
    payload["prec_bits"] = bits
    payload["target_met"] = float(value.radius_bound()) <= float(prec.target_abs_error)
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    elif args.format == "csv":
        print("function,input,mid_re,mid_im,rad")
        print(f"{fn},{shown},{payload['mid_re']},{payload['mid_im']},{payload['rad']}")
    else:
        imtxt = f" + {payload['mid_im']} i" if payload["mid_im"] != "0" else ""
        print(f"{fn}({shown}) = {payload['mid_re']}{imtxt}  +/- {payload['rad']}")
    return EXIT_OK


# --------------------------------------------------------------------------
# bounds command
# --------------------------------------------------------------------------


def _region_text(case) -> str:
    r = case.region
    def side(v, inf):
        return inf if v is None else f"{float(v.mid):g}"
    return (f"sigma in [{side(r.sigma_lo, '-inf')}, {side(r.sigma_hi, 'inf')}], "
            f"t in [{side(r.t_lo, '-inf')}, {side(r.t_hi, 'inf')}] (var: {case.var})")


def cmd_bounds(args, prec: Precision) -> int:
    if args.action == "list":
        for case in registry():
            print(f"{case.id:28s} {case.anchor}")
        return EXIT_OK
    try:
        case = get_case(args.id)
    except UnknownBoundError:
        print(f"unknown bound id: {args.id}", file=sys.stderr)
        return EXIT_UNKNOWN_ID
    if args.action == "show":
        print(f"id:     {case.id}")
        print(f"anchor: {case.anchor}")
        print(f"region: {_region_text(case)}")
        return EXIT_OK
    # apply
    if args.s is None:
        print("bounds apply requires --s", file=sys.stderr)
        return EXIT_PARSE
    try:
        point = parse_complex(args.s, prec.working_bits)
    except ParseFailure as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    aux = float(args.x) if args.x is not None else None
    if case.aux is not None and aux is None:
        print(f"bound {case.id} needs --x (cutoff parameter)", file=sys.stderr)
        return EXIT_DOMAIN
    in_region = case.region.contains_ball(point) is Containment.INSIDE
    if in_region and case.predicate is not None:
        in_region = bool(case.predicate(point))
    payload = {"bound_id": case.id, "in_region": in_region}
    if in_region:
        try:
            with precision(prec.working_bits):
                rhs = case.rhs(point, aux)
            payload["rhs"] = repr(float(rhs.upper()))
        except DomainError as exc:
            print(f"domain error: {exc}", file=sys.stderr)
            return EXIT_DOMAIN
    print(json.dumps(payload, sort_keys=True))
    return EXIT_OK


# --------------------------------------------------------------------------
# verify command
# --------------------------------------------------------------------------


def _write_atomic(path: Path, data: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        with contextlib.suppress(OSError):
            os.unlink(tmp)
        raise


def cmd_verify(args, prec: Precision) -> int:
    if args.bound is None and not args.all:
        print("verify requires --bound <id> or --all", file=sys.stderr)
        return EXIT_PARSE
    if args.all:
        ids = [c.id for c in registry()]
    else:
        try:
            get_case(args.bound)
        except UnknownBoundError:
            print(f"unknown bound id: {args.bound}", file=sys.stderr)
            return EXIT_UNKNOWN_ID
        ids = [args.bound]
    out_dir = Path(args.out_dir)
    jobs = args.jobs or os.cpu_count() or 1

    def run(bound_id: str):
        return verify_bound(bound_id, args.samples, args.seed, prec)

    if jobs > 1 and len(ids) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(run, ids))
    else:
        reports = [run(i) for i in ids]
    total_violations = 0
    for rep in reports:
        doc = report_json(rep)
        if args.timestamp:
            payload = json.loads(doc)
            payload["generated_at"] = __import__("datetime").datetime.now().isoformat()
            doc = json.dumps(payload, indent=2, sort_keys=True) + "\n"
        _write_atomic(out_dir / f"{rep.bound_id}.json", doc)
        _write_atomic(out_dir / f"{rep.bound_id}.csv", report_csv(rep))
        total_violations += len(rep.violations)
        status = "ok" if not rep.violations else f"VIOLATIONS={len(rep.violations)}"
        mm = float(rep.min_margin.mid) if rep.min_margin is not None else float("nan")
        print(f"{rep.bound_id:28s} samples={rep.sample_count:4d} skipped={rep.skipped:3d} "
              f"min_margin={mm:.3g} {status}")
    return EXIT_OK if total_violations == 0 else EXIT_VIOLATION


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="zetaguard",
        description="Rigorous enclosures for zeta-related functions and sweep "
                    "verification of their explicit bounds.",
    )
    ap.add_argument("--prec-bits", type=int, default=None,
                    help="working precision in bits (default 64; env ZG_PREC_BITS overrides)")
    ap.add_argument("--target-error", type=float, default=2.0 ** -53,
                    help="absolute error target for evaluation (default 2^-53)")
    ap.add_argument("--format", choices=("json", "csv", "text"), default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate a function as a rigorous enclosure")
    ev.add_argument("function", choices=("zeta", "theta", "chi", "R", "Z", "loggamma"))
    ev.add_argument("--s", help="complex argument, e.g. '0.5+14.1i'")
    ev.add_argument("--t", help="real argument (theta, Z)")

    bd = sub.add_parser("bounds", help="list, show, or apply registered bound cases")
    bd.add_argument("action", choices=("list", "show", "apply"))
    bd.add_argument("id", nargs="?", help="bound id (for show/apply)")
    bd.add_argument("--s", help="point at which to apply the bound")
    bd.add_argument("--x", help="auxiliary cutoff for the tail bounds")

    vf = sub.add_parser("verify", help="run randomized region sweeps")
    vf.add_argument("--bound", help="bound id to verify")
    vf.add_argument("--all", action="store_true", help="verify the whole registry")
    vf.add_argument("--samples", type=int, default=200)
    vf.add_argument("--seed", type=int, default=42)
    vf.add_argument("--jobs", type=int, default=None,
                    help="worker threads (default: number of processors)")
    vf.add_argument("--out-dir", default="reports")
    vf.add_argument("--timestamp", action="store_true",
                    help="stamp reports with wall-clock time (breaks byte determinism)")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    bits = args.prec_bits
    if bits is None:
        env = os.environ.get("ZG_PREC_BITS")
        bits = int(env) if env else 64
    try:
        prec = Precision(working_bits=bits, target_abs_error=args.target_error)
    except ValueError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if args.command == "eval":
        return cmd_eval(args, prec)
    if args.command == "bounds":
        if args.action in ("show", "apply") and not args.id:
            print("bounds show/apply requires an id", file=sys.stderr)
            return EXIT_PARSE
        return cmd_bounds(args, prec)
    if args.command == "verify":
        return cmd_verify(args, prec)
    return EXIT_PARSE  # pragma: no cover


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
