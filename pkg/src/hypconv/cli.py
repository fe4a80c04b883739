"""Command-line front end.

Subcommands::

    hypconv kappa    --a A --b B --c C [--method closed|numeric|both] [--json]
    hypconv classify --a A --b B --c C [--json]
    hypconv scan     --a a0:a1:n --b b0:b1:n --c c0:c1:n [--method ...] --out FILE
    hypconv profile  --a A --b B --c C --r R [--samples N] [--out FILE]
    hypconv eval     --a A --b B --c C --r R [--theta T] [--json]

Exit codes: 0 success, 1 bad parameters, 2 no verdict (uncovered regime
with the closed method, an inconclusive numeric scan, or a series that
hit the HYPCONV_MAX_TERMS cap), 3 internal
inconsistency, 4 (zF)' vanishes.
"""

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .convexity import Kind, convexity_predicates, kappa_closed_form
from .errors import DerivativeZero, InconclusiveError, InconsistencyError, TermCapExceeded
from .hyp2f1 import Params, eval_auto
from .oracle import boundary_profile, kappa_numeric

__all__ = ["OutputRecord", "main", "parse_range", "run_kappa", "run_classify", "scan_rows"]

EXIT_OK = 0
EXIT_BAD_PARAMS = 1
EXIT_NO_VERDICT = 2
EXIT_INCONSISTENT = 3
EXIT_DERIVATIVE_ZERO = 4

# Closed form and oracle are called consistent when they differ by less
# than this plus the oracle's own uncertainty.
AGREEMENT_TOL = 5e-3

SCAN_COLUMNS = ("a", "b", "c", "kind", "kappa", "regime", "warnings")


class BadParameters(ValueError):
    """Raised for parameters the CLI refuses; the message names the flag."""


@dataclass
class OutputRecord:
    """One CLI result, serialised as a flat JSON object.

    ``kappa`` is ``None`` unless ``kind`` is finite or lower-bound.
    ``oracle`` holds {radii, minima, trend} when the numeric scan ran.
    """

    a: float
    b: float
    c: float
    method: str
    kind: str
    kappa: float = None
    uncertainty: float = None
    regime: str = "none"
    preconditions: list = field(default_factory=list)
    also_fired: list = field(default_factory=list)
    oracle: dict = None
    discrepancy: float = None
    verdict: str = None
    predicates: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    def to_json(self, indent=None):
        return json.dumps(asdict(self), indent=indent, allow_nan=False)

    @classmethod
    def from_json(cls, text):
        return cls(**json.loads(text))


# ---------------------------------------------------------------- helpers


def make_params(a, b, c, allow_degenerate=False):
    """Build :class:`Params`, refusing poles and inadmissible triples."""
    try:
        p = Params(a, b, c)
    except ValueError as exc:
        raise BadParameters(str(exc)) from exc
    if not allow_degenerate and not p.admissible:
        raise BadParameters(
            "inadmissible parameters (a, b, c) = (%g, %g, %g): %s" % (a, b, c, ", ".join(p.violated()))
        )
    return p


def parse_range(text):
    """``"x"`` or ``"x0:x1:n"`` (n points, endpoints included) to a list.

    Examples
    --------
    >>> parse_range("1:3:5")
    [1.0, 1.5, 2.0, 2.5, 3.0]
    >>> parse_range("0.5")
    [0.5]
    """
    parts = text.split(":")
    if len(parts) not in (1, 3):
        raise ValueError("range must be x or x0:x1:n, got %r" % text)
    bounds = [float(x) for x in parts[:2]]
    if not all(math.isfinite(v) for v in bounds):
        raise ValueError("range bounds must be finite: %r" % text)
    if len(parts) == 1:
        return bounds
    n = int(parts[2])
    if n < 1:
        raise ValueError("range count must be at least 1: %r" % text)
    return bounds[:1] if n == 1 else [float(x) for x in np.linspace(bounds[0], bounds[1], n)]


def _kappa_fields(kappa):
    if kappa.kind in (Kind.FINITE, Kind.LOWER_BOUND):
        return kappa.kind.value, float(kappa.value)
    return kappa.kind.value, None


def _oracle_summary(scan):
    if scan is None:
        return None
    return {"radii": list(scan.radii), "minima": list(scan.minima), "trend": scan.trend}


def _same_verdict(closed, numeric, unc):
    if closed.kind is Kind.MINUS_INFINITY:
        return numeric.kind is Kind.MINUS_INFINITY, None
    if closed.kind is Kind.FINITE:
        if numeric.kind is not Kind.FINITE:
            return False, None
        gap = abs(closed.value - numeric.value)
        return gap <= AGREEMENT_TOL + (unc or 0.0), gap
    if closed.kind is Kind.LOWER_BOUND and numeric.kind is Kind.FINITE:
        return numeric.value >= closed.value - AGREEMENT_TOL - (unc or 0.0), None
    return True, None


# ---------------------------------------------------------------- commands


def run_kappa(p, method="closed", tol=1e-9):
    """Compute kappa with the chosen method.

    Returns
    -------
    (OutputRecord, exit_code)
    """
    rec = OutputRecord(p.a, p.b, p.c, method, Kind.UNCOVERED.value)
    closed = None
    code = EXIT_OK
    if method in ("closed", "both"):
        try:
            closed, match = kappa_closed_form(p, tol)
        except InconsistencyError as exc:
            rec.kind = "inconsistent"
            rec.warnings.append(str(exc))
            return rec, EXIT_INCONSISTENT
        rec.kind, rec.kappa = _kappa_fields(closed)
        rec.regime = match.rule
        rec.preconditions = [{"text": t, "holds": bool(h)} for t, h in match.preconditions]
        rec.also_fired = [{"rule": r, "value": v} for r, v in match.also_fired]
        if method == "closed" and closed.kind is Kind.UNCOVERED:
            code = EXIT_NO_VERDICT
    if method in ("numeric", "both"):
        try:
            numeric, scan = kappa_numeric(p, full_output=True)
        except InconclusiveError as exc:
            rec.oracle = _oracle_summary(exc.scan)
            rec.warnings.append("numeric: " + str(exc))
            if method == "numeric":
                rec.kind = "inconclusive"
            return rec, EXIT_NO_VERDICT if method == "numeric" else code
        rec.oracle = _oracle_summary(scan)
        rec.warnings.extend(scan.warnings)
        if numeric.note:
            rec.warnings.append("numeric: " + numeric.note)
        if method == "numeric":
            rec.kind, rec.kappa = _kappa_fields(numeric)
            rec.uncertainty = numeric.uncertainty
            rec.regime = scan.trend
            if numeric.kind is Kind.UNDEFINED:
                code = EXIT_DERIVATIVE_ZERO
        else:
            rec.uncertainty = numeric.uncertainty
            if closed.kind is Kind.UNCOVERED:
                rec.kind, rec.kappa = _kappa_fields(numeric)
                rec.warnings.append("no closed form; value from the numeric scan")
            else:
                ok, gap = _same_verdict(closed, numeric, numeric.uncertainty)
                rec.discrepancy = gap
                if not ok:
                    rec.warnings.append("closed form %s but numeric scan gives %s" % (closed, numeric))
                    code = EXIT_INCONSISTENT
    return rec, code


def _kappa_verdict(kappa):
    if kappa.kind is Kind.MINUS_INFINITY:
        return "not convex"
    if kappa.kind is Kind.FINITE:
        return "convex" if kappa.value >= 0 else "not convex"
    if kappa.kind is Kind.LOWER_BOUND and kappa.value >= 0:
        return "convex"
    return "unknown"


def run_classify(p, tol=1e-9):
    """Fired (non)convexity predicates plus the closed-form kappa verdict.

    Returns
    -------
    (OutputRecord, exit_code)
        Exit code 3 when predicates contradict each other or kappa.
    """
    rec, code = run_kappa(p, "closed", tol)
    rec.method = "classify"
    if code == EXIT_INCONSISTENT:
        return rec, code
    code = EXIT_OK
    preds = convexity_predicates(p)
    rec.predicates = [{"name": n, "verdict": v} for n, v in preds]
    closed, _ = kappa_closed_form(p, tol)
    kv = _kappa_verdict(closed)
    verdicts = {v for _, v in preds}
    if kv != "unknown":
        verdicts.add(kv)
    if len(verdicts) > 1:
        rec.warnings.append("predicates and kappa disagree: %s" % sorted(verdicts))
        rec.verdict = "inconsistent"
        return rec, EXIT_INCONSISTENT
    rec.verdict = verdicts.pop() if verdicts else "unknown"
    return rec, code


def _fmt(x):
    if x is None:
        return ""
    return "%.17g" % x


def record_row(rec):
    """A record as a scan CSV row."""
    kappa = rec.kappa
    if rec.kind == Kind.MINUS_INFINITY.value:
        kappa = -math.inf
    return [_fmt(rec.a), _fmt(rec.b), _fmt(rec.c), rec.kind, _fmt(kappa), rec.regime, "; ".join(rec.warnings)]


def _scan_point(args):
    a, b, c, method, tol = args
    try:
        p = make_params(a, b, c)
    except BadParameters as exc:
        return [_fmt(a), _fmt(b), _fmt(c), "error", "", "none", str(exc)]
    try:
        rec, _ = run_kappa(p, method, tol)
    except Exception as exc:  # one bad point must not stop the scan
        return [_fmt(a), _fmt(b), _fmt(c), "error", "", "none", "%s: %s" % (type(exc).__name__, exc)]
    return record_row(rec)


def scan_rows(a_values, b_values, c_values, method="closed", tol=1e-9, jobs=1):
    """Rows for the grid a x b x c in lexicographic order."""
    points = [(a, b, c, method, tol) for a in a_values for b in b_values for c in c_values]
    if jobs > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_scan_point, points, chunksize=max(1, len(points) // (4 * jobs))))
    return [_scan_point(pt) for pt in points]


def _write_csv(path, header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    if path is None or path == "-":
        sys.stdout.write(buf.getvalue())
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())


def _print_record(rec, as_json):
    if as_json:
        print(rec.to_json())
        return
    kappa = rec.kind
    if rec.kappa is not None:
        kappa = ("%.12g" % rec.kappa) if rec.kind == Kind.FINITE.value else ">= %.12g" % rec.kappa
        if rec.uncertainty is not None:
            kappa += " +- %.2g" % rec.uncertainty
    print("a, b, c  : %g, %g, %g" % (rec.a, rec.b, rec.c))
    print("kappa    : %s" % kappa)
    print("regime   : %s" % rec.regime)
    for pre in rec.preconditions:
        print("  [%s] %s" % ("x" if pre["holds"] else " ", pre["text"]))
    for other in rec.also_fired:
        print("also     : %s = %s" % (other["rule"], other["value"]))
    if rec.oracle is not None:
        print("oracle   : trend %s, last minimum %s" % (rec.oracle["trend"], rec.oracle["minima"][-1:] or "-"))
    if rec.discrepancy is not None:
        print("discrep. : %.3g" % rec.discrepancy)
    for pred in rec.predicates:
        print("predicate: %s -> %s" % (pred["name"], pred["verdict"]))
    if rec.verdict is not None:
        print("verdict  : %s" % rec.verdict)
    for w in rec.warnings:
        print("warning  : %s" % w)


# ---------------------------------------------------------------- argparse


def _add_abc(sp):
    sp.add_argument("--a", type=float, required=True)
    sp.add_argument("--b", type=float, required=True)
    sp.add_argument("--c", type=float, required=True)
    sp.add_argument("--allow-degenerate", action="store_true", help="accept inadmissible triples")


def build_parser():
    ap = argparse.ArgumentParser(prog="hypconv", description="Order of convexity of z 2F1(a, b; c; z).")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("kappa", help="kappa at one parameter point")
    _add_abc(sp)
    sp.add_argument("--method", choices=("closed", "numeric", "both"), default="closed")
    sp.add_argument("--tol", type=float, default=1e-9, help="agreement tolerance between closed-form rules")
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("classify", help="convexity predicates and verdict")
    _add_abc(sp)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("scan", help="kappa over a parameter grid, written as CSV")
    sp.add_argument("--a", required=True, help="x or x0:x1:n")
    sp.add_argument("--b", required=True, help="x or x0:x1:n")
    sp.add_argument("--c", required=True, help="x or x0:x1:n")
    sp.add_argument("--method", choices=("closed", "numeric", "both"), default="closed")
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--out", default="-")

    sp = sub.add_parser("profile", help="Re W on the circle |z| = r, as CSV")
    _add_abc(sp)
    sp.add_argument("--r", type=float, required=True)
    sp.add_argument("--samples", type=int, default=4096)
    sp.add_argument("--out", default="-")

    sp = sub.add_parser("eval", help="2F1 at z = r exp(i theta)")
    _add_abc(sp)
    sp.add_argument("--r", type=float, required=True)
    sp.add_argument("--theta", type=float, default=0.0)
    sp.add_argument("--tol", type=float, default=1e-15)
    sp.add_argument("--json", action="store_true")
    return ap


def _cmd_kappa(args):
    if not args.tol > 0:
        raise BadParameters("--tol must be positive")
    p = make_params(args.a, args.b, args.c, args.allow_degenerate)
    rec, code = run_kappa(p, args.method, args.tol)
    _print_record(rec, args.json)
    return code


def _cmd_classify(args):
    p = make_params(args.a, args.b, args.c, args.allow_degenerate)
    rec, code = run_classify(p)
    _print_record(rec, args.json)
    return code


def _cmd_scan(args):
    try:
        grids = [parse_range(args.a), parse_range(args.b), parse_range(args.c)]
    except ValueError as exc:
        raise BadParameters(str(exc)) from exc
    rows = scan_rows(*grids, method=args.method, tol=args.tol, jobs=max(1, args.jobs))
    _write_csv(args.out, SCAN_COLUMNS, rows)
    return EXIT_OK


def _cmd_profile(args):
    p = make_params(args.a, args.b, args.c, args.allow_degenerate)
    if not 0.0 < args.r < 1.0:
        raise BadParameters("--r must lie in (0, 1)")
    if args.samples < 4:
        raise BadParameters("--samples must be at least 4")
    try:
        rows = boundary_profile(p, args.r, samples=args.samples)
    except DerivativeZero as exc:
        print("(zF)' vanishes at z = %s" % exc.location, file=sys.stderr)
        return EXIT_DERIVATIVE_ZERO
    _write_csv(args.out, ("theta", "re_w"), [[_fmt(t), _fmt(v)] for t, v in rows])
    return EXIT_OK


def _cmd_eval(args):
    p = make_params(args.a, args.b, args.c, allow_degenerate=True)
    if not 0.0 <= args.r <= 1.0:
        raise BadParameters("--r must lie in [0, 1]")
    z = args.r * complex(math.cos(args.theta), math.sin(args.theta))
    code = EXIT_OK
    try:
        res = eval_auto(p, z, args.tol)
    except TermCapExceeded as exc:
        # Report the partial sum; its flags carry "term-cap".
        print("warning: %s" % exc, file=sys.stderr)
        res, code = exc.partial, EXIT_NO_VERDICT
    except ValueError as exc:
        raise BadParameters(str(exc)) from exc
    out = {
        "a": p.a,
        "b": p.b,
        "c": p.c,
        "z": [z.real, z.imag],
        "value": [res.value.real, res.value.imag],
        "error_bound": res.error_bound,
        "terms": res.terms_used,
        "method": res.method,
        "flags": list(res.flags),
    }
    if args.json:
        print(json.dumps(out))
    else:
        print("value       : %.17g %+.17gj" % (res.value.real, res.value.imag))
        print("error_bound : %.3g" % res.error_bound)
        print("method      : %s (%d terms)" % (res.method, res.terms_used))
        for f in res.flags:
            print("flag        : %s" % f)
    return code


_COMMANDS = {
    "kappa": _cmd_kappa,
    "classify": _cmd_classify,
    "scan": _cmd_scan,
    "profile": _cmd_profile,
    "eval": _cmd_eval,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except BadParameters as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_BAD_PARAMS
    except DerivativeZero as exc:
        print("error: (zF)' vanishes at z = %s" % exc.location, file=sys.stderr)
        return EXIT_DERIVATIVE_ZERO
    except InconsistencyError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
