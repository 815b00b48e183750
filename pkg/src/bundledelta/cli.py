"""Command-line front end.

    bundledelta delta --spec FILE -a P/Q -b P/Q [--json]
    bundledelta volume-profile --spec FILE -a .. -b .. --axis F|D --samples N
    bundledelta scan --spec FILE --a-range LO:HI:STEP --b-range LO:HI:STEP
    bundledelta verify [--nmax N] [--seed S]
    bundledelta classify --spec FILE

Exact fractions are the primary output.  Decimal columns are advisory and end
in ``~``.  Exit codes: 0 success, 2 invalid input, 3 verification failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Optional, Sequence

from . import verify as verify_mod
from .arith import to_rational
from .bundle import BundleData, BundleError, load_bundle
from .delta import DeltaReport, delta_report
from .divisors import ConePosition, DivisorClass, NotAmpleError, cone_position
from .kstability import classify_polarizations, ksemistable_sufficient
from .volumes import Axis, chamber_profile, evaluate_profile, tau, volume_L_minus_tD, volume_L_minus_tF

EXIT_OK, EXIT_INVALID, EXIT_VERIFY = 0, 2, 3
DECIMAL_DIGITS = 15
APPROX_MARK = "~"

DELTA_FIELDS = ("S_F", "S_D", "s1", "s2", "fiber_upper", "lower", "upper")
SCAN_COLUMNS = ("a", "b", "status", "lower", "upper", "exact", "branch", "ks_pass")
PROFILE_COLUMNS = ("t", "volume", "chamber_id")


class InvalidInput(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


@dataclass(frozen=True)
class GridRange:
    lo: Fraction
    hi: Fraction
    step: Fraction

    def values(self) -> list[Fraction]:
        out, k = [], 0
        while self.lo + k * self.step <= self.hi:
            out.append(self.lo + k * self.step)
            k += 1
        return out


@dataclass(frozen=True)
class RunConfig:
    command: str
    bundle_spec_path: Optional[str] = None
    polarization: Optional[tuple[Fraction, Fraction]] = None
    grid: Optional[tuple[GridRange, GridRange]] = None
    t_samples: Optional[int] = None
    axis: Axis = Axis.F
    output_format: str = "csv"
    output_path: Optional[str] = None
    threads: int = 1
    n_max: int = 50
    seed: int = 0
    count: int = 100

    def __post_init__(self) -> None:
        if self.command in ("delta", "volume-profile") and self.polarization is None:
            raise InvalidInput("missing_polarization", f"{self.command} needs -a and -b")
        if self.command == "scan" and self.grid is None:
            raise InvalidInput("missing_grid", "scan needs --a-range and --b-range")


def fmt_exact(x: Optional[Fraction]) -> str:
    if x is None:
        return ""
    return str(x)


def fmt_decimal(x: Optional[Fraction]) -> str:
    if x is None:
        return ""
    with localcontext() as ctx:
        ctx.prec = DECIMAL_DIGITS
        d = Decimal(x.numerator) / Decimal(x.denominator)
    exp = d.adjusted() if d else 0
    if abs(exp) > 6:
        return f"{d:.{DECIMAL_DIGITS - 1}E}{APPROX_MARK}"
    # fixed point with DECIMAL_DIGITS significant digits
    return f"{d:.{max(DECIMAL_DIGITS - 1 - exp, 0)}f}{APPROX_MARK}"


def parse_rational(text: str) -> Fraction:
    try:
        return to_rational(text)
    except (TypeError, ValueError) as exc:
        raise InvalidInput("invalid_rational", str(exc)) from None


def parse_range(text: str) -> GridRange:
    parts = text.split(":")
    if len(parts) != 3:
        raise InvalidInput("invalid_range", f"expected LO:HI:STEP, got {text!r}")
    lo, hi, step = (parse_rational(p) for p in parts)
    if step <= 0:
        raise InvalidInput("invalid_range", "STEP must be positive")
    return GridRange(lo, hi, step)


def _number_record(x: Optional[Fraction]):
    if x is None:
        return None
    return {"exact": fmt_exact(x), "decimal": fmt_decimal(x)}


def report_to_dict(rep: DeltaReport) -> dict:
    out = {name: _number_record(getattr(rep, name)) for name in DELTA_FIELDS}
    out["delta"] = _number_record(rep.value)
    out["exact"] = rep.exact
    out["attaining_branch"] = rep.attaining_branch.value
    out["note"] = rep.note
    return out


def _csv_text(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _load(cfg: RunConfig) -> BundleData:
    if not cfg.bundle_spec_path:
        raise InvalidInput("missing_spec", "--spec FILE is required")
    return load_bundle(cfg.bundle_spec_path)


def _polarization(cfg: RunConfig, b: BundleData) -> DivisorClass:
    L = DivisorClass(*cfg.polarization)
    pos = cone_position(L, b)
    if pos is not ConePosition.AMPLE:
        raise InvalidInput("not_ample", f"{L} is {pos.value}; need a > 0 and b > -a*mu_min = {-L.xi * b.mu_min}")
    return L


def cmd_delta(cfg: RunConfig) -> str:
    b = _load(cfg)
    L = _polarization(cfg, b)
    rep = delta_report(L, b)
    if cfg.output_format == "json":
        return _json_text({
            "bundle": b.to_dict(),
            "polarization": {"a": fmt_exact(L.xi), "b": fmt_exact(L.f)},
            "report": report_to_dict(rep),
        })
    rows = [(name, fmt_exact(getattr(rep, name)), fmt_decimal(getattr(rep, name))) for name in DELTA_FIELDS]
    rows.append(("delta", fmt_exact(rep.value), fmt_decimal(rep.value)))
    rows.append(("exact", str(rep.exact).lower(), ""))
    rows.append(("attaining_branch", rep.attaining_branch.value, ""))
    rows.append(("note", rep.note, ""))
    return _csv_text(("field", "exact", "decimal"), rows)


def cmd_volume_profile(cfg: RunConfig) -> str:
    b = _load(cfg)
    L = _polarization(cfg, b)
    n_samples = cfg.t_samples if cfg.t_samples is not None else 11
    if n_samples < 2:
        raise InvalidInput("invalid_samples", "--samples must be at least 2")
    try:
        profile = chamber_profile(L, cfg.axis, b)
    except ValueError as exc:
        raise InvalidInput("no_exceptional_divisor", str(exc)) from None
    end = tau(L, cfg.axis, b)
    pointwise = volume_L_minus_tF if cfg.axis is Axis.F else volume_L_minus_tD
    samples = []
    for k in range(n_samples):
        t = end * k / (n_samples - 1)
        _, chamber_id = evaluate_profile(profile, t)
        samples.append((t, pointwise(L, t, b), chamber_id))
    if cfg.output_format == "json":
        return _json_text({
            "axis": cfg.axis.value,
            "tau": fmt_exact(end),
            "chambers": [
                {"id": k, "lo": fmt_exact(ch.lo), "hi": fmt_exact(ch.hi),
                 "coefficients": [fmt_exact(c) for c in ch.coefficients]}
                for k, ch in enumerate(profile)
            ],
            "samples": [
                {"t": fmt_exact(t), "volume": fmt_exact(v), "chamber_id": cid} for t, v, cid in samples
            ],
        })
    head = [f"# axis={cfg.axis.value} tau={fmt_exact(end)}"]
    for k, ch in enumerate(profile):
        coeffs = " ".join(fmt_exact(c) for c in ch.coefficients) or "0"
        head.append(f"# chamber {k} [{fmt_exact(ch.lo)}, {fmt_exact(ch.hi)}] coefficients (t^0 first): {coeffs}")
    body = _csv_text(PROFILE_COLUMNS, [(fmt_exact(t), fmt_exact(v), cid) for t, v, cid in samples])
    return "\n".join(head) + "\n" + body


def _scan_point(b: BundleData, a: Fraction, bb: Fraction) -> tuple:
    L = DivisorClass(a, bb)
    if cone_position(L, b) is not ConePosition.AMPLE:
        return (fmt_exact(a), fmt_exact(bb), "skipped", "", "", "", "", "")
    rep = delta_report(L, b)
    ks = ksemistable_sufficient(L, rep.lower, b)
    return (
        fmt_exact(a), fmt_exact(bb), "ok", fmt_exact(rep.lower), fmt_exact(rep.upper),
        str(rep.exact).lower(), rep.attaining_branch.value, str(ks.passes).lower(),
    )


def scan_rows(b: BundleData, a_range: GridRange, b_range: GridRange, threads: int = 1) -> list[tuple]:
    points = sorted((a, bb) for a in a_range.values() for bb in b_range.values())
    if threads <= 1:
        return [_scan_point(b, a, bb) for a, bb in points]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = {pt: pool.submit(_scan_point, b, *pt) for pt in points}
        return [futures[pt].result() for pt in points]


def cmd_scan(cfg: RunConfig) -> str:
    b = _load(cfg)
    rows = scan_rows(b, cfg.grid[0], cfg.grid[1], cfg.threads)
    if cfg.output_format == "json":
        return _json_text([dict(zip(SCAN_COLUMNS, row)) for row in rows])
    return _csv_text(SCAN_COLUMNS, rows)


def cmd_classify(cfg: RunConfig) -> str:
    b = _load(cfg)
    cls = classify_polarizations(b)
    record = {"stability": b.stability.value, "hn_length": b.hn_length, "classification": cls.value}
    if cfg.output_format == "json":
        return _json_text(record)
    return _csv_text(tuple(record), [tuple(str(v) for v in record.values())])


def cmd_verify(cfg: RunConfig) -> tuple[str, bool]:
    results = verify_mod.run_verification(cfg.n_max, cfg.seed, cfg.count)
    ok = all(r.passed for r in results)
    if cfg.output_format == "json":
        return _json_text([
            {"check": r.name, "passed": r.passed, "total": r.total, "failures": r.failures[:5]} for r in results
        ]), ok
    return verify_mod.render(results) + "\n", ok


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bundledelta", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, spec=True):
        if spec:
            sp.add_argument("--spec", required=True, help="bundle spec file (TOML, or JSON by extension)")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--json", action="store_true", help="shorthand for --format json")
        sp.add_argument("-o", "--output", help="write to this file instead of stdout")

    def polarization(sp):
        sp.add_argument("-a", required=True, help="xi coefficient, P/Q or integer")
        sp.add_argument("-b", required=True, help="f coefficient, P/Q or integer")

    sp = sub.add_parser("delta", help="delta-invariant report for one polarization")
    common(sp)
    polarization(sp)

    sp = sub.add_parser("volume-profile", help="sampled Vol(L - tF) or Vol(L - tD)")
    common(sp)
    polarization(sp)
    sp.add_argument("--axis", choices=("F", "D"), default="F")
    sp.add_argument("--samples", type=int, default=11)

    sp = sub.add_parser("scan", help="delta bounds over a grid of polarizations")
    common(sp)
    sp.add_argument("--a-range", required=True, help="LO:HI:STEP")
    sp.add_argument("--b-range", required=True, help="LO:HI:STEP")
    sp.add_argument("--threads", type=int, default=1)

    sp = sub.add_parser("verify", help="run the identity and oracle suite")
    common(sp, spec=False)
    sp.add_argument("--nmax", type=int, default=50)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=100)

    sp = sub.add_parser("classify", help="K-stability classification from the stability type")
    common(sp)
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    fmt = "json" if args.json else args.format
    kw = dict(command=args.command, output_format=fmt, output_path=args.output)
    if hasattr(args, "spec"):
        kw["bundle_spec_path"] = args.spec
    if args.command in ("delta", "volume-profile"):
        kw["polarization"] = (parse_rational(args.a), parse_rational(args.b))
    if args.command == "volume-profile":
        kw["t_samples"] = args.samples
        kw["axis"] = Axis(args.axis)
    if args.command == "scan":
        kw["grid"] = (parse_range(args.a_range), parse_range(args.b_range))
        kw["threads"] = args.threads
    if args.command == "verify":
        kw.update(n_max=args.nmax, seed=args.seed, count=args.count)
    return RunConfig(**kw)


def run(cfg: RunConfig) -> tuple[str, int]:
    if cfg.command == "verify":
        text, ok = cmd_verify(cfg)
        return text, EXIT_OK if ok else EXIT_VERIFY
    handler = {
        "delta": cmd_delta,
        "volume-profile": cmd_volume_profile,
        "scan": cmd_scan,
        "classify": cmd_classify,
    }[cfg.command]
    return handler(cfg), EXIT_OK


def _error(code: str, message: str) -> int:
    sys.stderr.write(json.dumps({"error": code, "message": message}) + "\n")
    return EXIT_INVALID


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        text, code = run(cfg)
    except InvalidInput as exc:
        return _error(exc.code, exc.message)
    except BundleError as exc:
        return _error(exc.code, exc.message)
    except NotAmpleError as exc:
        return _error("not_ample", str(exc))
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
