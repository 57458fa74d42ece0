"""Command line entry point: ``sl2modp verify | decide | report``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ..cind import INF, ZERO, RangeError, canonical_param, decide_isomorphism
from .cache import default_cache_dir
from .config import SUITES, ConfigError, build_config, parse_config_text
from .report import Report, emit
from .suites import run_suite

_SIDES = {"infty": INF, "inf": INF, "∞": INF, "0": ZERO, "zero": ZERO}


def _parse_piece(text: str) -> tuple[int, str]:
    try:
        r, side = text.split(",")
        return int(r), _SIDES[side.strip()]
    except (ValueError, KeyError):
        raise argparse.ArgumentTypeError(f"expected r,side with side infty or 0, got {text!r}") from None


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sl2modp", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("suites", nargs="+", help=f"suite names or 'all': {', '.join(SUITES)}")
    v.add_argument("--config", type=Path, help="flat key = value file; flags override it")
    for flag in ("p", "k", "depth", "slack", "word-len", "seed", "a", "samples"):
        v.add_argument(f"--{flag}", type=int)
    v.add_argument("--r")
    v.add_argument("--lambda", dest="lam")
    v.add_argument("--alphabet")
    v.add_argument("--window", help="M,N")
    v.add_argument("--eta", help="character literal omega^a * mu(c0,...)")
    v.add_argument("--json", action="store_true", help="JSON output (default is a text table)")
    v.add_argument("--out", type=Path, help="also write the JSON report here")
    v.add_argument("--no-timing", action="store_true",
                   help="zero runtimes and drop cache counters so reports are byte-reproducible")
    v.add_argument("--no-cache", action="store_true")
    v.add_argument("--cache-dir", type=Path)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--time-budget", type=float, help="seconds; later checks are skipped and the report marked incomplete")

    d = sub.add_parser("decide", help="decision procedures")
    d.add_argument("what", choices=["isomorphism"])
    d.add_argument("--p", type=int, required=True)
    d.add_argument("--left", type=_parse_piece, required=True)
    d.add_argument("--right", type=_parse_piece, required=True)
    d.add_argument("--json", action="store_true")

    r = sub.add_parser("report", help="re-emit a stored JSON report")
    r.add_argument("--in", dest="infile", type=Path, required=True)
    r.add_argument("--format", choices=["json", "text"], default="text")
    return ap


def _verify(args) -> int:
    suites = list(SUITES) if args.suites == ["all"] else args.suites
    file_values = parse_config_text(args.config.read_text()) if args.config else {}
    overrides = {key: getattr(args, key.replace("-", "_"))
                 for key in ("p", "k", "depth", "slack", "word-len", "seed", "a", "samples", "r", "lam",
                             "alphabet", "window", "eta")}
    overrides["suites"] = suites
    cfg = build_config(file_values, overrides)
    cache_dir = None if args.no_cache else str(args.cache_dir or default_cache_dir())
    report = run_suite(cfg, cache_dir, args.jobs, args.time_budget)
    timing = not args.no_timing
    if args.out:
        args.out.write_bytes(emit(report, "json", timing))
    sys.stdout.buffer.write(emit(report, "json" if args.json else "text", timing))
    for w in report.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return 0 if report.overall == "pass" else 1


def _decide(args) -> int:
    (r, z), (s, y) = args.left, args.right
    verdict, crit = decide_isomorphism(args.p, r, z, s, y)
    if args.json:
        out = {"left": [r, z], "right": [s, y], "p": args.p, "verdict": verdict, "criterion": crit,
               "class_left": list(canonical_param(args.p, r, z)), "class_right": list(canonical_param(args.p, s, y))}
        print(json.dumps(out, sort_keys=True))
    else:
        print(f"{verdict} ({crit})")
    return 0


def _report(args) -> int:
    data = json.loads(args.infile.read_text())
    report = Report.from_dict(data)
    timing = "cache_hits" in data
    sys.stdout.buffer.write(emit(report, args.format, timing))
    return 0


def main(argv: list[str] | None = None) -> int:
    ap = _parser()
    args = ap.parse_args(argv)
    try:
        if args.command == "verify":
            return _verify(args)
        if args.command == "decide":
            return _decide(args)
        return _report(args)
    except (ConfigError, RangeError) as e:
        ap.error(str(e))
    except (OSError, json.JSONDecodeError, KeyError) as e:
        print(f"sl2modp: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
