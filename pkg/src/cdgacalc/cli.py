"""Command-line front end.

Exit status: 0 on PASS (or a run without expectations), 1 on a comparison
FAIL, 2 on any input error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys

from . import __version__
from .cdga import extend_leibniz, random_element
from .expr import ParseError
from .exactfield import Field
from .scenarios import (PresetError, build_cdga, list_presets, load_preset,
                        run_payload)

KIND_FOR = {"cohomology": "cdga", "amalgam": "amalgam", "tor": "koszul"}


class InputError(Exception):
    pass


def _load_spec(path: str) -> tuple[dict, str]:
    try:
        with open(path) as fh:
            raw = fh.read()
    except OSError as e:
        raise InputError(f"cannot read spec file {path}: {e.strerror}") from None
    try:
        payload = json.loads(raw)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(payload, dict):
        raise InputError(f"{path}: top level must be an object")
    if payload.get("format_version", 1) != 1:
        raise InputError(f"{path}: unsupported format_version {payload.get('format_version')!r}")
    return payload, raw


def _locate(raw: str, e: ParseError) -> str:
    """Map an expression parse error back to a line/column of the spec file."""
    needle = json.dumps(e.text)
    at = raw.find(needle)
    if at < 0:
        return str(e)
    pos = at + 1 + e.pos
    line = raw.count("\n", 0, pos) + 1
    col = pos - (raw.rfind("\n", 0, pos) + 1) + 1
    return f"{e.args[0].split(' at line')[0]} at line {line}, column {col} of the spec file ({e.text!r})"


def _random_d2_check(verdict, payload, seed: int):
    """Spot-check d^2 = 0 on random elements (cdga runs only)."""
    F, N = verdict.field, verdict.truncation
    alg, d = build_cdga(payload, F, verdict.k, N)
    rng = random.Random(seed)
    bad = None
    for n in range(N - 1):
        for _ in range(10):
            u = random_element(alg, n, rng)
            if extend_leibniz(d, extend_leibniz(d, u)):
                bad = u
                break
        if bad is not None:
            break
    verdict.check(f"d^2 = 0 on random elements (seed {seed})", bad is None,
                  "" if bad is None else f"witness {bad}")


def format_text(report: dict) -> str:
    lines = [f"cdgacalc {__version__}  {report['name']}  ({report['kind']})",
             f"field {report['field']}   k {report['k']}   degrees 0..{report['n_max']}"
             f"   truncation {report['truncation']}",
             f"{report['series_label']}: " + " ".join(map(str, report["series"]))]
    if report["rows"]:
        lines.append("degree  computed  expected  provenance  status")
        for r in report["rows"]:
            e = "-" if r["expected"] is None else str(r["expected"])
            lines.append(f"{r['degree']:>6}  {r['computed']:>8}  {e:>8}  {r['provenance']:<10}  "
                         f"{'ok' if r['ok'] else 'MISMATCH'}")
    if report["checks"]:
        lines.append("checks:")
        for c in report["checks"]:
            tail = f"  ({c['detail']})" if c["detail"] else ""
            lines.append(f"  [{'ok' if c['ok'] else 'FAIL'}] {c['name']}{tail}")
    if "representatives" in report:
        lines.append("representatives:")
        for key, reps in report["representatives"].items():
            if reps:
                lines.append(f"  {key}: " + ", ".join(reps))
    for note in report["notes"]:
        lines.append(f"note: {note}")
    lines.append(report["status"])
    return "\n".join(lines)


def _emit(report: dict, fmt: str):
    if fmt == "json":
        sys.stdout.write(json.dumps(report, indent=2) + "\n")
    else:
        sys.stdout.write(format_text(report) + "\n")


def _run(payload: dict, raw: str | None, args) -> int:
    field = Field.parse(args.field) if args.field else None
    try:
        v = run_payload(payload, field, args.k, args.max_degree)
        if payload.get("kind") == "cdga" and args.seed is not None:
            _random_d2_check(v, payload, args.seed)
    except ParseError as e:
        raise InputError(_locate(raw, e) if raw else str(e)) from None
    report = v.report(with_representatives=args.representatives)
    _emit(report, args.format)
    return 0 if v.passed else 1


def cmd_list(args) -> int:
    presets = list_presets()
    if args.format == "json":
        sys.stdout.write(json.dumps({"format_version": 1, "presets": presets}, indent=2) + "\n")
        return 0
    width = max(len(p["name"]) for p in presets)
    for p in presets:
        sys.stdout.write(f"{p['name']:<{width}}  {p['kind']:<15}  {p['description']}\n")
        sys.stdout.write(f"{'':<{width}}  {'':<15}  anchor: {p['anchor']}\n")
    return 0


def cmd_run(args) -> int:
    if args.spec:
        payload, raw = _load_spec(args.spec)
    elif args.preset:
        payload, raw = load_preset(args.preset), None
    else:
        raise InputError("run needs a preset name or --spec <path>")
    want = KIND_FOR.get(args.command)
    if want and payload.get("kind") != want:
        raise InputError(f"{args.command} expects a spec of kind {want!r}, got {payload.get('kind')!r}")
    return _run(payload, raw, args)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cdgacalc",
                                 description="Exact graded-algebra and CDGA computations.")
    ap.add_argument("--version", action="version", version=f"cdgacalc {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--field", help="q or fp:<p> (default: the preset's own field)")
        p.add_argument("--max-degree", type=int, default=12, help="top degree reported (default 12)")
        p.add_argument("--k", default="1", help="nonzero rational parameter (default 1)")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--representatives", action="store_true",
                       help="include representatives in the report")
        p.add_argument("--seed", type=int, default=None,
                       help="seed for random d^2 spot checks on cdga runs")

    p = sub.add_parser("list", help="list built-in presets")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("run", help="run a preset or a spec file")
    p.add_argument("preset", nargs="?")
    p.add_argument("--spec")
    common(p)
    p.set_defaults(func=cmd_run)

    for name, help_ in (("cohomology", "cohomology of a cdga spec file"),
                        ("amalgam", "Hilbert series of an amalgam spec file"),
                        ("tor", "Tor dimensions of a koszul spec file")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--spec", required=True)
        p.set_defaults(func=cmd_run, preset=None)
        common(p)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        return args.func(args)
    except (InputError, PresetError, ParseError, ValueError, KeyError, ZeroDivisionError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
        sys.stderr.write(f"error: {msg}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
