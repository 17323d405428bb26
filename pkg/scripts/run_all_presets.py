#!/usr/bin/env python3
"""Run every built-in preset on each of its fields and print a summary table."""
import argparse
import sys
from dataclasses import dataclass, field

from cdgacalc.exactfield import Field
from cdgacalc.scenarios import field_allowed, list_presets, load_preset, run_preset


@dataclass
class SweepConfig:
    max_degree: int | None = None       # None: each preset's own default
    k: str = "1"
    extra_fields: list = field(default_factory=lambda: ["Fp:2", "Fp:3", "Fp:5"])


def fields_for(payload, extra):
    """The preset's own field, plus the extras it admits."""
    own = payload.get("field", "Q")
    return [own] + [f for f in extra if f != own and field_allowed(payload, Field.parse(f))]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-degree", type=int)
    ap.add_argument("--k", default="1")
    a = ap.parse_args(argv)
    cfg = SweepConfig(a.max_degree, a.k)

    failed = 0
    for p in list_presets():
        payload = load_preset(p["name"])
        for F in fields_for(payload, cfg.extra_fields):
            v = run_preset(p["name"], F, cfg.k, cfg.max_degree)
            failed += not v.passed
            series = " ".join(map(str, v.series))
            print(f"{v.status}  {p['name']:<20} {str(v.field):<6} {v.elapsed:6.2f}s  {series}")
    print(f"{failed} failing run(s)")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
