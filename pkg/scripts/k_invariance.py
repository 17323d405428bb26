#!/usr/bin/env python3
"""Check that the cdga presets with a parameter k give the same Betti numbers for several k."""
import argparse
import sys
from dataclasses import dataclass, field

from cdgacalc.scenarios import run_preset


@dataclass
class KConfig:
    presets: list = field(default_factory=lambda: ["im_emb_model", "emb_model", "relative_model"])
    ks: list = field(default_factory=lambda: ["1", "2", "-3", "7/2", "-1/5"])
    max_degree: int = 8


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-degree", type=int, default=KConfig.max_degree)
    ap.add_argument("--k", action="append", help="repeatable; default 1 2 -3 7/2 -1/5")
    a = ap.parse_args(argv)
    cfg = KConfig(max_degree=a.max_degree)
    if a.k:
        cfg.ks = a.k

    bad = 0
    for name in cfg.presets:
        seen = {k: tuple(run_preset(name, "Q", k, cfg.max_degree).series) for k in cfg.ks}
        same = len(set(seen.values())) == 1
        bad += not same
        print(f"{'same' if same else 'DIFFERS'}  {name}")
        for k, s in seen.items():
            print(f"    k={k:<6} {' '.join(map(str, s))}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
