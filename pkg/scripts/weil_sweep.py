#!/usr/bin/env python3
"""Sweep random rational function pairs through the reciprocity checkers.

For each coefficient ring in the sweep this script draws random pairs of
nonzero rational functions, runs the Weil check (finite fields) or the
Contou-Carrère check (artinian local rings), and tallies the verdicts.
The first report per ring is printed in full so the per-place local
factors are visible; the rest contribute only to the summary table.

Examples:
    python3 scripts/weil_sweep.py
    python3 scripts/weil_sweep.py --rings F2 F9 "F5[e]/e^2" --pairs 50
"""

from __future__ import annotations

import argparse
import random
import time
from dataclasses import dataclass, field

from ccsym import (
    RationalFunction,
    cc_check,
    format_value,
    parse_ring,
    random_poly,
    ring_label,
    rings,
    weil_check,
)

DEFAULT_RINGS = ["F2", "F3", "F5", "F7", "F9", "F3[e]/e^2", "F5[e]/e^3"]


@dataclass
class SweepConfig:
    ring_specs: list = field(default_factory=lambda: list(DEFAULT_RINGS))
    pairs: int = 25
    max_degree: int = 4
    seed: int = 20260814
    verbose: bool = False


def random_rational(ring, rng: random.Random, max_degree: int) -> RationalFunction:
    """Random nonzero rational function with numerator/denominator of bounded degree."""
    while True:
        num = random_poly(ring, rng, rng.randrange(max_degree + 1))
        if not num.is_zero():
            break
    den = random_poly(ring, rng, rng.randrange(max_degree + 1), monic=True)
    return RationalFunction(num, den)


def print_report(report) -> None:
    width = max((len(f.label) for f in report.factors), default=10)
    for factor in report.factors:
        value = format_value(factor.contribution)
        mark = "" if factor.contribution.is_one() else "   <- nontrivial"
        print(f"    {factor.label:<{width}}  deg {factor.degree}  {value}{mark}")
    verdict = "holds" if report.ok else "FAILS"
    print(f"    product = {format_value(report.product)}  ({report.law} reciprocity {verdict})")


def sweep_ring(spec: str, config: SweepConfig) -> dict:
    ring = parse_ring(spec)
    artinian = isinstance(ring, rings.ArtinianLocal)
    check = cc_check if artinian else weil_check
    rng = random.Random(config.seed)
    stats = {"label": ring_label(ring), "law": "cc" if artinian else "weil",
             "pairs": 0, "ok": 0, "places": 0, "nontrivial": 0, "max_place_degree": 0}
    t0 = time.perf_counter()
    for index in range(config.pairs):
        f = random_rational(ring, rng, config.max_degree)
        g = random_rational(ring, rng, config.max_degree)
        report = check(f, g)
        stats["pairs"] += 1
        stats["ok"] += report.ok
        stats["places"] += len(report.factors)
        stats["nontrivial"] += sum(1 for x in report.factors if not x.contribution.is_one())
        stats["max_place_degree"] = max(
            [stats["max_place_degree"]] + [x.degree for x in report.factors])
        if index == 0 or config.verbose:
            print(f"  sample pair over {stats['label']}:")
            print(f"    f = {f}")
            print(f"    g = {g}")
            print_report(report)
        if not report.ok:
            raise AssertionError(f"reciprocity failed over {stats['label']}: f={f} g={g}")
    stats["seconds"] = time.perf_counter() - t0
    return stats


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rings", nargs="+", default=DEFAULT_RINGS, metavar="SPEC",
                    help="ring specs such as F7 or F3[e]/e^2 (default: %(default)s)")
    ap.add_argument("--pairs", type=int, default=SweepConfig.pairs)
    ap.add_argument("--max-degree", type=int, default=SweepConfig.max_degree)
    ap.add_argument("--seed", type=int, default=SweepConfig.seed)
    ap.add_argument("--verbose", action="store_true", help="print every report, not just the first")
    args = ap.parse_args(argv)
    config = SweepConfig(ring_specs=args.rings, pairs=args.pairs,
                         max_degree=args.max_degree, seed=args.seed, verbose=args.verbose)

    all_stats = []
    for spec in config.ring_specs:
        print(f"== {spec}: {config.pairs} pairs, degree <= {config.max_degree} ==")
        all_stats.append(sweep_ring(spec, config))
        print()

    print(f"{'ring':<12} {'law':<5} {'pairs':>5} {'ok':>4} {'places':>7} "
          f"{'nontrivial':>10} {'max deg':>8} {'time':>7}")
    for s in all_stats:
        print(f"{s['label']:<12} {s['law']:<5} {s['pairs']:>5} {s['ok']:>4} {s['places']:>7} "
              f"{s['nontrivial']:>10} {s['max_place_degree']:>8} {s['seconds']:>6.2f}s")
    print("\nevery product equalled 1")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
