#!/usr/bin/env python3
"""Tour of the symbol calculators: tame, Contou-Carrère, and higher symbols.

Walks through a handful of worked examples at increasing depth:

  1. tame symbols of rational functions over a prime field,
  2. the nilpotent correction that separates the CC symbol from the tame
     symbol over an artinian coefficient ring,
  3. a depth-2 higher symbol over an iterated Laurent tower.

Run with no arguments for the default tour, or pass --ring/--seed to
re-roll the random section over a different coefficient ring.
"""

from __future__ import annotations

import argparse
import random
from dataclasses import dataclass

from ccsym import (
    ArtinianLocal,
    LaurentRing,
    PrimeField,
    cc_symbol,
    format_series,
    format_value,
    higher_symbol,
    parse_expression,
    parse_ring,
    ring_label,
    tame_symbol,
)


@dataclass
class DemoConfig:
    ring_spec: str = "F5[e]/e^2"
    seed: int = 20260814
    samples: int = 5


def show(label: str, value) -> None:
    print(f"  {label:<28} = {value}")


def tame_section() -> None:
    print("== tame symbols over F7 ==")
    ring = PrimeField(7)
    sring = LaurentRing(ring, "t")
    pairs = [
        ("t", "t"),
        ("t", "1-t"),
        ("t^2", "3*t"),
        ("1 + 2*t", "t^-1"),
    ]
    for lhs, rhs in pairs:
        f = parse_expression(lhs, ring, domain="series")
        g = parse_expression(rhs, ring, domain="series")
        show(f"({lhs}, {rhs})", format_value(tame_symbol(f, g)))
    # Steinberg: (f, 1-f) = 1 whenever both sides make sense.
    f = sring.gen() * sring.from_int(3)
    one = sring.one()
    show("Steinberg (3t, 1-3t)", format_value(tame_symbol(f, one - f)))
    print()


def nilpotent_section() -> None:
    print("== Contou-Carrère symbols over F5[e]/e^2 ==")
    ring = ArtinianLocal(PrimeField(5), 2)
    sring = LaurentRing(ring, "t")
    t = sring.gen()
    eps = sring.constant(ring.eps())
    one = sring.one()
    for c in range(5):
        f = one - eps * t ** -1
        g = one - sring.from_int(c) * t
        val = cc_symbol(f, g)
        show(f"(1 - e*t^-1, 1 - {c}*t)", format_value(val))
    print("  (the tame symbol of each pair is 1; the e-part is the CC correction)")
    print()


def higher_section() -> None:
    print("== depth-2 higher symbols over F5((t1))((t2)) ==")
    ring = PrimeField(5)
    inner = LaurentRing(ring, "t1")
    outer = LaurentRing(inner, "t2")
    t1 = outer.constant(inner.gen())
    t2 = outer.gen()
    one = outer.one()
    examples = [
        ("(t1, t2, t1 + t2)", (t1, t2, t1 + t2)),
        ("(t1, t2, t1 - t2)", (t1, t2, t1 - t2)),
        ("(t2, t1, t1 + t2)", (t2, t1, t1 + t2)),
        ("(t1, t2, 2 + t1)", (t1, t2, one + one + t1)),
    ]
    for label, args in examples:
        show(label, format_value(higher_symbol(args)))
    print()


def random_unit(sring: LaurentRing, rng: random.Random) -> "LaurentSeries":
    """Unit Laurent polynomial: invertible constant term, a few extra terms."""
    base = sring.base
    series = sring.constant(base.random_unit(rng))
    t = sring.gen()
    for exp in range(1, 4):
        if rng.random() < 0.6:
            series = series + sring.constant(base.random(rng)) * t ** exp
    return series * t ** rng.randrange(-2, 3)


def random_section(config: DemoConfig) -> None:
    print(f"== random CC symbols over {ring_label(parse_ring(config.ring_spec))} ==")
    ring = parse_ring(config.ring_spec)
    sring = LaurentRing(ring, "t")
    rng = random.Random(config.seed)
    for _ in range(config.samples):
        f = random_unit(sring, rng)
        g = random_unit(sring, rng)
        sym = cc_symbol(f, g)
        inverse = cc_symbol(g, f)
        print(f"  f = {format_series(f)}")
        print(f"  g = {format_series(g)}")
        print(f"    (f, g) = {format_value(sym)}   (g, f) = {format_value(inverse)}")
        assert (sym * inverse).is_one(), "antisymmetry violated"
    print("  antisymmetry (f,g)*(g,f) = 1 held on every sample")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ring", default=DemoConfig.ring_spec,
                    help="coefficient ring for the random section (default %(default)s)")
    ap.add_argument("--seed", type=int, default=DemoConfig.seed)
    ap.add_argument("--samples", type=int, default=DemoConfig.samples)
    args = ap.parse_args(argv)
    config = DemoConfig(ring_spec=args.ring, seed=args.seed, samples=args.samples)

    tame_section()
    nilpotent_section()
    higher_section()
    random_section(config)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
