#!/usr/bin/env python3
"""Generate data/p130_roots.txt, the root multiset of the degree-130 example.

Set description being realised:

    ( (-26,26) ∩ Z/2  ∪  (-27,27) ∩ (±(|k|/2)^{3/2} + 3/2) ) minus [-2,0]

Read literally this does not give 130 points, so the following conventions are
used (each one is printed in the header of the output file):

  * the half-integer part uses the closed range [-26, 26]        -> 105 points
  * [-2, 0] is removed from the half-integer part only            -> 100 points
  * the shifted 3/2-power lattice is kept whole inside (-27, 27)  ->  36 points
    (k = 0..17 on the + branch, k = 1..18 on the - branch)
  * the union is a set: the six values that lie in both parts
    (0.5, 1.5, 2.5, 9.5, -6.5, -25.5) are kept once              -> 130 points

Roots are written with 60 significant digits, one per line, ascending.
"""

import argparse
from fractions import Fraction
from pathlib import Path

import mpmath

mpmath.mp.dps = 80


def half_integer_part():
    pts = {Fraction(k, 2) for k in range(-52, 53)}
    return {x for x in pts if not (-2 <= x <= 0)}


def power_lattice_part():
    out = {}
    for k in range(0, 60):
        r = (mpmath.mpf(k) / 2) ** mpmath.mpf(1.5)
        for sign in (1, -1):
            v = sign * r + mpmath.mpf(3) / 2
            if -27 < v < 27:
                out[mpmath.nstr(v, 70)] = v
    return list(out.values())


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data" / "p130_roots.txt"))
    args = ap.parse_args()

    halves = half_integer_part()
    lattice = power_lattice_part()
    roots = [mpmath.mpf(x.numerator) / x.denominator for x in halves]
    duplicates = []
    for v in lattice:
        twice = v * 2
        if abs(twice - mpmath.nint(twice)) < mpmath.mpf(10) ** -60 and Fraction(int(mpmath.nint(twice)), 2) in halves:
            duplicates.append(v)
            continue
        roots.append(v)
    roots.sort()
    assert len(roots) == 130, len(roots)

    with open(args.out, "w") as fh:
        fh.write("# degree-130 example roots, generated by tools/make_p130_roots.py\n")
        fh.write(f"# half-integers in [-26,26] minus [-2,0]: {len(halves)}\n")
        fh.write(f"# +-(k/2)^(3/2) + 3/2 inside (-27,27): {len(lattice)}\n")
        fh.write("# shared values kept once: " + ", ".join(mpmath.nstr(d, 6) for d in sorted(duplicates)) + "\n")
        for r in roots:
            fh.write(mpmath.nstr(r, 60, min_fixed=-100, max_fixed=100) + "\n")
    print(f"wrote {len(roots)} roots to {args.out}")


if __name__ == "__main__":
    main()
