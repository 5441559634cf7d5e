#!/usr/bin/env python3
"""Enumerate the degree-2 effective divisors on a multiplicative model over a
prime field and print their moment vectors, checking pairwise distinctness.

Example:
    python3 scripts/moment_atlas.py --prime 7
"""

import argparse
from itertools import product

from efgc.curves import build_multiplicative
from efgc.divisors import divisor_from_gen, moments
from efgc.groups import FinAbGroup
from efgc.rings import Poly, PrimeField, poly_divmod, render_value


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--prime", type=int, default=7)
    ap.add_argument("--truncation", type=int, default=2)
    args = ap.parse_args()

    F = PrimeField(args.prime)
    e = build_multiplicative(
        F, FinAbGroup((2,)),
        {(0,): F.one(), (1,): F.from_int(args.prime - 1)},
        args.truncation,
    )
    curve = e.curve

    atlas = []
    for a0, a1 in product(range(args.prime), repeat=2):
        g = Poly(F, [F.from_int(a0), F.from_int(a1), F.one()])
        power, divides = curve.f, False
        for _ in range(curve.N):
            _, rem = poly_divmod(power, g)
            if rem.is_zero():
                divides = True
                break
            power = power * curve.f
        if not divides:
            continue
        d = divisor_from_gen(curve, g)
        mv = moments(d, e, curve.rank)
        atlas.append(((a0, a1), mv))

    print(f"# degree-2 divisors on x^2 model over F{args.prime} "
          f"(N = {args.truncation}): {len(atlas)} found")
    for (a0, a1), mv in atlas:
        desc = ", ".join(
            f"{''.join(f't{i}' for i in beta)}={render_value(v)}"
            for beta, v in mv.entries
        )
        print(f"  gen = x^2 + {a1}x + {a0}: {desc}")

    vecs = [tuple(render_value(v) for _, v in mv.entries) for _, mv in atlas]
    clashes = sum(
        1 for i in range(len(vecs)) for j in range(i + 1, len(vecs))
        if vecs[i] == vecs[j]
    )
    print(f"# pairwise moment-vector clashes: {clashes}")


if __name__ == "__main__":
    main()
