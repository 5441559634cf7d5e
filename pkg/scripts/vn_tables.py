#!/usr/bin/env python3
"""Print v_n tables for the universal multiplicative model of a group.

Example:
    python3 scripts/vn_tables.py --factors 2,2 --max-n 4 --negative
"""

import argparse

from efgc.curves import build_multiplicative_universal
from efgc.groups import FinAbGroup
from efgc.rings import render_value
from efgc.transfers import vn_at_point, vn_series


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--factors", default="2",
                    help="comma-separated invariant factors of A")
    ap.add_argument("--max-n", type=int, default=4)
    ap.add_argument("--negative", action="store_true")
    ap.add_argument("--truncation", type=int, default=2)
    args = ap.parse_args()

    factors = tuple(int(t) for t in args.factors.split(","))
    group = FinAbGroup(factors)
    e = build_multiplicative_universal(group, args.truncation)
    dual = group.dual()

    ns = list(range(1, args.max_n + 1))
    if args.negative:
        ns = [-n for n in reversed(ns)] + ns

    print(f"# universal multiplicative model, A = {group}, "
          f"truncation N = {args.truncation}")
    width = max(len(str(a)) for a in dual.elements())
    for n in ns:
        print(f"\nn = {n}")
        for alpha in dual.elements():
            val = render_value(vn_at_point(e, n, alpha))
            print(f"  alpha={str(alpha):<{width}}  v_{n} = {val}")
    print("\n# series forms (positive n)")
    for n in range(1, args.max_n + 1):
        data = vn_series(e, n)
        lifted = e.curve.lift(data.as_series)
        terms = [render_value(lifted.coeff(i)) for i in range(lifted.degree() + 1)]
        print(f"  v_{n}(x) coefficients (low to high): {terms}")


if __name__ == "__main__":
    main()
