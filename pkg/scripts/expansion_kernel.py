#!/usr/bin/env python3
"""Probe the square-zero-extension model whose two formal expansions share a
nonzero common kernel element, scanning truncation depths and kernel sizes.

For each truncation N the kernel candidate is
    f_K = sum_{k=0}^{K} u_{2^{k+1}-1} * y^(2^k)
and the script reports whether it is nonzero and killed by both expansions
up to the stated t-adic precision.

Example:
    python3 scripts/expansion_kernel.py --max-trunc 17 --k 4
"""

import argparse

from efgc.curves import build_counterexample, formal_expansion_at


def probe(truncation, K, precision):
    e = build_counterexample(truncation)
    curve = e.curve
    base = curve.base
    y = curve.y()
    fk = curve.ring.zero()
    for k in range(K + 1):
        fk = fk + curve.scalar(base.u(2 ** (k + 1) - 1)) * y ** (2**k)
    nonzero = not fk.is_zero()
    killed = all(
        formal_expansion_at(e, alpha, precision)(fk).is_zero()
        for alpha in [(0,), (1,)]
    )
    return nonzero, killed


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-trunc", type=int, default=17)
    ap.add_argument("--k", type=int, default=4,
                    help="largest index K in the kernel candidate")
    args = ap.parse_args()

    precision = 2 ** (args.k + 1)
    # the expansion horizon is 2N (f has degree 2), so start deep enough
    start = max(2, (precision + 1) // 2)
    print(f"# kernel candidate with K = {args.k}, precision t^{precision}")
    print(f"{'N':>4}  {'nonzero':>8}  {'killed':>7}")
    for truncation in range(start, args.max_trunc + 1):
        nonzero, killed = probe(truncation, args.k, precision)
        print(f"{truncation:>4}  {str(nonzero):>8}  {str(killed):>7}")


if __name__ == "__main__":
    main()
