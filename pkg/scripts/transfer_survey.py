#!/usr/bin/env python3
"""Survey transfer elements, their ideals, and the Burnside character eta
across a family of small groups, reporting every product-rule check.

Example:
    python3 scripts/transfer_survey.py --groups 2 3 4 2,2 6 2,4
"""

import argparse
import json

from efgc.curves import build_multiplicative_universal
from efgc.groups import (
    BurnsideElement,
    FinAbGroup,
    burnside_mul,
    subgroup_intersection,
    subgroup_sum,
    subgroups_all,
)
from efgc.rings import render_value
from efgc.transfers import eta_burnside, transfer_element, transfer_ideal


def survey(factors):
    group = FinAbGroup(factors)
    e = build_multiplicative_universal(group, 1)
    dual = group.dual()
    subs = subgroups_all(dual)
    t = {u: transfer_element(e, u) for u in subs}
    rows = []
    for u in subs:
        rows.append({
            "U": u.label(),
            "t": render_value(t[u]),
            "ideal": [render_value(c) for c in transfer_ideal(e, u)],
        })
    checks = []
    for v in subs:
        for w in subs:
            lhs = t[v] * t[w]
            rhs = t[subgroup_sum(v, w)] * e.base.from_int(
                subgroup_intersection(v, w).order
            )
            checks.append({
                "V": v.label(), "W": w.label(), "pass": lhs == rhs,
            })
    eta = eta_burnside(e)
    eta_rows = []
    for b in subgroups_all(group):
        z = BurnsideElement.basis(group, b)
        eta_rows.append({
            "basis": f"[A/{b.label()}]",
            "eta": render_value(eta(z)),
            "square-consistent": eta(burnside_mul(z, z)) == eta(z) * eta(z),
        })
    return {
        "group": str(group),
        "transfers": rows,
        "product_rule": checks,
        "eta": eta_rows,
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--groups", nargs="+", default=["2", "3", "4", "2,2", "6"])
    ap.add_argument("--json", action="store_true",
                    help="emit one JSON document instead of text")
    args = ap.parse_args()

    docs = [survey(tuple(int(t) for t in g.split(","))) for g in args.groups]
    if args.json:
        print(json.dumps(docs, indent=2))
        return
    for doc in docs:
        print(f"\n== A = {doc['group']} ==")
        for row in doc["transfers"]:
            print(f"  t({row['U']}) = {row['t']}   ideal = {row['ideal']}")
        bad = [c for c in doc["product_rule"] if not c["pass"]]
        print(f"  product rule: {len(doc['product_rule'])} checks, "
              f"{len(bad)} failures")
        for row in doc["eta"]:
            print(f"  eta{row['basis']} = {row['eta']}"
                  f"  (square-consistent: {row['square-consistent']})")


if __name__ == "__main__":
    main()
