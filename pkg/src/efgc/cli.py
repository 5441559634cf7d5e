"""The `efgc` command-line tool.

Subcommands: validate, vn, transfer, mackey, divisor, residue, duality,
moments, selftest.  Output is a deterministic document (JSON by default,
also csv/pretty); exit code 0 on success, 1 on failed checks, 2 on bad
input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from .curves import validate_efg
from .divisors import euler_class, fD_norm, moments
from .errors import EfgcError, ParseError
from .groups import BurnsideElement, subgroups_all
from .parse import load_model_spec, parse_divisor_expr, parse_poly, parse_ring
from .residues import (
    DualityAlgebra,
    MeromorphicForm,
    residue,
    residue_pairing_check,
    theta0_matrix,
    zeta,
)
from .rings import det_division_free, render_poly, render_value
from .selftest import SUITES, run_suites
from .transfers import (
    eta_burnside,
    mackey_verify,
    transfer_element,
    vn_at_point,
)


def _digest(path):
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _document(command, inputs, results):
    return {
        "schema": "efgc/1",
        "command": command,
        "inputs": inputs,
        "results": results,
    }


def _emit(doc, out_format):
    if out_format == "json":
        print(json.dumps(doc, indent=2))
    elif out_format == "csv":
        rows = _csv_rows(doc["results"])
        for row in rows:
            print(",".join(str(c) for c in row))
    else:
        print(f"# efgc {doc['command']}")
        _pretty(doc["results"], indent="")


def _csv_rows(results):
    if isinstance(results, dict) and len(results) == 1:
        (results,) = results.values()
    if isinstance(results, list) and results and isinstance(results[0], dict):
        keys = list(results[0].keys())
        yield keys
        for row in results:
            yield [row.get(k, "") for k in keys]
    elif isinstance(results, dict):
        yield ["key", "value"]
        for k, v in results.items():
            yield [k, v]
    else:
        yield [results]


def _pretty(node, indent):
    if isinstance(node, dict):
        for k, v in node.items():
            if isinstance(v, (dict, list)):
                print(f"{indent}{k}:")
                _pretty(v, indent + "  ")
            else:
                print(f"{indent}{k}: {v}")
    elif isinstance(node, list):
        for v in node:
            if isinstance(v, (dict, list)):
                _pretty(v, indent)
                print()
            else:
                print(f"{indent}- {v}")
    else:
        print(f"{indent}{node}")


def _load(args):
    e = load_model_spec(args.spec)
    inputs = {"spec": args.spec, "sha256": _digest(args.spec)}
    return e, inputs


# ---------------------------------------------------------------------------
# command handlers; each returns (document, exit_code)
# ---------------------------------------------------------------------------


def cmd_validate(args):
    e, inputs = _load(args)
    report = validate_efg(e, deep=True)
    results = [
        {"check": name, "pass": ok, "note": note} for name, ok, note in report
    ]
    code = 0 if all(r["pass"] for r in results) else 1
    return _document("validate", inputs, results), code


def cmd_vn(args):
    e, inputs = _load(args)
    ns = list(range(1, args.max_n + 1))
    if args.negative:
        ns = list(range(-args.max_n, 0)) + ns
    table = []
    for n in ns:
        for alpha in e.group.dual().elements():
            table.append(
                {
                    "n": n,
                    "alpha": ",".join(str(c) for c in alpha),
                    "value": render_value(vn_at_point(e, n, alpha)),
                }
            )
    return _document("vn", inputs, {"table": table}), 0


def cmd_transfer(args):
    e, inputs = _load(args)
    dual = e.group.dual()
    subs = subgroups_all(dual)
    table = [
        {"U": u.label(), "t": render_value(transfer_element(e, u))}
        for u in subs
    ]
    eta = eta_burnside(e)
    asubs = subgroups_all(e.group)
    eta_vec = [
        {
            "basis": f"[A/{b.label()}]",
            "value": render_value(eta(BurnsideElement.basis(e.group, b))),
        }
        for b in asubs
    ]
    checks = []
    for b0 in asubs:
        for b1 in asubs:
            z0 = BurnsideElement.basis(e.group, b0)
            z1 = BurnsideElement.basis(e.group, b1)
            from .groups import burnside_mul

            lhs = eta(burnside_mul(z0, z1))
            rhs = eta(z0) * eta(z1)
            checks.append(
                {
                    "pair": f"[A/{b0.label()}]*[A/{b1.label()}]",
                    "pass": lhs == rhs,
                }
            )
    results = {
        "transfers": table,
        "eta": eta_vec,
        "ring_map_checks": checks,
    }
    code = 0 if all(c["pass"] for c in checks) else 1
    return _document("transfer", inputs, results), code


def cmd_mackey(args):
    e, inputs = _load(args)
    report = mackey_verify(e)
    code = 0 if all(r["pass"] for r in report) else 1
    return _document("mackey", inputs, report), code


def cmd_divisor(args):
    e, inputs = _load(args)
    if not args.expr:
        raise ParseError("divisor needs --expr")
    d = parse_divisor_expr(e, args.expr)
    inputs = dict(inputs, expr=args.expr)
    fd = fD_norm(d, e)
    results = {
        "degree": d.degree,
        "gen": [render_value(d.gen.coeff(i)) for i in range(d.degree + 1)],
        "fD": render_poly(d.curve.lift(fd), "x"),
        "euler": render_value(euler_class(d, e)),
    }
    return _document("divisor", inputs, results), 0


def cmd_residue(args):
    ring = parse_ring(args.ring)
    num = parse_poly(ring, args.num)
    den = parse_poly(ring, args.den)
    inputs = {"ring": args.ring, "num": args.num, "den": args.den}
    value = residue(MeromorphicForm(num, den))
    return _document("residue", inputs, {"residue": render_value(value)}), 0


def cmd_duality(args):
    ring = parse_ring(args.ring)
    f = parse_poly(ring, args.den)
    inputs = {"ring": args.ring, "f": args.den}
    alg = DualityAlgebra(f)
    mat = theta0_matrix(alg)
    rows = [
        [render_value(mat.at(i, j)) for j in range(alg.rank)]
        for i in range(alg.rank)
    ]
    det = det_division_free(mat)
    pairs = []
    for j in range(alg.rank):
        a, b = residue_pairing_check(alg, zeta(alg, j))
        pairs.append(
            {
                "functional": f"zeta{j}",
                "residue": render_value(a),
                "value_at_one": render_value(b),
                "pass": a == b,
            }
        )
    results = {
        "theta0_matrix": rows,
        "det": render_value(det),
        "pairing_checks": pairs,
    }
    code = 0 if all(p["pass"] for p in pairs) else 1
    return _document("duality", inputs, results), code


def cmd_moments(args):
    e, inputs = _load(args)
    if not args.expr:
        raise ParseError("moments needs --expr")
    d = parse_divisor_expr(e, args.expr)
    inputs = dict(inputs, expr=args.expr)
    cutoff = args.max_n if args.max_n else e.curve.rank
    mv = moments(d, e, cutoff)
    entries = [
        {"beta": list(beta), "value": render_value(v)}
        for beta, v in mv.entries
    ]
    return _document(
        "moments", inputs, {"degree": mv.degree, "entries": entries}
    ), 0


def cmd_selftest(args):
    results = []
    ok = True
    for suite, rows in run_suites(args.suite):
        for r in rows:
            ok = ok and r["pass"]
            results.append(dict(suite=suite, **r))
    return _document("selftest", {"suite": args.suite}, results), (
        0 if ok else 1
    )


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

_NEEDS_SPEC = {"validate", "vn", "transfer", "mackey", "divisor", "moments"}


def build_parser():
    ap = argparse.ArgumentParser(
        prog="efgc",
        description="exact algebra for equivariant formal groups on "
        "truncated multicurves",
    )
    sub = ap.add_subparsers(dest="command", required=True)
    handlers = {
        "validate": cmd_validate,
        "vn": cmd_vn,
        "transfer": cmd_transfer,
        "mackey": cmd_mackey,
        "divisor": cmd_divisor,
        "residue": cmd_residue,
        "duality": cmd_duality,
        "moments": cmd_moments,
        "selftest": cmd_selftest,
    }
    for name, fn in handlers.items():
        p = sub.add_parser(name)
        if name in _NEEDS_SPEC:
            p.add_argument("spec", help="model spec (TOML)")
        p.add_argument("--out", choices=["json", "csv", "pretty"],
                       default="json")
        p.add_argument("--max-n", type=int, default=3)
        p.add_argument("--negative", action="store_true")
        p.add_argument("--expr", default=None)
        p.add_argument("--num", default="0")
        p.add_argument("--den", default="1")
        p.add_argument("--ring", default="Q")
        p.add_argument(
            "--suite", default="all", choices=["all"] + sorted(SUITES)
        )
        p.set_defaults(handler=fn)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        doc, code = args.handler(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except EfgcError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    _emit(doc, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
