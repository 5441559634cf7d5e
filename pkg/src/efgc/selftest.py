"""Named property suites exercising the library's main identities.

Each suite returns a list of result dicts {"name", "pass", "count", "note"};
the CLI `selftest` command and the acceptance tests both run these.
"""

from __future__ import annotations

import os
import random
from math import comb, gcd

from .curves import (
    build_additive,
    build_counterexample,
    build_multiplicative,
    build_multiplicative_universal,
    difference_function,
    eval_at_point,
    formal_expansion_at,
    regular_at_completion,
)
from .divisors import (
    FullSet,
    convolution,
    divisor_from_full_set,
    divisor_from_gen,
    divisor_sum,
    fD_norm,
    moments,
    moments_full_set_oracle,
    points_scheme,
)
from .groups import (
    FinAbGroup,
    presentations_enumerate,
    quotient,
    subgroup_intersection,
    subgroup_sum,
    subgroups_all,
)
from .residues import (
    DualityAlgebra,
    Functional,
    MeromorphicForm,
    residue,
    residue_inclusion_check,
    residue_of_derivative,
    residue_pairing_check,
    theta0,
    theta0_inverse,
    theta0_matrix,
    trace_of_multiplication,
    zeta,
)
from .rings import (
    GroupRing,
    IntegersMod,
    Poly,
    PrimeField,
    Q,
    RingValue,
    Z,
    det_division_free,
    ideal_membership,
    invert,
    poly_divmod,
    try_invert,
)
from .sampling import random_element, random_monic, random_poly
from .transfers import (
    cocycle,
    mackey_verify,
    transfer_element,
    transfer_element_quotient,
    transfer_ideal,
    vn_at_point,
    vn_series,
)

RING_MENU = [Z, Q, PrimeField(5), IntegersMod(6), GroupRing(Z, (2,))]


def work_precision(default):
    env = os.environ.get("EFGC_WORK_PRECISION")
    if env:
        return int(env)
    return default


class _Prop:
    """Collects per-case outcomes for one named property."""

    def __init__(self, name):
        self.name = name
        self.count = 0
        self.failed = 0
        self.note = ""

    def check(self, ok, note=""):
        self.count += 1
        if not ok:
            self.failed += 1
            if not self.note:
                self.note = note
        return ok

    def result(self):
        return {
            "name": self.name,
            "pass": self.failed == 0,
            "count": self.count,
            "note": self.note,
        }


def _results(props):
    return [p.result() for p in props]


# ---------------------------------------------------------------------------
# residue suite
# ---------------------------------------------------------------------------


def suite_residue(count=1000, seed=0):
    rng = random.Random(seed)
    p_poly = _Prop("res-of-polynomial-is-zero")
    p_deriv = _Prop("res-of-exact-derivative-is-zero")
    p_dlog = _Prop("res-of-dlog-is-degree")
    p_trace = _Prop("trace-formula")
    for ring in RING_MENU:
        for _ in range(count):
            q = random_monic(rng, ring, rng.randint(1, 8))
            p = random_poly(rng, ring, 8)
            # polynomial content p*q/q has residue 0
            p_poly.check(
                residue(MeromorphicForm(p * q, q)).is_zero(), f"{ring}"
            )
            p_deriv.check(
                residue_of_derivative(p, q).is_zero(), f"{ring}"
            )
            p_dlog.check(
                residue(MeromorphicForm(q.derivative(), q))
                == ring.from_int(q.degree()),
                f"{ring}",
            )
            f = random_monic(rng, ring, rng.randint(1, 8))
            g = random_poly(rng, ring, 8)
            lhs = residue(MeromorphicForm(g * f.derivative(), f))
            p_trace.check(
                lhs == trace_of_multiplication(g, f), f"{ring}"
            )
    return _results([p_poly, p_deriv, p_dlog, p_trace])


# ---------------------------------------------------------------------------
# duality suite
# ---------------------------------------------------------------------------


def suite_duality(count=200, seed=1):
    rng = random.Random(seed)
    p_det = _Prop("theta0-determinant-is-a-sign")
    p_eps = _Prop("epsilon-of-theta0-is-value-at-one")
    p_psi = _Prop("psi-pairing-normalization")
    p_trace = _Prop("trace-functional-gives-f-prime")
    p_pair = _Prop("residue-pairing")
    p_incl = _Prop("residue-inclusion")
    per_ring = max(1, count // len(RING_MENU))
    for ring in RING_MENU:
        for _ in range(per_ring):
            r = rng.randint(1, 8)
            f = random_monic(rng, ring, r)
            alg = DualityAlgebra(f)
            det = det_division_free(theta0_matrix(alg))
            p_det.check(
                det == ring.one() or det == -ring.one(), f"{ring}: det={det}"
            )
            for j in range(r):
                zj = zeta(alg, j)
                got = theta0_inverse(alg, theta0(zj)).at_one()
                p_eps.check(got == zj.at_one(), f"{ring} deg {r} j={j}")
            # (1 (x) psi)(e) = 1 for psi = theta0^{-1}(1)
            psi = theta0_inverse(alg, alg.A.one())
            p_psi.check(theta0(psi) == alg.A.one(), f"{ring} deg {r}")
            tau = Functional(
                alg,
                tuple(
                    trace_of_multiplication(
                        Poly(ring, [ring.zero()] * j + [ring.one()]), f
                    )
                    for j in range(r)
                ),
            )
            p_trace.check(
                theta0(tau) == alg.element(f.derivative()), f"{ring} deg {r}"
            )
            phi = Functional(
                alg, tuple(random_element(rng, ring) for _ in range(r))
            )
            a, b = residue_pairing_check(alg, phi)
            p_pair.check(a == b, f"{ring} deg {r}")
            g = random_monic(rng, ring, rng.randint(1, 3))
            a, b = residue_inclusion_check(f, f * g, phi)
            p_incl.check(a == b, f"{ring} deg {r}")
    return _results([p_det, p_eps, p_psi, p_trace, p_pair, p_incl])


# ---------------------------------------------------------------------------
# v_n identity suite
# ---------------------------------------------------------------------------


def _mult_vn(n):
    """v_n for the multiplicative law as a Z-polynomial."""
    return Poly(Z, [(-1) ** k * comb(n, k + 1) for k in range(n)])


def _compose(p, q):
    acc = Poly(Z, [])
    for c in reversed(p.coeffs):
        acc = acc * q + Poly(Z, [c])
    return acc


def _divisible(p, q):
    quo, rem = poly_divmod(p, q)
    return rem.is_zero()


def suite_vn(max_n=6, changes=50, seed=2):
    rng = random.Random(seed)
    xpoly = Poly(Z, [0, 1])
    p_nm = _Prop("vn-composition-rule")
    p_sq = _Prop("vn-square-congruence")
    p_asym = _Prop("vn-asymmetry-identity")
    p_cop = _Prop("vn-coprime-congruence")
    p_bi = _Prop("vn-bicyclic-congruence")
    p_series = _Prop("vn-series-matches-points")
    p_inv = _Prop("vn-coordinate-invariance")
    v = {n: _mult_vn(n) for n in range(1, max_n * max_n + 1)}
    x_n = {n: xpoly * v[n] for n in v}
    w = {n: Poly(Z, list((v[n] - Poly(Z, [n])).coeffs[1:])) for n in v}
    for n in range(1, max_n + 1):
        for m in range(1, max_n + 1):
            vm_n = _compose(v[m], x_n[n])
            vn_m = _compose(v[n], x_n[m])
            p_nm.check(
                v[n * m] == v[n] * vm_n and v[n * m] == v[m] * vn_m,
                f"n={n} m={m}",
            )
            p_sq.check(
                v[n] * v[n] - Poly(Z, [n]) * v[n] == w[n] * x_n[n],
                f"n={n}",
            )
            wm_n = _compose(w[m], x_n[n])
            wn_m = _compose(w[n], x_n[m])
            lhs = v[n] * v[n] * wm_n - v[m] * v[m] * wn_m
            mid = Poly(Z, [n]) * w[m] - Poly(Z, [m]) * w[n]
            rhs = v[n] * w[m] - v[m] * w[n]
            p_asym.check(lhs == mid and mid == rhs, f"n={n} m={m}")
            if gcd(n, m) == 1:
                p_cop.check(
                    _divisible(vn_m - v[n], x_n[n]), f"n={n} m={m}"
                )
                p_bi.check(
                    _divisible(v[n * m] - vn_m * vm_n, x_n[n * m]),
                    f"n={n} m={m}",
                )
    # additive law: v_n = n, all identities collapse to integers
    for n in range(1, max_n + 1):
        for m in range(1, max_n + 1):
            p_nm.check(n * m == n * m, "additive")
    # series values agree with the pointwise recursion
    for factors in [(2,), (4,)]:
        e = build_multiplicative_universal(FinAbGroup(factors), 2)
        for n in range(1, max_n + 1):
            vd = vn_series(e, n)
            for alpha, val in vd.at_points:
                got = eval_at_point(e, vd.as_series, e.c(alpha))
                p_series.check(got == val, f"{factors} n={n} alpha={alpha}")
    # coordinate invariance at torsion points
    for factors in [(2,), (4,)]:
        group = FinAbGroup(factors)
        e = build_multiplicative_universal(group, 2)
        curve = e.curve
        base = e.base
        dual = group.dual()
        units = [base.one(), -base.one()] + [
            base.basis_element(a) for a in dual.elements() if any(a)
        ]
        for _ in range(changes):
            # a unit of R: constant unit plus a multiple of the nilpotent f
            head = rng.choice(units)
            tail = Poly(
                base,
                [base.from_int(rng.randint(-3, 3)) for _ in range(2)],
            )
            u_poly = Poly(base, [head]) + tail * curve.f
            u_elem = curve.element(u_poly)
            u_inv = invert(u_elem)
            n = rng.randint(1, max_n)
            vd = vn_series(e, n)
            xn_elem = curve.x() * vd.as_series
            v_prime = vd.as_series * u_poly.eval(xn_elem) * u_inv
            for alpha in dual.elements():
                if dual.smul(n, alpha) == dual.zero():
                    got = eval_at_point(e, v_prime, e.c(alpha))
                    want = vn_at_point(e, n, alpha)
                    p_inv.check(
                        got == want, f"{factors} n={n} alpha={alpha}"
                    )
    return _results([p_nm, p_sq, p_asym, p_cop, p_bi, p_series, p_inv])


# ---------------------------------------------------------------------------
# transfer suite
# ---------------------------------------------------------------------------

TRANSFER_GROUPS = [(2,), (3,), (4,), (2, 2), (6,), (2, 4), (2, 2, 2)]


def _dual_automorphisms(group):
    """Coordinate maps generating a piece of Aut(A*): global multipliers
    coprime to the exponent, plus swaps of equal invariant factors."""
    dual = group.dual()
    factors = dual.factors
    exponent = 1
    for f in factors:
        exponent = exponent * f // gcd(exponent, f)
    maps = []
    for k in range(2, exponent):
        if gcd(k, exponent) == 1:
            maps.append(lambda a, k=k: tuple(
                (k * c) % f for c, f in zip(a, factors)
            ))
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            if factors[i] == factors[j]:

                def swap(a, i=i, j=j):
                    b = list(a)
                    b[i], b[j] = b[j], b[i]
                    return tuple(b)

                maps.append(swap)
    return maps


def _apply_base_map(base, value, coord_map):
    moved = tuple(
        sorted((coord_map(coords), c) for coords, c in value.payload)
    )
    return RingValue(base, moved)


def suite_transfer(groups=TRANSFER_GROUPS, seed=3):
    p_aug = _Prop("transfer-of-zero-phi-is-order")
    p_pres = _Prop("presentation-independence")
    p_kill = _Prop("transfer-kills-ideal")
    p_prod = _Prop("transfer-product-rule")
    p_quot = _Prop("transfer-quotient-congruence")
    p_iso = _Prop("transfer-isomorphism-invariance")
    for factors in groups:
        group = FinAbGroup(factors)
        dual = group.dual()
        e = build_multiplicative_universal(group, 1)
        base = e.base
        subs = subgroups_all(dual)
        t = {u: transfer_element(e, u) for u in subs}
        # (a) with phi = 0
        ea = build_additive(
            Q, group, {a: Q.zero() for a in dual.elements()}, 1
        )
        for u in subs:
            p_aug.check(
                transfer_element(ea, u) == Q.from_int(u.order),
                f"{factors} U={u.label()}",
            )
            for pres in presentations_enumerate(u, limit=60):
                p_pres.check(
                    transfer_element(e, u, pres) == t[u],
                    f"{factors} U={u.label()}",
                )
            for c in transfer_ideal(e, u):
                p_kill.check(
                    (t[u] * c).is_zero(), f"{factors} U={u.label()}"
                )
        # (b)/(g): product rule
        for vsub in subs:
            for wsub in subs:
                inter = subgroup_intersection(vsub, wsub)
                total = subgroup_sum(vsub, wsub)
                p_prod.check(
                    t[vsub] * t[wsub]
                    == t[total] * base.from_int(inter.order),
                    f"{factors} V={vsub.label()} W={wsub.label()}",
                )
        # (f): quotient congruence mod I(V)
        coc = cocycle(e)
        for u in subs:
            for vsub in subs:
                if not vsub.issubset(u):
                    continue
                qd = quotient(u, vsub)
                rhs = t[vsub] * transfer_element_quotient(e, qd, coc)
                gens = transfer_ideal(e, vsub)
                p_quot.check(
                    ideal_membership(t[u] - rhs, gens),
                    f"{factors} U={u.label()} V={vsub.label()}",
                )
        # (d): automorphism equivariance through the universal base
        for theta in _dual_automorphisms(group):
            for u in subs:
                image = {theta(a) for a in u.elements}
                from .groups import Subgroup

                u2 = Subgroup(dual, frozenset(image))
                p_iso.check(
                    _apply_base_map(base, t[u], theta) == t[u2],
                    f"{factors} U={u.label()}",
                )
    return _results([p_aug, p_pres, p_kill, p_prod, p_quot, p_iso])


# ---------------------------------------------------------------------------
# Mackey suite
# ---------------------------------------------------------------------------

MACKEY_GROUPS = [(2,), (3,), (4,), (2, 2), (5,), (6,), (7,), (8,), (2, 4), (2, 2, 2)]


def suite_mackey(groups=MACKEY_GROUPS, seed=4):
    p_mult = _Prop("mackey-axioms-multiplicative-universal")
    p_add = _Prop("mackey-axioms-additive-augmentation")
    for factors in groups:
        group = FinAbGroup(factors)
        e = build_multiplicative_universal(group, 1)
        for row in mackey_verify(e):
            p_mult.check(
                row["pass"], f"{factors} {row['axiom']} {row['chain']}"
            )
        ea = build_additive(
            Q, group, {a: Q.zero() for a in group.dual().elements()}, 1
        )
        for row in mackey_verify(ea):
            p_add.check(
                row["pass"], f"{factors} {row['axiom']} {row['chain']}"
            )
    return _results([p_mult, p_add])


# ---------------------------------------------------------------------------
# divisor suite
# ---------------------------------------------------------------------------


def _divisor_models():
    F5, F7 = PrimeField(5), PrimeField(7)
    models = []
    models.append(
        build_multiplicative(
            Q, FinAbGroup((2,)), {(0,): Q.one(), (1,): Q.from_int(-1)}, 3
        )
    )
    models.append(
        build_multiplicative(
            F5,
            FinAbGroup((4,)),
            {(k,): F5.from_int(pow(2, k, 5)) for k in range(4)},
            2,
        )
    )
    models.append(
        build_multiplicative(
            F7, FinAbGroup((2,)), {(0,): F7.one(), (1,): F7.from_int(6)}, 3
        )
    )
    models.append(build_multiplicative_universal(FinAbGroup((2,)), 3))
    return models


def _random_full_set(rng, e, deg):
    """deg point values drawn from the characters, never exceeding the
    truncation's multiplicity bound for any single point."""
    chars = [e.c(a) for a in e.group.dual().elements()]
    counts = {i: 0 for i in range(len(chars))}
    pts = []
    for _ in range(deg):
        open_slots = [i for i, c in counts.items() if c < e.curve.N]
        if not open_slots:
            break
        i = rng.choice(open_slots)
        counts[i] += 1
        pts.append(chars[i])
    return pts, counts, chars


def _monic_normalize(curve, elem):
    lifted = curve.lift(elem)
    inv = try_invert(lifted.leading())
    if inv is None:
        return None
    return lifted.map_coeffs(lambda c: c * inv)


def suite_divisor(count=6, seed=5):
    rng = random.Random(seed)
    p_zero = _Prop("norm-vanishes-on-divisor")
    p_ideal = _Prop("norm-generates-divisor-ideal")
    p_reg = _Prop("norm-is-regular")
    p_mult = _Prop("norm-multiplicativity")
    p_full = _Prop("full-set-factorization")
    p_conv = _Prop("convolution-brute-force")
    p_rank = _Prop("points-scheme-rank")
    p_mom = _Prop("moments-match-brute-force")
    p_dist = _Prop("moments-distinguish-divisors")
    for e in _divisor_models():
        curve = e.curve
        diff = difference_function(e)
        for _ in range(count):
            deg = rng.randint(1, 4)
            pts, counts, chars = _random_full_set(rng, e, deg)
            deg = len(pts)
            d = divisor_from_full_set(e, pts)
            fd = fD_norm(d, e)
            gen_elem = curve.element(d.gen)
            _, rem = poly_divmod(curve.lift(fd), d.gen)
            p_zero.check(rem.is_zero(), f"{curve.base}")
            p_ideal.check(
                ideal_membership(fd, [gen_elem])
                and ideal_membership(gen_elem, [fd]),
                f"{curve.base}",
            )
            p_reg.check(regular_at_completion(curve, fd), f"{curve.base}")
            # multiplicativity against a single extra point with room left
            open_chars = [
                chars[i] for i, c in counts.items() if c < curve.N
            ]
            pts2 = [rng.choice(open_chars if open_chars else chars)]
            d2 = divisor_from_full_set(e, pts2)
            fd2 = fD_norm(d2, e)
            if open_chars:
                fsum = fD_norm(divisor_sum(d, d2), e)
                p_mult.check(fsum == fd * fd2, f"{curve.base}")
            # full-set factorization up to a unit
            prod = curve.ring.one()
            for u in pts:
                prod = prod * curve.map_tensor(
                    diff, curve.scalar(u), curve.x(), check=False
                )
            a = _monic_normalize(curve, fd)
            b = _monic_normalize(curve, prod)
            p_full.check(
                a is not None and b is not None and a == b, f"{curve.base}"
            )
            # convolution against pairwise sums
            conv = convolution(d, d2, e)
            sums = [
                curve.map_tensor(e.sigma, u, w, check=False)
                for u in pts
                for w in pts2
            ]
            brute = divisor_from_full_set(e, sums)
            p_conv.check(conv.gen == brute.gen, f"{curve.base}")
            # moments for small degrees
            if deg <= 3:
                cutoff = curve.rank
                try:
                    mv = moments(d, e, cutoff)
                    mo = moments_full_set_oracle(
                        d, e, FullSet(tuple(pts)), min(cutoff, curve.rank)
                    )
                    p_mom.check(
                        mv.entries == mo.entries, f"{curve.base} deg {deg}"
                    )
                except Exception as exc:
                    p_mom.check(False, f"{curve.base}: {exc}")
        # points-scheme ranks over field models only
        if isinstance(curve.base, PrimeField) or curve.base == Q:
            for s in range(1, 5):
                pts, _, _ = _random_full_set(rng, e, s)
                s = len(pts)
                d = divisor_from_full_set(e, pts)
                for r in range(0, s + 1):
                    ps = points_scheme(d, r)
                    expect = 1
                    for i in range(r):
                        expect *= s - i
                    p_rank.check(
                        ps.rank == expect, f"{curve.base} s={s} r={r}"
                    )
    # exhaustive degree-2 distinctness over F7
    F7 = PrimeField(7)
    e7 = build_multiplicative(
        F7, FinAbGroup((2,)), {(0,): F7.one(), (1,): F7.from_int(6)}, 2
    )
    curve = e7.curve
    fN = curve.fN
    seen = {}
    for a0 in range(7):
        for a1 in range(7):
            g = Poly(F7, [F7.from_int(a0), F7.from_int(a1), F7.one()])
            power = curve.f
            ok = False
            for _ in range(curve.N):
                _, rem = poly_divmod(power, g)
                if rem.is_zero():
                    ok = True
                    break
                power = power * curve.f
            if not ok:
                continue
            d = divisor_from_gen(curve, g)
            mv = moments(d, e7, curve.rank)
            key = (tuple(g.coeff(i).payload for i in range(3)),)
            seen[key] = mv.entries
    vals = list(seen.values())
    distinct = all(
        vals[i] != vals[j]
        for i in range(len(vals))
        for j in range(i + 1, len(vals))
    )
    p_dist.check(len(vals) >= 2 and distinct, f"{len(vals)} divisors")
    return _results(
        [p_zero, p_ideal, p_reg, p_mult, p_full, p_conv, p_rank, p_mom, p_dist]
    )


# ---------------------------------------------------------------------------
# counterexample suite
# ---------------------------------------------------------------------------


def suite_counterexample(truncation=17, K=4, seed=6):
    precision = work_precision(2 ** (K + 1))
    e = build_counterexample(truncation)
    curve = e.curve
    base = curve.base
    y = curve.y()
    fk = curve.ring.zero()
    for k in range(K + 1):
        fk = fk + curve.scalar(base.u(2 ** (k + 1) - 1)) * y ** (2**k)
    p_nz = _Prop("kernel-element-nonzero")
    p_exp = _Prop("kernel-element-killed-by-expansions")
    p_nz.check(not fk.is_zero(), f"N={truncation} K={K}")
    for alpha in [(0,), (1,)]:
        lam = formal_expansion_at(e, alpha, precision)
        p_exp.check(
            lam(fk).is_zero(), f"alpha={alpha} precision={precision}"
        )
    return _results([p_nz, p_exp])


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

SUITES = {
    "residue": suite_residue,
    "duality": suite_duality,
    "vn": suite_vn,
    "transfer": suite_transfer,
    "mackey": suite_mackey,
    "divisor": suite_divisor,
    "counterexample": suite_counterexample,
}


def run_suites(name="all"):
    """Run one suite (or all); returns ordered (suite, results) pairs."""
    names = list(SUITES) if name == "all" else [name]
    out = []
    for n in names:
        out.append((n, SUITES[n]()))
    return out
