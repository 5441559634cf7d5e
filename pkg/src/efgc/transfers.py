"""The v_n calculus, transfer elements t(U, phi), the Burnside-ring map eta,
product-type analysis, and the family of subquotient rings {k_B} with
restriction and transfer maps.

Point-level v_n values come from a scalar recursion and are exact over every
supported base; series-level v_n exists only for the multiplicative and
additive group laws, where the n-series is an honest polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .curves import eval_at_point
from .errors import (
    ExactDivisionFailed,
    NotASubgroup,
    NotInvertibleOrder,
    UnsupportedModel,
)
from .groups import (
    annihilator,
    quotient,
    smith_presentation,
    subgroup_intersection,
    subgroup_sum,
    subgroups_all,
)
from .rings import Poly, RingValue, embed, ideal_membership, is_unit, try_invert


# ---------------------------------------------------------------------------
# the cocycle sigma = x0 + x1 + x0*x1*F
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Cocycle:
    efg: object
    F: RingValue  # element of the tensor ring

    def at(self, a, b):
        """F(a, b) for scalar points a, b of the base."""
        return self.efg.curve.map_tensor(self.F, a, b, check=False)


def cocycle(e):
    """Solve sigma = x0 + x1 + x0*x1*F for F by two exact shifts.

    sigma - x0 - x1 vanishes on both axes, so its canonical representative
    is divisible by x1 and then coefficientwise by x0 with no remainder.
    """
    curve = e.curve
    T = curve.tensor_ring()
    R = curve.ring
    num = e.sigma - embed(curve.x(), T) - T.gen()
    pay = num.payload
    if pay[0] != R._zero():
        raise ExactDivisionFailed("sigma is not unital in x1")
    zero_base = curve.base._zero()
    coeffs = []
    for c in pay[1:] + (R._zero(),):
        if c[0] != zero_base:
            raise ExactDivisionFailed("sigma is not unital in x0")
        coeffs.append(c[1:] + (zero_base,))
    F = T.val(tuple(coeffs))
    x0 = embed(curve.x(), T)
    x1 = T.gen()
    assert x0 + x1 + x0 * x1 * F == e.sigma
    return Cocycle(e, F)


# ---------------------------------------------------------------------------
# v_n at points and as series
# ---------------------------------------------------------------------------


def _v_minus_one(e, c):
    """v_{-1}(c): the exact quotient iota/x evaluated at c."""
    curve = e.curve
    lifted = curve.lift(e.iota)
    if not lifted.coeff(0).is_zero():
        raise ExactDivisionFailed("iota does not vanish at the origin")
    return Poly(curve.base, list(lifted.coeffs[1:])).eval(c)


def vn_at_value(e, n, c, _coc=None):
    """v_n at an arbitrary point value c (a base element with f(c)^N = 0)."""
    if n == 0:
        raise ValueError("n must be nonzero")
    base = e.base
    if n < 0:
        iota_c = eval_at_point(e, e.iota, c)
        return _v_minus_one(e, c) * vn_at_value(e, -n, iota_c, _coc)
    coc = _coc if _coc is not None else cocycle(e)
    v = base.one()
    p = c
    for _ in range(n - 1):
        v = base.one() + (base.one() + c * coc.at(c, p)) * v
        p = e.curve.map_tensor(e.sigma, c, p, check=False)
    return v


def vn_at_point(e, n, alpha, _coc=None):
    return vn_at_value(e, n, e.c(alpha), _coc)


@dataclass(frozen=True)
class VnData:
    n: int
    as_series: object  # CurveElement v_n, or None
    w_series: object  # CurveElement w_n, or None
    at_points: tuple  # sorted ((alpha coords), RingValue)


def _model_kind(e):
    """'multiplicative', 'additive', or None, read off from the cocycle."""
    T = e.curve.tensor_ring()
    F = cocycle(e).F
    if F.is_zero():
        return "additive"
    if F == -T.one():
        return "multiplicative"
    return None


def vn_series(e, n):
    """v_n = x_n/x and w_n = (v_n - n)/x for substitution-closed models."""
    if n < 1:
        raise ValueError("series form needs n >= 1")
    kind = _model_kind(e)
    curve = e.curve
    if kind == "multiplicative":
        # x_n = 1 - (1-x)^n, so v_n = sum_{k>=1} (-1)^{k+1} C(n,k) x^{k-1}
        vcoeffs = [(-1) ** k * comb(n, k + 1) for k in range(n)]
    elif kind == "additive":
        vcoeffs = [n]
    else:
        raise UnsupportedModel(
            "series-level v_n needs the multiplicative or additive group law"
        )
    x = curve.x()
    v = curve.scalar(curve.base.zero())
    for a in reversed(vcoeffs):
        v = v * x + curve.scalar(curve.base.from_int(a))
    w = curve.scalar(curve.base.zero())
    for a in reversed(vcoeffs[1:]):
        w = w * x + curve.scalar(curve.base.from_int(a))
    coc = cocycle(e)
    pts = tuple(
        sorted(
            (tuple(a), vn_at_point(e, n, a, coc))
            for a in e.group.dual().elements()
        )
    )
    return VnData(n, v, w, pts)


# ---------------------------------------------------------------------------
# transfer elements and the Burnside-ring map
# ---------------------------------------------------------------------------


def transfer_element(e, u, presentation=None):
    """t(U, phi) = prod over a presentation of v_{ord(alpha)}(c_alpha)."""
    if presentation is None:
        presentation = smith_presentation(u)
    coc = cocycle(e)
    t = e.base.one()
    for alpha in presentation.elements:
        t = t * vn_at_point(e, u.group.order_of(alpha), alpha, coc)
    return t


def transfer_element_quotient(e, q, _coc=None):
    """t(U/V, phi-bar) using the deterministic coset representatives of q."""
    coc = _coc if _coc is not None else cocycle(e)
    t = e.base.one()
    for rep, order in q.generators:
        t = t * vn_at_value(e, order, e.c(rep), coc)
    return t


def transfer_ideal(e, u):
    """The generators {c_u : u in U} of I(U)."""
    return [e.c(a) for a in u.sorted_elements()]


def eta_burnside(e):
    """The ring map from the Burnside ring: [A/B] -> t(ann(B), phi)."""
    cache = {}

    def eta(z):
        if z.group != e.group:
            raise NotASubgroup("Burnside element belongs to a different group")
        acc = e.base.zero()
        for sub, coeff in z.coeffs:
            if sub not in cache:
                cache[sub] = transfer_element(e, annihilator(sub))
            acc = acc + cache[sub] * e.base.from_int(coeff)
        return acc

    return eta


# ---------------------------------------------------------------------------
# the Mackey family {k_B}
# ---------------------------------------------------------------------------


@dataclass
class MackeyData:
    """k_B = k/I(ann B) for each B <= A, with res/trf between them.

    Elements of every k_B are plain base-ring elements; equality is the
    congruence mod the stored ideal generators.
    """

    efg: object
    subgroups: list
    ideals: dict  # B -> list of generators of I(ann B)
    tau: dict  # (B, C) with C <= B -> transfer unit

    def equal_in(self, b, r, s):
        return ideal_membership(r - s, self.ideals[b])

    def res(self, b, c, r):
        """k_B -> k_C for C <= B; the representative is unchanged."""
        if not c.issubset(b):
            raise NotASubgroup("restriction needs C <= B")
        return r

    def trf(self, c, b, r):
        """k_C -> k_B for C <= B: multiply a lift by tau^B_C."""
        if not c.issubset(b):
            raise NotASubgroup("transfer needs C <= B")
        return r * self.tau[(b, c)]


def mackey_build(e):
    subs = subgroups_all(e.group)
    ideals = {}
    tau = {}
    coc = cocycle(e)
    ann = {b: annihilator(b) for b in subs}
    for b in subs:
        ideals[b] = transfer_ideal(e, ann[b])
        for c in subs:
            if c.issubset(b):
                q = quotient(ann[c], ann[b])
                tau[(b, c)] = transfer_element_quotient(e, q, coc)
    return MackeyData(e, subs, ideals, tau)


def _spanning_set(e):
    """A k-module spanning set of the base used for congruence testing."""
    base = e.base
    try:
        return [v for v in base.basis()]
    except Exception:
        return [base.one()] + [e.c(a) for a in e.group.dual().elements()]


def mackey_verify(e):
    """Check the Mackey/Green axioms on all chains; returns a report list."""
    md = mackey_build(e)
    span = _spanning_set(e)
    report = []

    def record(axiom, chain, ok):
        report.append({"axiom": axiom, "chain": chain, "pass": bool(ok)})

    subs = md.subgroups
    for b in subs:
        below_b = [c for c in subs if c.issubset(b)]
        for c in below_b:
            ok = all(md.equal_in(c, md.res(b, c, r), r) for r in span)
            record("res-identity", f"{c.label()}<={b.label()}", ok)
            for d in [x for x in below_b if x.issubset(c)]:
                ok = all(
                    md.equal_in(
                        b,
                        md.trf(c, b, md.trf(d, c, r)),
                        md.trf(d, b, r),
                    )
                    for r in span
                )
                record(
                    "trf-transitivity",
                    f"{d.label()}<={c.label()}<={b.label()}",
                    ok,
                )
        # double cosets and Frobenius
        for c in below_b:
            for d in below_b:
                s = subgroup_sum(c, d)
                i = subgroup_intersection(c, d)
                mult = b.order // s.order
                ok = all(
                    md.equal_in(
                        c,
                        md.res(b, c, md.trf(d, b, r)),
                        md.trf(i, c, md.res(d, i, r))
                        * e.base.from_int(mult),
                    )
                    for r in span
                )
                record(
                    "double-coset",
                    f"{c.label()},{d.label()}<={b.label()}",
                    ok,
                )
        for c in below_b:
            ok = all(
                md.equal_in(
                    b,
                    md.trf(c, b, md.res(b, c, r) * s),
                    r * md.trf(c, b, s),
                )
                for r in span
                for s in span
            )
            record("frobenius", f"{c.label()}<={b.label()}", ok)
    return report


# ---------------------------------------------------------------------------
# product type and splitting idempotents
# ---------------------------------------------------------------------------


def product_type_check(e):
    """True iff every character point is zero or a unit."""
    for a in e.group.dual().elements():
        c = e.c(a)
        if not (c.is_zero() or is_unit(c)):
            return False
    return True


def split_idempotents(e):
    """epsilon_alpha = 1 - v_n(c_alpha)/n for n = |A| invertible in k."""
    n = e.group.order
    inv = try_invert(e.base.from_int(n))
    if inv is None:
        raise NotInvertibleOrder(f"|A| = {n} is not invertible in the base")
    coc = cocycle(e)
    out = {}
    for a in e.group.dual().elements():
        out[tuple(a)] = e.base.one() - vn_at_point(e, n, a, coc) * inv
    return out
