"""Finite abelian groups, subgroup lattices, duals, and the Burnside ring.

Groups are invariant-factor lists; elements are coordinate tuples.  The dual
group A* is represented by the same factor list, paired with A through the
standard pairing sum(a_i * b_i / f_i) in Q/Z.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd, lcm

from . import linalg
from .errors import GroupMismatch, GroupTooLarge, NotASubgroup

SUBGROUP_ORDER_BOUND = 64


@dataclass(frozen=True)
class FinAbGroup:
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(f) for f in self.factors))
        if any(f < 2 for f in self.factors):
            raise ValueError("invariant factors must be >= 2")

    @property
    def order(self):
        n = 1
        for f in self.factors:
            n *= f
        return n

    def zero(self):
        return (0,) * len(self.factors)

    def add(self, a, b):
        return tuple((x + y) % f for x, y, f in zip(a, b, self.factors))

    def neg(self, a):
        return tuple((-x) % f for x, f in zip(a, self.factors))

    def smul(self, n, a):
        return tuple((n * x) % f for x, f in zip(a, self.factors))

    def order_of(self, a):
        if not self.factors:
            return 1
        return lcm(*(f // gcd(x, f) for x, f in zip(a, self.factors)))

    def elements(self):
        out = [()]
        for f in self.factors:
            out = [c + (i,) for c in out for i in range(f)]
        return out

    def pairing_is_zero(self, alpha, a):
        """Whether <alpha, a> = sum alpha_i a_i / f_i vanishes in Q/Z."""
        if not self.factors:
            return True
        big = lcm(*self.factors)
        s = sum(x * y * (big // f) for x, y, f in zip(alpha, a, self.factors))
        return s % big == 0

    def dual(self):
        """A* has the same shape under the standard pairing."""
        return self

    def __repr__(self):
        if not self.factors:
            return "1"
        return "x".join(f"Z/{f}" for f in self.factors)


@dataclass(frozen=True)
class GroupElement:
    group: FinAbGroup
    coords: tuple

    def __post_init__(self):
        object.__setattr__(
            self,
            "coords",
            tuple(c % f for c, f in zip(self.coords, self.group.factors)),
        )

    @property
    def order(self):
        return self.group.order_of(self.coords)


class Subgroup:
    """A subgroup stored by its full element set, with canonical generators."""

    __slots__ = ("group", "elements", "_gens")

    def __init__(self, group, elements):
        self.group = group
        self.elements = frozenset(elements)
        self._gens = None

    @property
    def order(self):
        return len(self.elements)

    def contains(self, coords):
        return coords in self.elements

    def issubset(self, other):
        return self.elements <= other.elements

    def sorted_elements(self):
        return sorted(self.elements)

    @property
    def generators(self):
        """Canonical generator list via Hermite reduction of the lifted lattice."""
        if self._gens is None:
            rows = [list(e) for e in self.sorted_elements() if any(e)]
            diag = [
                [f if i == j else 0 for j in range(len(self.group.factors))]
                for i, f in enumerate(self.group.factors)
            ]
            basis = linalg.hermite_row_form(rows + diag)
            gens = []
            for r in basis:
                c = tuple(x % f for x, f in zip(r, self.group.factors))
                if any(c) and c in self.elements:
                    gens.append(c)
            # drop generators already produced by the previous ones
            out = []
            have = {self.group.zero()}
            for g in gens:
                if g in have:
                    continue
                out.append(g)
                have = _closure(self.group, have | {g})
            self._gens = tuple(out)
        return self._gens

    def sort_key(self):
        return (self.order, tuple(self.sorted_elements()))

    def label(self):
        if self.order == 1:
            return "0"
        return "<" + "; ".join(",".join(map(str, g)) for g in self.generators) + ">"

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.group == other.group
            and self.elements == other.elements
        )

    def __hash__(self):
        return hash((self.group, self.elements))

    def __repr__(self):
        return f"Subgroup{self.label()} of {self.group}"


def _closure(group, seed):
    have = set(seed)
    have.add(group.zero())
    frontier = list(have)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(have):
                c = group.add(a, b)
                if c not in have:
                    have.add(c)
                    nxt.append(c)
        frontier = nxt
    return frozenset(have)


def subgroup_generated(group, gens):
    return Subgroup(group, _closure(group, gens))


def trivial_subgroup(group):
    return Subgroup(group, {group.zero()})


def full_subgroup(group):
    return Subgroup(group, group.elements())


def subgroups_all(group, bound=SUBGROUP_ORDER_BOUND):
    if group.order > bound:
        raise GroupTooLarge(f"|A| = {group.order} exceeds the bound {bound}")
    elems = group.elements()
    seen = {frozenset({group.zero()})}
    frontier = [frozenset({group.zero()})]
    while frontier:
        nxt = []
        for s in frontier:
            for g in elems:
                if g in s:
                    continue
                bigger = _closure(group, s | {g})
                if bigger not in seen:
                    seen.add(bigger)
                    nxt.append(bigger)
        frontier = nxt
    subs = [Subgroup(group, s) for s in seen]
    subs.sort(key=Subgroup.sort_key)
    return subs


def annihilator(b: Subgroup):
    """The subgroup of A* that kills every element of B."""
    group = b.group
    gens = b.generators
    ann = [
        alpha
        for alpha in group.elements()
        if all(group.pairing_is_zero(alpha, g) for g in gens)
    ]
    return Subgroup(group.dual(), ann)


def subgroup_sum(a: Subgroup, b: Subgroup):
    if a.group != b.group:
        raise GroupMismatch("subgroups of different groups")
    return subgroup_generated(a.group, a.elements | b.elements)


def subgroup_intersection(a: Subgroup, b: Subgroup):
    if a.group != b.group:
        raise GroupMismatch("subgroups of different groups")
    return Subgroup(a.group, a.elements & b.elements)


# ---------------------------------------------------------------------------
# abstract structure: invariant factors, presentations, quotients
# ---------------------------------------------------------------------------


def _invariant_factors(elements, add, neg, zero, order_of):
    """Invariant factors (largest first) of an abstract finite abelian group.

    Determined by order statistics: for each prime p, a_k = log_p of the count
    of elements killed by p^k; a_k - a_{k-1} is the number of cyclic p-factors
    of exponent >= k.
    """
    n = len(elements)
    if n == 1:
        return ()
    orders = [order_of(e) for e in elements]
    primes = set()
    m = n
    d = 2
    while d * d <= m:
        while m % d == 0:
            primes.add(d)
            m //= d
        d += 1
    if m > 1:
        primes.add(m)
    exps_per_prime = {}
    for p in sorted(primes):
        counts = []
        k = 0
        while True:
            pk = p**k
            c = sum(1 for o in orders if pk % o == 0)
            a_k = 0
            while p**a_k < c:
                a_k += 1
            counts.append(a_k)
            if k > 0 and counts[-1] == counts[-2]:
                break
            k += 1
        geq = [counts[i] - counts[i - 1] for i in range(1, len(counts))]
        nfac = geq[0] if geq else 0
        factor_exps = [
            sum(1 for g in geq if g >= j + 1) for j in range(nfac)
        ]  # conjugate partition: exponent of the j-th largest factor
        exps_per_prime[p] = sorted(factor_exps, reverse=True)
    width = max(len(v) for v in exps_per_prime.values())
    out = []
    for i in range(width):
        di = 1
        for p, exps in exps_per_prime.items():
            if i < len(exps):
                di *= p ** exps[i]
        out.append(di)
    return tuple(out)  # largest first


def _find_basis(elements, add, zero, order_of, target_orders):
    """Elements realizing the invariant-factor decomposition (deterministic)."""
    elements = sorted(elements)

    def closure(seed):
        have = {zero} | set(seed)
        changed = True
        while changed:
            changed = False
            for a in list(have):
                for b in list(have):
                    c = add(a, b)
                    if c not in have:
                        have.add(c)
                        changed = True
        return have

    def search(idx, chosen, span):
        if idx == len(target_orders):
            return chosen
        want = target_orders[idx]
        for g in elements:
            if order_of(g) != want or g in span:
                continue
            new_span = closure(chosen + [g])
            if len(new_span) == len(span) * want:
                res = search(idx + 1, chosen + [g], new_span)
                if res is not None:
                    return res
        return None

    return search(0, [], {zero})


@dataclass(frozen=True)
class Presentation:
    group: FinAbGroup
    elements: tuple  # coords tuples, nonzero

    def orders(self):
        return tuple(self.group.order_of(e) for e in self.elements)


def smith_presentation(u: Subgroup):
    """A presentation whose element orders are the invariant factors of U."""
    group = u.group
    elems = u.sorted_elements()
    if len(elems) == 1:
        return Presentation(group, ())
    factors = _invariant_factors(
        elems, group.add, group.neg, group.zero(), group.order_of
    )
    basis = _find_basis(elems, group.add, group.zero(), group.order_of, factors)
    assert basis is not None, "structure search failed"
    return Presentation(group, tuple(basis))


def presentations_enumerate(u: Subgroup, limit=10**9):
    if u.order > 16:
        raise GroupTooLarge("presentation enumeration is capped at |U| = 16")
    group = u.group
    elems = [e for e in u.sorted_elements() if any(e)]
    out = []
    n = u.order
    if n == 1:
        return [Presentation(group, ())]
    max_size = n.bit_length()  # |U| >= 2^size for any independent set
    for size in range(1, max_size + 1):
        for combo in combinations(elems, size):
            prod = 1
            for e in combo:
                prod *= group.order_of(e)
            if prod != n:
                continue
            if len(_closure(group, set(combo))) != n:
                continue
            out.append(Presentation(group, combo))
            if len(out) >= limit:
                return out
    return out


@dataclass
class QuotientData:
    group: FinAbGroup  # the quotient in invariant-factor form
    generators: tuple  # pairs (rep coords in the ambient group, quotient order)
    _proj: dict
    _section: dict

    def project(self, coords):
        return self._proj[coords]

    def section(self, qcoords):
        return self._section[qcoords]


def quotient(u: Subgroup, v: Subgroup):
    """U/V with a deterministic section choosing coset representatives."""
    if u.group != v.group or not v.issubset(u):
        raise NotASubgroup("V must be a subgroup of U")
    group = u.group
    # cosets keyed by their minimal element
    rep_of = {}
    for e in sorted(u.elements):
        if e in rep_of:
            continue
        coset = sorted(group.add(e, w) for w in v.elements)
        r = coset[0]
        for c in coset:
            rep_of[c] = r
    reps = sorted(set(rep_of.values()))

    def qadd(a, b):
        return rep_of[group.add(a, b)]

    def qorder(a):
        k = 1
        acc = a
        zero = rep_of[group.zero()]
        while acc != zero:
            acc = qadd(acc, a)
            k += 1
        return k

    if len(reps) == 1:
        qgrp = FinAbGroup(())
        zero_rep = reps[0]
        return QuotientData(qgrp, (), {e: () for e in rep_of}, {(): zero_rep})
    factors = _invariant_factors(reps, qadd, None, rep_of[group.zero()], qorder)
    basis = _find_basis(reps, qadd, rep_of[group.zero()], qorder, factors)
    assert basis is not None
    qgrp = FinAbGroup(factors)
    # build coordinates for every coset
    section = {}
    for coords in qgrp.elements():
        acc = rep_of[group.zero()]
        for c, g in zip(coords, basis):
            for _ in range(c):
                acc = qadd(acc, g)
        section[coords] = acc
    coords_of_rep = {rep: coords for coords, rep in section.items()}
    proj = {e: coords_of_rep[rep_of[e]] for e in rep_of}
    gens = tuple((g, qorder(g)) for g in basis)
    return QuotientData(qgrp, gens, proj, section)


# ---------------------------------------------------------------------------
# Burnside ring
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BurnsideElement:
    group: FinAbGroup
    coeffs: tuple  # sorted tuple of (Subgroup, nonzero int)

    @staticmethod
    def basis(group, sub):
        return BurnsideElement(group, ((sub, 1),))

    @staticmethod
    def make(group, pairs):
        d = {}
        for s, c in pairs:
            d[s] = d.get(s, 0) + c
        items = [(s, c) for s, c in d.items() if c != 0]
        items.sort(key=lambda sc: sc[0].sort_key())
        return BurnsideElement(group, tuple(items))

    def __add__(self, other):
        if self.group != other.group:
            raise GroupMismatch("Burnside elements over different groups")
        return BurnsideElement.make(self.group, self.coeffs + other.coeffs)

    def scale(self, n):
        return BurnsideElement.make(
            self.group, tuple((s, n * c) for s, c in self.coeffs)
        )


def burnside_mul(a: BurnsideElement, b: BurnsideElement):
    """[A/B][A/B'] = |A/(B+B')| [A/(B intersect B')], extended bilinearly."""
    if a.group != b.group:
        raise GroupMismatch("Burnside elements over different groups")
    group = a.group
    pairs = []
    for s1, c1 in a.coeffs:
        for s2, c2 in b.coeffs:
            joined = subgroup_sum(s1, s2)
            met = subgroup_intersection(s1, s2)
            mult = group.order // joined.order
            pairs.append((met, c1 * c2 * mult))
    return BurnsideElement.make(group, tuple(pairs))


def burnside_unit(group):
    return BurnsideElement.basis(group, full_subgroup(group))
