"""Divisors on a truncated multicurve: norms, convolution, points schemes,
classification moments, and nilpotent perturbations.

A divisor is the ideal of R generated by a monic g with g | f^N; its degree
is deg g and O_D = k'[x]/(g) is free with basis {x^i}.  Norm generators f_D
are determinants of multiplication by the difference function, computed
division-free so zero divisors in the base are harmless.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curves import Curve, EFG, difference_function, topological_basis, translation
from .errors import (
    BaseMismatch,
    CutoffTooSmall,
    DegreeMismatch,
    NonUnitLeadingCoefficient,
    NotAPoint,
    NotContained,
    NotNilpotent,
    OpennessFailed,
    UnsupportedRing,
)
from .rings import (
    Matrix,
    MPolyTruncRing,
    Poly,
    PolyQuotient,
    RingValue,
    SquareZeroF2,
    det_division_free,
    embed,
    poly_divmod,
    try_invert,
)

NILPOTENCE_BOUND = 64


@dataclass(frozen=True, eq=False)
class Divisor:
    curve: Curve  # already over the divisor's base ring
    gen: Poly  # monic, degree = divisor degree
    openness_exponent: int  # least M with f^M = 0 mod gen

    @property
    def degree(self):
        return self.gen.degree()

    @property
    def base(self):
        return self.curve.base

    def __eq__(self, other):
        return (
            isinstance(other, Divisor)
            and self.curve == other.curve
            and self.gen == other.gen
        )

    def __hash__(self):
        return hash((self.curve, self.gen))

    def __repr__(self):
        return f"Divisor(deg {self.degree} over {self.base})"


@dataclass(frozen=True)
class FullSet:
    points: tuple  # RingValues u_i with f(u_i)^N = 0


def divisor_from_gen(curve, gen):
    """Normalize the generator monic and verify openness."""
    if gen.is_zero() or gen.degree() < 0:
        raise OpennessFailed("the zero ideal is not a divisor")
    inv = try_invert(gen.leading())
    if inv is None:
        raise NonUnitLeadingCoefficient(
            "divisor generator must be monic up to a unit"
        )
    monic = gen.map_coeffs(lambda c: c * inv)
    power = curve.f
    m = None
    for k in range(1, curve.N + 1):
        _, rem = poly_divmod(power, monic)
        if rem.is_zero():
            m = k
            break
        power = power * curve.f
    if monic.degree() == 0:  # the empty divisor: gen = 1
        m = 0
    if m is None:
        raise OpennessFailed("gen does not divide f^N")
    return Divisor(curve, monic, m)


def empty_divisor(curve):
    return Divisor(curve, Poly.const(curve.base, curve.base.one()), 0)


def point_divisor(e, c):
    """The degree-1 divisor [c]; gen = x - c."""
    curve = e.curve
    c = embed(c, curve.base) if c.ring != curve.base else c
    try:
        curve.check_point(c)
    except NotAPoint:
        raise
    gen = Poly(curve.base, [-c, curve.base.one()])
    return divisor_from_gen(curve, gen)


def divisor_from_full_set(e, points):
    curve = e.curve
    gen = Poly.const(curve.base, curve.base.one())
    for u in points:
        curve.check_point(u)
        gen = gen * Poly(curve.base, [-u, curve.base.one()])
    return divisor_from_gen(curve, gen)


def divisor_sum(d0, d1):
    if d0.curve != d1.curve:
        raise BaseMismatch("divisors live on different curves")
    return divisor_from_gen(d0.curve, d0.gen * d1.gen)


def _match_curve(d, e):
    """Base-change the model to the divisor's base if needed."""
    if e.curve == d.curve:
        return e
    return efg_base_change(e, d.curve.base)


def efg_base_change(e, new_base):
    """Extend the model along k -> new_base (a tower ring over k)."""
    curve = e.curve
    f2 = curve.f.map_coeffs(lambda c: embed(c, new_base), new_base)
    curve2 = Curve(new_base, f2, curve.N)
    x2 = curve2.x()

    def move_element(elem):
        lifted = curve.lift(elem)
        return lifted.map_coeffs(lambda c: embed(c, new_base), new_base).eval(x2)

    T2 = curve2.tensor_ring()
    sigma2 = T2.zero()
    x1 = T2.gen()
    for c in reversed(e.sigma.payload):
        cv = move_element(RingValue(curve.ring, c))
        sigma2 = sigma2 * x1 + embed(cv, T2)
    return EFG(
        curve2,
        e.group,
        sigma2,
        move_element(e.iota),
        {a: embed(v, new_base) for a, v in e.phi.items()},
        embed(e.norm_unit, new_base),
    )


def fD_norm(d, e):
    """f_D: the determinant of multiplication by d(x0, x) on O_D tensor R."""
    e = _match_curve(d, e)
    curve = d.curve
    R = curve.ring
    if d.degree == 0:
        return R.one()
    T = PolyQuotient(
        R,
        tuple(embed(c, R).payload for c in _padded(d.gen)),
        var="x0",
    )
    diff = difference_function(e)
    w = curve.map_tensor(diff, T.gen(), embed(curve.x(), T), check=False)
    return _norm_from_tower(w, T, R)


def _padded(gen):
    return [gen.coeff(i) for i in range(gen.degree() + 1)]


def _norm_from_tower(w, tower, base_ring):
    """det of multiplication by w on the tower, as a module over base_ring.

    tower is an iterated PolyQuotient over base_ring; the module basis is the
    product monomial basis of the extension steps.
    """

    def coords(value, ring):
        if ring == base_ring:
            return [value]
        out = []
        for c in value.payload:
            out.extend(coords(RingValue(ring.base, c), ring.base))
        return out

    def basis(ring):
        if ring == base_ring:
            return [base_ring.one()]
        inner = basis(ring.base)
        out = []
        acc = ring.one()
        g = ring.gen()
        for _ in range(ring.deg):
            for b in inner:
                out.append(embed(b, ring) * acc)
            acc = acc * g
        return out

    bs = basis(tower)
    cols = [coords(w * b, tower) for b in bs]
    n = len(bs)
    rows = [[cols[c][r] for c in range(n)] for r in range(n)]
    return det_division_free(Matrix.from_rows(base_ring, rows))


def euler_class(d, e):
    """e_D = f_D(0); f_D itself is the Thom-module generator."""
    fd = fD_norm(d, e)
    return d.curve.lift(fd).constant()


def convolution(d0, d1, e):
    """The divisor of pairwise group-law sums of the points of D and D'."""
    if d0.curve != d1.curve:
        raise BaseMismatch("divisors live on different curves")
    e = _match_curve(d0, e)
    curve = d0.curve
    R = curve.ring
    if d0.degree == 0 or d1.degree == 0:
        return empty_divisor(curve)
    Ta = PolyQuotient(
        R, tuple(embed(c, R).payload for c in _padded(d0.gen)), var="a"
    )
    Tb = PolyQuotient(
        Ta, tuple(embed(c, Ta).payload for c in _padded(d1.gen)), var="b"
    )
    xa = embed(Ta.gen(), Tb)
    xb = Tb.gen()
    s = curve.map_tensor(e.sigma, xa, xb, check=False)
    curve.check_substitution(s)
    diff = difference_function(e)
    w = curve.map_tensor(diff, s, embed(curve.x(), Tb), check=False)
    norm = _norm_from_tower(w, Tb, R)
    return divisor_from_gen(curve, curve.lift(norm))


def translate_divisor(d, alpha, e):
    e = _match_curve(d, e)
    tau = translation(e, alpha)
    moved = tau(d.curve.element(d.gen))
    return divisor_from_gen(d.curve, d.curve.lift(moved))


def contains(d_big, d_small):
    """Monic-division containment test with obstruction coefficients."""
    if d_big.curve != d_small.curve:
        raise BaseMismatch("divisors live on different curves")
    _, rem = poly_divmod(d_big.gen, d_small.gen)
    if rem.is_zero():
        return True, []
    return False, list(rem.coeffs)


def subtract(d_big, d_small):
    ok, _ = contains(d_big, d_small)
    if not ok:
        raise NotContained("the second divisor is not contained in the first")
    q, _ = poly_divmod(d_big.gen, d_small.gen)
    return divisor_from_gen(d_big.curve, q)


@dataclass
class PointsScheme:
    tower: list  # base rings k = k_0 -> k_1 -> ... -> k_r
    points: list  # tautological points u_i in k_{i+1}
    remaining: Divisor  # degree s-r divisor over k_r
    rank: int  # rank of k_r over k


def points_scheme(d, r):
    """The tower parameterizing r-tuples of points of D."""
    if isinstance(d.base, SquareZeroF2):
        raise UnsupportedRing("points schemes need a tower-capable base")
    if r > d.degree:
        raise DegreeMismatch("cannot extract more points than the degree")
    tower = [d.base]
    points = []
    cur = d
    rank = 1
    for i in range(r):
        k_i = cur.base
        ext = PolyQuotient(
            k_i,
            tuple(c.payload for c in _padded(cur.gen)),
            var=f"x{i}",
        )
        u = ext.gen()
        rank *= cur.degree
        curve2 = Curve(
            ext,
            cur.curve.f.map_coeffs(lambda c: embed(c, ext), ext),
            cur.curve.N,
        )
        gen2 = cur.gen.map_coeffs(lambda c: embed(c, ext), ext)
        point_gen = Poly(ext, [-u, ext.one()])
        q, rem = poly_divmod(gen2, point_gen)
        assert rem.is_zero(), "tautological point must be a root"
        cur = divisor_from_gen(curve2, q)
        tower.append(ext)
        points.append(u)
    return PointsScheme(tower, points, cur, rank)


@dataclass(frozen=True)
class MomentVector:
    degree: int
    entries: tuple  # sorted ((beta multi-index), RingValue) with |beta| = degree

    def as_dict(self):
        return dict(self.entries)


def moments(d, e, cutoff):
    """Moment coefficients of the norm of a generic function on O_D.

    Computes det of multiplication by g = sum t_i * (e_i mod gen) over the
    degree-truncated polynomial ring in the t_i; the coefficients of the
    resulting degree-r form classify the divisor.
    """
    e = _match_curve(d, e)
    curve = d.curve
    r = d.degree
    elems, _ = topological_basis(e, curve.rank)
    reductions = []
    for el in elems:
        _, rem = poly_divmod(curve.lift(el), d.gen)
        reductions.append(rem)
    for i in range(cutoff, curve.rank):
        if not reductions[i].is_zero():
            raise CutoffTooSmall(
                f"basis element {i} does not vanish on the divisor"
            )
    if cutoff > curve.rank:
        cutoff = curve.rank
    P = MPolyTruncRing(curve.base, cutoff, r)
    gP = Poly(
        P,
        [
            _moment_coeff(P, reductions, j, cutoff)
            for j in range(r)
        ],
    )
    genP = d.gen.map_coeffs(lambda c: P.const(c.payload), P)
    cols = []
    for j in range(r):
        col = gP * Poly(P, [P.zero()] * j + [P.one()])
        _, colr = poly_divmod(col, genP)
        cols.append([colr.coeff(i) for i in range(r)])
    rows = [[cols[c][i] for c in range(r)] for i in range(r)]
    det = det_division_free(Matrix.from_rows(P, rows))
    entries = tuple(
        sorted((exps, RingValue(curve.base, c)) for exps, c in det.payload)
    )
    return MomentVector(r, entries)


def _moment_coeff(P, reductions, j, cutoff):
    acc = P.zero()
    for i in range(cutoff):
        c = reductions[i].coeff(j)
        if not c.is_zero():
            acc = acc + P.t(i) * P.const(c.payload)
    return acc


def moments_full_set_oracle(d, e, fullset, cutoff):
    """Brute-force moments for a divisor with a known full set of points.

    The beta-coefficient is the symmetric sum over functions from points to
    basis indices with exponent profile beta of prod_j e_{alpha_j}(u_j).
    """
    from itertools import product as iproduct

    from .curves import eval_at_point

    e = _match_curve(d, e)
    curve = d.curve
    elems, _ = topological_basis(e, curve.rank)
    vals = [
        [eval_at_point(e, elems[i], u) for i in range(cutoff)]
        for u in fullset.points
    ]
    r = d.degree
    acc = {}
    for assign in iproduct(range(cutoff), repeat=r):
        beta = [0] * cutoff
        for a in assign:
            beta[a] += 1
        key = tuple(beta)
        term = curve.base.one()
        for j, a in enumerate(assign):
            term = term * vals[j][a]
        acc[key] = acc.get(key, curve.base.zero()) + term
    entries = tuple(
        sorted((k, v) for k, v in acc.items() if not v.is_zero())
    )
    return MomentVector(r, entries)


def _is_nilpotent(v, bound=NILPOTENCE_BOUND):
    acc = v
    for _ in range(bound):
        if acc.is_zero():
            return True
        acc = acc * v
    return acc.is_zero()


def perturb(d, r_poly):
    """gen' = gen + r for r with nilpotent coefficients of degree < deg gen."""
    if r_poly.degree() >= d.degree:
        raise DegreeMismatch("perturbation must have degree below the divisor")
    for c in r_poly.coeffs:
        if not _is_nilpotent(c):
            raise NotNilpotent("perturbation coefficients must be nilpotent")
    return divisor_from_gen(d.curve, d.gen + r_poly)


def restrict_generator(d_ref, d_new):
    """gen' - gen: the O_D-restriction of the perturbed generator."""
    if d_new.degree != d_ref.degree:
        raise DegreeMismatch("divisors must have equal degree")
    diff = d_new.gen - d_ref.gen
    for c in diff.coeffs:
        if not _is_nilpotent(c):
            raise NotNilpotent("generators must agree up to nilpotents")
    return diff
