"""Residues of meromorphic forms by polynomial reduction, and the duality
package for the rank-r algebra A = k[x]/f: the symmetric element e(x0, x1),
the pairing theta0, and the counit-style functional epsilon.

Everything is exact and division-free, so it works verbatim over Z, Z/m and
group rings, not just fields.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NonMonicDenominator, NotDivisible
from .rings import Matrix, Poly, PolyQuotient, RingValue, poly_divmod


@dataclass(frozen=True)
class MeromorphicForm:
    """p(x)/q(x) dx with q monic; no reduction to lowest terms required."""

    numerator: Poly
    denominator: Poly

    @property
    def ring(self):
        return self.numerator.ring

    def __repr__(self):
        return f"({self.numerator!r})/({self.denominator!r}) dx"


def _require_monic(q):
    if q.degree() < 0 or q.leading() != q.ring.one():
        raise NonMonicDenominator("denominator must be monic")


def residue(form):
    """b_{n-1} of (p mod q), where n = deg q; zero for polynomial forms."""
    q = form.denominator
    _require_monic(q)
    n = q.degree()
    if n == 0:
        return form.ring.zero()
    _, rem = poly_divmod(form.numerator, q)
    return rem.coeff(n - 1)


def residue_of_derivative(p, q):
    """res of d(p/q) = (q p' - p q') dx / q^2; always zero."""
    _require_monic(q)
    num = q * p.derivative() - p * q.derivative()
    return residue(MeromorphicForm(num, q * q))


def trace_of_multiplication(g, f):
    """Trace of multiplication by g on k[x]/f; equals res(g f'/f dx)."""
    _require_monic(f)
    k = f.ring
    r = f.degree()
    x_i = Poly.const(k, k.one())
    xpoly = Poly(k, [k.zero(), k.one()])
    tr = k.zero()
    for i in range(r):
        _, rem = poly_divmod(g * x_i, f)
        tr = tr + rem.coeff(i)
        x_i = x_i * xpoly
    return tr


@dataclass(frozen=True, eq=False)
class DualityAlgebra:
    """A = k[x]/f with f monic of degree r >= 1, plus its duality data."""

    f: Poly
    A: PolyQuotient = field(init=False)

    def __post_init__(self):
        _require_monic(self.f)
        object.__setattr__(
            self,
            "A",
            PolyQuotient(
                self.f.ring,
                tuple(self.f.coeff(i).payload for i in range(self.f.degree() + 1)),
                var="x",
            ),
        )

    @property
    def ring(self):
        return self.f.ring

    @property
    def rank(self):
        return self.f.degree()

    def element(self, poly):
        _, rem = poly_divmod(poly, self.f)
        return self.A.val(tuple(rem.coeff(i).payload for i in range(self.rank)))

    def lift(self, a):
        return Poly(self.ring, [RingValue(self.ring, c) for c in a.payload])


def duality_e(alg):
    """The grid of e(x0, x1) = (f(x1) - f(x0))/(x1 - x0).

    Returned as rows indexed by the x0-exponent; entry (i, j) is the
    coefficient of x0^i x1^j, namely the coefficient of x^{i+j+1} in f.
    Symmetric, and e(x, x) = f'(x).
    """
    r = alg.rank
    zero = alg.ring.zero()
    return [
        [alg.f.coeff(i + j + 1) if i + j < r else zero for j in range(r)]
        for i in range(r)
    ]


@dataclass(frozen=True)
class Functional:
    """A k-linear map A -> k recorded by its values on the basis {x^i}."""

    algebra: DualityAlgebra
    values: tuple

    def __call__(self, a):
        if isinstance(a, Poly):
            a = self.algebra.element(a)
        acc = self.algebra.ring.zero()
        for i, c in enumerate(a.payload):
            acc = acc + self.values[i] * RingValue(self.algebra.ring, c)
        return acc

    def at_one(self):
        return self.values[0]


def zeta(alg, j):
    """The basis functional dual to x^j."""
    vals = [alg.ring.zero()] * alg.rank
    vals[j] = alg.ring.one()
    return Functional(alg, tuple(vals))


def theta0(phi):
    """(1 (x) phi)(e): apply phi to the x1-slot of e(x0, x1)."""
    alg = phi.algebra
    grid = duality_e(alg)
    coeffs = []
    for i in range(alg.rank):
        acc = alg.ring.zero()
        for j in range(alg.rank):
            acc = acc + grid[i][j] * phi.values[j]
        coeffs.append(acc)
    return alg.element(Poly(alg.ring, coeffs))


def theta0_matrix(alg):
    """Columns are theta0(zeta_j) in the basis {x^i}; anti-triangular with
    unit anti-diagonal, so the determinant is +-1 over any ring."""
    grid = duality_e(alg)
    return Matrix.from_rows(alg.ring, grid)


def theta0_inverse(alg, a):
    """The unique functional phi with theta0(phi) = a.

    Solved by back substitution along the unit anti-diagonal, which needs no
    divisions at all.
    """
    r = alg.rank
    grid = duality_e(alg)
    b = [RingValue(alg.ring, c) for c in a.payload]
    vals = [alg.ring.zero()] * r
    for i in range(r - 1, -1, -1):
        acc = b[i]
        for j in range(r - 1 - i):
            acc = acc - grid[i][j] * vals[j]
        vals[r - 1 - i] = acc
    return Functional(alg, tuple(vals))


def epsilon(alg, a):
    """epsilon(lambda) = phi(1) for the phi with theta0(phi) = a."""
    return theta0_inverse(alg, a).at_one()


def residue_pairing_check(alg, phi):
    """(res(theta0(phi) dx / f), phi(1)) — the two agree."""
    form = MeromorphicForm(alg.lift(theta0(phi)), alg.f)
    return residue(form), phi.at_one()


def residue_inclusion_check(f0, f1, phi):
    """Residues along k[x]/f0 -> k[x]/f1 for f0 | f1; returns the equal pair."""
    _require_monic(f0)
    _require_monic(f1)
    _, rem = poly_divmod(f1, f0)
    if not rem.is_zero():
        raise NotDivisible("f0 must divide f1")
    alg0 = DualityAlgebra(f0)
    alg1 = DualityAlgebra(f1)
    k = f0.ring
    pulled = []
    x_i = Poly.const(k, k.one())
    xpoly = Poly(k, [k.zero(), k.one()])
    for _ in range(alg1.rank):
        pulled.append(phi(x_i))
        x_i = x_i * xpoly
    phi1 = Functional(alg1, tuple(pulled))
    lhs = residue(MeromorphicForm(alg0.lift(theta0(phi)), f0))
    rhs = residue(MeromorphicForm(alg1.lift(theta0(phi1)), f1))
    return lhs, rhs
