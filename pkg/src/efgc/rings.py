"""Exact arithmetic over a fixed menu of base rings.

The menu: integers, rationals, integers mod m, prime fields, group rings of a
finite abelian group over Z/Q/F_p, polynomial quotients k[x]/(m) with monic
modulus, a square-zero extension of F_2[e] used by the torsion counterexample,
and degree-truncated multivariate polynomial rings.

Values are immutable; payloads are canonical nested tuples so equality and
hashing are structural.  Units, regularity and ideal membership are decided by
exact linear algebra over the "bottom" scalar ring of the tower.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from . import linalg
from .errors import (
    BaseMismatch,
    DimensionMismatch,
    NonUnitLeadingCoefficient,
    NotInvertible,
    UnsupportedRing,
)


class RingValue:
    __slots__ = ("ring", "payload")

    def __init__(self, ring, payload):
        self.ring = ring
        self.payload = payload

    def __add__(self, other):
        other = self.ring.coerce(other)
        return RingValue(self.ring, self.ring._add(self.payload, other.payload))

    __radd__ = __add__

    def __sub__(self, other):
        other = self.ring.coerce(other)
        return RingValue(
            self.ring, self.ring._add(self.payload, self.ring._neg(other.payload))
        )

    def __rsub__(self, other):
        return self.ring.coerce(other) - self

    def __neg__(self):
        return RingValue(self.ring, self.ring._neg(self.payload))

    def __mul__(self, other):
        other = self.ring.coerce(other)
        return RingValue(self.ring, self.ring._mul(self.payload, other.payload))

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers are not defined here")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self):
        return self.payload == self.ring._zero()

    def __eq__(self, other):
        return (
            isinstance(other, RingValue)
            and self.ring == other.ring
            and self.payload == other.payload
        )

    def __hash__(self):
        return hash((self.ring, self.payload))

    def __repr__(self):
        return f"<{render_value(self)} in {self.ring}>"


class Ring:
    """Base class for the ring menu.  Subclasses are immutable descriptors."""

    def val(self, payload):
        return RingValue(self, payload)

    def zero(self):
        return RingValue(self, self._zero())

    def one(self):
        return RingValue(self, self._one())

    def from_int(self, n):
        return RingValue(self, self._from_int(n))

    def coerce(self, x):
        if isinstance(x, RingValue):
            if x.ring == self:
                return x
            return embed(x, self)
        if isinstance(x, int):
            return self.from_int(x)
        raise BaseMismatch(f"cannot coerce {x!r} into {self}")

    # --- flattening over the bottom scalar ring (Z, Q, F_p or Z/m) ---

    def bottom(self):
        raise UnsupportedRing(f"{self} has no finite flat structure")

    def flat_rank(self):
        raise UnsupportedRing(f"{self} has no finite flat structure")

    def _flatten(self, payload):
        raise UnsupportedRing(f"{self} has no finite flat structure")

    def _unflatten(self, vec):
        raise UnsupportedRing(f"{self} has no finite flat structure")

    def basis(self):
        """Canonical module basis over the bottom ring, as RingValues."""
        n = self.flat_rank()
        out = []
        bot = self.bottom()
        for i in range(n):
            vec = [bot._zero()] * n
            vec[i] = bot._one()
            out.append(RingValue(self, self._unflatten(vec)))
        return out


class IntegerRing(Ring):
    def _zero(self):
        return 0

    def _one(self):
        return 1

    def _from_int(self, n):
        return n

    def _add(self, a, b):
        return a + b

    def _neg(self, a):
        return -a

    def _mul(self, a, b):
        return a * b

    def bottom(self):
        return self

    def flat_rank(self):
        return 1

    def _flatten(self, payload):
        return [payload]

    def _unflatten(self, vec):
        return vec[0]

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("Z")

    def __repr__(self):
        return "Z"


class RationalRing(Ring):
    def _zero(self):
        return Fraction(0)

    def _one(self):
        return Fraction(1)

    def _from_int(self, n):
        return Fraction(n)

    def _add(self, a, b):
        return a + b

    def _neg(self, a):
        return -a

    def _mul(self, a, b):
        return a * b

    def bottom(self):
        return self

    def flat_rank(self):
        return 1

    def _flatten(self, payload):
        return [payload]

    def _unflatten(self, vec):
        return Fraction(vec[0])

    def __eq__(self, other):
        return isinstance(other, RationalRing)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


class IntegersMod(Ring):
    def __init__(self, m):
        if m < 2:
            raise ValueError("modulus must be >= 2")
        self.m = m

    def _zero(self):
        return 0

    def _one(self):
        return 1 % self.m

    def _from_int(self, n):
        return n % self.m

    def _add(self, a, b):
        return (a + b) % self.m

    def _neg(self, a):
        return (-a) % self.m

    def _mul(self, a, b):
        return (a * b) % self.m

    def bottom(self):
        return self

    def flat_rank(self):
        return 1

    def _flatten(self, payload):
        return [payload]

    def _unflatten(self, vec):
        return vec[0] % self.m

    def __eq__(self, other):
        return type(other) is type(self) and other.m == self.m

    def __hash__(self):
        return hash((type(self).__name__, self.m))

    def __repr__(self):
        return f"Z/{self.m}"


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class PrimeField(IntegersMod):
    def __init__(self, p):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        super().__init__(p)

    def __repr__(self):
        return f"F{self.m}"


class GroupRing(Ring):
    """Group ring base[A] for a finite abelian A given by its factor list.

    Payload: sorted tuple of (coords, base payload) with nonzero values only.
    Base is restricted to Z, Q or a prime field.
    """

    def __init__(self, base, factors):
        if not isinstance(base, (IntegerRing, RationalRing, PrimeField)):
            raise UnsupportedRing("group-ring base must be Z, Q or a prime field")
        self.base = base
        self.factors = tuple(int(f) for f in factors)
        if any(f < 2 for f in self.factors):
            raise ValueError("group factors must be >= 2")

    def order(self):
        n = 1
        for f in self.factors:
            n *= f
        return n

    def _id_coords(self):
        return (0,) * len(self.factors)

    def _coords_add(self, a, b):
        return tuple((x + y) % f for x, y, f in zip(a, b, self.factors))

    def _canon(self, d):
        return tuple(sorted((k, v) for k, v in d.items() if v != self.base._zero()))

    def _zero(self):
        return ()

    def _one(self):
        return ((self._id_coords(), self.base._one()),)

    def _from_int(self, n):
        p = self.base._from_int(n)
        if p == self.base._zero():
            return ()
        return ((self._id_coords(), p),)

    def _add(self, a, b):
        d = dict(a)
        for k, v in b:
            d[k] = self.base._add(d.get(k, self.base._zero()), v)
        return self._canon(d)

    def _neg(self, a):
        return tuple((k, self.base._neg(v)) for k, v in a)

    def _mul(self, a, b):
        d = {}
        for ka, va in a:
            for kb, vb in b:
                k = self._coords_add(ka, kb)
                p = self.base._mul(va, vb)
                d[k] = self.base._add(d.get(k, self.base._zero()), p)
        return self._canon(d)

    def generator(self, i):
        """The basis element for the i-th group generator."""
        coords = tuple(1 if j == i else 0 for j in range(len(self.factors)))
        return self.basis_element(coords)

    def basis_element(self, coords):
        coords = tuple(c % f for c, f in zip(coords, self.factors))
        return self.val(((coords, self.base._one()),))

    def all_coords(self):
        out = [()]
        for f in self.factors:
            out = [c + (i,) for c in out for i in range(f)]
        return out

    def bottom(self):
        return self.base

    def flat_rank(self):
        return self.order()

    def _flatten(self, payload):
        d = dict(payload)
        z = self.base._zero()
        return [d.get(c, z) for c in self.all_coords()]

    def _unflatten(self, vec):
        d = {}
        for c, v in zip(self.all_coords(), vec):
            d[c] = self.base._unflatten([v])
        return self._canon(d)

    def __eq__(self, other):
        return (
            isinstance(other, GroupRing)
            and other.base == self.base
            and other.factors == self.factors
        )

    def __hash__(self):
        return hash(("GroupRing", self.base, self.factors))

    def __repr__(self):
        return f"{self.base}[{'x'.join('C%d' % f for f in self.factors)}]"


class PolyQuotient(Ring):
    """base[x]/(modulus) with monic modulus of degree >= 1.

    Payload: fixed-length tuple of base payloads (length = degree of modulus).
    """

    def __init__(self, base, modulus, var="x"):
        # modulus: tuple of base payloads, ascending, leading == 1
        modulus = tuple(modulus)
        if len(modulus) < 2:
            raise ValueError("modulus must have degree >= 1")
        if modulus[-1] != base._one():
            raise NonUnitLeadingCoefficient("modulus must be monic")
        self.base = base
        self.modulus = modulus
        self.var = var
        self.deg = len(modulus) - 1

    def _zero(self):
        return (self.base._zero(),) * self.deg

    def _one(self):
        return (self.base._one(),) + (self.base._zero(),) * (self.deg - 1)

    def _from_int(self, n):
        return (self.base._from_int(n),) + (self.base._zero(),) * (self.deg - 1)

    def const(self, v):
        """Embed a base value as a constant."""
        if isinstance(v, RingValue):
            v = v.payload
        return self.val((v,) + (self.base._zero(),) * (self.deg - 1))

    def gen(self):
        """The class of the variable."""
        if self.deg == 1:
            return self.val((self.base._neg(self.modulus[0]),))
        vec = [self.base._zero()] * self.deg
        vec[1] = self.base._one()
        return self.val(tuple(vec))

    def _add(self, a, b):
        return tuple(self.base._add(x, y) for x, y in zip(a, b))

    def _neg(self, a):
        return tuple(self.base._neg(x) for x in a)

    def _mul(self, a, b):
        zero = self.base._zero()
        n = self.deg
        c = [zero] * (2 * n - 1)
        for i, x in enumerate(a):
            if x == zero:
                continue
            for j, y in enumerate(b):
                if y == zero:
                    continue
                c[i + j] = self.base._add(c[i + j], self.base._mul(x, y))
        for i in range(2 * n - 2, n - 1, -1):
            lead = c[i]
            if lead == zero:
                continue
            c[i] = zero
            nl = self.base._neg(lead)
            for j in range(n):
                mj = self.modulus[j]
                if mj == zero:
                    continue
                c[i - n + j] = self.base._add(c[i - n + j], self.base._mul(nl, mj))
        return tuple(c[:n])

    def bottom(self):
        return self.base.bottom()

    def flat_rank(self):
        return self.deg * self.base.flat_rank()

    def _flatten(self, payload):
        out = []
        for c in payload:
            out.extend(self.base._flatten(c))
        return out

    def _unflatten(self, vec):
        k = self.base.flat_rank()
        return tuple(
            self.base._unflatten(vec[i * k : (i + 1) * k]) for i in range(self.deg)
        )

    def __eq__(self, other):
        return (
            isinstance(other, PolyQuotient)
            and other.base == self.base
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("PolyQuotient", self.base, self.modulus))

    def __repr__(self):
        return f"{self.base}[{self.var}]/(deg {self.deg})"


class SquareZeroF2(Ring):
    """F_2[e] extended by a square-zero module spanned by u_1, u_2, ...

    Relations: e*u_{i+1} = u_i, u_0 = 0, u_i*u_j = 0.  Payload: a pair
    (p, us) with p the e-polynomial as a 0/1 tuple (no trailing zeros) and
    us the sorted tuple of indices with u_i present.
    """

    def _zero(self):
        return ((), ())

    def _one(self):
        return ((1,), ())

    def _from_int(self, n):
        return ((1,), ()) if n % 2 else ((), ())

    @staticmethod
    def _padd(p, q):
        n = max(len(p), len(q))
        out = [(p[i] if i < len(p) else 0) ^ (q[i] if i < len(q) else 0) for i in range(n)]
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)

    def _add(self, a, b):
        p = self._padd(a[0], b[0])
        us = tuple(sorted(set(a[1]) ^ set(b[1])))
        return (p, us)

    def _neg(self, a):
        return a

    def _mul(self, a, b):
        pa, ua = a
        pb, ub = b
        # e-polynomial product
        pp = [0] * (len(pa) + len(pb) - 1) if pa and pb else []
        for i, x in enumerate(pa):
            if x:
                for j, y in enumerate(pb):
                    if y:
                        pp[i + j] ^= 1
        while pp and pp[-1] == 0:
            pp.pop()
        # module part: pa acts on ub, pb acts on ua; u*u = 0
        counts = {}
        for p, us in ((pa, ub), (pb, ua)):
            for j, c in enumerate(p):
                if not c:
                    continue
                for i in us:
                    k = i - j
                    if k >= 1:
                        counts[k] = counts.get(k, 0) ^ 1
        us_out = tuple(sorted(k for k, c in counts.items() if c))
        return (tuple(pp), us_out)

    def e(self):
        return self.val(((0, 1), ()))

    def u(self, i):
        if i <= 0:
            return self.zero()
        return self.val(((), (i,)))

    def __eq__(self, other):
        return isinstance(other, SquareZeroF2)

    def __hash__(self):
        return hash("SquareZeroF2")

    def __repr__(self):
        return "F2[e]+M"


class MPolyTruncRing(Ring):
    """base[t_0..t_{v-1}] truncated above a total degree bound.

    Payload: sorted tuple of (exponent tuple, base payload), nonzero only.
    """

    def __init__(self, base, num_vars, max_total_degree):
        self.base = base
        self.num_vars = num_vars
        self.max_total_degree = max_total_degree

    def _canon(self, d):
        z = self.base._zero()
        return tuple(sorted((k, v) for k, v in d.items() if v != z))

    def _zero(self):
        return ()

    def _one(self):
        return (((0,) * self.num_vars, self.base._one()),)

    def _from_int(self, n):
        p = self.base._from_int(n)
        if p == self.base._zero():
            return ()
        return (((0,) * self.num_vars, p),)

    def t(self, i):
        e = tuple(1 if j == i else 0 for j in range(self.num_vars))
        return self.val(((e, self.base._one()),))

    def const(self, v):
        if isinstance(v, RingValue):
            v = v.payload
        if v == self.base._zero():
            return self.zero()
        return self.val((((0,) * self.num_vars, v),))

    def _add(self, a, b):
        d = dict(a)
        for k, v in b:
            d[k] = self.base._add(d.get(k, self.base._zero()), v)
        return self._canon(d)

    def _neg(self, a):
        return tuple((k, self.base._neg(v)) for k, v in a)

    def _mul(self, a, b):
        d = {}
        bound = self.max_total_degree
        for ka, va in a:
            for kb, vb in b:
                k = tuple(x + y for x, y in zip(ka, kb))
                if sum(k) > bound:
                    continue
                p = self.base._mul(va, vb)
                d[k] = self.base._add(d.get(k, self.base._zero()), p)
        return self._canon(d)

    def __eq__(self, other):
        return (
            isinstance(other, MPolyTruncRing)
            and other.base == self.base
            and other.num_vars == self.num_vars
            and other.max_total_degree == self.max_total_degree
        )

    def __hash__(self):
        return hash(
            ("MPolyTrunc", self.base, self.num_vars, self.max_total_degree)
        )

    def __repr__(self):
        return f"{self.base}[t0..t{self.num_vars - 1}]<=deg {self.max_total_degree}"


Z = IntegerRing()
Q = RationalRing()


def embed(v, target):
    """Embed a value into a tower ring built over its own ring."""
    if v.ring == target:
        return v
    if isinstance(target, PolyQuotient):
        return target.const(embed(v, target.base).payload)
    if isinstance(target, MPolyTruncRing):
        return target.const(embed(v, target.base).payload)
    if isinstance(target, GroupRing) and v.ring == target.base:
        if v.payload == target.base._zero():
            return target.zero()
        return target.val(((target._id_coords(), v.payload),))
    if isinstance(v.ring, IntegerRing):
        return target.from_int(v.payload)
    raise BaseMismatch(f"cannot embed a {v.ring} value into {target}")


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------


class Poly:
    """Dense univariate polynomial over a menu ring; coeffs ascending."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        cs = list(coeffs)
        for i, c in enumerate(cs):
            if isinstance(c, int):
                cs[i] = ring.from_int(c)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.ring = ring
        self.coeffs = tuple(cs)

    @staticmethod
    def zero(ring):
        return Poly(ring, [])

    @staticmethod
    def x(ring):
        return Poly(ring, [ring.zero(), ring.one()])

    @staticmethod
    def const(ring, v):
        return Poly(ring, [v])

    def degree(self):
        """Degree; -1 stands in for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def leading(self):
        return self.coeffs[-1]

    def constant(self):
        return self.coeffs[0] if self.coeffs else self.ring.zero()

    def coeff(self, i):
        return self.coeffs[i] if i < len(self.coeffs) else self.ring.zero()

    def is_monic(self):
        return bool(self.coeffs) and self.leading() == self.ring.one()

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(
            self.ring, [self.coeff(i) + other.coeff(i) for i in range(n)]
        )

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(
            self.ring, [self.coeff(i) - other.coeff(i) for i in range(n)]
        )

    def __neg__(self):
        return Poly(self.ring, [-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, RingValue):
            return Poly(self.ring, [c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.ring)
        out = [self.ring.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if b.is_zero():
                    continue
                out[i + j] = out[i + j] + a * b
        return Poly(self.ring, out)

    def __rmul__(self, other):
        if isinstance(other, (RingValue, int)):
            v = self.ring.coerce(other)
            return Poly(self.ring, [c * v for c in self.coeffs])
        return NotImplemented

    def __pow__(self, n):
        result = Poly.const(self.ring, self.ring.one())
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k):
        """Multiply by x^k."""
        if self.is_zero():
            return self
        return Poly(self.ring, [self.ring.zero()] * k + list(self.coeffs))

    def eval(self, point):
        """Horner evaluation at a value of any ring the coefficients embed in."""
        target = point.ring
        acc = target.zero()
        for c in reversed(self.coeffs):
            acc = acc * point + embed(c, target)
        return acc

    def derivative(self):
        return Poly(
            self.ring,
            [self.coeffs[i] * i for i in range(1, len(self.coeffs))],
        )

    def map_coeffs(self, fn, ring=None):
        return Poly(ring or self.ring, [fn(c) for c in self.coeffs])

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.ring == other.ring
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def __repr__(self):
        return f"Poly({render_poly(self)})"


def poly_divmod(num, den):
    """num = q*den + r with deg r < deg den; den's leading coeff must be a unit."""
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lead = den.leading()
    if lead == den.ring.one():
        lead_inv = den.ring.one()
    else:
        lead_inv = try_invert(lead)
        if lead_inv is None:
            raise NonUnitLeadingCoefficient(
                "denominator's leading coefficient is not a unit"
            )
    n = den.degree()
    rem = list(num.coeffs)
    q = [num.ring.zero()] * max(len(rem) - n, 0)
    for i in range(len(rem) - 1, n - 1, -1):
        c = rem[i]
        if c.is_zero():
            continue
        factor = c * lead_inv
        q[i - n] = factor
        for j in range(n + 1):
            rem[i - n + j] = rem[i - n + j] - factor * den.coeff(j)
    return Poly(num.ring, q), Poly(num.ring, rem[:n])


def poly_exact_div(num, den):
    """Exact quotient; raises if the division leaves a remainder."""
    from .errors import ExactDivisionFailed

    q, r = poly_divmod(num, den)
    if not r.is_zero():
        raise ExactDivisionFailed("division left a nonzero remainder")
    return q


# ---------------------------------------------------------------------------
# matrices and determinants
# ---------------------------------------------------------------------------


class Matrix:
    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring, rows, cols, entries):
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise DimensionMismatch("entry count does not match the shape")
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @staticmethod
    def from_rows(ring, rows):
        r = len(rows)
        c = len(rows[0]) if r else 0
        flat = []
        for row in rows:
            if len(row) != c:
                raise DimensionMismatch("ragged rows")
            flat.extend(row)
        return Matrix(ring, r, c, flat)

    @staticmethod
    def identity(ring, n):
        return Matrix(
            ring,
            n,
            n,
            [ring.one() if i == j else ring.zero() for i in range(n) for j in range(n)],
        )

    def at(self, i, j):
        return self.entries[i * self.cols + j]

    def row(self, i):
        return list(self.entries[i * self.cols : (i + 1) * self.cols])

    def to_rows(self):
        return [self.row(i) for i in range(self.rows)]

    def __mul__(self, other):
        if self.cols != other.rows:
            raise DimensionMismatch("inner dimensions differ")
        out = []
        for i in range(self.rows):
            for j in range(other.cols):
                s = self.ring.zero()
                for k in range(self.cols):
                    s = s + self.at(i, k) * other.at(k, j)
                out.append(s)
        return Matrix(self.ring, self.rows, other.cols, out)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.ring == other.ring
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.ring, self.rows, self.cols, self.entries))


def _perm_det(rows, ring):
    n = len(rows)

    def rec(i, used, acc):
        if i == n:
            return acc
        total = ring.zero()
        for j in range(n):
            if used & (1 << j):
                continue
            e = rows[i][j]
            if e.is_zero():
                continue
            sign = 1
            for k in range(j):
                if not (used & (1 << k)):
                    sign = -sign
            term = rec(i + 1, used | (1 << j), acc * e)
            total = total + (term if sign > 0 else -term)
        return total

    return rec(0, 0, ring.one())


def _berkowitz_charpoly(rows, ring):
    """Characteristic polynomial coefficients [1, c1, ..., cn], leading first."""
    n = len(rows)
    coeffs = [ring.one()]
    for i in range(n):
        a_sub = [[rows[r][c] for c in range(i)] for r in range(i)]
        r_vec = [rows[i][c] for c in range(i)]
        c_vec = [rows[r][i] for r in range(i)]
        diag = rows[i][i]
        col = [ring.one(), -diag]
        v = c_vec
        for _ in range(i - 1):
            col.append(-_dot(r_vec, v, ring))
            v = _matvec(a_sub, v, ring)
        if i > 0:
            col.append(-_dot(r_vec, v, ring))
        new = []
        for r in range(i + 2):
            s = ring.zero()
            for c in range(i + 1):
                k = r - c
                if 0 <= k < len(col):
                    s = s + col[k] * coeffs[c]
            new.append(s)
        coeffs = new
    return coeffs


def _dot(a, b, ring):
    s = ring.zero()
    for x, y in zip(a, b):
        s = s + x * y
    return s


def _matvec(m, v, ring):
    return [_dot(row, v, ring) for row in m]


def det_division_free(m):
    """Determinant over any commutative menu ring, no divisions performed."""
    if m.rows != m.cols:
        raise DimensionMismatch("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return m.ring.one()
    rows = m.to_rows()
    if n <= 5:
        return _perm_det(rows, m.ring)
    cp = _berkowitz_charpoly(rows, m.ring)
    det = cp[n]
    return det if n % 2 == 0 else -det


def adjugate(m):
    if m.rows != m.cols:
        raise DimensionMismatch("adjugate of a non-square matrix")
    n = m.rows
    if n == 0:
        return m
    if n == 1:
        return Matrix(m.ring, 1, 1, [m.ring.one()])
    rows = m.to_rows()
    out = [None] * (n * n)
    for i in range(n):
        for j in range(n):
            minor = [
                [rows[r][c] for c in range(n) if c != j]
                for r in range(n)
                if r != i
            ]
            d = det_division_free(Matrix.from_rows(m.ring, minor))
            out[j * n + i] = d if (i + j) % 2 == 0 else -d
    return Matrix(m.ring, n, n, out)


# ---------------------------------------------------------------------------
# units, regularity, ideals
# ---------------------------------------------------------------------------


def _mul_matrix_columns(values):
    """Flattened columns over the bottom ring for a list of same-ring values."""
    ring = values[0].ring
    basis = ring.basis()
    cols = []
    for v in values:
        for b in basis:
            cols.append(ring._flatten((v * b).payload))
    n = ring.flat_rank()
    return [[cols[c][r] for c in range(len(cols))] for r in range(n)]


def try_invert(v):
    """The inverse of v, or None.  Supports every menu ring."""
    ring = v.ring
    if isinstance(ring, SquareZeroF2):
        p, us = v.payload
        if p != (1,):
            return None
        return ring.val(((1,), us))
    if isinstance(ring, IntegerRing):
        return v if v.payload in (1, -1) else None
    if isinstance(ring, RationalRing):
        return ring.val(1 / v.payload) if v.payload != 0 else None
    if isinstance(ring, PrimeField):
        if v.payload == 0:
            return None
        return ring.val(pow(v.payload, -1, ring.m))
    if isinstance(ring, IntegersMod):
        if gcd(v.payload, ring.m) != 1:
            return None
        return ring.val(pow(v.payload, -1, ring.m))
    if isinstance(ring, MPolyTruncRing):
        # invertible iff the constant term is; build the inverse by the
        # geometric series on the nilpotent tail (truncation kills it).
        c0 = dict(v.payload).get((0,) * ring.num_vars, ring.base._zero())
        c0_inv = try_invert(RingValue(ring.base, c0))
        if c0_inv is None:
            return None
        c0v = ring.const(c0_inv.payload)
        tail = v - ring.const(c0)
        acc = ring.one()
        term = ring.one()
        for _ in range(ring.max_total_degree):
            term = -(term * tail * c0v)
            if term.is_zero():
                break
            acc = acc + term
        return acc * c0v
    bot = ring.bottom()
    n = ring.flat_rank()
    mat = _mul_matrix_columns([v])
    target = ring._flatten(ring._one())
    if isinstance(bot, (IntegerRing, RationalRing)):
        sol = linalg.solve_rational(mat, target)
        if sol is None:
            return None
        if isinstance(bot, IntegerRing):
            if any(s.denominator != 1 for s in sol):
                return None
            sol = [int(s) for s in sol]
    elif isinstance(bot, PrimeField):
        sol = linalg.solve_prime_field(mat, target, bot.m)
        if sol is None:
            return None
    elif isinstance(bot, IntegersMod):
        sol = linalg.solve_mod(mat, target, bot.m)
        if sol is None:
            return None
    else:
        raise UnsupportedRing(f"no unit test over {bot}")
    assert len(sol) == n
    return ring.val(ring._unflatten(sol))


def invert(v):
    inv = try_invert(v)
    if inv is None:
        raise NotInvertible(f"{v!r} is not a unit")
    return inv


def is_unit(r):
    if isinstance(r.ring, SquareZeroF2):
        raise UnsupportedRing("unit testing is not supported for the square-zero ring")
    return try_invert(r) is not None


def is_regular(r):
    """True iff multiplication by r is injective."""
    ring = r.ring
    if isinstance(ring, (SquareZeroF2, MPolyTruncRing)):
        raise UnsupportedRing(f"regularity is not decidable here: {ring}")
    if isinstance(ring, IntegerRing):
        return r.payload != 0
    if isinstance(ring, RationalRing):
        return r.payload != 0
    if isinstance(ring, PrimeField):
        return r.payload != 0
    if isinstance(ring, IntegersMod):
        return gcd(r.payload, ring.m) == 1
    bot = ring.bottom()
    mat = _mul_matrix_columns([r])
    if isinstance(bot, (IntegerRing, RationalRing)):
        return _fraction_det(mat) != 0
    if isinstance(bot, PrimeField):
        return not _has_kernel_prime(mat, bot.m)
    if isinstance(bot, IntegersMod):
        return linalg.kernel_trivial_mod(mat, bot.m)
    raise UnsupportedRing(f"no regularity test over {bot}")


def _fraction_det(mat):
    n = len(mat)
    m = [[Fraction(x) for x in row] for row in mat]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return det


def _has_kernel_prime(mat, p):
    n = len(mat)
    m = [[x % p for x in row] for row in mat]
    rank = 0
    for col in range(n):
        piv = next((r for r in range(rank, n) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for r in range(n):
            if r != rank and m[r][col] != 0:
                f = m[r][col]
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank < n


def ideal_membership(target, gens):
    """True iff target is in the ideal generated by gens."""
    ring = target.ring
    if isinstance(ring, (SquareZeroF2, MPolyTruncRing)):
        raise UnsupportedRing(f"ideal membership is not decidable here: {ring}")
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return target.is_zero()
    bot = ring.bottom()
    mat = _mul_matrix_columns(gens)
    b = ring._flatten(target.payload)
    if isinstance(bot, RationalRing):
        return linalg.solve_rational_rect(mat, b) is not None
    if isinstance(bot, IntegerRing):
        return linalg.solve_integer(mat, b) is not None
    if isinstance(bot, PrimeField):
        return linalg.solve_prime_field(mat, b, bot.m) is not None
    if isinstance(bot, IntegersMod):
        return linalg.solve_mod(mat, b, bot.m) is not None
    raise UnsupportedRing(f"no ideal arithmetic over {bot}")


def verify_split(r, idem):
    """True iff idem is idempotent and (r) = (idem)."""
    if not (idem * idem == idem):
        return False
    return ideal_membership(r, [idem]) and ideal_membership(idem, [r])


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

GROUP_SYMBOLS = ("v", "w", "z", "s", "r", "q", "p", "o")


def render_value(v):
    ring = v.ring
    p = v.payload
    if isinstance(ring, (IntegerRing, IntegersMod)):
        return str(p)
    if isinstance(ring, RationalRing):
        return str(p)
    if isinstance(ring, GroupRing):
        if not p:
            return "0"
        terms = []
        for coords, coef in p:
            sym = "".join(
                f"{GROUP_SYMBOLS[i]}" + (f"^{c}" if c > 1 else "")
                for i, c in enumerate(coords)
                if c
            )
            cs = render_value(RingValue(ring.base, coef))
            if not sym:
                terms.append(cs)
            elif cs == "1":
                terms.append(sym)
            elif cs == "-1":
                terms.append(f"-{sym}")
            else:
                terms.append(f"{cs}*{sym}")
        return _join_terms(terms)
    if isinstance(ring, PolyQuotient):
        terms = []
        for i, coef in enumerate(p):
            cv = RingValue(ring.base, coef)
            if cv.is_zero():
                continue
            cs = render_value(cv)
            mono = "" if i == 0 else (ring.var if i == 1 else f"{ring.var}^{i}")
            if not mono:
                terms.append(cs)
            elif cs == "1":
                terms.append(mono)
            elif cs == "-1":
                terms.append(f"-{mono}")
            elif "+" in cs or (cs.count("-") > cs.startswith("-")):
                terms.append(f"({cs})*{mono}")
            else:
                terms.append(f"{cs}*{mono}")
        return _join_terms(terms)
    if isinstance(ring, SquareZeroF2):
        pe, us = p
        terms = []
        for i, c in enumerate(pe):
            if c:
                terms.append("1" if i == 0 else ("e" if i == 1 else f"e^{i}"))
        for i in us:
            terms.append(f"u_{i}")
        return _join_terms(terms)
    if isinstance(ring, MPolyTruncRing):
        terms = []
        for exps, coef in p:
            cs = render_value(RingValue(ring.base, coef))
            mono = "*".join(
                f"t{i}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(exps)
                if e
            )
            if not mono:
                terms.append(cs)
            elif cs == "1":
                terms.append(mono)
            elif cs == "-1":
                terms.append(f"-{mono}")
            else:
                terms.append(f"{cs}*{mono}")
        return _join_terms(terms)
    return repr(p)


def _join_terms(terms):
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        if t.startswith("-"):
            out += f" - {t[1:]}"
        else:
            out += f" + {t}"
    return out


def render_poly(p, var="x"):
    if p.is_zero():
        return "0"
    terms = []
    for i, c in enumerate(p.coeffs):
        if c.is_zero():
            continue
        cs = render_value(c)
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            terms.append(cs)
        elif cs == "1":
            terms.append(mono)
        elif cs == "-1":
            terms.append(f"-{mono}")
        elif "+" in cs or " - " in cs:
            terms.append(f"({cs})*{mono}")
        else:
            terms.append(f"{cs}*{mono}")
    return _join_terms(terms)
