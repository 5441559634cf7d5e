"""Integer/rational linear algebra: Smith and Hermite forms, exact solvers.

Everything here works on plain python ints and Fractions; the generic-ring
matrix code lives in rings.py.  Sizes are small (desk scale), so the classical
algorithms are fine.
"""

from fractions import Fraction
from math import gcd


def _swap_rows(m, i, j):
    m[i], m[j] = m[j], m[i]


def smith_normal_form(a):
    """Return (d, u, v) with u*a*v = d diagonal, u and v unimodular.

    `a` is a list of lists of ints; d is returned as a full matrix of the same
    shape with nonzero entries only on the diagonal, d[0][0] | d[1][1] | ...
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    d = [list(r) for r in a]
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def row_op(i, j, q):  # row_i -= q * row_j
        d[i] = [x - q * y for x, y in zip(d[i], d[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for r in range(rows):
            d[r][i] -= q * d[r][j]
        for r in range(cols):
            v[r][i] -= q * v[r][j]

    t = 0
    while t < min(rows, cols):
        # find a pivot
        piv = None
        for i in range(t, rows):
            for j in range(t, cols):
                if d[i][j] != 0:
                    if piv is None or abs(d[i][j]) < abs(d[piv[0]][piv[1]]):
                        piv = (i, j)
        if piv is None:
            break
        pi, pj = piv
        _swap_rows(d, t, pi)
        _swap_rows(u, t, pi)
        for r in range(rows):
            d[r][t], d[r][pj] = d[r][pj], d[r][t]
        for r in range(cols):
            v[r][t], v[r][pj] = v[r][pj], v[r][t]

        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, rows):
                if d[i][t] != 0:
                    q = d[i][t] // d[t][t]
                    row_op(i, t, q)
                    if d[i][t] != 0:
                        _swap_rows(d, t, i)
                        _swap_rows(u, t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if d[t][j] != 0:
                    q = d[t][j] // d[t][t]
                    col_op(j, t, q)
                    if d[t][j] != 0:
                        for r in range(rows):
                            d[r][t], d[r][j] = d[r][j], d[r][t]
                        for r in range(cols):
                            v[r][t], v[r][j] = v[r][j], v[r][t]
                        dirty = True
        # make the pivot divide the rest of the block
        redo = False
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if d[i][j] % d[t][t] != 0:
                    d[t] = [x + y for x, y in zip(d[t], d[i])]
                    u[t] = [x + y for x, y in zip(u[t], u[i])]
                    redo = True
                    break
            if redo:
                break
        if redo:
            continue
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return d, u, v


def solve_integer(a, b):
    """One integer solution x of a·x = b, or None.  a: rows x cols ints."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if rows == 0:
        return [0] * cols
    d, u, v = smith_normal_form(a)
    c = [sum(u[i][k] * b[k] for k in range(rows)) for i in range(rows)]
    z = [0] * cols
    for i in range(rows):
        di = d[i][i] if i < cols else 0
        if di == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % di != 0:
                return None
            if i < cols:
                z[i] = c[i] // di
    return [sum(v[i][k] * z[k] for k in range(cols)) for i in range(cols)]


def solve_mod(a, b, m):
    """One solution x of a·x = b (mod m), or None."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if rows == 0:
        return [0] * cols
    d, u, v = smith_normal_form(a)
    c = [sum(u[i][k] * b[k] for k in range(rows)) % m for i in range(rows)]
    z = [0] * cols
    for i in range(rows):
        di = d[i][i] % m if i < cols else 0
        ci = c[i]
        if di == 0:
            if ci % m != 0:
                return None
        else:
            g = gcd(di, m)
            if ci % g != 0:
                return None
            mm = m // g
            z_i = (ci // g) * pow(di // g, -1, mm) % mm
            if i < cols:
                z[i] = z_i
    return [sum(v[i][k] * z[k] for k in range(cols)) % m for i in range(cols)]


def kernel_trivial_mod(a, m):
    """True iff a·x = 0 (mod m) only for x = 0 (a is square or tall)."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if cols == 0:
        return True
    d, _, _ = smith_normal_form(a)
    for j in range(cols):
        dj = d[j][j] if j < rows else 0
        if gcd(dj, m) != 1:
            return False
    return True


def solve_rational(a, b):
    """Unique rational solution of square a·x = b, or None if a is singular."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        _swap_rows(m, col, piv)
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


def solve_rational_rect(a, b):
    """Some rational solution of a·x = b (any shape), or None if inconsistent."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(a)]
    pivots = []
    r = 0
    for col in range(cols):
        piv = next((i for i in range(r, rows) if m[i][col] != 0), None)
        if piv is None:
            continue
        _swap_rows(m, r, piv)
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if m[i][cols] != 0:
            return None
    x = [Fraction(0)] * cols
    for i, col in enumerate(pivots):
        x[col] = m[i][cols]
    return x


def solve_prime_field(a, b, p):
    """Some solution of a·x = b over F_p (any shape), or None."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [[x % p for x in row] + [b[i] % p] for i, row in enumerate(a)]
    pivots = []
    r = 0
    for col in range(cols):
        piv = next((i for i in range(r, rows) if m[i][col] != 0), None)
        if piv is None:
            continue
        _swap_rows(m, r, piv)
        inv = pow(m[r][col], -1, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(rows):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if m[i][cols] != 0:
            return None
    x = [0] * cols
    for i, col in enumerate(pivots):
        x[col] = m[i][cols]
    return x


def hermite_row_form(rows_in):
    """Row-style Hermite normal form of the lattice spanned by integer rows.

    Returns the list of nonzero reduced rows (pivots positive, entries above a
    pivot reduced into [0, pivot)).  Canonical for a given lattice.
    """
    rows = [list(r) for r in rows_in if any(r)]
    if not rows:
        return []
    cols = len(rows[0])
    basis = []
    col = 0
    while col < cols and rows:
        rows.sort(key=lambda r: (r[col] == 0, abs(r[col]) if r[col] else 0))
        if rows[0][col] == 0:
            col += 1
            continue
        # reduce all other rows against the smallest pivot until column clears
        while True:
            nz = [r for r in rows if r[col] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda r: abs(r[col]))
            head = nz[0]
            for r in nz[1:]:
                q = r[col] // head[col]
                for j in range(cols):
                    r[j] -= q * head[j]
            rows = [r for r in rows if any(r)]
        head = next(r for r in rows if r[col] != 0)
        if head[col] < 0:
            for j in range(cols):
                head[j] = -head[j]
        basis.append(head)
        rows = [r for r in rows if r is not head]
        col += 1
    # reduce above-pivot entries
    for i in reversed(range(len(basis))):
        pcol = next(j for j in range(cols) if basis[i][j] != 0)
        for k in range(i):
            q = basis[k][pcol] // basis[i][pcol]
            if q:
                for j in range(cols):
                    basis[k][j] -= q * basis[i][j]
    return basis
