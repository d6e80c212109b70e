"""Exact linear algebra over Z and Q for lattice computations.

All arithmetic uses Python integers and fractions.Fraction; no floating
point appears anywhere in this package. Vectors are plain tuples and
matrices are tuples of row tuples, so every value is hashable and can be
used as a canonical dictionary key.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

Rational = Fraction
IntVector = tuple
IntMatrix = tuple


class SubgroupError(ValueError):
    """A lattice operation received generators outside the ambient group."""


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v):
    return tuple(c * a for a in v)


def vec_dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def vec_is_zero(v):
    return all(a == 0 for a in v)


def mat_from_rows(rows) -> IntMatrix:
    return tuple(tuple(r) for r in rows)


def identity_matrix(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(m):
    if not m:
        return ()
    return tuple(tuple(row[j] for row in m) for j in range(len(m[0])))


def mat_vec(m, v):
    return tuple(vec_dot(row, v) for row in m)


def mat_mul(a, b):
    bt = transpose(b)
    return tuple(tuple(vec_dot(row, col) for col in bt) for row in a)


def primitive(v) -> IntVector:
    """The integer vector v divided by the gcd of its entries.

    Raises ValueError on the zero vector. The sign pattern is preserved.
    """
    g = gcd(*(abs(int(a)) for a in v)) if v else 0
    if g == 0:
        raise ValueError("primitive vector of the zero vector is undefined")
    return tuple(int(a) // g for a in v)


def rational_to_primitive(v) -> IntVector:
    """Primitive integer vector spanning the same ray as a rational vector."""
    denoms = [Fraction(a).denominator for a in v]
    scale = 1
    for d in denoms:
        scale = scale * d // gcd(scale, d)
    return primitive(tuple(int(Fraction(a) * scale) for a in v))


def int_rank(rows) -> int:
    """Rank of an integer matrix, by fraction-free (Bareiss) elimination."""
    m = [list(r) for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    rank = 0
    prev = 1
    for c in range(nc):
        piv = None
        for i in range(rank, nr):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(rank + 1, nr):
            for j in range(c + 1, nc):
                m[i][j] = (m[i][j] * m[rank][c] - m[i][c] * m[rank][j]) // prev
            m[i][c] = 0
        prev = m[rank][c]
        rank += 1
        if rank == nr:
            break
    return rank


def rank_rows(rows) -> int:
    """Rank of a matrix with integer or Fraction entries."""
    scaled = []
    for r in rows:
        if any(isinstance(a, Fraction) and a.denominator != 1 for a in r):
            scaled.append(rational_to_primitive(r) if any(r) else tuple(0 for _ in r))
        else:
            scaled.append(tuple(int(a) for a in r))
    return int_rank(scaled)


def row_hermite(rows, keep_zero_rows: bool = False) -> IntMatrix:
    """Row Hermite normal form of an integer matrix.

    Pivots are positive, entries below a pivot are zero and entries above it
    are reduced into [0, pivot). The result is the canonical basis of the
    row lattice; zero rows are dropped unless keep_zero_rows is set.
    """
    m = [list(int(a) for a in r) for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    r = 0
    for c in range(nc):
        if r == nr:
            break
        while True:
            nz = [i for i in range(r, nr) if m[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(m[i][c]), i))
            m[r], m[i0] = m[i0], m[r]
            p = m[r][c]
            clean = True
            for i in range(r + 1, nr):
                if m[i][c] != 0:
                    q = m[i][c] // p
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
                    if m[i][c] != 0:
                        clean = False
            if clean:
                break
        if m[r][c] == 0:
            continue
        if m[r][c] < 0:
            m[r] = [-a for a in m[r]]
        p = m[r][c]
        for i in range(r):
            q = m[i][c] // p
            if q:
                m[i] = [a - q * b for a, b in zip(m[i], m[r])]
        r += 1
    out = [tuple(row) for row in m[:r]]
    if keep_zero_rows:
        out += [tuple(0 for _ in range(nc)) for _ in range(nr - r)]
    return tuple(out)


def hnf(matrix) -> IntMatrix:
    """Column Hermite normal form with the same column span.

    Implemented as the transpose of the row Hermite form of the transpose;
    zero columns are kept at the end so the shape is preserved.
    """
    mt = transpose(mat_from_rows(matrix))
    h = row_hermite(mt, keep_zero_rows=True)
    return transpose(h)


def snf_transform(matrix):
    """Smith normal form with transforms.

    Returns (U, Uinv, D, V) with U * matrix * V == D, where U and V are
    unimodular, Uinv is the inverse of U, and D is diagonal with
    nonnegative invariant factors d1 | d2 | ...
    """
    D = [list(int(a) for a in r) for r in matrix]
    nr = len(D)
    nc = len(D[0]) if nr else 0
    U = [list(r) for r in identity_matrix(nr)]
    Uinv = [list(r) for r in identity_matrix(nr)]
    V = [list(r) for r in identity_matrix(nc)]

    def row_sub(i, j, q):
        # row_i -= q * row_j; Uinv gets the inverse column operation
        D[i] = [a - q * b for a, b in zip(D[i], D[j])]
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]
        for k in range(nr):
            Uinv[k][j] += q * Uinv[k][i]

    def row_swap(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for k in range(nr):
            Uinv[k][i], Uinv[k][j] = Uinv[k][j], Uinv[k][i]

    def row_negate(i):
        D[i] = [-a for a in D[i]]
        U[i] = [-a for a in U[i]]
        for k in range(nr):
            Uinv[k][i] = -Uinv[k][i]

    def col_sub(j, i, q):
        # col_j -= q * col_i
        for k in range(nr):
            D[k][j] -= q * D[k][i]
        for k in range(nc):
            V[k][j] -= q * V[k][i]

    def col_swap(i, j):
        for k in range(nr):
            D[k][i], D[k][j] = D[k][j], D[k][i]
        for k in range(nc):
            V[k][i], V[k][j] = V[k][j], V[k][i]

    t = 0
    limit = min(nr, nc)
    while t < limit:
        entries = [(abs(D[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if D[i][j] != 0]
        if not entries:
            break
        _, pi, pj = min(entries)
        if pi != t:
            row_swap(t, pi)
        if pj != t:
            col_swap(t, pj)
        dirty = False
        for i in range(t + 1, nr):
            if D[i][t] != 0:
                q = D[i][t] // D[t][t]
                row_sub(i, t, q)
                if D[i][t] != 0:
                    dirty = True
        for j in range(t + 1, nc):
            if D[t][j] != 0:
                q = D[t][j] // D[t][t]
                col_sub(j, t, q)
                if D[t][j] != 0:
                    dirty = True
        if dirty:
            continue
        p = D[t][t]
        bad = None
        for i in range(t + 1, nr):
            for j in range(t + 1, nc):
                if D[i][j] % p != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            row_sub(t, bad, -1)
            continue
        if D[t][t] < 0:
            row_negate(t)
        t += 1
    return (mat_from_rows(U), mat_from_rows(Uinv), mat_from_rows(D), mat_from_rows(V))


def snf_diagonal(matrix):
    """Invariant factor list of an integer matrix, zeros for rank defects."""
    _, _, d, _ = snf_transform(matrix)
    k = min(len(d), len(d[0]) if d else 0)
    return [d[i][i] for i in range(k)]


def integer_kernel(matrix):
    """Basis of the integer kernel {x : matrix * x == 0}, as column vectors.

    The result generates a saturated sublattice (the full kernel lattice).
    """
    m = mat_from_rows(matrix)
    nr = len(m)
    nc = len(m[0]) if nr else 0
    if nc == 0:
        return []
    if nr == 0:
        return [tuple(1 if i == j else 0 for i in range(nc)) for j in range(nc)]
    _, _, d, v = snf_transform(m)
    cols = []
    for j in range(nc):
        if j >= min(nr, nc) or d[j][j] == 0:
            cols.append(tuple(v[i][j] for i in range(nc)))
    return cols


def solve_integer(matrix, rhs):
    """One integer solution x of matrix * x == rhs, or None."""
    m = mat_from_rows(matrix)
    nr = len(m)
    nc = len(m[0]) if nr else 0
    if nr == 0:
        return tuple(0 for _ in range(nc))
    u, _, d, v = snf_transform(m)
    ub = mat_vec(u, tuple(rhs))
    y = [0] * nc
    for i in range(nr):
        di = d[i][i] if i < min(nr, nc) else 0
        if di != 0:
            if ub[i] % di != 0:
                return None
            y[i] = ub[i] // di
        elif ub[i] != 0:
            return None
    return mat_vec(v, tuple(y))


def solve_rational(matrix, rhs):
    """One rational solution x of matrix * x == rhs, or None."""
    nr = len(matrix)
    nc = len(matrix[0]) if nr else 0
    aug = [[Fraction(a) for a in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    pivots = []
    r = 0
    for c in range(nc):
        piv = None
        for i in range(r, nr):
            if aug[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        pv = aug[r][c]
        aug[r] = [a / pv for a in aug[r]]
        for i in range(nr):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, nr):
        if aug[i][nc] != 0:
            return None
    x = [Fraction(0)] * nc
    for i, c in enumerate(pivots):
        x[c] = aug[i][nc]
    return tuple(x)


def rref(rows):
    """Reduced row echelon form over Q. Returns (rows, pivot_columns)."""
    m = [[Fraction(a) for a in r] for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    pivots = []
    r = 0
    for c in range(nc):
        piv = None
        for i in range(r, nr):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [a / pv for a in m[r]]
        for i in range(nr):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return tuple(tuple(row) for row in m[:r]), tuple(pivots)


def nullspace_rational(rows, ncols=None):
    """Basis of the rational null space of a matrix, deterministic order."""
    nc = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    if not rows:
        return [tuple(Fraction(1 if i == j else 0) for i in range(nc)) for j in range(nc)]
    red, pivots = rref(rows)
    free = [j for j in range(nc) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * nc
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(tuple(v))
    return basis


@dataclass(frozen=True)
class LatticeSubgroup:
    """A finitely generated subgroup of Z^n in canonical Hermite form.

    generators holds linearly independent lattice vectors, the rows of the
    Hermite normal form of any generating set, so equality of subgroups is
    equality of the dataclass.
    """

    ambient_rank: int
    generators: tuple

    @staticmethod
    def from_vectors(ambient_rank: int, vectors) -> "LatticeSubgroup":
        vecs = [tuple(int(a) for a in v) for v in vectors if not vec_is_zero(v)]
        for v in vecs:
            if len(v) != ambient_rank:
                raise ValueError("generator length does not match ambient rank")
        h = row_hermite(vecs) if vecs else ()
        return LatticeSubgroup(ambient_rank, h)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def basis_columns(self):
        """Generators as the columns of an (ambient_rank x rank) matrix."""
        return transpose(self.generators) if self.generators else tuple(() for _ in range(self.ambient_rank))

    def contains_vector(self, v) -> bool:
        if vec_is_zero(v):
            return True
        if not self.generators:
            return False
        return solve_integer(self.basis_columns(), v) is not None

    def spans_vector(self, v) -> bool:
        """Whether v lies in the rational span of the subgroup."""
        if vec_is_zero(v):
            return True
        if not self.generators:
            return False
        return rank_rows(list(self.generators) + [tuple(v)]) == self.rank

    def is_subgroup_of(self, other: "LatticeSubgroup") -> bool:
        return all(other.contains_vector(g) for g in self.generators)


def standard_lattice(n: int) -> LatticeSubgroup:
    return LatticeSubgroup.from_vectors(n, identity_matrix(n))


def zero_subgroup(n: int) -> LatticeSubgroup:
    return LatticeSubgroup.from_vectors(n, [])


def sum_lattices(a: LatticeSubgroup, b: LatticeSubgroup) -> LatticeSubgroup:
    if a.ambient_rank != b.ambient_rank:
        raise ValueError("ambient ranks differ")
    return LatticeSubgroup.from_vectors(a.ambient_rank, a.generators + b.generators)


def intersect_lattices(a: LatticeSubgroup, b: LatticeSubgroup) -> LatticeSubgroup:
    """Intersection of two subgroups of the same ambient lattice.

    Solves A x = B y through the integer kernel of the block matrix [A | -B].
    """
    if a.ambient_rank != b.ambient_rank:
        raise ValueError("ambient ranks differ")
    n = a.ambient_rank
    if a.rank == 0 or b.rank == 0:
        return zero_subgroup(n)
    ca = a.basis_columns()
    cb = b.basis_columns()
    block = tuple(tuple(ca[i]) + tuple(-x for x in cb[i]) for i in range(n))
    gens = []
    for col in integer_kernel(block):
        x = col[: a.rank]
        g = tuple(vec_dot(ca[i], x) for i in range(n))
        if not vec_is_zero(g):
            gens.append(g)
    return LatticeSubgroup.from_vectors(n, gens)


def lattice_index(ambient: LatticeSubgroup, sub: LatticeSubgroup):
    """Index [ambient : sub] as a Fraction, or None when it is infinite.

    Raises SubgroupError if sub is not contained in ambient.
    """
    if ambient.ambient_rank != sub.ambient_rank:
        raise ValueError("ambient ranks differ")
    if sub.rank == 0:
        if ambient.rank == 0:
            return Fraction(1)
        return None
    cols = ambient.basis_columns()
    coords = []
    for g in sub.generators:
        x = solve_integer(cols, g)
        if x is None:
            raise SubgroupError("generators do not lie in the ambient subgroup")
        coords.append(x)
    if sub.rank < ambient.rank:
        return None
    coord_matrix = transpose(coords)  # ambient.rank x sub.rank
    factors = snf_diagonal(coord_matrix)
    idx = 1
    for d in factors:
        if d == 0:
            return None
        idx *= abs(d)
    return Fraction(idx)


def saturation(ambient_rank: int, vectors) -> LatticeSubgroup:
    """Saturated lattice: the intersection of Z^n with the span of vectors."""
    vecs = [tuple(int(a) for a in v) for v in vectors if not vec_is_zero(v)]
    if not vecs:
        return zero_subgroup(ambient_rank)
    cols = transpose(vecs)  # columns are the generators
    _, uinv, d, _ = snf_transform(cols)
    nr = ambient_rank
    nz = sum(1 for i in range(min(nr, len(vecs))) if d[i][i] != 0)
    gens = [tuple(uinv[i][j] for i in range(nr)) for j in range(nz)]
    return LatticeSubgroup.from_vectors(ambient_rank, gens)


def quotient_matrix(sub: LatticeSubgroup):
    """Integer matrix projecting Z^n onto Z^(n-d) with kernel exactly sub.

    Requires sub to be saturated; rows come from the Smith transform of the
    generator matrix, so the map is surjective onto the quotient lattice.
    """
    n = sub.ambient_rank
    d = sub.rank
    if d == 0:
        return identity_matrix(n)
    cols = sub.basis_columns()
    u, _, diag, _ = snf_transform(cols)
    for i in range(d):
        if abs(diag[i][i]) != 1:
            raise SubgroupError("subgroup is not saturated")
    return tuple(u[i] for i in range(d, n))
