"""Independent reference implementations used only by the test suite.

Everything here is deliberately naive (LP feasibility on generator
coordinates, pulling triangulations, inclusion-exclusion over Minkowski
sums) so that production code paths are checked against a second route
sharing no geometry code with them beyond exact arithmetic.
"""

from fractions import Fraction
from itertools import combinations, product
from math import factorial

from stabletrop.lattices import (
    nullspace_rational,
    rank_rows,
    rational_to_primitive,
    rref,
    saturation,
    solve_rational,
    transpose,
    vec_dot,
    vec_sub,
)
from stabletrop.linprog import feasible_point


def vgen_member(points, rays, lin, x):
    """Whether x = sum lam_i p_i + sum mu_j r_j + sum nu_k l_k with
    lam >= 0 summing to one and mu >= 0, decided by exact LP."""
    if not points:
        return False
    n = len(x)
    gens = list(points) + list(rays) + list(lin)
    width = len(gens)
    eqs = []
    for j in range(n):
        eqs.append((tuple(g[j] for g in gens), Fraction(x[j])))
    eqs.append((tuple([1] * len(points) + [0] * (len(rays) + len(lin))), 1))
    ineqs = []
    for i in range(len(points) + len(rays)):
        row = [0] * width
        row[i] = -1
        ineqs.append((tuple(row), 0))
    return feasible_point(width, ineqs, eqs) is not None


def affine_lattice_coordinates(vertices):
    """Coordinates of vertices in a lattice basis of their affine span.

    The first vertex maps to the origin; the rest are expressed in a
    basis of the saturated direction lattice, so the output is volume
    faithful: a fundamental lattice cell of the span has volume one.
    """
    v0 = vertices[0]
    diffs = [vec_sub(v, v0) for v in vertices[1:]]
    prim = [rational_to_primitive(d) for d in diffs if any(d)]
    if not prim:
        return [tuple() for _ in vertices], 0
    lat = saturation(len(v0), prim)
    basis_cols = transpose(lat.generators)
    out = [tuple(Fraction(0) for _ in range(lat.rank))]
    for d in diffs:
        coords = solve_rational(basis_cols, d)
        assert coords is not None
        out.append(tuple(coords))
    return out, lat.rank


def _det(rows):
    m = [list(r) for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = Fraction(1) / Fraction(m[c][c])
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def _supported_faces(pts, base, rank):
    """Facets of conv(pts) avoiding base, as point subsets of rank-1.

    pts all lie in a common affine subspace of dimension rank (possibly
    inside a larger ambient space); the facet normal is computed inside
    that subspace, so the search is exact at every recursion depth.
    """
    n = len(pts[0])
    span_rows, _ = rref([vec_sub(p, pts[0]) for p in pts[1:]])
    out = []
    seen = set()
    for subset in combinations(range(len(pts)), rank):
        sel = [pts[i] for i in subset]
        diffs = [vec_sub(p, sel[0]) for p in sel[1:]]
        m = [[vec_dot(s, d) for s in span_rows] for d in diffs]
        betas = nullspace_rational(m, ncols=rank)
        if len(betas) != 1:
            continue
        beta = betas[0]
        h = tuple(sum(b * s[j] for b, s in zip(beta, span_rows)) for j in range(n))
        vals = [vec_dot(h, p) for p in pts]
        c = vec_dot(h, sel[0])
        if all(v <= c for v in vals) or all(v >= c for v in vals):
            face = tuple(sorted(p for p, v in zip(pts, vals) if v == c))
            if base not in face and face not in seen:
                seen.add(face)
                out.append(list(face))
    return out


def _triangulate(pts, rank):
    """Pulling triangulation: yields (rank+1)-tuples of points covering
    conv(pts) with disjoint interiors."""
    pts = sorted(set(pts))
    if rank == 0:
        yield (pts[0],)
        return
    if len(pts) == rank + 1:
        yield tuple(pts)
        return
    base = pts[0]
    for facet_pts in _supported_faces(pts, base, rank):
        for sub in _triangulate(facet_pts, rank - 1):
            yield (base,) + sub


def triangulation_volume(vertices):
    """Normalized volume of conv(vertices) inside its own affine span.

    Sum of |det| of simplex edge matrices in lattice coordinates: the
    unit simplex has volume one, a point has volume one by convention.
    """
    verts = sorted(set(tuple(Fraction(a) for a in v) for v in vertices))
    coords, rank = affine_lattice_coordinates(verts)
    if rank == 0:
        return Fraction(1)
    total = Fraction(0)
    for simplex in _triangulate(coords, rank):
        mat = [vec_sub(p, simplex[0]) for p in simplex[1:]]
        total += abs(_det(mat))
    return total


def full_dim_volume(vertex_set, n):
    """Normalized n-volume in Q^n; zero when the hull is lower dimensional."""
    verts = sorted(set(tuple(Fraction(a) for a in v) for v in vertex_set))
    if len(verts) <= n:
        return Fraction(0)
    diffs = [vec_sub(v, verts[0]) for v in verts[1:]]
    if rank_rows(diffs) < n:
        return Fraction(0)
    return triangulation_volume(verts)


def minkowski_sum_vertices(vertex_sets):
    """All pairwise-sum points of several vertex sets (superset of the
    vertices of the Minkowski sum, which is all the volume needs)."""
    acc = [tuple(Fraction(0) for _ in vertex_sets[0][0])]
    for vs in vertex_sets:
        acc = [tuple(a + b for a, b in zip(p, q)) for p in acc for q in vs]
    return sorted(set(acc))


def mixed_volume_oracle(vertex_sets):
    """Mixed volume of n polytopes in Q^n, normalized so that
    MV(simplex, ..., simplex) == 1, by inclusion-exclusion over
    normalized volumes of sub-sums."""
    n = len(vertex_sets)
    total = Fraction(0)
    for bits in product((0, 1), repeat=n):
        chosen = [vs for vs, b in zip(vertex_sets, bits) if b]
        if not chosen:
            continue
        pts = minkowski_sum_vertices(chosen)
        vol = full_dim_volume(pts, n)
        sign = 1 if (n - len(chosen)) % 2 == 0 else -1
        total += sign * vol
    return total / factorial(n)
