"""Rational polytopes and their tropical hypersurfaces.

Min-plus convention throughout: the hypersurface of a polytope P is the
codimension-one part of its normal fan, where the normal cone of a face
F collects the weight vectors minimized on F. Each edge contributes its
normal cone, weighted by the lattice length of the edge. A point has an
empty edge set, so its hypersurface is the zero cycle.

The normalization makes the volume of the unit simplex 1, so the weight
of the origin in the n-th stable power of the hypersurface is n! times
the Euclidean volume, and products of hypersurfaces compute lattice
mixed volumes (the generic root counts of sparse polynomial systems).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from stabletrop.cycles import TropicalCycle, cycle, zero_cycle
from stabletrop.errors import DimensionError, ValidationError
from stabletrop.lattices import (
    integer_kernel,
    mat_vec,
    rational_to_primitive,
    snf_diagonal,
    transpose,
    vec_sub,
)
from stabletrop.polyhedra import Polyhedron, refine_cells
from stabletrop.stable import stable_intersection, stable_power


@dataclass(frozen=True)
class RationalPolytope:
    """Bounded convex hull of finitely many rational points, stored by its
    canonical (inclusion-minimal, sorted) vertex list."""

    ambient_dim: int
    vertices: tuple

    @property
    def polyhedron(self) -> Polyhedron:
        return Polyhedron.from_vrep(self.ambient_dim, list(self.vertices))

    @property
    def dim(self) -> int:
        return self.polyhedron.dim

    def support_face(self, w) -> "RationalPolytope":
        """Face on which the functional w attains its minimum."""
        if len(w) != self.ambient_dim:
            raise DimensionError("functional has wrong length")
        values = [sum(Fraction(a) * x for a, x in zip(w, v)) for v in self.vertices]
        best = min(values)
        return polytope(
            self.ambient_dim,
            [v for v, val in zip(self.vertices, values) if val == best],
        )

    def edges(self):
        return [f for f in self.polyhedron.all_faces() if f.dim == 1]

    def minkowski(self, other: "RationalPolytope") -> "RationalPolytope":
        if other.ambient_dim != self.ambient_dim:
            raise DimensionError("ambient dimensions differ")
        return polytope(
            self.ambient_dim,
            [tuple(a + b for a, b in zip(u, v)) for u in self.vertices for v in other.vertices],
        )

    def dilate(self, k) -> "RationalPolytope":
        k = Fraction(k)
        return polytope(self.ambient_dim, [tuple(k * x for x in v) for v in self.vertices])

    def translate(self, t) -> "RationalPolytope":
        if len(t) != self.ambient_dim:
            raise DimensionError("translation has wrong length")
        return polytope(
            self.ambient_dim, [tuple(x + Fraction(a) for x, a in zip(v, t)) for v in self.vertices]
        )

    def contains(self, x) -> bool:
        return self.polyhedron.contains(x)


def polytope(ambient_dim: int, points) -> RationalPolytope:
    pts = [tuple(Fraction(x) for x in p) for p in points]
    if not pts:
        raise ValidationError("a polytope needs at least one point")
    for p in pts:
        if len(p) != ambient_dim:
            raise DimensionError("point has wrong length")
    hull = Polyhedron.from_vrep(ambient_dim, pts)
    verts, rays, lin = hull.vrep()
    if rays or lin:
        raise ValidationError("point set is unbounded")
    return RationalPolytope(ambient_dim, verts)


def from_polyhedron(p: Polyhedron) -> RationalPolytope:
    if p.is_empty:
        raise ValidationError("empty polyhedron is not a polytope")
    if not p.is_bounded:
        raise ValidationError("polyhedron is unbounded")
    return RationalPolytope(p.ambient_dim, p.vrep()[0])


def standard_simplex(n: int) -> RationalPolytope:
    zero = tuple(Fraction(0) for _ in range(n))
    pts = [zero]
    for i in range(n):
        pts.append(tuple(Fraction(1 if j == i else 0) for j in range(n)))
    return polytope(n, pts)


def cube(n: int) -> RationalPolytope:
    pts = []
    for mask in range(1 << n):
        pts.append(tuple(Fraction((mask >> i) & 1) for i in range(n)))
    return polytope(n, pts)


def lattice_length(edge: Polyhedron) -> Fraction:
    """Length of a segment in units of the primitive lattice vector along it."""
    if edge.dim != 1 or not edge.is_bounded:
        raise ValidationError("lattice length needs a bounded segment")
    pts, _, _ = edge.vrep()
    d = vec_sub(pts[1], pts[0])
    p = rational_to_primitive(d)
    i = next(k for k, x in enumerate(p) if x != 0)
    return Fraction(d[i], p[i])


def tropical_hypersurface(p: RationalPolytope) -> TropicalCycle:
    """Codimension-one normal cones of p, weighted by edge lattice lengths."""
    n = p.ambient_dim
    poly = p.polyhedron
    if poly.dim == 0:
        return zero_cycle(n)
    cells = []
    for e in poly.all_faces():
        if e.dim != 1:
            continue
        pts, _, _ = e.vrep()
        u = pts[0]
        ineqs = [(vec_sub(u, x), 0) for x in p.vertices]
        eqs = [(vec_sub(pts[1], u), 0)]
        cone = Polyhedron.from_hrep(n, ineqs, eqs, known_nonempty=True)
        cells.append((cone, lattice_length(e)))
    return cycle(n, cells)


def normalized_volume(p: RationalPolytope) -> Fraction:
    """Weight of the origin in the n-th stable power of the hypersurface:
    n! times the Euclidean volume, 0 for lower-dimensional bodies."""
    n = p.ambient_dim
    if n == 0:
        raise DimensionError("volume needs a positive-dimensional ambient space")
    z = stable_power(tropical_hypersurface(p), n)
    if z.is_zero:
        return Fraction(0)
    return z.mult_at(tuple(0 for _ in range(n)))


def mixed_volume(polys) -> Fraction:
    """Normalized mixed volume of n bodies in Q^n, so that
    mixed_volume([p] * n) == normalized_volume(p)."""
    polys = list(polys)
    if not polys:
        raise DimensionError("mixed volume needs at least one polytope")
    n = polys[0].ambient_dim
    if len(polys) != n or any(q.ambient_dim != n for q in polys):
        raise DimensionError("mixed volume needs exactly n bodies in Q^n")
    z = None
    for q in polys:
        h = tropical_hypersurface(q)
        z = h if z is None else stable_intersection(z, h)
        if z.is_zero:
            return Fraction(0)
    return z.mult_at(tuple(0 for _ in range(n)))


def volume_polynomial_coefficient(polys, exponents) -> Fraction:
    """Coefficient of lambda^exponents in the normalized volume of
    lambda_1 p_1 + ... + lambda_k p_k."""
    polys = list(polys)
    exponents = list(exponents)
    if len(polys) != len(exponents):
        raise ValidationError("one exponent per polytope")
    if any(a < 0 or a != int(a) for a in exponents):
        raise ValidationError("exponents must be nonnegative integers")
    n = polys[0].ambient_dim
    if any(q.ambient_dim != n for q in polys):
        raise DimensionError("ambient dimensions differ")
    if sum(exponents) != n:
        raise ValidationError("exponents must sum to the ambient dimension")
    z = None
    for q, a in zip(polys, exponents):
        if a == 0:
            continue
        h = stable_power(tropical_hypersurface(q), a)
        z = h if z is None else stable_intersection(z, h)
        if z.is_zero:
            return Fraction(0)
    coeff = factorial(n)
    for a in exponents:
        coeff //= factorial(a)
    return coeff * z.mult_at(tuple(0 for _ in range(n)))


def subspace_cycle(n: int, generators, mult=1) -> TropicalCycle:
    """The linear span of the generators as a weighted cycle."""
    gens = [tuple(g) for g in generators]
    cell = Polyhedron.from_vrep(n, [tuple(0 for _ in range(n))], lin=gens)
    return cycle(n, [(cell, mult)])


def preimage_cycle(matrix, x: TropicalCycle) -> TropicalCycle:
    """Pull a cycle back through a lattice-surjective integer matrix by
    taking cell preimages; weights carry over unchanged."""
    rows = [tuple(r) for r in matrix]
    d = len(rows)
    if x.ambient_dim != d:
        raise DimensionError("matrix target does not match the cycle")
    if not rows:
        raise DimensionError("empty matrix")
    n = len(rows[0])
    for r in rows:
        if len(r) != n:
            raise DimensionError("ragged matrix")
        if any(a != int(a) for a in r):
            raise ValidationError("preimage needs an integer matrix")
    if any(f != 1 for f in snf_diagonal(rows)):
        raise ValidationError("matrix is not surjective on lattice points")
    if x.is_zero:
        return zero_cycle(n)
    cols = transpose(rows)
    cells = []
    for c, m in x.weighted_cells():
        ineqs = [(mat_vec(cols, r[:-1]), r[-1]) for r in c.ineq_rows]
        eqs = [(mat_vec(cols, r[:-1]), r[-1]) for r in c.eq_rows]
        cells.append((Polyhedron.from_hrep(n, ineqs, eqs, known_nonempty=True), m))
    return cycle(n, cells)


def fatten_cycle(x: TropicalCycle, directions) -> TropicalCycle:
    """Minkowski-add the span of the directions to every cell."""
    gens = [tuple(g) for g in directions]
    if not gens:
        return x
    if x.is_zero:
        return x
    n = x.ambient_dim
    span = Polyhedron.from_vrep(n, [tuple(0 for _ in range(n))], lin=gens)
    return cycle(n, [(c.minkowski(span), m) for c, m in x.weighted_cells()])


def projection_comparison(p: RationalPolytope, matrix):
    """Two routes to the hypersurface of a projected polytope.

    For a lattice-surjective integer matrix A, the preimage of the
    hypersurface of A(p) agrees, as a cycle, with the stable intersection
    of the hypersurface of p with the row space of A, fattened by ker A.
    Returns the pair (preimage route, stable route).
    """
    rows = [tuple(r) for r in matrix]
    n = p.ambient_dim
    if not rows:
        raise DimensionError("empty projection matrix")
    if len(rows[0]) != n:
        raise DimensionError("matrix source does not match the polytope")
    q = polytope(len(rows), [mat_vec(rows, v) for v in p.vertices])
    lhs = preimage_cycle(rows, tropical_hypersurface(q))
    core = stable_intersection(tropical_hypersurface(p), subspace_cycle(n, rows))
    rhs = fatten_cycle(core, integer_kernel(rows))
    return lhs, rhs


def union_is_polytope(p: RationalPolytope, q: RationalPolytope) -> bool:
    """Whether the set union of p and q is itself convex."""
    if p.ambient_dim != q.ambient_dim:
        raise DimensionError("ambient dimensions differ")
    hull = polytope(p.ambient_dim, list(p.vertices) + list(q.vertices))
    pieces = refine_cells([hull.polyhedron, p.polyhedron, q.polyhedron])
    for idx, piece in pieces:
        if idx != 0:
            continue
        g = piece.interior_point()
        if not (p.polyhedron.contains(g) or q.polyhedron.contains(g)):
            return False
    return True
