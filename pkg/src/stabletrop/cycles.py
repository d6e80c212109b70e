"""Tropical cycles: weighted pure-dimensional rational polyhedral complexes.

A cycle is stored as a list of cells with rational multiplicities. Cells
are not required to form an honest complex at construction time; sums,
equality tests and the balancing check normalize by overlaying cells that
share an affine hull and, for balancing, by a global arrangement
refinement. Cycles are identified up to refinement: `cycles_equal` tests
semantic equality, the dataclass equality is representation equality of
the canonicalized cell lists.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from stabletrop.errors import DimensionError, GenericityError, ValidationError
from stabletrop.lattices import (
    LatticeSubgroup,
    integer_kernel,
    intersect_lattices,
    lattice_index,
    mat_vec,
    quotient_matrix,
    rank_rows,
    rational_to_primitive,
    vec_is_zero,
    vec_sub,
)
from stabletrop.polyhedra import Polyhedron, refine_cells


@dataclass(frozen=True)
class TropicalCycle:
    """Weighted cell list of a fixed pure dimension; () is the zero cycle."""

    ambient_dim: int
    cells: tuple
    multiplicities: tuple

    @property
    def dim(self):
        return self.cells[0].dim if self.cells else None

    @property
    def codim(self):
        return None if self.dim is None else self.ambient_dim - self.dim

    @property
    def is_zero(self):
        return not self.cells

    def weighted_cells(self):
        return list(zip(self.cells, self.multiplicities))

    def mult_at(self, x):
        """Total weight of cells whose relative interior contains x.

        Refinement invariant; meaningful at points in the relative
        interior of a facet of the support (elsewhere it reports zero).
        """
        total = Fraction(0)
        for c, m in zip(self.cells, self.multiplicities):
            if c.relint_contains(x):
                total += m
        return total

    def lineality_lattice(self) -> LatticeSubgroup:
        """Largest saturated lattice along which every cell is invariant."""
        if self.is_zero:
            raise ValidationError("the zero cycle has no lineality lattice")
        lat = self.cells[0].lineality_lattice()
        for c in self.cells[1:]:
            lat = intersect_lattices(lat, c.lineality_lattice())
        return lat

    def __repr__(self):
        if self.is_zero:
            return f"TropicalCycle(zero in Q^{self.ambient_dim})"
        return f"TropicalCycle(dim {self.dim} in Q^{self.ambient_dim}, {len(self.cells)} cells)"


def cycle(ambient_dim, weighted_cells):
    """Build a cycle from (cell, multiplicity) pairs.

    Empty cells and zero multiplicities are dropped, identical cells are
    merged, the rest must share the ambient dimension and be pure."""
    acc = {}
    order = []
    for c, m in weighted_cells:
        m = Fraction(m)
        if m == 0 or c.is_empty:
            continue
        if c.ambient_dim != ambient_dim:
            raise DimensionError("cell ambient dimension mismatch")
        k = c.key()
        if k not in acc:
            acc[k] = [c, Fraction(0)]
            order.append(k)
        acc[k][1] += m
    pairs = [(acc[k][0], acc[k][1]) for k in order if acc[k][1] != 0]
    dims = {c.dim for c, _ in pairs}
    if len(dims) > 1:
        raise ValidationError(f"cells are not pure dimensional: dims {sorted(dims)}")
    pairs.sort(key=lambda cm: cm[0].key())
    return TropicalCycle(ambient_dim, tuple(c for c, _ in pairs), tuple(m for _, m in pairs))


def zero_cycle(ambient_dim):
    return TropicalCycle(ambient_dim, (), ())


def ambient_cycle(ambient_dim, mult=1):
    """Q^n as a cycle of dimension n with constant weight."""
    return cycle(ambient_dim, [(Polyhedron.ambient(ambient_dim), Fraction(mult))])


def scalar(c, x: TropicalCycle):
    c = Fraction(c)
    if c == 0:
        return zero_cycle(x.ambient_dim)
    return TropicalCycle(x.ambient_dim, x.cells, tuple(c * m for m in x.multiplicities))


def normalize_weighted(ambient_dim, weighted_cells, dim_hint=None):
    """Canonical overlay of weighted cells sharing an affine hull.

    Within each affine hull the cells are refined by all facet
    hyperplanes of the group, multiplicities accumulate on identical
    pieces and zero totals vanish. Cells in different hulls never merge,
    which is enough for cycle sums; the full arrangement refinement is
    only needed for balancing and lives in `is_balanced`.
    """
    groups = {}
    for c, m in weighted_cells:
        m = Fraction(m)
        if m == 0 or c.is_empty:
            continue
        key = c.hrep()[1]
        groups.setdefault(key, []).append((c, m))
    out = []
    for members in groups.values():
        pieces = refine_cells([c for c, _ in members])
        acc = {}
        for idx, piece in pieces:
            k = piece.key()
            if k not in acc:
                acc[k] = [piece, Fraction(0)]
            acc[k][1] += members[idx][1]
        out.extend((p, m) for p, m in acc.values() if m != 0)
    return cycle(ambient_dim, out)


def cycle_sum(x: TropicalCycle, y: TropicalCycle):
    if x.ambient_dim != y.ambient_dim:
        raise DimensionError("ambient dimensions differ")
    if x.is_zero:
        return normalize_weighted(y.ambient_dim, y.weighted_cells())
    if y.is_zero:
        return normalize_weighted(x.ambient_dim, x.weighted_cells())
    if x.dim != y.dim:
        raise DimensionError("cycle dimensions differ")
    return normalize_weighted(x.ambient_dim, x.weighted_cells() + y.weighted_cells())


def cycles_equal(x: TropicalCycle, y: TropicalCycle):
    """Equality as tropical cycles, modulo refinement."""
    if x.ambient_dim != y.ambient_dim:
        return False
    if not (x.is_zero or y.is_zero) and x.dim != y.dim:
        return False
    return cycle_sum(x, scalar(-1, y)).is_zero


def _honest_refinement(x: TropicalCycle):
    """Weighted cells refined into a genuine complex by the global
    arrangement of all facet hyperplanes, overlaps merged."""
    pieces = refine_cells(list(x.cells))
    acc = {}
    for idx, piece in pieces:
        k = piece.key()
        if k not in acc:
            acc[k] = [piece, Fraction(0)]
        acc[k][1] += x.multiplicities[idx]
    return [(p, m) for p, m in acc.values() if m != 0]


def _normal_in_quotient(qmat, sigma: Polyhedron, ridge: Polyhedron):
    """Primitive image of the facet direction lattice in the quotient by
    the ridge directions, signed to point from the ridge into sigma."""
    img = None
    for g in sigma.direction_lattice().generators:
        w = mat_vec(qmat, g)
        if not vec_is_zero(w):
            img = rational_to_primitive(w)
            break
    if img is None:
        raise ValidationError("facet does not extend the ridge")
    d = vec_sub(sigma.interior_point(), ridge.interior_point())
    qd = mat_vec(qmat, d)
    j = next(i for i, a in enumerate(img) if a != 0)
    if qd[j] * img[j] < 0:
        img = tuple(-a for a in img)
    return img


def is_balanced(x: TropicalCycle):
    """Exact balancing test around every ridge of the honest refinement.

    Returns (flag, failures) where failures lists (ridge, defect) pairs;
    the defect is the weighted sum of primitive normal vectors expressed
    in the quotient lattice by the ridge directions, which must vanish.
    """
    if x.is_zero or x.dim == 0:
        return True, []
    cells = _honest_refinement(x)
    ridges = {}
    for c, _ in cells:
        for f in c.facets():
            ridges.setdefault(f.key(), f)
    failures = []
    for ridge in ridges.values():
        qmat = quotient_matrix(ridge.direction_lattice())
        total = None
        for c, m in cells:
            if not c.contains_poly(ridge):
                continue
            g = _normal_in_quotient(qmat, c, ridge)
            term = tuple(m * a for a in g)
            total = term if total is None else tuple(s + t for s, t in zip(total, term))
        if total is not None and not vec_is_zero(total):
            failures.append((ridge, total))
    return not failures, failures


def balanced_cycle(ambient_dim, weighted_cells):
    """Constructor that insists on the balancing condition."""
    x = cycle(ambient_dim, weighted_cells)
    ok, failures = is_balanced(x)
    if not ok:
        raise ValidationError(f"cycle is not balanced at {len(failures)} ridge(s)")
    return x


def link_cycle(x: TropicalCycle, w):
    """Cone cycle of directions along which x is entered from w."""
    pairs = []
    for c, m in zip(x.cells, x.multiplicities):
        if c.contains(w):
            pairs.append((c.link_at(w), m))
    return cycle(x.ambient_dim, pairs)


def quotient_by_lineality(x: TropicalCycle, sub: LatticeSubgroup):
    """Image of x in the quotient of the ambient lattice by a saturated
    sublattice contained in every cell's lineality."""
    if x.is_zero:
        return zero_cycle(x.ambient_dim - sub.rank)
    qmat = quotient_matrix(sub)
    for c in x.cells:
        if not sub.is_subgroup_of(c.lineality_lattice()):
            raise ValidationError("sublattice is not in the lineality of every cell")
    pairs = [(c.image(qmat), m) for c, m in x.weighted_cells()]
    return cycle(x.ambient_dim - sub.rank, pairs)


def cartesian_product(x: TropicalCycle, y: TropicalCycle):
    if x.is_zero or y.is_zero:
        return zero_cycle(x.ambient_dim + y.ambient_dim)
    pairs = [
        (cx.times(cy), mx * my)
        for cx, mx in x.weighted_cells()
        for cy, my in y.weighted_cells()
    ]
    return cycle(x.ambient_dim + y.ambient_dim, pairs)


def pushforward(matrix, x: TropicalCycle):
    """Image cycle along an integer linear map, with fiber-count weights.

    The weight of an image facet piece is the sum over source facets
    covering it of the source weight times the index of the pushed
    direction lattice inside the piece's saturated direction lattice.
    Requires the drop in dimension to be accounted for by global
    lineality collapsing, so that generic fibers are translates of one
    linear space and the count is finite.
    """
    m = len(matrix)
    n = x.ambient_dim
    matrix = [tuple(row) for row in matrix]
    if any(len(row) != n for row in matrix):
        raise DimensionError("matrix shape does not match the ambient dimension")
    if any(not isinstance(a, int) and Fraction(a).denominator != 1 for row in matrix for a in row):
        raise ValidationError("pushforward requires an integer matrix")
    matrix = [tuple(int(a) for a in row) for row in matrix]
    if x.is_zero:
        return zero_cycle(m)
    images = [c.image(matrix) for c in x.cells]
    k_img = max(img.dim for img in images)
    ker = LatticeSubgroup.from_vectors(n, integer_kernel([tuple(row) for row in matrix]))
    lin_drop = intersect_lattices(x.lineality_lattice(), ker).rank
    if k_img != x.dim - lin_drop:
        raise ValidationError(
            "pushforward collapses a facet beyond the global lineality; "
            f"image dimension {k_img}, expected {x.dim - lin_drop}"
        )
    cand = []
    for img, mult, src in zip(images, x.multiplicities, x.cells):
        if img.dim == k_img:
            pushed = LatticeSubgroup.from_vectors(
                m, [mat_vec(matrix, g) for g in src.direction_lattice().generators]
            )
            cand.append((img, mult, pushed))
    pieces = refine_cells([img for img, _, _ in cand])
    acc = {}
    for idx, piece in pieces:
        _, mult, pushed = cand[idx]
        index = lattice_index(piece.direction_lattice(), pushed)
        if index is None:
            raise ValidationError("pushed lattice does not span the piece")
        k = piece.key()
        if k not in acc:
            acc[k] = [piece, Fraction(0)]
        acc[k][1] += mult * index
    return cycle(m, [(p, w) for p, w in acc.values() if w != 0])


@dataclass(frozen=True)
class GenericVector:
    """A displacement certified to avoid finitely many proper subspaces."""

    vector: tuple
    prime: int
    spans_avoided: int


def _primes():
    yield 2
    found = [2]
    q = 3
    while True:
        if all(q % p for p in found):
            found.append(q)
            yield q
        q += 2


def pick_generic_vector(ambient_dim, avoid: list) -> GenericVector:
    """Deterministic vector outside every given proper subspace.

    Candidates are the moment-curve vectors (1, p, p^2, ...) over
    increasing primes p; a fixed rational hyperplane contains at most
    ambient_dim - 1 of them, so the search terminates.
    """
    spans = []
    seen = set()
    for lat in avoid:
        if lat.rank >= ambient_dim:
            raise ValidationError("cannot avoid a full-dimensional subspace")
        if lat.generators not in seen:
            seen.add(lat.generators)
            spans.append(lat)
    budget = max(2, len(spans) * max(ambient_dim - 1, 1) + 1)
    gen = _primes()
    for _ in range(budget):
        p = next(gen)
        v = tuple(p**i for i in range(ambient_dim))
        if all(
            rank_rows(list(lat.generators) + [v]) == lat.rank + 1 for lat in spans
        ):
            return GenericVector(v, p, len(spans))
    raise GenericityError("exhausted the candidate prime budget")
