"""Stable intersection of tropical cycles.

The primary engine evaluates the displacement definition directly: the
facets of X.Y are the expected-dimension intersections of cells whose
direction spans fill the ambient space, and the weight at a facet sums
m_sigma * m_tau * [Z^n : N_sigma + N_tau] over the cell pairs around it
whose links are met by a certified generic displacement vector.

Two independent routes exist for cross-validation: an explicit
perturbation (intersect X with Y shifted by eps * v, then let eps go to
zero through recession cones; exact for fan cycles) and the diagonal
route (intersect X x Y with the diagonal subspace of Q^2n and read the
result back through the first factor).

Cycles with negative weights are handled by the affine-span splitting:
X = (X + D) - D with D the sum of affine spans of the negative cells,
which has positive weights on both parts; the intersection distributes
bilinearly over the split.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from stabletrop.cycles import (
    GenericVector,
    TropicalCycle,
    _honest_refinement,
    ambient_cycle,
    cartesian_product,
    cycle,
    cycle_sum,
    pick_generic_vector,
    scalar,
    zero_cycle,
)
from stabletrop.errors import DimensionError, GenericityError, ValidationError
from stabletrop.lattices import (
    lattice_index,
    standard_lattice,
    sum_lattices,
)
from stabletrop.polyhedra import Polyhedron, point_in_sum


@dataclass(frozen=True)
class FacetContribution:
    """One cell pair's term in the weight of a result facet."""

    x_cell: int
    y_cell: int
    index: Fraction
    term: Fraction


@dataclass(frozen=True)
class IntersectionTerm:
    """Result of one positive-weight engine run, with provenance."""

    sign: int
    result: TropicalCycle
    generic: GenericVector | None
    contributions: tuple  # tuple of tuples of FacetContribution, parallel to result.cells


@dataclass(frozen=True)
class IntersectionReport:
    result: TropicalCycle
    terms: tuple


def _dedup_lattices(lats):
    seen = {}
    for lat in lats:
        seen[lat.generators] = lat
    return list(seen.values())


def _face_direction_lattices(cells):
    lats = []
    for c in cells:
        for f in c.all_faces():
            lats.append(f.direction_lattice())
    return _dedup_lattices(lats)


def displacement_vector(x: TropicalCycle, y: TropicalCycle) -> GenericVector:
    """Certified generic displacement for the pair (x, y): avoids the span
    of every deficient face pair, hence the codimension-one skeleton of
    the Minkowski differences of all links."""
    n = x.ambient_dim
    avoid = []
    for a in _face_direction_lattices(x.cells):
        for b in _face_direction_lattices(y.cells):
            s = sum_lattices(a, b)
            if s.rank < n:
                avoid.append(s)
    return pick_generic_vector(n, avoid)


def _spanning_pairs(x: TropicalCycle, y: TropicalCycle):
    n = x.ambient_dim
    out = []
    for i, (sx, mx) in enumerate(x.weighted_cells()):
        lx = sx.direction_lattice()
        for j, (sy, my) in enumerate(y.weighted_cells()):
            ly = sy.direction_lattice()
            if sum_lattices(lx, ly).rank == n:
                out.append((i, j))
    return out


def stable_support(x: TropicalCycle, y: TropicalCycle):
    """Cells sigma cap tau over direction-spanning cell pairs; their union
    is the support of the stable intersection."""
    cells = {}
    for i, j in _spanning_pairs(x, y):
        w = x.cells[i].intersect(y.cells[j])
        if not w.is_empty:
            cells[w.key()] = w
    return list(cells.values())


def _positive_engine(n, x: TropicalCycle, y: TropicalCycle, sign, refined=False):
    """Displacement-definition engine; weights of both inputs must be > 0."""
    k_res = x.dim + y.dim - n
    if k_res < 0:
        return IntersectionTerm(sign, zero_cycle(n), None, ())
    gen = displacement_vector(x, y)
    v = gen.vector
    pairs = _spanning_pairs(x, y)
    facets = {}
    for i, j in pairs:
        w = x.cells[i].intersect(y.cells[j])
        if not w.is_empty and w.dim == k_res:
            facets.setdefault(w.key(), w)
    weighted = []
    contribs = []
    amb = standard_lattice(n)
    for w in facets.values():
        gamma = w.interior_point()
        xin = {i for i, c in enumerate(x.cells) if c.contains(gamma)}
        yin = {j for j, c in enumerate(y.cells) if c.contains(gamma)}
        # the weight formula reads off cells through the witness point, which
        # is only unambiguous when each such cell carries the whole facet;
        # over non-complex presentations that can fail, so refine and rerun
        if any(not x.cells[i].contains_poly(w) for i in xin) or any(
            not y.cells[j].contains_poly(w) for j in yin
        ):
            if refined:
                raise GenericityError("facet witness is ambiguous after refinement")
            xr = cycle(n, _honest_refinement(x))
            yr = cycle(n, _honest_refinement(y))
            return _positive_engine(n, xr, yr, sign, refined=True)
        total = Fraction(0)
        rows = []
        for i, j in pairs:
            if i not in xin or j not in yin:
                continue
            sx, sy = x.cells[i], y.cells[j]
            cone_x = sx.link_at(gamma)
            cone_y = sy.link_at(gamma)
            if not point_in_sum([cone_x, cone_y], v, signs=[1, -1]):
                continue
            idx = lattice_index(
                amb, sum_lattices(sx.direction_lattice(), sy.direction_lattice())
            )
            term = x.multiplicities[i] * y.multiplicities[j] * idx
            total += term
            rows.append(FacetContribution(i, j, idx, term))
        if total != 0:
            weighted.append((w, total))
            contribs.append(tuple(rows))
    result = cycle(n, weighted)
    ordered = []
    for c in result.cells:
        k = c.key()
        pos = next(pi for pi, (w, _) in enumerate(weighted) if w.key() == k)
        ordered.append(contribs[pos])
    return IntersectionTerm(sign, result, gen, tuple(ordered))


def _affine_span_cycle(x: TropicalCycle):
    """Splitting of x into (positive part, subtracted part), both with
    positive weights: the subtracted part stacks the affine spans of the
    negatively weighted cells."""
    n = x.ambient_dim
    neg = []
    for c, m in x.weighted_cells():
        if m < 0:
            hull = Polyhedron.from_hrep(
                n, [], [(row[:n], row[n]) for row in c.eq_rows], known_nonempty=True
            )
            neg.append((hull, -m))
    if not neg:
        return x, zero_cycle(n)
    d = cycle(n, neg)
    plus = cycle_sum(x, d)
    return plus, d


def stable_intersection_report(x: TropicalCycle, y: TropicalCycle) -> IntersectionReport:
    if x.ambient_dim != y.ambient_dim:
        raise DimensionError("ambient dimensions differ")
    n = x.ambient_dim
    if x.is_zero or y.is_zero:
        return IntersectionReport(zero_cycle(n), ())
    if x.dim + y.dim < n:
        return IntersectionReport(zero_cycle(n), ())
    x_plus, x_minus = _affine_span_cycle(x)
    y_plus, y_minus = _affine_span_cycle(y)
    terms = []
    for xs, s1 in ((x_plus, 1), (x_minus, -1)):
        if xs.is_zero:
            continue
        for ys, s2 in ((y_plus, 1), (y_minus, -1)):
            if ys.is_zero:
                continue
            terms.append(_positive_engine(n, xs, ys, s1 * s2))
    total = zero_cycle(n)
    for t in terms:
        total = cycle_sum(total, scalar(t.sign, t.result))
    return IntersectionReport(total, tuple(terms))


def stable_intersection(x: TropicalCycle, y: TropicalCycle) -> TropicalCycle:
    return stable_intersection_report(x, y).result


def stable_power(x: TropicalCycle, k: int) -> TropicalCycle:
    """k-fold stable self-intersection; the empty product is Q^n with
    weight one."""
    if k < 0:
        raise ValidationError("negative stable power")
    acc = ambient_cycle(x.ambient_dim)
    for _ in range(k):
        acc = stable_intersection(acc, x)
    return acc


# ------------------------------------------------------------ diagonal route


def diagonal_cycle(n) -> TropicalCycle:
    """The diagonal subspace {(u, u)} of Q^(2n) with weight one."""
    gens = [tuple(1 if j == i or j == i + n else 0 for j in range(2 * n)) for i in range(n)]
    cell = Polyhedron.from_vrep(2 * n, [tuple(0 for _ in range(2 * n))], lin=gens)
    return cycle(2 * n, [(cell, 1)])


def diagonal_intersection(x: TropicalCycle, y: TropicalCycle) -> TropicalCycle:
    """Stable intersection computed as (X x Y) . diagonal, read back
    through the first factor; the diagonal lattice maps to Z^n
    unimodularly, so weights carry over unchanged."""
    if x.ambient_dim != y.ambient_dim:
        raise DimensionError("ambient dimensions differ")
    n = x.ambient_dim
    if x.is_zero or y.is_zero:
        return zero_cycle(n)
    prod = cartesian_product(x, y)
    z = stable_intersection(prod, diagonal_cycle(n))
    proj = [tuple(1 if j == i else 0 for j in range(2 * n)) for i in range(n)]
    return cycle(n, [(c.image(proj), m) for c, m in z.weighted_cells()])


# -------------------------------------------------------- perturbation route


@dataclass(frozen=True)
class PerturbationResult:
    transverse: TropicalCycle
    limit: TropicalCycle
    vector: GenericVector
    eps: Fraction


def _require_fan(x: TropicalCycle, label):
    for c in x.cells:
        if not c.is_cone:
            raise ValidationError(f"perturbation route requires fan cycles; {label} is not a fan")


def _transverse_pieces(x, y, v, eps):
    n = x.ambient_dim
    k_res = x.dim + y.dim - n
    shift = tuple(eps * a for a in v)
    pieces = []
    for i, j in _spanning_pairs(x, y):
        sx, sy = x.cells[i], y.cells[j]
        w = sx.intersect(sy.translate(shift))
        if w.is_empty:
            continue
        if w.dim != k_res:
            raise GenericityError("perturbed intersection has wrong dimension")
        inner = w.interior_point()
        if not (sx.relint_contains(inner) and sy.translate(shift).relint_contains(inner)):
            raise GenericityError("perturbed intersection is not transverse")
        pieces.append((i, j, w))
    return pieces


def perturbation_intersection(
    x: TropicalCycle, y: TropicalCycle, vector=None, eps=Fraction(1)
) -> PerturbationResult:
    """Exact perturbation engine for fan cycles.

    Intersects x with y translated by eps * v for a certified generic v.
    For cones the intersection pattern is independent of eps > 0 (checked
    by recomputing at eps / 2), and the limit cycle collects recession
    cones of the transverse pieces. The limit must coincide with the
    stable intersection; the transverse cycle is the displaced witness.
    """
    if x.ambient_dim != y.ambient_dim:
        raise DimensionError("ambient dimensions differ")
    n = x.ambient_dim
    eps = Fraction(eps)
    if eps <= 0:
        raise ValidationError("eps must be positive")
    if x.is_zero or y.is_zero or x.dim + y.dim < n:
        raise ValidationError("perturbation route needs expected dimension >= 0")
    _require_fan(x, "first input")
    _require_fan(y, "second input")
    for m in x.multiplicities + y.multiplicities:
        if m < 0:
            raise ValidationError("perturbation route requires positive weights")
    gen = displacement_vector(x, y) if vector is None else vector
    v = gen.vector if isinstance(gen, GenericVector) else tuple(gen)
    if not isinstance(gen, GenericVector):
        gen = GenericVector(v, 0, 0)
    k_res = x.dim + y.dim - n
    pieces = _transverse_pieces(x, y, v, eps)
    half = _transverse_pieces(x, y, v, eps / 2)
    sig = sorted((i, j, w.recession().key()) for i, j, w in pieces)
    sig_half = sorted((i, j, w.recession().key()) for i, j, w in half)
    if sig != sig_half:
        raise GenericityError("intersection pattern changed under eps halving")
    amb = standard_lattice(n)
    weighted = []
    rec_acc = {}
    for i, j, w in pieces:
        idx = lattice_index(
            amb,
            sum_lattices(x.cells[i].direction_lattice(), y.cells[j].direction_lattice()),
        )
        term = x.multiplicities[i] * y.multiplicities[j] * idx
        weighted.append((w, term))
        rec = w.recession()
        if rec.dim == k_res:
            k = rec.key()
            if k not in rec_acc:
                rec_acc[k] = [rec, Fraction(0)]
            rec_acc[k][1] += term
    transverse = cycle(n, weighted)
    limit = cycle(n, [(c, m) for c, m in rec_acc.values() if m != 0])
    return PerturbationResult(transverse, limit, gen, eps)
