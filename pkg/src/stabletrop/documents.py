"""JSON interchange documents for fan cycles, polytopes, and integer maps.

Numbers cross the process boundary as JSON integers or exact "p/q"
strings; floats are rejected outright. Serialization is canonical, so
identical objects always produce byte-identical text, and parsing a
serialized document returns an equal object.

A cycle document describes a weighted fan: a shared lineality space,
a pool of primitive rays, and cones given as ray-index sets. Cells with
lineality beyond the shared space are written with opposite ray pairs,
which span the same cone.
"""

from __future__ import annotations

import json
from fractions import Fraction

from stabletrop.cycles import TropicalCycle, cycle, zero_cycle
from stabletrop.errors import ParseError, ValidationError
from stabletrop.lattices import rank_rows, rational_to_primitive
from stabletrop.polyhedra import Polyhedron
from stabletrop.polytopes import RationalPolytope, polytope

CYCLE_KEYS = {"ambient_dim", "rays", "lineality", "cones"}
POLYTOPE_KEYS = {"ambient_dim", "vertices"}
MATRIX_KEYS = {"rows"}


def _reject_float(text):
    raise ParseError(f"floating point literal {text!r}; use integers or 'p/q' strings")


def loads(text: str) -> dict:
    """Parse JSON text, rejecting floats; returns the raw object."""
    try:
        return json.loads(text, parse_float=_reject_float, parse_constant=_reject_float)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None


def dumps(doc) -> str:
    """Canonical text form: sorted keys, two-space indent, final newline."""
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _expect(cond: bool, message: str):
    if not cond:
        raise ParseError(message)


def _plain_int(a) -> bool:
    return isinstance(a, int) and not isinstance(a, bool)


def _int_vector(v, n: int, what: str):
    _expect(isinstance(v, list) and len(v) == n, f"{what} must be an array of {n} integers")
    _expect(all(_plain_int(a) for a in v), f"{what} entries must be integers")
    return tuple(v)


def _rational(value, what: str) -> Fraction:
    if _plain_int(value):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"{what} is not a valid 'p/q' string: {value!r}") from None
    raise ParseError(f"{what} must be an integer or a 'p/q' string")


def _ambient_dim(doc, what: str) -> int:
    n = doc.get("ambient_dim")
    _expect(_plain_int(n) and n >= 1, f"{what} needs a positive integer ambient_dim")
    return n


def _check_keys(doc, allowed, what: str):
    _expect(isinstance(doc, dict), f"{what} must be a JSON object")
    extra = set(doc) - allowed
    _expect(not extra, f"unknown {what} keys: {sorted(extra)}")


# ------------------------------------------------------------- cycles


def document_to_cycle(doc) -> TropicalCycle:
    _check_keys(doc, CYCLE_KEYS, "cycle document")
    n = _ambient_dim(doc, "cycle document")
    raw_rays = doc.get("rays", [])
    _expect(isinstance(raw_rays, list), "rays must be an array")
    rays = [_int_vector(v, n, "ray") for v in raw_rays]
    for r in rays:
        _expect(any(r), "rays must be nonzero")
        _expect(r == rational_to_primitive(r), f"ray {list(r)} is not primitive")
    _expect(len(set(rays)) == len(rays), "rays must be distinct")
    raw_lin = doc.get("lineality", [])
    _expect(isinstance(raw_lin, list), "lineality must be an array")
    lin = [_int_vector(v, n, "lineality vector") for v in raw_lin]
    for v in lin:
        _expect(any(v), "lineality vectors must be nonzero")
    raw_cones = doc.get("cones", [])
    _expect(isinstance(raw_cones, list), "cones must be an array")
    pairs = []
    seen = set()
    for entry in raw_cones:
        _check_keys(entry, {"rays", "mult"}, "cone entry")
        idx = entry.get("rays")
        _expect(isinstance(idx, list) and all(_plain_int(i) for i in idx), "cone rays must be an array of ray indices")
        _expect(all(0 <= i < len(rays) for i in idx), "cone ray index out of range")
        _expect(len(set(idx)) == len(idx), "cone ray indices must be distinct")
        key = tuple(sorted(idx))
        _expect(key not in seen, f"duplicate cone {list(key)}")
        seen.add(key)
        mult = _rational(entry.get("mult"), "cone multiplicity")
        _expect(mult != 0, "cone multiplicities must be nonzero")
        cell = Polyhedron.cone_from_rays(n, [rays[i] for i in key], lin=lin)
        pairs.append((cell, mult))
    if not pairs:
        return zero_cycle(n)
    try:
        return cycle(n, pairs)
    except ValidationError as exc:
        raise ParseError(f"cycle document is not a weighted fan: {exc}") from None


def cycle_to_document(x: TropicalCycle) -> dict:
    """Canonical document of a fan cycle.

    The document's lineality is the common lineality of all cells in
    Hermite form; per-cell lineality beyond it becomes opposite ray
    pairs. Rays are the primitive extreme rays, sorted; cones are sorted
    by their ray-index sets.
    """
    n = x.ambient_dim
    for c in x.cells:
        if not c.is_cone:
            raise ValidationError("only fan cycles have a document form")
    if x.is_zero:
        return {"ambient_dim": n, "rays": [], "lineality": [], "cones": []}
    common = x.lineality_lattice()
    base = [tuple(g) for g in common.generators]
    cone_rays = []
    for c in x.cells:
        _, cell_rays, cell_lin = c.vrep()
        gens = {rational_to_primitive(r) for r in cell_rays}
        rows = list(base)
        for v in cell_lin:
            if rank_rows(rows + [tuple(v)]) > len(rows):
                u = rational_to_primitive(v)
                rows.append(u)
                gens.add(u)
                gens.add(tuple(-a for a in u))
        cone_rays.append(sorted(gens))
    all_rays = sorted({r for gens in cone_rays for r in gens})
    position = {r: i for i, r in enumerate(all_rays)}
    cones = sorted(
        (
            ([position[r] for r in gens], str(Fraction(m)))
            for gens, m in zip(cone_rays, x.multiplicities)
        ),
    )
    return {
        "ambient_dim": n,
        "rays": [list(r) for r in all_rays],
        "lineality": [list(g) for g in common.generators],
        "cones": [{"rays": idx, "mult": m} for idx, m in cones],
    }


# ----------------------------------------------------------- polytopes


def document_to_polytope(doc) -> RationalPolytope:
    _check_keys(doc, POLYTOPE_KEYS, "polytope document")
    n = _ambient_dim(doc, "polytope document")
    raw = doc.get("vertices")
    _expect(isinstance(raw, list) and raw, "polytope document needs a nonempty vertices array")
    points = []
    for v in raw:
        _expect(isinstance(v, list) and len(v) == n, f"each vertex must be an array of {n} coordinates")
        points.append(tuple(_rational(a, "vertex coordinate") for a in v))
    return polytope(n, points)


def polytope_to_document(p: RationalPolytope) -> dict:
    return {
        "ambient_dim": p.ambient_dim,
        "vertices": [[str(a) for a in v] for v in sorted(p.vertices)],
    }


# ------------------------------------------------------------ matrices


def document_to_matrix(doc):
    """Integer matrix rows, the map's images of the coordinate basis."""
    _check_keys(doc, MATRIX_KEYS, "matrix document")
    raw = doc.get("rows")
    _expect(isinstance(raw, list) and raw, "matrix document needs a nonempty rows array")
    width = None
    rows = []
    for r in raw:
        _expect(isinstance(r, list) and r, "matrix rows must be nonempty arrays")
        if width is None:
            width = len(r)
        _expect(len(r) == width, "matrix rows must all have the same length")
        _expect(all(_plain_int(a) for a in r), "matrix entries must be integers")
        rows.append(tuple(r))
    return tuple(rows)


def matrix_to_document(rows) -> dict:
    return {"rows": [list(r) for r in rows]}
