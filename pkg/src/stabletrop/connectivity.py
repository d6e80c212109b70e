"""Connectivity of a cycle through codimension one.

Two facets count as adjacent when they meet in dimension one less than
the cycle. Presentations are refined to honest complexes first, so that
the answer is an invariant of the cycle and not of how it was entered.

The showcase scenario builds two three-dimensional cycles in Q^5 as
stable squares of hypersurfaces. Each is connected through codimension
one, yet their slices with a hyperplane meet only at the origin and the
sum of the slices is disconnected: connectedness does not survive stable
intersection, even against an invertible-weight hyperplane.
"""

from __future__ import annotations

from dataclasses import dataclass

from stabletrop.cycles import TropicalCycle, _honest_refinement, cycle, cycle_sum
from stabletrop.polyhedra import Polyhedron, refine_cells
from stabletrop.polytopes import RationalPolytope, polytope, standard_simplex, tropical_hypersurface
from stabletrop.stable import stable_intersection, stable_power


def facet_graph(x: TropicalCycle):
    """Honest refinement of x plus the adjacency lists of its facets.

    Over a genuine complex, two facets meet in dimension one less exactly
    when they share a ridge, so adjacency is read off ridge keys instead
    of all-pairs intersections.
    """
    if x.is_zero:
        return x, []
    refined = cycle(x.ambient_dim, _honest_refinement(x))
    cells = refined.cells
    ridge_members = {}
    for i, c in enumerate(cells):
        for f in c.facets():
            ridge_members.setdefault(f.key(), []).append(i)
    adj = [set() for _ in cells]
    for members in ridge_members.values():
        for a in members:
            for b in members:
                if a != b:
                    adj[a].add(b)
    return refined, [sorted(s) for s in adj]


def connected_components(x: TropicalCycle):
    """The cycle split along its facet graph; a zero cycle has none."""
    refined, adj = facet_graph(x)
    if refined.is_zero:
        return []
    seen = [False] * len(refined.cells)
    out = []
    for start in range(len(refined.cells)):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = []
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in adj[i]:
                if not seen[j]:
                    seen[j] = True
                    stack.append(j)
        out.append(
            cycle(
                x.ambient_dim,
                [(refined.cells[i], refined.multiplicities[i]) for i in comp],
            )
        )
    return out


def is_connected_through_codim1(x: TropicalCycle) -> bool:
    return len(connected_components(x)) <= 1


def support_contains(x: TropicalCycle, region: Polyhedron) -> bool:
    """Whether the region lies inside the support of x."""
    if region.is_empty:
        return True
    if x.is_zero:
        return False
    pieces = refine_cells([region] + list(x.cells))
    for idx, piece in pieces:
        if idx != 0:
            continue
        g = piece.interior_point()
        if not any(c.contains(g) for c in x.cells):
            return False
    return True


def supports_meet_only_at_origin(a: TropicalCycle, b: TropicalCycle) -> bool:
    """Whether every overlap of cells of a and b is exactly the origin."""
    n = a.ambient_dim
    origin = Polyhedron.point(tuple(0 for _ in range(n)))
    for ca in a.cells:
        for cb in b.cells:
            w = ca.intersect(cb)
            if w.is_empty:
                continue
            if w != origin:
                return False
    return True


@dataclass(frozen=True)
class DisconnectionScenario:
    """Two connected 3-cycles in Q^5 whose hyperplane slices are separated."""

    p1: RationalPolytope
    p2: RationalPolytope
    t1: TropicalCycle
    t2: TropicalCycle
    hyperplane: TropicalCycle
    slice1: TropicalCycle
    slice2: TropicalCycle
    union: TropicalCycle


def scenario_polytopes():
    p1 = standard_simplex(5)
    p2 = polytope(
        5,
        [
            (0, 0, 0, 0, 0),
            (1, 0, 0, 1, 0),
            (0, 1, 0, 0, 1),
            (0, 0, 2, 3, 0),
            (0, 0, 0, 4, 7),
            (0, 0, 6, 0, 1),
        ],
    )
    return p1, p2


def disconnection_scenario() -> DisconnectionScenario:
    p1, p2 = scenario_polytopes()
    t1 = stable_power(tropical_hypersurface(p1), 2)
    t2 = stable_power(tropical_hypersurface(p2), 2)
    h = cycle(
        5,
        [(Polyhedron.from_hrep(5, [], [((1, 1, 1, 1, 1), 0)], known_nonempty=True), 1)],
    )
    slice1 = stable_intersection(t1, h)
    slice2 = stable_intersection(t2, h)
    return DisconnectionScenario(
        p1, p2, t1, t2, h, slice1, slice2, cycle_sum(slice1, slice2)
    )
