"""Volume and root-count experiments through stable self-intersection.

For a lattice polytope P in Q^n, the multiplicity at the origin of the
n-fold stable power of its tropical hypersurface is the lattice volume
of P (normalized so the unit simplex has volume one). Mixing different
polytopes computes mixed volumes, hence generic root counts of sparse
polynomial systems with those Newton polytopes.
"""

import argparse
import random
import time
from fractions import Fraction

from stabletrop.cycles import cycles_equal, scalar
from stabletrop.polytopes import (
    cube,
    mixed_volume,
    normalized_volume,
    polytope,
    standard_simplex,
    tropical_hypersurface,
)
from stabletrop.stable import stable_intersection


def random_lattice_polytope(rng, dim, max_coord, max_points):
    while True:
        count = rng.randint(dim + 1, max_points)
        pts = [tuple(rng.randint(0, max_coord) for _ in range(dim)) for _ in range(count)]
        p = polytope(dim, pts)
        if p.dim == dim:
            return p


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--trials", type=int, default=10)
    args = parser.parse_args()
    rng = random.Random(args.seed)

    print("anchors")
    print(f"  volume of the unit simplex:      {normalized_volume(standard_simplex(2))}")
    print(f"  volume of the unit square:       {normalized_volume(cube(2))}")
    print(f"  volume of the unit 3-cube:       {normalized_volume(cube(3))}")
    s = standard_simplex(2)
    print(f"  mixed volume MV(simplex, simplex): {mixed_volume([s, s])}")
    e1 = polytope(2, [(0, 0), (1, 0)])
    e2 = polytope(2, [(0, 0), (0, 1)])
    print(f"  mixed volume MV([0,e1], [0,e2]):   {mixed_volume([e1, e2])}")

    print()
    print(f"{args.trials} random planar pairs: Bernstein count and symmetry")
    t0 = time.time()
    for i in range(args.trials):
        p = random_lattice_polytope(rng, 2, 3, 5)
        q = random_lattice_polytope(rng, 2, 3, 5)
        mv = mixed_volume([p, q])
        assert mv == mixed_volume([q, p])
        # Minkowski additivity of the volume polynomial:
        # vol(P + Q) = vol(P) + 2 MV(P, Q) + vol(Q) in the plane
        lhs = normalized_volume(p.minkowski(q))
        rhs = normalized_volume(p) + 2 * mv + normalized_volume(q)
        assert lhs == rhs
        print(
            f"  pair {i}: vol(P)={normalized_volume(p)} vol(Q)={normalized_volume(q)}"
            f" MV={mv} vol(P+Q)={lhs}"
        )
    print(f"  all additivity identities exact ({time.time() - t0:.1f}s)")

    print()
    print("dilation scales intersections linearly in each factor")
    p = random_lattice_polytope(rng, 2, 2, 4)
    q = random_lattice_polytope(rng, 2, 2, 4)
    base = stable_intersection(tropical_hypersurface(p), tropical_hypersurface(q))
    for k in (2, 3):
        scaled = stable_intersection(
            tropical_hypersurface(p.dilate(k)), tropical_hypersurface(q)
        )
        assert cycles_equal(scaled, scalar(Fraction(k), base))
        print(f"  T({k}P) . T(Q) == {k} * (T(P) . T(Q))")


if __name__ == "__main__":
    main()
