"""Run the five-dimensional disconnection experiment and report timings.

Two polytopes in Q^5 give tropical hypersurfaces whose stable squares
are three-dimensional cycles, each connected through codimension one.
Slicing both with the coordinate-sum hyperplane produces balanced
two-dimensional cycles that meet only at the origin, so their sum is
disconnected: stable intersection does not preserve connectivity, even
against a hyperplane with unit weight.

Takes a few minutes; all arithmetic is exact.
"""

import argparse
import time

from stabletrop.connectivity import (
    connected_components,
    disconnection_scenario,
    is_connected_through_codim1,
    supports_meet_only_at_origin,
)
from stabletrop.cycles import is_balanced
from stabletrop.polyhedra import Polyhedron


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--skip-support-checks",
        action="store_true",
        help="skip the (slow) proof that both squares contain a shared cone",
    )
    args = parser.parse_args()

    start = time.time()

    def mark(label, value):
        print(f"[{time.time() - start:7.1f}s] {label}: {value}")

    sc = disconnection_scenario()
    mark("scenario built, cells per square", (len(sc.t1.cells), len(sc.t2.cells)))
    mark("square dimensions", (sc.t1.dim, sc.t2.dim))
    mark("slice cell counts", (len(sc.slice1.cells), len(sc.slice2.cells)))
    mark("slice 1 balanced", is_balanced(sc.slice1)[0])
    mark("slice 2 balanced", is_balanced(sc.slice2)[0])
    mark("square 1 connected through codim 1", is_connected_through_codim1(sc.t1))
    mark("square 2 connected through codim 1", is_connected_through_codim1(sc.t2))

    if not args.skip_support_checks:
        from stabletrop.connectivity import support_contains

        shared = Polyhedron.cone_from_rays(5, [(1, 0, 0, 0, 0), (0, 1, 0, 0, 0)])
        mark("square 1 support contains cone(e1, e2)", support_contains(sc.t1, shared))
        mark("square 2 support contains cone(e1, e2)", support_contains(sc.t2, shared))

    mark(
        "slice supports meet only at the origin",
        supports_meet_only_at_origin(sc.slice1, sc.slice2),
    )
    comps = connected_components(sc.union)
    mark("components of the slice sum", len(comps))
    mark("component cell counts", [len(c.cells) for c in comps])
    print()
    verdict = "DISCONNECTED" if len(comps) > 1 else "connected"
    print(f"sum of the two slices is {verdict} through codimension one")


if __name__ == "__main__":
    main()
