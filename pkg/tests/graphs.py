"""
Shared graphs and states for tests

Small billiards graphs with known orbit data, shared by the test
modules.
"""

from toric_billiards.constants import EdgeMaterial
from toric_billiards.dynamics import State
from toric_billiards.graph_core import BilliardsGraph, Labeling

REFLECT = EdgeMaterial.REFLECT
REFRACT = EdgeMaterial.REFRACT


def path_graph_n3() -> BilliardsGraph:
    """Path 1-2-3, reflect {1,2}, refract {2,3}; two orbits of size 18."""
    return BilliardsGraph.from_edges(3, [(1, 2, REFLECT), (2, 3, REFRACT)])


def leaf_tree_n5() -> BilliardsGraph:
    """Tree on 5 vertices whose only reflection edge is {2,3}."""
    return BilliardsGraph.from_edges(
        5,
        [
            (1, 2, REFRACT),
            (2, 3, REFLECT),
            (2, 5, REFRACT),
            (3, 4, REFRACT),
        ],
    )


def leaf_tree_start() -> State:
    """Identity labeling at (1, +1): the coin leaves v1 for v2 at time 0."""
    return State.of([1, 2, 3, 4, 5], 1, 1)


def seven_cycle() -> BilliardsGraph:
    """7-cycle v1..v7 with four refraction edges."""
    return BilliardsGraph.cycle(
        [REFRACT, REFLECT, REFLECT, REFRACT, REFLECT, REFRACT, REFRACT]
    )


def seven_cycle_labeling() -> Labeling:
    """Labeling with gap sequence (4,1,4,4,1,4) and orbit size 441."""
    return Labeling((5, 6, 4, 2, 3, 7, 1))


def edgeless(n: int) -> BilliardsGraph:
    return BilliardsGraph.empty(n)


def mixed_five_cycle() -> BilliardsGraph:
    """5-cycle v1..v5 with refraction edges {1,2} and {3,4}."""
    return BilliardsGraph.cycle([REFRACT, REFLECT, REFRACT, REFLECT, REFLECT])
