"""
Closed-Form Orbit Sizes

Orbit-size formulas for Theta on forests (through chi of the coin's
component) and on cycles with an even number of refraction edges
(through the a-sequence statistics p, m and mu).
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, NamedTuple, Sequence, Tuple

import networkx as nx

from .constants import EdgeMaterial
from .dynamics import State, coin_position, omega_normalize
from .exceptions import (
    InternalMismatch,
    NoClosedForm,
    NotACycle,
    NotAForest,
    NotATreeEdge,
)
from .graph_core import (
    BilliardsGraph,
    Labeling,
    chi,
    connected_component_of,
    sign_partition,
)

logger = logging.getLogger(__name__)


# =============================================================================
# Forests
# =============================================================================


def forest_orbit_size(g: BilliardsGraph, s: State) -> int:
    """
    |V_T| n (n-1) / gcd(n, chi(T)) for T the component holding the coin.

    Raises:
        NotAForest: If g contains a cycle
    """
    if not g.is_forest():
        raise NotAForest("forest formula needs an acyclic graph")
    n = g.n
    component = connected_component_of(g, coin_position(s))
    return len(component) * n * (n - 1) // math.gcd(n, chi(g, component))


def tree_orbit_size(g: BilliardsGraph) -> int:
    """Common size n^2 (n-1) / gcd(n, chi(G)) of every orbit on a tree."""
    if not nx.is_tree(g.nx_graph):
        raise NotAForest("graph is not a tree")
    n = g.n
    return n * n * (n - 1) // math.gcd(n, chi(g, range(1, n + 1)))


def subtree_size(g: BilliardsGraph, l: int, lp: int) -> int:
    """
    Number of vertices on the l side of the tree edge {l, lp}.

    Raises:
        NotATreeEdge: If {l, lp} is not an edge of a tree component
    """
    if g.material(l, lp) is None:
        raise NotATreeEdge(f"{{{l}, {lp}}} is not an edge")
    component = connected_component_of(g, l)
    tree = g.nx_graph.subgraph(component).copy()
    if not nx.is_tree(tree):
        raise NotATreeEdge(f"component of vertex {l} is not a tree")
    tree.remove_edge(l, lp)
    return len(nx.node_connected_component(tree, l))


# =============================================================================
# Cycles
# =============================================================================


class CycleOrdering(NamedTuple):
    """Canonical walk v_1..v_n around a cycle graph

    materials[k] is the material of the edge {v_k+1, v_k+2} (0-based k),
    the last entry being the edge {v_n, v_1}.
    """

    vertices: Tuple[int, ...]
    materials: Tuple[EdgeMaterial, ...]

    def relabeled(
        self, g: BilliardsGraph, sigma: Labeling
    ) -> Tuple[BilliardsGraph, Labeling]:
        """Rename v_k to k; returns the renamed graph and labeling."""
        graph = BilliardsGraph.cycle(self.materials)
        labels = tuple(sigma.of(v) for v in self.vertices)
        return graph, Labeling(labels)


def canonicalize_cycle(g: BilliardsGraph, sigma: Labeling) -> CycleOrdering:
    """
    Order the cycle so that sigma(v_n) = 1 and sigma(v_1) < sigma(v_n-1).

    Raises:
        NotACycle: If g is not a single n-cycle
    """
    if not g.is_cycle():
        raise NotACycle("graph is not a single cycle through all vertices")

    graph = g.nx_graph
    last = sigma.vertex_of(1)
    first, _ = sorted(graph.neighbors(last), key=sigma.of)

    order = [first]
    previous, current = last, first
    while len(order) < g.n - 1:
        step = next(v for v in graph.neighbors(current) if v != previous)
        order.append(step)
        previous, current = current, step
    order.append(last)

    materials = tuple(
        g.material(order[k], order[(k + 1) % g.n]) for k in range(g.n)
    )
    return CycleOrdering(tuple(order), materials)


def cycle_a_sequence(
    ordering: CycleOrdering, sigma: Labeling
) -> Tuple[int, ...]:
    """
    The gap sequence (a_0, ..., a_{n-2}).

    a_k = ((sigma(v_k+1) - sigma(v_k)) mod n) - [label 1 strictly inside
    the clockwise walk], with a_0 taken along v_{n-1} -> v_1.
    """
    vertices = ordering.vertices
    n = len(vertices)
    labels = [sigma.of(v) for v in vertices]

    def gap(start: int, end: int) -> int:
        distance = (end - start) % n
        passes_one = (1 - start) % n < distance
        return distance - (1 if passes_one else 0)

    a = [gap(labels[n - 2], labels[0])]
    a.extend(gap(labels[k - 1], labels[k]) for k in range(1, n - 1))
    return tuple(a)


def replica_walk_a_sequence(
    ordering: CycleOrdering, sigma: Labeling
) -> Tuple[int, ...]:
    """Gap sequence by literally walking Cycle_n and counting replicas."""
    vertices = ordering.vertices
    n = len(vertices)
    v_last = vertices[-1]

    def walk(source: int, target: int) -> int:
        position = sigma.of(source)
        seen = 0
        while True:
            position = position % n + 1
            replica = sigma.vertex_of(position)
            if replica == target:
                return seen + 1
            if replica != v_last:
                seen += 1

    a = [walk(vertices[n - 2], vertices[0])]
    a.extend(walk(vertices[k - 1], vertices[k]) for k in range(1, n - 1))
    return tuple(a)


def least_period(sequence: Sequence[int]) -> int:
    """Least d dividing len(sequence) with sequence cyclically d-periodic."""
    length = len(sequence)
    for d in range(1, length + 1):
        if length % d:
            continue
        if all(
            sequence[j] == sequence[(j + d) % length] for j in range(length)
        ):
            return d
    return length


@dataclass(frozen=True)
class CycleInvariants:
    """Statistics of a labeling of an even-refraction cycle"""

    a: Tuple[int, ...]
    p: int
    m: int
    mu: int
    ordering: CycleOrdering

    def to_dict(self) -> Dict[str, Any]:
        return {"a": list(self.a), "p": self.p, "m": self.m, "mu": self.mu}


def cycle_invariants(g: BilliardsGraph, sigma: Labeling) -> CycleInvariants:
    """
    Compute a, p, m and mu for sigma on a cycle graph.

    mu is |Y_1| for the sign partition anchored at v_n.

    Raises:
        NotACycle: If g is not a single cycle
        OddRefractionCycle: If the cycle has an odd number of
            refraction edges
    """
    ordering = canonicalize_cycle(g, sigma)
    n = g.n
    # Fail on odd refraction counts before doing any arithmetic
    partition = sign_partition(g, ordering.vertices, ordering.vertices[-1])

    a = cycle_a_sequence(ordering, sigma)
    total = sum(a)
    if total % (n - 1):
        raise InternalMismatch(
            "gap sequence sum is not a multiple of n-1",
            context={"a": list(a), "n": n},
        )
    return CycleInvariants(
        a=a,
        p=least_period(a),
        m=total // (n - 1),
        mu=len(partition.plus),
        ordering=ordering,
    )


def cycle_orbit_size(g: BilliardsGraph, sigma: Labeling) -> int:
    """
    Size of the orbit of (sigma, 1, 1):
    (n p / gcd(n, mu)) * (mu m + (n - mu)(n - 1 - m)).
    """
    inv = cycle_invariants(g, sigma)
    n = g.n
    return (n * inv.p // math.gcd(n, inv.mu)) * (
        inv.mu * inv.m + (n - inv.mu) * (n - 1 - inv.m)
    )


class Prediction(NamedTuple):
    size: int
    method: str

    def to_dict(self) -> Dict[str, Any]:
        return {"size": self.size, "method": self.method}


def predict_orbit_size(g: BilliardsGraph, s: State) -> Prediction:
    """
    Closed-form orbit size of any state.

    Forests use the forest formula; cycles are first normalized to
    (sigma', 1, 1) by omega.

    Raises:
        NoClosedForm: If g is neither a forest nor a cycle
    """
    if g.is_forest():
        return Prediction(forest_orbit_size(g, s), "forest")
    if g.is_cycle():
        normalized = omega_normalize(s)
        return Prediction(cycle_orbit_size(g, normalized.sigma), "cycle")
    raise NoClosedForm(
        "no closed form for this graph; use brute-force enumeration"
    )

