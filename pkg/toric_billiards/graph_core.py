"""
Billiards Graphs

Simple graphs on vertices 1..n whose edges are tagged reflect or refract,
bijective labelings of their vertices, connected components and the sign
partitions behind the statistics chi and mu.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import (
    Any,
    Dict,
    FrozenSet,
    Iterable,
    List,
    Optional,
    Sequence,
    Tuple,
)

import networkx as nx
import numpy as np

from .constants import MATERIAL_CODES, EdgeMaterial
from .exceptions import (
    GraphValidationError,
    LabelingError,
    OddRefractionCycle,
    ValidationError,
)
from .validation import validate_graph_payload, validate_labels

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


def wrap(x: int, n: int) -> int:
    """Reduce an integer into the representatives 1..n of Z/nZ."""
    return (x - 1) % n + 1


def _pair(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


# =============================================================================
# Graphs
# =============================================================================


@dataclass(frozen=True)
class BilliardsGraph:
    """A simple graph on 1..n with E = E_reflect ⊔ E_refract"""

    n: int
    reflect: FrozenSet[Edge] = frozenset()
    refract: FrozenSet[Edge] = frozenset()

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[Tuple[int, int, Any]]
    ) -> "BilliardsGraph":
        """
        Build a validated graph from (u, v, material) triples.

        Args:
            n: Vertex count
            edges: Triples whose material is an EdgeMaterial or its name

        Returns:
            BilliardsGraph
        """
        return validate_graph(
            {"n": n, "edges": [list(e) for e in edges]}
        )

    @classmethod
    def empty(cls, n: int) -> "BilliardsGraph":
        return validate_graph({"n": n, "edges": []})

    @classmethod
    def path(
        cls, materials: Sequence[Any], order: Optional[Sequence[int]] = None
    ) -> "BilliardsGraph":
        """
        Path graph with len(materials) + 1 vertices.

        Args:
            materials: Material of each consecutive edge along the path
            order: Vertex order along the path (default 1..n)
        """
        n = len(materials) + 1
        order = list(order) if order else list(range(1, n + 1))
        edges = [
            (order[k], order[k + 1], m) for k, m in enumerate(materials)
        ]
        return cls.from_edges(n, edges)

    @classmethod
    def cycle(
        cls, materials: Sequence[Any], order: Optional[Sequence[int]] = None
    ) -> "BilliardsGraph":
        """
        Cycle graph with len(materials) vertices.

        materials[k] is the material of the edge from order[k] to
        order[k + 1], wrapping at the end.
        """
        n = len(materials)
        order = list(order) if order else list(range(1, n + 1))
        edges = [
            (order[k], order[(k + 1) % n], m) for k, m in enumerate(materials)
        ]
        return cls.from_edges(n, edges)

    @classmethod
    def star(cls, n: int, refract_count: int) -> "BilliardsGraph":
        """Star centred at vertex 1; the first refract_count spokes refract."""
        edges = [
            (
                1,
                leaf,
                EdgeMaterial.REFRACT
                if leaf - 2 < refract_count
                else EdgeMaterial.REFLECT,
            )
            for leaf in range(2, n + 1)
        ]
        return cls.from_edges(n, edges)

    @property
    def edges(self) -> List[Edge]:
        return sorted(self.reflect | self.refract)

    def material(self, a: int, b: int) -> Optional[EdgeMaterial]:
        """Material of the edge {a, b}, or None if it is not an edge."""
        pair = _pair(a, b)
        if pair in self.reflect:
            return EdgeMaterial.REFLECT
        if pair in self.refract:
            return EdgeMaterial.REFRACT
        return None

    def tagged_edges(self) -> List[Tuple[int, int, EdgeMaterial]]:
        return [(a, b, self.material(a, b)) for a, b in self.edges]

    @cached_property
    def nx_graph(self) -> nx.Graph:
        """networkx view with a 'material' attribute on every edge"""
        graph = nx.Graph()
        graph.add_nodes_from(range(1, self.n + 1))
        for a, b, material in self.tagged_edges():
            graph.add_edge(a, b, material=material)
        return graph

    @cached_property
    def material_matrix(self) -> np.ndarray:
        """(n+1)x(n+1) int8 matrix: 0 no edge, 1 reflect, 2 refract"""
        matrix = np.zeros((self.n + 1, self.n + 1), dtype=np.int8)
        for a, b, material in self.tagged_edges():
            code = MATERIAL_CODES[material]
            matrix[a, b] = code
            matrix[b, a] = code
        return matrix

    def is_forest(self) -> bool:
        return nx.is_forest(self.nx_graph)

    def is_cycle(self) -> bool:
        """True when the graph is a single cycle through all n vertices."""
        graph = self.nx_graph
        return (
            graph.number_of_edges() == self.n
            and all(degree == 2 for _, degree in graph.degree())
            and nx.is_connected(graph)
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "edges": [
                {"u": a, "v": b, "kind": material.value}
                for a, b, material in self.tagged_edges()
            ],
        }


def validate_graph(raw: Dict[str, Any]) -> BilliardsGraph:
    """
    Validate a raw graph description and build a BilliardsGraph.

    Args:
        raw: ``{"n": int, "edges": [...]}`` as accepted by
            validation.validate_graph_payload

    Returns:
        BilliardsGraph with every edge normalized to a < b

    Raises:
        GraphValidationError: On n < 3, loops, duplicates, out-of-range
            vertices or missing/unknown material tags
    """
    result = validate_graph_payload(raw)
    if not result.valid:
        raise GraphValidationError(result.error, field=result.field)

    reflect, refract = set(), set()
    for edge in raw.get("edges", []):
        if isinstance(edge, dict):
            u, v, kind = edge["u"], edge["v"], edge["kind"]
        else:
            u, v, kind = edge
        target = (
            reflect
            if EdgeMaterial.normalize(kind) is EdgeMaterial.REFLECT
            else refract
        )
        target.add(_pair(u, v))

    graph = BilliardsGraph(raw["n"], frozenset(reflect), frozenset(refract))
    logger.debug(
        "Graph n=%d with %d reflect and %d refract edges",
        graph.n,
        len(reflect),
        len(refract),
    )
    return graph


# =============================================================================
# Labelings
# =============================================================================


@dataclass(frozen=True)
class Labeling:
    """Bijection sigma from vertices 1..n to labels 1..n

    labels[v-1] is sigma(v); inverse[l-1] is the vertex labeled l.
    """

    labels: Tuple[int, ...]
    inverse: Tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        labels = tuple(self.labels)
        result = validate_labels(labels)
        if not result.valid:
            raise LabelingError(result.error, field=result.field)
        inverse = [0] * len(labels)
        for vertex, label in enumerate(labels, start=1):
            inverse[label - 1] = vertex
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "inverse", tuple(inverse))

    @classmethod
    def _trusted(
        cls, labels: Tuple[int, ...], inverse: Tuple[int, ...]
    ) -> "Labeling":
        # Skips validation for labelings derived from valid ones
        obj = cls.__new__(cls)
        object.__setattr__(obj, "labels", labels)
        object.__setattr__(obj, "inverse", inverse)
        return obj

    @classmethod
    def identity(cls, n: int) -> "Labeling":
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.labels)

    def of(self, vertex: int) -> int:
        return self.labels[vertex - 1]

    def vertex_of(self, label: int) -> int:
        return self.inverse[label - 1]

    def swap_values(self, a: int, b: int) -> "Labeling":
        """Exchange the labels a and b (post-compose with a transposition)."""
        va, vb = self.inverse[a - 1], self.inverse[b - 1]
        labels = list(self.labels)
        inverse = list(self.inverse)
        labels[va - 1], labels[vb - 1] = b, a
        inverse[a - 1], inverse[b - 1] = vb, va
        return Labeling._trusted(tuple(labels), tuple(inverse))

    def compose_values(self, omega: Sequence[int]) -> "Labeling":
        """Apply omega to every label: v -> omega[sigma(v)-1]."""
        return Labeling(tuple(omega[label - 1] for label in self.labels))

    def shift(self, k: int) -> "Labeling":
        """Add k to every label modulo n."""
        n = self.n
        labels = tuple(wrap(label + k, n) for label in self.labels)
        inverse = tuple(
            self.inverse[wrap(label - k, n) - 1] for label in range(1, n + 1)
        )
        return Labeling._trusted(labels, inverse)

    def to_dict(self) -> Dict[str, Any]:
        return {"labels": list(self.labels)}


# =============================================================================
# Components and sign partitions
# =============================================================================


@dataclass(frozen=True)
class SignPartition:
    """Two-colouring where refraction edges cross and reflection edges stay"""

    plus: FrozenSet[int]
    minus: FrozenSet[int]

    def side_of(self, vertex: int) -> int:
        if vertex in self.plus:
            return 1
        if vertex in self.minus:
            return -1
        raise ValidationError(
            "vertex not in partition", field="vertex", value=vertex
        )

    def swapped(self) -> "SignPartition":
        return SignPartition(self.minus, self.plus)

    @property
    def imbalance(self) -> int:
        """|plus| - |minus| (signed)"""
        return len(self.plus) - len(self.minus)

    def to_dict(self) -> Dict[str, List[int]]:
        return {"plus": sorted(self.plus), "minus": sorted(self.minus)}


def connected_component_of(g: BilliardsGraph, v: int) -> FrozenSet[int]:
    """Vertex set of the connected component containing v."""
    if not 1 <= v <= g.n:
        raise ValidationError(f"vertex out of range 1..{g.n}", "v", v)
    return frozenset(nx.node_connected_component(g.nx_graph, v))


def sign_partition(
    g: BilliardsGraph, component: Iterable[int], anchor: int
) -> SignPartition:
    """
    Two-colour a connected component by edge material.

    Refraction edges join opposite colours and reflection edges join
    equal colours. The anchor is placed in plus.

    Args:
        g: The graph
        component: Vertex set of a connected component
        anchor: Vertex of the component placed in plus

    Returns:
        SignPartition covering the component

    Raises:
        OddRefractionCycle: If some cycle has an odd number of
            refraction edges
    """
    component = frozenset(component)
    if anchor not in component:
        raise ValidationError(
            "anchor must lie in the component", "anchor", anchor
        )

    graph = g.nx_graph.subgraph(component)
    color = {anchor: 1}
    for parent, child in nx.bfs_edges(graph, anchor):
        flip = graph.edges[parent, child]["material"] is EdgeMaterial.REFRACT
        color[child] = -color[parent] if flip else color[parent]
    if len(color) != len(component):
        raise ValidationError("component is not connected", "component")

    for a, b, material in graph.edges(data="material"):
        expected = -color[a] if material is EdgeMaterial.REFRACT else color[a]
        if color[b] != expected:
            cycle = nx.find_cycle(graph, a)
            raise OddRefractionCycle(cycle=[u for u, _ in cycle])

    plus = frozenset(v for v, c in color.items() if c == 1)
    return SignPartition(plus, component - plus)


def chi(g: BilliardsGraph, component: Iterable[int]) -> int:
    """||X_1| - |X_-1|| for the sign partition of a component."""
    component = frozenset(component)
    partition = sign_partition(g, component, min(component))
    return abs(partition.imbalance)
