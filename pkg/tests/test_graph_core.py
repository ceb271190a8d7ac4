"""Tests for billiards graphs, labelings and sign partitions"""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tests.graphs import (
    REFLECT,
    REFRACT,
    path_graph_n3,
    seven_cycle,
)
from toric_billiards.exceptions import (
    GraphValidationError,
    LabelingError,
    OddRefractionCycle,
)
from toric_billiards.graph_core import (
    BilliardsGraph,
    Labeling,
    chi,
    connected_component_of,
    sign_partition,
    validate_graph,
    wrap,
)


def test_wrap_uses_representatives_one_to_n():
    assert wrap(0, 5) == 5
    assert wrap(5, 5) == 5
    assert wrap(6, 5) == 1
    assert wrap(-1, 5) == 4


class TestValidateGraph:
    def test_dict_and_list_edges(self):
        g = validate_graph(
            {
                "n": 3,
                "edges": [
                    {"u": 2, "v": 1, "kind": "reflect"},
                    [3, 2, "refract"],
                ],
            }
        )
        assert g.reflect == frozenset({(1, 2)})
        assert g.refract == frozenset({(2, 3)})

    def test_material_aliases(self):
        g = validate_graph(
            {"n": 3, "edges": [[1, 2, "mirror"], [2, 3, "Metalens"]]}
        )
        assert g == path_graph_n3()

    def test_material_lookup_is_symmetric(self):
        g = path_graph_n3()
        assert g.material(2, 1) is REFLECT
        assert g.material(3, 2) is REFRACT
        assert g.material(1, 3) is None

    @pytest.mark.parametrize(
        "raw",
        [
            {"n": 2, "edges": []},
            {"n": 3, "edges": [[1, 1, "reflect"]]},
            {"n": 3, "edges": [[1, 4, "reflect"]]},
            {"n": 3, "edges": [[1, 2, "reflect"], [2, 1, "refract"]]},
            {"n": 3, "edges": [[1, 2, "glass"]]},
            {"n": 3, "edges": [{"u": 1, "v": 2}]},
            {"edges": []},
            [1, 2, 3],
        ],
    )
    def test_rejects_bad_graphs(self, raw):
        with pytest.raises(GraphValidationError):
            validate_graph(raw)

    def test_edgeless_graph_is_valid(self):
        g = BilliardsGraph.empty(4)
        assert g.edges == []
        assert g.is_forest()
        assert not g.is_cycle()

    def test_to_dict_round_trips_through_validate(self):
        g = seven_cycle()
        assert validate_graph(g.to_dict()) == g


class TestLabeling:
    def test_inverse(self):
        sigma = Labeling((3, 1, 2))
        assert sigma.inverse == (2, 3, 1)
        assert sigma.of(1) == 3
        assert sigma.vertex_of(3) == 1

    @pytest.mark.parametrize("labels", [(1, 1, 2), (0, 1, 2), (1, 2, 4)])
    def test_rejects_non_bijections(self, labels):
        with pytest.raises(LabelingError):
            Labeling(labels)

    def test_swap_values(self):
        sigma = Labeling((3, 1, 2)).swap_values(1, 2)
        assert sigma.labels == (3, 2, 1)
        assert sigma.inverse == (3, 2, 1)

    def test_shift_adds_modulo_n(self):
        sigma = Labeling((3, 1, 2)).shift(1)
        assert sigma.labels == (1, 2, 3)
        assert sigma.inverse == (1, 2, 3)

    @given(st.permutations(range(1, 7)), st.integers(-10, 10))
    def test_shift_keeps_inverse_consistent(self, labels, k):
        sigma = Labeling(tuple(labels)).shift(k)
        assert sigma == Labeling(sigma.labels)
        for vertex in range(1, 7):
            assert sigma.vertex_of(sigma.of(vertex)) == vertex

    @given(st.permutations(range(1, 6)), st.integers(1, 5), st.integers(1, 5))
    def test_swap_values_is_an_involution(self, labels, a, b):
        sigma = Labeling(tuple(labels))
        if a != b:
            assert sigma.swap_values(a, b).swap_values(a, b) == sigma


class TestSignPartition:
    def test_seven_cycle_anchored_at_last_vertex(self):
        partition = sign_partition(seven_cycle(), range(1, 8), 7)
        assert partition.plus == frozenset({2, 3, 4, 7})
        assert partition.minus == frozenset({1, 5, 6})
        assert partition.imbalance == 1

    def test_path_chi(self):
        assert chi(path_graph_n3(), {1, 2, 3}) == 1

    def test_isolated_vertex_chi(self):
        assert chi(BilliardsGraph.empty(4), {3}) == 1

    def test_odd_refraction_cycle(self):
        g = BilliardsGraph.cycle([REFRACT, REFLECT, REFLECT])
        with pytest.raises(OddRefractionCycle) as excinfo:
            sign_partition(g, {1, 2, 3}, 1)
        assert sorted(excinfo.value.cycle) == [1, 2, 3]

    def test_swapped(self):
        partition = sign_partition(path_graph_n3(), {1, 2, 3}, 1)
        assert partition.swapped().plus == partition.minus
        assert partition.side_of(3) == -1


def test_connected_component_of():
    g = BilliardsGraph.from_edges(5, [(1, 2, REFLECT), (4, 5, REFRACT)])
    assert connected_component_of(g, 2) == frozenset({1, 2})
    assert connected_component_of(g, 3) == frozenset({3})


def test_star_and_cycle_shapes():
    star = BilliardsGraph.star(5, 2)
    assert star.refract == frozenset({(1, 2), (1, 3)})
    assert star.is_forest()
    assert seven_cycle().is_cycle()
    assert not seven_cycle().is_forest()
