"""Tests for the closed-form orbit sizes on forests and cycles"""

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tests.graphs import (
    REFLECT,
    REFRACT,
    edgeless,
    leaf_tree_n5,
    mixed_five_cycle,
    path_graph_n3,
    seven_cycle,
    seven_cycle_labeling,
)
from toric_billiards.dynamics import (
    State,
    orbit_size,
    orbit_size_table,
    state_space,
)
from toric_billiards.exceptions import (
    NoClosedForm,
    NotACycle,
    NotAForest,
    NotATreeEdge,
    OddRefractionCycle,
)
from toric_billiards.graph_core import BilliardsGraph, Labeling
from toric_billiards.predictors import (
    canonicalize_cycle,
    cycle_a_sequence,
    cycle_invariants,
    cycle_orbit_size,
    forest_orbit_size,
    least_period,
    predict_orbit_size,
    replica_walk_a_sequence,
    subtree_size,
    tree_orbit_size,
)


def every_state(n):
    space = state_space(n)
    return (space.unrank(r) for r in range(space.size))


class TestForests:
    def test_path_graph_n3(self):
        assert tree_orbit_size(path_graph_n3()) == 18

    def test_leaf_tree(self):
        assert tree_orbit_size(leaf_tree_n5()) == 100

    def test_edgeless(self):
        s = State.of([3, 1, 2], 2, -1)
        assert forest_orbit_size(edgeless(3), s) == 6

    @pytest.mark.parametrize(
        "edges",
        [
            [(1, 2, REFRACT)],
            [(1, 2, REFLECT)],
            [(1, 2, REFRACT), (3, 4, REFLECT)],
            [(1, 2, REFLECT), (2, 3, REFRACT)],
        ],
    )
    def test_formula_matches_brute_force(self, edges):
        g = BilliardsGraph.from_edges(4, edges)
        for s in every_state(4):
            assert forest_orbit_size(g, s) == orbit_size(g, s)

    def test_cycle_rejected(self):
        g = BilliardsGraph.cycle([REFLECT] * 4)
        with pytest.raises(NotAForest):
            forest_orbit_size(g, State.of([1, 2, 3, 4]))
        with pytest.raises(NotAForest):
            tree_orbit_size(g)

    def test_disconnected_graph_is_not_a_tree(self):
        with pytest.raises(NotAForest):
            tree_orbit_size(edgeless(3))


class TestSubtreeSize:
    def test_both_sides_of_an_edge(self):
        g = leaf_tree_n5()
        assert subtree_size(g, 2, 1) == 4
        assert subtree_size(g, 1, 2) == 1
        assert subtree_size(g, 3, 2) == 2

    def test_sides_sum_to_component(self):
        g = leaf_tree_n5()
        for a, b in g.edges:
            assert subtree_size(g, a, b) + subtree_size(g, b, a) == 5

    def test_non_edge(self):
        with pytest.raises(NotATreeEdge):
            subtree_size(leaf_tree_n5(), 1, 4)

    def test_edge_on_a_cycle(self):
        with pytest.raises(NotATreeEdge):
            subtree_size(BilliardsGraph.cycle([REFLECT] * 3), 1, 2)


class TestLeastPeriod:
    @pytest.mark.parametrize(
        "sequence,period",
        [
            ((4, 1, 4, 4, 1, 4), 3),
            ((1, 1, 1), 1),
            ((1, 2), 2),
            ((2, 2, 3, 2, 2, 3), 3),
            ((5,), 1),
        ],
    )
    def test_periods(self, sequence, period):
        assert least_period(sequence) == period


class TestCycleInvariants:
    def test_seven_cycle(self):
        inv = cycle_invariants(seven_cycle(), seven_cycle_labeling())
        assert inv.a == (4, 1, 4, 4, 1, 4)
        assert (inv.p, inv.m, inv.mu) == (3, 3, 4)
        assert inv.to_dict() == {
            "a": [4, 1, 4, 4, 1, 4],
            "p": 3,
            "m": 3,
            "mu": 4,
        }

    def test_seven_cycle_orbit_size(self):
        g = seven_cycle()
        sigma = seven_cycle_labeling()
        assert cycle_orbit_size(g, sigma) == 441
        assert orbit_size(g, State(sigma, 1, 1)) == 441

    def test_canonical_ordering(self):
        ordering = canonicalize_cycle(seven_cycle(), seven_cycle_labeling())
        assert ordering.vertices == (1, 2, 3, 4, 5, 6, 7)
        assert ordering.materials[0] is REFRACT

    def test_canonical_ordering_ends_at_label_one(self):
        g = BilliardsGraph.cycle([REFLECT] * 5)
        sigma = Labeling((3, 1, 5, 2, 4))
        ordering = canonicalize_cycle(g, sigma)
        assert sigma.of(ordering.vertices[-1]) == 1
        assert sigma.of(ordering.vertices[0]) < sigma.of(ordering.vertices[-2])

    @given(st.permutations(range(1, 6)))
    def test_gap_sequence_matches_replica_walk(self, labels):
        g = BilliardsGraph.cycle([REFRACT, REFLECT, REFRACT, REFLECT, REFLECT])
        sigma = Labeling(tuple(labels))
        ordering = canonicalize_cycle(g, sigma)
        assert cycle_a_sequence(ordering, sigma) == replica_walk_a_sequence(
            ordering, sigma
        )

    def test_canonical_ordering_is_idempotent(self):
        g = mixed_five_cycle()
        for labels in itertools.permutations(range(1, 6)):
            ordering = canonicalize_cycle(g, Labeling(labels))
            graph, sigma = ordering.relabeled(g, Labeling(labels))
            again = canonicalize_cycle(graph, sigma)
            assert again.vertices == (1, 2, 3, 4, 5)
            assert again.materials == ordering.materials

    @pytest.mark.parametrize(
        "materials",
        [
            (REFRACT, REFLECT, REFRACT, REFLECT, REFLECT),
            (REFRACT, REFRACT, REFLECT, REFLECT, REFLECT, REFLECT),
            (REFRACT, REFLECT, REFLECT, REFRACT, REFRACT, REFRACT),
        ],
    )
    def test_mu_takes_two_complementary_values(self, materials):
        g = BilliardsGraph.cycle(materials)
        n = g.n
        values = {
            cycle_invariants(g, Labeling(labels)).mu
            for labels in itertools.permutations(range(1, n + 1))
        }
        some = next(iter(values))
        assert values <= {some, n - some}

    def test_mu_all_reflect(self):
        g = BilliardsGraph.cycle([REFLECT] * 5)
        for labels in itertools.permutations(range(1, 6)):
            assert cycle_invariants(g, Labeling(labels)).mu == 5

    def test_mu_all_refract(self):
        g = BilliardsGraph.cycle([REFRACT] * 6)
        for labels in itertools.permutations(range(1, 7)):
            assert cycle_invariants(g, Labeling(labels)).mu == 3

    def test_odd_refraction_count(self):
        g = BilliardsGraph.cycle([REFRACT, REFLECT, REFLECT, REFLECT])
        with pytest.raises(OddRefractionCycle):
            cycle_invariants(g, Labeling.identity(4))

    def test_path_is_not_a_cycle(self):
        with pytest.raises(NotACycle):
            cycle_invariants(path_graph_n3(), Labeling.identity(3))

    @pytest.mark.parametrize(
        "materials",
        [
            (REFLECT,) * 5,
            (REFRACT, REFRACT, REFLECT, REFLECT, REFLECT),
            (REFRACT, REFLECT, REFRACT, REFLECT, REFLECT),
            (REFRACT, REFRACT, REFRACT, REFRACT, REFLECT),
        ],
    )
    def test_formula_matches_brute_force(self, materials):
        g = BilliardsGraph.cycle(materials)
        for labels in itertools.permutations(range(1, 6)):
            sigma = Labeling(labels)
            assert cycle_orbit_size(g, sigma) == orbit_size(
                g, State(sigma, 1, 1)
            )


class TestPredict:
    def test_forest_method(self):
        prediction = predict_orbit_size(path_graph_n3(), State.of([1, 2, 3]))
        assert prediction.to_dict() == {"size": 18, "method": "forest"}

    def test_cycle_method_normalizes_state(self):
        g = BilliardsGraph.cycle([REFRACT, REFRACT, REFLECT, REFLECT])
        for s in every_state(4):
            prediction = predict_orbit_size(g, s)
            assert prediction.method == "cycle"
            assert prediction.size == orbit_size(g, s)

    def test_cycle_method_on_every_state(self):
        g = mixed_five_cycle()
        space = state_space(5)
        sizes = orbit_size_table(g)
        for r in range(space.size):
            s = space.unrank(r)
            assert predict_orbit_size(g, s).size == sizes[r], s

    def test_no_closed_form(self):
        g = BilliardsGraph.from_edges(
            4,
            [
                (1, 2, REFLECT),
                (2, 3, REFLECT),
                (3, 1, REFLECT),
                (3, 4, REFLECT),
            ],
        )
        with pytest.raises(NoClosedForm):
            predict_orbit_size(g, State.of([1, 2, 3, 4]))
