"""Tests for SVG output of stone, coin, strip and alcove drawings"""

import xml.etree.ElementTree as ET

import pytest

from tests.graphs import REFLECT, edgeless, leaf_tree_n5, path_graph_n3
from toric_billiards.affine_lift import identity
from toric_billiards.dynamics import State, coin_position
from toric_billiards.exceptions import (
    OrbitTooLarge,
    UnsupportedRank,
    ValidationError,
)
from toric_billiards.graph_core import BilliardsGraph
from toric_billiards.render import (
    RenderOptions,
    render_alcove_trajectory,
    render_coin_diagram,
    render_orbit_strip,
    render_stone_diagram,
)


def classed(svg, token):
    """All elements whose class attribute contains token."""
    root = ET.fromstring(svg)
    return [
        el for el in root.iter() if token in el.get("class", "").split()
    ]


def tag(el):
    return el.tag.rsplit("}", 1)[-1]


class TestOptions:
    @pytest.mark.parametrize("field", ["width", "height", "strip_cap"])
    def test_rejects_non_positive(self, field):
        with pytest.raises(ValidationError):
            RenderOptions(**{field: 0})

    def test_material_colors(self):
        opts = RenderOptions(color_reflect="#111111")
        assert opts.material_color(REFLECT) == "#111111"
        assert opts.material_color(None) == opts.color_window


class TestStoneDiagram:
    def test_example_state(self):
        svg = render_stone_diagram(State.of([3, 1, 2], 2, -1))
        assert svg.startswith("<?xml") or svg.lstrip().startswith("<svg")
        assert len(classed(svg, "position")) == 3
        (stone,) = classed(svg, "stone")
        assert stone.get("data-position") == "3"
        assert stone.get("data-replica") == "1"
        (arrow,) = classed(svg, "arrow")
        assert arrow.get("data-from") == "3"
        assert arrow.get("data-to") == "2"
        assert arrow.get("data-direction") == "counterclockwise"

    def test_stone_names_the_coin_replica(self):
        for s in [State.of([2, 3, 1, 4], 3, 1), State.of([4, 1, 3, 2], 4, -1)]:
            (stone,) = classed(render_stone_diagram(s), "stone")
            assert stone.get("data-replica") == str(coin_position(s))

    def test_replicas_sit_at_their_labels(self):
        svg = render_stone_diagram(State.of([2, 3, 1, 4], 1, 1))
        replicas = classed(svg, "replica")
        assert sorted(el.text for el in replicas) == ["v1", "v2", "v3", "v4"]

    def test_labels_can_be_hidden(self):
        svg = render_stone_diagram(
            State.of([1, 2, 3]), RenderOptions(show_labels=False)
        )
        assert classed(svg, "replica") == []

    def test_pure(self):
        s = State.of([2, 1, 3], 3, 1)
        assert render_stone_diagram(s) == render_stone_diagram(s)


class TestCoinDiagram:
    def test_edges_by_material(self):
        svg = render_coin_diagram(path_graph_n3(), State.of([1, 2, 3]))
        assert len(classed(svg, "edge")) == 2
        (reflect,) = classed(svg, "reflect")
        (refract,) = classed(svg, "refract")
        assert (reflect.get("data-u"), reflect.get("data-v")) == ("1", "2")
        assert (refract.get("data-u"), refract.get("data-v")) == ("2", "3")
        assert reflect.get("stroke") != refract.get("stroke")

    def test_one_circle_per_vertex(self):
        svg = render_coin_diagram(leaf_tree_n5(), State.of([1, 2, 3, 4, 5]))
        assert len(classed(svg, "vertex")) == 5

    def test_coin_marks_its_vertex(self):
        s = State.of([3, 1, 2], 2, -1)
        svg = render_coin_diagram(path_graph_n3(), s)
        (coin,) = classed(svg, "coin")
        assert coin.get("data-vertex") == str(coin_position(s))

    def test_edgeless_graph_has_no_edges(self):
        svg = render_coin_diagram(edgeless(3), State.of([1, 2, 3]))
        assert classed(svg, "edge") == []


class TestOrbitStrip:
    def test_one_panel_per_state(self):
        opts = RenderOptions(width=100, height=100)
        svg = render_orbit_strip(path_graph_n3(), State.of([1, 2, 3]), opts)
        panels = classed(svg, "panel")
        assert len(panels) == 18
        assert [p.get("data-time") for p in panels[:3]] == ["0", "1", "2"]
        assert ET.fromstring(svg).get("width") == "1800"

    def test_cap(self):
        with pytest.raises(OrbitTooLarge):
            render_orbit_strip(
                path_graph_n3(),
                State.of([1, 2, 3]),
                RenderOptions(strip_cap=10),
            )


class TestAlcoves:
    def test_trajectory(self):
        svg = render_alcove_trajectory(
            path_graph_n3(), (identity(3), 1, 1), 12
        )
        (path,) = classed(svg, "trajectory")
        assert path.get("data-centers") == "13"
        assert len(classed(svg, "center")) == 13

    def test_walls_by_family(self):
        svg = render_alcove_trajectory(
            path_graph_n3(), (identity(3), 1, 1), 6
        )
        families = {
            tuple(el.get("data-hyperplane").split(",")[:2])
            for el in classed(svg, "wall")
        }
        assert families == {("1", "2"), ("1", "3"), ("2", "3")}
        for el in classed(svg, "mirror"):
            assert el.get("data-hyperplane").startswith("1,2,")
        for el in classed(svg, "metalens"):
            assert el.get("data-hyperplane").startswith("2,3,")
        for el in classed(svg, "window"):
            assert el.get("data-hyperplane").startswith("1,3,")

    def test_only_rank_three(self):
        g = BilliardsGraph.path([REFLECT] * 3)
        with pytest.raises(UnsupportedRank):
            render_alcove_trajectory(g, (identity(4), 1, 1), 4)

    def test_zero_steps(self):
        svg = render_alcove_trajectory(edgeless(3), (identity(3), 2, -1), 0)
        assert len(classed(svg, "center")) == 1
        assert all(tag(el) == "circle" for el in classed(svg, "center"))
