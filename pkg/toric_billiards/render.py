"""
SVG Rendering

Static drawings of stone diagrams, coin diagrams, orbit strips and the
n=3 alcove picture of a lifted trajectory. Every renderer is a pure
function of its inputs and returns the SVG document as text.
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import drawsvg as draw
import numpy as np

from .affine_lift import AffinePermutation, alcove_point, lifted_states
from .constants import EdgeMaterial, RenderDefaults, WallKind
from .dynamics import State, coin_position, stone_diagram, theta
from .exceptions import OrbitTooLarge, UnsupportedRank, ValidationError
from .graph_core import BilliardsGraph

logger = logging.getLogger(__name__)

# Orthonormal basis of the plane x + y + z = 0
_PLANE_BASIS = np.array(
    [
        [1.0, -1.0, 0.0],
        [1.0, 1.0, -2.0],
    ]
) / np.array([[math.sqrt(2.0)], [math.sqrt(6.0)]])

_HYPERPLANE_FAMILIES = ((1, 2), (1, 3), (2, 3))


def _r(x: float) -> float:
    return round(float(x), 3)


@dataclass(frozen=True)
class RenderOptions:
    """Canvas size, palette and label switch for one drawing"""

    width: int = RenderDefaults.WIDTH
    height: int = RenderDefaults.HEIGHT
    show_labels: bool = RenderDefaults.SHOW_LABELS
    color_reflect: str = RenderDefaults.COLOR_REFLECT
    color_refract: str = RenderDefaults.COLOR_REFRACT
    color_window: str = RenderDefaults.COLOR_WINDOW
    strip_cap: int = RenderDefaults.STRIP_CAP
    font_size: int = RenderDefaults.FONT_SIZE
    stroke_width: int = RenderDefaults.STROKE_WIDTH

    def __post_init__(self):
        for name in ("width", "height", "strip_cap"):
            value = getattr(self, name)
            if not isinstance(value, int) or value <= 0:
                raise ValidationError(
                    "must be a positive integer", name, value
                )

    @classmethod
    def from_config(cls, config) -> "RenderOptions":
        return cls(
            width=config.render_width,
            height=config.render_height,
            show_labels=config.show_labels,
            color_reflect=config.color_reflect,
            color_refract=config.color_refract,
            color_window=config.color_window,
            strip_cap=config.strip_cap,
        )

    def material_color(self, material: Optional[EdgeMaterial]) -> str:
        if material is EdgeMaterial.REFLECT:
            return self.color_reflect
        if material is EdgeMaterial.REFRACT:
            return self.color_refract
        return self.color_window


def _circle_layout(
    n: int, cx: float, cy: float, radius: float
) -> Dict[int, Tuple[float, float]]:
    """Points 1..n clockwise from the top of a circle."""
    layout = {}
    for k in range(1, n + 1):
        angle = -math.pi / 2 + 2 * math.pi * (k - 1) / n
        layout[k] = (
            _r(cx + radius * math.cos(angle)),
            _r(cy + radius * math.sin(angle)),
        )
    return layout


def _arrow(
    start: Tuple[float, float],
    end: Tuple[float, float],
    color: str,
    opts: RenderOptions,
    **attrs: Any,
) -> draw.Group:
    angle = math.atan2(end[1] - start[1], end[0] - start[0])
    size = opts.font_size * 0.6
    head = [
        end[0],
        end[1],
        _r(end[0] - size * math.cos(angle - math.pi / 6)),
        _r(end[1] - size * math.sin(angle - math.pi / 6)),
        _r(end[0] - size * math.cos(angle + math.pi / 6)),
        _r(end[1] - size * math.sin(angle + math.pi / 6)),
    ]
    group = draw.Group(class_="arrow", **attrs)
    group.append(
        draw.Line(
            *start, *end, stroke=color, stroke_width=opts.stroke_width
        )
    )
    group.append(draw.Lines(*head, close=True, fill=color, stroke="none"))
    return group


def _stone_panel(s: State, opts: RenderOptions) -> draw.Group:
    """Stone diagram elements in a width x height box at the origin."""
    n = s.n
    diagram = stone_diagram(s)
    cx, cy = opts.width / 2, opts.height / 2
    radius = min(opts.width, opts.height) * 0.35
    node_radius = opts.font_size * 0.5
    layout = _circle_layout(n, cx, cy, radius)
    labels = _circle_layout(n, cx, cy, radius + opts.font_size * 1.4)

    panel = draw.Group()
    panel.append(
        draw.Circle(
            _r(cx),
            _r(cy),
            _r(radius),
            class_="cycle",
            fill="none",
            stroke=RenderDefaults.COLOR_INK,
            stroke_width=1,
        )
    )
    for position, (x, y) in layout.items():
        panel.append(
            draw.Circle(
                x,
                y,
                _r(node_radius),
                class_="position",
                data_position=position,
                fill="#ffffff",
                stroke=RenderDefaults.COLOR_INK,
                stroke_width=1,
            )
        )
    if opts.show_labels:
        for vertex in range(1, n + 1):
            x, y = labels[diagram.position[vertex - 1]]
            panel.append(
                draw.Text(
                    f"v{vertex}",
                    opts.font_size,
                    x,
                    y,
                    class_="replica",
                    data_vertex=vertex,
                    text_anchor="middle",
                    dominant_baseline="middle",
                    fill=RenderDefaults.COLOR_INK,
                )
            )

    sx, sy = layout[diagram.stone_at]
    tx, ty = layout[diagram.target]
    panel.append(
        draw.Circle(
            sx,
            sy,
            _r(node_radius * 0.6),
            class_="stone",
            data_position=diagram.stone_at,
            data_replica=diagram.replica_at(diagram.stone_at),
            fill=RenderDefaults.COLOR_STONE,
        )
    )
    # Arrow runs along the chord and stops short of the target node
    end = (_r(sx + 0.6 * (tx - sx)), _r(sy + 0.6 * (ty - sy)))
    panel.append(
        _arrow(
            (sx, sy),
            end,
            RenderDefaults.COLOR_STONE,
            opts,
            data_from=diagram.stone_at,
            data_to=diagram.target,
            data_direction=diagram.direction,
        )
    )
    return panel


def _document(width: float, height: float) -> draw.Drawing:
    return draw.Drawing(width, height)


def render_stone_diagram(
    s: State, opts: Optional[RenderOptions] = None
) -> str:
    """
    Draw Cycle_n with the replicas of the state and its directed stone.

    Args:
        s: The state
        opts: Layout and palette

    Returns:
        SVG document text
    """
    opts = opts or RenderOptions()
    d = _document(opts.width, opts.height)
    d.append(_stone_panel(s, opts))
    return d.as_svg()


def render_coin_diagram(
    g: BilliardsGraph, s: State, opts: Optional[RenderOptions] = None
) -> str:
    """Draw the graph on a circle with material-coloured edges and the coin."""
    opts = opts or RenderOptions()
    cx, cy = opts.width / 2, opts.height / 2
    radius = min(opts.width, opts.height) * 0.35
    node_radius = opts.font_size * 0.8
    layout = _circle_layout(g.n, cx, cy, radius)

    d = _document(opts.width, opts.height)
    for a, b, material in g.tagged_edges():
        d.append(
            draw.Line(
                *layout[a],
                *layout[b],
                class_=f"edge {material.value}",
                data_u=a,
                data_v=b,
                stroke=opts.material_color(material),
                stroke_width=opts.stroke_width,
            )
        )
    for vertex, (x, y) in layout.items():
        d.append(
            draw.Circle(
                x,
                y,
                _r(node_radius),
                class_="vertex",
                data_vertex=vertex,
                fill="#ffffff",
                stroke=RenderDefaults.COLOR_INK,
                stroke_width=1,
            )
        )
        if opts.show_labels:
            d.append(
                draw.Text(
                    f"v{vertex}",
                    opts.font_size,
                    x,
                    y,
                    class_="label",
                    text_anchor="middle",
                    dominant_baseline="middle",
                    fill=RenderDefaults.COLOR_INK,
                )
            )

    coin = coin_position(s)
    x, y = layout[coin]
    d.append(
        draw.Circle(
            x,
            y,
            _r(node_radius * 0.5),
            class_="coin",
            data_vertex=coin,
            fill=RenderDefaults.COLOR_COIN,
            stroke=RenderDefaults.COLOR_INK,
            stroke_width=1,
        )
    )
    return d.as_svg()


def _capped_orbit(g: BilliardsGraph, s: State, cap: int) -> List[State]:
    states = [s]
    current = theta(g, s)
    while current != s:
        if len(states) >= cap:
            raise OrbitTooLarge(
                "orbit does not fit in a strip", limit=cap, requested=cap + 1
            )
        states.append(current)
        current = theta(g, current)
    return states


def render_orbit_strip(
    g: BilliardsGraph, s: State, opts: Optional[RenderOptions] = None
) -> str:
    """
    Draw the whole Theta-orbit of s as a row of stone diagrams.

    Raises:
        OrbitTooLarge: If the orbit has more than opts.strip_cap states
    """
    opts = opts or RenderOptions()
    states = _capped_orbit(g, s, opts.strip_cap)
    logger.debug("Rendering strip of %d panels", len(states))

    d = _document(opts.width * len(states), opts.height)
    for t, state in enumerate(states):
        panel = draw.Group(
            class_="panel",
            data_time=t,
            transform=f"translate({opts.width * t},0)",
        )
        panel.append(_stone_panel(state, opts))
        d.append(panel)
    return d.as_svg()


def _project_plane(point: Sequence[Any]) -> np.ndarray:
    return _PLANE_BASIS @ np.array([float(x) for x in point])


def _clip_line(
    normal: np.ndarray, level: float, box: Tuple[float, float, float, float]
) -> Optional[Tuple[np.ndarray, np.ndarray]]:
    """Segment of {p : normal . p = level} inside the box, or None."""
    xmin, ymin, xmax, ymax = box
    corners = [(xmin, ymin), (xmax, ymin), (xmax, ymax), (xmin, ymax)]
    points = []
    for k in range(4):
        p = np.array(corners[k])
        q = np.array(corners[(k + 1) % 4])
        fp = normal @ p - level
        fq = normal @ q - level
        if fp == 0:
            points.append(p)
        elif fp * fq < 0:
            points.append(p + (q - p) * fp / (fp - fq))
    if len(points) < 2:
        return None
    return points[0], points[1]


def render_alcove_trajectory(
    g: BilliardsGraph,
    start: Tuple[AffinePermutation, int, int],
    steps: int,
    opts: Optional[RenderOptions] = None,
) -> str:
    """
    Draw the n=3 alcove grid and the lifted trajectory through it.

    Walls are coloured by the material their family carries in g; the
    trajectory is the polyline through the alcove centroids.

    Raises:
        UnsupportedRank: If g is not on 3 vertices
    """
    opts = opts or RenderOptions()
    if g.n != 3:
        raise UnsupportedRank("alcove pictures are drawn for n=3 only", g.n)

    centers = np.array(
        [
            _project_plane(alcove_point(state.u))
            for state in lifted_states(g, start, steps)
        ]
    )
    margin = 1.0
    xmin, ymin = centers.min(axis=0) - margin
    xmax, ymax = centers.max(axis=0) + margin
    span = max(xmax - xmin, ymax - ymin)
    scale = min(opts.width, opts.height) / span
    box = (xmin, ymin, xmin + span, ymin + span)

    def to_canvas(p: np.ndarray) -> Tuple[float, float]:
        return _r((p[0] - box[0]) * scale), _r((box[3] - p[1]) * scale)

    d = _document(opts.width, opts.height)
    corners = np.array(
        [
            [box[0], box[1]],
            [box[2], box[1]],
            [box[2], box[3]],
            [box[0], box[3]],
        ]
    )
    for i, j in _HYPERPLANE_FAMILIES:
        normal = _PLANE_BASIS[:, i - 1] - _PLANE_BASIS[:, j - 1]
        material = g.material(i, j)
        kind = {
            None: WallKind.WINDOW,
            EdgeMaterial.REFLECT: WallKind.MIRROR,
            EdgeMaterial.REFRACT: WallKind.METALENS,
        }[material]
        levels = corners @ normal
        for k in range(math.ceil(levels.min()), math.floor(levels.max()) + 1):
            segment = _clip_line(normal, float(k), box)
            if segment is None:
                continue
            d.append(
                draw.Line(
                    *to_canvas(segment[0]),
                    *to_canvas(segment[1]),
                    class_=f"wall {kind.value}",
                    data_hyperplane=f"{i},{j},{k}",
                    stroke=opts.material_color(material),
                    stroke_width=1,
                )
            )

    points = [c for p in centers for c in to_canvas(p)]
    d.append(
        draw.Lines(
            *points,
            class_="trajectory",
            data_centers=len(centers),
            fill="none",
            stroke=RenderDefaults.COLOR_TRAJECTORY,
            stroke_width=opts.stroke_width,
        )
    )
    for t, p in enumerate(centers):
        d.append(
            draw.Circle(
                *to_canvas(p),
                _r(opts.stroke_width * 1.5),
                class_="center",
                data_time=t,
                fill=RenderDefaults.COLOR_TRAJECTORY,
            )
        )
    return d.as_svg()
