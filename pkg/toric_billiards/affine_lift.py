"""
Affine Symmetric Group Lift

Window-notation arithmetic in the affine symmetric group, projection to
S_n, the direction vectors nu, separating hyperplanes of the affine braid
arrangement, and the lifted map Theta-tilde whose projection is Theta.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, NamedTuple, Sequence, Tuple, Union

from .constants import EdgeMaterial, WallKind
from .dynamics import State
from .exceptions import BadResidues, BadSum, ValidationError
from .graph_core import BilliardsGraph, Labeling, wrap
from .validation import validate_window_payload

logger = logging.getLogger(__name__)


def _split(x: int, n: int) -> Tuple[int, int]:
    """Write x = residue + n * quotient with residue in 1..n."""
    quotient, r = divmod(x - 1, n)
    return r + 1, quotient


# =============================================================================
# Affine permutations
# =============================================================================


@dataclass(frozen=True)
class AffinePermutation:
    """Element u of the affine symmetric group, by window [u(1)..u(n)]

    u(i + n) = u(i) + n; the residues of the window are distinct and the
    entries sum to n(n+1)/2.
    """

    window: Tuple[int, ...]

    def __post_init__(self):
        window = tuple(self.window)
        n = len(window)
        if len({x % n for x in window}) != n:
            raise BadResidues(
                "entries are not distinct modulo n",
                field="window",
                value=list(window),
            )
        if sum(window) != n * (n + 1) // 2:
            raise BadSum(
                f"entries sum to {sum(window)}, expected {n * (n + 1) // 2}",
                field="window",
                value=list(window),
            )
        object.__setattr__(self, "window", window)

    @property
    def n(self) -> int:
        return len(self.window)

    def apply(self, x: int) -> int:
        residue, quotient = _split(x, self.n)
        return self.window[residue - 1] + quotient * self.n

    def to_dict(self) -> Dict[str, Any]:
        return {"window": list(self.window)}

    def __str__(self) -> str:
        return "[" + ",".join(str(x) for x in self.window) + "]"


def affine_from_window(w: Union[Sequence[int], Dict[str, Any]]):
    """
    Validate a window and build the affine permutation.

    Args:
        w: Integer sequence, or ``{"window": [...]}``

    Raises:
        ValidationError: If the input is not a list of at least 3 integers
        BadResidues: If two entries agree modulo n
        BadSum: If the entries do not sum to n(n+1)/2
    """
    result = validate_window_payload(w)
    if not result.valid:
        raise ValidationError(result.error, field=result.field)
    window = w["window"] if isinstance(w, dict) else w
    return AffinePermutation(tuple(window))


def identity(n: int) -> AffinePermutation:
    return AffinePermutation(tuple(range(1, n + 1)))


def apply(u: AffinePermutation, x: int) -> int:
    return u.apply(x)


def compose(u: AffinePermutation, v: AffinePermutation) -> AffinePermutation:
    """u o v"""
    return AffinePermutation(
        tuple(u.apply(v.apply(i)) for i in range(1, u.n + 1))
    )


def inverse(u: AffinePermutation) -> AffinePermutation:
    n = u.n
    window = [0] * n
    for i, value in enumerate(u.window, start=1):
        residue, quotient = _split(value, n)
        window[residue - 1] = i - quotient * n
    return AffinePermutation(tuple(window))


def reflection(a: int, b: int, n: int) -> AffinePermutation:
    """r_{a,b}: swaps a + kn and b + kn for every integer k."""
    if (a - b) % n == 0:
        raise ValidationError("a and b must differ modulo n", "b", b)
    d = b - a

    def image(x: int) -> int:
        if (x - a) % n == 0:
            return x + d
        if (x - b) % n == 0:
            return x - d
        return x

    return AffinePermutation(tuple(image(x) for x in range(1, n + 1)))


def simple_reflection(i: int, n: int) -> AffinePermutation:
    """s-tilde_i = r_{i,i+1}; for i = n this swaps n and n+1."""
    return reflection(i, i + 1, n)


def left_mul_simple(i: int, u: AffinePermutation) -> AffinePermutation:
    """s-tilde_i o u: exchange the values congruent to i and i + 1."""
    n = u.n
    if not 1 <= i <= n:
        raise ValidationError(f"must lie in 1..{n}", "i", i)
    window = []
    for value in u.window:
        residue = wrap(value, n)
        if residue == i:
            value += 1
        elif residue == wrap(i + 1, n):
            value -= 1
        window.append(value)
    return AffinePermutation(tuple(window))


def project(u: AffinePermutation) -> Tuple[int, ...]:
    """One-line notation of the image in S_n (window reduced into 1..n)."""
    return tuple(wrap(x, u.n) for x in u.window)


def project_labeling(u: AffinePermutation) -> Labeling:
    return Labeling(project(u))


# =============================================================================
# Coroot lattice
# =============================================================================


@dataclass(frozen=True)
class CorootVector:
    """Integer vector with entries summing to zero"""

    entries: Tuple[int, ...]

    def __post_init__(self):
        entries = tuple(self.entries)
        if sum(entries) != 0:
            raise ValidationError(
                "entries must sum to 0", "entries", list(entries)
            )
        object.__setattr__(self, "entries", entries)

    def to_list(self) -> List[int]:
        return list(self.entries)


def translation(gamma: CorootVector) -> AffinePermutation:
    """t_gamma; x t_gamma = x + gamma, so left_action moves x to x - gamma."""
    n = len(gamma.entries)
    return AffinePermutation(
        tuple(j - g * n for j, g in enumerate(gamma.entries, start=1))
    )


def is_translation(u: AffinePermutation) -> bool:
    return project(u) == tuple(range(1, u.n + 1))


def nu(u: AffinePermutation, i: int, eps: int) -> CorootVector:
    """eps(1-n) at position u-bar^-1(i + (1-eps)/2), eps everywhere else."""
    n = u.n
    stone = wrap(i + (1 - eps) // 2, n)
    position = project_labeling(u).vertex_of(stone)
    return CorootVector(
        tuple(
            eps * (1 - n) if j == position else eps for j in range(1, n + 1)
        )
    )


# =============================================================================
# Hyperplanes and alcoves
# =============================================================================


@dataclass(frozen=True)
class Hyperplane:
    """H^k_{i,j} = {x : x_i - x_j = k}, i < j"""

    i: int
    j: int
    k: int

    def __post_init__(self):
        if not self.i < self.j:
            raise ValidationError("requires i < j", "j", self.j)

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        return point[self.i - 1] - point[self.j - 1] - self.k

    def side(self, point: Sequence[Fraction]) -> int:
        """+1 or -1 for the open half-spaces, 0 on the hyperplane."""
        value = self.evaluate(point)
        return (value > 0) - (value < 0)

    def to_dict(self) -> Dict[str, int]:
        return {"i": self.i, "j": self.j, "k": self.k}

    def __str__(self) -> str:
        return f"H^{self.k}_{{{self.i},{self.j}}}"


def normalize_reflection(a: int, b: int, n: int) -> Hyperplane:
    """The hyperplane fixed by r_{a,b}, in canonical form i < j."""
    ra, qa = _split(a, n)
    rb, qb = _split(b, n)
    if ra == rb:
        raise ValidationError("a and b must differ modulo n", "b", b)
    k = qb - qa
    if ra < rb:
        return Hyperplane(ra, rb, -k)
    return Hyperplane(rb, ra, k)


def separating_hyperplane(u: AffinePermutation, i: int) -> Hyperplane:
    """
    The wall between the alcoves of u and s-tilde_i u.

    The reflection carrying one to the other is
    u^-1 s-tilde_i u = r_{u^-1(i), u^-1(i+1)}.
    """
    u_inv = inverse(u)
    return normalize_reflection(u_inv.apply(i), u_inv.apply(i + 1), u.n)


def left_action(w: AffinePermutation, point: Sequence[Fraction]):
    """
    w . x, with (w . x)_{res w(i)} = x_i + quot w(i).

    The alcove of u is u^-1 applied to the base alcove.
    """
    n = w.n
    image = [Fraction(0)] * n
    for i, value in enumerate(w.window):
        residue, quotient = _split(value, n)
        image[residue - 1] = Fraction(point[i]) + quotient
    return tuple(image)


def base_alcove_vertices(n: int) -> List[Tuple[Fraction, ...]]:
    """Vertices of the base alcove x_1 > ... > x_n > x_1 - 1, sum 0."""
    return [
        tuple(
            Fraction(n - k, n) if j < k else Fraction(-k, n)
            for j in range(n)
        )
        for k in range(n)
    ]


def alcove_centroid(n: int) -> Tuple[Fraction, ...]:
    vertices = base_alcove_vertices(n)
    return tuple(sum(coords) / n for coords in zip(*vertices))


def alcove_point(u: AffinePermutation) -> Tuple[Fraction, ...]:
    """Exact interior point (the centroid) of the alcove of u."""
    return left_action(inverse(u), alcove_centroid(u.n))


# =============================================================================
# Lifted dynamics
# =============================================================================


class LiftedState(NamedTuple):
    """(u, i, eps) with u in the affine symmetric group"""

    u: AffinePermutation
    index: int
    eps: int

    def project(self) -> State:
        return State(project_labeling(self.u), self.index, self.eps)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "window": list(self.u.window),
            "i": self.index,
            "eps": self.eps,
        }


def lift_state(s: State) -> LiftedState:
    """The lift whose window equals the labeling (a translation-free lift)."""
    return LiftedState(AffinePermutation(s.sigma.labels), s.index, s.eps)


def classify_wall(g: BilliardsGraph, u: AffinePermutation, i: int) -> WallKind:
    """
    Material of the wall between u and s-tilde_i u, read from the edge
    {u-bar^-1(i), u-bar^-1(i+1)} of g.
    """
    sigma = project_labeling(u)
    material = g.material(
        sigma.vertex_of(i), sigma.vertex_of(wrap(i + 1, u.n))
    )
    if material is None:
        return WallKind.WINDOW
    if material is EdgeMaterial.REFLECT:
        return WallKind.MIRROR
    return WallKind.METALENS


def theta_tilde(
    g: BilliardsGraph, u: AffinePermutation, i: int, eps: int
) -> LiftedState:
    """
    One step of the lifted map.

      - window:   (s-tilde_i u, i + eps, eps)
      - mirror:   (u, i + eps, eps)
      - metalens: (s-tilde_i u, i - eps, -eps)
    """
    n = u.n
    kind = classify_wall(g, u, i)
    if kind is WallKind.WINDOW:
        return LiftedState(left_mul_simple(i, u), wrap(i + eps, n), eps)
    if kind is WallKind.MIRROR:
        return LiftedState(u, wrap(i + eps, n), eps)
    return LiftedState(left_mul_simple(i, u), wrap(i - eps, n), -eps)


def lifted_states(
    g: BilliardsGraph, start: Tuple[AffinePermutation, int, int], steps: int
) -> List[LiftedState]:
    """start followed by steps applications of theta_tilde."""
    if steps < 0:
        raise ValidationError("must be non-negative", "steps", steps)
    current = LiftedState(*start)
    states = [current]
    for _ in range(steps):
        current = theta_tilde(g, *current)
        states.append(current)
    return states


def trajectory(
    g: BilliardsGraph, start: Tuple[AffinePermutation, int, int], steps: int
) -> List[AffinePermutation]:
    """Discrete billiards trajectory u_0, u_1, ..., u_steps."""
    return [state.u for state in lifted_states(g, start, steps)]
