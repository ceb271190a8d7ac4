"""
Toric Promotion Dynamics

The map Theta on states (labeling, index, orientation) of a billiards
graph, its inverse and powers, exhaustive orbit enumeration, the
normalizing automorphisms omega, the cyclic shift, toric promotion and
the stone/coin diagram views of a state.
"""

import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Any, Dict, List, NamedTuple, Optional, Tuple, Union

import numpy as np

from .constants import EdgeMaterial, EnumerationDefaults
from .exceptions import (
    CapacityExceeded,
    LabelingError,
    RefractionPresent,
    StateError,
)
from .graph_core import BilliardsGraph, Labeling, wrap
from .validation import validate_state_payload

logger = logging.getLogger(__name__)


# =============================================================================
# States
# =============================================================================


@dataclass(frozen=True)
class State:
    """An element (sigma, i, eps) of the state space"""

    sigma: Labeling
    index: int
    eps: int

    def __post_init__(self):
        n = self.sigma.n
        if not isinstance(self.index, int) or not 1 <= self.index <= n:
            raise StateError(f"must lie in 1..{n}", "i", self.index)
        if self.eps not in (1, -1):
            raise StateError("must be 1 or -1", "eps", self.eps)

    @classmethod
    def of(cls, labels, index: int = 1, eps: int = 1) -> "State":
        return cls(Labeling(tuple(labels)), index, eps)

    @property
    def n(self) -> int:
        return self.sigma.n

    @property
    def stone_vertex(self) -> int:
        """Cycle_n vertex i + (1 - eps)/2 holding the stone"""
        return wrap(self.index + (1 - self.eps) // 2, self.n)

    @property
    def target_vertex(self) -> int:
        """Cycle_n vertex i + (1 + eps)/2 the stone points toward"""
        return wrap(self.index + (1 + self.eps) // 2, self.n)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "labels": list(self.sigma.labels),
            "i": self.index,
            "eps": self.eps,
        }


def state_from_dict(raw: Any, n: Optional[int] = None) -> State:
    """
    Build a State from ``{"labels": [...], "i": int, "eps": 1|-1}``.

    Args:
        raw: Parsed JSON object
        n: Vertex count of the graph, when known

    Raises:
        LabelingError: If the labels are not a bijection onto 1..n
        StateError: If i or eps is out of range
    """
    result = validate_state_payload(raw, n)
    if not result.valid:
        error_type = LabelingError if result.field == "labels" else StateError
        raise error_type(result.error, field=result.field)
    for warning in result.warnings or []:
        logger.warning("State input: %s", warning)
    return State.of(raw["labels"], raw.get("i", 1), raw.get("eps", 1))


# =============================================================================
# Theta
# =============================================================================


def theta(g: BilliardsGraph, s: State) -> State:
    """
    Apply Theta once.

    With a = sigma^-1(i) and b = sigma^-1(i+1):
      - {a, b} not an edge: (s_i sigma, i + eps, eps)
      - reflection edge:    (sigma, i + eps, eps)
      - refraction edge:    (s_i sigma, i - eps, -eps)
    """
    n, i, eps = s.n, s.index, s.eps
    nxt = wrap(i + 1, n)
    material = g.material(s.sigma.vertex_of(i), s.sigma.vertex_of(nxt))

    if material is None:
        return State(s.sigma.swap_values(i, nxt), wrap(i + eps, n), eps)
    if material is EdgeMaterial.REFLECT:
        return State(s.sigma, wrap(i + eps, n), eps)
    return State(s.sigma.swap_values(i, nxt), wrap(i - eps, n), -eps)


def theta_inverse(g: BilliardsGraph, s: State) -> State:
    """Return the unique state t with theta(g, t) == s."""
    n, j, eta = s.n, s.index, s.eps
    # Every case of theta moves the index to i + eps' where eps' is the
    # outgoing orientation, so the predecessor's index is j - eta.
    i = wrap(j - eta, n)
    nxt = wrap(i + 1, n)
    material = g.material(s.sigma.vertex_of(i), s.sigma.vertex_of(nxt))

    if material is None:
        return State(s.sigma.swap_values(i, nxt), i, eta)
    if material is EdgeMaterial.REFLECT:
        return State(s.sigma, i, eta)
    return State(s.sigma.swap_values(i, nxt), i, -eta)


def orbit(g: BilliardsGraph, s: State) -> List[State]:
    """The Theta-orbit of s, in order, starting with s."""
    states = [s]
    current = theta(g, s)
    while current != s:
        states.append(current)
        current = theta(g, current)
    return states


def orbit_size(g: BilliardsGraph, s: State) -> int:
    """Least k >= 1 with Theta^k(s) == s."""
    size = 1
    current = theta(g, s)
    while current != s:
        size += 1
        current = theta(g, current)
    return size


def theta_power(
    g: BilliardsGraph,
    s: State,
    k: int,
    threshold: int = EnumerationDefaults.POWER_THRESHOLD,
) -> State:
    """
    Apply Theta k times (Theta^-1 for negative k).

    Above the threshold, k is first reduced modulo the orbit length.
    """
    if k == 0:
        return s
    step = theta if k > 0 else theta_inverse
    steps = abs(k)
    if steps > threshold:
        steps %= orbit_size(g, s)
    for _ in range(steps):
        s = step(g, s)
    return s


# =============================================================================
# Exhaustive enumeration
# =============================================================================


class StateSpace:
    """Dense ranking of all 2 * n * n! states for a fixed n

    rank(sigma, i, eps) = ((lehmer(sigma) * n + i - 1) * 2 + [eps == -1]),
    where lehmer is the lexicographic rank of the label sequence.
    """

    def __init__(self, n: int):
        self.n = n
        self.factorials = np.array(
            [math.factorial(k) for k in range(n + 1)], dtype=np.int64
        )
        self.perms = np.array(
            list(itertools.permutations(range(1, n + 1))), dtype=np.int8
        )
        count = len(self.perms)

        self.inverse = np.empty_like(self.perms)
        rows = np.arange(count)[:, None]
        self.inverse[rows, self.perms.astype(np.int64) - 1] = np.arange(
            1, n + 1, dtype=np.int8
        )

        # swap_rank[p, i-1] is the rank of s_i o perms[p]
        self.swap_rank = np.empty((count, n), dtype=np.int64)
        for i in range(1, n + 1):
            a, b = i, wrap(i + 1, n)
            swapped = self.perms.copy()
            swapped[self.perms == a] = b
            swapped[self.perms == b] = a
            self.swap_rank[:, i - 1] = self.lehmer_rank(swapped)

        logger.debug("State space for n=%d built (%d states)", n, self.size)

    @property
    def size(self) -> int:
        return 2 * self.n * len(self.perms)

    def lehmer_rank(self, rows: np.ndarray) -> np.ndarray:
        """Lexicographic ranks of permutations given as rows of labels."""
        rows = np.atleast_2d(rows)
        n = self.n
        rank = np.zeros(len(rows), dtype=np.int64)
        for j in range(n - 1):
            smaller = (rows[:, j + 1 :] < rows[:, [j]]).sum(axis=1)
            rank += smaller * self.factorials[n - 1 - j]
        return rank

    def rank(self, s: State) -> int:
        p = int(self.lehmer_rank(np.array(s.sigma.labels))[0])
        return (p * self.n + s.index - 1) * 2 + (1 if s.eps == -1 else 0)

    def unrank(self, r: int) -> State:
        flipped = r % 2
        r //= 2
        index = r % self.n + 1
        labels = tuple(int(x) for x in self.perms[r // self.n])
        return State(Labeling(labels), index, -1 if flipped else 1)


@lru_cache(maxsize=4)
def state_space(n: int) -> StateSpace:
    return StateSpace(n)


def _check_capacity(n: int, max_n: int) -> None:
    if n > max_n:
        raise CapacityExceeded(
            "state space too large for exhaustive enumeration",
            limit=max_n,
            requested=n,
        )


def successor_table(g: BilliardsGraph, workers: int = 1) -> np.ndarray:
    """
    Rank of Theta(s) for every state rank.

    Work is split by index i; each worker writes a disjoint slice, so the
    table is identical for any worker count.
    """
    n = g.n
    space = state_space(n)
    count = len(space.perms)
    matrix = g.material_matrix
    identity = np.arange(count, dtype=np.int64)
    succ = np.empty((count, n, 2), dtype=np.int32)

    def fill(i: int) -> None:
        nxt = wrap(i + 1, n)
        codes = matrix[space.inverse[:, i - 1], space.inverse[:, nxt - 1]]
        swapped = space.swap_rank[:, i - 1]
        for flipped, eps in ((0, 1), (1, -1)):
            forward = wrap(i + eps, n) - 1
            backward = wrap(i - eps, n) - 1
            succ[:, i - 1, flipped] = np.select(
                [codes == 1, codes == 2],
                [
                    (identity * n + forward) * 2 + flipped,
                    (swapped * n + backward) * 2 + (1 - flipped),
                ],
                (swapped * n + forward) * 2 + flipped,
            )

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(fill, range(1, n + 1)))
    else:
        for i in range(1, n + 1):
            fill(i)
    return succ.reshape(-1)


def orbit_roots(succ: np.ndarray) -> np.ndarray:
    """
    Smallest rank in the orbit of every state.

    Pointer doubling: after round k each entry holds the minimum over the
    next 2^k states; it stops once a round changes nothing.
    """
    label = np.arange(len(succ), dtype=succ.dtype)
    jump = succ.copy()
    rounds = 0
    while True:
        merged = np.minimum(label, label[jump])
        rounds += 1
        if np.array_equal(merged, label):
            break
        label = merged
        jump = jump[jump]
    logger.debug("Orbit labels converged after %d rounds", rounds)
    return label


def orbit_size_table(
    g: BilliardsGraph,
    workers: int = 1,
    max_n: int = EnumerationDefaults.MAX_N,
) -> np.ndarray:
    """Orbit size of every state, indexed by StateSpace rank."""
    _check_capacity(g.n, max_n)
    roots = orbit_roots(successor_table(g, workers))
    counts = np.bincount(roots, minlength=len(roots))
    return counts[roots]


@dataclass(frozen=True)
class OrbitReport:
    """Orbit sizes of Theta with multiplicities, ascending by size"""

    n: int
    orbits: Tuple[Tuple[int, int], ...]

    @classmethod
    def from_size_table(cls, n: int, sizes: np.ndarray) -> "OrbitReport":
        """Build the report from the per-state orbit sizes."""
        values, states = np.unique(sizes, return_counts=True)
        return cls(
            n,
            tuple(
                (int(size), int(count // size))
                for size, count in zip(values, states)
            ),
        )

    @property
    def total(self) -> int:
        return sum(size * count for size, count in self.orbits)

    @property
    def orbit_count(self) -> int:
        return sum(count for _, count in self.orbits)

    def fixed_points(self, k: int) -> int:
        """Number of states fixed by Theta^k."""
        return sum(
            size * count
            for size, count in self.orbits
            if k % size == 0
        )

    def order_of_power(self, k: int) -> int:
        """Order of Theta^k as a permutation of the state space."""
        return reduce(
            lambda acc, size: math.lcm(acc, size // math.gcd(size, k)),
            (size for size, _ in self.orbits),
            1,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "orbits": [
                {"size": size, "count": count} for size, count in self.orbits
            ],
            "total": self.total,
        }

    def to_csv(self) -> str:
        lines = ["size,count"]
        lines.extend(f"{size},{count}" for size, count in self.orbits)
        return "\n".join(lines) + "\n"


def orbit_decomposition(
    g: BilliardsGraph,
    workers: int = 1,
    max_n: int = EnumerationDefaults.MAX_N,
) -> OrbitReport:
    """
    Partition all 2 * n * n! states into Theta-orbits.

    Raises:
        CapacityExceeded: If n is above max_n
    """
    report = OrbitReport.from_size_table(
        g.n, orbit_size_table(g, workers, max_n)
    )
    logger.info(
        "n=%d: %d orbits over %d states", g.n, report.orbit_count, report.total
    )
    return report


def fixed_point_count(
    g: BilliardsGraph,
    k: int,
    workers: int = 1,
    max_n: int = EnumerationDefaults.MAX_N,
) -> int:
    """Number of states s with Theta^k(s) == s."""
    return orbit_decomposition(g, workers, max_n).fixed_points(k)


# =============================================================================
# Symmetries and toric promotion
# =============================================================================


def omega_normalize(s: State) -> State:
    """
    Map (sigma, i, eps) to (omega o sigma, 1, 1) for the cycle automorphism
    omega(j) = eps(j - i - (1 - eps)/2) + 1.

    omega sends the stone i + (1 - eps)/2 to 1 and the position it points
    at to 2; for eps = -1 that is j -> i + 2 - j.
    """
    n = s.n
    stone = s.index + (1 - s.eps) // 2
    omega = [wrap(s.eps * (j - stone) + 1, n) for j in range(1, n + 1)]
    return State(s.sigma.compose_values(omega), 1, 1)


def cyc_shift(s: State, k: int = 1) -> State:
    """cyc^k: add k to every label and to the index."""
    k %= s.n
    if k == 0:
        return s
    return State(s.sigma.shift(k), wrap(s.index + k, s.n), s.eps)


def toric_promotion(g: BilliardsGraph, sigma: Labeling) -> Labeling:
    """
    TPro(sigma): the labeling of Theta^n(sigma, 1, 1).

    Raises:
        RefractionPresent: If the graph has refraction edges
    """
    if g.refract:
        raise RefractionPresent(
            f"toric promotion needs E_refract empty, found {len(g.refract)}"
        )
    return theta_power(g, State(sigma, 1, 1), g.n).sigma


def toric_promotion_orbit(
    g: BilliardsGraph, sigma: Labeling
) -> List[Labeling]:
    """The TPro-orbit of sigma, starting with sigma."""
    labelings = [sigma]
    current = toric_promotion(g, sigma)
    while current != sigma:
        labelings.append(current)
        current = toric_promotion(g, current)
    return labelings


# =============================================================================
# Stone and coin diagrams
# =============================================================================


@dataclass(frozen=True)
class StoneDiagram:
    """Replicas on Cycle_n plus a directed stone

    position[k-1] is the Cycle_n vertex of replica v_k.
    """

    position: Tuple[int, ...]
    stone_at: int
    clockwise: bool

    @property
    def n(self) -> int:
        return len(self.position)

    @property
    def direction(self) -> str:
        return "clockwise" if self.clockwise else "counterclockwise"

    @property
    def target(self) -> int:
        return wrap(self.stone_at + (1 if self.clockwise else -1), self.n)

    def replica_at(self, vertex: int) -> int:
        return self.position.index(vertex) + 1

    def rotated(self, k: int) -> "StoneDiagram":
        n = self.n
        return StoneDiagram(
            tuple(wrap(p + k, n) for p in self.position),
            wrap(self.stone_at + k, n),
            self.clockwise,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "position": list(self.position),
            "stone_at": self.stone_at,
            "direction": self.direction,
        }


def stone_diagram(s: State) -> StoneDiagram:
    return StoneDiagram(s.sigma.labels, s.stone_vertex, s.eps == 1)


def rotation_offset(
    a: Union[State, StoneDiagram], b: Union[State, StoneDiagram]
) -> Optional[int]:
    """
    The k in 0..n-1 with b = cyc^k(a), or None if b is no rotation of a.
    """
    if isinstance(a, State):
        a = stone_diagram(a)
    if isinstance(b, State):
        b = stone_diagram(b)
    if a.n != b.n:
        return None
    for k in range(a.n):
        if a.rotated(k) == b:
            return k
    return None


def coin_position(s: State) -> int:
    """Graph vertex sigma^-1(i + (1 - eps)/2) whose replica holds the stone."""
    return s.sigma.vertex_of(s.stone_vertex)


def coin_trace(g: BilliardsGraph, s: State, steps: int) -> List[int]:
    """Coin positions at times 0..steps."""
    if steps < 0:
        raise StateError("must be non-negative", "steps", steps)
    trace = [coin_position(s)]
    for _ in range(steps):
        s = theta(g, s)
        trace.append(coin_position(s))
    return trace


class CoinMove(NamedTuple):
    """The coin is on source at time and on target at time + 1"""

    time: int
    source: int
    target: int


def coin_crossings(g: BilliardsGraph, s: State, steps: int) -> List[CoinMove]:
    """Every coin move within times 0..steps."""
    trace = coin_trace(g, s, steps)
    return [
        CoinMove(t, trace[t], trace[t + 1])
        for t in range(steps)
        if trace[t] != trace[t + 1]
    ]
