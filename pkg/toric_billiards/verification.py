"""
Verification Suites

Oracle-equivalence runs behind ``toric-billiards verify``: brute-force
orbit sizes against the forest and cycle formulas, the lifted map against
Theta, the first-return lemma on random trees, and the cyclic sieving
checks. Each suite returns a SuiteResult; mismatches are collected, not
raised.
"""

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterator, List, Sequence, Tuple

import networkx as nx
import numpy as np

from .affine_lift import (
    AffinePermutation,
    alcove_point,
    classify_wall,
    project_labeling,
    separating_hyperplane,
    theta_tilde,
)
from .constants import (
    EdgeMaterial,
    EnumerationDefaults,
    SievingDefaults,
    VerificationDefaults,
    WallKind,
)
from .dynamics import (
    State,
    coin_crossings,
    coin_position,
    orbit_size,
    orbit_size_table,
    rotation_offset,
    state_space,
    theta,
)
from .exceptions import ValidationError, VerificationError
from .graph_core import BilliardsGraph, Labeling, chi, sign_partition, wrap
from .logging_config import LoggerMixin
from .predictors import (
    cycle_a_sequence,
    cycle_invariants,
    cycle_orbit_size,
    forest_orbit_size,
    predict_orbit_size,
    replica_walk_a_sequence,
    subtree_size,
)
from .sieving import (
    f_div_count,
    f_poly,
    partitions_of,
    standard_tableaux,
    verify_csp,
)

MAX_REPORTED_FAILURES = 20

_WALL_FOR_MATERIAL = {
    None: WallKind.WINDOW,
    EdgeMaterial.REFLECT: WallKind.MIRROR,
    EdgeMaterial.REFRACT: WallKind.METALENS,
}


@dataclass
class SuiteResult:
    """Outcome of one verification suite"""

    suite: str
    parameters: Dict[str, Any]
    checked: int = 0
    failure_count: int = 0
    failures: List[Dict[str, Any]] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failure_count == 0

    def fail(self, **details: Any) -> None:
        self.failure_count += 1
        if len(self.failures) < MAX_REPORTED_FAILURES:
            self.failures.append(details)

    def to_dict(self) -> Dict[str, Any]:
        result = {
            "suite": self.suite,
            "parameters": self.parameters,
            "checked": self.checked,
            "ok": self.ok,
            "failure_count": self.failure_count,
            "failures": self.failures,
        }
        if self.details:
            result.update(self.details)
        return result


def all_forests(n: int) -> Iterator[List[tuple]]:
    """Edge lists of every labelled forest on 1..n."""
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for size in range(n):
        for edges in itertools.combinations(pairs, size):
            graph = nx.Graph()
            graph.add_nodes_from(range(1, n + 1))
            graph.add_edges_from(edges)
            if nx.is_forest(graph):
                yield list(edges)


def material_assignments(
    edges: Sequence[tuple],
) -> Iterator[Tuple[FrozenSet[tuple], FrozenSet[tuple]]]:
    """Every (refract, reflect) split of a fixed edge list."""
    n_edges = len(edges)
    for mask in range(2 ** n_edges):
        refract = frozenset(
            edge for k, edge in enumerate(edges) if mask >> k & 1
        )
        yield refract, frozenset(edges) - refract


def _state_coins(n: int) -> np.ndarray:
    """Coin vertex of every state, indexed by StateSpace rank."""
    space = state_space(n)
    ranks = np.arange(space.size, dtype=np.int64)
    flipped = ranks % 2
    index = (ranks // 2) % n
    stone = (index + flipped) % n
    return space.inverse[ranks // (2 * n), stone].astype(np.int64)


class VerificationRunner(LoggerMixin):
    """Runs the verification suites with one random generator"""

    def __init__(
        self,
        seed: int = VerificationDefaults.SEED,
        workers: int = 1,
        max_n: int = EnumerationDefaults.MAX_N,
        tolerance: float = SievingDefaults.ROOT_TOLERANCE,
    ):
        """
        Initialize the runner.

        Args:
            seed: Seed for every randomized choice
            workers: Threads used by exhaustive enumeration
            max_n: Largest n accepted for exhaustive enumeration
            tolerance: Allowed distance of a root-of-unity evaluation
                from the nearest integer
        """
        self.seed = seed
        self.workers = workers
        self.max_n = max_n
        self.tolerance = tolerance
        self.rng = np.random.default_rng(seed)

    # ------------------------------------------------------------------
    # Random inputs
    # ------------------------------------------------------------------

    def random_material(self) -> EdgeMaterial:
        if self.rng.random() < 0.5:
            return EdgeMaterial.REFRACT
        return EdgeMaterial.REFLECT

    def random_tree(self, n: int) -> BilliardsGraph:
        """Uniform labelled tree on 1..n with random materials."""
        sequence = self.rng.integers(0, n, size=n - 2).tolist()
        edges = nx.from_prufer_sequence(sequence).edges()
        return BilliardsGraph.from_edges(
            n, [(a + 1, b + 1, self.random_material()) for a, b in edges]
        )

    def random_forest(self, n: int) -> BilliardsGraph:
        """A random tree with each edge dropped with probability 1/4."""
        tree = self.random_tree(n)
        kept = [e for e in tree.tagged_edges() if self.rng.random() >= 0.25]
        return BilliardsGraph.from_edges(n, kept)

    def random_graph(self, n: int) -> BilliardsGraph:
        """Each pair is absent, reflect or refract with equal odds."""
        edges = []
        for a, b in itertools.combinations(range(1, n + 1), 2):
            kind = int(self.rng.integers(3))
            if kind:
                material = (
                    EdgeMaterial.REFLECT if kind == 1 else EdgeMaterial.REFRACT
                )
                edges.append((a, b, material))
        return BilliardsGraph.from_edges(n, edges)

    def random_labeling(self, n: int) -> Labeling:
        return Labeling(tuple(int(x) + 1 for x in self.rng.permutation(n)))

    def random_state(self, n: int) -> State:
        return State(
            self.random_labeling(n),
            int(self.rng.integers(1, n + 1)),
            1 if self.rng.random() < 0.5 else -1,
        )

    def random_window(self, n: int, spread: int = 2) -> AffinePermutation:
        """A permutation shifted by a random zero-sum multiple of n."""
        gamma = self.rng.integers(-spread, spread + 1, size=n)
        gamma[-1] -= gamma.sum()
        perm = self.rng.permutation(n) + 1
        return AffinePermutation(tuple(int(x) for x in perm + n * gamma))

    def random_even_cycle(self, n: int) -> BilliardsGraph:
        """n-cycle through a random vertex order, even refraction count."""
        materials = [self.random_material() for _ in range(n)]
        refract = sum(m is EdgeMaterial.REFRACT for m in materials)
        if refract % 2:
            k = int(self.rng.integers(n))
            materials[k] = (
                EdgeMaterial.REFLECT
                if materials[k] is EdgeMaterial.REFRACT
                else EdgeMaterial.REFRACT
            )
        order = [int(x) + 1 for x in self.rng.permutation(n)]
        return BilliardsGraph.cycle(materials, order)

    # ------------------------------------------------------------------
    # Forest theorem
    # ------------------------------------------------------------------

    def verify_forest(
        self,
        n: int = VerificationDefaults.FOREST_N,
        exhaustive: bool = False,
        samples: int = VerificationDefaults.SAMPLES,
    ) -> SuiteResult:
        """
        Brute-force orbit sizes against |V_T| n (n-1) / gcd(n, chi(T)).

        Exhaustive mode covers every labelled forest on n vertices, every
        material split of its edges and every state.
        """
        result = SuiteResult(
            "forest", {"n": n, "exhaustive": exhaustive, "samples": samples}
        )
        if exhaustive:
            self._forest_exhaustive(n, result)
        else:
            for _ in range(samples):
                g = self.random_forest(n)
                s = self.random_state(n)
                brute = orbit_size(g, s)
                predicted = forest_orbit_size(g, s)
                result.checked += 1
                if brute != predicted:
                    result.fail(
                        graph=g.to_dict(),
                        state=s.to_dict(),
                        brute=brute,
                        predicted=predicted,
                    )
        self.logger.info(
            "forest n=%d: %d checks, %d failures",
            n,
            result.checked,
            result.failure_count,
        )
        return result

    def _forest_exhaustive(self, n: int, result: SuiteResult) -> None:
        coins = _state_coins(n)
        graphs = 0
        for edges in all_forests(n):
            for refract, reflect in material_assignments(edges):
                g = BilliardsGraph(n, reflect, refract)
                graphs += 1
                predicted_by_vertex = np.zeros(n + 1, dtype=np.int64)
                for component in nx.connected_components(g.nx_graph):
                    size = len(component) * n * (n - 1) // math.gcd(
                        n, chi(g, component)
                    )
                    for v in component:
                        predicted_by_vertex[v] = size
                brute = orbit_size_table(g, self.workers, self.max_n)
                predicted = predicted_by_vertex[coins]
                result.checked += len(brute)
                for r in np.flatnonzero(brute != predicted):
                    s = state_space(n).unrank(int(r))
                    result.fail(
                        graph=g.to_dict(),
                        state=s.to_dict(),
                        brute=int(brute[r]),
                        predicted=int(predicted[r]),
                    )
        result.details["graphs"] = graphs

    # ------------------------------------------------------------------
    # Cycle theorem
    # ------------------------------------------------------------------

    def verify_cycle(
        self,
        n: int = VerificationDefaults.CYCLE_N,
        exhaustive: bool = False,
        samples: int = VerificationDefaults.SAMPLES,
    ) -> SuiteResult:
        """
        Brute-force orbit sizes on even-refraction cycles against
        (n p / gcd(n, mu)) (mu m + (n - mu)(n - 1 - m)).

        Also cross-checks the gap sequence with the literal replica walk
        and, for all-reflect cycles, the size p m n.
        """
        result = SuiteResult(
            "cycle", {"n": n, "exhaustive": exhaustive, "samples": samples}
        )
        if exhaustive:
            self._cycle_exhaustive(n, result)
        else:
            for _ in range(samples):
                g = self.random_even_cycle(n)
                s = self.random_state(n)
                brute = orbit_size(g, s)
                predicted = predict_orbit_size(g, s).size
                result.checked += 1
                if brute != predicted:
                    result.fail(
                        graph=g.to_dict(),
                        state=s.to_dict(),
                        brute=brute,
                        predicted=predicted,
                    )
        self.logger.info(
            "cycle n=%d: %d checks, %d failures",
            n,
            result.checked,
            result.failure_count,
        )
        return result

    def _cycle_exhaustive(self, n: int, result: SuiteResult) -> None:
        space = state_space(n)
        base_ranks = np.arange(len(space.perms), dtype=np.int64) * 2 * n
        material_sets = 0
        for mask in range(2 ** n):
            if bin(mask).count("1") % 2:
                continue
            material_sets += 1
            materials = [
                EdgeMaterial.REFRACT if mask >> k & 1 else EdgeMaterial.REFLECT
                for k in range(n)
            ]
            g = BilliardsGraph.cycle(materials)
            brute = orbit_size_table(g, self.workers, self.max_n)[base_ranks]
            for row, labels in enumerate(space.perms):
                sigma = Labeling(tuple(int(x) for x in labels))
                self._check_cycle_labeling(
                    g, sigma, int(brute[row]), mask == 0, result
                )
        result.details["material_sets"] = material_sets

    def _check_cycle_labeling(
        self,
        g: BilliardsGraph,
        sigma: Labeling,
        brute: int,
        all_reflect: bool,
        result: SuiteResult,
    ) -> None:
        result.checked += 1
        try:
            invariants = cycle_invariants(g, sigma)
        except VerificationError as e:
            result.fail(
                graph=g.to_dict(), labels=list(sigma.labels), checks=[str(e)]
            )
            return
        predicted = cycle_orbit_size(g, sigma)
        walked = replica_walk_a_sequence(invariants.ordering, sigma)
        problems = []
        if brute != predicted:
            problems.append("orbit size")
        if walked != cycle_a_sequence(invariants.ordering, sigma):
            problems.append("gap sequence")
        if all_reflect and brute != invariants.p * invariants.m * g.n:
            problems.append("all-reflect size")
        if problems:
            result.fail(
                graph=g.to_dict(),
                labels=list(sigma.labels),
                brute=brute,
                predicted=predicted,
                invariants=invariants.to_dict(),
                checks=problems,
            )

    # ------------------------------------------------------------------
    # Affine lift
    # ------------------------------------------------------------------

    def verify_lift(
        self,
        ns: Sequence[int] = (3, 4, 5),
        steps: int = VerificationDefaults.LIFT_STEPS,
    ) -> SuiteResult:
        """
        Random single steps of the lifted map.

        Each step checks that projection commutes with Theta, that u and
        s-tilde_i u share the wall H, that their alcove points lie on
        opposite sides of H, and that the wall's material is the material
        of the edge named by H.
        """
        result = SuiteResult("lift", {"n": list(ns), "steps": steps})
        for _ in range(steps):
            n = int(self.rng.choice(ns))
            g = self.random_graph(n)
            u = self.random_window(n)
            i = int(self.rng.integers(1, n + 1))
            eps = 1 if self.rng.random() < 0.5 else -1
            result.checked += 1
            problems = self._lift_problems(g, u, i, eps)
            if problems:
                result.fail(
                    graph=g.to_dict(),
                    window=list(u.window),
                    i=i,
                    eps=eps,
                    checks=problems,
                )
        self.logger.info(
            "lift: %d steps, %d failures", result.checked, result.failure_count
        )
        return result

    @staticmethod
    def _lift_problems(
        g: BilliardsGraph, u: AffinePermutation, i: int, eps: int
    ) -> List[str]:
        problems = []
        lifted = theta_tilde(g, u, i, eps)
        if lifted.project() != theta(g, State(project_labeling(u), i, eps)):
            problems.append("projection")

        wall = separating_hyperplane(u, i)
        kind = classify_wall(g, u, i)
        if kind is not _WALL_FOR_MATERIAL[g.material(wall.i, wall.j)]:
            problems.append("material")
        if lifted.u != u:
            if separating_hyperplane(lifted.u, i) != wall:
                problems.append("shared wall")
            before = wall.side(alcove_point(u))
            after = wall.side(alcove_point(lifted.u))
            if before * after != -1:
                problems.append("sides")
        return problems

    # ------------------------------------------------------------------
    # First-return lemma
    # ------------------------------------------------------------------

    def verify_lemma(
        self,
        trees: int = VerificationDefaults.LEMMA_TREES,
        max_n: int = 7,
    ) -> SuiteResult:
        """
        Coin crossings on random trees with 3 <= n <= max_n.

        Checks the first-return time, the unique pointing times inside the
        return window, the stone-diagram rotation one step after the
        return, and the rotation offset delta at leaf crossings.
        """
        if max_n < 3:
            raise ValidationError("must be at least 3", "max_n", max_n)
        result = SuiteResult("lemma", {"trees": trees, "max_n": max_n})
        for _ in range(trees):
            n = int(self.rng.integers(3, max_n + 1))
            g = self.random_tree(n)
            self.check_lemma(g, self.random_state(n), result)
        self.logger.info(
            "lemma: %d crossings, %d failures",
            result.checked,
            result.failure_count,
        )
        return result

    def check_lemma(
        self, g: BilliardsGraph, s: State, result: SuiteResult
    ) -> None:
        """Check every complete crossing window along one tree trajectory."""
        n = g.n
        if not nx.is_tree(g.nx_graph):
            raise ValidationError("lemma checks need a tree", "graph")
        step = n - 1
        horizon = n * n * (n - 1) + n * (n - 1) + 1
        states = [s]
        for _ in range(horizon):
            states.append(theta(g, states[-1]))
        coins = [coin_position(x) for x in states]
        pointed = [x.sigma.vertex_of(x.target_vertex) for x in states]
        degree = dict(g.nx_graph.degree())

        for t, source, target in coin_crossings(g, s, horizon):
            eta = subtree_size(g, target, source)
            back = t + eta * step
            if back + 1 > horizon:
                continue
            result.checked += 1
            problems = []

            returned = next(
                (
                    tau
                    for tau in range(t + 1, horizon)
                    if coins[tau] == target and coins[tau + 1] == source
                ),
                None,
            )
            if returned != back:
                problems.append("first return")

            tree = g.nx_graph.copy()
            tree.remove_edge(source, target)
            side = nx.node_connected_component(tree, target)
            seen = Counter(
                (coins[tau], pointed[tau]) for tau in range(t + 1, back + 1)
            )
            if any(
                seen[(vj, vk)] != 1
                for vj in side
                for vk in range(1, n + 1)
                if vk != vj
            ):
                problems.append("pointing times")

            here = states[t]
            swapped = State(
                here.sigma.swap_values(here.index, wrap(here.index + 1, n)),
                wrap(here.index + here.eps, n),
                here.eps,
            )
            if rotation_offset(swapped, states[back + 1]) is None:
                problems.append("rotation")

            if degree[source] == 1 and t + n * step <= horizon:
                partition = sign_partition(g, range(1, n + 1), source)
                if here.eps == -1:
                    partition = partition.swapped()
                delta = rotation_offset(here, states[t + n * step])
                if delta != (-partition.imbalance) % n:
                    problems.append("delta")

            if problems:
                result.fail(
                    graph=g.to_dict(),
                    start=s.to_dict(),
                    time=t,
                    move=[source, target],
                    checks=problems,
                )

    # ------------------------------------------------------------------
    # Sieving
    # ------------------------------------------------------------------

    def verify_csp(self, n: int = 4) -> SuiteResult:
        """Cyclic sieving triple on the all-refraction n-cycle."""
        report = verify_csp(n, self.workers, self.tolerance)
        result = SuiteResult("csp", {"n": n})
        result.checked = len(report.rows) + 2
        for failure in report.failures:
            result.fail(check=failure)
        result.details["report"] = report.to_dict()
        return result

    def verify_tableaux(self, max_size: int = 8) -> SuiteResult:
        """
        q-identities for every partition of N <= max_size: the major index
        and hook formulas agree, f^lam(1) counts tableaux, the root-of-unity
        averages are integers matching direct counts, and the squares of
        f^lam(1) sum to N!.
        """
        result = SuiteResult("tableaux", {"max_size": max_size})
        for N in range(1, max_size + 1):
            square_sum = 0
            for lam in partitions_of(N):
                result.checked += 1
                try:
                    poly = f_poly(lam)
                    count = poly(1)
                    if count != len(standard_tableaux(lam)):
                        result.fail(shape=str(lam), check="tableau count")
                    for d in range(1, N + 1):
                        if N % d == 0:
                            f_div_count(lam, d, self.tolerance)
                except VerificationError as e:
                    result.fail(shape=str(lam), check=str(e))
                    continue
                square_sum += count * count
            if square_sum != math.factorial(N):
                result.fail(N=N, check="sum of squares")
        self.logger.info(
            "tableaux N<=%d: %d shapes, %d failures",
            max_size,
            result.checked,
            result.failure_count,
        )
        return result

    def run(self, suite: str, **kwargs: Any) -> SuiteResult:
        """Dispatch a suite by name."""
        suites = {
            "forest": self.verify_forest,
            "cycle": self.verify_cycle,
            "lift": self.verify_lift,
            "lemma": self.verify_lemma,
            "csp": self.verify_csp,
            "tableaux": self.verify_tableaux,
        }
        if suite not in suites:
            raise ValidationError(f"unknown suite {suite!r}", "suite", suite)
        return suites[suite](
            **{k: v for k, v in kwargs.items() if v is not None}
        )
