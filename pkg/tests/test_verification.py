"""Tests for the verification suites"""

import pytest

from tests.graphs import leaf_tree_n5, leaf_tree_start, seven_cycle
from toric_billiards import verification
from toric_billiards.dynamics import State
from toric_billiards.exceptions import InternalMismatch, ValidationError
from toric_billiards.verification import (
    MAX_REPORTED_FAILURES,
    SuiteResult,
    VerificationRunner,
    all_forests,
    material_assignments,
)


@pytest.fixture
def runner():
    yield VerificationRunner(seed=7)


class TestSuiteResult:
    def test_failures_are_capped(self):
        result = SuiteResult("demo", {})
        for k in range(MAX_REPORTED_FAILURES + 5):
            result.fail(k=k)
        assert result.failure_count == MAX_REPORTED_FAILURES + 5
        assert len(result.failures) == MAX_REPORTED_FAILURES
        assert not result.ok

    def test_details_merge_into_dict(self):
        result = SuiteResult("demo", {"n": 3}, checked=4)
        result.details["graphs"] = 2
        assert result.to_dict() == {
            "suite": "demo",
            "parameters": {"n": 3},
            "checked": 4,
            "ok": True,
            "failure_count": 0,
            "failures": [],
            "graphs": 2,
        }


class TestEnumerators:
    def test_forest_counts(self):
        assert sum(1 for _ in all_forests(3)) == 7
        assert sum(1 for _ in all_forests(4)) == 38

    def test_material_assignments(self):
        splits = list(material_assignments([(1, 2), (2, 3)]))
        assert len(splits) == 4
        for refract, reflect in splits:
            assert refract | reflect == {(1, 2), (2, 3)}
            assert not refract & reflect


class TestRandomInputs:
    def test_same_seed_same_inputs(self):
        a, b = VerificationRunner(seed=3), VerificationRunner(seed=3)
        assert a.random_tree(6) == b.random_tree(6)
        assert a.random_state(6) == b.random_state(6)
        assert a.random_window(4) == b.random_window(4)

    def test_random_tree_is_a_tree(self, runner):
        for n in range(3, 8):
            g = runner.random_tree(n)
            assert len(g.edges) == n - 1
            assert g.is_forest()

    def test_random_even_cycle(self, runner):
        for _ in range(20):
            g = runner.random_even_cycle(6)
            assert g.is_cycle()
            assert len(g.refract) % 2 == 0

    def test_random_window_sum(self, runner):
        u = runner.random_window(5, spread=3)
        assert sum(u.window) == 15


class TestForestSuite:
    def test_exhaustive_n3(self, runner):
        result = runner.verify_forest(3, exhaustive=True)
        assert result.ok
        assert result.details["graphs"] == 19
        assert result.checked == 19 * 36

    def test_exhaustive_n4(self, runner):
        assert runner.verify_forest(4, exhaustive=True).ok

    def test_random(self, runner):
        result = runner.verify_forest(5, samples=40)
        assert result.ok
        assert result.checked == 40

    @pytest.mark.slow
    def test_exhaustive_n5(self, runner):
        result = runner.verify_forest(5, exhaustive=True)
        assert result.ok
        assert result.checked == result.details["graphs"] * 1200

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [6, 7])
    def test_random_thousand(self, runner, n):
        result = runner.verify_forest(n, samples=1000)
        assert result.ok
        assert result.checked == 1000


class TestCycleSuite:
    def test_exhaustive_n4(self, runner):
        result = runner.verify_cycle(4, exhaustive=True)
        assert result.ok
        assert result.details["material_sets"] == 8
        assert result.checked == 8 * 24

    @pytest.mark.slow
    def test_exhaustive_n5(self, runner):
        assert runner.verify_cycle(5, exhaustive=True).ok

    @pytest.mark.slow
    def test_exhaustive_n6(self, runner):
        result = runner.verify_cycle(6, exhaustive=True)
        assert result.ok
        assert result.details["material_sets"] == 32

    @pytest.mark.slow
    def test_random_n7(self):
        result = VerificationRunner(seed=1).verify_cycle(7, samples=100)
        assert result.ok, result.failures[:3]

    def test_random(self, runner):
        assert runner.verify_cycle(6, samples=20).ok

    def test_gap_sum_mismatch_is_recorded(self, runner, monkeypatch):
        def broken(g, sigma):
            raise InternalMismatch("gap sum 5 is not a multiple of 3")

        monkeypatch.setattr(verification, "cycle_invariants", broken)
        result = runner.verify_cycle(4, exhaustive=True)
        assert not result.ok
        assert result.failure_count == 8 * 24
        assert result.failures[0]["checks"] == [
            "gap sum 5 is not a multiple of 3"
        ]


class TestLiftSuite:
    def test_random_steps(self, runner):
        result = runner.verify_lift(steps=200)
        assert result.ok
        assert result.checked == 200
        assert result.parameters["n"] == [3, 4, 5]

    @pytest.mark.slow
    def test_ten_thousand_steps(self, runner):
        result = runner.verify_lift(steps=10_000)
        assert result.ok
        assert result.checked == 10_000


class TestLemmaSuite:
    def test_leaf_tree(self, runner):
        result = SuiteResult("lemma", {})
        runner.check_lemma(leaf_tree_n5(), leaf_tree_start(), result)
        assert result.checked > 0
        assert result.ok

    def test_random_trees(self, runner):
        result = runner.verify_lemma(trees=8, max_n=5)
        assert result.ok
        assert result.checked > 0

    @pytest.mark.slow
    def test_hundred_trees(self, runner):
        result = runner.verify_lemma(trees=100, max_n=7)
        assert result.ok
        assert result.parameters == {"trees": 100, "max_n": 7}

    def test_needs_a_tree(self, runner):
        with pytest.raises(ValidationError):
            runner.check_lemma(
                seven_cycle(),
                State.of(range(1, 8)),
                SuiteResult("lemma", {}),
            )

    def test_max_n(self, runner):
        with pytest.raises(ValidationError):
            runner.verify_lemma(trees=1, max_n=2)


class TestSievingSuites:
    def test_csp(self, runner):
        result = runner.verify_csp(4)
        assert result.ok
        assert result.details["report"]["F"] == [96, 0, 0, 96]

    def test_tableaux(self, runner):
        result = runner.verify_tableaux(6)
        assert result.ok
        assert result.checked == 1 + 2 + 3 + 5 + 7 + 11

    def test_tolerance_reaches_root_averages(self, monkeypatch):
        tolerances = set()
        original = verification.f_div_count

        def spy(lam, N, tolerance):
            tolerances.add(tolerance)
            return original(lam, N, tolerance)

        monkeypatch.setattr(verification, "f_div_count", spy)
        runner = VerificationRunner(seed=7, tolerance=1e-9)
        assert runner.verify_tableaux(4).ok
        assert tolerances == {1e-9}


class TestDispatch:
    def test_run_drops_unset_arguments(self, runner):
        result = runner.run("forest", n=3, exhaustive=True, samples=None)
        assert result.suite == "forest"
        assert result.ok

    def test_unknown_suite(self, runner):
        with pytest.raises(ValidationError):
            runner.run("nope")
