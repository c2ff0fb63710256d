import pytest
from pydantic import ValidationError

from graphs import selftest_graph, walk_graph
from graphs.selftest_graph import SuitePlan, run_selftest
from graphs.walk_graph import run_walk_experiment
from suites import REDUCED, suites_by_name


class TestSelftestGraph:
    def test_selected_suites_run_in_canonical_order(self):
        state = run_selftest(SuitePlan(suites=["axis_strip", "word_oracle"], seed=7))
        assert state["status"] == "complete", state["execution_results"]
        assert state["planned_suites"] == ["word_oracle", "axis_strip"]
        assert len(state["execution_results"]) == 2
        assert all(line.startswith("PASS ") for line in state["execution_results"])
        assert len(state["report_hash"]) == 64

    def test_report_hash_is_reproducible(self):
        plan = SuitePlan(suites=["periodic_laws"], seed=11)
        assert run_selftest(plan)["report_hash"] == run_selftest(plan)["report_hash"]

    def test_report_hash_depends_on_seed(self):
        a = run_selftest(SuitePlan(suites=["axis_strip"], seed=1))
        b = run_selftest(SuitePlan(suites=["axis_strip"], seed=2))
        assert a["report_hash"] != b["report_hash"]

    @pytest.mark.parametrize("fields", [{"scale": "huge"}, {"suites": ["nope"]}, {"seed": -1}])
    def test_plan_validation(self, fields):
        with pytest.raises(ValidationError):
            SuitePlan(**fields)

    def test_supervisor_routes(self):
        sup = selftest_graph.supervisor
        assert sup({"status": "starting"})["next_node"] == "planner"
        running = {"status": "running", "planned_suites": ["a", "b"], "current_step": 1}
        assert sup(running)["next_node"] == "suite_runner"
        assert sup({**running, "current_step": 2})["next_node"] == "reporter"
        done = {"status": "reported", "planned_suites": ["a"], "current_step": 1}
        assert sup({**done, "failures": 0})["next_node"] == "complete"
        assert sup({**done, "failures": 1})["next_node"] == "failed"
        over = sup({"status": "starting", "iteration_count": selftest_graph.MAX_ITERATIONS})
        assert over["next_node"] == "failed"

    def test_suite_exception_becomes_failed_line(self, monkeypatch):
        def broken(scale, seed):
            raise RuntimeError("boom")

        monkeypatch.setitem(suites_by_name, "word_oracle", broken)
        update = selftest_graph.suite_runner(
            {"plan": SuitePlan().model_dump(), "planned_suites": ["word_oracle"], "current_step": 0}
        )
        (line,) = update["execution_results"]
        assert line.startswith("FAIL word_oracle: suite error: RuntimeError")
        assert selftest_graph._result_has_error(line)

    def test_reduced_scale_is_smaller(self):
        assert REDUCED.label == "reduced"
        assert REDUCED.words < 100_000


class TestWalkGraph:
    def test_free_walk_experiment(self, free_ab):
        state = run_walk_experiment(free_ab.measure, walks=30, steps=2000, seed=5, depth=2)
        assert state["status"] == "complete", state["execution_results"]
        assert len(state["outcomes"]) == 30
        assert state["cones"].samples >= 27
        assert len(state["execution_results"]) == 3
        assert state["execution_results"][0].startswith("sampled 30 walks x 2000 steps")

    def test_supervisor_stops_on_abort(self):
        state = {"execution_results": ["aborted: too many inconclusive walks"], "current_step": 1}
        assert walk_graph.supervisor(state)["next_node"] == "failed"

    def test_supervisor_follows_pipeline(self):
        for i, stage in enumerate(walk_graph.PIPELINE):
            update = walk_graph.supervisor({"current_step": i, "execution_results": ["ok"]})
            assert update["next_node"] == stage
        update = walk_graph.supervisor({"current_step": len(walk_graph.PIPELINE)})
        assert update["next_node"] == "complete"
