"""
Self-test supervisor graph.

Plans the requested suites, runs them one by one, checks every result and
finishes with a report hash that only depends on the seed, the scale and
the code.
"""

import hashlib
import logging
import operator
from typing import Annotated, TypedDict

from langgraph.graph import StateGraph, START, END
from pydantic import BaseModel, Field, field_validator

from config.config import DEFAULT_SEED
from suites import FULL, REDUCED, all_suites, suites_by_name

logger = logging.getLogger(__name__)

MAX_ITERATIONS = 4 * len(all_suites) + 10

# Markers of a failed suite in its result line
ERROR_PATTERNS = [
    "FAIL ",
    "suite error:",
    "aborted",
]


def _result_has_error(text: str) -> bool:
    lower = text.lower()
    return any(p.lower() in lower for p in ERROR_PATTERNS)


def report_hash(lines: list[str]) -> str:
    """SHA-256 of the result lines, one per line."""
    return hashlib.sha256("\n".join(lines).encode("utf-8")).hexdigest()


# ---------------------------------------------------------------------------
# Plan model
# ---------------------------------------------------------------------------


class SuitePlan(BaseModel):
    """Which suites to run and at what scale."""

    scale: str = Field(default="reduced", description="'reduced' or 'full'")
    seed: int = Field(default=DEFAULT_SEED, ge=0, lt=2**64, description="Master seed of every suite")
    suites: list[str] = Field(default_factory=list, description="Suite names; empty means all")

    @field_validator("scale")
    @classmethod
    def _scale(cls, value: str) -> str:
        if value not in ("reduced", "full"):
            raise ValueError(f"unknown scale {value!r}")
        return value

    @field_validator("suites")
    @classmethod
    def _known(cls, value: list[str]) -> list[str]:
        unknown = [s for s in value if s not in suites_by_name]
        if unknown:
            raise ValueError(f"unknown suites: {', '.join(unknown)}")
        return value


# ---------------------------------------------------------------------------
# State
# ---------------------------------------------------------------------------


class SelftestState(TypedDict):
    plan: dict
    planned_suites: list[str]
    current_step: int
    execution_results: Annotated[list[str], operator.add]
    reports: Annotated[list[dict], operator.add]
    failures: int
    status: str  # starting, planned, running, reported, complete, failed
    iteration_count: int
    next_node: str
    report_hash: str


# ---------------------------------------------------------------------------
# Nodes
# ---------------------------------------------------------------------------


def supervisor(state: SelftestState) -> dict:
    """Deterministic routing.

    1. No plan yet                 → planner
    2. Suites remaining            → suite_runner
    3. All suites run, no report   → reporter
    4. Reported                    → complete or failed
    5. Max iterations exceeded     → failed
    """
    iteration = state.get("iteration_count", 0) + 1
    if iteration > MAX_ITERATIONS:
        return {"next_node": "failed", "status": "failed", "iteration_count": iteration}

    planned = state.get("planned_suites", [])
    current = state.get("current_step", 0)
    status = state.get("status", "starting")

    if status == "starting":
        next_node = "planner"
    elif current < len(planned):
        next_node = "suite_runner"
    elif status != "reported":
        next_node = "reporter"
    elif state.get("failures", 0):
        next_node = "failed"
    else:
        next_node = "complete"
    return {"next_node": next_node, "iteration_count": iteration}


def supervisor_router(state: SelftestState) -> str:
    return state["next_node"]


def planner(state: SelftestState) -> dict:
    plan = SuitePlan.model_validate(state.get("plan", {}))
    names = plan.suites or [fn.__name__ for fn in all_suites]
    # keep the canonical order whatever order was requested
    ordered = [fn.__name__ for fn in all_suites if fn.__name__ in names]
    logger.info("self-test plan: %d suites at %s scale, seed %d", len(ordered), plan.scale, plan.seed)
    return {
        "plan": plan.model_dump(),
        "planned_suites": ordered,
        "current_step": 0,
        "failures": 0,
        "status": "planned",
    }


def suite_runner(state: SelftestState) -> dict:
    """Run the next planned suite; errors become failed result lines."""
    plan = SuitePlan.model_validate(state["plan"])
    scale = FULL if plan.scale == "full" else REDUCED
    name = state["planned_suites"][state["current_step"]]
    fn = suites_by_name[name]
    try:
        result = fn(scale, plan.seed)
        line = str(result)
        report = {
            "suite": name,
            "passed": result.passed,
            "checked": result.checked,
            "violations": result.violations,
            "detail": result.detail,
        }
    except Exception as e:
        logger.exception("suite %s raised", name)
        line = f"FAIL {name}: suite error: {type(e).__name__}: {e}"
        report = {"suite": name, "passed": False, "checked": 0, "violations": 0, "detail": line}
    logger.info(line)
    return {"execution_results": [line], "reports": [report], "status": "running"}


def step_result_checker(state: SelftestState) -> dict:
    """Count a failure when the last line reports one, then advance."""
    results = state.get("execution_results", [])
    last = results[-1] if results else ""
    failures = state.get("failures", 0) + (1 if _result_has_error(last) else 0)
    return {"current_step": state.get("current_step", 0) + 1, "failures": failures}


def reporter(state: SelftestState) -> dict:
    plan = state["plan"]
    header = f"selftest scale={plan['scale']} seed={plan['seed']}"
    digest = report_hash([header, *state.get("execution_results", [])])
    return {"report_hash": digest, "status": "reported"}


def complete(state: SelftestState) -> dict:
    return {"status": "complete"}


def failed(state: SelftestState) -> dict:
    return {"status": "failed"}


# ---------------------------------------------------------------------------
# Graph builder
# ---------------------------------------------------------------------------


def build_selftest_graph():
    """Build and compile the self-test supervisor graph."""
    builder = StateGraph(SelftestState)

    builder.add_node("supervisor", supervisor)
    builder.add_node("planner", planner)
    builder.add_node("suite_runner", suite_runner)
    builder.add_node("step_result_checker", step_result_checker)
    builder.add_node("reporter", reporter)
    builder.add_node("complete", complete)
    builder.add_node("failed", failed)

    builder.add_edge(START, "supervisor")
    builder.add_conditional_edges(
        "supervisor",
        supervisor_router,
        {
            "planner": "planner",
            "suite_runner": "suite_runner",
            "reporter": "reporter",
            "complete": "complete",
            "failed": "failed",
        },
    )
    builder.add_edge("planner", "supervisor")
    builder.add_edge("suite_runner", "step_result_checker")
    builder.add_edge("step_result_checker", "supervisor")
    builder.add_edge("reporter", "supervisor")

    builder.add_edge("complete", END)
    builder.add_edge("failed", END)

    return builder.compile()


def initial_state(plan: SuitePlan) -> SelftestState:
    return {
        "plan": plan.model_dump(),
        "planned_suites": [],
        "current_step": 0,
        "execution_results": [],
        "reports": [],
        "failures": 0,
        "status": "starting",
        "iteration_count": 0,
        "next_node": "",
        "report_hash": "",
    }


def run_selftest(plan: SuitePlan) -> SelftestState:
    """Invoke the graph with a recursion limit large enough for every suite."""
    graph = build_selftest_graph()
    return graph.invoke(initial_state(plan), {"recursion_limit": 4 * MAX_ITERATIONS})


if __name__ == "__main__":
    result = run_selftest(SuitePlan(suites=["word_oracle", "axis_strip"]))
    for line in result["execution_results"]:
        print(line)
    print(f"Status: {result['status']}  hash: {result['report_hash']}")
