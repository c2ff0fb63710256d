"""
Walk experiment graph: sample → tabulate → residuals → verdict.

The supervisor walks the fixed pipeline and routes to `failed` as soon as a
stage reports an error; stages never retry since every stage is a pure
function of the seed.
"""

import logging
import operator
from typing import Annotated, Any, TypedDict

from langgraph.graph import StateGraph, START, END

from config.config import INCONCLUSIVE_ABORT_FRACTION
from utils.errors import ZnTreeError
from walks.cones import check_abort, run_ensemble, stationarity_residual, tabulate_cones

logger = logging.getLogger(__name__)

PIPELINE = ["sample", "tabulate", "residuals"]
MAX_ITERATIONS = 3 * len(PIPELINE) + 5

ERROR_PATTERNS = [
    "error:",
    "aborted",
]


def _result_has_error(text: str) -> bool:
    lower = text.lower()
    return any(p.lower() in lower for p in ERROR_PATTERNS)


# ---------------------------------------------------------------------------
# State
# ---------------------------------------------------------------------------


class WalkState(TypedDict):
    measure: Any  # walks.measure.Measure
    walks: int
    steps: int
    seed: int
    depth: int
    threads: int
    s_evidence: bool
    outcomes: list
    cones: Any  # walks.cones.ConeMeasure | None
    residuals: list
    planned_actions: list[str]
    current_step: int
    execution_results: Annotated[list[str], operator.add]
    status: str  # starting, running, complete, failed
    error_kind: str  # "", "aborted", "error"
    iteration_count: int
    next_node: str


# ---------------------------------------------------------------------------
# Nodes
# ---------------------------------------------------------------------------


def supervisor(state: WalkState) -> dict:
    iteration = state.get("iteration_count", 0) + 1
    if iteration > MAX_ITERATIONS:
        return {"next_node": "failed", "status": "failed", "iteration_count": iteration}
    results = state.get("execution_results", [])
    if results and _result_has_error(results[-1]):
        next_node = "failed"
    elif state.get("current_step", 0) < len(state.get("planned_actions", PIPELINE)):
        next_node = state.get("planned_actions", PIPELINE)[state.get("current_step", 0)]
    else:
        next_node = "complete"
    return {"next_node": next_node, "iteration_count": iteration}


def supervisor_router(state: WalkState) -> str:
    return state["next_node"]


def sample(state: WalkState) -> dict:
    try:
        outcomes = run_ensemble(
            state["measure"],
            state["walks"],
            state["steps"],
            state["seed"],
            state["threads"],
            s_evidence=state.get("s_evidence", False),
        )
    except ZnTreeError as e:
        return {"execution_results": [f"sample error: {e}"], "error_kind": "error"}
    drifts = [o.drift for o in outcomes]
    mean = sum(drifts) / len(drifts)
    return {
        "outcomes": outcomes,
        "current_step": state.get("current_step", 0) + 1,
        "execution_results": [f"sampled {len(outcomes)} walks x {state['steps']} steps, mean drift {mean:.6f}"],
        "status": "running",
    }


def tabulate(state: WalkState) -> dict:
    outcomes = state["outcomes"]
    try:
        share = check_abort(outcomes, INCONCLUSIVE_ABORT_FRACTION)
    except ZnTreeError as e:
        return {"execution_results": [f"aborted: {e}"], "error_kind": "aborted"}
    n = state["measure"].support[0].word.n
    cones = tabulate_cones([o.end for o in outcomes], state["depth"], n)
    return {
        "cones": cones,
        "current_step": state["current_step"] + 1,
        "execution_results": [
            f"tabulated {len(cones.table)} cones to depth {state['depth']} from {cones.samples} ends "
            f"({share:.1%} inconclusive)"
        ],
    }


def residuals(state: WalkState) -> dict:
    """Stationarity residuals of the cones the table can translate; none when it cannot."""
    try:
        rows = stationarity_residual(state["cones"], state["measure"])
    except ZnTreeError as e:
        rows = []
        note = f"residuals skipped ({e})"
    else:
        worst = max((r.residual for r in rows), default=0.0)
        note = f"{len(rows)} stationarity residuals, largest {worst:.3g}"
    return {
        "residuals": rows,
        "current_step": state["current_step"] + 1,
        "execution_results": [note],
    }


def complete(state: WalkState) -> dict:
    return {"status": "complete"}


def failed(state: WalkState) -> dict:
    return {"status": "failed"}


# ---------------------------------------------------------------------------
# Graph builder
# ---------------------------------------------------------------------------


def build_walk_graph():
    """Build and compile the walk experiment graph."""
    builder = StateGraph(WalkState)

    builder.add_node("supervisor", supervisor)
    builder.add_node("sample", sample)
    builder.add_node("tabulate", tabulate)
    builder.add_node("residuals", residuals)
    builder.add_node("complete", complete)
    builder.add_node("failed", failed)

    builder.add_edge(START, "supervisor")
    builder.add_conditional_edges(
        "supervisor",
        supervisor_router,
        {
            "sample": "sample",
            "tabulate": "tabulate",
            "residuals": "residuals",
            "complete": "complete",
            "failed": "failed",
        },
    )
    for stage in PIPELINE:
        builder.add_edge(stage, "supervisor")

    builder.add_edge("complete", END)
    builder.add_edge("failed", END)

    return builder.compile()


def run_walk_experiment(
    measure, walks: int, steps: int, seed: int, depth: int, threads: int = 1, s_evidence: bool = False
) -> WalkState:
    graph = build_walk_graph()
    return graph.invoke(
        {
            "measure": measure,
            "walks": walks,
            "steps": steps,
            "seed": seed,
            "depth": depth,
            "threads": threads,
            "s_evidence": s_evidence,
            "outcomes": [],
            "cones": None,
            "residuals": [],
            "planned_actions": list(PIPELINE),
            "current_step": 0,
            "execution_results": [],
            "status": "starting",
            "error_kind": "",
            "iteration_count": 0,
            "next_node": "",
        }
    )
