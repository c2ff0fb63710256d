"""
LangGraph state graphs for self-tests and walk experiments.
"""

from graphs.selftest_graph import build_selftest_graph, run_selftest
from graphs.walk_graph import build_walk_graph, run_walk_experiment
