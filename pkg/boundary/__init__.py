"""
Ends, Gromov products, ultrametric balls, lines and the tree-of-trees metric.
"""

from boundary.ends import (
    BoundaryPoint,
    EndKind,
    act_on_point,
    classify_end,
    empirical_end,
    meet,
    same_end,
    symbolic_end,
)
from boundary.compactification import (
    Ball,
    Line,
    ball_in_compactification,
    d_ultra,
    gromov,
    line_between,
    line_contains,
)
from boundary.tree_of_trees import TreeOfTrees, dbar, dbar_trace
