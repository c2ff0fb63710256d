"""
Z^n-free groups and their universal Z^n-trees.
"""

from groups.group import Group, GroupElement, check_lyndon_axioms, hbar_element, lyndon_c
from groups.tree import Edge, Vertex, act, dist, median, sigma
