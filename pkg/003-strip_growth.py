"""
Experiment 003: Strip growth.

Axis strips of F(a, b) against 2k + 1, then strips of <a, b, u5> between the
workspace ends with their log-log slopes and the ℏ-filtered criterion.
"""

import argparse
import itertools

from rich.console import Console
from rich.table import Table

from config.logging_config import configure_logging
from suites.base import workspace
from walks.strips import strip_count

console = Console()


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Experiment 003: strip growth")
    parser.add_argument("--axis-kmax", type=int, default=12)
    parser.add_argument("--kmax", type=int, default=8)
    parser.add_argument("--threads", type=int, default=1)
    args = parser.parse_args()

    configure_logging()
    free = workspace("free_ab")
    axis = strip_count(free.group, free.ends["a_minus"], free.ends["a_plus"], args.axis_kmax, args.threads)
    console.print(f"F(a, b) axis counts: {axis.counts()}")
    console.print(f"expected:            {[2 * k + 1 for k in range(1, args.axis_kmax + 1)]}")

    ws = workspace("not_min")
    table = Table(title=f"Strips of {ws.config.name} up to k={args.kmax}")
    for col in ("a", "b", "counts", "slope", "criterion at kmax"):
        table.add_column(col)
    for (na, a), (nb, b) in itertools.combinations(sorted(ws.ends.items()), 2):
        result = strip_count(ws.group, a, b, args.kmax, args.threads)
        last = result.rows[-1]
        table.add_row(na, nb, " ".join(map(str, result.counts())), f"{result.slope:.3f}", f"{last.criterion:.4f}")
    console.print(table)
