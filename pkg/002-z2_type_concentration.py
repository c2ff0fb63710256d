"""
Experiment 002: Ends of the uniform walk on <a, b, u5>.

Share of conclusive paths whose end is of type 2, at N and 2N steps, and the
share of paths carrying an S-subsequence.
"""

import argparse

from rich.console import Console
from rich.table import Table

from config.config import DEFAULT_SEED, S_MIN_INDICES
from config.logging_config import configure_logging
from suites.base import workspace
from walks.cones import run_ensemble

console = Console()


def summarize(outcomes, n: int) -> tuple[float, float, float]:
    conclusive = [o for o in outcomes if o.conclusive]
    top = sum(1 for o in conclusive if o.end_type == n) / max(len(conclusive), 1)
    s_rate = sum(1 for o in outcomes if o.s_picks >= S_MIN_INDICES) / len(outcomes)
    return len(conclusive) / len(outcomes), top, s_rate


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Experiment 002: type concentration on a Z^2 group")
    parser.add_argument("--walks", type=int, default=1000)
    parser.add_argument("--steps", type=int, default=20_000)
    parser.add_argument("--doublings", type=int, default=1)
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--threads", type=int, default=1)
    args = parser.parse_args()

    configure_logging()
    ws = workspace("not_min")
    table = Table(title=f"{ws.config.name}: {args.walks} walks")
    for col in ("steps", "conclusive", "type-2 share", "S share"):
        table.add_column(col, justify="right")
    steps = args.steps
    for _ in range(args.doublings + 1):
        with console.status(f"[bold green]{steps} steps..."):
            outcomes = run_ensemble(ws.measure, args.walks, steps, args.seed, args.threads, s_evidence=True)
        conclusive, top, s_rate = summarize(outcomes, ws.n)
        table.add_row(str(steps), f"{conclusive:.3f}", f"{top:.3f}", f"{s_rate:.3f}")
        steps *= 2
    console.print(table)
