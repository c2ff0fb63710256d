"""
Experiment 001: Uniform walk on F(a, b).

Drift, exit distribution on depth-1 and depth-2 cones against the exact
harmonic measure, and Dirac convergence of τ_i·ν. Runs through the walk
graph by default; --direct calls the library without the graph.
"""

import argparse

import numpy as np
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from config.config import DEFAULT_SEED
from config.logging_config import configure_logging
from suites.base import workspace

console = Console()


def cone_table(nu, exact) -> Table:
    table = Table(title="Cone masses")
    for col in ("apex", "empirical", "exact", "z"):
        table.add_column(col, justify="right")
    for apex, p in exact.table.items():
        se = np.sqrt(p * (1 - p) / max(nu.samples, 1))
        z = (nu.mass(apex) - p) / se if se else 0.0
        table.add_row(str(apex), f"{nu.mass(apex):.4f}", f"{p:.4f}", f"{z:+.2f}")
    return table


def run_with_graph(walks: int, steps: int, seed: int) -> None:
    """Run the sample → tabulate → residuals pipeline."""
    from graphs.walk_graph import run_walk_experiment
    from walks.harmonic import harmonic_cone_measure

    ws = workspace("free_ab")
    console.print(Panel(f"[bold cyan]{walks} walks x {steps} steps, seed {seed}[/bold cyan]", title="Graph Mode"))
    result = run_walk_experiment(ws.measure, walks, steps, seed, depth=2)
    for line in result["execution_results"]:
        console.print(f"  - {line}")
    if result["cones"] is not None:
        console.print(cone_table(result["cones"], harmonic_cone_measure(ws.group, ws.measure, 2)))
    console.print(f"[bold]Status:[/bold] {result['status']}")


def run_direct(walks: int, steps: int, seed: int) -> None:
    """Ensemble with Dirac profiles, straight from the walk modules."""
    from walks.cones import run_ensemble, tabulate_cones
    from walks.harmonic import harmonic_cone_measure

    ws = workspace("free_ab")
    exact = harmonic_cone_measure(ws.group, ws.measure, 6)
    console.print(Panel("[bold yellow]Direct mode[/bold yellow]", border_style="yellow"))

    with console.status("[bold green]Sampling..."):
        outcomes = run_ensemble(ws.measure, walks, steps, seed, profile_measure=exact, profile_depth=1)
    drifts = np.array([o.drift for o in outcomes])
    console.print(f"mean drift {drifts.mean():.4f} ± {drifts.std(ddof=1) / np.sqrt(len(drifts)):.4f} (exact 1/2)")

    nu = tabulate_cones([o.end for o in outcomes], 2, 1)
    console.print(cone_table(nu, harmonic_cone_measure(ws.group, ws.measure, 2)))

    profiles = np.array([[r.mass for r in o.profile] for o in outcomes if o.profile])
    if profiles.size:
        ladder = [r.step for r in next(o.profile for o in outcomes if o.profile)]
        medians = np.median(profiles, axis=0)
        for i, m in list(zip(ladder, medians))[-8:]:
            console.print(f"  step {i:>6}: median (τ_i·ν)(U) = {m:.4f}")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Experiment 001: uniform walk on F(a, b)")
    parser.add_argument("--direct", action="store_true", help="Skip the walk graph")
    parser.add_argument("--walks", type=int, default=2000)
    parser.add_argument("--steps", type=int, default=5000)
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    args = parser.parse_args()

    configure_logging()
    if args.direct:
        run_direct(args.walks, args.steps, args.seed)
    else:
        run_with_graph(args.walks, args.steps, args.seed)
