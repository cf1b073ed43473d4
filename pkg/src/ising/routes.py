import numpy as np
import typer

from src.dependencies import GraphArgument, exit_on_error, load_graph
from src.ising.service import summarize

# Largest n for which the W sign pattern is printed in full
SIGN_PATTERN_LIMIT = 16


@exit_on_error
def info(graph: GraphArgument):
    """Print a summary of an edge-list instance."""
    g, inst = load_graph(graph)
    summary = summarize(inst)
    weights = [edge.e for edge in g.edges]

    typer.echo(f"n={g.n} m={g.m}")
    if weights:
        typer.echo(f"edge weights: min={min(weights):.17g} max={max(weights):.17g} total={g.total_weight:.17g}")
    typer.echo(f"couplings: {summary.couplings} (W>0: {summary.positive}, W<0: {summary.negative})")
    if inst.n <= SIGN_PATTERN_LIMIT:
        symbols = np.where(inst.w > 0, "+", np.where(inst.w < 0, "-", "."))
        for row in symbols:
            typer.echo(" ".join(row))
