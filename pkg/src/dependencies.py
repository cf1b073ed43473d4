"""Options and helpers shared by every command."""
import functools
import logging
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Annotated, List, Optional

import typer
from pydantic import ValidationError

from src.errors import USAGE_EXIT_CODE, OimLabError
from src.ising.parser import read_graph
from src.ising.schema import IsingInstance, MaxCutGraph
from src.ising.service import to_ising
from .schema import OutputFormat

logger = logging.getLogger(__name__)


def parse_floats(value: Optional[str]) -> Optional[List[float]]:
    if value is None:
        return None
    try:
        return [float(item) for item in value.split(",") if item.strip()]
    except ValueError:
        raise typer.BadParameter(f"expected comma separated numbers, got {value!r}")


GraphArgument = Annotated[Path, typer.Argument(exists=True, dir_okay=False, readable=True,
                                               help="Edge-list file: header 'N M', then 'i j w' lines")]
KOption = Annotated[float, typer.Option("--k", help="Coupling strength K")]
KsOption = Annotated[float, typer.Option("--ks", help="Second-harmonic injection strength K_s")]
AlphaOption = Annotated[float, typer.Option("--alpha", help="Gradient-flow constant α")]
DtOption = Annotated[float, typer.Option("--dt", help="RK4 step size")]
TmaxOption = Annotated[float, typer.Option("--tmax", help="Integration horizon")]
StopTolOption = Annotated[float, typer.Option("--stop-tol", help="Early stop when ||f||_inf falls below this")]
BinTolOption = Annotated[float, typer.Option("--bin-tol", help="Angular tolerance of the spin readout")]
EigenTolOption = Annotated[float, typer.Option("--eigen-tol", help="Relative eigenvalue tolerance, scaled by max(1, ||A||_inf)")]
StartsOption = Annotated[int, typer.Option("--starts", min=1, help="Number of seeded initial states")]
SeedOption = Annotated[int, typer.Option("--seed", help="Seed of the per-sample random streams")]
OutputOption = Annotated[Optional[Path], typer.Option("--output", dir_okay=False, help="Write to this file instead of stdout")]
FormatOption = Annotated[Optional[OutputFormat], typer.Option("--format", case_sensitive=False, help="json or csv")]


def exit_on_error(command):
    """Report library errors on stderr and exit with their exit code."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except OimLabError as err:
            typer.echo(f"error: {err.detail}", err=True)
            raise typer.Exit(code=err.exit_code)
        except ValidationError as err:
            first = err.errors()[0]
            location = ".".join(str(part) for part in first.get("loc", ())) or "value"
            typer.echo(f"error: invalid {location}: {first.get('msg')}", err=True)
            raise typer.Exit(code=USAGE_EXIT_CODE)
        except OSError as err:
            typer.echo(f"error: {err}", err=True)
            raise typer.Exit(code=USAGE_EXIT_CODE)

    return wrapper


def load_graph(path: Path) -> tuple[MaxCutGraph, IsingInstance]:
    graph = read_graph(path)
    logger.info("read %s: n=%d m=%d", path, graph.n, graph.m)
    return graph, to_ising(graph)


@contextmanager
def open_output(path: Optional[Path]):
    if path is None:
        yield sys.stdout
        return
    with open(path, "w", encoding="utf8", newline="") as handle:
        yield handle
    logger.info("wrote %s", path)
