from typing import Annotated

import numpy as np
import typer

from src.config import Config
from src.dependencies import (AlphaOption, DtOption, GraphArgument, KOption, KsOption, SeedOption, StopTolOption,
                              TmaxOption, exit_on_error, load_graph)
from src.errors import VIOLATION_EXIT_CODE
from src.ising.schema import IsingInstance
from src.schema import RunConfig
from .service import run_property_suite


def asymmetrized(inst: IsingInstance) -> IsingInstance:
    """Copy of ``inst`` with one coupling changed in one direction only."""
    w = np.array(inst.w)
    if inst.n > 1:
        w[0, 1] += 0.5
    return IsingInstance.model_construct(n=inst.n, w=w)


@exit_on_error
def verify(
    graph: GraphArgument,
    k: KOption = Config.K,
    ks: KsOption = Config.KS,
    alpha: AlphaOption = Config.ALPHA,
    dt: DtOption = Config.DT,
    tmax: TmaxOption = Config.T_MAX,
    stop_tol: StopTolOption = Config.STOP_TOL,
    seed: SeedOption = Config.SEED,
    states: Annotated[int, typer.Option("--states", min=1, help="Random phase states per property")] = 5,
    asymmetrize: Annotated[bool, typer.Option("--asymmetrize", hidden=True,
                                              help="Break the symmetry of W (negative control)")] = False,
):
    """Check the gradient-flow identities on the given instance."""
    run = RunConfig(k=k, ks=ks, alpha=alpha, dt=dt, t_max=tmax, stop_tol=stop_tol, seed=seed)
    _, inst = load_graph(graph)
    if asymmetrize:
        inst = asymmetrized(inst)

    results = run_property_suite(inst, run.params, run.integrator, seed=run.seed, n_states=states)
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        if result.worst is not None:
            typer.echo(f"{status} {result.name}: worst={result.worst:.3g} tol={result.tolerance:.3g}")
        else:
            typer.echo(f"{status} {result.name}: {result.detail}")

    if not all(result.passed for result in results):
        raise typer.Exit(code=VIOLATION_EXIT_CODE)
