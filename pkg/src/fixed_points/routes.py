import logging

import typer
from typing import Annotated

from src.config import Config
from src.dependencies import (AlphaOption, BinTolOption, DtOption, EigenTolOption, FormatOption, GraphArgument,
                              KOption, KsOption, OutputOption, SeedOption, StartsOption, StopTolOption, TmaxOption,
                              exit_on_error, load_graph, open_output)
from src.errors import VIOLATION_EXIT_CODE, GuardExceededError
from src.schema import OutputFormat, RunConfig
from .export import write_catalog_csv, write_catalog_json
from .service import FixedPointService

logger = logging.getLogger(__name__)


@exit_on_error
def analyze(
    graph: GraphArgument,
    k: KOption = Config.K,
    ks: KsOption = Config.KS,
    alpha: AlphaOption = Config.ALPHA,
    dt: DtOption = Config.DT,
    tmax: TmaxOption = Config.T_MAX,
    stop_tol: StopTolOption = Config.STOP_TOL,
    bin_tol: BinTolOption = Config.BIN_TOL,
    eigen_tol: EigenTolOption = Config.EIGEN_TOL,
    starts: StartsOption = Config.STARTS,
    seed: SeedOption = Config.SEED,
    harvest: Annotated[bool, typer.Option("--harvest/--no-harvest",
                                          help="Also search for non-binary fixed points from seeded starts")] = False,
    output: OutputOption = None,
    format: FormatOption = None,
):
    """Enumerate the 2^N spin fixed points and classify them with both tests.

    For N above about 14 set OIMLAB_EIGEN_METHOD=lapack; the default Jacobi solver is pure Python.
    """
    run = RunConfig(k=k, ks=ks, alpha=alpha, dt=dt, t_max=tmax, stop_tol=stop_tol, bin_tol=bin_tol,
                    eigen_tol=eigen_tol, starts=starts, seed=seed, output=output, format=format)
    _, inst = load_graph(graph)
    service = FixedPointService(bin_tol=run.bin_tol, eigen_tol=run.eigen_tol)
    if inst.n > service.guard:
        raise GuardExceededError(inst.n, service.guard, "use `solve` for instances of this size")

    if harvest:
        catalog = service.harvest_from_trajectories(inst, run.params, run.starts, run.seed, run.integrator)
    else:
        catalog = service.enumerate_spin_fixed_points(inst, run.params)
    catalog = catalog.model_copy(update={"metadata": run.metadata()})

    with open_output(run.output) as stream:
        if run.format is OutputFormat.CSV:
            write_catalog_csv(catalog, stream)
        else:
            write_catalog_json(catalog, stream)

    disagreements = [record.id for record in catalog.records if not record.report.agree]
    if disagreements:
        typer.echo(f"jacobian and hessian classifications disagree at fixed points {disagreements}", err=True)
        raise typer.Exit(code=VIOLATION_EXIT_CODE)
