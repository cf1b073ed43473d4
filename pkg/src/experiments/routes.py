import csv
import json
from typing import Annotated, Optional

import typer

from src.config import Config
from src.dependencies import (AlphaOption, BinTolOption, DtOption, EigenTolOption, FormatOption, GraphArgument,
                              KOption, KsOption, OutputOption, SeedOption, StartsOption, StopTolOption, TmaxOption,
                              exit_on_error, load_graph, open_output, parse_floats)
from src.fixed_points.service import FixedPointService
from src.ising.service import cut_value, spin_label
from src.schema import OutputFormat, RunConfig
from src.utils import format_float
from .export import write_basin_json, write_sweep_csv
from .service import ExperimentService


@exit_on_error
def sweep(
    graph: GraphArgument,
    ratios: Annotated[str, typer.Option("--ratios", help="Comma separated K_s/K ratios, increasing")],
    k: KOption = Config.K,
    alpha: AlphaOption = Config.ALPHA,
    bin_tol: BinTolOption = Config.BIN_TOL,
    eigen_tol: EigenTolOption = Config.EIGEN_TOL,
    output: OutputOption = None,
    format: FormatOption = None,
):
    """Classify every spin fixed point across a sweep of K_s/K."""
    run = RunConfig(k=k, alpha=alpha, bin_tol=bin_tol, eigen_tol=eigen_tol, ratios=parse_floats(ratios),
                    output=output, format=format)
    _, inst = load_graph(graph)
    service = ExperimentService(FixedPointService(bin_tol=run.bin_tol, eigen_tol=run.eigen_tol), run.bin_tol)
    table = service.ks_sweep(inst, run.k, run.ratios, run.alpha)

    with open_output(run.output) as stream:
        if run.format is OutputFormat.JSON:
            document = {"metadata": run.metadata(), **table.model_dump(mode="json")}
            json.dump(document, stream, indent=2)
            stream.write("\n")
        else:
            write_sweep_csv(table, stream)


@exit_on_error
def solve(
    graph: GraphArgument,
    k: KOption = Config.K,
    ks: KsOption = Config.KS,
    alpha: AlphaOption = Config.ALPHA,
    dt: DtOption = Config.DT,
    tmax: TmaxOption = Config.T_MAX,
    stop_tol: StopTolOption = Config.STOP_TOL,
    bin_tol: BinTolOption = Config.BIN_TOL,
    starts: StartsOption = Config.STARTS,
    seed: SeedOption = Config.SEED,
    basins: Annotated[bool, typer.Option("--basins", help="Report basin tallies instead of the best spins")] = False,
    output: OutputOption = None,
    format: FormatOption = None,
):
    """Run seeded multistart dynamics and report the best spin configuration."""
    run = RunConfig(k=k, ks=ks, alpha=alpha, dt=dt, t_max=tmax, stop_tol=stop_tol, bin_tol=bin_tol,
                    starts=starts, seed=seed, output=output, format=format)
    g, inst = load_graph(graph)
    service = ExperimentService(FixedPointService(bin_tol=run.bin_tol), run.bin_tol)

    if basins:
        stats = service.monte_carlo_basins(inst, run.params, run.starts, run.seed, run.integrator)
        with open_output(run.output) as stream:
            write_basin_json(stats, stream, run.metadata())
        return

    result = service.solve(inst, run.params, run.starts, run.seed, run.integrator)
    cut: Optional[float] = None if result.non_binary_only else cut_value(g, result.spins)
    if result.non_binary_only:
        typer.echo(f"no start out of {result.n_starts} reached a binary phase state", err=True)
    with open_output(run.output) as stream:
        if run.format is OutputFormat.CSV:
            writer = csv.writer(stream, lineterminator="\n")
            writer.writerow(["spins", "ising_energy", "oim_energy", "cut_value", "n_binary", "n_starts"])
            writer.writerow([
                spin_label(result.spins) if result.spins is not None else "nonbinary",
                format_float(result.ising_energy) if result.ising_energy is not None else "",
                format_float(result.oim_energy) if result.oim_energy is not None else "",
                format_float(cut) if cut is not None else "",
                result.n_binary,
                result.n_starts,
            ])
        else:
            document = {"metadata": run.metadata(), **result.model_dump(mode="json", exclude={"metadata"}),
                        "cut_value": cut}
            json.dump(document, stream, indent=2)
            stream.write("\n")
