import json
from typing import Annotated, Optional

import typer

from src.config import Config
from src.dependencies import (DtOption, FormatOption, GraphArgument, KOption, KsOption, OutputOption, SeedOption,
                              StopTolOption, TmaxOption, exit_on_error, load_graph, open_output, parse_floats)
from src.schema import OutputFormat, RunConfig
from .integrator import integrate, seeded_starts, write_trajectory_csv
from .schema import IntegratorConfig


@exit_on_error
def simulate_trajectory(
    graph: GraphArgument,
    k: KOption = Config.K,
    ks: KsOption = Config.KS,
    dt: DtOption = Config.DT,
    tmax: TmaxOption = Config.T_MAX,
    stop_tol: StopTolOption = Config.STOP_TOL,
    stride: Annotated[int, typer.Option("--stride", min=1, help="Keep every k-th step")] = Config.RECORD_STRIDE,
    init: Annotated[Optional[str], typer.Option("--init", help="Comma separated initial phases (radians)")] = None,
    seed: SeedOption = Config.SEED,
    output: OutputOption = None,
    format: FormatOption = None,
):
    """Integrate the phase dynamics from one initial state."""
    run = RunConfig(k=k, ks=ks, dt=dt, t_max=tmax, stop_tol=stop_tol, seed=seed, output=output, format=format)
    _, inst = load_graph(graph)
    start = parse_floats(init) if init is not None else seeded_starts(inst.n, 1, run.seed)[0]
    cfg = IntegratorConfig(dt=run.dt, t_max=run.t_max, stop_tol=run.stop_tol, record_stride=stride)
    traj = integrate(run.params, inst, start, cfg)

    with open_output(run.output) as stream:
        if run.format is OutputFormat.JSON:
            document = {
                "metadata": {**run.metadata(), "record_stride": stride},
                "converged": traj.converged,
                "final_velocity_norm": traj.final_velocity_norm,
                "times": traj.times.tolist(),
                "states": traj.states.tolist(),
                "energies": traj.energies.tolist(),
            }
            json.dump(document, stream, indent=2)
            stream.write("\n")
        else:
            write_trajectory_csv(traj, stream)
