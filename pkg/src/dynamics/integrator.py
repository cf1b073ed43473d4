"""Fixed-step classical RK4 integration of the phase dynamics."""
from typing import Callable, List, Optional, TextIO, Tuple
import csv
import logging

import numpy as np

from src.config import Config
from src.errors import IntegrationError
from src.ising.schema import IsingInstance
from src.utils import TWO_PI, chunked, format_float, parallel_map, sample_generator
from .schema import BatchEndpoints, IntegratorConfig, OimParams, Trajectory
from .service import as_phases, energy, velocity

logger = logging.getLogger(__name__)


def rk4_step(field: Callable[[np.ndarray], np.ndarray], x: np.ndarray, k1: np.ndarray, dt: float) -> np.ndarray:
    k2 = field(x + 0.5 * dt * k1)
    k3 = field(x + 0.5 * dt * k2)
    k4 = field(x + dt * k3)
    return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def integrate(params: OimParams, inst: IsingInstance, init, cfg: IntegratorConfig | None = None) -> Trajectory:
    cfg = cfg or IntegratorConfig()
    x = as_phases(init, inst.n).astype(float).reshape(inst.n)
    if not np.all(np.isfinite(x)):
        raise IntegrationError(0)

    def field(state):
        return velocity(params, inst, state)

    times, states = [0.0], [x.copy()]
    f = field(x)
    step = recorded = 0
    converged = False
    while True:
        if np.max(np.abs(f)) < cfg.stop_tol:
            converged = True
            break
        if step >= cfg.n_steps:
            break
        x = rk4_step(field, x, f, cfg.dt)
        step += 1
        if not np.all(np.isfinite(x)):
            raise IntegrationError(step)
        f = field(x)
        if step % cfg.record_stride == 0:
            times.append(step * cfg.dt)
            states.append(x.copy())
            recorded = step

    if recorded != step:
        times.append(step * cfg.dt)
        states.append(x.copy())

    logger.debug("integration stopped after %d steps (converged=%s)", step, converged)
    states = np.array(states)
    return Trajectory(
        times=times,
        states=states,
        energies=energy(params, inst, states),
        converged=converged,
        final_velocity_norm=float(np.max(np.abs(f))) if f.size else 0.0,
    )


def integrate_batch(params: OimParams, inst: IsingInstance, inits, cfg: IntegratorConfig | None = None) -> BatchEndpoints:
    """Integrate many starts at once, freezing each row when it converges.

    Rows follow the same stop rule as :func:`integrate`. A row whose state turns
    non-finite raises :class:`IntegrationError` for the whole batch.
    """
    cfg = cfg or IntegratorConfig()
    x = np.array(as_phases(inits, inst.n), dtype=float, ndmin=2)
    batch = x.shape[0]
    steps = np.zeros(batch, dtype=np.int64)
    converged = np.zeros(batch, dtype=bool)

    def field(state):
        return velocity(params, inst, state)

    active = np.arange(batch)
    f = field(x)
    for step in range(cfg.n_steps + 1):
        done = np.max(np.abs(f), axis=1) < cfg.stop_tol
        converged[active[done]] = True
        active, f = active[~done], f[~done]
        if active.size == 0 or step == cfg.n_steps:
            break
        moved = rk4_step(field, x[active], f, cfg.dt)
        if not np.all(np.isfinite(moved)):
            raise IntegrationError(step + 1)
        x[active] = moved
        steps[active] = step + 1
        f = field(moved)

    return BatchEndpoints(states=x, converged=converged, steps=steps)


def write_trajectory_csv(traj: Trajectory, stream: TextIO) -> None:
    n = traj.states.shape[1]
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["t", *(f"theta_{i}" for i in range(n)), "energy"])
    for t, state, value in zip(traj.times, traj.states, traj.energies):
        writer.writerow([format_float(t), *(format_float(v) for v in state), format_float(value)])


def seeded_starts(n: int, count: int, seed: int) -> np.ndarray:
    """Uniform initial phases on [0, 2π)^n, sample i drawn from stream (seed, i)."""
    return np.array([sample_generator(seed, i).uniform(0.0, TWO_PI, n) for i in range(count)]).reshape(count, n)


def integrate_starts(params: OimParams, inst: IsingInstance, starts, cfg: IntegratorConfig | None = None,
                     chunk_size: int | None = None) -> List[Tuple[Optional[np.ndarray], bool]]:
    """Endpoint and converged flag for every start, in start order.

    Starts are integrated in fixed-size chunks so the result does not depend on
    the number of workers. A start that diverges yields ``(None, False)``.
    """
    cfg = cfg or IntegratorConfig()
    starts = np.array(as_phases(starts, inst.n), dtype=float, ndmin=2)
    chunk_size = Config.CHUNK_SIZE if chunk_size is None else chunk_size

    def run(indices: range) -> List[Tuple[Optional[np.ndarray], bool]]:
        try:
            batch = integrate_batch(params, inst, starts[indices.start:indices.stop], cfg)
            return [(state, bool(done)) for state, done in zip(batch.states, batch.converged)]
        except IntegrationError:
            logger.warning("starts %d-%d diverged, integrating them one by one", indices.start, indices.stop - 1)
        ends = []
        for index in indices:
            try:
                traj = integrate(params, inst, starts[index], cfg)
                ends.append((traj.final_state, traj.converged))
            except IntegrationError as err:
                logger.warning("start %d: %s", index, err.detail)
                ends.append((None, False))
        return ends

    chunks = parallel_map(run, chunked(len(starts), chunk_size))
    return [end for chunk in chunks for end in chunk]
