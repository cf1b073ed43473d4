import csv
import json
from typing import TextIO

from src.utils import RNG_NAME, format_float
from .schema import BasinStats, SweepTable

SWEEP_CSV_HEADER = ["ks_over_k", "fp_id", "spins", "ising_energy", "min_eig_H", "classification", "is_global_optimum"]


def write_sweep_csv(table: SweepTable, stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(SWEEP_CSV_HEADER)
    for row in table.rows:
        writer.writerow([
            format_float(row.ks_over_k),
            row.fp_id,
            row.spins,
            format_float(row.ising_energy),
            format_float(row.min_eig_hessian),
            row.classification.value,
            str(row.is_global_optimum).lower(),
        ])


def write_basin_json(stats: BasinStats, stream: TextIO, metadata: dict | None = None) -> None:
    document = {
        "metadata": {
            "seed": stats.seed,
            "rng_name": stats.rng_name or RNG_NAME,
            "n_samples": stats.n_samples,
            "params": stats.params.model_dump(),
            **(metadata or {}),
        },
        "counts": stats.counts,
        "ground_state_hit_rate": stats.ground_state_hit_rate,
    }
    json.dump(document, stream, indent=2)
    stream.write("\n")
