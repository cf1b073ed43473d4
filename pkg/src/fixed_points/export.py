import csv
from pathlib import Path
from typing import TextIO

from src.ising.service import spin_label
from src.utils import format_float
from .schema import FixedPointCatalog

CATALOG_CSV_HEADER = ["id", "spins", "oim_energy", "ising_energy", "min_eig_H", "classification", "is_global_optimum"]


def write_catalog_json(catalog: FixedPointCatalog, stream: TextIO) -> None:
    stream.write(catalog.model_dump_json(indent=2))
    stream.write("\n")


def read_catalog_json(path: str | Path) -> FixedPointCatalog:
    return FixedPointCatalog.model_validate_json(Path(path).read_text(encoding="utf8"))


def write_catalog_csv(catalog: FixedPointCatalog, stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CATALOG_CSV_HEADER)
    for record in catalog.records:
        writer.writerow([
            record.id,
            spin_label(record.spins) if record.is_binary else "nonbinary",
            format_float(record.oim_energy),
            format_float(record.ising_energy) if record.ising_energy is not None else "",
            format_float(record.report.min_eig_hessian),
            record.report.classification_hessian.value,
            str(record.is_global_optimum).lower(),
        ])
