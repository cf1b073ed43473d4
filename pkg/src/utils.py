from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, TypeVar
import logging
import math

import numpy as np

from src.config import Config

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

RNG_NAME = "PCG64"
TWO_PI = 2.0 * math.pi


def sample_generator(seed: int, index: int) -> np.random.Generator:
    """Independent stream for sample ``index`` of a seeded batch."""
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(index,))
    return np.random.Generator(np.random.PCG64(sequence))


def parallel_map(fn: Callable[[T], R], items: Iterable[T], workers: int | None = None) -> List[R]:
    """Map ``fn`` over ``items`` keeping input order.

    Runs inline when only one worker is allowed.
    """
    items = list(items)
    workers = Config.WORKERS if workers is None else max(1, workers)
    if workers == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, items))


def chunked(count: int, size: int) -> List[range]:
    size = max(1, size)
    return [range(start, min(start + size, count)) for start in range(0, count, size)]


def inf_norm(values) -> float:
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return 0.0
    return float(np.max(np.abs(values)))


def matrix_inf_norm(matrix) -> float:
    matrix = np.asarray(matrix, dtype=float)
    if matrix.size == 0:
        return 0.0
    return float(np.max(np.sum(np.abs(matrix), axis=1)))


def format_float(value: float) -> str:
    return format(float(value), ".17g")


def readonly(array: np.ndarray) -> np.ndarray:
    array = np.array(array, copy=True)
    array.flags.writeable = False
    return array
