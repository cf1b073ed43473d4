import numpy as np
import pytest

from src.dynamics.schema import OimParams
from src.ising.schema import IsingInstance
from src.ising.service import random_instance
from src.utils import TWO_PI


def pair_instance(w01: float = 1.0) -> IsingInstance:
    return IsingInstance(n=2, w=[[0.0, w01], [w01, 0.0]])


def triangle_instance(weight: float) -> IsingInstance:
    w = np.full((3, 3), weight)
    np.fill_diagonal(w, 0.0)
    return IsingInstance(n=3, w=w)


def random_cases(count: int = 20, states: int = 5, seed: int = 2024, n_range=(2, 8)):
    """(instance, params, phase states) tuples with W uniform in [-1, 1]."""
    rng = np.random.default_rng(seed)
    cases = []
    for _ in range(count):
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        inst = random_instance(n, rng)
        params = OimParams(k=float(rng.choice([0.5, 1.0, 2.0])), ks=float(rng.choice([0.5, 1.0, 2.0])))
        cases.append((inst, params, rng.uniform(0.0, TWO_PI, size=(states, n))))
    return cases


@pytest.fixture
def pair():
    return pair_instance(1.0)


@pytest.fixture
def frustrated_triangle():
    return triangle_instance(-1.0)


@pytest.fixture
def ferro_triangle():
    return triangle_instance(1.0)


@pytest.fixture
def single():
    return IsingInstance(n=1, w=[[0.0]])


@pytest.fixture
def unit_params():
    return OimParams(k=1.0, ks=1.0)


@pytest.fixture
def graph_file(tmp_path):
    def write(text: str, name: str = "graph.txt"):
        path = tmp_path / name
        path.write_text(text, encoding="utf8")
        return path

    return write
