import numpy as np

from src.dynamics.schema import IntegratorConfig, OimParams
from src.ising.schema import IsingInstance
from src.ising.service import random_instance
from src.verification.routes import asymmetrized
from src.verification.service import run_property_suite

short = IntegratorConfig(t_max=5.0)

PROPERTIES = [
    "gradient-finite-difference",
    "gradient-velocity-identity",
    "jacobian-hessian-equivalence",
    "finite-difference-oracles",
    "eigenvalue-mirror",
    "dissipation-monotone",
    "spin-energy-identity",
    "binary-fixed-points",
]


def failures(results):
    return [result.name for result in results if not result.passed]


def test_suite_passes_on_pair(pair, unit_params):
    results = run_property_suite(pair, unit_params, short)
    assert [result.name for result in results] == PROPERTIES
    assert failures(results) == []


def test_suite_passes_on_random_instances():
    rng = np.random.default_rng(12)
    for n in (3, 6, 10):
        inst = random_instance(n, rng)
        results = run_property_suite(inst, OimParams(k=2.0, ks=0.5, alpha=0.25), short, seed=n)
        assert failures(results) == []


def test_suite_scales_with_large_weights():
    upper = np.triu(np.full((4, 4), 50.0), k=1)
    inst = IsingInstance(n=4, w=upper + upper.T)
    fine_steps = IntegratorConfig(dt=0.001, t_max=1.0)
    assert failures(run_property_suite(inst, OimParams(k=1.0, ks=1.0), fine_steps)) == []


def test_asymmetric_couplings_are_caught(frustrated_triangle, unit_params):
    results = run_property_suite(asymmetrized(frustrated_triangle), unit_params, short)
    failed = failures(results)
    assert "gradient-velocity-identity" in failed
    assert "jacobian-hessian-equivalence" in failed
    by_name = {result.name: result for result in results}
    assert by_name["jacobian-hessian-equivalence"].worst is None
    assert by_name["jacobian-hessian-equivalence"].detail


def test_asymmetrized_single_node_is_unchanged(single):
    np.testing.assert_array_equal(asymmetrized(single).w, single.w)
