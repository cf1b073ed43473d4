import numpy as np
import pytest

from src.dynamics.schema import NonBinary, OimParams
from src.dynamics.service import (angular_distance, canonicalize, dissipation_rate, energy, energy_gradient,
                                  gradient_flow_velocity, phases_to_spins, spins_to_phases, velocity)
from src.errors import DimensionMismatchError, InvalidParameterError
from src.ising.schema import IsingInstance
from src.ising.service import ising_energy, random_instance, spin_configurations
from src.utils import TWO_PI
from tests.conftest import random_cases


def central_gradient(params, inst, x, h=1e-5):
    grad = np.empty(inst.n)
    for i in range(inst.n):
        step = np.zeros(inst.n)
        step[i] = h
        grad[i] = (energy(params, inst, x + step) - energy(params, inst, x - step)) / (2 * h)
    return grad


def test_velocity_vanishes_on_binary_states(frustrated_triangle, unit_params):
    for s in spin_configurations(3):
        assert np.max(np.abs(velocity(unit_params, frustrated_triangle, spins_to_phases(s)))) <= 1e-12


def test_velocity_examples(pair, unit_params):
    np.testing.assert_allclose(velocity(unit_params, pair, [np.pi / 2, 0.0]), [-1.0, 1.0], atol=1e-12)
    no_injection = OimParams(k=1.0, ks=0.0)
    np.testing.assert_allclose(velocity(no_injection, pair, [0.7, 0.7]), [0.0, 0.0], atol=1e-15)


def test_velocity_accepts_batches(pair, unit_params):
    batch = np.array([[np.pi / 2, 0.0], [0.0, np.pi / 2]])
    np.testing.assert_allclose(velocity(unit_params, pair, batch), [[-1.0, 1.0], [1.0, -1.0]], atol=1e-12)


def test_velocity_rejects_wrong_length(pair, unit_params):
    with pytest.raises(DimensionMismatchError):
        velocity(unit_params, pair, [0.0, 0.0, 0.0])


def test_gradient_flow_velocity_scales_field(pair):
    params = OimParams(k=1.0, ks=1.0, alpha=0.25)
    x = np.array([0.4, 1.3])
    np.testing.assert_allclose(gradient_flow_velocity(params, pair, x), 0.5 * velocity(params, pair, x), rtol=1e-15)


@pytest.mark.parametrize("ks", [0.0, 0.5, 1.0, 3.0])
def test_energy_examples(pair, ks):
    assert energy(OimParams(k=1.0, ks=1.0), pair, [0.0, 0.0]) == pytest.approx(-4.0, abs=1e-12)
    assert energy(OimParams(k=1.0, ks=ks), pair, [0.0, np.pi]) == pytest.approx(2.0 - 2.0 * ks, abs=1e-12)


def test_energy_single_node(single, unit_params):
    assert energy(unit_params, single, [np.pi / 2]) == pytest.approx(1.0, abs=1e-12)


def test_energy_of_batch_is_an_array(pair, unit_params):
    values = energy(unit_params, pair, [[0.0, 0.0], [0.0, np.pi]])
    np.testing.assert_allclose(values, [-4.0, 0.0], atol=1e-12)


def test_energy_gradient_examples(pair, unit_params):
    np.testing.assert_allclose(energy_gradient(unit_params, pair, [np.pi / 2, 0.0]), [2.0, -2.0], atol=1e-12)
    np.testing.assert_allclose(energy_gradient(unit_params, pair, [0.0, np.pi]), [0.0, 0.0], atol=1e-12)


def test_energy_gradient_rejects_batches(pair, unit_params):
    with pytest.raises(InvalidParameterError):
        energy_gradient(unit_params, pair, np.zeros((2, 2)))


def test_gradient_matches_finite_differences_and_velocity():
    for inst, params, states in random_cases():
        for x in states:
            grad = energy_gradient(params, inst, x)
            assert np.max(np.abs(grad - central_gradient(params, inst, x))) <= 1e-6
            assert np.max(np.abs(grad + 2.0 * velocity(params, inst, x))) <= 1e-12


def test_two_pi_periodicity():
    for inst, params, states in random_cases(count=10):
        for x in states:
            for i in range(inst.n):
                shifted = x.copy()
                shifted[i] += TWO_PI
                assert abs(energy(params, inst, shifted) - energy(params, inst, x)) <= 1e-12
                assert np.max(np.abs(velocity(params, inst, shifted) - velocity(params, inst, x))) <= 1e-12


def test_binary_states_are_fixed_points_up_to_n8():
    rng = np.random.default_rng(3)
    params = OimParams(k=1.0, ks=1.0)
    for n in range(1, 9):
        inst = random_instance(n, rng)
        phases = spins_to_phases(spin_configurations(n))
        assert np.max(np.abs(velocity(params, inst, phases))) <= 1e-12


def test_spin_restricted_energy_identity():
    rng = np.random.default_rng(8)
    for n in (2, 5, 8):
        inst = random_instance(n, rng)
        params = OimParams(k=1.5, ks=0.7)
        for s in spin_configurations(n):
            expected = 2 * params.k * ising_energy(inst, s) - n * params.ks
            assert energy(params, inst, spins_to_phases(s)) == pytest.approx(expected, abs=1e-12)


def test_dissipation_examples(pair, unit_params):
    assert dissipation_rate(unit_params, pair, [0.0, np.pi]) == pytest.approx(0.0, abs=1e-24)
    assert dissipation_rate(unit_params, pair, [np.pi / 2, 0.0]) == pytest.approx(-4.0, abs=1e-12)


def test_dissipation_matches_directional_derivative():
    h = 1e-5
    for inst, params, states in random_cases(count=10):
        for x in states:
            f = velocity(params, inst, x)
            rate = dissipation_rate(params, inst, x)
            numeric = (energy(params, inst, x + h * f) - energy(params, inst, x - h * f)) / (2 * h)
            assert rate <= 0.0
            assert numeric == pytest.approx(rate, abs=1e-5 * max(1.0, abs(rate)))


def test_canonicalize_and_angular_distance():
    np.testing.assert_allclose(canonicalize([-np.pi / 2, TWO_PI + 0.5]), [1.5 * np.pi, 0.5])
    assert angular_distance(0.1, TWO_PI - 0.1) == pytest.approx(0.2)
    assert angular_distance(np.pi, 0.0) == pytest.approx(np.pi)


def test_phases_to_spins_examples():
    np.testing.assert_array_equal(phases_to_spins([0.0, np.pi]), [1, -1])
    np.testing.assert_array_equal(phases_to_spins([TWO_PI + 0.01, np.pi - 0.01], bin_tol=0.1), [1, -1])
    assert phases_to_spins([np.pi / 2, 0.0], bin_tol=0.1) == NonBinary(indices=(0,))


@pytest.mark.parametrize("bin_tol", [0.0, np.pi / 4, 1.0, -0.1])
def test_phases_to_spins_rejects_tolerance(bin_tol):
    with pytest.raises(InvalidParameterError):
        phases_to_spins([0.0], bin_tol=bin_tol)


def test_params_validation():
    with pytest.raises(ValueError):
        OimParams(k=0.0)
    with pytest.raises(ValueError):
        OimParams(ks=-1.0)
    with pytest.raises(ValueError):
        OimParams(alpha=0.0)
    assert OimParams(ks=0.0).ks == 0.0


def test_zero_instance_has_only_injection_energy():
    inst = IsingInstance(n=3, w=np.zeros((3, 3)))
    params = OimParams(k=1.0, ks=2.0)
    assert energy(params, inst, [0.0, np.pi, 0.0]) == pytest.approx(-6.0)
