"""Smoke tests for the python bindings."""

import math

import pytest

import risee


def test_codebook_and_quantization():
    phases = risee.phase_codebook(1)
    assert phases == pytest.approx([math.pi / 2, 3 * math.pi / 2])
    assert len(risee.phase_codebook(4)) == 16
    assert risee.quantize_phase(math.pi / 2, 1) == 0
    assert risee.quantize_phase(2 * math.pi + math.pi / 4, 2) == 0


def test_power_model_arithmetic():
    model = risee.PowerModel()
    config = risee.RisConfig(side=2, resolution_bits=2)
    config.states = [1, 3, 0, 2]
    assert risee.element_power(config, risee.ReconfigMethod.PIN, model) == pytest.approx(
        5e-3
    )
    assert risee.element_power(
        config, risee.ReconfigMethod.VARACTOR, model
    ) == pytest.approx(0.0)
    assert risee.dbm_to_watts(30.0) == pytest.approx(1.0)
    assert risee.watts_to_dbm(1.0) == pytest.approx(30.0)


def test_near_field_helpers():
    rf = risee.fraunhofer_distance(0.5859, 0.0571)
    assert rf == pytest.approx(12.02, rel=1e-3)
    assert risee.near_field_criterion(0.5859, 0.0571, 5.0, 5.0)
    assert not risee.near_field_criterion(0.1, 0.0571, 1000.0, 1000.0)


def test_channel_shapes_and_determinism():
    scenario = risee.make_scenario(n=16, m=4, k=2, seed=7)
    ch1 = risee.synthesize_channels(scenario, seed=3)
    ch2 = risee.synthesize_channels(scenario, seed=3)
    assert ch1.incident.shape == (16, 4)
    assert len(ch1.reflected) == 2
    assert (ch1.incident == ch2.incident).all()


def test_allocator_against_grid_search():
    zeta = [[2e-10, 1e-11], [2e-11, 3e-10]]
    noise = risee.dbm_to_watts(-94.0)
    p, ee, converged = risee.allocate_power(
        zeta, noise, p_fixed=1.2, xi=1.25, bandwidth=10e6, p_t_max=0.316
    )
    assert converged
    assert ee > 0
    assert sum(p) <= 0.316 + 1e-9
    grid_p, grid_ee = risee.grid_search_allocation(
        zeta, noise, 1.2, 1.25, 10e6, 0.316, points_per_axis=400
    )
    assert ee == pytest.approx(grid_ee, rel=5e-3)


def test_end_to_end_small_optimization():
    scenario = risee.make_scenario(n=9, m=2, k=2, seed=11)
    channels = risee.synthesize_channels(scenario, seed=11)
    model = risee.PowerModel()
    result = risee.optimize(
        scenario,
        channels,
        model,
        risee.ReconfigMethod.RF_SWITCH,
        resolution_bits=1,
        n_particles=10,
        n_steps=8,
        seed=5,
    )
    assert result.best_ee >= result.step0_ee
    assert result.trace == sorted(result.trace)
    assert len(result.best_config.states) == 9

    fitness = risee.evaluate_fitness(
        result.best_config, channels, model, risee.ReconfigMethod.RF_SWITCH
    )
    assert fitness.ee == pytest.approx(result.best_ee, rel=1e-12)
