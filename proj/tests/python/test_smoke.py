import math

import numpy as np
import pytest

import olplab


def test_philox_known_answer():
    assert olplab.philox([0, 0, 0, 0], [0, 0]) == [0x6627E8D5, 0xE169C58D, 0xBC57AC4C, 0x9B00DBD8]


def test_generate_and_solve():
    c, a = olplab.generate_arrivals("multi-secretary", 500, 3)
    assert c.shape == (500,)
    assert a.shape == (500, 1)
    assert np.all(a == 1.0)
    sol = olplab.solve_hindsight(c, a, [250.0])
    assert sol["optimal"]
    # Best 250 rewards.
    assert sol["value"] == pytest.approx(np.sort(c)[-250:].sum())
    assert sol["value"] == pytest.approx(sol["dual_value"], abs=1e-8)


def test_subgradient_run():
    c = np.array([0.8, 0.3, 0.6])
    a = np.ones((3, 1))
    trace = olplab.run_subgradient(c, a, [0.5], 0.5)
    assert list(trace["decisions"]) == [1.0, 1.0, 1.0]
    assert trace["final_price"][0] == pytest.approx(0.75)


def test_two_phase_and_step():
    c, a = olplab.generate_arrivals("continuous-u1", 2000, 5)
    out = olplab.run_two_phase(c, a, [0.5], "continuous-u1")
    assert len(out["decisions"]) == 2000
    assert out["phase_boundary"] == math.ceil(2000 ** (2 / 3))
    assert olplab.benchmark_stepsize(2.0, 1.0, 1 / 3, 2 / 3, 1, 10000) == pytest.approx(0.0091856, rel=1e-4)


def test_small_scenario_and_slope():
    assert "dilemma" in olplab.scenario_names()
    rows, csv = olplab.run_scenario("dilemma", horizons=[100, 200, 400, 800], trials=2, seed=3)
    assert csv.startswith("trial_id,algo,dist,T,m,seed,regret")
    assert len(rows) == 3 * 4
    assert olplab.growth_slope([100, 1000, 10000, 100000], [10, 10 * 10**0.5, 100, 100 * 10**0.5]) == pytest.approx(0.5)
