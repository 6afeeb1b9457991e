import math

import pytest

import risqn


def test_success_probability_matches_monte_carlo():
    env = risqn.environment()
    p = risqn.prob_success(env, 250.0, 250.0)
    mc, se = risqn.prob_success_mc(env, 250.0, 250.0, samples=200000, seed=3)
    assert 0.0 < p < 1.0
    assert abs(p - mc) <= 3.0 * se


def test_presets_and_channel_helpers():
    rainy = risqn.environment("rainy", "strong", "high")
    assert rainy.attenuation_db_per_km == pytest.approx(6.27)
    assert rainy.cn2 == pytest.approx(1e-13)
    alpha, beta = risqn.turbulence_params(1.0)
    assert alpha == pytest.approx(4.39385902539215, rel=1e-10)
    assert beta == pytest.approx(2.56363197950369, rel=1e-10)
    assert risqn.distance(risqn.Point3D(0, 0, 0), risqn.Point3D(3, 4, 0)) == pytest.approx(5.0)
    with pytest.raises(ValueError):
        risqn.environment("foggy")


def test_delivered_state():
    w = risqn.BellDiagonalState.werner(0.9)
    t = -2.43e-3 * math.log(0.99767)
    out = risqn.e2e_state(w, t, 0.307)
    assert out.fidelity == pytest.approx(0.633038768666667, rel=1e-12)
    assert out.l00 + out.l01 + out.l10 + out.l11 == pytest.approx(1.0, abs=1e-12)
    assert risqn.rate_from_alpha(0.5) == pytest.approx(1e6)


def test_fairness_indices():
    assert risqn.wfi([1, 1, 1], [0.1, 0.3, 0.6]) == pytest.approx(0.6)
    assert risqn.jfi([2, 1, 1]) == pytest.approx(16 / 18)


def test_special_functions():
    assert risqn.specfun.bessel_k(0.54, 2.3) == pytest.approx(0.083488489784939569371, rel=1e-12)
    assert risqn.specfun.gamma_p(3.5, 2.0) == pytest.approx(0.22022259152428407907, rel=1e-12)


def test_evaluate_and_optimize():
    text = "[users]\npositions = 350,0,10; 400,0,10; 450,0,10\n"
    inst = risqn.instance_from_config(text, seed=1)
    assert len(inst) == 3
    sol = risqn.evaluate(inst, risqn.Point3D(250, 0, 60), [2e5, 2e5, 2e5])
    assert sol["r_e2e"][0] == pytest.approx(sol["p_succ"][0] * 2e5)
    res = risqn.optimize(inst, seed=2, cooling=0.8, iters_per_temp=20)
    again = risqn.optimize(inst, seed=2, cooling=0.8, iters_per_temp=20)
    assert res["feasible"]
    assert res["wfi"] >= 0.95
    assert res["r_in"] == again["r_in"]
    trace = res["trace"]
    assert all(b >= a for a, b in zip(trace, trace[1:]))


def test_experiment_runner():
    names = risqn.experiment_names()
    assert "psucc-sweep" in names
    out = risqn.run_experiment("psucc-sweep", reps=1, seed=1, threads=1)
    assert out["csv"].startswith("# risqn-results/1\n")
    assert out["summary"]["weather_order_violations"] == 0
    with pytest.raises(ValueError):
        risqn.run_experiment("nope")
