import math

import pytest

import anticipate


def test_link_model():
    assert anticipate.path_loss_db(1.0) == pytest.approx(128.1)
    bits = anticipate.per_prb_bits(-anticipate.path_loss_db(0.1), anticipate.LinkBudget(), 1 / 6)
    assert bits == pytest.approx(347320.0803626974, rel=1e-9)
    with pytest.raises(ValueError):
        anticipate.path_loss_db(0.0)


def test_playback():
    spec = anticipate.VideoSpec()
    spec.num_slots = 3
    v = spec.bits_per_slot
    timeline = anticipate.simulate_playback([2 * v, 0.0, v], spec)
    assert timeline.outage_count() == 0
    assert list(timeline.carryover_bits) == [0.0, v, 0.0]
    step = anticipate.step_buffer(0.0, 0.5 * v, v)
    assert step.outage


def test_lp():
    sol = anticipate.solve_lp([-1.0, -2.0], [], [], [[1.0, 1.0]], [3.0], [2.0, 2.0])
    assert sol.status == anticipate.LpStatus.optimal
    assert sol.objective_value == pytest.approx(-5.0)
    infeasible = anticipate.solve_lp([1.0], [[1.0]], [5.0], [], [], [1.0])
    assert infeasible.status == anticipate.LpStatus.infeasible
    assert anticipate.build_buffer_matrix(2) == [[1.0, 0.0, -1.0], [0.0, 1.0, 1.0]]


def test_single_user_and_sweep():
    config = anticipate.ScenarioConfig()
    result = anticipate.run_single_user(config)
    assert result.anticipatory.plan.feasible
    assert result.anticipatory.plan.total_prb_slots < result.baseline.plan.total_prb_slots
    assert result.to_csv().startswith("planner,slot,")
    rows = anticipate.run_buffer_sweep(config, [0, 5])
    assert rows[0].total_prb_slots > rows[1].total_prb_slots
    v = config.video()
    trace = anticipate.scenario_trace(config, 0, 0)
    plan = anticipate.plan_anticipatory(v, trace, [50.0] * v.num_slots)
    assert math.isclose(sum(plan.received_bits), v.num_slots * v.bits_per_slot, rel_tol=1e-9)


def test_config_and_multiuser():
    config = anticipate.ScenarioConfig.from_text("[video]\nmax_carryover_v = 2\n")
    assert config.max_carryover_v == 2
    with pytest.raises(ValueError):
        anticipate.ScenarioConfig.from_text("[video]\nnope = 1\n")
    curve = anticipate.run_multiuser(config, config.admission, [5], 2)
    assert len(curve.means) == 2
    assert "kind,requests" in curve.to_csv()
