import json
import math

import numpy as np
import pytest

from kmapper import (
    FcmModel,
    LengthMismatch,
    TooFewStates,
    load_model,
    model_from_doc,
    parse_state,
    step,
    trajectory_csv,
)
from kmapper.fcm import RunVerdict, SquashMode, dhl_learn, dump_model, run
from fixtures import predator_model
from oracles import dhl_oracle


def logistic_model(weights, lam=1.0):
    names = tuple(f"c{i}" for i in range(len(weights)))
    return FcmModel(names, np.asarray(weights, dtype=float), SquashMode.LOGISTIC, lam)


def bivalent_model(weights):
    names = tuple(f"c{i}" for i in range(len(weights)))
    return FcmModel(names, np.asarray(weights, dtype=float), SquashMode.BIVALENT)


def test_logistic_step_values():
    m = logistic_model([[0.0, 0.5], [-0.5, 0.0]])
    nxt = step(m, [1.0, 0.0])
    assert nxt[0] == pytest.approx(0.5, abs=1e-15)
    assert nxt[1] == pytest.approx(1.0 / (1.0 + math.exp(-0.5)), abs=1e-15)


def test_lambda_steepens_logistic():
    gentle = logistic_model([[0.0, 0.5], [0.0, 0.0]], lam=1.0)
    steep = logistic_model([[0.0, 0.5], [0.0, 0.0]], lam=10.0)
    assert step(steep, [1.0, 0.0])[1] > step(gentle, [1.0, 0.0])[1]


def test_bivalent_step_thresholds_at_zero():
    m = bivalent_model([[0.0, 1.0], [-1.0, 0.0]])
    assert step(m, [1.0, 0.0]).tolist() == [0.0, 1.0]
    assert step(m, [0.0, 1.0]).tolist() == [0.0, 0.0]
    assert step(m, [1.0, 1.0]).tolist() == [0.0, 1.0]


def test_state_validation():
    m = bivalent_model([[0.0, 1.0], [-1.0, 0.0]])
    with pytest.raises(LengthMismatch):
        step(m, [1.0])
    with pytest.raises(ValueError):
        step(m, [0.5, 0.5])
    soft = logistic_model([[0.0, 0.5], [0.0, 0.0]])
    with pytest.raises(ValueError):
        step(soft, [1.5, 0.0])


def test_model_validation():
    with pytest.raises(ValueError):
        logistic_model([[0.0, 2.0], [0.0, 0.0]])
    with pytest.raises(ValueError):
        logistic_model([[0.5, 0.0], [0.0, 0.0]])
    with pytest.raises(ValueError):
        FcmModel(("a", "a"), np.zeros((2, 2)))
    with pytest.raises(ValueError):
        FcmModel(("a", "b"), np.zeros((3, 3)))
    with pytest.raises(ValueError):
        logistic_model([[0.0, 0.5], [0.0, 0.0]], lam=0.0)


def test_weights_are_frozen():
    m = logistic_model([[0.0, 0.5], [0.0, 0.0]])
    with pytest.raises(ValueError):
        m.weights[0, 1] = 0.9


def test_predator_run_reaches_rest():
    result = run(predator_model(), [1.0, 0.0])
    states = [s.tolist() for s in result.trajectory]
    assert states == [[1.0, 0.0], [0.0, 1.0], [0.0, 0.0], [0.0, 0.0]]
    assert result.verdict is RunVerdict.FIXED_POINT
    assert result.final.tolist() == [0.0, 0.0]


def test_mutual_negative_pair_settles():
    # from (1,0) the -1/-1 pair suppresses both concepts in one step
    m = bivalent_model([[0.0, -1.0], [-1.0, 0.0]])
    result = run(m, [1.0, 0.0])
    assert result.verdict is RunVerdict.FIXED_POINT
    assert result.final.tolist() == [0.0, 0.0]


def test_mutual_positive_pair_cycles():
    m = bivalent_model([[0.0, 1.0], [1.0, 0.0]])
    result = run(m, [1.0, 0.0])
    states = [s.tolist() for s in result.trajectory]
    assert states == [[1.0, 0.0], [0.0, 1.0], [1.0, 0.0]]
    assert result.verdict is RunVerdict.LIMIT_CYCLE


def test_zero_weights_settle_at_half():
    m = logistic_model([[0.0, 0.0], [0.0, 0.0]])
    result = run(m, [0.9, 0.1])
    assert result.verdict is RunVerdict.FIXED_POINT
    assert len(result.trajectory) == 3
    assert result.final.tolist() == [0.5, 0.5]


def test_budget_verdict():
    m = logistic_model([[0.0, 1.0], [-1.0, 0.0]], lam=5.0)
    result = run(m, [0.3, 0.7], max_iters=1, eps=1e-12)
    assert result.verdict is RunVerdict.BUDGET
    assert len(result.trajectory) == 2


def test_bivalent_runs_terminate_within_state_budget():
    for seed in range(10):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 6))
        w = rng.uniform(-1, 1, (n, n))
        np.fill_diagonal(w, 0.0)
        m = bivalent_model(w)
        initial = rng.integers(0, 2, n).astype(float)
        result = run(m, initial, max_iters=2 ** n + 1)
        assert result.verdict in (RunVerdict.FIXED_POINT, RunVerdict.LIMIT_CYCLE)


def test_run_validation():
    m = predator_model()
    with pytest.raises(ValueError):
        run(m, [1.0, 0.0], max_iters=0)
    with pytest.raises(ValueError):
        run(m, [1.0, 0.0], eps=0.0)


def test_dhl_hand_case():
    # t=1: eta 0.05, both concepts move by +1, so w_ij -> 0.05 off the
    # diagonal; t=2: eta decays to 0 and nothing moves
    w = dhl_learn([(0.0, 0.0), (1.0, 1.0), (1.0, 0.0)])
    assert w[0, 1] == pytest.approx(0.05, abs=1e-15)
    assert w[1, 0] == pytest.approx(0.05, abs=1e-15)
    assert w[0, 0] == w[1, 1] == 0.0


def test_dhl_sign_follows_comovement():
    up_together = [(0.0, 0.0), (0.4, 0.4), (0.8, 0.8), (1.0, 1.0)]
    w = dhl_learn(up_together)
    assert w[0, 1] > 0.0 and w[1, 0] > 0.0
    opposed = [(0.0, 1.0), (0.4, 0.6), (0.8, 0.2), (1.0, 0.0)]
    w = dhl_learn(opposed)
    assert w[0, 1] < 0.0 and w[1, 0] < 0.0


def test_dhl_quiet_concept_learns_nothing():
    states = [(0.5, 0.0, 0.0), (0.5, 0.4, 0.4), (0.5, 0.9, 0.9), (0.5, 1.0, 1.0)]
    w = dhl_learn(states)
    assert w[0, 1] == w[0, 2] == 0.0
    assert w[1, 2] > 0.0


def test_dhl_clips_to_unit_interval():
    w = dhl_learn([(0.0, 0.0), (3.0, 3.0), (3.0, 3.0), (6.0, 6.0)], eta0=1.0)
    assert w[0, 1] == 1.0


def test_dhl_matches_oracle():
    for seed in range(10):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 6))
        length = int(rng.integers(3, 13))
        if seed % 2:
            states = [tuple(float(v) for v in rng.integers(0, 2, n))
                      for _ in range(length)]
        else:
            states = [tuple(float(v) for v in rng.uniform(0, 1, n))
                      for _ in range(length)]
        got = dhl_learn(states)
        want = np.asarray(dhl_oracle(states))
        assert np.allclose(got, want, atol=1e-12), seed


def test_dhl_validation():
    with pytest.raises(TooFewStates):
        dhl_learn([(0.0, 0.0), (1.0, 1.0)])
    with pytest.raises(LengthMismatch):
        dhl_learn([(0.0, 0.0), (1.0, 1.0, 1.0), (1.0, 0.0)])
    with pytest.raises(ValueError):
        dhl_learn([(0.0, 0.0), (1.0, 1.0), (1.0, 0.0)], eta0=0.0)


def test_trajectory_csv_text():
    result = run(predator_model(), [1.0, 0.0])
    assert trajectory_csv(result.trajectory, predator_model().concepts) == (
        "iteration,threat,run\n"
        "0,1.0,0.0\n"
        "1,0.0,1.0\n"
        "2,0.0,0.0\n"
        "3,0.0,0.0\n"
    )


def test_model_file_round_trip():
    m = predator_model()
    text = dump_model(m)
    loaded = load_model(text)
    assert loaded.concepts == m.concepts
    assert np.array_equal(loaded.weights, m.weights)
    assert loaded.squash is m.squash
    assert loaded.lam == m.lam
    assert dump_model(loaded) == text


def test_model_doc_defaults_and_errors():
    doc = {"concepts": ["a", "b"], "weights": [[0, 0.5], [0, 0]]}
    m = model_from_doc(doc)
    assert m.squash is SquashMode.LOGISTIC
    assert m.lam == 1.0
    for bad in (
        "not a dict",
        {"weights": [[0]]},
        {"concepts": ["a"]},
        {"concepts": ["a", "b"], "weights": [[0, 0.5], [0, 0]], "schema": "fcm-9"},
        {"concepts": ["a", "b"], "weights": [[0, 0.5], [0, 0]], "squash": "step"},
        {"concepts": ["a", "b"], "weights": [[0, "x"], [0, 0]]},
        {"concepts": "ab", "weights": [[0, 0.5], [0, 0]]},
    ):
        with pytest.raises(ValueError):
            model_from_doc(bad)


def test_load_model_rejects_bad_json():
    with pytest.raises(json.JSONDecodeError):
        load_model("{not json")


def test_parse_state():
    assert parse_state("1,0", 2).tolist() == [1.0, 0.0]
    assert parse_state(" 0.25 , 0.75 ", 2).tolist() == [0.25, 0.75]
    with pytest.raises(LengthMismatch):
        parse_state("1,0,1", 2)
    with pytest.raises(ValueError):
        parse_state("one,0", 2)
    with pytest.raises(ValueError):
        parse_state("inf,0", 2)
