# Copyright 2026 The ctigbench Authors.
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Smoke tests for the Python bindings."""

import csv
import json
import math

import numpy as np
import pytest

import ctigbench as cb


def test_model_roundtrip_and_validation():
    theta = np.array([[0.0, -0.5], [0.25, 0.0]])
    model = cb.CausalModel([1.0, 2.0], theta, 1.0)
    assert model.num_types == 2
    np.testing.assert_array_equal(model.theta, theta)
    assert model.parents(0) == [1]
    with pytest.raises(ValueError):
        cb.CausalModel([1.0], theta, 1.0)


def test_generation_is_deterministic_and_self_distance_is_zero():
    model = cb.sample_random_model(5, seed=3)
    a = cb.generate_sequence(model, 500.0, seed=7)
    b = cb.generate_sequence(model, 500.0, seed=7)
    assert a.events == b.events
    assert len(a.events) <= a.num_triggers()
    assert cb.directed_distance(model, model, a) == 0.0
    times = [t for _, t in a.events]
    assert times == sorted(times)


def test_distance_symmetry_and_range():
    m1 = cb.sample_random_model(6, seed=1)
    m2 = cb.sample_random_model(6, seed=2)
    r1 = cb.generate_sequence(m1, 300.0, seed=1)
    r2 = cb.generate_sequence(m2, 300.0, seed=2)
    ab = cb.symmetric_distance(m1, m2, r1, r2)
    ba = cb.symmetric_distance(m2, m1, r2, r1)
    assert ab["symmetric"] == ba["symmetric"]
    assert 0.0 <= ab["symmetric"] <= 1.0
    assert math.isclose(ab["symmetric"], math.sqrt(ab["d_a_on_b"] * ab["d_b_on_a"]))
    est = cb.mean_distance(m1, m2, 300.0, iters=4, seed=5)
    assert len(est["draws"]) == 4
    assert cb.mean_distance(m1, m1, 300.0, iters=2, seed=5)["mean"] == 0.0


def test_ctig_builder_invariants():
    out = cb.build_ctig(seed=4)
    tt = out["theta_tilde"]
    np.testing.assert_array_equal(tt, -tt.T)
    assert len(out["noncausal_edges"]) == 2
    for k in out["noncausal_edges"]:
        assert not out["theta"][k, :].any() and not out["theta"][:, k].any()
    a, b = out["edges"][3]
    assert cb.edge_index(a, b, 5) == 3


def test_oracle_on_true_triggers_and_metrics():
    model = cb.sample_random_model(4, seed=9)
    r = cb.generate_sequence(model, 400.0, seed=9)
    items = cb.negative_sample(r.events, 4, "transductive", 1, 11)
    assert len(items) == 2 * len(r.events)
    scores = cb.oracle_predict(model, items, r.events)
    labels = [label for _, _, label in items]
    acc = cb.compute_metric(scores, labels, "accuracy")
    assert 0.5 <= acc <= 1.0
    assert cb.compute_metric([0.9, 0.1], [1, 0], "auc") == 1.0


def test_properties():
    model = cb.sample_random_model(6, seed=12)
    for i in range(6):
        for j in model.parents(i):
            assert cb.is_monotonic(model, i, j) == cb.is_monotonic_brute_force(model, i, j)


def test_lowess_reproduces_a_line():
    x = [0.1 * k for k in range(20)]
    y = [2.0 * v - 1.0 for v in x]
    assert np.allclose(cb.lowess(x, y), y)
    with pytest.raises(ValueError):
        cb.lowess([0.0, 1.0], [0.0, 1.0])


def test_config_check_names_offending_keys():
    problems = cb.check_config({"ctig": {"nu1": 1.5}, "nu2": 1})
    assert any("nu1" in p for p in problems)
    assert any("nu2" in p for p in problems)
    assert cb.check_config({"seed": 4}) == []


def test_export_then_score_roundtrip(tmp_path):
    config = {"seed": 2, "horizon": 200, "model": {"num_types": 4},
              "distance": {"iters": 2}, "experiment_a": {"pairs": 2}}
    report = cb.run("export", config, tmp_path / "export")
    assert report["results"]["datasets"] == 2
    data = cb.read_dataset(str(tmp_path / "export" / "datasets" / "pair_0000.csv"))
    assert data["header"]["format_version"] == 1
    assert data["header"]["d_bar"] is not None
    test_items = [(i, t, lab) for split, i, _, _, t, lab in data["rows"] if split == "test"]
    assert test_items

    # Write a scores file the way an external predictor would, permuted.
    path = tmp_path / "scores.csv"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["id", "timestamp", "score"])
        for i, t, _ in reversed(test_items):
            w.writerow([i, "%.9g" % t, 0.25])
    assert cb.read_scores(str(path), test_items) == [0.25] * len(test_items)


def test_run_reports_are_deterministic(tmp_path):
    config = {"seed": 5, "horizon": 100, "model": {"num_types": 3}, "distance": {"iters": 3}}
    a = cb.run("distance", config, tmp_path / "a")
    b = cb.run("distance", config, tmp_path / "b")
    assert a["results"] == b["results"]
    on_disk = json.loads((tmp_path / "a" / "report.json").read_text())
    assert on_disk["results"] == a["results"]
    with pytest.raises(ValueError):
        cb.run("distance", {"bogus": 1}, tmp_path / "c")
