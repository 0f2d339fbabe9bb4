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
"""Causal event sequence benchmark: simulation, distances, counterfactual evaluation."""

import json as _json

from ._core import (
    CausalModel,
    ConfigError,
    EstimationError,
    FormatError,
    IoError,
    ParameterError,
    Realization,
    UndefinedDistanceError,
    build_ctig,
    compute_metric,
    directed_distance,
    edge_index,
    estimate_pns,
    generate_sequence,
    interventional_pns,
    is_monotonic,
    is_monotonic_brute_force,
    lowess,
    mean_distance,
    negative_sample,
    oracle_predict,
    read_dataset,
    read_scores,
    sample_random_model,
    symmetric_distance,
)
from . import _core


def check_config(config):
    """Schema problems of a config mapping; empty when valid."""
    return _core.check_config(_json.dumps(config))


def run(command, config=None, out_dir="out"):
    """Run a pipeline command and return its report as a dict."""
    return _json.loads(_core.run_command(command, _json.dumps(config or {}), str(out_dir)))


__all__ = [name for name in dir() if not name.startswith("_")]
