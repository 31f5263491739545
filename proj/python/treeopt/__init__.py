# Copyright 2026 The treeopt Authors
#
#    Licensed under the Apache License, Version 2.0 (the "License");
#    you may not use this file except in compliance with the License.
#    You may obtain a copy of the License at
#
#        http://www.apache.org/licenses/LICENSE-2.0
#
#    Unless required by applicable law or agreed to in writing, software
#    distributed under the License is distributed on an "AS IS" BASIS,
#    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#    See the License for the specific language governing permissions and
#    limitations under the License.

"""Hierarchical black-box optimizers with simple-regret guarantees."""

from ._core import (
    Box,
    Objective,
    RunResult,
    doo,
    garland,
    harmonic,
    lambert_w,
    objective,
    run_experiment,
    sequool,
    sequool_bound,
    sequool_depth,
    soo,
    stroquool,
    stroquool_bound,
    stroquool_depth,
    stroquool_min_budget,
    summarize_csv,
    uniform,
    wrapped_sine,
)

__all__ = [
    "Box",
    "Objective",
    "RunResult",
    "doo",
    "garland",
    "harmonic",
    "lambert_w",
    "objective",
    "run_experiment",
    "sequool",
    "sequool_bound",
    "sequool_depth",
    "soo",
    "stroquool",
    "stroquool_bound",
    "stroquool_depth",
    "stroquool_min_budget",
    "summarize_csv",
    "uniform",
    "wrapped_sine",
]
