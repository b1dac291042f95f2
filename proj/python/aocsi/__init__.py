# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ------------------------------------------------------------------------
"""Pilot scheduling by CSI age."""

from ._core import *  # noqa: F401,F403
from ._core import (
    HorizonExhausted,
    LinkParams,
    McsTable,
    RewardCurve,
    Simulator,
    ThresholdSolution,
)

__all__ = [
    "HorizonExhausted",
    "LinkParams",
    "McsTable",
    "RewardCurve",
    "Simulator",
    "ThresholdSolution",
    "autocorrelation",
    "bessel_j0",
    "build_reward_curve",
    "default_mcs_table",
    "doppler_frequency",
    "expected_goodput",
    "generate_fading_trace",
    "mph_to_mps",
    "solve_threshold",
]
