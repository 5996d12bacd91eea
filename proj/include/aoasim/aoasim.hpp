// SPDX-License-Identifier: Apache-2.0
//
// aoasim - geometry-based angle-of-arrival simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef AOASIM_AOASIM_HPP
#define AOASIM_AOASIM_HPP

#include "angular_models.hpp"
#include "antenna_pattern.hpp"
#include "constants.hpp"
#include "estimation.hpp"
#include "experiment.hpp"
#include "geometry.hpp"
#include "montecarlo.hpp"
#include "rng.hpp"
#include "scenario_config.hpp"
#include "special_functions.hpp"
#include "tap_extraction.hpp"

#endif
