// SPDX-License-Identifier: Apache-2.0
//
// noma-esg  uplink NOMA vs. OMA ergodic sum-rate analysis
// Copyright (C) 2026 The noma-esg authors
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

#pragma once

#include "analytic_rates.hpp"
#include "experiments.hpp"
#include "geometry.hpp"
#include "matrix_kernels.hpp"
#include "mc_simulator.hpp"
#include "quadrature.hpp"
#include "rng.hpp"
#include "special_functions.hpp"
