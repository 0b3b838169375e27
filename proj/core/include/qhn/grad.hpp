// Copyright 2026 The QHN Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qhn/ansatz.hpp"

namespace qhn {

/// One partial derivative per angle, in AnsatzParams flat order.
using GradientVector = std::vector<double>;

/// Objective under a measurement seed.
using ObjectiveFn = std::function<double(const AnsatzParams&, std::uint64_t rng_seed)>;

/// Parameter-shift rule applied to the whole objective:
///   g_i = (f(theta + pi/2 e_i) - f(theta - pi/2 e_i)) / 2.
/// Every one of the 2 * size() evaluations gets its own seed,
/// derive_seed(rng_seed, i, 0) for the + shift and derive_seed(rng_seed, i, 1)
/// for the - shift. Exact for objectives linear in q (expectations).
GradientVector shift_gradient(const AnsatzParams& params, const ObjectiveFn& objective,
                              std::uint64_t rng_seed);

/// sum_sigma w(sigma) * (q_{+i}(sigma) - q_{-i}(sigma)) / 2 for each angle i.
/// Each q(sigma) is the expectation of a projector, so this is the exact
/// derivative of sum_sigma w(sigma) q(sigma) with w held fixed; with
/// w = dF/dq it is the exact chain-rule gradient of F(q).
GradientVector exact_distribution_gradient(const AnsatzParams& params,
                                           std::span<const double> weights);

/// Central differences with the same seed on both sides.
GradientVector finite_difference(const AnsatzParams& params, const ObjectiveFn& objective,
                                 double step, std::uint64_t rng_seed = 0);

double mean_abs(std::span<const double> gradient);

}  // namespace qhn
