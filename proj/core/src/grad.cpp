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

#include "qhn/grad.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qhn/seed.hpp"

namespace qhn {

GradientVector shift_gradient(const AnsatzParams& params, const ObjectiveFn& objective,
                              std::uint64_t rng_seed) {
    GradientVector grad(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
        const ParamIndex idx = params.param_index(i);
        const double plus = objective(shift_params(params, idx, +1), derive_seed(rng_seed, i, 0));
        const double minus = objective(shift_params(params, idx, -1), derive_seed(rng_seed, i, 1));
        grad[i] = 0.5 * (plus - minus);
    }
    return grad;
}

GradientVector exact_distribution_gradient(const AnsatzParams& params,
                                           std::span<const double> weights) {
    const std::size_t dim = std::size_t{1} << params.n_qubits();
    if (weights.size() != dim) {
        throw std::invalid_argument("exact_distribution_gradient: expected " +
                                    std::to_string(dim) + " weights, got " +
                                    std::to_string(weights.size()));
    }
    GradientVector grad(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
        const ParamIndex idx = params.param_index(i);
        const auto plus = run_ansatz(shift_params(params, idx, +1)).probabilities();
        const auto minus = run_ansatz(shift_params(params, idx, -1)).probabilities();
        double total = 0.0;
        for (std::size_t s = 0; s < dim; ++s) total += weights[s] * (plus[s] - minus[s]);
        grad[i] = 0.5 * total;
    }
    return grad;
}

GradientVector finite_difference(const AnsatzParams& params, const ObjectiveFn& objective,
                                 double step, std::uint64_t rng_seed) {
    if (!(step > 0)) throw std::invalid_argument("finite_difference: step must be positive");
    GradientVector grad(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
        AnsatzParams up = params;
        AnsatzParams down = params;
        up.angles()[i] += step;
        down.angles()[i] -= step;
        grad[i] = (objective(up, rng_seed) - objective(down, rng_seed)) / (2 * step);
    }
    return grad;
}

double mean_abs(std::span<const double> gradient) {
    if (gradient.empty()) return 0.0;
    double total = 0.0;
    for (double g : gradient) total += std::abs(g);
    return total / static_cast<double>(gradient.size());
}

}  // namespace qhn
