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

// Brute force over all 2^14 network configurations.

#include <cstddef>
#include <span>

#include "qhn/data.hpp"
#include "qhn/objectives.hpp"

namespace qhn {

struct ExhaustiveResult {
    BitString best_config;
    double best_train_loss = 0.0;
    double test_loss = 0.0;
    double test_accuracy = 0.0;
    /// ln[(1/2^N) sum_sigma exp(log p(Y|X,sigma))], mean-reduction likelihood.
    double log_marginal_likelihood = 0.0;
    std::size_t evaluated_configs = 0;
};

/// log_likelihood(decode(sigma), train) for every sigma, indexed by basis state.
CostTable cost_table(std::span<const LabeledPoint> train, unsigned threads = 1);

/// ln[(1/2^N) sum exp(entry)] via log-sum-exp.
double log_marginal_likelihood(const CostTable& table);

/// Lowest train BCE over the table; ties go to the smallest index.
std::uint64_t best_config_index(const CostTable& table);

ExhaustiveResult exhaustive_search(const Dataset& dataset, unsigned threads = 1);
ExhaustiveResult exhaustive_search(const Dataset& dataset, const CostTable& train_table);

}  // namespace qhn
