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

#include "qhn/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "qhn/train.hpp"

namespace qhn {

CostTable cost_table(std::span<const LabeledPoint> train, unsigned threads) {
    constexpr std::size_t kConfigs = std::size_t{1} << kBinnBits;
    std::vector<double> ll(kConfigs);
    constexpr std::size_t kChunk = 1024;
    parallel_for(kConfigs / kChunk, threads, [&](std::size_t chunk) {
        for (std::size_t i = chunk * kChunk; i < (chunk + 1) * kChunk; ++i) {
            ll[i] = log_likelihood(decode(BitString(i, kBinnBits)), train);
        }
    });
    return CostTable(std::move(ll));
}

double log_marginal_likelihood(const CostTable& table) {
    const auto ll = table.log_likelihoods();
    const double peak = *std::max_element(ll.begin(), ll.end());
    double total = 0.0;
    for (double v : ll) total += std::exp(v - peak);
    return peak + std::log(total) - table.n_qubits() * std::numbers::ln2;
}

std::uint64_t best_config_index(const CostTable& table) {
    const auto ll = table.log_likelihoods();
    // max_element returns the first maximum, i.e. the smallest index on ties.
    return static_cast<std::uint64_t>(std::max_element(ll.begin(), ll.end()) - ll.begin());
}

ExhaustiveResult exhaustive_search(const Dataset& dataset, const CostTable& train_table) {
    ExhaustiveResult out;
    const std::uint64_t best = best_config_index(train_table);
    out.best_config = BitString(best, train_table.n_qubits());
    out.best_train_loss = train_table.bce(best);
    const BinnConfig config = decode(out.best_config);
    out.test_loss = bce_loss(config, dataset.test);
    out.test_accuracy = accuracy(config, dataset.test);
    out.log_marginal_likelihood = log_marginal_likelihood(train_table);
    out.evaluated_configs = train_table.size();
    return out;
}

ExhaustiveResult exhaustive_search(const Dataset& dataset, unsigned threads) {
    return exhaustive_search(dataset, cost_table(dataset.train, threads));
}

}  // namespace qhn
