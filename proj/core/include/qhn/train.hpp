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

// Gradient ascent with best-parameter tracking and reduce-on-plateau
// learning-rate decay.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "qhn/ansatz.hpp"
#include "qhn/data.hpp"
#include "qhn/grad.hpp"
#include "qhn/objectives.hpp"

namespace qhn {

enum class GradMode {
    /// Parameter shift on the whole (sampled) objective.
    Shift,
    /// exact_distribution_gradient with objective_weights.
    Exact,
};

std::string to_string(GradMode mode);

struct TrainConfig {
    std::size_t n_epochs = 200;
    std::size_t patience = 3;
    double min_delta = 1e-4;
    double decay_factor = 0.5;
    double learning_rate = 1.0;
    ObjectiveSpec objective;
    GradMode grad_mode = GradMode::Shift;

    void validate() const;
};

struct EpochRecord {
    std::size_t epoch = 0;  // 1-based
    double objective = 0.0;
    double likelihood = 0.0;
    double regularizer = 0.0;
    double grad_mean_abs = 0.0;
    /// Step size used for this epoch's update.
    double learning_rate = 0.0;
    /// Seed of the evaluation that produced `objective`.
    std::uint64_t eval_seed = 0;
};

struct RunTrace {
    std::uint64_t seed = 0;
    double initial_objective = 0.0;
    std::vector<EpochRecord> epochs;
    double best_objective = 0.0;
    /// 0 when the initial parameters were never beaten.
    std::size_t best_epoch = 0;
    std::uint64_t best_eval_seed = 0;
    AnsatzParams best_params{1, 1};
    double final_learning_rate = 0.0;
};

/// What fit() optimizes: a seeded evaluation and a seeded gradient.
struct Problem {
    std::function<ObjectiveValue(const AnsatzParams&, std::uint64_t)> evaluate;
    std::function<GradientVector(const AnsatzParams&, std::uint64_t)> gradient;
};

/// Objective and gradient for a cost table under config.objective / grad_mode.
Problem make_problem(const TrainConfig& config, const CostTable& table);

/// Seed used for the evaluation at `epoch` (0 = initial parameters).
std::uint64_t evaluation_seed(std::uint64_t run_seed, std::size_t epoch);
/// Base seed of the gradient computed at `epoch`.
std::uint64_t gradient_seed(std::uint64_t run_seed, std::size_t epoch);

/// Per epoch: gradient at theta, theta += lr * gradient, evaluate theta and
/// keep it if it beats the best objective so far. When the objective fails to
/// improve on the previous best by at least min_delta for `patience`
/// consecutive epochs, lr *= decay_factor and the counter restarts.
RunTrace fit(const AnsatzParams& init, const TrainConfig& config, const Problem& problem,
             std::uint64_t rng_seed);
RunTrace fit(const AnsatzParams& init, const TrainConfig& config, const CostTable& table,
             std::uint64_t rng_seed);

/// n_keys fits; key i starts from init_params(n_qubits, n_layers, base_seed + i)
/// and uses base_seed + i as its run seed, so every method sees the same
/// initializations and measurement streams. Keys run on `threads` workers
/// (0 = hardware concurrency); results do not depend on the thread count.
std::vector<RunTrace> multi_seed(const TrainConfig& config, const CostTable& table,
                                 unsigned n_layers, std::size_t n_keys, std::uint64_t base_seed,
                                 unsigned threads = 0);

/// How a trained distribution is turned into one network: draw n_shots
/// configurations from q at the best parameters, take the most frequent one
/// (ties to the smaller index), and also average the metrics over all draws.
struct SelectionMetrics {
    BitString modal_config;
    std::size_t modal_count = 0;
    double modal_train_bce = 0.0;
    double modal_test_bce = 0.0;
    double modal_test_accuracy = 0.0;
    double mean_test_bce = 0.0;
    double mean_test_accuracy = 0.0;
};

SelectionMetrics select_model(const AnsatzParams& params, const Dataset& dataset,
                              std::size_t n_shots, std::uint64_t rng_seed);

/// Runs fn(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace qhn
