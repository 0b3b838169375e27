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

#include "qhn/train.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "qhn/seed.hpp"

namespace qhn {

namespace {

constexpr std::uint64_t kEvalSlot = 0;
constexpr std::uint64_t kGradSlot = 1;

}  // namespace

std::string to_string(GradMode mode) { return mode == GradMode::Exact ? "exact" : "shift"; }

void TrainConfig::validate() const {
    if (!(learning_rate > 0)) throw std::invalid_argument("learning_rate must be positive");
    if (!(decay_factor > 0 && decay_factor < 1)) {
        throw std::invalid_argument("decay_factor must lie in (0, 1)");
    }
    if (patience == 0) throw std::invalid_argument("patience must be >= 1");
    objective.validate();
}

std::uint64_t evaluation_seed(std::uint64_t run_seed, std::size_t epoch) {
    return derive_seed(run_seed, epoch, kEvalSlot);
}

std::uint64_t gradient_seed(std::uint64_t run_seed, std::size_t epoch) {
    return derive_seed(run_seed, epoch, kGradSlot);
}

Problem make_problem(const TrainConfig& config, const CostTable& table) {
    config.validate();
    const ObjectiveSpec spec = config.objective;
    Problem problem;
    problem.evaluate = [spec, &table](const AnsatzParams& params, std::uint64_t seed) {
        return evaluate_objective(params, spec, table, seed);
    };
    if (config.grad_mode == GradMode::Shift) {
        problem.gradient = [spec, &table](const AnsatzParams& params, std::uint64_t seed) {
            const ObjectiveFn f = [&](const AnsatzParams& p, std::uint64_t s) {
                return objective(p, spec, table, s);
            };
            return shift_gradient(params, f, seed);
        };
    } else {
        problem.gradient = [spec, &table](const AnsatzParams& params, std::uint64_t) {
            const auto probs = run_ansatz(params).probabilities();
            return exact_distribution_gradient(params, objective_weights(probs, spec, table));
        };
    }
    return problem;
}

RunTrace fit(const AnsatzParams& init, const TrainConfig& config, const Problem& problem,
             std::uint64_t rng_seed) {
    if (!(config.learning_rate > 0) || !(config.decay_factor > 0 && config.decay_factor < 1) ||
        config.patience == 0) {
        throw std::invalid_argument("fit: invalid learning-rate schedule");
    }
    RunTrace trace;
    trace.seed = rng_seed;
    trace.epochs.reserve(config.n_epochs);

    AnsatzParams theta = init;
    trace.best_eval_seed = evaluation_seed(rng_seed, 0);
    trace.initial_objective = problem.evaluate(theta, trace.best_eval_seed).value;
    trace.best_objective = trace.initial_objective;
    trace.best_params = theta;

    double lr = config.learning_rate;
    std::size_t stalled = 0;
    for (std::size_t epoch = 1; epoch <= config.n_epochs; ++epoch) {
        const GradientVector grad = problem.gradient(theta, gradient_seed(rng_seed, epoch));
        auto angles = theta.angles();
        for (std::size_t i = 0; i < angles.size(); ++i) angles[i] += lr * grad[i];

        const std::uint64_t eval_seed = evaluation_seed(rng_seed, epoch);
        const ObjectiveValue value = problem.evaluate(theta, eval_seed);
        trace.epochs.push_back(EpochRecord{epoch, value.value, value.likelihood, value.regularizer,
                                           mean_abs(grad), lr, eval_seed});

        if (value.value - trace.best_objective < config.min_delta) {
            if (++stalled >= config.patience) {
                lr *= config.decay_factor;
                stalled = 0;
            }
        } else {
            stalled = 0;
        }
        if (value.value > trace.best_objective) {
            trace.best_objective = value.value;
            trace.best_params = theta;
            trace.best_epoch = epoch;
            trace.best_eval_seed = eval_seed;
        }
    }
    trace.final_learning_rate = lr;
    return trace;
}

RunTrace fit(const AnsatzParams& init, const TrainConfig& config, const CostTable& table,
             std::uint64_t rng_seed) {
    return fit(init, config, make_problem(config, table), rng_seed);
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    workers.clear();
    if (error) std::rethrow_exception(error);
}

std::vector<RunTrace> multi_seed(const TrainConfig& config, const CostTable& table,
                                 unsigned n_layers, std::size_t n_keys, std::uint64_t base_seed,
                                 unsigned threads) {
    if (n_keys == 0) throw std::invalid_argument("multi_seed: n_keys must be >= 1");
    const Problem problem = make_problem(config, table);
    std::vector<RunTrace> traces(n_keys);
    parallel_for(n_keys, threads, [&](std::size_t key) {
        const std::uint64_t seed = base_seed + key;
        traces[key] = fit(init_params(table.n_qubits(), n_layers, seed), config, problem, seed);
    });
    return traces;
}

SelectionMetrics select_model(const AnsatzParams& params, const Dataset& dataset,
                              std::size_t n_shots, std::uint64_t rng_seed) {
    const auto shots = run_ansatz(params).sample(n_shots, rng_seed);
    std::map<std::uint64_t, std::size_t> counts;
    for (const auto& s : shots) ++counts[s.index()];
    // std::map iterates ascending, so the first maximum has the smallest index.
    auto modal = counts.begin();
    for (auto it = counts.begin(); it != counts.end(); ++it) {
        if (it->second > modal->second) modal = it;
    }

    SelectionMetrics out;
    out.modal_config = BitString(modal->first, params.n_qubits());
    out.modal_count = modal->second;
    const BinnConfig best = decode(out.modal_config);
    out.modal_train_bce = bce_loss(best, dataset.train);
    out.modal_test_bce = bce_loss(best, dataset.test);
    out.modal_test_accuracy = accuracy(best, dataset.test);

    double bce_total = 0.0;
    double acc_total = 0.0;
    for (const auto& [index, count] : counts) {
        const BinnConfig config = decode(BitString(index, params.n_qubits()));
        bce_total += static_cast<double>(count) * bce_loss(config, dataset.test);
        acc_total += static_cast<double>(count) * accuracy(config, dataset.test);
    }
    out.mean_test_bce = bce_total / static_cast<double>(shots.size());
    out.mean_test_accuracy = acc_total / static_cast<double>(shots.size());
    return out;
}

}  // namespace qhn
