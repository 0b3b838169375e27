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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "qhn/data.hpp"
#include "qhn/oracle.hpp"
#include "qhn/stats.hpp"

using namespace qhn;

namespace {

CostTable random_table(unsigned n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ll(-2.0, -0.05);
    std::vector<double> v(std::size_t{1} << n);
    for (auto& x : v) x = ll(rng);
    return CostTable(std::move(v));
}

// f(t) = -(t0 - 1)^2 - 2 (t1 + 0.5)^2, maximized at (1, -0.5).
Problem quadratic() {
    Problem p;
    p.evaluate = [](const AnsatzParams& a, std::uint64_t) {
        const auto t = a.angles();
        const double v = -std::pow(t[0] - 1.0, 2) - 2.0 * std::pow(t[1] + 0.5, 2);
        return ObjectiveValue{v, v, 0.0};
    };
    p.gradient = [](const AnsatzParams& a, std::uint64_t) {
        const auto t = a.angles();
        return GradientVector{-2.0 * (t[0] - 1.0), -4.0 * (t[1] + 0.5)};
    };
    return p;
}

Problem flat() {
    Problem p;
    p.evaluate = [](const AnsatzParams&, std::uint64_t) { return ObjectiveValue{1.0, 1.0, 0.0}; };
    p.gradient = [](const AnsatzParams& a, std::uint64_t) { return GradientVector(a.size(), 0.0); };
    return p;
}

TrainConfig small_config(ObjectiveKind kind, std::size_t epochs) {
    TrainConfig c;
    c.n_epochs = epochs;
    c.objective.kind = kind;
    c.objective.lambda = kind == ObjectiveKind::SELBO ? 0.5 : 0.0;
    c.objective.n_shots = 50;
    c.objective.prior_shots = 50;
    return c;
}

}  // namespace

TEST(TrainConfig, defaults) {
    const TrainConfig c;
    EXPECT_EQ(c.n_epochs, 200u);
    EXPECT_EQ(c.patience, 3u);
    EXPECT_EQ(c.min_delta, 1e-4);
    EXPECT_EQ(c.decay_factor, 0.5);
    EXPECT_EQ(c.learning_rate, 1.0);
    EXPECT_NO_THROW(c.validate());
}

TEST(TrainConfig, rejects_bad_schedules) {
    TrainConfig c;
    c.decay_factor = 1.0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = TrainConfig{};
    c.learning_rate = 0.0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = TrainConfig{};
    c.patience = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    EXPECT_THROW(fit(AnsatzParams(1, 1), c, flat(), 0), std::invalid_argument);
}

TEST(Fit, concave_quadratic_converges) {
    TrainConfig c;
    c.learning_rate = 0.2;
    const RunTrace t = fit(AnsatzParams(1, 1), c, quadratic(), 0);
    EXPECT_NEAR(t.best_params.angles()[0], 1.0, 1e-3);
    EXPECT_NEAR(t.best_params.angles()[1], -0.5, 1e-3);
    EXPECT_NEAR(t.best_objective, 0.0, 1e-6);
}

TEST(Fit, concave_quadratic_converges_with_default_rate) {
    const RunTrace t = fit(AnsatzParams(1, 1), TrainConfig{}, quadratic(), 0);
    EXPECT_NEAR(t.best_params.angles()[0], 1.0, 1e-3);
    EXPECT_NEAR(t.best_params.angles()[1], -0.5, 1e-3);
}

TEST(Fit, zero_gradient_decays_every_patience_epochs) {
    TrainConfig c;
    c.n_epochs = 9;
    const RunTrace t = fit(AnsatzParams(1, 1), c, flat(), 0);
    EXPECT_EQ(t.final_learning_rate, 0.125);
    const std::vector<double> expected{1, 1, 1, 0.5, 0.5, 0.5, 0.25, 0.25, 0.25};
    for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(t.epochs[i].learning_rate, expected[i]);
    EXPECT_EQ(t.best_epoch, 0u);
}

TEST(Fit, schedule_resets_on_improvement) {
    // Objective rises by 1 every epoch: never stalls.
    Problem p;
    p.evaluate = [](const AnsatzParams& a, std::uint64_t) {
        return ObjectiveValue{a.angles()[0], a.angles()[0], 0.0};
    };
    p.gradient = [](const AnsatzParams&, std::uint64_t) { return GradientVector{1.0, 0.0}; };
    TrainConfig c;
    c.n_epochs = 20;
    const RunTrace t = fit(AnsatzParams(1, 1), c, p, 0);
    for (const auto& e : t.epochs) EXPECT_EQ(e.learning_rate, 1.0);
    EXPECT_EQ(t.best_epoch, 20u);
    EXPECT_DOUBLE_EQ(t.best_objective, 20.0);
}

TEST(Fit, learning_rate_is_a_power_of_the_decay_factor) {
    const CostTable table = random_table(3, 1);
    const TrainConfig c = small_config(ObjectiveKind::SELBO, 60);
    const RunTrace t = fit(init_params(3, 2, 1), c, table, 1);
    double previous = c.learning_rate;
    for (const auto& e : t.epochs) {
        EXPECT_LE(e.learning_rate, previous);
        previous = e.learning_rate;
        const double d = std::log(e.learning_rate / c.learning_rate) / std::log(c.decay_factor);
        EXPECT_NEAR(d, std::round(d), 1e-9);
        EXPECT_GE(std::round(d), 0.0);
    }
}

TEST(Fit, best_objective_is_running_maximum) {
    const CostTable table = random_table(4, 2);
    for (auto kind : {ObjectiveKind::MLE, ObjectiveKind::ELBO, ObjectiveKind::SELBO}) {
        const RunTrace t = fit(init_params(4, 1, 2), small_config(kind, 40), table, 2);
        double best = t.initial_objective;
        for (const auto& e : t.epochs) best = std::max(best, e.objective);
        EXPECT_EQ(t.best_objective, best);
        EXPECT_GE(t.best_objective, t.initial_objective);
        ASSERT_EQ(t.epochs.size(), 40u);
        for (std::size_t i = 0; i < t.epochs.size(); ++i) EXPECT_EQ(t.epochs[i].epoch, i + 1);
    }
}

TEST(Fit, best_params_reproduce_best_objective) {
    const CostTable table = random_table(4, 3);
    for (auto kind : {ObjectiveKind::MLE, ObjectiveKind::ELBO, ObjectiveKind::SELBO}) {
        const TrainConfig c = small_config(kind, 30);
        const RunTrace t = fit(init_params(4, 2, 3), c, table, 3);
        const double again = objective(t.best_params, c.objective, table, t.best_eval_seed);
        EXPECT_NEAR(again, t.best_objective, 1e-12);
    }
}

TEST(Fit, deterministic) {
    const CostTable table = random_table(3, 4);
    const TrainConfig c = small_config(ObjectiveKind::SELBO, 20);
    const RunTrace a = fit(init_params(3, 1, 4), c, table, 4);
    const RunTrace b = fit(init_params(3, 1, 4), c, table, 4);
    ASSERT_EQ(a.epochs.size(), b.epochs.size());
    for (std::size_t i = 0; i < a.epochs.size(); ++i) {
        EXPECT_EQ(a.epochs[i].objective, b.epochs[i].objective);
        EXPECT_EQ(a.epochs[i].grad_mean_abs, b.epochs[i].grad_mean_abs);
    }
    EXPECT_TRUE(a.best_params == b.best_params);
}

TEST(Fit, exact_gradient_mode_improves_exact_objective) {
    const CostTable table = random_table(3, 5);
    TrainConfig c = small_config(ObjectiveKind::ELBO, 50);
    c.objective.likelihood_mode = LikelihoodMode::Exact;
    c.grad_mode = GradMode::Exact;
    const RunTrace t = fit(init_params(3, 1, 5), c, table, 5);
    EXPECT_GT(t.best_objective, t.initial_objective);
}

TEST(Fit, exact_gradient_matches_shift_in_exact_mode) {
    const CostTable table = random_table(3, 6);
    TrainConfig c = small_config(ObjectiveKind::MLE, 1);
    c.objective.likelihood_mode = LikelihoodMode::Exact;
    const auto p = init_params(3, 2, 6);
    const auto shift = make_problem(c, table).gradient(p, 0);
    c.grad_mode = GradMode::Exact;
    const auto exact = make_problem(c, table).gradient(p, 0);
    for (std::size_t i = 0; i < shift.size(); ++i) EXPECT_NEAR(shift[i], exact[i], 1e-12);
}

TEST(MultiSeed, reproducible_and_thread_independent) {
    const CostTable table = random_table(3, 7);
    const TrainConfig c = small_config(ObjectiveKind::MLE, 10);
    const auto a = multi_seed(c, table, 1, 6, 100, 1);
    const auto b = multi_seed(c, table, 1, 6, 100, 4);
    ASSERT_EQ(a.size(), 6u);
    for (std::size_t k = 0; k < a.size(); ++k) {
        EXPECT_EQ(a[k].seed, 100 + k);
        EXPECT_EQ(a[k].best_objective, b[k].best_objective);
        EXPECT_TRUE(a[k].best_params == b[k].best_params);
    }
}

TEST(MultiSeed, methods_share_initializations) {
    const CostTable table = random_table(3, 8);
    const auto mle = multi_seed(small_config(ObjectiveKind::MLE, 0), table, 2, 4, 50, 1);
    const auto elbo = multi_seed(small_config(ObjectiveKind::ELBO, 0), table, 2, 4, 50, 1);
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_TRUE(mle[k].best_params == elbo[k].best_params);
        EXPECT_TRUE(mle[k].best_params == init_params(3, 2, 50 + k));
    }
}

TEST(MultiSeed, statistics_match_two_pass_oracle) {
    const CostTable table = random_table(3, 9);
    const auto traces = multi_seed(small_config(ObjectiveKind::SELBO, 15), table, 1, 8, 0, 1);
    std::vector<double> best;
    for (const auto& t : traces) best.push_back(t.best_objective);
    double mean = 0.0;
    for (double v : best) mean += v;
    mean /= static_cast<double>(best.size());
    double ss = 0.0;
    for (double v : best) ss += (v - mean) * (v - mean);
    const MeanStd ms = mean_std(best);
    EXPECT_NEAR(ms.mean, mean, 1e-12);
    EXPECT_NEAR(ms.std, std::sqrt(ss / (best.size() - 1)), 1e-12);
    EXPECT_NEAR(mean_std(best, false).std, std::sqrt(ss / best.size()), 1e-12);
    EXPECT_EQ(mean_std(std::vector<double>{4.0}).std, 0.0);
}

TEST(ParallelFor, visits_every_index_once) {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
    for (int h : hits) EXPECT_EQ(h, 1);
    EXPECT_THROW(parallel_for(10, 3, [](std::size_t i) {
                     if (i == 7) throw std::runtime_error("boom");
                 }),
                 std::runtime_error);
}

TEST(SelectModel, point_mass) {
    const Dataset data = generate("gaussian", 1);
    AnsatzParams p(kBinnBits, 1);
    for (unsigned q : {0u, 3u, 9u, 13u}) p.at({Axis::RY, q, 0}) = std::numbers::pi;
    const auto probs = run_ansatz(p).probabilities();
    const auto peak = static_cast<std::uint64_t>(
        std::max_element(probs.begin(), probs.end()) - probs.begin());
    ASSERT_NEAR(probs[peak], 1.0, 1e-12);

    const SelectionMetrics m = select_model(p, data, 100, 11);
    EXPECT_EQ(m.modal_config.index(), peak);
    EXPECT_EQ(m.modal_count, 100u);
    const BinnConfig config = decode(BitString(peak, kBinnBits));
    EXPECT_DOUBLE_EQ(m.modal_test_bce, bce_loss(config, data.test));
    EXPECT_DOUBLE_EQ(m.modal_train_bce, bce_loss(config, data.train));
    EXPECT_DOUBLE_EQ(m.modal_test_accuracy, accuracy(config, data.test));
    EXPECT_NEAR(m.mean_test_bce, m.modal_test_bce, 1e-12);
    EXPECT_NEAR(m.mean_test_accuracy, m.modal_test_accuracy, 1e-12);
}

TEST(SelectModel, matches_counting_oracle) {
    const Dataset data = generate("moon", 2);
    const auto p = init_params(kBinnBits, 1, 2);
    const SelectionMetrics m = select_model(p, data, 100, 12);
    const auto shots = run_ansatz(p).sample(100, 12);
    std::map<std::uint64_t, std::size_t> counts;
    double bce = 0.0;
    double acc = 0.0;
    for (const auto& s : shots) {
        ++counts[s.index()];
        bce += bce_loss(decode(s), data.test);
        acc += accuracy(decode(s), data.test);
    }
    std::size_t best_count = 0;
    std::uint64_t best_index = 0;
    for (const auto& [index, count] : counts) {
        if (count > best_count || (count == best_count && index < best_index)) {
            best_count = count;
            best_index = index;
        }
    }
    EXPECT_EQ(m.modal_config.index(), best_index);
    EXPECT_EQ(m.modal_count, best_count);
    EXPECT_NEAR(m.mean_test_bce, bce / 100.0, 1e-12);
    EXPECT_NEAR(m.mean_test_accuracy, acc / 100.0, 1e-12);
}
