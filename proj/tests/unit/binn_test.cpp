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

#include "qhn/binn.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

using namespace qhn;

namespace {

// Straight-line re-implementation of the per-point likelihood.
double reference_log_likelihood(const BinnConfig& c, const std::vector<LabeledPoint>& data) {
    double sum = 0.0;
    for (const auto& pt : data) {
        double out = c.output_bias;
        for (int n = 0; n < 3; ++n) {
            double z = c.hidden_weights[n][0] * pt.x[0] + c.hidden_weights[n][1] * pt.x[1] +
                       c.hidden_biases[n];
            double h = c.hidden_activation == Activation::ReLU ? (z > 0 ? z : 0.0)
                                                               : 1.0 / (1.0 + std::exp(-z));
            out += c.output_weights[n] * h;
        }
        double p = 1.0 / (1.0 + std::exp(-out));
        p = std::min(std::max(p, 1e-7), 1.0 - 1e-7);
        sum += pt.y * std::log(p) + (1 - pt.y) * std::log(1 - p);
    }
    return sum / static_cast<double>(data.size());
}

std::vector<LabeledPoint> random_points(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> coord(0.0, 1.5);
    std::bernoulli_distribution label(0.5);
    std::vector<LabeledPoint> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back({{coord(rng), coord(rng)}, label(rng) ? 1 : 0});
    return pts;
}

BinnConfig all(int sign, Activation act) {
    BinnConfig c;
    for (auto& row : c.hidden_weights) row = {sign, sign};
    c.hidden_biases = {sign, sign, sign};
    c.output_weights = {sign, sign, sign};
    c.output_bias = sign;
    c.hidden_activation = act;
    return c;
}

}  // namespace

TEST(Decode, all_zeros_and_all_ones) {
    EXPECT_EQ(decode(BitString(0, 14)), all(-1, Activation::ReLU));
    EXPECT_EQ(decode(BitString((1u << 14) - 1, 14)), all(+1, Activation::Sigmoid));
}

TEST(Decode, first_and_last_bit) {
    const auto c = decode(BitString::from_string("10000000000001"));
    BinnConfig expected = all(-1, Activation::Sigmoid);
    expected.hidden_weights[0][0] = 1;
    EXPECT_EQ(c, expected);
}

TEST(Decode, field_order) {
    EXPECT_EQ(decode(BitString::from_string("01000000000000")).hidden_weights[0][1], 1);
    EXPECT_EQ(decode(BitString::from_string("00100000000000")).hidden_weights[1][0], 1);
    EXPECT_EQ(decode(BitString::from_string("00000010000000")).hidden_biases[0], 1);
    EXPECT_EQ(decode(BitString::from_string("00000000010000")).output_weights[0], 1);
    EXPECT_EQ(decode(BitString::from_string("00000000000010")).output_bias, 1);
}

TEST(Decode, wrong_length) {
    EXPECT_THROW(decode(BitString(0, 13)), std::invalid_argument);
    EXPECT_THROW(decode(BitString(0, 15)), std::invalid_argument);
}

TEST(Decode, bijection_over_all_configs) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < (1u << 14); ++i) {
        const BitString b(i, 14);
        EXPECT_EQ(encode(decode(b)), b);
        seen.insert(encode(decode(b)).index());
    }
    EXPECT_EQ(seen.size(), 16384u);
}

TEST(Forward, hand_computed) {
    EXPECT_NEAR(forward(all(+1, Activation::ReLU), {0, 0}), 0.9820137900379085, 1e-12);
    EXPECT_NEAR(forward(all(-1, Activation::ReLU), {0, 0}), 0.2689414213699951, 1e-12);
    const double y = forward(all(+1, Activation::Sigmoid), {-1e6, -1e6});
    EXPECT_GT(y, 0.0);
    EXPECT_LT(y, 1.0);
}

TEST(Forward, strictly_inside_unit_interval_for_every_config) {
    const std::vector<std::array<double, 2>> inputs{{0, 0}, {3, -2}, {-50, 40}, {1e3, 1e3}};
    for (std::uint64_t i = 0; i < (1u << 14); ++i) {
        const auto c = decode(BitString(i, 14));
        for (const auto& x : inputs) {
            const double y = forward(c, x);
            ASSERT_GT(y, 0.0);
            ASSERT_LT(y, 1.0);
        }
    }
}

TEST(LogLikelihood, analytic_cases) {
    // Confidently right everywhere: the clamp caps the loss at 1e-7.
    std::vector<LabeledPoint> ones(5, LabeledPoint{{100, 100}, 1});
    EXPECT_NEAR(log_likelihood(all(+1, Activation::ReLU), ones), 0.0, 1e-6);

    // p = 0.5 exactly: all weights zero is not expressible, but a symmetric
    // input makes pre-activation 0 for output weights summing with bias to 0.
    BinnConfig half = all(-1, Activation::ReLU);  // h = 0 at x=(0,0) -> out = sigmoid(-1)
    half.output_bias = 1;
    half.hidden_biases = {1, -1, -1};
    half.output_weights = {-1, 1, 1};  // h0 = 1: out = sigmoid(1 - 1) = 0.5
    std::vector<LabeledPoint> origin{{{0, 0}, 0}, {{0, 0}, 1}};
    EXPECT_NEAR(forward(half, {0, 0}), 0.5, 1e-15);
    EXPECT_NEAR(log_likelihood(half, origin), -std::log(2.0), 1e-12);
    EXPECT_THROW(log_likelihood(half, {}), std::invalid_argument);
}

TEST(LogLikelihood, matches_reference_on_random_cases) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::uint64_t> cfg(0, (1u << 14) - 1);
    for (int trial = 0; trial < 100; ++trial) {
        const auto data = random_points(trial % 10 == 0 ? 10 : 37, rng);
        const auto c = decode(BitString(cfg(rng), 14));
        EXPECT_NEAR(log_likelihood(c, data), reference_log_likelihood(c, data), 1e-12);
        EXPECT_NEAR(bce_loss(c, data), -reference_log_likelihood(c, data), 1e-12);
    }
}

TEST(Accuracy, examples) {
    std::vector<LabeledPoint> pts(20, LabeledPoint{{0, 0}, 1});
    EXPECT_EQ(accuracy(all(+1, Activation::ReLU), pts), 1.0);

    std::mt19937_64 rng(8);
    auto data = random_points(200, rng);
    const auto c = decode(BitString(0b10110011101001, 14));
    std::size_t correct = 0;
    for (const auto& p : data) correct += ((forward(c, p.x) >= 0.5) == (p.y == 1));
    const double acc = accuracy(c, data);
    EXPECT_DOUBLE_EQ(acc, correct / 200.0);

    for (auto& p : data) p.y = 1 - p.y;
    EXPECT_NEAR(accuracy(c, data), 1.0 - acc, 1e-15);
    EXPECT_THROW(accuracy(c, {}), std::invalid_argument);
}
