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

// 2-3-1 binary neural network decoded from a 14-bit configuration.
//
// Bit layout (bit i = qubit i, 0-based):
//   0..5   hidden weights, row-major by neuron: W[n][c] = bit 2n+c
//   6..8   hidden biases
//   9..11  output weights
//   12     output bias
//   13     hidden activation (0 = ReLU, 1 = Sigmoid)
// Every signed parameter is 2*bit - 1.

#include <array>
#include <span>

#include "qhn/qsim.hpp"

namespace qhn {

inline constexpr unsigned kBinnBits = 14;
inline constexpr unsigned kBinnHidden = 3;
inline constexpr unsigned kBinnInputs = 2;

/// Predictions are clamped to [kProbClamp, 1 - kProbClamp] before logs.
inline constexpr double kProbClamp = 1e-7;

enum class Activation { ReLU, Sigmoid };

struct BinnConfig {
    std::array<std::array<int, kBinnInputs>, kBinnHidden> hidden_weights{};
    std::array<int, kBinnHidden> hidden_biases{};
    std::array<int, kBinnHidden> output_weights{};
    int output_bias = -1;
    Activation hidden_activation = Activation::ReLU;

    friend bool operator==(const BinnConfig&, const BinnConfig&) = default;
};

struct LabeledPoint {
    std::array<double, 2> x{};
    int y = 0;

    friend bool operator==(const LabeledPoint&, const LabeledPoint&) = default;
};

/// Throws std::invalid_argument unless bits.size() == 14.
BinnConfig decode(const BitString& bits);
BitString encode(const BinnConfig& config);

/// sigmoid(w2 . act(W1 x + b1) + b2).
double forward(const BinnConfig& config, const std::array<double, 2>& x);

/// Mean over points of y log p + (1-y) log(1-p) with clamped p, i.e. minus the
/// mean binary cross-entropy. Throws std::invalid_argument on empty data.
double log_likelihood(const BinnConfig& config, std::span<const LabeledPoint> data);

inline double bce_loss(const BinnConfig& config, std::span<const LabeledPoint> data) {
    return -log_likelihood(config, data);
}

/// Fraction of points where (p >= 0.5) matches the label.
double accuracy(const BinnConfig& config, std::span<const LabeledPoint> data);

double sigmoid(double z);

}  // namespace qhn
