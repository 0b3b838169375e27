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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qhn {

namespace {

constexpr unsigned kHiddenBiasBit = 6;
constexpr unsigned kOutputWeightBit = 9;
constexpr unsigned kOutputBiasBit = 12;
constexpr unsigned kActivationBit = 13;

int signed_bit(const BitString& bits, unsigned i) { return bits[i] ? 1 : -1; }

double hidden_activation(Activation act, double z) {
    return act == Activation::ReLU ? std::max(0.0, z) : sigmoid(z);
}

void require_nonempty(std::span<const LabeledPoint> data, const char* what) {
    if (data.empty()) throw std::invalid_argument(std::string(what) + ": empty data");
}

}  // namespace

double sigmoid(double z) {
    // Split by sign so exp never overflows.
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

BinnConfig decode(const BitString& bits) {
    if (bits.size() != kBinnBits) {
        throw std::invalid_argument("decode: expected " + std::to_string(kBinnBits) +
                                    " bits, got " + std::to_string(bits.size()));
    }
    BinnConfig config;
    for (unsigned n = 0; n < kBinnHidden; ++n) {
        for (unsigned c = 0; c < kBinnInputs; ++c) {
            config.hidden_weights[n][c] = signed_bit(bits, n * kBinnInputs + c);
        }
        config.hidden_biases[n] = signed_bit(bits, kHiddenBiasBit + n);
        config.output_weights[n] = signed_bit(bits, kOutputWeightBit + n);
    }
    config.output_bias = signed_bit(bits, kOutputBiasBit);
    config.hidden_activation = bits[kActivationBit] ? Activation::Sigmoid : Activation::ReLU;
    return config;
}

BitString encode(const BinnConfig& config) {
    std::uint64_t index = 0;
    auto put = [&index](unsigned bit, int value) {
        if (value != 1 && value != -1) {
            throw std::invalid_argument("encode: parameters must be +1 or -1");
        }
        if (value == 1) index |= std::uint64_t{1} << bit;
    };
    for (unsigned n = 0; n < kBinnHidden; ++n) {
        for (unsigned c = 0; c < kBinnInputs; ++c) {
            put(n * kBinnInputs + c, config.hidden_weights[n][c]);
        }
        put(kHiddenBiasBit + n, config.hidden_biases[n]);
        put(kOutputWeightBit + n, config.output_weights[n]);
    }
    put(kOutputBiasBit, config.output_bias);
    if (config.hidden_activation == Activation::Sigmoid) {
        index |= std::uint64_t{1} << kActivationBit;
    }
    return BitString(index, kBinnBits);
}

double forward(const BinnConfig& config, const std::array<double, 2>& x) {
    double out = config.output_bias;
    for (unsigned n = 0; n < kBinnHidden; ++n) {
        const auto& w = config.hidden_weights[n];
        const double z = w[0] * x[0] + w[1] * x[1] + config.hidden_biases[n];
        out += config.output_weights[n] * hidden_activation(config.hidden_activation, z);
    }
    // Keep the open interval even where the sigmoid rounds to 0 or 1.
    return std::clamp(sigmoid(out), std::numeric_limits<double>::denorm_min(),
                      std::nextafter(1.0, 0.0));
}

double log_likelihood(const BinnConfig& config, std::span<const LabeledPoint> data) {
    require_nonempty(data, "log_likelihood");
    double total = 0.0;
    for (const auto& point : data) {
        const double p = std::clamp(forward(config, point.x), kProbClamp, 1.0 - kProbClamp);
        total += point.y == 1 ? std::log(p) : std::log1p(-p);
    }
    return total / static_cast<double>(data.size());
}

double accuracy(const BinnConfig& config, std::span<const LabeledPoint> data) {
    require_nonempty(data, "accuracy");
    std::size_t correct = 0;
    for (const auto& point : data) {
        const int predicted = forward(config, point.x) >= 0.5 ? 1 : 0;
        if (predicted == point.y) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(data.size());
}

}  // namespace qhn
