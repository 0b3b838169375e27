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

#include "qhn/qsim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace qhn {

BitString::BitString(std::uint64_t index, unsigned width) : index_(index), width_(width) {
    if (width > 64 || (width < 64 && (index >> width) != 0)) {
        throw std::out_of_range("BitString: index " + std::to_string(index) +
                                " does not fit in " + std::to_string(width) + " bits");
    }
}

BitString BitString::from_string(std::string_view bits) {
    if (bits.size() > 64) {
        throw std::invalid_argument("BitString: more than 64 bits");
    }
    std::uint64_t index = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            index |= std::uint64_t{1} << i;
        } else if (bits[i] != '0') {
            throw std::invalid_argument("BitString: invalid character '" +
                                        std::string(1, bits[i]) + "'");
        }
    }
    return BitString(index, static_cast<unsigned>(bits.size()));
}

std::string BitString::to_string() const {
    std::string out(width_, '0');
    for (unsigned i = 0; i < width_; ++i) {
        if ((*this)[i]) out[i] = '1';
    }
    return out;
}

unsigned hamming_distance(const BitString& a, const BitString& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("hamming_distance: width mismatch (" +
                                    std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()) + ")");
    }
    return static_cast<unsigned>(std::popcount(a.index() ^ b.index()));
}

StateVector::StateVector(unsigned n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw std::length_error("StateVector: n_qubits must be in [1, " +
                                std::to_string(kMaxQubits) + "], got " +
                                std::to_string(n_qubits));
    }
    amplitudes_.assign(std::size_t{1} << n_qubits, Amplitude{0.0, 0.0});
    amplitudes_[0] = 1.0;
}

StateVector zero_state(unsigned n_qubits) { return StateVector(n_qubits); }

void StateVector::check_qubit(unsigned qubit) const {
    if (qubit >= n_qubits_) {
        throw std::out_of_range("qubit " + std::to_string(qubit) + " out of range for " +
                                std::to_string(n_qubits_) + "-qubit state");
    }
}

double StateVector::norm_squared() const {
    double total = 0.0;
    for (const auto& a : amplitudes_) total += std::norm(a);
    return total;
}

namespace {

// Applies [[m00, m01], [m10, m11]] to the target qubit. Pairs are enumerated
// by inserting a zero at the target bit position of a (n-1)-bit counter.
template <typename T00, typename T01, typename T10, typename T11>
void apply_single(std::vector<Amplitude>& amps, unsigned qubit, T00 m00, T01 m01, T10 m10,
                  T11 m11) {
    const std::size_t stride = std::size_t{1} << qubit;
    const std::size_t dim = amps.size();
    for (std::size_t block = 0; block < dim; block += 2 * stride) {
        for (std::size_t i = block; i < block + stride; ++i) {
            const Amplitude a0 = amps[i];
            const Amplitude a1 = amps[i + stride];
            amps[i] = m00 * a0 + m01 * a1;
            amps[i + stride] = m10 * a0 + m11 * a1;
        }
    }
}

}  // namespace

void StateVector::apply_ry(unsigned qubit, double angle) {
    check_qubit(qubit);
    const double c = std::cos(angle / 2);
    const double s = std::sin(angle / 2);
    apply_single(amplitudes_, qubit, c, -s, s, c);
}

void StateVector::apply_rz(unsigned qubit, double angle) {
    check_qubit(qubit);
    const Amplitude phase0 = std::polar(1.0, -angle / 2);
    const Amplitude phase1 = std::polar(1.0, angle / 2);
    const std::size_t stride = std::size_t{1} << qubit;
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        amplitudes_[i] *= (i & stride) ? phase1 : phase0;
    }
}

void StateVector::apply_ry_rz(unsigned qubit, double ry_angle, double rz_angle) {
    check_qubit(qubit);
    const double c = std::cos(ry_angle / 2);
    const double s = std::sin(ry_angle / 2);
    const Amplitude p0 = std::polar(1.0, -rz_angle / 2);
    const Amplitude p1 = std::polar(1.0, rz_angle / 2);
    apply_single(amplitudes_, qubit, p0 * c, -p0 * s, p1 * s, p1 * c);
}

void StateVector::apply_cx(unsigned control, unsigned target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) {
        throw std::invalid_argument("apply_cx: control and target are both qubit " +
                                    std::to_string(control));
    }
    const std::size_t cmask = std::size_t{1} << control;
    const std::size_t tmask = std::size_t{1} << target;
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        // Visit each swapped pair once, from its target-bit-0 member.
        if ((i & cmask) && !(i & tmask)) {
            std::swap(amplitudes_[i], amplitudes_[i | tmask]);
        }
    }
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> probs(amplitudes_.size());
    std::transform(amplitudes_.begin(), amplitudes_.end(), probs.begin(),
                   [](const Amplitude& a) { return std::norm(a); });
    return probs;
}

std::vector<BitString> StateVector::sample(std::size_t n_shots, std::uint64_t rng_seed) const {
    return sample_distribution(probabilities(), n_qubits_, n_shots, rng_seed);
}

std::vector<BitString> sample_distribution(std::span<const double> probabilities,
                                           unsigned n_qubits,
                                           std::size_t n_shots,
                                           std::uint64_t rng_seed) {
    if (probabilities.size() != (std::size_t{1} << n_qubits)) {
        throw std::invalid_argument("sample_distribution: expected 2^" +
                                    std::to_string(n_qubits) + " probabilities, got " +
                                    std::to_string(probabilities.size()));
    }
    if (n_shots == 0) {
        throw std::invalid_argument("sample_distribution: n_shots must be >= 1");
    }
    std::vector<double> cdf(probabilities.size());
    std::partial_sum(probabilities.begin(), probabilities.end(), cdf.begin());
    const double total = cdf.back();

    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> uniform(0.0, total);
    std::vector<BitString> shots;
    shots.reserve(n_shots);
    for (std::size_t s = 0; s < n_shots; ++s) {
        const double u = uniform(rng);
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        // Rounding can leave u == total; fall back to the last state with mass.
        if (it == cdf.end()) it = std::lower_bound(cdf.begin(), cdf.end(), total);
        shots.emplace_back(static_cast<std::uint64_t>(it - cdf.begin()), n_qubits);
    }
    return shots;
}

}  // namespace qhn
