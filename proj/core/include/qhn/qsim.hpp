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

// Dense state-vector simulation over RY, RZ and CX.
//
// Basis ordering: the integer index of a computational basis state is
// sum_i bit_i * 2^i, i.e. qubit 0 is the least significant bit. Every module
// in this project (decoding, sampling, kernels) uses this rule.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qhn {

inline constexpr unsigned kMaxQubits = 24;

using Amplitude = std::complex<double>;

/// One measured configuration: `width` bits packed into an integer using the
/// qubit-0-is-LSB rule.
class BitString {
  public:
    BitString() = default;
    BitString(std::uint64_t index, unsigned width);

    /// Parses "0101..." where character i is the bit of qubit i.
    static BitString from_string(std::string_view bits);

    unsigned size() const { return width_; }
    std::uint64_t index() const { return index_; }
    bool operator[](unsigned qubit) const { return ((index_ >> qubit) & 1u) != 0; }

    /// Inverse of from_string.
    std::string to_string() const;

    friend bool operator==(const BitString&, const BitString&) = default;

  private:
    std::uint64_t index_ = 0;
    unsigned width_ = 0;
};

/// Squared Euclidean distance between {0,1} vectors, which is the Hamming
/// distance. Throws std::invalid_argument on width mismatch.
unsigned hamming_distance(const BitString& a, const BitString& b);

class StateVector {
  public:
    /// |0...0> on n_qubits. Throws std::length_error outside [1, kMaxQubits].
    explicit StateVector(unsigned n_qubits);

    unsigned n_qubits() const { return n_qubits_; }
    std::size_t dimension() const { return amplitudes_.size(); }
    std::span<const Amplitude> amplitudes() const { return amplitudes_; }

    double norm_squared() const;

    // Gates mutate in place. Each single-qubit gate is one pass over the
    // 2^(n-1) amplitude pairs that differ only in the target bit.
    void apply_ry(unsigned qubit, double angle);
    void apply_rz(unsigned qubit, double angle);
    /// RZ(rz_angle) * RY(ry_angle) in a single pass.
    void apply_ry_rz(unsigned qubit, double ry_angle, double rz_angle);
    void apply_cx(unsigned control, unsigned target);

    /// Born-rule probabilities |a_i|^2 indexed by basis state.
    std::vector<double> probabilities() const;

    /// n_shots i.i.d. measurements of all qubits, deterministic in rng_seed.
    std::vector<BitString> sample(std::size_t n_shots, std::uint64_t rng_seed) const;

  private:
    void check_qubit(unsigned qubit) const;

    unsigned n_qubits_;
    std::vector<Amplitude> amplitudes_;
};

StateVector zero_state(unsigned n_qubits);

/// Draws n_shots basis states from an (unnormalized is fine) probability
/// vector of length 2^n_qubits by inverse-CDF lookup.
std::vector<BitString> sample_distribution(std::span<const double> probabilities,
                                           unsigned n_qubits,
                                           std::size_t n_shots,
                                           std::uint64_t rng_seed);

}  // namespace qhn
