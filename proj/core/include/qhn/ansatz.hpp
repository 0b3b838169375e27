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

// Layered hardware-efficient ansatz: per layer, RY then RZ on every qubit,
// followed by a nearest-neighbour CX chain whose starting qubit alternates
// with the layer parity.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qhn/qsim.hpp"

namespace qhn {

enum class Axis : unsigned { RY = 0, RZ = 1 };

/// Location of one rotation angle. All fields are 0-based; use
/// from_one_based() when transcribing the usual (alpha, j, k) notation where
/// qubits and layers count from 1.
struct ParamIndex {
    Axis axis = Axis::RY;
    unsigned qubit = 0;
    unsigned layer = 0;

    static ParamIndex from_one_based(Axis axis, unsigned qubit, unsigned layer);

    friend bool operator==(const ParamIndex&, const ParamIndex&) = default;
};

/// 2*N*L rotation angles in radians. Flat layout is layer-major, then axis,
/// then qubit: flat = (layer * 2 + axis) * N + qubit.
class AnsatzParams {
  public:
    AnsatzParams(unsigned n_qubits, unsigned n_layers);
    AnsatzParams(unsigned n_qubits, unsigned n_layers, std::vector<double> angles);

    unsigned n_qubits() const { return n_qubits_; }
    unsigned n_layers() const { return n_layers_; }
    std::size_t size() const { return angles_.size(); }

    std::span<const double> angles() const { return angles_; }
    std::span<double> angles() { return angles_; }

    std::size_t flat_index(const ParamIndex& idx) const;
    ParamIndex param_index(std::size_t flat) const;

    double at(const ParamIndex& idx) const { return angles_[flat_index(idx)]; }
    double& at(const ParamIndex& idx) { return angles_[flat_index(idx)]; }

    friend bool operator==(const AnsatzParams&, const AnsatzParams&) = default;

  private:
    unsigned n_qubits_;
    unsigned n_layers_;
    std::vector<double> angles_;
};

/// Every angle i.i.d. uniform on [0, 2*pi).
AnsatzParams init_params(unsigned n_qubits, unsigned n_layers, std::uint64_t rng_seed);

/// CX (control, target) pairs of a layer, 0-based. Layer 0 (the first layer)
/// pairs (0,1),(2,3),...; layer 1 pairs (1,2),(3,4),...; and so on alternating.
std::vector<std::pair<unsigned, unsigned>> entangling_pairs(unsigned n_qubits, unsigned layer);

/// U(theta)|0...0>.
StateVector run_ansatz(const AnsatzParams& params);

/// Copy of params with the angle at idx moved by sign * pi/2.
/// Throws std::out_of_range for a bad index and std::invalid_argument unless
/// sign is +1 or -1.
AnsatzParams shift_params(const AnsatzParams& params, const ParamIndex& idx, int sign);

}  // namespace qhn
