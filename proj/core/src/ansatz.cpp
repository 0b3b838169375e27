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

#include "qhn/ansatz.hpp"

#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace qhn {

ParamIndex ParamIndex::from_one_based(Axis axis, unsigned qubit, unsigned layer) {
    if (qubit == 0 || layer == 0) {
        throw std::out_of_range("ParamIndex::from_one_based: qubit and layer start at 1");
    }
    return ParamIndex{axis, qubit - 1, layer - 1};
}

AnsatzParams::AnsatzParams(unsigned n_qubits, unsigned n_layers)
    : AnsatzParams(n_qubits, n_layers,
                   std::vector<double>(std::size_t{2} * n_qubits * n_layers, 0.0)) {}

AnsatzParams::AnsatzParams(unsigned n_qubits, unsigned n_layers, std::vector<double> angles)
    : n_qubits_(n_qubits), n_layers_(n_layers), angles_(std::move(angles)) {
    if (n_qubits == 0 || n_layers == 0) {
        throw std::invalid_argument("AnsatzParams: n_qubits and n_layers must be positive");
    }
    if (angles_.size() != std::size_t{2} * n_qubits * n_layers) {
        throw std::invalid_argument("AnsatzParams: expected " +
                                    std::to_string(2 * n_qubits * n_layers) +
                                    " angles, got " + std::to_string(angles_.size()));
    }
}

std::size_t AnsatzParams::flat_index(const ParamIndex& idx) const {
    const auto axis = static_cast<unsigned>(idx.axis);
    if (axis > 1 || idx.qubit >= n_qubits_ || idx.layer >= n_layers_) {
        throw std::out_of_range("ParamIndex (axis " + std::to_string(axis) + ", qubit " +
                                std::to_string(idx.qubit) + ", layer " +
                                std::to_string(idx.layer) + ") out of range");
    }
    return (std::size_t{idx.layer} * 2 + axis) * n_qubits_ + idx.qubit;
}

ParamIndex AnsatzParams::param_index(std::size_t flat) const {
    if (flat >= angles_.size()) {
        throw std::out_of_range("flat parameter index " + std::to_string(flat) + " out of range");
    }
    const auto qubit = static_cast<unsigned>(flat % n_qubits_);
    const auto rest = flat / n_qubits_;
    return ParamIndex{static_cast<Axis>(rest % 2), qubit, static_cast<unsigned>(rest / 2)};
}

AnsatzParams init_params(unsigned n_qubits, unsigned n_layers, std::uint64_t rng_seed) {
    AnsatzParams params(n_qubits, n_layers);
    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> uniform(0.0, 2 * std::numbers::pi);
    for (double& angle : params.angles()) angle = uniform(rng);
    return params;
}

std::vector<std::pair<unsigned, unsigned>> entangling_pairs(unsigned n_qubits, unsigned layer) {
    std::vector<std::pair<unsigned, unsigned>> pairs;
    for (unsigned m = layer % 2; m + 1 < n_qubits; m += 2) pairs.emplace_back(m, m + 1);
    return pairs;
}

StateVector run_ansatz(const AnsatzParams& params) {
    StateVector state(params.n_qubits());
    const auto angles = params.angles();
    const unsigned n = params.n_qubits();
    for (unsigned layer = 0; layer < params.n_layers(); ++layer) {
        const std::size_t ry_base = std::size_t{layer} * 2 * n;
        const std::size_t rz_base = ry_base + n;
        for (unsigned q = 0; q < n; ++q) {
            state.apply_ry_rz(q, angles[ry_base + q], angles[rz_base + q]);
        }
        for (const auto& [control, target] : entangling_pairs(n, layer)) {
            state.apply_cx(control, target);
        }
    }
    return state;
}

AnsatzParams shift_params(const AnsatzParams& params, const ParamIndex& idx, int sign) {
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("shift_params: sign must be +1 or -1");
    }
    AnsatzParams shifted = params;
    shifted.at(idx) += sign * (std::numbers::pi / 2);
    return shifted;
}

}  // namespace qhn
