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

#include "qhn/objectives.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "qhn/seed.hpp"

namespace qhn {

namespace {

constexpr std::uint64_t kPriorStream = 0x7072696f72ULL;

void check_probabilities(std::span<const double> probabilities, const CostTable& table) {
    if (probabilities.size() != table.size()) {
        throw std::invalid_argument("probability vector has " +
                                    std::to_string(probabilities.size()) +
                                    " entries but the cost table has " +
                                    std::to_string(table.size()));
    }
}

unsigned log2_size(std::size_t n) {
    if (n < 2 || !std::has_single_bit(n)) {
        throw std::invalid_argument("expected a power-of-two length >= 2, got " + std::to_string(n));
    }
    return static_cast<unsigned>(std::countr_zero(n));
}

// exp(-d / h^2) for d = 0..n.
std::vector<double> kernel_by_distance(unsigned n, double bandwidth) {
    if (!(bandwidth > 0)) throw std::invalid_argument("RBF bandwidth must be positive");
    std::vector<double> k(n + 1);
    for (unsigned d = 0; d <= n; ++d) k[d] = std::exp(-static_cast<double>(d) / (bandwidth * bandwidth));
    return k;
}

double mean_pair_kernel(std::span<const BitString> a, std::span<const BitString> b,
                        const std::vector<double>& k) {
    double total = 0.0;
    for (const auto& x : a) {
        for (const auto& y : b) total += k[hamming_distance(x, y)];
    }
    return total;
}

double within_kernel(std::span<const BitString> a, const std::vector<double>& k) {
    double total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = i + 1; j < a.size(); ++j) total += k[hamming_distance(a[i], a[j])];
    }
    return 2.0 * total;
}

}  // namespace

std::string to_string(ObjectiveKind kind) {
    switch (kind) {
        case ObjectiveKind::MLE: return "mle";
        case ObjectiveKind::ELBO: return "elbo";
        case ObjectiveKind::SELBO: return "selbo";
    }
    return "?";
}

std::string to_string(LikelihoodMode mode) {
    return mode == LikelihoodMode::Exact ? "exact" : "sampled";
}

double ObjectiveSpec::bandwidth_for(unsigned n_qubits) const {
    return bandwidth.value_or(static_cast<double>(n_qubits) / 4.0);
}

void ObjectiveSpec::validate() const {
    if (likelihood_mode == LikelihoodMode::Sampled && n_shots < 1) {
        throw std::invalid_argument("n_shots must be >= 1 in sampled mode");
    }
    if (kind == ObjectiveKind::SELBO) {
        if (!(lambda >= 0)) throw std::invalid_argument("lambda must be nonnegative");
        if (n_shots < 2 || prior_shots < 2) {
            throw std::invalid_argument("SELBO needs at least 2 circuit and 2 prior samples");
        }
        if (bandwidth && !(*bandwidth > 0)) throw std::invalid_argument("bandwidth must be positive");
    }
    if (kind == ObjectiveKind::ELBO && !probability_access) {
        throw std::logic_error("ELBO needs full probability access; use SELBO with sample-only access");
    }
    if (likelihood_mode == LikelihoodMode::Exact && !probability_access) {
        throw std::logic_error("exact likelihood mode needs full probability access");
    }
}

CostTable::CostTable(std::vector<double> log_likelihood)
    : n_qubits_(log2_size(log_likelihood.size())), log_likelihood_(std::move(log_likelihood)) {
    for (double v : log_likelihood_) {
        if (!std::isfinite(v)) throw std::invalid_argument("CostTable: non-finite entry");
    }
}

double mean_log_likelihood(std::span<const BitString> samples, const CostTable& table) {
    if (samples.empty()) throw std::invalid_argument("mean_log_likelihood: no samples");
    double total = 0.0;
    for (const auto& s : samples) total += table.log_likelihood(s.index());
    return total / static_cast<double>(samples.size());
}

double expected_log_likelihood(std::span<const double> probabilities, const CostTable& table,
                               std::size_t n_shots, std::uint64_t rng_seed, LikelihoodMode mode) {
    check_probabilities(probabilities, table);
    if (mode == LikelihoodMode::Exact) {
        double total = 0.0;
        for (std::size_t i = 0; i < probabilities.size(); ++i) {
            total += probabilities[i] * table.log_likelihood(i);
        }
        return total;
    }
    const auto samples = sample_distribution(probabilities, table.n_qubits(), n_shots, rng_seed);
    return mean_log_likelihood(samples, table);
}

double expected_log_likelihood(const AnsatzParams& params, const CostTable& table,
                               std::size_t n_shots, std::uint64_t rng_seed, LikelihoodMode mode) {
    return expected_log_likelihood(run_ansatz(params).probabilities(), table, n_shots, rng_seed, mode);
}

double entropy(std::span<const double> probabilities) {
    double h = 0.0;
    for (double q : probabilities) {
        if (q > 0) h -= q * std::log(q);
    }
    return h;
}

double entropy_exact(const AnsatzParams& params) {
    return entropy(run_ansatz(params).probabilities());
}

double kl_uniform(std::span<const double> probabilities) {
    const unsigned n = log2_size(probabilities.size());
    return n * std::numbers::ln2 - entropy(probabilities);
}

double kl_uniform(const AnsatzParams& params) {
    return kl_uniform(run_ansatz(params).probabilities());
}

double rbf_kernel(const BitString& x, const BitString& y, double bandwidth) {
    if (!(bandwidth > 0)) throw std::invalid_argument("rbf_kernel: bandwidth must be positive");
    const double d = hamming_distance(x, y);
    return std::exp(-d / (bandwidth * bandwidth));
}

double mmd2_unbiased(std::span<const BitString> xs, std::span<const BitString> ys,
                     double bandwidth) {
    if (xs.size() < 2 || ys.size() < 2) {
        throw std::invalid_argument("mmd2_unbiased: need at least 2 samples on each side (got " +
                                    std::to_string(xs.size()) + " and " +
                                    std::to_string(ys.size()) + ")");
    }
    const unsigned width = xs.front().size();
    const auto k = kernel_by_distance(width, bandwidth);
    const double n = static_cast<double>(xs.size());
    const double m = static_cast<double>(ys.size());
    const double kxx = within_kernel(xs, k) / (n * (n - 1));
    const double kyy = within_kernel(ys, k) / (m * (m - 1));
    const double kxy = mean_pair_kernel(xs, ys, k) / (n * m);
    return kxx + kyy - 2.0 * kxy;
}

std::vector<double> kernel_smooth(std::span<const double> probabilities, double bandwidth) {
    const unsigned n = log2_size(probabilities.size());
    if (!(bandwidth > 0)) throw std::invalid_argument("kernel_smooth: bandwidth must be positive");
    const double c = std::exp(-1.0 / (bandwidth * bandwidth));
    std::vector<double> out(probabilities.begin(), probabilities.end());
    for (unsigned q = 0; q < n; ++q) {
        const std::size_t stride = std::size_t{1} << q;
        for (std::size_t block = 0; block < out.size(); block += 2 * stride) {
            for (std::size_t i = block; i < block + stride; ++i) {
                const double a = out[i];
                const double b = out[i + stride];
                out[i] = a + c * b;
                out[i + stride] = c * a + b;
            }
        }
    }
    return out;
}

double mmd2_uniform_exact(std::span<const double> probabilities, double bandwidth) {
    const unsigned n = log2_size(probabilities.size());
    const auto kq = kernel_smooth(probabilities, bandwidth);
    double qkq = 0.0;
    for (std::size_t i = 0; i < kq.size(); ++i) qkq += probabilities[i] * kq[i];
    const double c = std::exp(-1.0 / (bandwidth * bandwidth));
    return qkq - std::pow((1.0 + c) / 2.0, n);
}

std::vector<BitString> sample_prior(unsigned n_qubits, std::size_t m, std::uint64_t rng_seed) {
    if (m < 2) throw std::invalid_argument("sample_prior: m must be >= 2, got " + std::to_string(m));
    if (n_qubits < 1 || n_qubits > 64) throw std::invalid_argument("sample_prior: bad width");
    std::mt19937_64 rng(rng_seed);
    std::vector<BitString> out;
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::uint64_t bits = 0;
        for (unsigned q = 0; q < n_qubits; ++q) bits |= (rng() >> 63) << q;
        out.emplace_back(bits, n_qubits);
    }
    return out;
}

std::uint64_t prior_seed(std::uint64_t rng_seed) { return derive_seed(rng_seed, kPriorStream); }

ObjectiveValue evaluate_objective(std::span<const double> probabilities, const ObjectiveSpec& spec,
                                  const CostTable& table, std::uint64_t rng_seed) {
    spec.validate();
    check_probabilities(probabilities, table);
    const unsigned n = table.n_qubits();

    ObjectiveValue out;
    std::vector<BitString> shots;
    const bool needs_shots = spec.likelihood_mode == LikelihoodMode::Sampled ||
                             spec.kind == ObjectiveKind::SELBO;
    if (needs_shots) shots = sample_distribution(probabilities, n, spec.n_shots, rng_seed);

    out.likelihood = spec.likelihood_mode == LikelihoodMode::Sampled
                         ? mean_log_likelihood(shots, table)
                         : expected_log_likelihood(probabilities, table, 0, 0, LikelihoodMode::Exact);

    switch (spec.kind) {
        case ObjectiveKind::MLE:
            out.value = out.likelihood;
            break;
        case ObjectiveKind::ELBO: {
            const double h = entropy(probabilities);
            out.regularizer = n * std::numbers::ln2 - h;
            out.value = out.likelihood + h;
            break;
        }
        case ObjectiveKind::SELBO: {
            const auto prior = sample_prior(n, spec.prior_shots, prior_seed(rng_seed));
            out.regularizer = mmd2_unbiased(shots, prior, spec.bandwidth_for(n));
            out.value = out.likelihood - spec.lambda * out.regularizer;
            break;
        }
    }
    return out;
}

ObjectiveValue evaluate_objective(const AnsatzParams& params, const ObjectiveSpec& spec,
                                  const CostTable& table, std::uint64_t rng_seed) {
    if (params.n_qubits() != table.n_qubits()) {
        throw std::invalid_argument("circuit has " + std::to_string(params.n_qubits()) +
                                    " qubits but the cost table covers " +
                                    std::to_string(table.n_qubits()));
    }
    return evaluate_objective(run_ansatz(params).probabilities(), spec, table, rng_seed);
}

std::vector<double> objective_weights(std::span<const double> probabilities,
                                      const ObjectiveSpec& spec, const CostTable& table) {
    spec.validate();
    check_probabilities(probabilities, table);
    std::vector<double> w(table.log_likelihoods().begin(), table.log_likelihoods().end());
    if (spec.kind == ObjectiveKind::ELBO) {
        for (std::size_t i = 0; i < w.size(); ++i) {
            // dq = 0 wherever q = 0 (a minimum of a smooth nonnegative function).
            if (probabilities[i] > 0) w[i] -= 1.0 + std::log(probabilities[i]);
        }
    } else if (spec.kind == ObjectiveKind::SELBO && spec.lambda != 0) {
        const auto kq = kernel_smooth(probabilities, spec.bandwidth_for(table.n_qubits()));
        for (std::size_t i = 0; i < w.size(); ++i) w[i] -= 2.0 * spec.lambda * kq[i];
    }
    return w;
}

}  // namespace qhn
