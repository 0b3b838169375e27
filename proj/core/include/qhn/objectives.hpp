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

// Training objectives over the circuit distribution q(sigma) = |<sigma|U(theta)|0>|^2:
//
//   MLE    E_q[log p(Y|X,sigma)]
//   ELBO   E_q[log p(Y|X,sigma)] + H(q)          (the constant -ln 2^N dropped)
//   SELBO  E_q[log p(Y|X,sigma)] - lambda * MMD^2_U(q, uniform)
//
// log p(Y|X,sigma) is the mean per-point log-likelihood, read from a
// CostTable holding its value for every configuration.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qhn/ansatz.hpp"
#include "qhn/qsim.hpp"

namespace qhn {

enum class ObjectiveKind { MLE, ELBO, SELBO };
enum class LikelihoodMode { Sampled, Exact };

std::string to_string(ObjectiveKind kind);
std::string to_string(LikelihoodMode mode);

struct ObjectiveSpec {
    ObjectiveKind kind = ObjectiveKind::MLE;
    /// Only read for SELBO.
    double lambda = 0.0;
    /// Circuit measurements per evaluation (N_qc).
    std::size_t n_shots = 100;
    /// Uniform-prior samples per MMD estimate.
    std::size_t prior_shots = 100;
    /// RBF bandwidth; n_qubits / 4 when unset.
    std::optional<double> bandwidth;
    LikelihoodMode likelihood_mode = LikelihoodMode::Sampled;
    /// False models hardware: only samples are observable, so ELBO is unavailable.
    bool probability_access = true;

    double bandwidth_for(unsigned n_qubits) const;
    /// Throws std::invalid_argument for inconsistent settings.
    void validate() const;
};

/// Per-configuration log-likelihood for all 2^N configurations, indexed by
/// basis state. This is the diagonal of the cost operator (cost = -entry).
class CostTable {
  public:
    /// Throws std::invalid_argument unless the size is a power of two >= 2
    /// and every entry is finite.
    explicit CostTable(std::vector<double> log_likelihood);

    unsigned n_qubits() const { return n_qubits_; }
    std::size_t size() const { return log_likelihood_.size(); }
    double log_likelihood(std::uint64_t index) const { return log_likelihood_[index]; }
    double bce(std::uint64_t index) const { return -log_likelihood_[index]; }
    std::span<const double> log_likelihoods() const { return log_likelihood_; }

  private:
    unsigned n_qubits_ = 0;
    std::vector<double> log_likelihood_;
};

/// Value plus the two terms it is assembled from. `regularizer` is the
/// divergence being penalized: KL(q || uniform) including its ln 2^N constant
/// for ELBO, the raw (unscaled) MMD^2 estimate for SELBO, 0 for MLE.
struct ObjectiveValue {
    double value = 0.0;
    double likelihood = 0.0;
    double regularizer = 0.0;
};

double mean_log_likelihood(std::span<const BitString> samples, const CostTable& table);

/// Sampled: mean table entry over n_shots measurements. Exact: sum_sigma q * entry.
double expected_log_likelihood(std::span<const double> probabilities, const CostTable& table,
                               std::size_t n_shots, std::uint64_t rng_seed, LikelihoodMode mode);
double expected_log_likelihood(const AnsatzParams& params, const CostTable& table,
                               std::size_t n_shots, std::uint64_t rng_seed, LikelihoodMode mode);

/// Shannon entropy in nats with 0 log 0 = 0.
double entropy(std::span<const double> probabilities);
double entropy_exact(const AnsatzParams& params);

/// KL(q || uniform over 2^N) = N ln 2 - H(q).
double kl_uniform(std::span<const double> probabilities);
double kl_uniform(const AnsatzParams& params);

/// exp(-|x - y|^2 / h^2) on {0,1} vectors. Throws on width mismatch or h <= 0.
double rbf_kernel(const BitString& x, const BitString& y, double bandwidth);

/// Unbiased MMD^2 estimate (may be negative). Throws std::invalid_argument
/// when either side has fewer than 2 samples.
double mmd2_unbiased(std::span<const BitString> xs, std::span<const BitString> ys,
                     double bandwidth);

/// (K q)(sigma) = sum_tau k(sigma, tau) q(tau) for the RBF kernel on bitstrings.
/// The kernel factorizes over qubits, so this is one 2x2 butterfly per qubit.
std::vector<double> kernel_smooth(std::span<const double> probabilities, double bandwidth);

/// Population MMD^2(q, uniform) = q^T K q - ((1 + e^{-1/h^2}) / 2)^N.
double mmd2_uniform_exact(std::span<const double> probabilities, double bandwidth);

/// m i.i.d. uniform bitstrings. Throws std::invalid_argument when m < 2.
std::vector<BitString> sample_prior(unsigned n_qubits, std::size_t m, std::uint64_t rng_seed);

/// Seed of the uniform-prior stream used by evaluate_objective(rng_seed).
std::uint64_t prior_seed(std::uint64_t rng_seed);

/// One objective evaluation. One batch of n_shots circuit samples drawn from
/// rng_seed feeds both the sampled likelihood and the MMD; prior samples come
/// from a stream derived from the same seed.
ObjectiveValue evaluate_objective(std::span<const double> probabilities, const ObjectiveSpec& spec,
                                  const CostTable& table, std::uint64_t rng_seed);
ObjectiveValue evaluate_objective(const AnsatzParams& params, const ObjectiveSpec& spec,
                                  const CostTable& table, std::uint64_t rng_seed);

inline double objective(const AnsatzParams& params, const ObjectiveSpec& spec,
                        const CostTable& table, std::uint64_t rng_seed) {
    return evaluate_objective(params, spec, table, rng_seed).value;
}

/// dF/dq(sigma) for the expectation of the objective over sampling noise:
/// table entries, minus (1 + log q) for ELBO, minus 2 lambda (K q) for SELBO.
/// Feeding these to exact_distribution_gradient gives the exact gradient.
std::vector<double> objective_weights(std::span<const double> probabilities,
                                      const ObjectiveSpec& spec, const CostTable& table);

}  // namespace qhn
