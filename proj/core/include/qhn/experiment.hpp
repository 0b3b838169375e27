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

// Experiment orchestration: train each requested method over shared seeds,
// score the selected networks, and write report.json plus CSV traces.
//
// Output directory layout:
//   report.json                 summary + per-seed records (docs/report.schema.json)
//   dataset.csv                 the data used
//   traces/<method>_<seed>.csv  epoch,objective,likelihood,regularizer,grad_mean_abs,lr
//   gradients.csv               per-epoch mean/std over seeds of grad_mean_abs
//   curves.csv                  per-epoch mean/std of objective, likelihood, regularizer
//   landscape_<method>.csv      2-D objective slice around the first seed's best params

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qhn/data.hpp"
#include "qhn/objectives.hpp"
#include "qhn/oracle.hpp"
#include "qhn/train.hpp"

namespace qhn {

inline constexpr const char* kVersion = "0.1.0";

/// Invalid flag values or combinations.
class UsageError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct ExperimentArgs {
    std::string dataset = "gaussian";
    /// Loaded instead of generating `dataset` when set.
    std::optional<std::filesystem::path> dataset_csv;
    std::uint64_t data_seed = 1234;
    /// Any of mle, elbo, selbo, exhaustive.
    std::vector<std::string> methods;
    /// SELBO strengths; {0.01} when selbo is requested without any.
    std::vector<double> lambdas;
    unsigned layers = 1;
    std::size_t shots = 100;
    std::size_t prior_shots = 100;
    std::size_t epochs = 200;
    std::size_t seeds = 100;
    std::uint64_t base_seed = 0;
    LikelihoodMode likelihood_mode = LikelihoodMode::Sampled;
    GradMode grad_mode = GradMode::Shift;
    std::size_t patience = 3;
    double min_delta = 1e-4;
    double decay_factor = 0.5;
    double learning_rate = 1.0;
    std::optional<double> bandwidth;
    /// Population (n) instead of sample (n-1) standard deviations.
    bool population_std = false;
    unsigned landscape_resolution = 21;
    double landscape_extent = 3.141592653589793;
    bool landscape = true;
    unsigned threads = 0;
    /// Nothing is written when empty.
    std::filesystem::path out;

    /// Throws UsageError.
    void validate() const;
};

/// One trained method (SELBO once per lambda).
struct MethodRun {
    std::string label;
    TrainConfig config;
    std::vector<RunTrace> traces;
    std::vector<SelectionMetrics> selections;
};

struct ExperimentReport {
    ExperimentArgs args;
    Dataset dataset;
    std::vector<std::uint64_t> init_seeds;
    std::optional<ExhaustiveResult> exhaustive;
    std::vector<MethodRun> runs;
    std::string generated_at;
};

/// "mle", "elbo", "selbo_l<lambda>".
std::string method_label(ObjectiveKind kind, double lambda);

ExperimentReport run_experiment(const ExperimentArgs& args);

std::string report_json(const ExperimentReport& report);

/// One record per line, header epoch,objective,likelihood,regularizer,grad_mean_abs,lr.
std::string trace_csv(const RunTrace& trace);

struct GradientTraceRow {
    std::size_t epoch = 0;
    double mean = 0.0;
    double std = 0.0;
};

/// Per epoch, mean and std over runs of grad_mean_abs. Runs must share a length.
std::vector<GradientTraceRow> gradient_trace(std::span<const RunTrace> traces,
                                             bool sample_std = true);

/// header epoch,method,grad_mean_abs_mean,grad_mean_abs_std
std::string gradient_trace_csv(std::span<const MethodRun> runs, bool sample_std = true);

struct LandscapeGrid {
    /// a = b = coords[i], from -extent to extent.
    std::vector<double> coords;
    std::vector<double> direction1;
    std::vector<double> direction2;
    /// values[i][j] = objective(center + coords[i] * d1 + coords[j] * d2).
    std::vector<std::vector<double>> values;
};

/// Two orthonormal random directions in parameter space (seeded).
std::pair<std::vector<double>, std::vector<double>> random_orthonormal_pair(std::size_t dim,
                                                                            std::uint64_t seed);

/// Every grid point is evaluated with the same eval_seed.
LandscapeGrid landscape_slice(const AnsatzParams& center, const ObjectiveSpec& spec,
                              const CostTable& table, unsigned resolution, double extent,
                              std::uint64_t direction_seed, std::uint64_t eval_seed);

/// header a,b,objective
std::string landscape_csv(const LandscapeGrid& grid);

}  // namespace qhn
