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

#include "qhn/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <random>
#include <set>
#include <tuple>

#include <json.hpp>

#include "qhn/seed.hpp"
#include "qhn/stats.hpp"

namespace qhn {

namespace {

using json = nlohmann::ordered_json;

constexpr std::uint64_t kSelectStream = 0x73656c656374ULL;
constexpr std::uint64_t kLandscapeStream = 0x6c616e64ULL;

const std::set<std::string> kMethods{"mle", "elbo", "selbo", "exhaustive"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << contents;
    if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

ObjectiveKind parse_kind(const std::string& method) {
    if (method == "mle") return ObjectiveKind::MLE;
    if (method == "elbo") return ObjectiveKind::ELBO;
    return ObjectiveKind::SELBO;
}

json mean_std_json(std::span<const double> values, bool sample) {
    const MeanStd ms = mean_std(values, sample);
    return json{{"mean", ms.mean}, {"std", ms.std}};
}

json exhaustive_json(const ExhaustiveResult& r) {
    return json{{"best_config", r.best_config.to_string()},
                {"best_train_loss", r.best_train_loss},
                {"test_loss", r.test_loss},
                {"test_accuracy", r.test_accuracy},
                {"log_marginal_likelihood", r.log_marginal_likelihood},
                {"evaluated_configs", r.evaluated_configs}};
}

}  // namespace

void ExperimentArgs::validate() const {
    if (!dataset_csv &&
        std::find(dataset_names().begin(), dataset_names().end(), dataset) == dataset_names().end()) {
        throw UsageError("--dataset must be one of gaussian, moon, rings (got '" + dataset + "')");
    }
    if (methods.empty()) throw UsageError("at least one --method is required");
    std::set<std::string> seen;
    for (const auto& m : methods) {
        if (!kMethods.count(m)) {
            throw UsageError("--method must be one of mle, elbo, selbo, exhaustive (got '" + m + "')");
        }
        if (!seen.insert(m).second) throw UsageError("--method " + m + " given twice");
    }
    if (!lambdas.empty() && !seen.count("selbo")) {
        throw UsageError("--lambda only applies to --method selbo");
    }
    for (double l : lambdas) {
        if (!(l >= 0) || !std::isfinite(l)) throw UsageError("--lambda must be a finite value >= 0");
    }
    if (layers < 1) throw UsageError("--layers must be >= 1");
    if (shots < 1) throw UsageError("--shots must be >= 1");
    if (seen.count("selbo") && shots < 2) throw UsageError("--method selbo needs --shots >= 2");
    if (prior_shots < 2) throw UsageError("--prior-shots must be >= 2");
    if (seeds < 1) throw UsageError("--seeds must be >= 1");
    if (!(learning_rate > 0)) throw UsageError("learning rate must be positive");
    if (!(decay_factor > 0 && decay_factor < 1)) throw UsageError("decay factor must lie in (0, 1)");
    if (patience < 1) throw UsageError("patience must be >= 1");
    if (bandwidth && !(*bandwidth > 0)) throw UsageError("--bandwidth must be positive");
    if (landscape && landscape_resolution < 1) throw UsageError("--landscape-resolution must be >= 1");
    if (landscape && !(landscape_extent >= 0)) throw UsageError("--landscape-extent must be >= 0");
}

std::string method_label(ObjectiveKind kind, double lambda) {
    if (kind != ObjectiveKind::SELBO) return to_string(kind);
    char buf[48];
    std::snprintf(buf, sizeof buf, "selbo_l%g", lambda);
    return buf;
}

std::string trace_csv(const RunTrace& trace) {
    std::string out = "epoch,objective,likelihood,regularizer,grad_mean_abs,lr\n";
    for (const auto& e : trace.epochs) {
        out += std::to_string(e.epoch) + ',' + fmt(e.objective) + ',' + fmt(e.likelihood) + ',' +
               fmt(e.regularizer) + ',' + fmt(e.grad_mean_abs) + ',' + fmt(e.learning_rate) + '\n';
    }
    return out;
}

std::vector<GradientTraceRow> gradient_trace(std::span<const RunTrace> traces, bool sample_std) {
    if (traces.empty()) return {};
    const std::size_t n_epochs = traces.front().epochs.size();
    for (const auto& t : traces) {
        if (t.epochs.size() != n_epochs) {
            throw std::invalid_argument("gradient_trace: runs have different lengths");
        }
    }
    std::vector<GradientTraceRow> rows(n_epochs);
    std::vector<double> column(traces.size());
    for (std::size_t e = 0; e < n_epochs; ++e) {
        for (std::size_t r = 0; r < traces.size(); ++r) column[r] = traces[r].epochs[e].grad_mean_abs;
        const MeanStd ms = mean_std(column, sample_std);
        rows[e] = {traces.front().epochs[e].epoch, ms.mean, ms.std};
    }
    return rows;
}

std::string gradient_trace_csv(std::span<const MethodRun> runs, bool sample_std) {
    std::string out = "epoch,method,grad_mean_abs_mean,grad_mean_abs_std\n";
    for (const auto& run : runs) {
        for (const auto& row : gradient_trace(run.traces, sample_std)) {
            out += std::to_string(row.epoch) + ',' + run.label + ',' + fmt(row.mean) + ',' +
                   fmt(row.std) + '\n';
        }
    }
    return out;
}

namespace {

std::string curves_csv(std::span<const MethodRun> runs, bool sample_std) {
    std::string out =
        "epoch,method,objective_mean,objective_std,likelihood_mean,likelihood_std,"
        "regularizer_mean,regularizer_std\n";
    for (const auto& run : runs) {
        if (run.traces.empty()) continue;
        const std::size_t n_epochs = run.traces.front().epochs.size();
        std::vector<double> obj(run.traces.size()), lik(run.traces.size()), reg(run.traces.size());
        for (std::size_t e = 0; e < n_epochs; ++e) {
            for (std::size_t r = 0; r < run.traces.size(); ++r) {
                const auto& rec = run.traces[r].epochs[e];
                obj[r] = rec.objective;
                lik[r] = rec.likelihood;
                reg[r] = rec.regularizer;
            }
            const auto o = mean_std(obj, sample_std);
            const auto l = mean_std(lik, sample_std);
            const auto g = mean_std(reg, sample_std);
            out += std::to_string(e + 1) + ',' + run.label + ',' + fmt(o.mean) + ',' + fmt(o.std) +
                   ',' + fmt(l.mean) + ',' + fmt(l.std) + ',' + fmt(g.mean) + ',' + fmt(g.std) + '\n';
        }
    }
    return out;
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> random_orthonormal_pair(std::size_t dim,
                                                                            std::uint64_t seed) {
    if (dim < 2) throw std::invalid_argument("random_orthonormal_pair: need dim >= 2");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> a(dim), b(dim);
    for (auto& v : a) v = normal(rng);
    for (auto& v : b) v = normal(rng);
    auto dot = [](const std::vector<double>& x, const std::vector<double>& y) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
        return s;
    };
    auto normalize = [&](std::vector<double>& x) {
        const double n = std::sqrt(dot(x, x));
        for (auto& v : x) v /= n;
    };
    normalize(a);
    // Two Gram-Schmidt passes keep |<a,b>| at rounding level.
    for (int pass = 0; pass < 2; ++pass) {
        const double p = dot(a, b);
        for (std::size_t i = 0; i < dim; ++i) b[i] -= p * a[i];
    }
    normalize(b);
    return {a, b};
}

LandscapeGrid landscape_slice(const AnsatzParams& center, const ObjectiveSpec& spec,
                              const CostTable& table, unsigned resolution, double extent,
                              std::uint64_t direction_seed, std::uint64_t eval_seed) {
    if (resolution < 1) throw std::invalid_argument("landscape_slice: resolution must be >= 1");
    LandscapeGrid grid;
    std::tie(grid.direction1, grid.direction2) = random_orthonormal_pair(center.size(), direction_seed);
    grid.coords.resize(resolution);
    for (unsigned i = 0; i < resolution; ++i) {
        // Written so the middle of an odd grid is exactly 0.
        grid.coords[i] = resolution == 1
                             ? 0.0
                             : extent * (2.0 * i / static_cast<double>(resolution - 1) - 1.0);
    }
    grid.values.assign(resolution, std::vector<double>(resolution));
    for (unsigned i = 0; i < resolution; ++i) {
        for (unsigned j = 0; j < resolution; ++j) {
            AnsatzParams p = center;
            auto angles = p.angles();
            for (std::size_t k = 0; k < angles.size(); ++k) {
                angles[k] += grid.coords[i] * grid.direction1[k] + grid.coords[j] * grid.direction2[k];
            }
            grid.values[i][j] = objective(p, spec, table, eval_seed);
        }
    }
    return grid;
}

std::string landscape_csv(const LandscapeGrid& grid) {
    std::string out = "a,b,objective\n";
    for (std::size_t i = 0; i < grid.coords.size(); ++i) {
        for (std::size_t j = 0; j < grid.coords.size(); ++j) {
            out += fmt(grid.coords[i]) + ',' + fmt(grid.coords[j]) + ',' + fmt(grid.values[i][j]) + '\n';
        }
    }
    return out;
}

ExperimentReport run_experiment(const ExperimentArgs& args) {
    args.validate();
    ExperimentReport report;
    report.args = args;
    report.generated_at = utc_timestamp();
    report.dataset = args.dataset_csv ? load_csv(*args.dataset_csv, args.dataset)
                                      : generate(args.dataset, args.data_seed);
    if (report.dataset.train.empty() || report.dataset.test.empty()) {
        throw UsageError("dataset needs both train and test points");
    }
    const CostTable table = cost_table(report.dataset.train, args.threads);

    for (std::size_t k = 0; k < args.seeds; ++k) report.init_seeds.push_back(args.base_seed + k);

    for (const auto& method : args.methods) {
        if (method == "exhaustive") {
            report.exhaustive = exhaustive_search(report.dataset, table);
            continue;
        }
        const ObjectiveKind kind = parse_kind(method);
        std::vector<double> lambdas{0.0};
        if (kind == ObjectiveKind::SELBO) {
            lambdas = args.lambdas.empty() ? std::vector<double>{0.01} : args.lambdas;
        }
        for (double lambda : lambdas) {
            MethodRun run;
            run.label = method_label(kind, lambda);
            run.config.n_epochs = args.epochs;
            run.config.patience = args.patience;
            run.config.min_delta = args.min_delta;
            run.config.decay_factor = args.decay_factor;
            run.config.learning_rate = args.learning_rate;
            run.config.grad_mode = args.grad_mode;
            run.config.objective.kind = kind;
            run.config.objective.lambda = lambda;
            run.config.objective.n_shots = args.shots;
            run.config.objective.prior_shots = args.prior_shots;
            run.config.objective.bandwidth = args.bandwidth;
            run.config.objective.likelihood_mode = args.likelihood_mode;

            run.traces = multi_seed(run.config, table, args.layers, args.seeds, args.base_seed,
                                    args.threads);
            run.selections.resize(run.traces.size());
            parallel_for(run.traces.size(), args.threads, [&](std::size_t i) {
                const auto& t = run.traces[i];
                run.selections[i] = select_model(t.best_params, report.dataset, args.shots,
                                                 derive_seed(t.seed, kSelectStream));
            });
            report.runs.push_back(std::move(run));
        }
    }

    if (args.out.empty()) return report;

    std::filesystem::create_directories(args.out / "traces");
    save_csv(report.dataset, args.out / "dataset.csv");
    for (const auto& run : report.runs) {
        for (const auto& t : run.traces) {
            write_file(args.out / "traces" / (run.label + "_" + std::to_string(t.seed) + ".csv"),
                       trace_csv(t));
        }
        if (args.landscape && !run.traces.empty()) {
            const auto& first = run.traces.front();
            const auto grid = landscape_slice(first.best_params, run.config.objective, table,
                                              args.landscape_resolution, args.landscape_extent,
                                              derive_seed(args.base_seed, kLandscapeStream, 0),
                                              derive_seed(args.base_seed, kLandscapeStream, 1));
            write_file(args.out / ("landscape_" + run.label + ".csv"), landscape_csv(grid));
        }
    }
    if (!report.runs.empty()) {
        write_file(args.out / "gradients.csv", gradient_trace_csv(report.runs, !args.population_std));
        write_file(args.out / "curves.csv", curves_csv(report.runs, !args.population_std));
    }
    write_file(args.out / "report.json", report_json(report));
    return report;
}

std::string report_json(const ExperimentReport& report) {
    const auto& a = report.args;
    const bool sample = !a.population_std;
    json config{
        {"version", kVersion},
        {"dataset", a.dataset},
        {"dataset_csv", a.dataset_csv ? json(a.dataset_csv->string()) : json(nullptr)},
        {"data_seed", a.data_seed},
        {"methods", a.methods},
        {"lambdas", a.lambdas},
        {"layers", a.layers},
        {"shots", a.shots},
        {"prior_shots", a.prior_shots},
        {"epochs", a.epochs},
        {"seeds", a.seeds},
        {"base_seed", a.base_seed},
        {"likelihood_mode", to_string(a.likelihood_mode)},
        {"grad_mode", to_string(a.grad_mode)},
        {"patience", a.patience},
        {"min_delta", a.min_delta},
        {"decay_factor", a.decay_factor},
        {"learning_rate", a.learning_rate},
        {"bandwidth", a.bandwidth ? json(*a.bandwidth) : json(nullptr)},
        {"std_kind", sample ? "sample" : "population"},
        {"landscape", a.landscape},
        {"landscape_resolution", a.landscape_resolution},
        {"landscape_extent", a.landscape_extent},
    };

    json results = json::array();
    for (const auto& run : report.runs) {
        json per_seed = json::array();
        std::vector<double> test_bce, test_acc, train_bce, mean_bce, mean_acc;
        for (std::size_t i = 0; i < run.traces.size(); ++i) {
            const auto& t = run.traces[i];
            const auto& s = run.selections[i];
            test_bce.push_back(s.modal_test_bce);
            test_acc.push_back(s.modal_test_accuracy);
            train_bce.push_back(s.modal_train_bce);
            mean_bce.push_back(s.mean_test_bce);
            mean_acc.push_back(s.mean_test_accuracy);
            per_seed.push_back(json{
                {"seed", t.seed},
                {"best_objective", t.best_objective},
                {"best_epoch", t.best_epoch},
                {"best_eval_seed", t.best_eval_seed},
                {"initial_objective", t.initial_objective},
                {"final_learning_rate", t.final_learning_rate},
                {"modal_config", s.modal_config.to_string()},
                {"modal_count", s.modal_count},
                {"train_bce", s.modal_train_bce},
                {"test_bce", s.modal_test_bce},
                {"test_accuracy", s.modal_test_accuracy},
                {"sample_mean_test_bce", s.mean_test_bce},
                {"sample_mean_test_accuracy", s.mean_test_accuracy},
                {"best_params", std::vector<double>(t.best_params.angles().begin(),
                                                    t.best_params.angles().end())},
            });
        }
        const auto& obj = run.config.objective;
        results.push_back(json{
            {"method", run.label},
            {"kind", to_string(obj.kind)},
            {"lambda", obj.kind == ObjectiveKind::SELBO ? json(obj.lambda) : json(nullptr)},
            {"n_seeds", run.traces.size()},
            {"init_seeds", [&] {
                 std::vector<std::uint64_t> seeds;
                 for (const auto& t : run.traces) seeds.push_back(t.seed);
                 return seeds;
             }()},
            {"summary",
             json{{"test_bce", mean_std_json(test_bce, sample)},
                  {"test_accuracy", mean_std_json(test_acc, sample)},
                  {"train_bce", mean_std_json(train_bce, sample)},
                  {"sample_mean_test_bce", mean_std_json(mean_bce, sample)},
                  {"sample_mean_test_accuracy", mean_std_json(mean_acc, sample)}}},
            {"per_seed", per_seed},
        });
    }

    bool fair = true;
    for (const auto& run : report.runs) {
        for (std::size_t i = 0; i < run.traces.size(); ++i) {
            if (i >= report.init_seeds.size() || run.traces[i].seed != report.init_seeds[i]) fair = false;
        }
        if (run.traces.size() != report.init_seeds.size()) fair = false;
    }

    json doc{
        {"schema_version", 1},
        {"generated_at", report.generated_at},
        {"config", config},
        {"dataset",
         json{{"name", report.dataset.name},
              {"n_train", report.dataset.train.size()},
              {"n_test", report.dataset.test.size()}}},
        {"init_seeds", report.init_seeds},
        {"shared_init_seeds", fair},
        {"exhaustive", report.exhaustive ? exhaustive_json(*report.exhaustive) : json(nullptr)},
        {"results", results},
    };
    return doc.dump(2) + "\n";
}

}  // namespace qhn
