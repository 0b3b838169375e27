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

// qhn: train quantum hypernetworks (MLE / ELBO / SELBO) or run the exhaustive
// baseline on a toy dataset and write report.json plus CSV traces.

#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "qhn/experiment.hpp"

int main(int argc, char** argv) {
    qhn::ExperimentArgs args;
    CLI::App app{"Quantum hypernetwork experiments for a 14-bit binary neural network"};

    std::string likelihood_mode = "sampled";
    std::string grad_mode = "shift";
    std::string dataset_csv;

    app.add_option("--dataset", args.dataset, "gaussian, moon or rings")
        ->check(CLI::IsMember({"gaussian", "moon", "rings"}));
    app.add_option("--dataset-csv", dataset_csv, "Load x1,x2,y,split CSV instead of generating");
    app.add_option("--data-seed", args.data_seed, "Dataset generator seed");
    app.add_option("--method", args.methods, "mle, elbo, selbo or exhaustive (repeatable)")
        ->required();
    app.add_option("--lambda", args.lambdas, "SELBO regularization strength (repeatable)");
    app.add_option("--layers", args.layers, "Ansatz layers");
    app.add_option("--shots", args.shots, "Circuit measurements per evaluation");
    app.add_option("--prior-shots", args.prior_shots, "Uniform-prior samples per MMD estimate");
    app.add_option("--epochs", args.epochs, "Training epochs");
    app.add_option("--seeds", args.seeds, "Number of initializations");
    app.add_option("--base-seed", args.base_seed, "First initialization seed");
    app.add_option("--likelihood-mode", likelihood_mode, "sampled or exact")
        ->check(CLI::IsMember({"sampled", "exact"}));
    app.add_option("--grad-mode", grad_mode, "shift or exact")
        ->check(CLI::IsMember({"shift", "exact"}));
    app.add_option("--bandwidth", args.bandwidth, "RBF bandwidth (default n_qubits / 4)");
    app.add_option("--patience", args.patience, "Epochs without improvement before decay");
    app.add_option("--min-delta", args.min_delta, "Minimum objective improvement");
    app.add_option("--decay-factor", args.decay_factor, "Learning-rate decay factor");
    app.add_option("--learning-rate", args.learning_rate, "Initial learning rate");
    app.add_flag("--population-std", args.population_std, "Report population standard deviations");
    app.add_option("--landscape-resolution", args.landscape_resolution, "Landscape grid points per axis");
    app.add_option("--landscape-extent", args.landscape_extent, "Landscape half-width in radians");
    app.add_flag("!--no-landscape", args.landscape, "Skip landscape slices");
    app.add_option("--threads", args.threads, "Worker threads (0 = all cores)");
    app.add_option("--out", args.out, "Output directory")->required();

    CLI11_PARSE(app, argc, argv);

    args.likelihood_mode =
        likelihood_mode == "exact" ? qhn::LikelihoodMode::Exact : qhn::LikelihoodMode::Sampled;
    args.grad_mode = grad_mode == "exact" ? qhn::GradMode::Exact : qhn::GradMode::Shift;
    if (!dataset_csv.empty()) args.dataset_csv = dataset_csv;

    try {
        const auto report = qhn::run_experiment(args);
        if (report.exhaustive) {
            const auto& e = *report.exhaustive;
            std::cout << "exhaustive: config " << e.best_config.to_string() << " train BCE "
                      << e.best_train_loss << " test BCE " << e.test_loss << " test acc "
                      << e.test_accuracy << "\n";
        }
        for (const auto& run : report.runs) {
            double acc = 0.0;
            double bce = 0.0;
            for (const auto& s : run.selections) {
                acc += s.modal_test_accuracy;
                bce += s.modal_test_bce;
            }
            const auto n = static_cast<double>(run.selections.size());
            std::cout << run.label << ": mean test BCE " << bce / n << " mean test acc " << acc / n
                      << " over " << run.selections.size() << " seeds\n";
        }
        std::cout << "wrote " << (args.out / "report.json").string() << "\n";
    } catch (const qhn::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
