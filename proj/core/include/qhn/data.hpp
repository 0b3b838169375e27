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

// Seeded 2-D binary classification datasets (gaussian XOR clusters, two
// moons, concentric rings) and their CSV form.

#include <cstdint>
#include <filesystem>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qhn/binn.hpp"

namespace qhn {

inline constexpr std::size_t kTrainPerClass = 150;
inline constexpr std::size_t kTestPerClass = 100;

struct Dataset {
    std::string name;
    std::vector<LabeledPoint> train;
    std::vector<LabeledPoint> test;

    friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// Raised for CSV I/O and parse failures; parse messages carry "line N".
class DataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Names accepted by generate(): "gaussian", "moon", "rings".
const std::vector<std::string>& dataset_names();

/// Generator constants.
struct GeneratorConstants {
    static constexpr double kClusterCenter = 1.0;
    static constexpr double kClusterStd = 0.5;
    static constexpr double kMoonRadius = 1.0;
    static constexpr double kMoonOffset = 0.5;
    static constexpr double kMoonNoise = 0.1;
    static constexpr double kOuterRing = 1.0;
    static constexpr double kInnerRing = 0.5;
    static constexpr double kRingNoise = 0.08;
};

/// `count` points of one class, in generation order. For "gaussian" the
/// cluster alternates with the point index: even indices use the first
/// corner of the class, odd indices the second. Class 0 owns (+1,+1) and
/// (-1,-1); class 1 owns (+1,-1) and (-1,+1).
std::vector<LabeledPoint> generate_class(std::string_view name, int label, std::size_t count,
                                         std::mt19937_64& rng);

/// 150 train + 100 test points per class, deterministic in rng_seed. Each
/// class is drawn once, shuffled, and split, so train and test never share a
/// draw. Throws std::invalid_argument for an unknown name.
Dataset generate(std::string_view name, std::uint64_t rng_seed);

/// CSV with header `x1,x2,y,split`; coordinates written with 17 significant
/// digits so that load_csv(save_csv(d)) == d.
void save_csv(const Dataset& dataset, const std::filesystem::path& path);
Dataset load_csv(const std::filesystem::path& path, std::string name = "");

std::string to_csv(const Dataset& dataset);
Dataset parse_csv(std::string_view text, std::string name = "");

}  // namespace qhn
