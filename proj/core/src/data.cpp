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

#include "qhn/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace qhn {

namespace {

using G = GeneratorConstants;

LabeledPoint gaussian_point(int label, std::size_t i, std::mt19937_64& rng) {
    std::normal_distribution<double> noise(0.0, G::kClusterStd);
    // Corner sign pattern (sx, sy): class 0 -> (+,+),(-,-); class 1 -> (+,-),(-,+).
    const double sx = (i % 2 == 0) ? 1.0 : -1.0;
    const double sy = label == 0 ? sx : -sx;
    const double x = sx * G::kClusterCenter + noise(rng);
    const double y = sy * G::kClusterCenter + noise(rng);
    return {{x, y}, label};
}

LabeledPoint moon_point(int label, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
    std::normal_distribution<double> noise(0.0, G::kMoonNoise);
    const double t = angle(rng);
    double x = G::kMoonRadius * std::cos(t);
    double y = G::kMoonRadius * std::sin(t);
    if (label == 1) {
        x = G::kMoonRadius - x;
        y = G::kMoonRadius - y - G::kMoonOffset;
    }
    x += noise(rng);
    y += noise(rng);
    return {{x, y}, label};
}

LabeledPoint ring_point(int label, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
    std::normal_distribution<double> noise(0.0, G::kRingNoise);
    const double r = label == 0 ? G::kOuterRing : G::kInnerRing;
    const double t = angle(rng);
    const double x = r * std::cos(t) + noise(rng);
    const double y = r * std::sin(t) + noise(rng);
    return {{x, y}, label};
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& msg) {
    throw DataError("line " + std::to_string(line) + ": " + msg);
}

double parse_coordinate(std::string_view field, std::size_t line) {
    // strtod handles the full printf %g grammar; from_chars<double> is not in libstdc++ 11.
    const std::string copy(field);
    char* end = nullptr;
    const double value = std::strtod(copy.c_str(), &end);
    if (copy.empty() || end != copy.c_str() + copy.size()) {
        parse_fail(line, "invalid coordinate '" + copy + "'");
    }
    if (!std::isfinite(value)) parse_fail(line, "non-finite coordinate '" + copy + "'");
    return value;
}

}  // namespace

const std::vector<std::string>& dataset_names() {
    static const std::vector<std::string> names{"gaussian", "moon", "rings"};
    return names;
}

std::vector<LabeledPoint> generate_class(std::string_view name, int label, std::size_t count,
                                         std::mt19937_64& rng) {
    if (label != 0 && label != 1) throw std::invalid_argument("generate_class: label must be 0 or 1");
    std::vector<LabeledPoint> points;
    points.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (name == "gaussian") {
            points.push_back(gaussian_point(label, i, rng));
        } else if (name == "moon") {
            points.push_back(moon_point(label, rng));
        } else if (name == "rings") {
            points.push_back(ring_point(label, rng));
        } else {
            throw std::invalid_argument("unknown dataset '" + std::string(name) +
                                        "' (expected gaussian, moon or rings)");
        }
    }
    return points;
}

Dataset generate(std::string_view name, std::uint64_t rng_seed) {
    if (std::find(dataset_names().begin(), dataset_names().end(), name) == dataset_names().end()) {
        throw std::invalid_argument("unknown dataset '" + std::string(name) +
                                    "' (expected gaussian, moon or rings)");
    }
    std::mt19937_64 rng(rng_seed);
    Dataset ds;
    ds.name = std::string(name);
    for (int label : {0, 1}) {
        auto points = generate_class(name, label, kTrainPerClass + kTestPerClass, rng);
        std::shuffle(points.begin(), points.end(), rng);
        ds.train.insert(ds.train.end(), points.begin(), points.begin() + kTrainPerClass);
        ds.test.insert(ds.test.end(), points.begin() + kTrainPerClass, points.end());
    }
    return ds;
}

std::string to_csv(const Dataset& dataset) {
    std::string out = "x1,x2,y,split\n";
    auto emit = [&out](const std::vector<LabeledPoint>& points, const char* split) {
        for (const auto& p : points) {
            out += format_double(p.x[0]);
            out += ',';
            out += format_double(p.x[1]);
            out += ',';
            out += std::to_string(p.y);
            out += ',';
            out += split;
            out += '\n';
        }
    };
    emit(dataset.train, "train");
    emit(dataset.test, "test");
    return out;
}

Dataset parse_csv(std::string_view text, std::string name) {
    Dataset ds;
    ds.name = std::move(name);
    std::size_t line_no = 0;
    bool header_seen = false;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = trim(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != "x1,x2,y,split") {
                parse_fail(line_no, "expected header 'x1,x2,y,split', got '" + std::string(line) + "'");
            }
            header_seen = true;
            continue;
        }
        std::vector<std::string_view> fields;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            fields.push_back(trim(line.substr(start, comma - start)));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (fields.size() != 4) {
            parse_fail(line_no, "expected 4 fields, got " + std::to_string(fields.size()));
        }
        LabeledPoint p;
        p.x[0] = parse_coordinate(fields[0], line_no);
        p.x[1] = parse_coordinate(fields[1], line_no);
        int label = -1;
        const auto [ptr, ec] = std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), label);
        if (ec != std::errc{} || ptr != fields[2].data() + fields[2].size()) {
            parse_fail(line_no, "invalid label '" + std::string(fields[2]) + "'");
        }
        if (label != 0 && label != 1) {
            parse_fail(line_no, "label must be 0 or 1, got " + std::to_string(label));
        }
        p.y = label;
        if (fields[3] == "train") {
            ds.train.push_back(p);
        } else if (fields[3] == "test") {
            ds.test.push_back(p);
        } else {
            parse_fail(line_no, "split must be 'train' or 'test', got '" + std::string(fields[3]) + "'");
        }
    }
    if (!header_seen) throw DataError("line 1: missing header 'x1,x2,y,split'");
    return ds;
}

void save_csv(const Dataset& dataset, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
    out << to_csv(dataset);
    if (!out) throw DataError("write to '" + path.string() + "' failed");
}

Dataset load_csv(const std::filesystem::path& path, std::string name) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path.string() + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_csv(buf.str(), std::move(name));
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

}  // namespace qhn
