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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace qhn;

namespace {

std::size_t count_label(const std::vector<LabeledPoint>& pts, int label) {
    std::size_t n = 0;
    for (const auto& p : pts) n += p.y == label;
    return n;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("qhn_data_test_" + name);
}

void write(const std::filesystem::path& path, const std::string& text) {
    std::ofstream(path) << text;
}

}  // namespace

TEST(Generate, balanced_split_sizes_for_every_name_and_seed) {
    for (const auto& name : dataset_names()) {
        for (std::uint64_t seed : {0ull, 1ull, 42ull, 987654321ull}) {
            const auto ds = generate(name, seed);
            EXPECT_EQ(ds.name, name);
            ASSERT_EQ(ds.train.size(), 300u);
            ASSERT_EQ(ds.test.size(), 200u);
            EXPECT_EQ(count_label(ds.train, 0), 150u);
            EXPECT_EQ(count_label(ds.train, 1), 150u);
            EXPECT_EQ(count_label(ds.test, 0), 100u);
            EXPECT_EQ(count_label(ds.test, 1), 100u);
            for (const auto* split : {&ds.train, &ds.test}) {
                for (const auto& p : *split) {
                    ASSERT_TRUE(std::isfinite(p.x[0]) && std::isfinite(p.x[1]));
                }
            }
        }
    }
}

TEST(Generate, deterministic) {
    EXPECT_EQ(generate("moon", 3), generate("moon", 3));
    EXPECT_NE(generate("moon", 3), generate("moon", 4));
    EXPECT_THROW(generate("spirals", 0), std::invalid_argument);
}

TEST(Generate, train_and_test_are_disjoint_draws) {
    for (const auto& name : dataset_names()) {
        const auto ds = generate(name, 5);
        for (const auto& a : ds.train) {
            for (const auto& b : ds.test) ASSERT_FALSE(a == b);
        }
    }
}

TEST(Generate, gaussian_cluster_means) {
    std::mt19937_64 rng(31);
    for (int label : {0, 1}) {
        const auto pts = generate_class("gaussian", label, 20000, rng);
        // Even indices come from the first corner of the class, odd from the second.
        double sx[2] = {0, 0}, sy[2] = {0, 0};
        for (std::size_t i = 0; i < pts.size(); ++i) {
            sx[i % 2] += pts[i].x[0];
            sy[i % 2] += pts[i].x[1];
        }
        const double n = pts.size() / 2.0;
        const double se = GeneratorConstants::kClusterStd / std::sqrt(n);
        const double cx[2] = {1.0, -1.0};
        const double cy[2] = {label == 0 ? 1.0 : -1.0, label == 0 ? -1.0 : 1.0};
        for (int k = 0; k < 2; ++k) {
            EXPECT_NEAR(sx[k] / n, cx[k], 3 * se);
            EXPECT_NEAR(sy[k] / n, cy[k], 3 * se);
        }
    }
}

TEST(Generate, outer_ring_is_class_zero) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto ds = generate("rings", seed);
        double r[2] = {0, 0};
        for (const auto& p : ds.train) r[p.y] += std::hypot(p.x[0], p.x[1]);
        EXPECT_GT(r[0], r[1]);
    }
}

TEST(Csv, round_trip) {
    const auto ds = generate("rings", 12);
    const auto path = temp_file("roundtrip.csv");
    save_csv(ds, path);
    EXPECT_EQ(load_csv(path, "rings"), ds);

    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "x1,x2,y,split");
    std::filesystem::remove(path);
}

TEST(Csv, malformed_row_names_the_line) {
    try {
        parse_csv("x1,x2,y,split\n0.5,0.25,1,train\na,b\n");
        FAIL() << "expected DataError";
    } catch (const DataError& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
}

TEST(Csv, validation_errors) {
    EXPECT_THROW(parse_csv("x1,x2,y,split\n0,0,2,train\n"), DataError);
    EXPECT_THROW(parse_csv("x1,x2,y,split\n0,0,1,validation\n"), DataError);
    EXPECT_THROW(parse_csv("x1,x2,y,split\nnan,0,1,train\n"), DataError);
    EXPECT_THROW(parse_csv("a,b,c\n"), DataError);
    EXPECT_THROW(parse_csv(""), DataError);
    EXPECT_THROW(load_csv(temp_file("does_not_exist.csv")), DataError);

    const auto path = temp_file("bad_label.csv");
    write(path, "x1,x2,y,split\n1,2,0,test\n1,2,-1,test\n");
    try {
        load_csv(path);
        FAIL() << "expected DataError";
    } catch (const DataError& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
    std::filesystem::remove(path);
}
