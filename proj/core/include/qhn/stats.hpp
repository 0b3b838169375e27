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

#include <cmath>
#include <cstddef>
#include <span>

namespace qhn {

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;
};

/// Mean and standard deviation; `sample` selects the n-1 denominator. A
/// single value (or an empty span) has std 0.
inline MeanStd mean_std(std::span<const double> values, bool sample = true) {
    MeanStd out;
    const std::size_t n = values.size();
    if (n == 0) return out;
    // Welford
    double m2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double delta = values[i] - out.mean;
        out.mean += delta / static_cast<double>(i + 1);
        m2 += delta * (values[i] - out.mean);
    }
    const std::size_t dof = sample ? n - 1 : n;
    out.std = dof > 0 ? std::sqrt(m2 / static_cast<double>(dof)) : 0.0;
    return out;
}

}  // namespace qhn
