// Copyright 2026 The aqc-chain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <vector>

namespace aqc::stats {

double mean(const std::vector<double>& x);
// n - 1 denominator; 0 for fewer than two samples.
double sample_std(const std::vector<double>& x);

// Average ranks for ties, 1-based.
std::vector<double> ranks(const std::vector<double>& x);
// Pearson correlation of average ranks. Throws std::invalid_argument on size
// mismatch or fewer than two samples; returns 0 when either side is constant.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

// Standard error of the mean from resamples drawn with a fixed seed.
double bootstrap_se(const std::vector<double>& x, int resamples,
                    std::uint64_t seed);

// Least-squares slope of log|y| against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// Fraction of pairs (a, b) with c_a != c_b in which the smaller c also has
// the smaller p: a lower figure of merit did not buy a higher P_S.
double discordant_fraction(const std::vector<double>& c,
                           const std::vector<double>& p);

}  // namespace aqc::stats
