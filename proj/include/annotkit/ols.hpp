// Copyright 2026 The annotkit Authors.
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

#ifndef ANNOTKIT_OLS_HPP_
#define ANNOTKIT_OLS_HPP_

#include <cstddef>
#include <span>
#include <string>

#include "annotkit/temporal.hpp"

namespace annotkit {

struct LineFit {
  double slope = 0;
  double intercept = 0;
  double std_error = 0;
  double t_stat = 0;
  double p_value = 1;  // two-sided, n - 2 degrees of freedom
  std::size_t n = 0;
};

// Least squares line y = intercept + slope * x. With `weights`, weighted
// least squares. Throws Error(kInvalidArgument) for fewer than 3 points or
// zero variance in x.
LineFit FitLine(std::span<const double> x, std::span<const double> y,
                std::span<const double> weights = {});

// Two-sided p-value of a t statistic.
double StudentTwoSidedP(double t, double degrees_of_freedom);

// "***" p < 0.001, "**" p < 0.01, "*" p < 0.05, otherwise "".
std::string Stars(double p_value);

struct RegressionResult {
  double beta = 0;  // share per time unit
  double intercept = 0;
  double p_value = 1;
  std::string stars;
  std::size_t n_bins = 0;
  double beta_per_second = 0;
  std::string time_unit;
};

// Regresses bin share on bin start time (in the series' time unit). Bins
// are unweighted unless `weighted`, which weights them by post count.
RegressionResult OlsFit(const BinnedSeries& series, bool weighted = false);

// "0.07***"
std::string FormatBeta(const RegressionResult& r);

}  // namespace annotkit

#endif  // ANNOTKIT_OLS_HPP_
