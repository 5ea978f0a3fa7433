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

#include "annotkit/ols.hpp"

#include <cmath>

#include <boost/math/distributions/students_t.hpp>
#include <fmt/format.h>

#include "annotkit/errors.hpp"

namespace annotkit {

double StudentTwoSidedP(double t, double degrees_of_freedom) {
  if (std::isinf(t)) return 0.0;
  if (std::isnan(t)) return 1.0;
  boost::math::students_t dist(degrees_of_freedom);
  return std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))));
}

std::string Stars(double p_value) {
  if (p_value < 0.001) return "***";
  if (p_value < 0.01) return "**";
  if (p_value < 0.05) return "*";
  return "";
}

LineFit FitLine(std::span<const double> x, std::span<const double> y,
                std::span<const double> weights) {
  if (x.size() != y.size() || (!weights.empty() && weights.size() != x.size())) {
    throw InvalidArgument("regression inputs differ in length");
  }
  if (x.size() < 3) throw InvalidArgument("regression needs at least 3 points");
  auto w = [&](std::size_t i) { return weights.empty() ? 1.0 : weights[i]; };

  double sw = 0, mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sw += w(i);
    mx += w(i) * x[i];
    my += w(i) * y[i];
  }
  if (!(sw > 0)) throw InvalidArgument("regression weights sum to zero");
  mx /= sw;
  my /= sw;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += w(i) * (x[i] - mx) * (x[i] - mx);
    sxy += w(i) * (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0)) throw InvalidArgument("regression time axis has zero variance");

  LineFit fit;
  fit.n = x.size();
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - fit.intercept - fit.slope * x[i];
    ssr += w(i) * r * r;
  }
  const double df = static_cast<double>(x.size()) - 2.0;
  fit.std_error = std::sqrt(ssr / df / sxx);
  if (fit.std_error > 0) {
    fit.t_stat = fit.slope / fit.std_error;
    fit.p_value = StudentTwoSidedP(fit.t_stat, df);
  } else {
    // Exact fit: any nonzero slope is certain.
    fit.t_stat = fit.slope == 0 ? 0 : std::copysign(INFINITY, fit.slope);
    fit.p_value = fit.slope == 0 ? 1.0 : 0.0;
  }
  return fit;
}

RegressionResult OlsFit(const BinnedSeries& series, bool weighted) {
  std::vector<double> x, y, w;
  for (const Bin& b : series.bins) {
    if (b.n_posts == 0) continue;
    x.push_back(b.start_seconds / series.time_unit_seconds);
    y.push_back(b.share);
    w.push_back(static_cast<double>(b.n_posts));
  }
  if (x.size() < 3) {
    throw InvalidArgument(fmt::format("regression needs at least 3 non-empty bins, got {}", x.size()));
  }
  const LineFit fit = FitLine(x, y, weighted ? std::span<const double>(w) : std::span<const double>());
  RegressionResult r;
  r.beta = fit.slope;
  r.intercept = fit.intercept;
  r.p_value = fit.p_value;
  r.stars = Stars(fit.p_value);
  r.n_bins = x.size();
  r.beta_per_second = fit.slope / series.time_unit_seconds;
  r.time_unit = series.time_unit;
  return r;
}

std::string FormatBeta(const RegressionResult& r) {
  return fmt::format("{:.2f}{}", r.beta, r.stars);
}

}  // namespace annotkit
