// Copyright 2026 The tpp authors.
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

#ifndef TPP_RESIDUALS_HPP_
#define TPP_RESIDUALS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "tpp/intensity.hpp"
#include "tpp/likelihood.hpp"
#include "tpp/model.hpp"
#include "tpp/pattern.hpp"
#include "tpp/special_functions.hpp"

namespace tpp {

// Time-rescaling transform: s_i = Lambda*(t_i), each with the history of
// events before t_i. For a well-specified model the s_i form a unit-rate
// Poisson process, so the gaps should look like independent Exp(1) draws.
inline std::vector<double> rescale(const ModelSpec& model,
                                   const PointPattern& pattern) {
  detail::check_mark_agreement(model, pattern);
  IntensityTracker tracker(model);
  std::vector<double> rescaled;
  rescaled.reserve(pattern.size());
  for (const Event& e : pattern.events) {
    rescaled.push_back(tracker.compensator(e.time));
    tracker.add_event(e);
  }
  return rescaled;
}

struct KsResult {
  double statistic = std::numeric_limits<double>::quiet_NaN();
  double p_value = std::numeric_limits<double>::quiet_NaN();
};

// One-sample Kolmogorov-Smirnov test of `gaps` against Exp(1):
//   D = sup_x |F_hat(x) - (1 - exp(-x))|,
// p-value from the asymptotic Kolmogorov distribution at sqrt(n) D.
// Asymptotic for every n; below n = 35 the p-value is a rough guide only.
inline KsResult exp1_ks_test(std::span<const double> gaps) {
  if (gaps.empty()) throw EmptySample("KS test requires at least one gap");
  std::vector<double> sorted(gaps.begin(), gaps.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    double cdf = -std::expm1(-sorted[i]);
    double lo = static_cast<double>(i) / n;
    double hi = static_cast<double>(i + 1) / n;
    d = std::max({d, cdf - lo, hi - cdf});
  }
  return {d, kolmogorov_q(std::sqrt(n) * d)};
}

struct MaxGap {
  std::size_t index = 0;  // 1-based event index ending the gap
  double value = std::numeric_limits<double>::quiet_NaN();
};

struct ResidualReport {
  std::vector<double> rescaled_times;
  double interevent_mean = std::numeric_limits<double>::quiet_NaN();
  double interevent_cv = std::numeric_limits<double>::quiet_NaN();
  double ks_statistic = std::numeric_limits<double>::quiet_NaN();
  double ks_p_value = std::numeric_limits<double>::quiet_NaN();
  MaxGap max_gap;
  std::size_t n = 0;
  // Rescaled remainder Lambda*(T) - s_n. Censored, so it stays out of the
  // KS sample; an implausibly large value flags a model breakdown after
  // the last event.
  double censored_remainder = std::numeric_limits<double>::quiet_NaN();
  // Lag-1 autocorrelation of the gaps. Descriptive only; no test.
  double gap_lag1_autocorr = std::numeric_limits<double>::quiet_NaN();
};

// Full residual diagnostics: rescaled times, gap statistics (the first
// gap is s_1 - 0), KS against Exp(1). A pattern with no events yields
// n = 0 with the test fields left NaN.
inline ResidualReport residual_report(const ModelSpec& model,
                                      const PointPattern& pattern) {
  ResidualReport report;
  report.rescaled_times = rescale(model, pattern);
  report.n = report.rescaled_times.size();
  report.censored_remainder =
      evaluate_compensator(model, pattern.window.t_end,
                           HistoryView(pattern.events)) -
      (report.n > 0 ? report.rescaled_times.back() : 0.0);
  if (report.n == 0) return report;

  std::vector<double> gaps(report.n);
  double prev = 0.0;
  for (std::size_t i = 0; i < report.n; ++i) {
    gaps[i] = report.rescaled_times[i] - prev;
    prev = report.rescaled_times[i];
    if (!(gaps[i] >= 0.0) || !std::isfinite(gaps[i])) {
      throw NonFiniteResult("rescaled times are not increasing and finite");
    }
    if (i == 0 || gaps[i] > report.max_gap.value) {
      report.max_gap = {i + 1, gaps[i]};
    }
  }

  double mean = 0.0;
  for (double g : gaps) mean += g;
  mean /= static_cast<double>(report.n);
  report.interevent_mean = mean;

  if (report.n >= 2) {
    double ss = 0.0;
    for (double g : gaps) ss += (g - mean) * (g - mean);
    double sd = std::sqrt(ss / static_cast<double>(report.n - 1));
    report.interevent_cv = sd / mean;
    if (report.n >= 3 && ss > 0.0) {
      double acc = 0.0;
      for (std::size_t i = 0; i + 1 < report.n; ++i) {
        acc += (gaps[i] - mean) * (gaps[i + 1] - mean);
      }
      report.gap_lag1_autocorr = acc / ss;
    }
  }

  KsResult ks = exp1_ks_test(gaps);
  report.ks_statistic = ks.statistic;
  report.ks_p_value = ks.p_value;
  return report;
}

}  // namespace tpp

#endif  // TPP_RESIDUALS_HPP_
