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

// Shared helpers for the unit and acceptance suites: random model/history
// generators, pattern builders, pooled statistics and a two-sample KS
// test. Everything is seeded and deterministic.

#ifndef TPP_TESTS_SUPPORT_HPP_
#define TPP_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "tpp/tpp.hpp"

namespace tpp_test {

inline tpp::PointPattern make_pattern(std::vector<double> times,
                                      double t_end) {
  std::vector<tpp::RawEvent> raw;
  raw.reserve(times.size());
  for (double t : times) raw.emplace_back(t, std::nullopt);
  return tpp::validate_pattern(raw, {t_end});
}

inline tpp::PointPattern make_marked_pattern(
    std::vector<std::pair<double, double>> rows, double t_end) {
  std::vector<tpp::RawEvent> raw;
  raw.reserve(rows.size());
  for (auto [t, k] : rows) raw.emplace_back(t, k);
  return tpp::validate_pattern(raw, {t_end});
}

inline std::vector<tpp::Event> make_history(std::vector<double> times) {
  std::vector<tpp::Event> events;
  for (double t : times) events.push_back({t, std::nullopt});
  return events;
}

// --- randomized model/history cases -------------------------------------

struct RandomCase {
  tpp::ModelSpec model;
  std::vector<tpp::Event> history;  // sorted, strictly before t
  double t = 0.0;                   // query time
};

inline double uniform_in(tpp::RngStream& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.uniform01();
}

// `smooth_renewal` keeps gamma shapes >= 1 (finite hazard at every event,
// so quadrature over segments is well posed); envelope tests relax it.
inline tpp::ModelSpec random_model(tpp::Family family, tpp::RngStream& rng,
                                   bool smooth_renewal = true) {
  using namespace tpp;
  switch (family) {
    case Family::hom_poisson:
      return HomPoisson{uniform_in(rng, 0.2, 5.0)};
    case Family::piecewise_poisson: {
      PiecewisePoisson m;
      int k = static_cast<int>(uniform_in(rng, 0.0, 3.999));
      double b = 0.0;
      for (int i = 0; i < k; ++i) {
        b += uniform_in(rng, 0.5, 3.0);
        m.breakpoints.push_back(b);
      }
      for (int i = 0; i <= k; ++i) {
        double r = uniform_in(rng, 0.0, 3.0);
        if (r < 0.3) r = 0.0;  // exercise zero segments
        m.rates.push_back(r);
      }
      if (std::all_of(m.rates.begin(), m.rates.end(),
                      [](double r) { return r == 0.0; })) {
        m.rates.front() = 1.0;
      }
      return m;
    }
    case Family::renewal_gamma:
      return RenewalGamma{
          smooth_renewal ? uniform_in(rng, 1.0, 5.0)
                         : uniform_in(rng, 0.3, 5.0),
          uniform_in(rng, 0.5, 4.0)};
    case Family::hawkes_exp:
      return HawkesExp{uniform_in(rng, 0.2, 2.0), uniform_in(rng, 0.1, 0.9),
                       uniform_in(rng, 0.3, 3.0)};
    case Family::self_correcting:
      return SelfCorrecting{uniform_in(rng, 0.2, 1.2),
                            uniform_in(rng, 0.1, 1.0)};
    case Family::etas_exp: {
      double beta = uniform_in(rng, 0.2, 1.0);
      return EtasExp{uniform_in(rng, 0.2, 1.0), uniform_in(rng, 0.05, 0.3),
                     beta, uniform_in(rng, 0.5, 2.0),
                     beta + uniform_in(rng, 0.5, 2.0)};
    }
    case Family::stop_after_n:
      return StopAfterN{uniform_in(rng, 0.5, 3.0),
                        static_cast<std::int64_t>(uniform_in(rng, 0.0, 5.999))};
  }
  throw tpp::Error("unreachable family");
}

inline RandomCase random_case(tpp::Family family, tpp::RngStream& rng,
                              bool smooth_renewal = true) {
  RandomCase out;
  out.model = random_model(family, rng, smooth_renewal);
  int n = static_cast<int>(uniform_in(rng, 0.0, 8.999));
  std::vector<double> times;
  for (int i = 0; i < n; ++i) times.push_back(uniform_in(rng, 0.0, 8.0));
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  bool marked = tpp::is_marked(out.model);
  for (double t : times) {
    out.history.push_back(
        {t, marked ? std::optional<double>(rng.exponential(1.0))
                   : std::nullopt});
  }
  double last = out.history.empty() ? 0.0 : out.history.back().time;
  out.t = last + uniform_in(rng, 1e-4, 3.0);
  return out;
}

inline const std::vector<tpp::Family>& all_families() {
  static const std::vector<tpp::Family> families = {
      tpp::Family::hom_poisson,    tpp::Family::piecewise_poisson,
      tpp::Family::renewal_gamma,  tpp::Family::hawkes_exp,
      tpp::Family::self_correcting, tpp::Family::etas_exp,
      tpp::Family::stop_after_n};
  return families;
}

// Compensator by piecewise adaptive quadrature of the intensity path,
// independent of the closed-form integral algebra.
inline double compensator_by_quadrature(const tpp::ModelSpec& model,
                                        double t,
                                        std::span<const tpp::Event> history,
                                        double tol = 1e-10) {
  tpp::IntensityTracker tracker(model);
  double total = 0.0;
  double seg_start = 0.0;
  for (const tpp::Event& e : history) {
    total += tpp::adaptive_simpson(
        [&](double s) { return tracker.intensity(s); }, seg_start, e.time,
        tol);
    tracker.add_event(e);
    seg_start = e.time;
  }
  total += tpp::adaptive_simpson(
      [&](double s) { return tracker.intensity(s); }, seg_start, t, tol);
  return total;
}

// --- sample statistics ----------------------------------------------------

inline double mean_of(std::span<const double> xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) /
         static_cast<double>(xs.size());
}

inline double sd_of(std::span<const double> xs) {
  double m = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

inline double cv_of(std::span<const double> xs) {
  return sd_of(xs) / mean_of(xs);
}

// Interevent times of a pattern (consecutive diffs, first event excluded).
inline void append_gaps(const tpp::PointPattern& pattern,
                        std::vector<double>& out) {
  for (std::size_t i = 1; i < pattern.size(); ++i) {
    out.push_back(pattern.events[i].time - pattern.events[i - 1].time);
  }
}

struct TwoSampleKs {
  double statistic = 0.0;
  double p_value = 1.0;
};

// Two-sample KS with the asymptotic p-value at sqrt(nm/(n+m)) D.
inline TwoSampleKs two_sample_ks(std::vector<double> a,
                                 std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() || j < b.size()) {
    double v = std::min(i < a.size() ? a[i] : b[j],
                        j < b.size() ? b[j] : a[i]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na -
                              static_cast<double>(j) / nb));
  }
  double effective = std::sqrt(na * nb / (na + nb));
  return {d, tpp::kolmogorov_q(effective * d)};
}

}  // namespace tpp_test

#endif  // TPP_TESTS_SUPPORT_HPP_
