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

#ifndef TPP_SIMULATE_HPP_
#define TPP_SIMULATE_HPP_

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "tpp/intensity.hpp"
#include "tpp/model.hpp"
#include "tpp/pattern.hpp"
#include "tpp/rng.hpp"

namespace tpp {

enum class Algorithm { inverse, thinning };

struct SimConfig {
  Algorithm algorithm = Algorithm::inverse;
  ObservationWindow window;
  std::uint64_t seed = 0;
  int replicates = 1;
  double inversion_tolerance = 1e-9;
  std::uint64_t max_events = 10'000'000;
  double envelope_lookahead = kDefaultLookahead;
};

namespace detail {

// Bracket-doubling ceiling: past 2^60 time units without locating the
// target or proving termination, give up.
inline constexpr double kMaxBracketSpan = 1152921504606846976.0;  // 2^60

// Finds the leftmost t >= t_lower with Lambda*(t) >= target, using only
// the tracker's compensator. Doubles a bracket out of t_lower, then
// bisects; the returned point is the final upper bracket end, so
// Lambda*(result) >= target always holds and the result exceeds t_lower
// strictly. nullopt means the compensator provably stays below the
// target forever (terminating process).
inline std::optional<double> invert_tracked(const IntensityTracker& tracker,
                                            double target, double t_lower,
                                            double tol) {
  double lo = t_lower;
  double lo_val = tracker.compensator(lo);
  if (lo_val >= target) {
    // Degenerate call: the target is already attained at t_lower. The
    // infimum is t_lower itself.
    return t_lower;
  }
  if (tracker.zero_forever(lo)) return std::nullopt;

  double step = std::max(tol, 1e-6);
  double hi = 0.0;
  double hi_val = 0.0;
  while (true) {
    if (step > kMaxBracketSpan) {
      throw NoConvergence(
          "compensator bracket expanded past 2^60 time units");
    }
    hi = t_lower + step;
    hi_val = tracker.compensator(hi);
    if (hi_val >= target) break;
    if (tracker.zero_forever(hi)) return std::nullopt;
    // Numeric stall: the compensator stopped moving and the intensity is
    // flat zero; treat as terminated even without an exact predicate.
    if (hi_val - lo_val < 1e-15 * target && tracker.intensity(hi) <= 0.0) {
      return std::nullopt;
    }
    lo = hi;
    lo_val = hi_val;
    step *= 2.0;
  }

  double residual_tol = 1e-9 * (1.0 + target);
  for (int iter = 0; iter < 300; ++iter) {
    if (hi - lo <= tol && hi_val - target <= residual_tol) break;
    double mid = 0.5 * (lo + hi);
    if (!(mid > lo) || !(mid < hi)) break;  // bisection hit the fp grid
    double v = tracker.compensator(mid);
    if (v >= target) {
      hi = mid;
      hi_val = v;
    } else {
      lo = mid;
      lo_val = v;
    }
  }
  return hi;
}

inline double draw_mark(const ModelSpec& model, RngStream& rng) {
  return rng.exponential(std::get<EtasExp>(model).delta);
}

inline PointPattern simulate_inverse_stream(const ModelSpec& model,
                                            const SimConfig& config,
                                            RngStream rng) {
  const double t_end = config.window.t_end;
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw Error("simulation window must have finite t_end > 0");
  }
  IntensityTracker tracker(model);
  const bool marked = tracker.marked();

  PointPattern out;
  out.window = config.window;
  out.marked = marked;

  double target = 0.0;
  double prev = 0.0;
  while (true) {
    target += rng.exponential(1.0);
    auto t = invert_tracked(tracker, target, prev, config.inversion_tolerance);
    if (!t.has_value()) break;  // terminated: no further events ever
    double when = *t;
    if (when <= prev) {
      // Interevent gap below the fp resolution of the time axis; place
      // the event on the next representable instant.
      when = std::nextafter(prev, std::numeric_limits<double>::infinity());
    }
    if (when >= t_end) break;
    std::optional<double> mark;
    if (marked) mark = draw_mark(model, rng);
    tracker.add_event(when, mark);
    out.events.push_back(Event{when, mark});
    prev = when;
    if (out.events.size() > config.max_events) {
      throw EventCapExceeded("inverse simulation exceeded max_events = " +
                             std::to_string(config.max_events));
    }
  }
  return out;
}

inline PointPattern simulate_thinning_stream(const ModelSpec& model,
                                             const SimConfig& config,
                                             RngStream rng) {
  const double t_end = config.window.t_end;
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw Error("simulation window must have finite t_end > 0");
  }
  IntensityTracker tracker(model);
  const bool marked = tracker.marked();

  PointPattern out;
  out.window = config.window;
  out.marked = marked;

  double cursor = 0.0;
  while (cursor <= t_end) {
    ThinningEnvelope env =
        tracker.envelope(cursor, config.envelope_lookahead);
    double s = rng.exponential(env.bound_m);  // +inf when bound_m == 0
    double u = rng.uniform01();
    double next;
    if (s > env.horizon_l) {
      next = cursor + env.horizon_l;
    } else {
      double cand = cursor + s;
      if (cand > t_end) {
        next = cand;
      } else {
        double lam = tracker.intensity(cand);
        if (lam > env.bound_m * (1.0 + 1e-9)) {
          throw InvalidEnvelope("lambda*(t+s) = " + std::to_string(lam) +
                                " exceeds the envelope bound m = " +
                                std::to_string(env.bound_m));
        }
        if (u > lam / env.bound_m) {
          next = cand;  // proposal rejected; restart from it
        } else {
          if (cand <= cursor) {
            cand = std::nextafter(cursor,
                                  std::numeric_limits<double>::infinity());
          }
          std::optional<double> mark;
          if (marked) mark = draw_mark(model, rng);
          tracker.add_event(cand, mark);
          if (cand < t_end) out.events.push_back(Event{cand, mark});
          next = cand;
          if (out.events.size() > config.max_events) {
            throw EventCapExceeded(
                "thinning simulation exceeded max_events = " +
                std::to_string(config.max_events));
          }
        }
      }
    }
    if (next <= cursor) {
      next = std::nextafter(cursor, std::numeric_limits<double>::infinity());
    }
    cursor = next;
  }
  return out;
}

}  // namespace detail

// Leftmost t with Lambda*(t) >= target_s, to absolute time accuracy
// `tol`, where `history` holds every event before t_lower. Returns
// nullopt when the process terminates below the target.
inline std::optional<TimeStamp> invert_compensator(const ModelSpec& model,
                                                   HistoryView history,
                                                   double target_s,
                                                   TimeStamp t_lower,
                                                   double tol = 1e-9) {
  if (!(t_lower >= 0.0)) throw Error("t_lower must be >= 0");
  if (!(tol > 0.0)) throw Error("inversion tolerance must be > 0");
  auto tracker =
      detail::replay(model, history, t_lower, /*strict_before=*/false);
  return detail::invert_tracked(tracker, target_s, t_lower, tol);
}

// Simulation by inversion: cumulative unit-rate exponential draws mapped
// through the inverse compensator. Marked models draw each event's mark
// right after its time is fixed.
inline PointPattern simulate_inverse(const ModelSpec& model,
                                     const SimConfig& config) {
  return detail::simulate_inverse_stream(model, config,
                                         RngStream::substream(config.seed, 0));
}

// Ogata's modified thinning: propose from a dominating constant rate m
// over [t, t+l], accept with probability lambda*(t+s)/m.
inline PointPattern simulate_thinning(const ModelSpec& model,
                                      const SimConfig& config) {
  return detail::simulate_thinning_stream(
      model, config, RngStream::substream(config.seed, 0));
}

inline PointPattern simulate(const ModelSpec& model, const SimConfig& config) {
  return config.algorithm == Algorithm::inverse
             ? simulate_inverse(model, config)
             : simulate_thinning(model, config);
}

// Deterministic batch: replicate k runs on RngStream::substream(seed, k),
// so the output is reproducible and independent of execution order.
// Replicate 0 coincides with the single-run simulate() output.
inline std::vector<PointPattern> simulate_batch(const ModelSpec& model,
                                                const SimConfig& config) {
  if (config.replicates < 1) throw Error("replicates must be >= 1");
  std::vector<PointPattern> out;
  out.reserve(static_cast<std::size_t>(config.replicates));
  for (int k = 0; k < config.replicates; ++k) {
    auto stream =
        RngStream::substream(config.seed, static_cast<std::uint64_t>(k));
    try {
      out.push_back(config.algorithm == Algorithm::inverse
                        ? detail::simulate_inverse_stream(model, config, stream)
                        : detail::simulate_thinning_stream(model, config,
                                                           stream));
    } catch (const EventCapExceeded& e) {
      throw EventCapExceeded("replicate " + std::to_string(k) + ": " +
                             e.what());
    } catch (const NumericError& e) {
      throw NonFiniteResult("replicate " + std::to_string(k) + ": " +
                            e.what());
    }
  }
  return out;
}

}  // namespace tpp

#endif  // TPP_SIMULATE_HPP_
