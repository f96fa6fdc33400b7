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

#ifndef TPP_INTENSITY_HPP_
#define TPP_INTENSITY_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <variant>
#include <vector>

#include "tpp/errors.hpp"
#include "tpp/model.hpp"
#include "tpp/pattern.hpp"
#include "tpp/rng.hpp"
#include "tpp/special_functions.hpp"

namespace tpp {

// Default lookahead for envelopes of intensities that rise between
// events; the bound is then taken at the right end of the window.
inline constexpr double kDefaultLookahead = 1.0;

// Dominating-rate proposal window for thinning: bound_m >= lambda*(s) for
// all s in [t, t + horizon_l], as long as no new event arrives there.
// bound_m == 0 means no event can occur within the horizon at all.
struct ThinningEnvelope {
  double bound_m = 0.0;
  double horizon_l = std::numeric_limits<double>::infinity();
};

namespace detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Exponent ceiling for intensities computed as exp(x); past this the
// double range is exhausted.
inline constexpr double kMaxLogIntensity = 700.0;

// Each track evaluates one family's lambda* and its integral along a
// growing history. `integral(a, b)` is the compensator increment over
// [a, b] assuming no events inside, with last_event <= a <= b; queries at
// the last event time give the right limit lambda*(t+).

struct PoissonTrack {
  double rate;
  explicit PoissonTrack(const HomPoisson& m) : rate(m.lambda) {}
  double intensity(double) const { return rate; }
  double log_intensity(double) const { return std::log(rate); }
  double integral(double a, double b) const { return rate * (b - a); }
  ThinningEnvelope envelope(double, double) const { return {rate, kInf}; }
  void on_event(double, double) {}
  bool zero_forever(double) const { return false; }
};

struct PiecewiseTrack {
  std::vector<double> bounds;
  std::vector<double> rates;
  std::vector<double> cum;  // cum[i] = integral over segments 0..i-1
  std::size_t last_live;    // index of the last segment with rate > 0

  explicit PiecewiseTrack(const PiecewisePoisson& m)
      : bounds(m.breakpoints), rates(m.rates) {
    cum.assign(rates.size(), 0.0);
    for (std::size_t i = 1; i < rates.size(); ++i) {
      double left = i >= 2 ? bounds[i - 2] : 0.0;
      cum[i] = cum[i - 1] + rates[i - 1] * (bounds[i - 1] - left);
    }
    last_live = rates.size();  // sentinel: no live segment
    for (std::size_t i = rates.size(); i-- > 0;) {
      if (rates[i] > 0.0) {
        last_live = i;
        break;
      }
    }
  }

  std::size_t segment(double t) const {
    return static_cast<std::size_t>(
        std::upper_bound(bounds.begin(), bounds.end(), t) - bounds.begin());
  }
  double intensity(double t) const { return rates[segment(t)]; }
  double log_intensity(double t) const { return std::log(intensity(t)); }
  double compensator_from_origin(double t) const {
    std::size_t s = segment(t);
    double left = s >= 1 ? bounds[s - 1] : 0.0;
    return cum[s] + rates[s] * (t - left);
  }
  double integral(double a, double b) const {
    return compensator_from_origin(b) - compensator_from_origin(a);
  }
  ThinningEnvelope envelope(double t, double) const {
    std::size_t s = segment(t);
    double horizon = s < bounds.size() ? bounds[s] - t : kInf;
    return {rates[s], horizon};
  }
  void on_event(double, double) {}
  bool zero_forever(double t) const {
    return last_live == rates.size() || segment(t) > last_live;
  }
};

struct RenewalTrack {
  double shape, rate;
  double last = 0.0;  // renewal origin, updated at each event

  explicit RenewalTrack(const RenewalGamma& m)
      : shape(m.shape), rate(m.rate) {}

  // -log of the interevent survival function at elapsed time u.
  double neg_log_survival(double u) const {
    if (u <= 0.0) return 0.0;
    return -log_gamma_q(shape, rate * u);
  }
  // Hazard g(u)/S(u) in log space; stays finite where S(u) underflows.
  double log_hazard(double u) const {
    if (u <= 0.0) {
      if (shape == 1.0) return std::log(rate);
      return shape > 1.0 ? -kInf : kInf;
    }
    double log_pdf = shape * std::log(rate) + (shape - 1.0) * std::log(u) -
                     rate * u - std::lgamma(shape);
    return log_pdf + neg_log_survival(u);
  }
  double intensity(double t) const { return std::exp(log_hazard(t - last)); }
  double log_intensity(double t) const { return log_hazard(t - last); }
  double integral(double a, double b) const {
    return neg_log_survival(b - last) - neg_log_survival(a - last);
  }
  ThinningEnvelope envelope(double t, double lookahead) const {
    if (shape <= 1.0) {
      // Hazard is non-increasing in the elapsed time. For shape < 1 it
      // diverges at elapsed time 0, where no finite bound exists.
      double m = intensity(t);
      if (!std::isfinite(m)) {
        throw NonFiniteResult(
            "renewal hazard is unbounded at elapsed time zero (shape < 1)");
      }
      return {m, kInf};
    }
    // Increasing hazard: bound at the right end of the lookahead window.
    return {intensity(t + lookahead), lookahead};
  }
  void on_event(double t, double) { last = t; }
  bool zero_forever(double) const { return false; }
};

struct HawkesTrack {
  double mu, alpha, gam;
  double anchor = 0.0;
  double excite = 0.0;  // sum_i gam * exp(-gam (anchor - t_i))

  explicit HawkesTrack(const HawkesExp& m)
      : mu(m.mu), alpha(m.alpha), gam(m.gamma_rate) {}

  double intensity(double t) const {
    return mu + alpha * excite * std::exp(-gam * (t - anchor));
  }
  double log_intensity(double t) const { return std::log(intensity(t)); }
  double integral(double a, double b) const {
    return mu * (b - a) + (alpha / gam) * excite *
                              (std::exp(-gam * (a - anchor)) -
                               std::exp(-gam * (b - anchor)));
  }
  ThinningEnvelope envelope(double t, double) const {
    return {intensity(t), kInf};
  }
  void on_event(double t, double) {
    excite = excite * std::exp(-gam * (t - anchor)) + gam;
    anchor = t;
  }
  bool zero_forever(double) const { return false; }
};

struct SelfCorrectingTrack {
  double mu, alpha;
  std::int64_t count = 0;

  explicit SelfCorrectingTrack(const SelfCorrecting& m)
      : mu(m.mu), alpha(m.alpha) {}

  double log_intensity(double t) const {
    return mu * t - alpha * static_cast<double>(count);
  }
  double intensity(double t) const {
    double lg = log_intensity(t);
    if (lg > kMaxLogIntensity) {
      throw NonFiniteResult("self-correcting intensity overflows at t = " +
                            std::to_string(t));
    }
    return std::exp(lg);
  }
  double integral(double a, double b) const {
    if (log_intensity(b) > kMaxLogIntensity) {
      throw NonFiniteResult("self-correcting compensator overflows");
    }
    return std::exp(log_intensity(a)) * std::expm1(mu * (b - a)) / mu;
  }
  ThinningEnvelope envelope(double t, double lookahead) const {
    return {intensity(t + lookahead), lookahead};
  }
  void on_event(double, double) { ++count; }
  bool zero_forever(double) const { return false; }
};

struct EtasTrack {
  double mu, alpha, beta, gam, delta;
  double anchor = 0.0;
  double excite = 0.0;  // sum_i exp(beta k_i) exp(-gam (anchor - t_i))

  explicit EtasTrack(const EtasExp& m)
      : mu(m.mu), alpha(m.alpha), beta(m.beta), gam(m.gamma), delta(m.delta) {}

  double intensity(double t) const {
    return mu + alpha * excite * std::exp(-gam * (t - anchor));
  }
  double log_intensity(double t) const { return std::log(intensity(t)); }
  double integral(double a, double b) const {
    return mu * (b - a) + (alpha / gam) * excite *
                              (std::exp(-gam * (a - anchor)) -
                               std::exp(-gam * (b - anchor)));
  }
  ThinningEnvelope envelope(double t, double) const {
    return {intensity(t), kInf};
  }
  void on_event(double t, double mark) {
    double boost = beta * mark;
    if (boost > kMaxLogIntensity) {
      throw NonFiniteResult("ETAS mark contribution exp(beta k) overflows");
    }
    excite = excite * std::exp(-gam * (t - anchor)) + std::exp(boost);
    anchor = t;
  }
  bool zero_forever(double) const { return false; }
};

struct StopTrack {
  double rate;
  std::int64_t cap;
  std::int64_t count = 0;

  explicit StopTrack(const StopAfterN& m) : rate(m.lambda), cap(m.n_max) {}

  double intensity(double) const { return count < cap ? rate : 0.0; }
  double log_intensity(double) const {
    return count < cap ? std::log(rate) : -kInf;
  }
  double integral(double a, double b) const {
    return count < cap ? rate * (b - a) : 0.0;
  }
  ThinningEnvelope envelope(double t, double) const {
    return {intensity(t), kInf};
  }
  void on_event(double, double) { ++count; }
  bool zero_forever(double) const { return count >= cap; }
};

using TrackVariant =
    std::variant<PoissonTrack, PiecewiseTrack, RenewalTrack, HawkesTrack,
                 SelfCorrectingTrack, EtasTrack, StopTrack>;

inline TrackVariant make_track(const ModelSpec& model) {
  validate_model(model);
  return std::visit(
      [](const auto& m) -> TrackVariant {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, HomPoisson>) {
          return PoissonTrack(m);
        } else if constexpr (std::is_same_v<T, PiecewisePoisson>) {
          return PiecewiseTrack(m);
        } else if constexpr (std::is_same_v<T, RenewalGamma>) {
          return RenewalTrack(m);
        } else if constexpr (std::is_same_v<T, HawkesExp>) {
          return HawkesTrack(m);
        } else if constexpr (std::is_same_v<T, SelfCorrecting>) {
          return SelfCorrectingTrack(m);
        } else if constexpr (std::is_same_v<T, EtasExp>) {
          return EtasTrack(m);
        } else {
          return StopTrack(m);
        }
      },
      model);
}

}  // namespace detail

// Incremental evaluator of lambda*(t) and Lambda*(t) along a growing
// history. Events are fed once, in time order; between feeds, queries at
// any t at or after the last event are O(1) for every family. Queries at
// the last event time itself give the right limit lambda*(t+), i.e. they
// include that event's contribution.
class IntensityTracker {
 public:
  explicit IntensityTracker(const ModelSpec& model)
      : track_(detail::make_track(model)), marked_(is_marked(model)) {}

  bool marked() const { return marked_; }
  double last_time() const { return last_; }
  std::size_t event_count() const { return count_; }

  void add_event(double t, std::optional<double> mark = std::nullopt) {
    if (!(t >= last_)) {
      throw Error("events must be fed in non-decreasing time order");
    }
    double mark_value = 0.0;
    if (marked_) {
      if (!mark.has_value() || !std::isfinite(*mark) || *mark < 0.0) {
        throw MarkMismatch("marked model requires a finite mark >= 0");
      }
      mark_value = *mark;
    }
    cum_ += std::visit(
        [&](const auto& tr) { return tr.integral(last_, t); }, track_);
    std::visit([&](auto& tr) { tr.on_event(t, mark_value); }, track_);
    last_ = t;
    ++count_;
  }

  void add_event(const Event& event) { add_event(event.time, event.mark); }

  // lambda*(t+), valid for t >= last event time, assuming no events in
  // (last event, t].
  double intensity(double t) const {
    check_query(t);
    double v =
        std::visit([&](const auto& tr) { return tr.intensity(t); }, track_);
    if (std::isnan(v) || v < 0.0) {
      throw NonFiniteResult("intensity evaluated to an invalid value");
    }
    return v;
  }

  // log lambda*(t+); exact in log space where the family allows it.
  double log_intensity(double t) const {
    check_query(t);
    return std::visit(
        [&](const auto& tr) { return tr.log_intensity(t); }, track_);
  }

  // Lambda*(t) = integral of lambda* over [0, t].
  double compensator(double t) const {
    check_query(t);
    double v = cum_ + std::visit([&](const auto& tr) {
               return tr.integral(last_, t);
             }, track_);
    if (!std::isfinite(v)) {
      throw NonFiniteResult("compensator evaluated to a non-finite value");
    }
    return v;
  }

  ThinningEnvelope envelope(double t,
                            double lookahead = kDefaultLookahead) const {
    check_query(t);
    if (!(lookahead > 0.0)) throw Error("lookahead must be > 0");
    return std::visit(
        [&](const auto& tr) { return tr.envelope(t, lookahead); }, track_);
  }

  // True when lambda* is provably zero on [t, infinity) given the events
  // fed so far (exhausted cap, trailing zero rate segment).
  bool zero_forever(double t) const {
    check_query(t);
    return std::visit(
        [&](const auto& tr) { return tr.zero_forever(t); }, track_);
  }

 private:
  void check_query(double t) const {
    if (!(t >= last_)) {
      throw Error("query time must not precede the last event fed");
    }
  }

  detail::TrackVariant track_;
  bool marked_;
  double last_ = 0.0;
  double cum_ = 0.0;
  std::size_t count_ = 0;
};

namespace detail {

inline IntensityTracker replay(const ModelSpec& model, HistoryView history,
                               double t, bool strict_before) {
  IntensityTracker tracker(model);
  for (const Event& e : history) {
    if (strict_before ? !(e.time < t) : !(e.time <= t)) {
      throw Error("history events must precede the query time");
    }
    tracker.add_event(e);
  }
  return tracker;
}

}  // namespace detail

// lambda*(t) given the history of events strictly before t.
inline double evaluate_intensity(const ModelSpec& model, TimeStamp t,
                                 HistoryView history) {
  if (!(t >= 0.0)) throw Error("query time must be >= 0");
  auto tracker = detail::replay(model, history, t, /*strict_before=*/true);
  double v = tracker.intensity(t);
  if (!std::isfinite(v)) {
    throw NonFiniteResult("intensity is not finite at the query time");
  }
  return v;
}

// Lambda*(t) = integral of lambda* over [0, t], with `history` the full
// set of events in [0, t). Closed form per family.
inline double evaluate_compensator(const ModelSpec& model, TimeStamp t,
                                   HistoryView history) {
  if (!(t >= 0.0)) throw Error("query time must be >= 0");
  auto tracker = detail::replay(model, history, t, /*strict_before=*/true);
  return tracker.compensator(t);
}

// Envelope (m, l) valid on [t, t + l] under the no-new-event assumption;
// `history` holds the events up to and including t.
inline ThinningEnvelope thinning_envelope(const ModelSpec& model, TimeStamp t,
                                          HistoryView history,
                                          double lookahead = kDefaultLookahead) {
  if (!(t >= 0.0)) throw Error("query time must be >= 0");
  auto tracker = detail::replay(model, history, t, /*strict_before=*/false);
  return tracker.envelope(t, lookahead);
}

// log f*(kappa | t) for marked models. ETAS marks are unpredictable:
// log delta - delta kappa, independent of the history.
inline double mark_log_density(const ModelSpec& model, double kappa,
                               TimeStamp /*t*/, HistoryView /*history*/) {
  const auto* etas = std::get_if<EtasExp>(&model);
  if (etas == nullptr) {
    throw UnmarkedModel("mark density requested for an unmarked model");
  }
  if (!(kappa >= 0.0)) throw Error("mark must be >= 0");
  return std::log(etas->delta) - etas->delta * kappa;
}

// Draws kappa from f*(kappa | t) by inverse CDF: kappa = -ln(U)/delta.
inline double sample_mark(const ModelSpec& model, TimeStamp /*t*/,
                          HistoryView /*history*/, RngStream& rng) {
  const auto* etas = std::get_if<EtasExp>(&model);
  if (etas == nullptr) {
    throw UnmarkedModel("mark draw requested for an unmarked model");
  }
  return rng.exponential(etas->delta);
}

}  // namespace tpp

#endif  // TPP_INTENSITY_HPP_
