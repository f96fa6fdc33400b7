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

#ifndef TPP_MODEL_HPP_
#define TPP_MODEL_HPP_

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "tpp/errors.hpp"

namespace tpp {

// The model zoo. Every model is defined through its conditional intensity
// lambda*(t) given the history of earlier events.

// lambda*(t) = lambda.
struct HomPoisson {
  double lambda = 1.0;
};

// Piecewise-constant intensity. `breakpoints` are the interior segment
// boundaries (strictly increasing, all > 0); rates[i] holds on
// [breakpoints[i-1], breakpoints[i]) with an implicit 0 on the left and
// +infinity on the right, so rates.size() == breakpoints.size() + 1.
// Right-continuous at each breakpoint. A trailing zero rate makes the
// process terminating.
struct PiecewisePoisson {
  std::vector<double> breakpoints;
  std::vector<double> rates;
};

// Renewal process with Gamma(shape, rate) interevent times (mean
// shape/rate); the conditional intensity is the gamma hazard of the time
// since the last event, with the window origin acting as a renewal at 0.
// shape < 1 gives clustered patterns, shape > 1 regular ones.
struct RenewalGamma {
  double shape = 1.0;
  double rate = 1.0;
};

// Self-exciting process
//   lambda*(t) = mu + alpha sum_{t_i < t} gamma_rate exp(-gamma_rate (t - t_i)).
// The kernel integrates to one, so each event adds total mass alpha and
// the intensity jumps by alpha * gamma_rate at an event. gamma_rate = 1
// recovers the textbook exponential Hawkes form. Stationary for alpha < 1.
struct HawkesExp {
  double mu = 1.0;
  double alpha = 0.5;
  double gamma_rate = 1.0;
};

// lambda*(t) = exp(mu t - alpha N(t)): the intensity climbs with time and
// each event knocks it down by the factor exp(-alpha).
struct SelfCorrecting {
  double mu = 1.0;
  double alpha = 1.0;
};

// Marked self-exciting process (epidemic-type aftershocks): ground
// intensity
//   lambda*(t) = mu + alpha sum_{t_i < t} exp(beta k_i) exp(-gamma (t - t_i))
// with unpredictable exponential marks f*(k|t) = delta exp(-delta k).
struct EtasExp {
  double mu = 1.0;
  double alpha = 0.5;
  double beta = 1.0;
  double gamma = 1.0;
  double delta = 1.0;
};

// Poisson with rate lambda until n_max events have occurred, 0 after;
// terminating once the cap is hit.
struct StopAfterN {
  double lambda = 1.0;
  std::int64_t n_max = 0;
};

using ModelSpec = std::variant<HomPoisson, PiecewisePoisson, RenewalGamma,
                               HawkesExp, SelfCorrecting, EtasExp, StopAfterN>;

enum class Family {
  hom_poisson,
  piecewise_poisson,
  renewal_gamma,
  hawkes_exp,
  self_correcting,
  etas_exp,
  stop_after_n,
};

inline Family family_of(const ModelSpec& model) {
  return static_cast<Family>(model.index());
}

inline std::string_view family_name(Family family) {
  switch (family) {
    case Family::hom_poisson: return "hom_poisson";
    case Family::piecewise_poisson: return "piecewise_poisson";
    case Family::renewal_gamma: return "renewal_gamma";
    case Family::hawkes_exp: return "hawkes_exp";
    case Family::self_correcting: return "self_correcting";
    case Family::etas_exp: return "etas_exp";
    case Family::stop_after_n: return "stop_after_n";
  }
  throw Error("unreachable family");
}

inline std::optional<Family> family_from_name(std::string_view name) {
  for (int i = 0; i <= static_cast<int>(Family::stop_after_n); ++i) {
    if (family_name(static_cast<Family>(i)) == name) {
      return static_cast<Family>(i);
    }
  }
  return std::nullopt;
}

inline bool is_marked(const ModelSpec& model) {
  return std::holds_alternative<EtasExp>(model);
}

namespace detail {

inline void require_positive(double v, const char* name) {
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw InvalidModel(std::string(name) + " must be finite and > 0");
  }
}

}  // namespace detail

// Parameter-domain checks for every variant; throws InvalidModel.
inline void validate_model(const ModelSpec& model) {
  std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, HomPoisson>) {
          detail::require_positive(m.lambda, "lambda");
        } else if constexpr (std::is_same_v<T, PiecewisePoisson>) {
          if (m.rates.size() != m.breakpoints.size() + 1) {
            throw InvalidModel(
                "piecewise_poisson needs rates.size() == breakpoints.size() + 1");
          }
          double prev = 0.0;
          for (double b : m.breakpoints) {
            if (!std::isfinite(b) || b <= prev) {
              throw InvalidModel(
                  "breakpoints must be finite, positive and strictly increasing");
            }
            prev = b;
          }
          for (double r : m.rates) {
            if (!std::isfinite(r) || r < 0.0) {
              throw InvalidModel("rates must be finite and >= 0");
            }
          }
        } else if constexpr (std::is_same_v<T, RenewalGamma>) {
          detail::require_positive(m.shape, "shape");
          detail::require_positive(m.rate, "rate");
        } else if constexpr (std::is_same_v<T, HawkesExp>) {
          detail::require_positive(m.mu, "mu");
          detail::require_positive(m.alpha, "alpha");
          detail::require_positive(m.gamma_rate, "gamma_rate");
        } else if constexpr (std::is_same_v<T, SelfCorrecting>) {
          detail::require_positive(m.mu, "mu");
          detail::require_positive(m.alpha, "alpha");
        } else if constexpr (std::is_same_v<T, EtasExp>) {
          detail::require_positive(m.mu, "mu");
          detail::require_positive(m.alpha, "alpha");
          detail::require_positive(m.beta, "beta");
          detail::require_positive(m.gamma, "gamma");
          detail::require_positive(m.delta, "delta");
        } else if constexpr (std::is_same_v<T, StopAfterN>) {
          detail::require_positive(m.lambda, "lambda");
          if (m.n_max < 0) throw InvalidModel("n_max must be >= 0");
        }
      },
      model);
}

// Flat parameter vector in canonical order. For piecewise_poisson the
// layout is [breakpoints..., rates...] (odd length 2k+1); for
// stop_after_n it is [lambda, n_max].
inline std::vector<double> param_vector(const ModelSpec& model) {
  return std::visit(
      [](const auto& m) -> std::vector<double> {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, HomPoisson>) {
          return {m.lambda};
        } else if constexpr (std::is_same_v<T, PiecewisePoisson>) {
          std::vector<double> v(m.breakpoints);
          v.insert(v.end(), m.rates.begin(), m.rates.end());
          return v;
        } else if constexpr (std::is_same_v<T, RenewalGamma>) {
          return {m.shape, m.rate};
        } else if constexpr (std::is_same_v<T, HawkesExp>) {
          return {m.mu, m.alpha, m.gamma_rate};
        } else if constexpr (std::is_same_v<T, SelfCorrecting>) {
          return {m.mu, m.alpha};
        } else if constexpr (std::is_same_v<T, EtasExp>) {
          return {m.mu, m.alpha, m.beta, m.gamma, m.delta};
        } else {
          return {m.lambda, static_cast<double>(m.n_max)};
        }
      },
      model);
}

// Inverse of param_vector. Validates the result.
inline ModelSpec model_from_params(Family family,
                                   std::span<const double> params) {
  auto arity_error = [&](std::size_t want) {
    throw InvalidModel(std::string(family_name(family)) + " expects " +
                       std::to_string(want) + " parameters, got " +
                       std::to_string(params.size()));
  };
  ModelSpec model;
  switch (family) {
    case Family::hom_poisson:
      if (params.size() != 1) arity_error(1);
      model = HomPoisson{params[0]};
      break;
    case Family::piecewise_poisson: {
      if (params.size() < 1 || params.size() % 2 == 0) {
        throw InvalidModel(
            "piecewise_poisson expects [k breakpoints..., k+1 rates...]");
      }
      std::size_t k = (params.size() - 1) / 2;
      PiecewisePoisson m;
      m.breakpoints.assign(params.begin(), params.begin() + k);
      m.rates.assign(params.begin() + k, params.end());
      model = std::move(m);
      break;
    }
    case Family::renewal_gamma:
      if (params.size() != 2) arity_error(2);
      model = RenewalGamma{params[0], params[1]};
      break;
    case Family::hawkes_exp:
      if (params.size() != 3) arity_error(3);
      model = HawkesExp{params[0], params[1], params[2]};
      break;
    case Family::self_correcting:
      if (params.size() != 2) arity_error(2);
      model = SelfCorrecting{params[0], params[1]};
      break;
    case Family::etas_exp:
      if (params.size() != 5) arity_error(5);
      model = EtasExp{params[0], params[1], params[2], params[3], params[4]};
      break;
    case Family::stop_after_n:
      if (params.size() != 2) arity_error(2);
      model = StopAfterN{params[0],
                         static_cast<std::int64_t>(std::llround(params[1]))};
      break;
  }
  validate_model(model);
  return model;
}

// Name/value pairs in canonical order, for reports and fitted output.
inline std::vector<std::pair<std::string, double>> named_params(
    const ModelSpec& model) {
  return std::visit(
      [](const auto& m) -> std::vector<std::pair<std::string, double>> {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, HomPoisson>) {
          return {{"lambda", m.lambda}};
        } else if constexpr (std::is_same_v<T, PiecewisePoisson>) {
          std::vector<std::pair<std::string, double>> out;
          for (std::size_t i = 0; i < m.breakpoints.size(); ++i) {
            out.emplace_back("breakpoint_" + std::to_string(i + 1),
                             m.breakpoints[i]);
          }
          for (std::size_t i = 0; i < m.rates.size(); ++i) {
            out.emplace_back("rate_" + std::to_string(i), m.rates[i]);
          }
          return out;
        } else if constexpr (std::is_same_v<T, RenewalGamma>) {
          return {{"shape", m.shape}, {"rate", m.rate}};
        } else if constexpr (std::is_same_v<T, HawkesExp>) {
          return {{"mu", m.mu}, {"alpha", m.alpha},
                  {"gamma_rate", m.gamma_rate}};
        } else if constexpr (std::is_same_v<T, SelfCorrecting>) {
          return {{"mu", m.mu}, {"alpha", m.alpha}};
        } else if constexpr (std::is_same_v<T, EtasExp>) {
          return {{"mu", m.mu},
                  {"alpha", m.alpha},
                  {"beta", m.beta},
                  {"gamma", m.gamma},
                  {"delta", m.delta}};
        } else {
          return {{"lambda", m.lambda},
                  {"n_max", static_cast<double>(m.n_max)}};
        }
      },
      model);
}

}  // namespace tpp

#endif  // TPP_MODEL_HPP_
