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

#ifndef TPP_FIT_HPP_
#define TPP_FIT_HPP_

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "tpp/likelihood.hpp"
#include "tpp/model.hpp"
#include "tpp/nelder_mead.hpp"
#include "tpp/pattern.hpp"

namespace tpp {

struct FitConfig {
  std::vector<double> initial_params;  // canonical order, see param_vector
  int max_iterations = 2000;
  double param_tolerance = 1e-8;      // on the log-parameter scale
  double objective_tolerance = 1e-10;
};

enum class TerminationReason { tolerance_met, max_iterations, numerical_failure };

inline std::string_view termination_reason_name(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::tolerance_met: return "tolerance_met";
    case TerminationReason::max_iterations: return "max_iterations";
    case TerminationReason::numerical_failure: return "numerical_failure";
  }
  throw Error("unreachable termination reason");
}

struct FitResult {
  ModelSpec model;
  double log_likelihood = -std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
  TerminationReason termination_reason = TerminationReason::numerical_failure;
};

namespace detail {

// Indices of the parameter vector that the optimizer moves. Structural
// entries stay fixed: piecewise breakpoints and the stop_after_n cap.
inline std::vector<std::size_t> free_param_indices(Family family,
                                                   std::size_t n_params) {
  std::vector<std::size_t> free;
  switch (family) {
    case Family::piecewise_poisson: {
      std::size_t k = (n_params - 1) / 2;
      for (std::size_t i = k; i < n_params; ++i) free.push_back(i);
      break;
    }
    case Family::stop_after_n:
      free.push_back(0);
      break;
    default:
      for (std::size_t i = 0; i < n_params; ++i) free.push_back(i);
  }
  return free;
}

}  // namespace detail

// Maximum-likelihood fit of one model family by Nelder-Mead over
// log-transformed free parameters (positivity holds by construction).
// The initial parameters come from config.initial_params and must satisfy
// the family's constraints with every free parameter strictly positive.
// Runs one automatic restart from the best point before giving up.
inline FitResult fit_mle(Family family, const PointPattern& pattern,
                         const FitConfig& config) {
  ModelSpec initial_model;
  try {
    initial_model = model_from_params(family, config.initial_params);
  } catch (const InvalidModel& e) {
    throw NonFiniteObjectiveAtStart(std::string("invalid starting point: ") +
                                    e.what());
  }
  detail::check_mark_agreement(initial_model, pattern);

  std::vector<double> params = config.initial_params;
  const auto free = detail::free_param_indices(family, params.size());

  std::vector<double> z0(free.size());
  for (std::size_t j = 0; j < free.size(); ++j) {
    double v = params[free[j]];
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw NonFiniteObjectiveAtStart(
          "initial parameter " + std::to_string(free[j]) +
          " must be > 0 for the log transform");
    }
    z0[j] = std::log(v);
  }

  auto objective = [&](const std::vector<double>& z) -> double {
    std::vector<double> p = params;
    for (std::size_t j = 0; j < free.size(); ++j) p[free[j]] = std::exp(z[j]);
    try {
      ModelSpec m = model_from_params(family, p);
      return -log_likelihood(m, pattern);
    } catch (const Error&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  if (!std::isfinite(objective(z0))) {
    throw NonFiniteObjectiveAtStart(
        "log-likelihood is not finite at the initial parameters");
  }

  NelderMeadOptions options;
  options.max_iterations = config.max_iterations;
  options.x_tolerance = config.param_tolerance;
  options.f_tolerance = config.objective_tolerance;

  NelderMeadResult run = nelder_mead(objective, z0, options);
  int iterations = run.iterations;
  if (!run.converged) {
    // One restart: a fresh simplex around the best point guards against
    // premature collapse. Its start vertex is the previous best, so the
    // objective can only improve.
    run = nelder_mead(objective, run.x, options);
    iterations += run.iterations;
  }

  FitResult result;
  std::vector<double> fitted = params;
  for (std::size_t j = 0; j < free.size(); ++j) {
    fitted[free[j]] = std::exp(run.x[j]);
  }
  result.model = model_from_params(family, fitted);
  result.log_likelihood = log_likelihood(result.model, pattern);
  result.iterations = iterations;
  if (!std::isfinite(result.log_likelihood)) {
    result.converged = false;
    result.termination_reason = TerminationReason::numerical_failure;
  } else if (run.converged) {
    result.converged = true;
    result.termination_reason = TerminationReason::tolerance_met;
  } else {
    result.converged = false;
    result.termination_reason = TerminationReason::max_iterations;
  }
  return result;
}

}  // namespace tpp

#endif  // TPP_FIT_HPP_
