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

#ifndef TPP_NELDER_MEAD_HPP_
#define TPP_NELDER_MEAD_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

namespace tpp {

struct NelderMeadOptions {
  int max_iterations = 2000;
  double x_tolerance = 1e-8;   // max coordinate spread of the simplex
  double f_tolerance = 1e-10;  // objective spread across vertices
  double initial_step = 0.1;   // per-coordinate offset of the start simplex
};

struct NelderMeadResult {
  std::vector<double> x;
  double fx = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
};

// Downhill simplex minimizer (reflection 1, expansion 2, contraction 1/2,
// shrink 1/2). Deterministic: ties in the vertex ordering resolve by
// insertion index. The objective may return +infinity for infeasible
// points; non-finite anywhere else is treated the same way.
inline NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& objective,
    std::vector<double> x0, const NelderMeadOptions& options = {}) {
  const std::size_t dim = x0.size();
  auto eval = [&](const std::vector<double>& x) {
    double v = objective(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  std::vector<std::vector<double>> verts(dim + 1, x0);
  std::vector<double> fvals(dim + 1);
  for (std::size_t i = 0; i < dim; ++i) {
    verts[i + 1][i] += options.initial_step;
  }
  for (std::size_t i = 0; i <= dim; ++i) fvals[i] = eval(verts[i]);

  std::vector<std::size_t> order(dim + 1);
  auto sort_order = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a,
                                                     std::size_t b) {
      return fvals[a] < fvals[b];
    });
  };

  NelderMeadResult result;
  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    sort_order();
    const std::size_t best = order.front();
    const std::size_t worst = order.back();

    double spread = 0.0;
    for (std::size_t i = 0; i <= dim; ++i) {
      for (std::size_t d = 0; d < dim; ++d) {
        spread = std::max(spread,
                          std::fabs(verts[i][d] - verts[best][d]));
      }
    }
    bool f_ok = !(fvals[worst] - fvals[best] > options.f_tolerance);
    if (spread < options.x_tolerance && f_ok &&
        std::isfinite(fvals[best])) {
      result.converged = true;
      break;
    }

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t d = 0; d < dim; ++d) centroid[d] += verts[i][d];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    auto blend = [&](double coef) {
      std::vector<double> x(dim);
      for (std::size_t d = 0; d < dim; ++d) {
        x[d] = centroid[d] + coef * (centroid[d] - verts[worst][d]);
      }
      return x;
    };

    std::vector<double> reflected = blend(1.0);
    double f_reflected = eval(reflected);
    const std::size_t second_worst = order[dim - 1];

    if (f_reflected < fvals[order[0]]) {
      std::vector<double> expanded = blend(2.0);
      double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        verts[worst] = std::move(expanded);
        fvals[worst] = f_expanded;
      } else {
        verts[worst] = std::move(reflected);
        fvals[worst] = f_reflected;
      }
    } else if (f_reflected < fvals[second_worst]) {
      verts[worst] = std::move(reflected);
      fvals[worst] = f_reflected;
    } else {
      bool outside = f_reflected < fvals[worst];
      std::vector<double> contracted = blend(outside ? 0.5 : -0.5);
      double f_contracted = eval(contracted);
      if (f_contracted < std::min(f_reflected, fvals[worst])) {
        verts[worst] = std::move(contracted);
        fvals[worst] = f_contracted;
      } else {
        for (std::size_t i = 0; i <= dim; ++i) {
          if (i == best) continue;
          for (std::size_t d = 0; d < dim; ++d) {
            verts[i][d] = 0.5 * (verts[i][d] + verts[best][d]);
          }
          fvals[i] = eval(verts[i]);
        }
      }
    }
  }

  sort_order();
  result.x = verts[order.front()];
  result.fx = fvals[order.front()];
  result.iterations = iter;
  return result;
}

}  // namespace tpp

#endif  // TPP_NELDER_MEAD_HPP_
