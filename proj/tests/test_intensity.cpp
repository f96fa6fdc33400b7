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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "support.hpp"
#include "tpp/tpp.hpp"

using Catch::Approx;
using tpp::Event;
using tpp::HistoryView;
using tpp_test::make_history;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("intensity of the built-in models at hand-computed points") {
  SECTION("homogeneous Poisson is constant") {
    tpp::ModelSpec m = tpp::HomPoisson{3.5};
    auto h = make_history({1.0, 2.0});
    CHECK(tpp::evaluate_intensity(m, 7.0, h) == 3.5);
    CHECK(tpp::evaluate_intensity(m, 7.0, {}) == 3.5);
  }
  SECTION("Hawkes: mu + alpha exp(-(t - t_i))") {
    tpp::ModelSpec m = tpp::HawkesExp{0.5, 0.9, 1.0};
    auto h = make_history({1.0});
    CHECK(tpp::evaluate_intensity(m, 2.0, h) ==
          Approx(0.8310914970542981).epsilon(1e-14));
  }
  SECTION("self-correcting: exp(mu t - alpha N(t))") {
    tpp::ModelSpec m = tpp::SelfCorrecting{1.0, 0.2};
    auto h = make_history({1.0, 2.0});
    CHECK(tpp::evaluate_intensity(m, 3.0, h) ==
          Approx(13.46373803500169).epsilon(1e-14));
  }
  SECTION("ETAS ground intensity boosts by exp(beta kappa)") {
    tpp::ModelSpec m = tpp::EtasExp{0.5, 0.2, 1.0, 1.0, 1.0};
    std::vector<Event> h = {{1.0, 2.0}};
    CHECK(tpp::evaluate_intensity(m, 2.0, h) ==
          Approx(1.0436563656918090).epsilon(1e-14));
  }
  SECTION("exponential renewal collapses to a Poisson process") {
    tpp::ModelSpec m = tpp::RenewalGamma{1.0, 2.0};
    CHECK(tpp::evaluate_intensity(m, 0.7, {}) == Approx(2.0).epsilon(1e-12));
    auto h = make_history({0.4});
    CHECK(tpp::evaluate_intensity(m, 5.0, h) == Approx(2.0).epsilon(1e-12));
  }
  SECTION("gamma renewal hazard at reference points") {
    tpp::ModelSpec half = tpp::RenewalGamma{0.5, 1.0};
    CHECK(tpp::evaluate_intensity(half, 1.0, {}) ==
          Approx(1.3194837571173956).epsilon(1e-12));
    tpp::ModelSpec two = tpp::RenewalGamma{2.0, 20.0};
    auto h = make_history({1.0});
    CHECK(tpp::evaluate_intensity(two, 1.05, h) ==
          Approx(10.0).epsilon(1e-12));
  }
  SECTION("piecewise rates are right-continuous at breakpoints") {
    tpp::ModelSpec m = tpp::PiecewisePoisson{{1.0, 2.0}, {0.5, 2.0, 0.0}};
    CHECK(tpp::evaluate_intensity(m, 0.0, {}) == 0.5);
    CHECK(tpp::evaluate_intensity(m, 1.0, {}) == 2.0);
    CHECK(tpp::evaluate_intensity(m, 2.0, {}) == 0.0);
    CHECK(tpp::evaluate_intensity(m, 1.999999, {}) == 2.0);
  }
  SECTION("stop-after-n switches off at the cap") {
    tpp::ModelSpec m = tpp::StopAfterN{1.5, 2};
    CHECK(tpp::evaluate_intensity(m, 1.0, make_history({0.5})) == 1.5);
    CHECK(tpp::evaluate_intensity(m, 1.0, make_history({0.2, 0.5})) == 0.0);
  }
}

TEST_CASE("compensators match hand-computed closed forms") {
  SECTION("homogeneous Poisson") {
    CHECK(tpp::evaluate_compensator(tpp::HomPoisson{2.0}, 3.0, {}) ==
          Approx(6.0).epsilon(1e-15));
  }
  SECTION("Hawkes") {
    tpp::ModelSpec m = tpp::HawkesExp{0.5, 0.9, 1.0};
    auto h = make_history({1.0});
    CHECK(tpp::evaluate_compensator(m, 2.0, h) ==
          Approx(1.5689085029457019).epsilon(1e-14));
  }
  SECTION("self-correcting") {
    tpp::ModelSpec m = tpp::SelfCorrecting{1.0, 0.2};
    auto h = make_history({1.0});
    CHECK(tpp::evaluate_compensator(m, 2.0, h) ==
          Approx(5.542388364379524).epsilon(1e-13));
  }
  SECTION("ETAS") {
    tpp::ModelSpec m = tpp::EtasExp{0.5, 0.2, 1.0, 1.0, 1.0};
    std::vector<Event> h = {{1.0, 2.0}};
    CHECK(tpp::evaluate_compensator(m, 2.0, h) ==
          Approx(1.934154854094321).epsilon(1e-14));
  }
  SECTION("gamma renewal uses -log survival") {
    tpp::ModelSpec m = tpp::RenewalGamma{2.0, 20.0};
    auto h = make_history({1.0});
    CHECK(tpp::evaluate_compensator(m, 1.05, h) -
              tpp::evaluate_compensator(m, 1.0, make_history({1.0})) ==
          Approx(0.3068528194400547).epsilon(1e-10));
  }
  SECTION("stop-after-n plateaus once the cap is hit") {
    tpp::ModelSpec m = tpp::StopAfterN{2.0, 1};
    auto h = make_history({0.5});
    CHECK(tpp::evaluate_compensator(m, 3.0, h) == Approx(1.0).epsilon(1e-15));
    CHECK(tpp::evaluate_compensator(m, 9.0, h) == Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("thinning envelopes at hand-computed points") {
  SECTION("Hawkes right after its event") {
    tpp::ModelSpec m = tpp::HawkesExp{0.5, 0.9, 1.0};
    auto h = make_history({1.0});
    auto env = tpp::thinning_envelope(m, 1.0, h);
    CHECK(env.bound_m == Approx(1.4).epsilon(1e-14));
    CHECK(std::isinf(env.horizon_l));
  }
  SECTION("homogeneous Poisson") {
    auto env = tpp::thinning_envelope(tpp::HomPoisson{2.0}, 17.0, {});
    CHECK(env.bound_m == 2.0);
    CHECK(std::isinf(env.horizon_l));
  }
  SECTION("self-correcting bounds at the lookahead end") {
    tpp::ModelSpec m = tpp::SelfCorrecting{1.0, 0.2};
    auto h = make_history({0.7});
    auto env = tpp::thinning_envelope(m, 1.0, h, 0.5);
    CHECK(env.bound_m == Approx(3.6692966676192442).epsilon(1e-14));
    CHECK(env.horizon_l == 0.5);
  }
  SECTION("piecewise steps to the next breakpoint") {
    tpp::ModelSpec m = tpp::PiecewisePoisson{{1.0}, {1.0, 0.0}};
    auto env = tpp::thinning_envelope(m, 0.25, {});
    CHECK(env.bound_m == 1.0);
    CHECK(env.horizon_l == 0.75);
    auto tail = tpp::thinning_envelope(m, 1.5, {});
    CHECK(tail.bound_m == 0.0);
    CHECK(std::isinf(tail.horizon_l));
  }
  SECTION("clustered renewal has no finite bound at an event") {
    tpp::ModelSpec m = tpp::RenewalGamma{0.5, 1.0};
    CHECK_THROWS_AS(tpp::thinning_envelope(m, 0.0, {}),
                    tpp::NonFiniteResult);
    auto env = tpp::thinning_envelope(m, 0.5, {});  // past the event: fine
    CHECK(std::isfinite(env.bound_m));
  }
}

TEST_CASE("mark density and mark sampling") {
  tpp::ModelSpec etas1 = tpp::EtasExp{0.5, 0.2, 1.0, 1.0, 1.0};
  tpp::ModelSpec etas_half = tpp::EtasExp{0.5, 0.2, 1.0, 1.0, 0.5};

  SECTION("log density values") {
    CHECK(tpp::mark_log_density(etas1, 2.0, 3.0, {}) == Approx(-2.0));
    CHECK(tpp::mark_log_density(etas_half, 0.0, 3.0, {}) ==
          Approx(std::log(0.5)).epsilon(1e-15));
    CHECK_THROWS_AS(tpp::mark_log_density(tpp::HomPoisson{1.0}, 1.0, 3.0, {}),
                    tpp::UnmarkedModel);
  }
  SECTION("sampling is the exponential inverse CDF of the stream") {
    tpp::RngStream a(5);
    tpp::RngStream b(5);
    for (int i = 0; i < 50; ++i) {
      double u = a.uniform01();
      double kappa = tpp::sample_mark(etas_half, 1.0, {}, b);
      CHECK(kappa == -std::log(u) / 0.5);
    }
    CHECK_THROWS_AS(
        tpp::sample_mark(tpp::ModelSpec(tpp::HomPoisson{1.0}), 1.0, {}, a),
        tpp::UnmarkedModel);
  }
  SECTION("sample mean matches 1/delta") {
    tpp::RngStream rng(31);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) sum += tpp::sample_mark(etas1, 0.0, {}, rng);
    CHECK(sum / n == Approx(1.0).margin(0.02));
  }
  SECTION("density integrates to one") {
    for (double delta : {0.5, 1.0, 3.0}) {
      tpp::ModelSpec m = tpp::EtasExp{0.5, 0.2, 1.0, 1.0, delta};
      double integral = tpp::adaptive_simpson(
          [&](double kappa) {
            return std::exp(tpp::mark_log_density(m, kappa, 0.0, {}));
          },
          0.0, 50.0 / delta, 1e-10);
      CHECK(integral >= 1.0 - 1e-6);
      CHECK(integral <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("Hawkes intensity jumps by alpha * gamma_rate at events") {
  tpp::RngStream rng(2024);
  for (int rep = 0; rep < 50; ++rep) {
    double mu = tpp_test::uniform_in(rng, 0.2, 2.0);
    double alpha = tpp_test::uniform_in(rng, 0.1, 0.9);
    double gam = tpp_test::uniform_in(rng, 0.3, 3.0);
    tpp::ModelSpec m = tpp::HawkesExp{mu, alpha, gam};
    auto h = make_history({0.4, 1.1});
    double t_event = 1.1;
    double before = tpp::evaluate_intensity(
        m, t_event, HistoryView(h.data(), 1));  // left limit
    double after =
        tpp::thinning_envelope(m, t_event, h).bound_m;  // right limit
    CHECK(after - before == Approx(alpha * gam).epsilon(1e-10));
  }
}

TEST_CASE("intensity is non-negative across randomized cases") {
  tpp::RngStream rng(11);
  for (tpp::Family family : tpp_test::all_families()) {
    for (int rep = 0; rep < 40; ++rep) {
      auto c = tpp_test::random_case(family, rng, /*smooth_renewal=*/false);
      double v = tpp::evaluate_intensity(c.model, c.t, c.history);
      CAPTURE(static_cast<int>(family), rep, c.t);
      CHECK(v >= 0.0);
      CHECK(std::isfinite(v));
    }
  }
}

TEST_CASE("compensator is non-decreasing in time") {
  tpp::RngStream rng(13);
  for (tpp::Family family : tpp_test::all_families()) {
    for (int rep = 0; rep < 25; ++rep) {
      auto c = tpp_test::random_case(family, rng);
      double t2 = c.t + tpp_test::uniform_in(rng, 0.0, 4.0);
      double v1 = tpp::evaluate_compensator(c.model, c.t, c.history);
      double v2 = tpp::evaluate_compensator(c.model, t2, c.history);
      CAPTURE(static_cast<int>(family), rep);
      CHECK(v2 >= v1 - 1e-12 * (1.0 + std::fabs(v1)));
      CHECK(v1 >= -1e-12);
    }
  }
}

TEST_CASE("closed-form compensator agrees with adaptive quadrature") {
  tpp::RngStream rng(17);
  for (tpp::Family family : tpp_test::all_families()) {
    for (int rep = 0; rep < 100; ++rep) {
      auto c = tpp_test::random_case(family, rng);
      double closed = tpp::evaluate_compensator(c.model, c.t, c.history);
      double quad = tpp_test::compensator_by_quadrature(c.model, c.t,
                                                        c.history, 1e-10);
      CAPTURE(static_cast<int>(family), rep, c.t, closed, quad);
      CHECK(std::fabs(closed - quad) <= 1e-6 * (1.0 + closed));
    }
  }
}

TEST_CASE("envelopes dominate the intensity over their horizon") {
  tpp::RngStream rng(19);
  int cases = 0;
  while (cases < 1000) {
    for (tpp::Family family : tpp_test::all_families()) {
      auto c = tpp_test::random_case(family, rng, /*smooth_renewal=*/false);
      double lookahead = tpp_test::uniform_in(rng, 0.25, 2.0);
      auto env = tpp::thinning_envelope(c.model, c.t, c.history, lookahead);
      double span = std::min(env.horizon_l, 10.0);
      tpp::IntensityTracker tracker(c.model);
      for (const Event& e : c.history) tracker.add_event(e);
      for (int g = 0; g < 100; ++g) {
        double s = c.t + span * static_cast<double>(g) / 99.0;
        double lam = tracker.intensity(s);
        CAPTURE(static_cast<int>(family), cases, g, s, lam, env.bound_m);
        REQUIRE(lam <= env.bound_m * (1.0 + 1e-9) + 1e-12);
      }
      ++cases;
    }
  }
}

TEST_CASE("incremental tracker equals pure replay evaluation") {
  tpp::RngStream rng(23);
  for (tpp::Family family : tpp_test::all_families()) {
    auto c = tpp_test::random_case(family, rng);
    tpp::IntensityTracker tracker(c.model);
    for (std::size_t i = 0; i < c.history.size(); ++i) {
      tracker.add_event(c.history[i]);
      double t_query = c.history[i].time + 0.125;
      bool more = i + 1 < c.history.size() &&
                  c.history[i + 1].time <= t_query;
      if (more) continue;
      HistoryView prefix(c.history.data(), i + 1);
      CHECK(tracker.intensity(t_query) ==
            Approx(tpp::evaluate_intensity(c.model, t_query, prefix))
                .epsilon(1e-12));
      CHECK(tracker.compensator(t_query) ==
            Approx(tpp::evaluate_compensator(c.model, t_query, prefix))
                .epsilon(1e-10)
                .margin(1e-12));
    }
  }
}

TEST_CASE("evaluation rejects ill-formed queries and models") {
  CHECK_THROWS_AS(tpp::evaluate_intensity(tpp::HomPoisson{-1.0}, 1.0, {}),
                  tpp::InvalidModel);
  auto h = make_history({2.0});
  CHECK_THROWS_AS(tpp::evaluate_intensity(tpp::HomPoisson{1.0}, 1.0, h),
                  tpp::Error);  // history not before t
  CHECK_THROWS_AS(
      tpp::evaluate_intensity(tpp::SelfCorrecting{1.0, 0.1}, 1e6, {}),
      tpp::NonFiniteResult);  // exp(1e6) overflows
  CHECK_THROWS_AS(
      tpp::validate_model(tpp::PiecewisePoisson{{1.0}, {1.0}}),
      tpp::InvalidModel);
  CHECK_THROWS_AS(tpp::validate_model(tpp::StopAfterN{1.0, -2}),
                  tpp::InvalidModel);
}
