// Copyright 2026 The dcqd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "catch_amalgamated.hpp"
#include "dcqd/design.hpp"
#include "test_support.hpp"

using namespace dcqd;
using dcqd::testing::kPi;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

FaultySetting depolarized(double e, double e2) {
  FaultySetting s;
  s.chi_i = depolarizing_2q(e);
  s.chi_f = depolarizing_2q(e2);
  return s;
}

double sin6_formula(double theta, double phi) {
  return std::abs(std::pow(std::sin(4 * theta), 6) * std::pow(std::sin(phi), 6));
}

}  // namespace

TEST_CASE("ideal surface follows sin^6(4 theta) sin^6(phi)", "[design]") {
  for (const std::size_t g : {2u, 5u, 17u}) {
    const auto surface = det_surface(g, g);
    REQUIRE(surface.size() == g * g);
    for (const SurfacePoint& s : surface) CHECK_THAT(s.absdet, WithinAbs(sin6_formula(s.theta, s.phi), 1e-8));
  }
  const auto surface = det_surface(9, 5);
  CHECK(surface.front().theta == 0.0);
  CHECK(surface.front().phi == 0.0);
  CHECK_THAT(surface.back().theta, WithinAbs(kPi / 2, 1e-15));
  CHECK_THAT(surface.back().phi, WithinAbs(kPi, 1e-15));
  for (const SurfacePoint& s : surface) {
    if (std::abs(s.theta - kPi / 4) < 1e-12) CHECK(s.absdet <= 1e-12);
    if (std::abs(s.theta - kPi / 8) < 1e-12 && std::abs(s.phi - kPi / 4) < 1e-12)
      CHECK_THAT(s.absdet, WithinAbs(0.125, 1e-12));
  }
  CHECK_THROWS_AS(det_surface(1, 4), std::invalid_argument);
  CHECK_THROWS_AS(det_surface(4, 0), std::invalid_argument);
}

TEST_CASE("ideal surface symmetries", "[design][property]") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> t(0.0, kPi / 4);
  std::uniform_real_distribution<double> f(0.0, kPi);
  for (int k = 0; k < 30; ++k) {
    const double th = t(rng), ph = f(rng);
    const double v = design_lambda({th, ph}, std::nullopt).absdet();
    CHECK_THAT(design_lambda({kPi / 4 - th, ph}, std::nullopt).absdet(), WithinAbs(v, 1e-9));
    CHECK_THAT(design_lambda({th, kPi - ph}, std::nullopt).absdet(), WithinAbs(v, 1e-9));
  }
}

TEST_CASE("noisy surface is a constant multiple of the ideal one", "[design]") {
  const auto ideal = det_surface(9, 9);
  const auto noisy = det_surface(9, 9, depolarized(0.8, 0.8));
  const double ratio = std::pow(0.8, 27);
  CHECK_THAT(ratio, WithinRel(0.0024178516392292583, 1e-14));
  for (std::size_t k = 0; k < ideal.size(); ++k) {
    if (ideal[k].absdet < 1e-3) continue;
    CHECK_THAT(noisy[k].absdet / ideal[k].absdet, WithinRel(ratio, 1e-9));
  }
}

TEST_CASE("optimize finds the ideal maximizer", "[design]") {
  const OptimalDesign d = optimize();
  CHECK_THAT(d.theta, WithinAbs(kPi / 8, 1e-6));
  CHECK_THAT(d.phi, WithinAbs(kPi / 2, 1e-6));
  CHECK_THAT(d.absdet, WithinAbs(1.0, 1e-8));
  CHECK_THAT(d.cond, WithinAbs(7.872983346207, 1e-9));
  CHECK(d.symmetries.size() == 4);
  CHECK_THAT(concurrence(dcqd_input(1, {d.theta, d.phi})), WithinAbs(1.0 / std::sqrt(2.0), 1e-9));

  // The maximizer family theta = pi/8 + k pi/4, phi = pi/2 + k' pi.
  for (const double th : {kPi / 8, 3 * kPi / 8, 5 * kPi / 8, -kPi / 8})
    for (const double ph : {kPi / 2, 3 * kPi / 2})
      CHECK_THAT(design_lambda({th, ph}, std::nullopt).absdet(), WithinAbs(1.0, 1e-10));
}

TEST_CASE("optimize is stable under grid refinement", "[design]") {
  const OptimalDesign coarse = optimize(std::nullopt, 64);
  const OptimalDesign fine = optimize(std::nullopt, 96);
  CHECK_THAT(fine.theta, WithinAbs(coarse.theta, 1e-5));
  CHECK_THAT(fine.phi, WithinAbs(coarse.phi, 1e-5));
}

TEST_CASE("depolarizing noise leaves the maximizer in place", "[design]") {
  const OptimalDesign d = optimize(depolarized(0.9, 0.9), 16);
  CHECK_THAT(d.theta, WithinAbs(kPi / 8, 1e-5));
  CHECK_THAT(d.phi, WithinAbs(kPi / 2, 1e-5));
  CHECK_THAT(d.absdet, WithinRel(0.058149737003040443, 1e-9));
  CHECK_THAT(d.absdet, WithinRel(std::pow(0.9, 27), 1e-9));
  CHECK_THAT(d.cond, WithinRel(8.560968565, 1e-8));
}

TEST_CASE("error amplification study", "[design]") {
  const double pi = kPi;
  const std::vector<InputParams> angles = {{pi / 8, pi / 2}, {pi / 16, pi / 2}, {pi / 8, pi}, {pi / 32, pi / 2}};
  const AmplificationReport r = error_amplification_study(std::nullopt, 10000, 50, 9, angles);
  REQUIRE(r.points.size() == 3);
  REQUIRE(r.excluded.size() == 1);
  CHECK(r.excluded[0].phi == pi);
  INFO("pi/8: " << r.points[0].mean_abs_error << ", pi/16: " << r.points[1].mean_abs_error
                << ", pi/32: " << r.points[2].mean_abs_error);
  CHECK(r.points[0].mean_abs_error < r.points[1].mean_abs_error);
  CHECK(r.points[1].mean_abs_error < r.points[2].mean_abs_error);
  CHECK(r.argmin == 0);
  CHECK_THAT(r.points[0].cond, WithinAbs(7.872983346207, 1e-9));

  // Same seed, same draws.
  const AmplificationReport again = error_amplification_study(std::nullopt, 10000, 50, 9, angles);
  CHECK(again.points[0].mean_abs_error == r.points[0].mean_abs_error);
}

TEST_CASE("amplification error scales as shots^-1/2", "[design]") {
  const std::vector<InputParams> at = {{kPi / 8, kPi / 2}};
  const double low = error_amplification_study(std::nullopt, 10000, 20, 4, at).points[0].mean_abs_error;
  const double high = error_amplification_study(std::nullopt, 1000000, 20, 4, at).points[0].mean_abs_error;
  const double ratio = low / high;  // ideally sqrt(100) = 10
  INFO("error ratio " << ratio);
  CHECK(ratio > 5.0);
  CHECK(ratio < 20.0);
}

TEST_CASE("amplification study under noise and argument checks", "[design]") {
  const AmplificationReport r = error_amplification_study(depolarized(0.9, 0.9), 10000, 20, 2,
                                                          {{kPi / 8, kPi / 2}, {kPi / 32, kPi / 2}});
  REQUIRE(r.points.size() == 2);
  CHECK(r.points[0].mean_abs_error < r.points[1].mean_abs_error);
  CHECK_THROWS_AS(error_amplification_study(std::nullopt, 99, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(error_amplification_study(std::nullopt, 100, 9, 1), std::invalid_argument);
}
