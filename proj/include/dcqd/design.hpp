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

#ifndef DCQD_DESIGN_HPP
#define DCQD_DESIGN_HPP

#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "dcqd/faulty.hpp"
#include "dcqd/protocol.hpp"

namespace dcqd {

// Experiment design: choose (theta, phi) to keep Lambda as far from singular
// as possible, measured by |det Lambda|.

inline LambdaSystem design_lambda(const InputParams& p, const std::optional<FaultySetting>& noise) {
  if (!noise) return numeric_lambda(p);
  FaultySetting s = *noise;
  s.params = p;
  return build_faulty_lambda(s);
}

struct SurfacePoint {
  double theta;
  double phi;
  double absdet;
  double cond;
};

/// |det Lambda| and cond over the closed grid theta in [0, pi/2], phi in [0, pi].
inline std::vector<SurfacePoint> det_surface(std::size_t grid_theta, std::size_t grid_phi,
                                             const std::optional<FaultySetting>& noise = std::nullopt) {
  if (grid_theta < 2 || grid_phi < 2) throw std::invalid_argument("det_surface: grid sizes must be >= 2");
  std::vector<SurfacePoint> out;
  out.reserve(grid_theta * grid_phi);
  for (std::size_t a = 0; a < grid_theta; ++a)
    for (std::size_t b = 0; b < grid_phi; ++b) {
      const InputParams p{std::numbers::pi / 2.0 * static_cast<double>(a) / static_cast<double>(grid_theta - 1),
                          std::numbers::pi * static_cast<double>(b) / static_cast<double>(grid_phi - 1)};
      const LambdaSystem sys = design_lambda(p, noise);
      out.push_back({p.theta, p.phi, sys.absdet(), sys.cond});
    }
  return out;
}

struct OptimalDesign {
  double theta;
  double phi;
  double absdet;
  double cond;
  std::vector<std::string> symmetries;
};

/// Maximizes |det Lambda| on the fundamental domain theta in (0, pi/4), phi in (0, pi):
/// a 64x64 cell-centred scan, then coordinate search with a halving step down to 1e-8.
inline OptimalDesign optimize(const std::optional<FaultySetting>& noise = std::nullopt, std::size_t grid = 64) {
  constexpr double theta_hi = std::numbers::pi / 4.0;
  constexpr double phi_hi = std::numbers::pi;
  const auto objective = [&](double t, double f) { return design_lambda({t, f}, noise).absdet(); };

  double best_t = 0.0;
  double best_f = 0.0;
  double best = -1.0;
  for (std::size_t a = 0; a < grid; ++a)
    for (std::size_t b = 0; b < grid; ++b) {
      const double t = theta_hi * (static_cast<double>(a) + 0.5) / static_cast<double>(grid);
      const double f = phi_hi * (static_cast<double>(b) + 0.5) / static_cast<double>(grid);
      const double v = objective(t, f);
      if (v > best) {
        best = v;
        best_t = t;
        best_f = f;
      }
    }

  double step_t = theta_hi / static_cast<double>(grid);
  double step_f = phi_hi / static_cast<double>(grid);
  constexpr double kAngleTolerance = 1e-8;
  while (step_t > kAngleTolerance || step_f > kAngleTolerance) {
    bool moved = false;
    for (const double dt : {step_t, -step_t}) {
      const double t = best_t + dt;
      if (t <= 0.0 || t >= theta_hi) continue;
      const double v = objective(t, best_f);
      if (v > best) {
        best = v;
        best_t = t;
        moved = true;
        break;
      }
    }
    for (const double df : {step_f, -step_f}) {
      const double f = best_f + df;
      if (f <= 0.0 || f >= phi_hi) continue;
      const double v = objective(best_t, f);
      if (v > best) {
        best = v;
        best_f = f;
        moved = true;
        break;
      }
    }
    if (!moved) {
      step_t *= 0.5;
      step_f *= 0.5;
    }
  }

  const LambdaSystem sys = design_lambda({best_t, best_f}, noise);
  return OptimalDesign{best_t,
                       best_f,
                       sys.absdet(),
                       sys.cond,
                       {"theta -> theta + k*pi/4", "theta -> pi/4 - theta", "phi -> phi + k*pi", "phi -> pi - phi"}};
}

//============================================================================
// Error amplification under finite statistics
//============================================================================

struct AmplificationPoint {
  InputParams params;
  double mean_max_error = 0.0;   // mean over trials of max_ab |chi_est - chi_true|
  double mean_abs_error = 0.0;   // mean over trials and entries of |chi_est - chi_true|
  double cond = 0.0;
};

struct AmplificationReport {
  std::vector<AmplificationPoint> points;
  std::vector<InputParams> excluded;  // degenerate angles that were skipped
  std::size_t argmin = 0;             // index of the point with the smallest mean_max_error
};

/// Angles sampled when the caller gives none: the optimum and its neighbourhood.
inline std::vector<InputParams> default_study_angles() {
  constexpr double pi = std::numbers::pi;
  return {{pi / 8, pi / 2},      {pi / 16, pi / 2}, {3 * pi / 16, pi / 2}, {pi / 32, pi / 2},
          {pi / 8, pi / 4},      {pi / 8, 3 * pi / 4}, {pi / 16, pi / 4},  {pi / 8, pi}};
}

/// For each angle pair, reconstructs `trials` seeded random CP-TP channels
/// from shot-sampled data and averages the entrywise chi error. Channels and
/// sampling seeds depend only on (seed, trial), so every angle sees the same draws.
inline AmplificationReport error_amplification_study(const std::optional<FaultySetting>& noise, std::uint64_t shots,
                                                     std::size_t trials, std::uint64_t seed,
                                                     std::vector<InputParams> angles = default_study_angles()) {
  if (shots < 100) throw std::invalid_argument("error_amplification_study: shots must be >= 100");
  if (trials < 10) throw std::invalid_argument("error_amplification_study: trials must be >= 10");

  std::vector<ChiMatrix1Q> channels;
  channels.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) channels.push_back(random_channel_1q(seed + 7919 * t, true, false));

  AmplificationReport report;
  for (const InputParams& p : angles) {
    try {
      check_input_params(p);
    } catch (const DegenerateInput&) {
      report.excluded.push_back(p);
      continue;
    }
    FaultySetting s = noise.value_or(FaultySetting{});
    s.params = p;
    const LambdaSystem sys = noise ? build_faulty_lambda(s) : numeric_lambda(p);
    const LuDecomposition lu = lu_factor(sys.lambda);

    AmplificationPoint pt{p, 0.0, 0.0, sys.cond};
    for (std::size_t t = 0; t < trials; ++t) {
      const ProbabilityVector exact = noise ? total_map_probabilities(channels[t], s) : simulate_probabilities(channels[t], p);
      const ProbabilityVector sampled = sample_shots(exact, shots, seed * 1000003 + t);
      const ComplexVector x = lu_solve(lu, arrange(sampled).q);
      const ChiMatrix1Q est = ChiMatrix1Q::from_vec(x);
      const ComplexMatrix diff = est.mat - channels[t].mat;
      pt.mean_max_error += diff.max_abs();
      double sum = 0.0;
      for (const auto& z : diff.entries()) sum += std::abs(z);
      pt.mean_abs_error += sum / 16.0;
    }
    pt.mean_max_error /= static_cast<double>(trials);
    pt.mean_abs_error /= static_cast<double>(trials);
    report.points.push_back(pt);
  }
  for (std::size_t k = 1; k < report.points.size(); ++k)
    if (report.points[k].mean_max_error < report.points[report.argmin].mean_max_error) report.argmin = k;
  return report;
}

}  // namespace dcqd

#endif  // DCQD_DESIGN_HPP
