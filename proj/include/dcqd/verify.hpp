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

#ifndef DCQD_VERIFY_HPP
#define DCQD_VERIFY_HPP

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "dcqd/design.hpp"
#include "dcqd/faulty.hpp"
#include "dcqd/oracle.hpp"
#include "dcqd/protocol.hpp"
#include "dcqd/shortcuts.hpp"

namespace dcqd {

// Self-checks of the identities the toolkit relies on, runnable on demand.
// Each check reports the largest deviation it saw against a fixed tolerance.

struct CheckResult {
  std::string name;
  bool passed = false;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyOptions {
  /// Arrangement matrix under test.
  ComplexMatrix coefficients = coefficient_matrix_c();
  std::size_t grid = 16;
  std::size_t channels = 20;
  std::uint64_t seed = 1;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }

  const CheckResult* first_failure() const {
    for (const auto& c : checks)
      if (!c.passed) return &c;
    return nullptr;
  }
};

namespace detail {

inline CheckResult finish(std::string name, double dev, double tol, std::string detail = {}) {
  return CheckResult{std::move(name), std::isfinite(dev) && dev <= tol, dev, tol, std::move(detail)};
}

inline std::vector<InputParams> generic_angles() {
  return {{0.3, 1.1}, {std::numbers::pi / 8, std::numbers::pi / 2}, {0.7, 2.5}, {1.2, 0.4}};
}

/// Deviation of a check body; exceptions count as failures.
inline CheckResult guarded(std::string name, double tol, const std::function<double()>& body) {
  try {
    return finish(std::move(name), body(), tol);
  } catch (const std::exception& e) {
    return CheckResult{std::move(name), false, std::numeric_limits<double>::infinity(), tol, e.what()};
  }
}

}  // namespace detail

/// C R against the sign-corrected closed form, where R is the raw outcome table.
inline CheckResult check_arrangement_consistency(const VerifyOptions& o) {
  return detail::guarded("appendix-A-consistency", 1e-12, [&] {
    double dev = 0.0;
    for (const InputParams& p : detail::generic_angles())
      dev = std::max(dev, max_abs_diff(o.coefficients * raw_outcome_matrix(p), corrected_closed_form_lambda(p)));
    return dev;
  });
}

inline CheckResult check_determinant_formula(const VerifyOptions& o) {
  return detail::guarded("determinant-formula", 1e-8, [&] {
    double dev = 0.0;
    for (const SurfacePoint& s : det_surface(o.grid, o.grid)) {
      const double expected = std::pow(std::sin(4 * s.theta), 6) * std::pow(std::sin(s.phi), 6);
      dev = std::max(dev, std::abs(s.absdet - std::abs(expected)));
    }
    return dev;
  });
}

/// Ideal round trip with the arrangement under test, cross-checked by standard QPT.
inline CheckResult check_ideal_roundtrip(const VerifyOptions& o) {
  return detail::guarded("ideal-roundtrip", 1e-9, [&] {
    ProtocolOptions popts;
    popts.coefficients = o.coefficients;
    double dev = 0.0;
    for (std::size_t k = 0; k < o.channels; ++k) {
      const ChiMatrix1Q chi = random_channel_1q(o.seed + k, true, false);
      const InputParams p{};
      const Reconstruction r = reconstruct_ideal(simulate_probabilities(chi, p), p, {}, popts);
      dev = std::max({dev, max_abs_diff(r.chi.mat, chi.mat), max_abs_diff(oracle::standard_qpt(chi).mat, r.chi.mat)});
    }
    return dev;
  });
}

inline CheckResult check_correlated_shortcut(const VerifyOptions& o) {
  return detail::guarded("correlated-depolarizing-shortcut", 1e-12, [&] {
    double dev = 0.0;
    const InputParams p{};
    for (const double e : {0.3, 0.7, 1.0})
      for (const double e2 : {0.3, 0.7, 1.0}) {
        FaultySetting s;
        s.params = p;
        s.chi_i = depolarizing_2q(e);
        s.chi_f = depolarizing_2q(e2);
        for (std::size_t k = 0; k < o.channels; ++k) {
          const ChiMatrix1Q chi = random_channel_1q(o.seed + k, true, true);
          const ProbabilityVector corrected = corrected_probabilities_correlated(total_map_probabilities(chi, s), e, e2);
          const ProbabilityVector ideal = simulate_probabilities(chi, p);
          for (std::size_t q = 0; q < 16; ++q) dev = std::max(dev, std::abs(corrected.p[q] - ideal.p[q]));
        }
      }
    return dev;
  });
}

inline CheckResult check_generalized_u_shortcut(const VerifyOptions& o) {
  return detail::guarded("generalized-depolarizing-shortcut", 1e-12, [&] {
    double dev = 0.0;
    const InputParams p{};
    for (const ComplexMatrix& u : {ComplexMatrix::identity(4), cnot(), random_unitary(4, o.seed)}) {
      FaultySetting s;
      s.params = p;
      s.chi_i = generalized_depolarizing_2q(0.7, u);
      s.chi_f = depolarizing_2q(0.8);
      ProtocolOptions rotated;
      rotated.input_unitary = u;
      for (std::size_t k = 0; k < o.channels; ++k) {
        const ChiMatrix1Q chi = random_channel_1q(o.seed + k, true, true);
        const ProbabilityVector corrected =
            corrected_probabilities_generalized_u(total_map_probabilities(chi, s), 0.7, 0.8);
        const ProbabilityVector target = simulate_probabilities(chi, p, rotated);
        for (std::size_t q = 0; q < 16; ++q) dev = std::max(dev, std::abs(corrected.p[q] - target.p[q]));
      }
    }
    return dev;
  });
}

inline CheckResult check_uncorrelated_diagonal(const VerifyOptions& o) {
  return detail::guarded("uncorrelated-depolarizing-diagonal", 1e-9, [&] {
    double dev = 0.0;
    const InputParams p{};
    for (const double e : {0.5, 0.8, 1.0})
      for (const double e2 : {0.5, 0.8, 1.0}) {
        FaultySetting s;
        s.params = p;
        s.chi_i = uncorrelated_depolarizing(e, e);
        s.chi_f = uncorrelated_depolarizing(e2, e2);
        for (std::size_t k = 0; k < o.channels; ++k) {
          const ChiMatrix1Q chi = random_unitary_channel_1q(o.seed + k);
          const auto diag = diagonal_chi_uncorrelated(total_map_probabilities(chi, s), e, e2);
          for (std::size_t q = 0; q < 4; ++q) dev = std::max(dev, std::abs(diag[q] - chi.mat(q, q).real()));
        }
      }
    return dev;
  });
}

inline CheckResult check_bell_diagonal(const VerifyOptions& o) {
  return detail::guarded("bell-diagonal-transform", 1e-10, [&] {
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const auto stochastic = [&] {
      std::array<std::array<double, 4>, 4> m{};
      for (std::size_t r = 0; r < 4; ++r) {
        double sum = 0.0;
        for (std::size_t c = 0; c < 4; ++c) sum += (m[r][c] = uni(rng) + (r == c ? 3.0 : 0.0));
        for (auto& v : m[r]) v /= sum;
      }
      return m;
    };
    double dev = 0.0;
    for (std::size_t k = 0; k < o.channels; ++k) {
      BellDiagonalNoise n{stochastic(), stochastic()};
      const ProbabilityVector ideal = simulate_probabilities(random_channel_1q(o.seed + k, true, false), InputParams{});
      const ProbabilityVector back = bell_diagonal_invert(bell_diagonal_transform(ideal, n), n);
      for (std::size_t q = 0; q < 16; ++q) dev = std::max(dev, std::abs(back.p[q] - ideal.p[q]));
    }
    return dev;
  });
}

inline CheckResult check_faulty_reduction(const VerifyOptions& /*o*/) {
  return detail::guarded("faulty-framework-reduction", 1e-10, [&] {
    double dev = 0.0;
    for (const InputParams& p : detail::generic_angles())
      dev = std::max(dev, max_abs_diff(build_faulty_lambda(noiseless_setting(p)).lambda, numeric_lambda(p).lambda));
    return dev;
  });
}

/// Runs every check, arrangement consistency first.
inline VerifyReport run_verify(const VerifyOptions& o = {}) {
  VerifyReport r;
  r.checks.push_back(check_arrangement_consistency(o));
  r.checks.push_back(check_determinant_formula(o));
  r.checks.push_back(check_ideal_roundtrip(o));
  r.checks.push_back(check_correlated_shortcut(o));
  r.checks.push_back(check_generalized_u_shortcut(o));
  r.checks.push_back(check_uncorrelated_diagonal(o));
  r.checks.push_back(check_bell_diagonal(o));
  r.checks.push_back(check_faulty_reduction(o));
  return r;
}

}  // namespace dcqd

#endif  // DCQD_VERIFY_HPP
