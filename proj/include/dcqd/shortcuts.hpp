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

#ifndef DCQD_SHORTCUTS_HPP
#define DCQD_SHORTCUTS_HPP

#include <array>

#include "dcqd/channel.hpp"
#include "dcqd/protocol.hpp"

namespace dcqd {

// Closed-form data corrections for depolarizing-type preparation and
// measurement faults. These work in probability space and feed the ideal
// Lambda; none of them go through the faulty-framework builder.

inline constexpr double kZeroContrast = 1e-9;

//============================================================================
// Correlated depolarizing noise
//============================================================================

/// Contrast-scaled data: p_noisy = c p_ideal + (1 - c)/4, solved for p_ideal.
inline double undo_contrast(double p_noisy, double contrast) {
  if (std::abs(contrast) < kZeroContrast)
    throw ZeroContrast("noise contrast " + std::to_string(contrast) + " is too small to invert");
  return (p_noisy - (1.0 - contrast) / 4.0) / contrast;
}

/// Correlated two-qubit depolarizing on preparation (eps) and measurement (eps2),
/// unital trace-preserving target: p_ideal = (p_noisy - (1 - eps eps2)/4) / (eps eps2).
inline double corrected_probability_correlated(double p_noisy, double eps, double eps2) {
  return undo_contrast(p_noisy, eps * eps2);
}

inline ProbabilityVector corrected_probabilities_correlated(const ProbabilityVector& noisy, double eps, double eps2) {
  ProbabilityVector out;
  for (std::size_t k = 0; k < 16; ++k) out.p[k] = corrected_probability_correlated(noisy.p[k], eps, eps2);
  return out;
}

/// The four-term forward model for correlated depolarizing noise, evaluated
/// term by term; needs neither unitality nor trace preservation of E:
///
///   (1-e)(1-e')/16 Tr[E(1) x 1] + e'(1-e)/4 Tr[(E(1) x 1) P^jj]
///     + e(1-e')/4 Tr[E(rho_i)] + e e' Tr[E(rho_i) P^jj]
///
/// An optional input unitary swaps rho_i for U rho_i U^dagger in the last two terms.
inline ProbabilityVector forward_correlated_general(const ChiMatrix1Q& chi, double eps, double eps2,
                                                    const InputParams& p, const ProtocolOptions& opts = {}) {
  check_input_params(p);
  const auto inputs = input_states(p, opts);
  const auto& bell = bell_diagonal_projectors();
  const ComplexMatrix image_of_identity = apply_1q_on_a(chi, ComplexMatrix::identity(4));
  const double t1 = image_of_identity.trace().real();

  ProbabilityVector pv;
  for (std::size_t i = 0; i < 4; ++i) {
    const ComplexMatrix out = apply_1q_on_a(chi, inputs[i]);
    const double t3 = out.trace().real();
    for (std::size_t j = 0; j < 4; ++j) {
      const double t2 = trace_of_product(image_of_identity, bell[j]).real();
      const double t4 = trace_of_product(out, bell[j]).real();
      pv(i, j) = (1.0 - eps) * (1.0 - eps2) / 16.0 * t1 + eps2 * (1.0 - eps) / 4.0 * t2 +
                 eps * (1.0 - eps2) / 4.0 * t3 + eps * eps2 * t4;
    }
  }
  return pv;
}

/// Generalized depolarizing preparation (rho -> (1-e)/4 + e U rho U^dagger):
/// the corrected value estimates Tr[E(U rho_i U^dagger) P^jj]; reconstruct it
/// against a Lambda built with ProtocolOptions::input_unitary = U.
inline double corrected_probability_generalized_u(double p_noisy, double eps, double eps2) {
  return undo_contrast(p_noisy, eps * eps2);
}

inline ProbabilityVector corrected_probabilities_generalized_u(const ProbabilityVector& noisy, double eps, double eps2) {
  ProbabilityVector out;
  for (std::size_t k = 0; k < 16; ++k) out.p[k] = corrected_probability_generalized_u(noisy.p[k], eps, eps2);
  return out;
}

//============================================================================
// Uncorrelated depolarizing noise
//============================================================================

/// Image of the Bell projector P^kk under D_eps x D_eps: (1 - eps^2)/4 I + eps^2 P^kk.
inline DensityMatrix2Q uncorrelated_bell_image(BellIndex k, double eps) {
  if (eps < -1.0 / 3.0 - 1e-12 || eps > 1.0 + 1e-12)
    throw OutOfRange("uncorrelated_bell_image: eps must lie in [-1/3, 1]");
  ComplexMatrix m = (eps * eps) * bell_projector(k, k);
  for (std::size_t d = 0; d < 4; ++d) m(d, d) += (1.0 - eps * eps) / 4.0;
  return DensityMatrix2Q(std::move(m));
}

/// Under D_eps x D_eps on preparation and D_eps2 x D_eps2 on measurement the
/// rho_0 data carry contrast (eps eps2)^2.
inline double corrected_probability_uncorrelated(double p_noisy, double eps, double eps2) {
  const double c = eps * eps2;
  return undo_contrast(p_noisy, c * c);
}

/// Diagonal chi_kk read straight off the corrected rho_0 row.
inline std::array<double, 4> diagonal_chi_uncorrelated(const ProbabilityVector& noisy, double eps, double eps2) {
  std::array<double, 4> out{};
  for (std::size_t k = 0; k < 4; ++k) out[k] = corrected_probability_uncorrelated(noisy(0, k), eps, eps2);
  return out;
}

//============================================================================
// Bell-diagonal mixing of settings
//============================================================================

/// Preparation mixing eps_{ii'} and measurement mixing eps'_{jj'}.
struct BellDiagonalNoise {
  std::array<std::array<double, 4>, 4> eps_prep{};
  std::array<std::array<double, 4>, 4> eps_meas{};

  static BellDiagonalNoise identity() {
    BellDiagonalNoise n;
    for (std::size_t k = 0; k < 4; ++k) n.eps_prep[k][k] = n.eps_meas[k][k] = 1.0;
    return n;
  }

  /// Rows must be probability distributions. Throws OutOfRange otherwise.
  void check() const {
    for (const auto* mat : {&eps_prep, &eps_meas})
      for (const auto& row : *mat) {
        double sum = 0.0;
        for (double v : row) {
          if (v < -1e-12) throw OutOfRange("BellDiagonalNoise: negative mixing weight");
          sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-10) throw OutOfRange("BellDiagonalNoise: row does not sum to 1");
      }
  }
};

/// A_{ij,i'j'} = eps_{ii'} eps'_{jj'} = kron(eps_prep, eps_meas).
inline ComplexMatrix bell_diagonal_matrix(const BellDiagonalNoise& n) {
  ComplexMatrix a(16, 16);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t i2 = 0; i2 < 4; ++i2)
        for (std::size_t j2 = 0; j2 < 4; ++j2) a(4 * i + j, 4 * i2 + j2) = n.eps_prep[i][i2] * n.eps_meas[j][j2];
  return a;
}

inline ProbabilityVector bell_diagonal_transform(const ProbabilityVector& pv, const BellDiagonalNoise& n,
                                                 bool validate_rows = true) {
  if (validate_rows) n.check();
  const ComplexVector raw = pv.as_complex();
  const ComplexVector out = bell_diagonal_matrix(n) * std::span<const Complex>(raw);
  ProbabilityVector res;
  for (std::size_t k = 0; k < 16; ++k) res.p[k] = out[k].real();
  return res;
}

/// Largest cond(A) accepted by the inversions below. |det A| = |det eps|^4 |det eps'|^4
/// collapses quickly for perfectly usable mixing, so conditioning is the test.
inline constexpr double kMaxMixingCondition = 1e12;

inline void require_invertible_mixing(const ComplexMatrix& a) {
  const double k = condition_number(a);
  if (!std::isfinite(k) || k > kMaxMixingCondition)
    throw SingularNoise("Bell-diagonal mixing matrix is singular (cond A = " + std::to_string(k) + ")");
}

/// Recovers the ideal data, A^{-1} p_noisy. Throws SingularNoise when A is not invertible.
inline ProbabilityVector bell_diagonal_invert(const ProbabilityVector& noisy, const BellDiagonalNoise& n,
                                              bool validate_rows = true) {
  if (validate_rows) n.check();
  const ComplexMatrix a = bell_diagonal_matrix(n);
  require_invertible_mixing(a);
  const ComplexVector raw = noisy.as_complex();
  const ComplexVector x = lu_solve(a, raw);
  ProbabilityVector res;
  for (std::size_t k = 0; k < 16; ++k) res.p[k] = x[k].real();
  return res;
}

/// The same inversion carried out on arranged data: C A^{-1} C^{-1} |p~).
inline ArrangedVector bell_diagonal_invert_arranged(const ArrangedVector& noisy, const BellDiagonalNoise& n) {
  const ComplexMatrix& c = coefficient_matrix_c();
  const ComplexMatrix a = bell_diagonal_matrix(n);
  require_invertible_mixing(a);
  const ComplexMatrix transport = c * inverse(a) * inverse(c);
  return ArrangedVector{transport * std::span<const Complex>(noisy.q)};
}

}  // namespace dcqd

#endif  // DCQD_SHORTCUTS_HPP
