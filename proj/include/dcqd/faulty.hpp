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

#ifndef DCQD_FAULTY_HPP
#define DCQD_FAULTY_HPP

#include <array>

#include "dcqd/channel.hpp"
#include "dcqd/protocol.hpp"

namespace dcqd {

// Faulty preparation and measurement: a known two-qubit map chi_i acts after
// the ideal preparation, the unknown E acts on qubit A, and a known map chi_f
// acts before an ideal Bell measurement:
//
//   E_T = E_f o (E x I) o E_i
//
// Every coefficient table here is obtained by pushing matrix-unit probes of
// chi through E_T, so no Pauli sign bookkeeping is involved.

struct FaultySetting {
  ChiMatrix2Q chi_i = ChiMatrix2Q::identity();  // preparation side
  ChiMatrix2Q chi_f = ChiMatrix2Q::identity();  // measurement side
  InputParams params;
  ProtocolOptions options;

  /// Throws NotCP if either noise map is unphysical.
  void check() const {
    require_cp(chi_i, "FaultySetting::chi_i");
    require_cp(chi_f, "FaultySetting::chi_f");
  }
};

inline FaultySetting noiseless_setting(const InputParams& p) {
  FaultySetting s;
  s.params = p;
  return s;
}

/// E_T(rho_i) for the i-th input; linear in chi, so chi may be a probe.
inline ComplexMatrix total_map_output(const ChiMatrix1Q& chi, const FaultySetting& s, const ComplexMatrix& rho) {
  return apply_2q(s.chi_f, apply_1q_on_a(chi, apply_2q(s.chi_i, rho)));
}

inline ProbabilityVector total_map_probabilities(const ChiMatrix1Q& chi, const FaultySetting& s) {
  check_input_params(s.params);
  const auto inputs = input_states(s.params, s.options);
  const auto& bell = bell_diagonal_projectors();
  ProbabilityVector pv;
  for (std::size_t i = 0; i < 4; ++i) {
    const ComplexMatrix out = total_map_output(chi, s, inputs[i]);
    for (std::size_t j = 0; j < 4; ++j) pv(i, j) = trace_of_product(bell[j], out).real();
  }
  return pv;
}

/// The operator rho~_mn with E_T(rho_i) = sum_mn chi_mn sigma_m^A rho~_mn sigma_n^A.
inline ComplexMatrix rho_tilde(PauliIndex m, PauliIndex n, const FaultySetting& s, int i) {
  const auto mm = static_cast<std::size_t>(m.value());
  const auto nn = static_cast<std::size_t>(n.value());
  const ComplexMatrix rho = input_states(s.params, s.options)[static_cast<std::size_t>(i)];
  const ComplexMatrix image = total_map_output(ChiMatrix1Q::probe(mm, nn), s, rho);
  // Paulis square to one, so stripping sigma_m (.) sigma_n is another conjugation.
  return pauli_on_a(mm) * image * pauli_on_a(nn);
}

/// Bell-basis expansion coefficients of rho~_mn: rho~_mn = sum_{kk'} lambda^{kk'} |B^k><B^k'|,
/// i.e. lambda^{kk'} = <B^k| rho~_mn |B^k'> = Tr[P^{k'k} rho~_mn]. Indexed [k][k'].
inline std::array<std::array<Complex, 4>, 4> lambda_coefficients(PauliIndex m, PauliIndex n, const FaultySetting& s,
                                                                 int i) {
  const ComplexMatrix rt = rho_tilde(m, n, s, i);
  std::array<std::array<Complex, 4>, 4> table{};
  for (int k = 0; k < 4; ++k)
    for (int k2 = 0; k2 < 4; ++k2)
      table[static_cast<std::size_t>(k)][static_cast<std::size_t>(k2)] =
          trace_of_product(bell_projector(BellIndex{k2}, BellIndex{k}), rt);
  return table;
}

/// Noise-aware Lambda: C total_map_probabilities(chi, s) = Lambda vec(chi) for every chi.
/// The measurement noise is moved onto the Bell effects, so each probe costs
/// one Pauli conjugation per input.
inline LambdaSystem build_faulty_lambda(const FaultySetting& s) {
  const auto inputs = input_states(s.params, s.options);
  std::array<ComplexMatrix, 4> prepared;
  for (std::size_t i = 0; i < 4; ++i) prepared[i] = apply_2q(s.chi_i, inputs[i]);
  std::array<ComplexMatrix, 4> effects;
  for (std::size_t j = 0; j < 4; ++j) effects[j] = apply_adjoint(s.chi_f, bell_diagonal_projectors()[j]);

  ComplexMatrix lambda(16, 16);
  for (std::size_t m = 0; m < 4; ++m)
    for (std::size_t n = 0; n < 4; ++n) {
      ComplexVector raw(16);
      for (std::size_t i = 0; i < 4; ++i) {
        const ComplexMatrix out = pauli_on_a(m) * prepared[i] * pauli_on_a(n);
        for (std::size_t j = 0; j < 4; ++j) raw[4 * i + j] = trace_of_product(effects[j], out);
      }
      const ComplexVector col = s.options.coefficients * std::span<const Complex>(raw);
      for (std::size_t r = 0; r < 16; ++r) lambda(r, 4 * m + n) = col[r];
    }
  return LambdaSystem::from_matrix(std::move(lambda));
}

/// The same Lambda assembled from the Bell-basis coefficient tables:
///   Lambda^(j)_{kk',mn} = lambda_mn^{kk'} Tr[P^jj sigma_m P^{kk'} sigma_n],
/// summed over (k, k') and arranged with C.
inline LambdaSystem build_faulty_lambda_from_coefficients(const FaultySetting& s) {
  std::array<std::array<ComplexMatrix, 4>, 4> bell_ops;
  for (int k = 0; k < 4; ++k)
    for (int k2 = 0; k2 < 4; ++k2)
      bell_ops[static_cast<std::size_t>(k)][static_cast<std::size_t>(k2)] = bell_projector(BellIndex{k}, BellIndex{k2});
  const auto& diag = bell_diagonal_projectors();

  ComplexMatrix lambda(16, 16);
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      const auto mm = static_cast<std::size_t>(m);
      const auto nn = static_cast<std::size_t>(n);
      ComplexVector raw(16);
      for (int i = 0; i < 4; ++i) {
        const auto lam = lambda_coefficients(PauliIndex{m}, PauliIndex{n}, s, i);
        for (std::size_t j = 0; j < 4; ++j) {
          Complex v{0.0, 0.0};
          for (std::size_t k = 0; k < 4; ++k)
            for (std::size_t k2 = 0; k2 < 4; ++k2) {
              if (lam[k][k2] == Complex{0.0, 0.0}) continue;
              v += lam[k][k2] * trace_of_product(diag[j], pauli_on_a(mm) * bell_ops[k][k2] * pauli_on_a(nn));
            }
          raw[4 * static_cast<std::size_t>(i) + j] = v;
        }
      }
      const ComplexVector col = s.options.coefficients * std::span<const Complex>(raw);
      for (std::size_t r = 0; r < 16; ++r) lambda(r, 4 * mm + nn) = col[r];
    }
  return LambdaSystem::from_matrix(std::move(lambda));
}

/// chi = Lambda_faulty^{-1} C p. Singularity is judged from the conditioning
/// of Lambda rather than an absolute determinant, since |det| shrinks like a
/// high power of the noise contrast even for perfectly usable systems.
inline Reconstruction reconstruct_faulty(const ProbabilityVector& pv, const FaultySetting& s,
                                         const ReconstructOptions& ropts = {}) {
  const LambdaSystem sys = build_faulty_lambda(s);
  return solve_system(sys, arrange(pv, s.options.coefficients), ropts);
}

}  // namespace dcqd

#endif  // DCQD_FAULTY_HPP
