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

#ifndef DCQD_QOBJ_HPP
#define DCQD_QOBJ_HPP

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "dcqd/linalg.hpp"

namespace dcqd {

//============================================================================
// Indices
//============================================================================

/// Index into the single-qubit Pauli basis {I, X, Y, Z}.
class PauliIndex {
 public:
  constexpr explicit PauliIndex(int v) : v_(v) {
    if (v < 0 || v > 3) throw std::out_of_range("PauliIndex must be in 0..3");
  }
  constexpr int value() const noexcept { return v_; }
  friend constexpr bool operator==(PauliIndex, PauliIndex) = default;

 private:
  int v_;
};

/// Index into the Bell basis, ordered Phi+, Psi+, Psi-, Phi-.
class BellIndex {
 public:
  constexpr explicit BellIndex(int v) : v_(v) {
    if (v < 0 || v > 3) throw std::out_of_range("BellIndex must be in 0..3");
  }
  constexpr int value() const noexcept { return v_; }
  friend constexpr bool operator==(BellIndex, BellIndex) = default;

 private:
  int v_;
};

//============================================================================
// Paulis and Bell states
//============================================================================

// Y carries -i in the upper-right corner, so X Y = i Z.
inline const std::array<ComplexMatrix, 4>& pauli_basis() {
  static const std::array<ComplexMatrix, 4> basis{
      ComplexMatrix{{1.0, 0.0}, {0.0, 1.0}},
      ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}},
      ComplexMatrix{{0.0, -kI}, {kI, 0.0}},
      ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}},
  };
  return basis;
}

inline const ComplexMatrix& pauli(PauliIndex i) { return pauli_basis()[static_cast<std::size_t>(i.value())]; }

/// The 16 two-qubit Pauli products, flat index 4p + q for sigma_p (qubit A) x sigma_q (qubit B).
inline const std::array<ComplexMatrix, 16>& pauli_basis_2q() {
  static const std::array<ComplexMatrix, 16> basis = [] {
    std::array<ComplexMatrix, 16> b;
    for (std::size_t p = 0; p < 4; ++p)
      for (std::size_t q = 0; q < 4; ++q) b[4 * p + q] = kron(pauli_basis()[p], pauli_basis()[q]);
    return b;
  }();
  return basis;
}

/// sigma_m acting on qubit A of a two-qubit register (sigma_m x I).
inline const ComplexMatrix& pauli_on_a(std::size_t m) { return pauli_basis_2q()[4 * m]; }

/// Sign s with sigma_a sigma_b = s sigma_b sigma_a, read off the matrices.
inline int commutation_sign(PauliIndex a, PauliIndex b) {
  const ComplexMatrix ab = pauli(a) * pauli(b);
  const ComplexMatrix ba = pauli(b) * pauli(a);
  return max_abs_diff(ab, ba) < 1e-12 ? 1 : -1;
}

inline const std::array<ComplexVector, 4>& bell_states() {
  static const std::array<ComplexVector, 4> states = [] {
    const double s = std::numbers::sqrt2 / 2.0;
    return std::array<ComplexVector, 4>{
        ComplexVector{s, 0.0, 0.0, s},    // Phi+
        ComplexVector{0.0, s, s, 0.0},    // Psi+
        ComplexVector{0.0, s, -s, 0.0},   // Psi-
        ComplexVector{s, 0.0, 0.0, -s},   // Phi-
    };
  }();
  return states;
}

inline const ComplexVector& bell_state(BellIndex k) { return bell_states()[static_cast<std::size_t>(k.value())]; }

/// |B^k><B^k2|.
inline ComplexMatrix bell_projector(BellIndex k, BellIndex k2) {
  return ComplexMatrix::outer(bell_state(k), bell_state(k2));
}

inline const std::array<ComplexMatrix, 4>& bell_diagonal_projectors() {
  static const std::array<ComplexMatrix, 4> projectors = [] {
    std::array<ComplexMatrix, 4> p;
    for (int k = 0; k < 4; ++k) p[static_cast<std::size_t>(k)] = bell_projector(BellIndex{k}, BellIndex{k});
    return p;
  }();
  return projectors;
}

//============================================================================
// Density matrices
//============================================================================

inline constexpr double kStateHermitianTolerance = 1e-10;
inline constexpr double kStateTraceTolerance = 1e-10;
inline constexpr double kStatePsdTolerance = 1e-9;

/// Two-qubit density matrix, qubit A as the left tensor factor.
/// Construction checks Hermiticity, unit trace and positivity.
class DensityMatrix2Q {
 public:
  explicit DensityMatrix2Q(ComplexMatrix m) : mat_(std::move(m)) {
    if (mat_.rows() != 4 || mat_.cols() != 4) throw InvalidState("DensityMatrix2Q: expected a 4x4 matrix");
    if (!mat_.all_finite()) throw InvalidState("DensityMatrix2Q: non-finite entry");
    const double herm = hermiticity_residual(mat_);
    if (herm > kStateHermitianTolerance)
      throw InvalidState("DensityMatrix2Q: not Hermitian (residual " + std::to_string(herm) + ")");
    const Complex tr = mat_.trace();
    if (std::abs(tr - 1.0) > kStateTraceTolerance)
      throw InvalidState("DensityMatrix2Q: trace " + std::to_string(tr.real()) + " != 1");
    const double min_eig = min_eigenvalue_hermitian(mat_);
    if (min_eig < -kStatePsdTolerance)
      throw InvalidState("DensityMatrix2Q: negative eigenvalue " + std::to_string(min_eig));
  }

  static DensityMatrix2Q pure(std::span<const Complex> ket) {
    return DensityMatrix2Q(ComplexMatrix::outer(ket, ket));
  }

  const ComplexMatrix& mat() const noexcept { return mat_; }

  double purity() const { return trace_of_product(mat_, mat_).real(); }

 private:
  ComplexMatrix mat_;
};

//============================================================================
// DCQD input family
//============================================================================

inline constexpr double kDegeneracyTolerance = 1e-6;

/// Angles of the partially entangled inputs: alpha = cos(theta), beta = e^{i phi} sin(theta).
struct InputParams {
  double theta = std::numbers::pi / 8.0;
  double phi = std::numbers::pi / 2.0;

  Complex alpha() const { return {std::cos(theta), 0.0}; }
  Complex beta() const { return std::polar(1.0, phi) * std::sin(theta); }
};

/// Throws DegenerateInput unless |alpha| != |beta|, both nonzero,
/// Im(conj(alpha) beta) != 0 and phi is not a multiple of pi.
inline void check_input_params(const InputParams& p) {
  const Complex a = p.alpha();
  const Complex b = p.beta();
  const auto fail = [&](const std::string& why) {
    throw DegenerateInput("degenerate input angles (theta=" + std::to_string(p.theta) +
                          ", phi=" + std::to_string(p.phi) + "): " + why);
  };
  if (std::abs(a) < kDegeneracyTolerance || std::abs(b) < kDegeneracyTolerance) fail("|alpha| or |beta| vanishes");
  if (std::abs(std::abs(a) - std::abs(b)) < kDegeneracyTolerance) fail("|alpha| == |beta|");
  if (std::abs(std::sin(p.phi)) < kDegeneracyTolerance) fail("phi is a multiple of pi");
  if (std::abs((std::conj(a) * b).imag()) < kDegeneracyTolerance) fail("Im(conj(alpha) beta) == 0");
}

/// State vector of DCQD input i without any validity check. Total in (theta, phi),
/// which the determinant surface relies on.
///   i = 0: |Phi+>
///   i = 1: alpha|00> + beta|11>
///   i = 2: alpha|++> + beta|-->     (sigma_x eigenbasis)
///   i = 3: alpha|+i+i> + beta|-i-i> (sigma_y eigenbasis, |+-i> = (|0> +- i|1>)/sqrt2)
inline ComplexVector input_ket(int i, const InputParams& p) {
  if (i < 0 || i > 3) throw std::out_of_range("DCQD input index must be in 0..3");
  if (i == 0) return bell_states()[0];
  const double s = std::numbers::sqrt2 / 2.0;
  std::array<Complex, 2> plus{};
  std::array<Complex, 2> minus{};
  switch (i) {
    case 1:
      plus = {1.0, 0.0};
      minus = {0.0, 1.0};
      break;
    case 2:
      plus = {s, s};
      minus = {s, -s};
      break;
    default:
      plus = {s, kI * s};
      minus = {s, -kI * s};
      break;
  }
  const Complex a = p.alpha();
  const Complex b = p.beta();
  ComplexVector v(4);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y) v[2 * x + y] = a * plus[x] * plus[y] + b * minus[x] * minus[y];
  return v;
}

inline ComplexMatrix input_state(int i, const InputParams& p) {
  const ComplexVector v = input_ket(i, p);
  return ComplexMatrix::outer(v, v);
}

/// The i-th DCQD input as a validated density matrix. Input 0 ignores p.
inline DensityMatrix2Q dcqd_input(int i, const InputParams& p) {
  if (i != 0) check_input_params(p);
  return DensityMatrix2Q(input_state(i, p));
}

//============================================================================
// Entanglement diagnostics
//============================================================================

/// Partial transpose on qubit B.
inline ComplexMatrix partial_transpose_b(const ComplexMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) throw std::invalid_argument("partial_transpose_b: expected 4x4");
  ComplexMatrix out(4, 4);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t a2 = 0; a2 < 2; ++a2)
        for (std::size_t b2 = 0; b2 < 2; ++b2) out(2 * a + b2, 2 * a2 + b) = rho(2 * a + b, 2 * a2 + b2);
  return out;
}

/// Peres-Horodecki test; for two qubits PPT is equivalent to separability.
inline bool is_ppt(const ComplexMatrix& rho, double tol = 1e-12) {
  return min_eigenvalue_hermitian(partial_transpose_b(rho)) >= -tol;
}

/// Wootters concurrence from the decomposition rho = sum_k p_k |v_k><v_k|.
/// The values lambda_i are the singular values of the symmetric matrix
/// tau_kl = sqrt(p_k p_l) <v_k| Y x Y |conj(v_l)> over the support of rho;
/// eigenvalues below 1e-12 are dropped so that a pure state gives |tau_00|
/// without square roots of rounding noise.
inline double concurrence(const DensityMatrix2Q& state) {
  constexpr double kSupportTolerance = 1e-12;
  const ComplexMatrix yy = pauli_basis_2q()[4 * 2 + 2];
  const HermitianEigen e = eig_hermitian(state.mat());

  std::vector<std::size_t> support;
  for (std::size_t k = 0; k < 4; ++k)
    if (e.values[k] > kSupportTolerance) support.push_back(k);
  const std::size_t r = support.size();

  ComplexMatrix tau(r, r);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) {
      Complex amp{0.0, 0.0};
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
          amp += std::conj(e.vectors(i, support[a])) * yy(i, j) * std::conj(e.vectors(j, support[b]));
      tau(a, b) = std::sqrt(e.values[support[a]] * e.values[support[b]]) * amp;
    }

  std::array<double, 4> l{};
  if (r == 1) {
    l[0] = std::abs(tau(0, 0));
  } else {
    const auto sv = singular_values(tau);
    for (std::size_t k = 0; k < r; ++k) l[k] = sv[k];
  }
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

}  // namespace dcqd

#endif  // DCQD_QOBJ_HPP
