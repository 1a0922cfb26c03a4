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

#ifndef DCQD_CHANNEL_HPP
#define DCQD_CHANNEL_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "dcqd/linalg.hpp"
#include "dcqd/qobj.hpp"

namespace dcqd {

//============================================================================
// Process matrices in the Pauli product basis
//============================================================================

// A channel acting on Qubits qubits, written
//
//   E(rho) = sum_{a,b} chi_{ab} P_a rho P_b
//
// with P_a running over Pauli products. For two qubits the flat index is
// a = 4p + q for sigma_p (A) x sigma_q (B). Construction only checks the
// shape: matrix-unit probes that are not physical maps are valid values and
// are what the linear-system builders feed through apply_*; validate() says
// whether a given chi is a physical channel.
template <std::size_t Qubits>
struct ChiMatrix {
  static constexpr std::size_t kDim = std::size_t{1} << Qubits;   // Hilbert space dimension
  static constexpr std::size_t kSize = kDim * kDim;                // number of Pauli products

  ComplexMatrix mat = ComplexMatrix(kSize, kSize);

  ChiMatrix() = default;
  explicit ChiMatrix(ComplexMatrix m) : mat(std::move(m)) {
    if (mat.rows() != kSize || mat.cols() != kSize)
      throw std::invalid_argument("ChiMatrix: expected " + std::to_string(kSize) + "x" + std::to_string(kSize));
  }

  static ChiMatrix identity() { return ChiMatrix(ComplexMatrix::unit(kSize, kSize, 0, 0)); }

  /// The matrix-unit probe with a single 1 at (a, b).
  static ChiMatrix probe(std::size_t a, std::size_t b) { return ChiMatrix(ComplexMatrix::unit(kSize, kSize, a, b)); }

  /// Row-major flattening over (a, b), a outer.
  ComplexVector vec() const { return ComplexVector(mat.entries().begin(), mat.entries().end()); }

  static ChiMatrix from_vec(std::span<const Complex> v) {
    if (v.size() != kSize * kSize) throw std::invalid_argument("ChiMatrix::from_vec: wrong length");
    return ChiMatrix(ComplexMatrix(kSize, kSize, ComplexVector(v.begin(), v.end())));
  }

  friend ChiMatrix operator+(const ChiMatrix& x, const ChiMatrix& y) { return ChiMatrix(x.mat + y.mat); }
  friend ChiMatrix operator*(Complex s, const ChiMatrix& x) { return ChiMatrix(s * x.mat); }
};

using ChiMatrix1Q = ChiMatrix<1>;
using ChiMatrix2Q = ChiMatrix<2>;

template <std::size_t Qubits>
inline std::span<const ComplexMatrix> pauli_products() {
  static_assert(Qubits == 1 || Qubits == 2, "only one- and two-qubit channels are supported");
  if constexpr (Qubits == 1) {
    return pauli_basis();
  } else {
    return pauli_basis_2q();
  }
}

/// Coefficients a_k = Tr[P_k^dagger op] / d of op = sum_k a_k P_k.
template <std::size_t Qubits>
inline ComplexVector pauli_expansion(const ComplexMatrix& op) {
  const auto basis = pauli_products<Qubits>();
  constexpr double d = static_cast<double>(ChiMatrix<Qubits>::kDim);
  ComplexVector a(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) a[k] = hs_inner(basis[k], op) / d;
  return a;
}

//============================================================================
// Application
//============================================================================

template <std::size_t Qubits>
inline ComplexMatrix apply(const ChiMatrix<Qubits>& chi, const ComplexMatrix& rho) {
  const auto basis = pauli_products<Qubits>();
  constexpr std::size_t n = ChiMatrix<Qubits>::kSize;
  ComplexMatrix out(rho.rows(), rho.cols());
  for (std::size_t a = 0; a < n; ++a) {
    ComplexMatrix left;
    bool have_left = false;
    for (std::size_t b = 0; b < n; ++b) {
      const Complex c = chi.mat(a, b);
      if (c == Complex{0.0, 0.0}) continue;
      if (!have_left) {
        left = basis[a] * rho;
        have_left = true;
      }
      out.add_scaled(c, left * basis[b]);
    }
  }
  return out;
}

/// sum_{mn} chi_mn (sigma_m x I) X (sigma_n x I) for any 4x4 operator X.
inline ComplexMatrix apply_1q_on_a(const ChiMatrix1Q& chi, const ComplexMatrix& x) {
  if (x.rows() != 4 || x.cols() != 4) throw std::invalid_argument("apply_1q_on_a: expected a 4x4 operator");
  ComplexMatrix out(4, 4);
  for (std::size_t m = 0; m < 4; ++m) {
    const ComplexMatrix left = pauli_on_a(m) * x;
    for (std::size_t n = 0; n < 4; ++n) {
      const Complex c = chi.mat(m, n);
      if (c == Complex{0.0, 0.0}) continue;
      out.add_scaled(c, left * pauli_on_a(n));
    }
  }
  return out;
}

inline DensityMatrix2Q apply_1q_on_a(const ChiMatrix1Q& chi, const DensityMatrix2Q& rho) {
  return DensityMatrix2Q(apply_1q_on_a(chi, rho.mat()));
}

inline ComplexMatrix apply_2q(const ChiMatrix2Q& chi, const ComplexMatrix& x) {
  if (x.rows() != 4 || x.cols() != 4) throw std::invalid_argument("apply_2q: expected a 4x4 operator");
  return apply(chi, x);
}

inline DensityMatrix2Q apply_2q(const ChiMatrix2Q& chi, const DensityMatrix2Q& rho) {
  return DensityMatrix2Q(apply_2q(chi, rho.mat()));
}

/// Heisenberg-picture map: Tr[Y E(X)] = Tr[E^dagger(Y) X], E^dagger(Y) = sum chi_ab P_b Y P_a.
template <std::size_t Qubits>
inline ComplexMatrix apply_adjoint(const ChiMatrix<Qubits>& chi, const ComplexMatrix& y) {
  const auto basis = pauli_products<Qubits>();
  constexpr std::size_t n = ChiMatrix<Qubits>::kSize;
  ComplexMatrix out(y.rows(), y.cols());
  for (std::size_t b = 0; b < n; ++b) {
    ComplexMatrix left;
    bool have_left = false;
    for (std::size_t a = 0; a < n; ++a) {
      const Complex c = chi.mat(a, b);
      if (c == Complex{0.0, 0.0}) continue;
      if (!have_left) {
        left = basis[b] * y;
        have_left = true;
      }
      out.add_scaled(c, left * basis[a]);
    }
  }
  return out;
}

//============================================================================
// Superoperators, probing and composition
//============================================================================

// Row-major vectorization: vec(A X B) = (A x B^T) vec(X).

template <std::size_t Qubits>
inline ComplexMatrix superoperator(const ChiMatrix<Qubits>& chi) {
  const auto basis = pauli_products<Qubits>();
  constexpr std::size_t n = ChiMatrix<Qubits>::kSize;
  ComplexMatrix s(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const Complex c = chi.mat(a, b);
      if (c == Complex{0.0, 0.0}) continue;
      s.add_scaled(c, kron(basis[a], basis[b].transpose()));
    }
  return s;
}

/// Inverse of superoperator(): the maps X -> P_a X P_b are orthogonal with
/// squared norm d^2, so chi_ab = <P_a x P_b^T, S> / d^2.
template <std::size_t Qubits>
inline ChiMatrix<Qubits> chi_from_superoperator(const ComplexMatrix& s) {
  const auto basis = pauli_products<Qubits>();
  constexpr std::size_t n = ChiMatrix<Qubits>::kSize;
  constexpr double d2 = static_cast<double>(n);
  if (s.rows() != n || s.cols() != n) throw std::invalid_argument("chi_from_superoperator: wrong shape");
  ChiMatrix<Qubits> chi;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) chi.mat(a, b) = hs_inner(kron(basis[a], basis[b].transpose()), s) / d2;
  return chi;
}

/// Fits chi to an arbitrary linear map by probing it on the d^2 matrix units.
template <std::size_t Qubits>
inline ChiMatrix<Qubits> chi_from_linear_map(const std::function<ComplexMatrix(const ComplexMatrix&)>& map) {
  constexpr std::size_t d = ChiMatrix<Qubits>::kDim;
  constexpr std::size_t n = ChiMatrix<Qubits>::kSize;
  ComplexMatrix s(n, n);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) {
      const ComplexMatrix image = map(ComplexMatrix::unit(d, d, k, l));
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) s(i * d + j, k * d + l) = image(i, j);
    }
  return chi_from_superoperator<Qubits>(s);
}

/// chi of outer o inner.
template <std::size_t Qubits>
inline ChiMatrix<Qubits> compose(const ChiMatrix<Qubits>& outer, const ChiMatrix<Qubits>& inner) {
  return chi_from_linear_map<Qubits>(
      [&](const ComplexMatrix& x) { return apply(outer, apply(inner, x)); });
}

//============================================================================
// Validation
//============================================================================

inline constexpr double kChiHermitianTolerance = 1e-10;
inline constexpr double kChiPsdTolerance = 1e-9;
inline constexpr double kChiTpTolerance = 1e-9;

struct ChannelReport {
  bool hermitian = false;
  bool cp = false;
  bool tp = false;
  bool unital = false;
  double hermiticity_residual = 0.0;
  double min_eigenvalue = 0.0;
  double tp_residual = 0.0;
  double unital_residual = 0.0;
};

template <std::size_t Qubits>
inline ChannelReport validate(const ChiMatrix<Qubits>& chi) {
  const auto basis = pauli_products<Qubits>();
  constexpr std::size_t n = ChiMatrix<Qubits>::kSize;
  constexpr std::size_t d = ChiMatrix<Qubits>::kDim;

  ChannelReport r;
  r.hermiticity_residual = hermiticity_residual(chi.mat);
  r.hermitian = r.hermiticity_residual <= kChiHermitianTolerance;
  r.min_eigenvalue = min_eigenvalue_hermitian(hermitian_part(chi.mat));
  // Pauli products form an orthogonal operator basis, so chi >= 0 iff the map is CP.
  r.cp = r.hermitian && r.min_eigenvalue >= -kChiPsdTolerance;

  // TP: sum chi_ab P_b P_a = I.  Unital: E(I/d) = I/d, i.e. sum chi_ab P_a P_b = I.
  ComplexMatrix tp_sum(d, d);
  ComplexMatrix unital_sum(d, d);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const Complex c = chi.mat(a, b);
      if (c == Complex{0.0, 0.0}) continue;
      tp_sum.add_scaled(c, basis[b] * basis[a]);
      unital_sum.add_scaled(c, basis[a] * basis[b]);
    }
  r.tp_residual = max_abs_diff(tp_sum, ComplexMatrix::identity(d));
  r.unital_residual = max_abs_diff(unital_sum, ComplexMatrix::identity(d));
  r.tp = r.tp_residual <= kChiTpTolerance;
  r.unital = r.unital_residual <= kChiTpTolerance;
  return r;
}

//============================================================================
// Constructors
//============================================================================

template <std::size_t Qubits>
inline ChiMatrix<Qubits> chi_from_kraus(std::span<const ComplexMatrix> kraus) {
  ChiMatrix<Qubits> chi;
  for (const auto& k : kraus) {
    const ComplexVector a = pauli_expansion<Qubits>(k);
    chi.mat += ComplexMatrix::outer(a, a);
  }
  return chi;
}

inline bool is_unitary(const ComplexMatrix& u, double tol = 1e-10) {
  if (!u.is_square()) return false;
  return max_abs_diff(u * u.adjoint(), ComplexMatrix::identity(u.rows())) <= tol;
}

/// chi_ab = a_a conj(a_b) for rho -> U rho U^dagger with U = sum a_k P_k.
template <std::size_t Qubits>
inline ChiMatrix<Qubits> unitary_channel(const ComplexMatrix& u) {
  if (u.rows() != ChiMatrix<Qubits>::kDim || !is_unitary(u)) throw NotUnitary("unitary_channel: matrix is not unitary");
  const ComplexMatrix k[] = {u};
  return chi_from_kraus<Qubits>(k);
}

/// exp(-i angle/2 sigma_axis), axis in 1..3.
inline ComplexMatrix rotation(PauliIndex axis, double angle) {
  return std::cos(angle / 2.0) * ComplexMatrix::identity(2) + (-kI * std::sin(angle / 2.0)) * pauli(axis);
}

inline const ComplexMatrix& cnot() {
  static const ComplexMatrix m{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
  return m;
}

template <std::size_t Qubits>
inline void require_cp(const ChiMatrix<Qubits>& chi, const std::string& who) {
  const ChannelReport r = validate(chi);
  if (!r.cp) throw NotCP(who + ": map is not completely positive (min eigenvalue " + std::to_string(r.min_eigenvalue) + ")");
}

/// Single-qubit depolarizing D_eps(rho) = (1 - eps)/2 I + eps rho.
inline ChiMatrix1Q depolarizing_1q(double eps) {
  ChiMatrix1Q chi;
  chi.mat(0, 0) = (1.0 + 3.0 * eps) / 4.0;
  for (std::size_t k = 1; k < 4; ++k) chi.mat(k, k) = (1.0 - eps) / 4.0;
  require_cp(chi, "depolarizing_1q");
  return chi;
}

/// Correlated two-qubit depolarizing rho -> (1 - eps)/4 I x I + eps rho.
inline ChiMatrix2Q depolarizing_2q(double eps) {
  // sum over all 16 Pauli products of P rho P equals 4 Tr[rho] I.
  ChiMatrix2Q chi;
  for (std::size_t k = 0; k < 16; ++k) chi.mat(k, k) = (1.0 - eps) / 16.0;
  chi.mat(0, 0) += eps;
  require_cp(chi, "depolarizing_2q");
  return chi;
}

/// rho -> (1 - eps)/4 I x I + eps U rho U^dagger, with chi built from the
/// Pauli expansion U = sum a_mn sigma_m x sigma_n:
///   chi = (1 - eps)/16 * 1 + eps * a a^dagger.
inline ChiMatrix2Q generalized_depolarizing_2q(double eps, const ComplexMatrix& u) {
  if (u.rows() != 4 || !is_unitary(u)) throw NotUnitary("generalized_depolarizing_2q: U is not a 4x4 unitary");
  const ComplexVector a = pauli_expansion<2>(u);
  ChiMatrix2Q chi(eps * ComplexMatrix::outer(a, a));
  for (std::size_t k = 0; k < 16; ++k) chi.mat(k, k) += (1.0 - eps) / 16.0;
  require_cp(chi, "generalized_depolarizing_2q");
  return chi;
}

/// chi_A (on qubit A) x chi_B (on qubit B) as one two-qubit map.
inline ChiMatrix2Q local_product(const ChiMatrix1Q& on_a, const ChiMatrix1Q& on_b) {
  return ChiMatrix2Q(kron(on_a.mat, on_b.mat));
}

/// I x E: a single-qubit map acting on the ancilla only.
inline ChiMatrix2Q on_ancilla(const ChiMatrix1Q& chi) { return local_product(ChiMatrix1Q::identity(), chi); }

/// D_eps x D_eps2, uncorrelated depolarizing on both qubits.
inline ChiMatrix2Q uncorrelated_depolarizing(double eps_a, double eps_b) {
  return local_product(depolarizing_1q(eps_a), depolarizing_1q(eps_b));
}

//============================================================================
// Random fixtures
//============================================================================

namespace detail {

inline ComplexMatrix ginibre(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(n, n);
  for (auto& z : g.entries()) {
    const double re = normal(rng);
    const double im = normal(rng);
    z = {re, im};
  }
  return g;
}

/// Haar unitary from the QR decomposition of a Ginibre matrix (Gram-Schmidt, phase-fixed).
inline ComplexMatrix haar_unitary(std::size_t n, std::mt19937_64& rng) {
  ComplexMatrix q = ginibre(n, rng);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t p = 0; p < c; ++p) {
      Complex proj{0.0, 0.0};
      for (std::size_t r = 0; r < n; ++r) proj += std::conj(q(r, p)) * q(r, c);
      for (std::size_t r = 0; r < n; ++r) q(r, c) -= proj * q(r, p);
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < n; ++r) norm += std::norm(q(r, c));
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < n; ++r) q(r, c) /= norm;
  }
  return q;
}

/// Inverse square root of a positive definite Hermitian matrix.
inline ComplexMatrix inverse_sqrt(const ComplexMatrix& s) {
  const HermitianEigen e = eig_hermitian_unchecked(s);
  ComplexVector d(e.values.size());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = 1.0 / std::sqrt(e.values[k]);
  return e.vectors * ComplexMatrix::diagonal(d) * e.vectors.adjoint();
}

/// Random Kraus set with sum K^dagger K = I.
inline std::vector<ComplexMatrix> random_tp_kraus(std::size_t dim, std::size_t count, std::mt19937_64& rng) {
  std::vector<ComplexMatrix> kraus;
  ComplexMatrix s(dim, dim);
  for (std::size_t k = 0; k < count; ++k) {
    kraus.push_back(ginibre(dim, rng));
    s += kraus.back().adjoint() * kraus.back();
  }
  const ComplexMatrix norm = inverse_sqrt(s);
  for (auto& k : kraus) k = k * norm;
  return kraus;
}

}  // namespace detail

inline ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return detail::haar_unitary(dim, rng);
}

/// Reproducible random CP channel.
///   tp && unital  : random mixture of Haar unitaries
///   tp only       : normalized random Kraus set (generically non-unital)
///   unital only   : adjoints of a normalized Kraus set (unital, generically not TP)
///   neither       : normalized Kraus set scaled into a trace-decreasing map
inline ChiMatrix1Q random_channel_1q(std::uint64_t seed, bool tp, bool unital) {
  std::mt19937_64 rng(seed);
  std::vector<ComplexMatrix> kraus;
  if (tp && unital) {
    std::uniform_real_distribution<double> uni(0.05, 1.0);
    std::vector<double> w(3);
    double total = 0.0;
    for (auto& x : w) total += (x = uni(rng));
    for (std::size_t k = 0; k < w.size(); ++k)
      kraus.push_back(std::sqrt(w[k] / total) * detail::haar_unitary(2, rng));
  } else {
    kraus = detail::random_tp_kraus(2, 3, rng);
    if (unital) {
      for (auto& k : kraus) k = k.adjoint();
    } else if (!tp) {
      std::uniform_real_distribution<double> shrink(0.5, 0.95);
      const double f = std::sqrt(shrink(rng));
      for (auto& k : kraus) k = f * k;
    }
  }
  return chi_from_kraus<1>(kraus);
}

/// Random single-qubit unitary channel.
inline ChiMatrix1Q random_unitary_channel_1q(std::uint64_t seed) {
  return unitary_channel<1>(random_unitary(2, seed));
}

}  // namespace dcqd

#endif  // DCQD_CHANNEL_HPP
