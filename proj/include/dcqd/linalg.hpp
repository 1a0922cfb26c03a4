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

#ifndef DCQD_LINALG_HPP
#define DCQD_LINALG_HPP

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dcqd/errors.hpp"

namespace dcqd {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

inline constexpr Complex kI{0.0, 1.0};

//============================================================================
// ComplexMatrix
//============================================================================

// Dense row-major complex matrix. Sized for the 2x2 .. 16x16 objects of the
// toolkit; nothing here tries to be clever about larger problems.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
      throw std::invalid_argument("ComplexMatrix: entry count does not match shape");
  }
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw std::invalid_argument("ComplexMatrix: ragged initializer");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const Complex> d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  /// Matrix unit E_{rc}: a single 1 at (r, c).
  static ComplexMatrix unit(std::size_t rows, std::size_t cols, std::size_t r, std::size_t c) {
    ComplexMatrix m(rows, cols);
    m(r, c) = 1.0;
    return m;
  }

  static ComplexMatrix outer(std::span<const Complex> ket, std::span<const Complex> bra) {
    ComplexMatrix m(ket.size(), bra.size());
    for (std::size_t i = 0; i < ket.size(); ++i)
      for (std::size_t j = 0; j < bra.size(); ++j) m(i, j) = ket[i] * std::conj(bra[j]);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }

  std::span<const Complex> entries() const noexcept { return data_; }
  std::span<Complex> entries() noexcept { return data_; }

  ComplexMatrix adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
  }

  ComplexMatrix transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
    return m;
  }

  ComplexMatrix conjugate() const {
    ComplexMatrix m = *this;
    for (auto& z : m.data_) z = std::conj(z);
    return m;
  }

  Complex trace() const {
    Complex t{0.0, 0.0};
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  /// Largest entry magnitude (the entrywise infinity norm).
  double max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  bool all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
      return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  ComplexMatrix& operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  /// Adds s * o without materializing the scaled temporary.
  void add_scaled(Complex s, const ComplexMatrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += s * o.data_[i];
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(double s, ComplexMatrix a) { return a *= Complex{s, 0.0}; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("ComplexMatrix: product shape mismatch");
    ComplexMatrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{0.0, 0.0}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
      }
    return m;
  }

  friend ComplexVector operator*(const ComplexMatrix& a, std::span<const Complex> x) {
    if (a.cols_ != x.size()) throw std::invalid_argument("ComplexMatrix: vector length mismatch");
    ComplexVector y(a.rows_, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) y[i] += a(i, k) * x[k];
    return y;
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  void check_same_shape(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("ComplexMatrix: shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).max_abs(); }

inline double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw std::invalid_argument("max_abs_diff: length mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(std::span<const Complex> v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

/// Hilbert-Schmidt inner product Tr[a^dagger b].
inline Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("hs_inner: shape mismatch");
  Complex s{0.0, 0.0};
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) s += std::conj(ea[i]) * eb[i];
  return s;
}

/// Tr[a b] without forming the product.
inline Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) throw std::invalid_argument("trace_of_product: shape mismatch");
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, i);
  return s;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) m(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return m;
}

/// ||a - a^dagger|| in the entrywise max norm.
inline double hermiticity_residual(const ComplexMatrix& a) {
  if (!a.is_square()) return std::numeric_limits<double>::infinity();
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
  return m;
}

inline ComplexMatrix hermitian_part(const ComplexMatrix& a) { return 0.5 * (a + a.adjoint()); }

//============================================================================
// LU factorization with partial pivoting
//============================================================================

inline constexpr double kSingularPivotTolerance = 1e-12;

struct LuDecomposition {
  ComplexMatrix lu;                 // unit-lower L below the diagonal, U on and above
  std::vector<std::size_t> perm;    // row i of PA is row perm[i] of A
  int sign = 1;                     // parity of perm
  bool singular = false;            // some pivot fell below the relative tolerance
  double min_pivot_ratio = 0.0;     // smallest |pivot| / max|a|
};

inline LuDecomposition lu_factor(const ComplexMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("lu_factor: matrix must be square");
  const std::size_t n = a.rows();
  LuDecomposition f{a, std::vector<std::size_t>(n), 1, false, std::numeric_limits<double>::infinity()};
  std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
  ComplexMatrix& m = f.lu;
  const double scale = a.max_abs();
  if (n == 0) return f;
  if (scale == 0.0) {
    f.singular = true;
    f.min_pivot_ratio = 0.0;
    return f;
  }

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(m(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      const double v = std::abs(m(r, k));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(piv, c));
      std::swap(f.perm[k], f.perm[piv]);
      f.sign = -f.sign;
    }
    f.min_pivot_ratio = std::min(f.min_pivot_ratio, best / scale);
    if (best <= kSingularPivotTolerance * scale) {
      f.singular = true;
      if (best == 0.0) continue;
    }
    const Complex inv = 1.0 / m(k, k);
    for (std::size_t r = k + 1; r < n; ++r) {
      const Complex factor = m(r, k) * inv;
      m(r, k) = factor;
      if (factor == Complex{0.0, 0.0}) continue;
      for (std::size_t c = k + 1; c < n; ++c) m(r, c) -= factor * m(k, c);
    }
  }
  return f;
}

/// Determinant as the signed product of LU pivots; exactly 0 when a pivot vanishes.
inline Complex det(const ComplexMatrix& a) {
  const LuDecomposition f = lu_factor(a);
  Complex d{static_cast<double>(f.sign), 0.0};
  for (std::size_t i = 0; i < a.rows(); ++i) d *= f.lu(i, i);
  return d;
}

inline ComplexVector lu_solve(const LuDecomposition& f, std::span<const Complex> b) {
  const std::size_t n = f.lu.rows();
  if (b.size() != n) throw std::invalid_argument("lu_solve: right-hand side length mismatch");
  if (f.singular)
    throw SingularMatrix("lu_solve: pivot below " + std::to_string(kSingularPivotTolerance) +
                         " x max|a| (ratio " + std::to_string(f.min_pivot_ratio) + ")");
  ComplexVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < i; ++k) x[i] -= f.lu(i, k) * x[k];
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) x[i] -= f.lu(i, k) * x[k];
    x[i] /= f.lu(i, i);
  }
  return x;
}

inline ComplexVector lu_solve(const ComplexMatrix& a, std::span<const Complex> b) {
  return lu_solve(lu_factor(a), b);
}

inline ComplexMatrix inverse(const ComplexMatrix& a) {
  const LuDecomposition f = lu_factor(a);
  const std::size_t n = a.rows();
  ComplexMatrix inv(n, n);
  ComplexVector e(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::fill(e.begin(), e.end(), Complex{0.0, 0.0});
    e[c] = 1.0;
    const ComplexVector col = lu_solve(f, e);
    for (std::size_t r = 0; r < n; ++r) inv(r, c) = col[r];
  }
  return inv;
}

//============================================================================
// Hermitian eigendecomposition and conditioning
//============================================================================

inline constexpr double kHermitianTolerance = 1e-10;

struct HermitianEigen {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // column k pairs with values[k]
};

namespace detail {

inline HermitianEigen eig_hermitian_unchecked(const ComplexMatrix& a) {
  const std::size_t n = a.rows();
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      // Symmetrize so that rounding noise in the input cannot leak into the solver.
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = 0.5 * (a(r, c) + std::conj(a(c, r)));
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  const auto& vals = solver.eigenvalues();
  const auto& vecs = solver.eigenvectors();

  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n)};
  // Eigen returns ascending order.
  for (std::size_t k = 0; k < n; ++k) {
    const auto src = static_cast<Eigen::Index>(n - 1 - k);
    out.values[k] = vals(src);
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = vecs(static_cast<Eigen::Index>(r), src);
  }
  return out;
}

}  // namespace detail

inline HermitianEigen eig_hermitian(const ComplexMatrix& a) {
  if (!a.is_square()) throw NotHermitian("eig_hermitian: matrix is not square");
  const double res = hermiticity_residual(a);
  if (res > kHermitianTolerance)
    throw NotHermitian("eig_hermitian: ||a - a^dagger|| = " + std::to_string(res));
  return detail::eig_hermitian_unchecked(a);
}

inline double min_eigenvalue_hermitian(const ComplexMatrix& a) {
  return detail::eig_hermitian_unchecked(a).values.back();
}

/// Singular values, descending. One-sided Jacobi, so small ones keep their
/// relative accuracy (squaring through a^dagger a would not).
inline std::vector<double> singular_values(const ComplexMatrix& a) {
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(a.rows()), static_cast<Eigen::Index>(a.cols()));
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = a(r, c);
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  return std::vector<double>(s.data(), s.data() + s.size());
}

/// 2-norm condition number; +infinity when sigma_min < 1e-14 sigma_max.
inline double condition_number(const ComplexMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("condition_number: matrix must be square");
  const auto sv = singular_values(a);
  if (sv.empty()) return 1.0;
  const double smax = sv.front();
  const double smin = sv.back();
  if (smax == 0.0 || smin < 1e-14 * smax) return std::numeric_limits<double>::infinity();
  return smax / smin;
}

}  // namespace dcqd

#endif  // DCQD_LINALG_HPP
