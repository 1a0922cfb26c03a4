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

#ifndef DCQD_ORACLE_HPP
#define DCQD_ORACLE_HPP

#include <array>
#include <complex>

#include "dcqd/channel.hpp"

namespace dcqd::oracle {

// Textbook single-qubit process tomography, kept deliberately apart from the
// DCQD machinery: its own 2x2 arithmetic, its own Pauli table, no Lambda and
// no arrangement matrix. Only the ChiMatrix1Q container is shared.

using C = std::complex<double>;
using M2 = std::array<std::array<C, 2>, 2>;

namespace detail {

inline M2 mul(const M2& a, const M2& b) {
  M2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return r;
}

inline M2 add(const M2& a, const M2& b, C sb = 1.0) {
  M2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][j] + sb * b[i][j];
  return r;
}

inline const std::array<M2, 4>& paulis() {
  static const std::array<M2, 4> p{{
      {{{1.0, 0.0}, {0.0, 1.0}}},
      {{{0.0, 1.0}, {1.0, 0.0}}},
      {{{0.0, C(0.0, -1.0)}, {C(0.0, 1.0), 0.0}}},
      {{{1.0, 0.0}, {0.0, -1.0}}},
  }};
  return p;
}

inline M2 apply(const ChiMatrix1Q& chi, const M2& rho) {
  M2 out{};
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      const C c = chi.mat(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
      out = add(out, mul(mul(paulis()[m], rho), paulis()[n]), c);
    }
  return out;
}

/// Rebuilds a 2x2 operator from its Pauli expectation values <I>, <X>, <Y>, <Z>.
inline M2 from_expectations(const M2& rho) {
  M2 out{};
  for (int k = 0; k < 4; ++k) {
    const M2 pr = mul(paulis()[k], rho);
    const C expectation = pr[0][0] + pr[1][1];
    out = add(out, paulis()[k], expectation / 2.0);
  }
  return out;
}

}  // namespace detail

/// Standard QPT with inputs |0>, |1>, |+>, |+i> and exact Pauli expectation
/// values on the outputs. The off-diagonal images follow by linearity,
///   E(|0><1|) = E(+) + i E(+i) - (1+i)/2 (E(0) + E(1)),
///   E(|1><0|) = E(+) - i E(+i) - (1-i)/2 (E(0) + E(1)),
/// and the block formula chi~ = L [E00 E01; E10 E11] L with L = 1/2 [I X; X -I]
/// gives chi in the basis {I, X, -iY, Z}, which is then rephased to {I, X, Y, Z}.
inline ChiMatrix1Q standard_qpt(const ChiMatrix1Q& chi_true) {
  using detail::add;
  const double s = 0.5;
  const M2 in0{{{1.0, 0.0}, {0.0, 0.0}}};
  const M2 in1{{{0.0, 0.0}, {0.0, 1.0}}};
  const M2 in_plus{{{s, s}, {s, s}}};
  const M2 in_plus_i{{{s, C(0.0, -s)}, {C(0.0, s), s}}};

  const auto measured = [&](const M2& rho) { return detail::from_expectations(detail::apply(chi_true, rho)); };
  const M2 e0 = measured(in0);
  const M2 e1 = measured(in1);
  const M2 ep = measured(in_plus);
  const M2 epi = measured(in_plus_i);
  const M2 e01 = add(add(ep, epi, C(0.0, 1.0)), add(e0, e1), -C(0.5, 0.5));
  const M2 e10 = add(add(ep, epi, C(0.0, -1.0)), add(e0, e1), -C(0.5, -0.5));

  // 4x4 block matrix R = [e00 e01; e10 e11].
  std::array<std::array<C, 4>, 4> r{};
  const std::array<std::array<const M2*, 2>, 2> blocks{{{&e0, &e01}, {&e10, &e1}}};
  for (int bi = 0; bi < 2; ++bi)
    for (int bj = 0; bj < 2; ++bj)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[2 * bi + i][2 * bj + j] = (*blocks[bi][bj])[i][j];

  const std::array<std::array<double, 4>, 4> l{{
      {0.5, 0.0, 0.0, 0.5},
      {0.0, 0.5, 0.5, 0.0},
      {0.0, 0.5, -0.5, 0.0},
      {0.5, 0.0, 0.0, -0.5},
  }};
  std::array<std::array<C, 4>, 4> lr{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) lr[i][j] += l[i][k] * r[k][j];
  std::array<std::array<C, 4>, 4> tilde{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) tilde[i][j] += lr[i][k] * l[k][j];

  // E~_a = c_a sigma_a with c = (1, 1, -i, 1)  =>  chi_ab = c_a conj(c_b) chi~_ab.
  const std::array<C, 4> c{1.0, 1.0, C(0.0, -1.0), 1.0};
  ChiMatrix1Q out;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      out.mat(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) = c[a] * std::conj(c[b]) * tilde[a][b];
  return out;
}

}  // namespace dcqd::oracle

#endif  // DCQD_ORACLE_HPP
