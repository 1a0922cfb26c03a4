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
#include "dcqd/qobj.hpp"
#include "test_support.hpp"

using namespace dcqd;
using dcqd::testing::kPi;
using Catch::Matchers::WithinAbs;

TEST_CASE("Pauli algebra", "[qobj]") {
  CHECK(max_abs_diff(pauli(PauliIndex{0}), ComplexMatrix::identity(2)) == 0.0);
  for (int k = 0; k < 4; ++k) {
    const ComplexMatrix& s = pauli(PauliIndex{k});
    CHECK(max_abs_diff(s * s, ComplexMatrix::identity(2)) == 0.0);
    CHECK(max_abs_diff(s, s.adjoint()) == 0.0);
  }
  CHECK(max_abs_diff(pauli(PauliIndex{1}) * pauli(PauliIndex{2}), kI * pauli(PauliIndex{3})) == 0.0);
  CHECK(max_abs_diff(pauli(PauliIndex{2}) * pauli(PauliIndex{3}), kI * pauli(PauliIndex{1})) == 0.0);
}

TEST_CASE("index types reject out-of-range values", "[qobj][error]") {
  CHECK_THROWS_AS(PauliIndex{4}, std::out_of_range);
  CHECK_THROWS_AS(PauliIndex{-1}, std::out_of_range);
  CHECK_THROWS_AS(BellIndex{4}, std::out_of_range);
}

TEST_CASE("two-qubit Pauli products put qubit A on the left", "[qobj]") {
  const auto& b = pauli_basis_2q();
  CHECK(max_abs_diff(b[4 * 1 + 3], kron(pauli(PauliIndex{1}), pauli(PauliIndex{3}))) == 0.0);
  CHECK(max_abs_diff(pauli_on_a(2), kron(pauli(PauliIndex{2}), ComplexMatrix::identity(2))) == 0.0);
}

TEST_CASE("commutation signs", "[qobj]") {
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const ComplexMatrix& pa = pauli(PauliIndex{a});
      const ComplexMatrix& pb = pauli(PauliIndex{b});
      const int s = commutation_sign(PauliIndex{a}, PauliIndex{b});
      CHECK(max_abs_diff(pa * pb, static_cast<double>(s) * (pb * pa)) == 0.0);
      if (a == b || a == 0 || b == 0) CHECK(s == 1);
    }
}

TEST_CASE("Bell states and projectors", "[qobj]") {
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(max_abs_diff(bell_state(BellIndex{0}), ComplexVector{s, 0, 0, s}) <= 1e-15);
  CHECK(max_abs_diff(bell_state(BellIndex{1}), ComplexVector{0, s, s, 0}) <= 1e-15);
  CHECK(max_abs_diff(bell_state(BellIndex{2}), ComplexVector{0, s, -s, 0}) <= 1e-15);
  CHECK(max_abs_diff(bell_state(BellIndex{3}), ComplexVector{s, 0, 0, -s}) <= 1e-15);

  const ComplexMatrix p00 = bell_projector(BellIndex{0}, BellIndex{0});
  CHECK_THAT(p00.trace().real(), WithinAbs(1.0, 1e-15));
  CHECK(max_abs_diff(p00 * p00, p00) <= 1e-15);

  ComplexMatrix sum(4, 4);
  for (const auto& p : bell_diagonal_projectors()) sum += p;
  CHECK(max_abs_diff(sum, ComplexMatrix::identity(4)) <= 1e-15);

  const ComplexMatrix p03 = bell_projector(BellIndex{0}, BellIndex{3});
  CHECK(std::abs(p03.trace()) <= 1e-15);
  // Rank one: the outer product of Phi+ with Phi-.
  CHECK(max_abs_diff(p03, ComplexMatrix::outer(bell_state(BellIndex{0}), bell_state(BellIndex{3}))) == 0.0);
  const auto sv = singular_values(p03);
  CHECK_THAT(sv[0], WithinAbs(1.0, 1e-12));
  CHECK_THAT(sv[1], WithinAbs(0.0, 1e-7));
}

TEST_CASE("Bell projectors are orthogonal", "[qobj][property]") {
  const auto& p = bell_diagonal_projectors();
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t k2 = 0; k2 < 4; ++k2)
      CHECK_THAT(trace_of_product(p[k], p[k2]).real(), WithinAbs(k == k2 ? 1.0 : 0.0, 1e-15));
}

TEST_CASE("DensityMatrix2Q validates its invariants", "[qobj][error]") {
  CHECK_NOTHROW(DensityMatrix2Q(0.25 * ComplexMatrix::identity(4)));
  CHECK_THROWS_AS(DensityMatrix2Q(ComplexMatrix::identity(4)), InvalidState);  // trace 4
  CHECK_THROWS_AS(DensityMatrix2Q(ComplexMatrix::identity(2)), InvalidState);
  ComplexMatrix neg = 0.25 * ComplexMatrix::identity(4);
  neg(0, 0) = 0.75;
  neg(1, 1) = -0.25;
  CHECK_THROWS_AS(DensityMatrix2Q(neg), InvalidState);
  ComplexMatrix skew = 0.25 * ComplexMatrix::identity(4);
  skew(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix2Q(skew), InvalidState);
}

TEST_CASE("DCQD inputs", "[qobj]") {
  const DensityMatrix2Q r0 = dcqd_input(0, {0.0, 0.0});  // angles ignored
  CHECK(max_abs_diff(r0.mat(), bell_projector(BellIndex{0}, BellIndex{0})) == 0.0);

  CHECK_THROWS_AS(dcqd_input(1, {kPi / 4, kPi / 2}), DegenerateInput);
  CHECK_THROWS_AS(dcqd_input(2, {kPi / 8, 0.0}), DegenerateInput);
  CHECK_THROWS_AS(dcqd_input(3, {0.0, kPi / 2}), DegenerateInput);
  CHECK_THROWS_AS(dcqd_input(1, {kPi / 8, kPi}), DegenerateInput);
  CHECK_THROWS_AS(dcqd_input(4, {}), std::out_of_range);

  const DensityMatrix2Q r1 = dcqd_input(1, {kPi / 8, kPi / 2});
  const double expected[4] = {0.5, 0.0, 0.0, 0.5};
  for (std::size_t j = 0; j < 4; ++j)
    CHECK_THAT(trace_of_product(bell_diagonal_projectors()[j], r1.mat()).real(), WithinAbs(expected[j], 1e-12));

  const ComplexVector v = input_ket(1, {kPi / 8, kPi / 2});
  CHECK(std::abs(v[0] - std::cos(kPi / 8)) <= 1e-15);
  CHECK(std::abs(v[3] - kI * std::sin(kPi / 8)) <= 1e-15);
}

TEST_CASE("y-basis input uses |+-i> = (|0> +- i|1>)/sqrt2", "[qobj]") {
  const InputParams p{0.3, 1.1};
  const double s = 1.0 / std::sqrt(2.0);
  const ComplexVector plus_i{s, kI * s};
  const ComplexVector minus_i{s, -kI * s};
  const auto k2 = [](const ComplexVector& u) {
    ComplexVector out(4);
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b) out[2 * a + b] = u[a] * u[b];
    return out;
  };
  const ComplexVector pp = k2(plus_i);
  const ComplexVector mm = k2(minus_i);
  ComplexVector expected(4);
  for (std::size_t k = 0; k < 4; ++k) expected[k] = p.alpha() * pp[k] + p.beta() * mm[k];
  CHECK(max_abs_diff(input_ket(3, p), expected) <= 1e-15);
}

TEST_CASE("DCQD inputs are pure", "[qobj][property]") {
  for (const InputParams& p : {InputParams{0.3, 1.1}, InputParams{kPi / 8, kPi / 2}, InputParams{1.0, 2.0}})
    for (int i = 0; i < 4; ++i) CHECK_THAT(dcqd_input(i, p).purity(), WithinAbs(1.0, 1e-10));
}

TEST_CASE("concurrence", "[qobj]") {
  CHECK_THAT(concurrence(dcqd_input(0, {})), WithinAbs(1.0, 1e-12));
  CHECK_THAT(concurrence(DensityMatrix2Q(ComplexMatrix::unit(4, 4, 0, 0))), WithinAbs(0.0, 1e-12));
  CHECK_THAT(concurrence(dcqd_input(1, {kPi / 8, kPi / 2})), WithinAbs(1.0 / std::sqrt(2.0), 1e-12));
  CHECK_THAT(concurrence(DensityMatrix2Q(0.25 * ComplexMatrix::identity(4))), WithinAbs(0.0, 1e-12));

  // Werner state p Phi+ + (1-p) I/4 has concurrence max(0, (3p - 1)/2).
  for (const double p : {0.2, 0.5, 0.8}) {
    ComplexMatrix w = p * bell_projector(BellIndex{0}, BellIndex{0});
    for (std::size_t d = 0; d < 4; ++d) w(d, d) += (1.0 - p) / 4.0;
    CHECK_THAT(concurrence(DensityMatrix2Q(w)), WithinAbs(std::max(0.0, (3.0 * p - 1.0) / 2.0), 1e-9));
  }
}

TEST_CASE("concurrence does not depend on the local basis of the input", "[qobj][property]") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> theta(0.05, kPi / 4 - 0.05);
  std::uniform_real_distribution<double> phi(0.05, kPi - 0.05);
  for (int trial = 0; trial < 50; ++trial) {
    const InputParams p{theta(rng), phi(rng)};
    const double c1 = concurrence(dcqd_input(1, p));
    CHECK_THAT(concurrence(dcqd_input(2, p)), WithinAbs(c1, 1e-10));
    CHECK_THAT(concurrence(dcqd_input(3, p)), WithinAbs(c1, 1e-10));
    CHECK_THAT(c1, WithinAbs(std::abs(std::sin(2.0 * p.theta)), 1e-10));
  }
}

TEST_CASE("PPT test", "[qobj]") {
  CHECK_FALSE(is_ppt(bell_projector(BellIndex{0}, BellIndex{0})));
  CHECK(is_ppt(0.25 * ComplexMatrix::identity(4)));
  CHECK(is_ppt(ComplexMatrix::unit(4, 4, 1, 1)));
  // Werner threshold at p = 1/3.
  for (const double p : {0.3, 1.0 / 3.0 - 1e-9, 0.34}) {
    ComplexMatrix w = p * bell_projector(BellIndex{0}, BellIndex{0});
    for (std::size_t d = 0; d < 4; ++d) w(d, d) += (1.0 - p) / 4.0;
    CHECK(is_ppt(w) == (p <= 1.0 / 3.0));
  }
}
