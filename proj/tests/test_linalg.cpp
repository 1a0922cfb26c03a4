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
#include "dcqd/linalg.hpp"
#include "dcqd/protocol.hpp"
#include "test_support.hpp"

using namespace dcqd;
using dcqd::testing::kPi;
using Catch::Matchers::WithinAbs;

namespace {

ComplexMatrix diag(std::initializer_list<Complex> d) {
  const std::vector<Complex> v(d);
  return ComplexMatrix::diagonal(v);
}

const ComplexMatrix kX{{0, 1}, {1, 0}};
const ComplexMatrix kZ{{1, 0}, {0, -1}};

}  // namespace

TEST_CASE("kron of identities and Paulis", "[linalg]") {
  CHECK(max_abs_diff(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)), ComplexMatrix::identity(4)) == 0.0);
  CHECK(max_abs_diff(kron(kZ, kZ), diag({1, -1, -1, 1})) == 0.0);

  const double s = 1.0 / std::sqrt(2.0);
  const ComplexVector phi_plus{s, 0, 0, s};
  const ComplexVector out = kron(kX, kX) * std::span<const Complex>(phi_plus);
  CHECK(max_abs_diff(out, phi_plus) == 0.0);
}

TEST_CASE("kron shape and mixed product", "[linalg]") {
  const ComplexMatrix a = testing::random_matrix(2, 3, 1);
  const ComplexMatrix b = testing::random_matrix(3, 2, 2);
  const ComplexMatrix c = testing::random_matrix(3, 2, 3);
  const ComplexMatrix d = testing::random_matrix(2, 3, 4);
  const ComplexMatrix ab = kron(a, b);
  CHECK(ab.rows() == 6);
  CHECK(ab.cols() == 6);
  CHECK(max_abs_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)) <= 1e-12);
}

TEST_CASE("kron is associative", "[linalg][property]") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ComplexMatrix a = testing::random_matrix(2, 2, 3 * seed);
    const ComplexMatrix b = testing::random_matrix(2, 3, 3 * seed + 1);
    const ComplexMatrix c = testing::random_matrix(3, 2, 3 * seed + 2);
    CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) <= 1e-12);
  }
}

TEST_CASE("lu_solve on simple systems", "[linalg]") {
  ComplexVector e3(16);
  e3[3] = 1.0;
  CHECK(max_abs_diff(lu_solve(ComplexMatrix::identity(16), e3), e3) == 0.0);

  const ComplexMatrix twos = 2.0 * ComplexMatrix::identity(16);
  const ComplexVector ones(16, Complex{1.0, 0.0});
  const ComplexVector x = lu_solve(twos, ones);
  for (const Complex& v : x) CHECK(v == Complex{0.5, 0.0});
}

TEST_CASE("lu_solve residual on well-conditioned random systems", "[linalg][property]") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    ComplexMatrix a = testing::random_matrix(16, 16, seed);
    a += 4.0 * ComplexMatrix::identity(16);
    REQUIRE(condition_number(a) <= 1e6);
    const ComplexVector b = testing::random_vector(16, 1000 + seed);
    const ComplexVector x = lu_solve(a, b);
    const ComplexVector back = a * std::span<const Complex>(x);
    CHECK(max_abs_diff(back, b) <= 1e-10 * max_abs(b));
  }
}

TEST_CASE("lu_solve rejects singular matrices", "[linalg][error]") {
  ComplexMatrix a = testing::random_matrix(4, 4, 9);
  for (std::size_t c = 0; c < 4; ++c) a(3, c) = a(1, c);
  CHECK_THROWS_AS(lu_solve(a, ComplexVector(4, 1.0)), SingularMatrix);
  CHECK_THROWS_AS(lu_solve(ComplexMatrix(3, 3), ComplexVector(3, 1.0)), SingularMatrix);
  CHECK(lu_factor(a).singular);
}

TEST_CASE("det via LU", "[linalg]") {
  CHECK(det(ComplexMatrix::identity(16)) == Complex{1.0, 0.0});
  CHECK_THAT(std::abs(det(diag({1, 2, 3, 4})) - 24.0), WithinAbs(0.0, 1e-12));
  CHECK_THAT(std::abs(det(numeric_lambda({kPi / 8, kPi / 2}).lambda)), WithinAbs(1.0, 1e-9));

  // Permutation sign.
  const ComplexMatrix swap{{0, 1}, {1, 0}};
  CHECK(det(swap) == Complex{-1.0, 0.0});
  CHECK(det(ComplexMatrix(5, 5)) == Complex{0.0, 0.0});
}

TEST_CASE("det is multiplicative", "[linalg][property]") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const ComplexMatrix a = testing::random_matrix(8, 8, 2 * seed);
    const ComplexMatrix b = testing::random_matrix(8, 8, 2 * seed + 1);
    CHECK(std::abs(det(a * b) - det(a) * det(b)) <= 1e-9);
  }
}

TEST_CASE("inverse", "[linalg]") {
  ComplexMatrix a = testing::random_matrix(6, 6, 5);
  a += 3.0 * ComplexMatrix::identity(6);
  CHECK(max_abs_diff(a * inverse(a), ComplexMatrix::identity(6)) <= 1e-12);
}

TEST_CASE("eig_hermitian spectra", "[linalg]") {
  const HermitianEigen z = eig_hermitian(kZ);
  REQUIRE(z.values.size() == 2);
  CHECK_THAT(z.values[0], WithinAbs(1.0, 1e-15));
  CHECK_THAT(z.values[1], WithinAbs(-1.0, 1e-15));

  const HermitianEigen p = eig_hermitian(bell_projector(BellIndex{0}, BellIndex{0}));
  CHECK_THAT(p.values[0], WithinAbs(1.0, 1e-12));
  for (std::size_t k = 1; k < 4; ++k) CHECK_THAT(p.values[k], WithinAbs(0.0, 1e-12));
}

TEST_CASE("eig_hermitian of density matrices", "[linalg][property]") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const ComplexMatrix rho = testing::random_density(4, seed);
    const HermitianEigen e = eig_hermitian(rho);
    for (std::size_t k = 0; k + 1 < 4; ++k) CHECK(e.values[k] >= e.values[k + 1]);
    CHECK(e.values.back() >= -1e-10);

    std::vector<Complex> lam(e.values.begin(), e.values.end());
    const ComplexMatrix rebuilt = e.vectors * ComplexMatrix::diagonal(lam) * e.vectors.adjoint();
    CHECK(max_abs_diff(rebuilt, rho) <= 1e-9);
    CHECK(max_abs_diff(e.vectors.adjoint() * e.vectors, ComplexMatrix::identity(4)) <= 1e-9);
  }
}

TEST_CASE("eig_hermitian rejects non-Hermitian input", "[linalg][error]") {
  const ComplexMatrix a{{1, 1}, {0, 1}};
  CHECK_THROWS_AS(eig_hermitian(a), NotHermitian);
  ComplexMatrix nearly = kZ;
  nearly(0, 1) = 5e-11;
  CHECK_NOTHROW(eig_hermitian(nearly));
}

TEST_CASE("condition_number", "[linalg]") {
  CHECK_THAT(condition_number(ComplexMatrix::identity(16)), WithinAbs(1.0, 1e-12));
  CHECK_THAT(condition_number(diag({1, 1e-4})), WithinAbs(1e4, 1e-6));
  CHECK(condition_number(diag({1, 1e-15})) == std::numeric_limits<double>::infinity());
  CHECK(condition_number(ComplexMatrix(3, 3)) == std::numeric_limits<double>::infinity());
}

TEST_CASE("condition numbers of Lambda at pi/8 and pi/16", "[linalg][regression]") {
  // The maximizer of |det| is not the minimizer of cond: cond rises slightly
  // at pi/8 even though |det| is eight times larger there.
  const double at_opt = condition_number(numeric_lambda({kPi / 8, kPi / 2}).lambda);
  const double at_16 = condition_number(numeric_lambda({kPi / 16, kPi / 2}).lambda);
  CHECK(std::isfinite(at_opt));
  CHECK_THAT(at_opt, WithinAbs(7.872983346207, 1e-9));
  CHECK_THAT(at_16, WithinAbs(6.510533781012, 1e-9));
  CHECK(at_opt > at_16);
}
