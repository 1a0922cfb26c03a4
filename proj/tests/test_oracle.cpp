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
#include "dcqd/oracle.hpp"
#include "dcqd/protocol.hpp"
#include "test_support.hpp"

using namespace dcqd;
using dcqd::testing::kPi;

// Standard process tomography with four single-qubit probes: a reference that
// shares no code with the Bell-measurement pipeline.

TEST_CASE("oracle recovers simple channels", "[oracle]") {
  CHECK(max_abs_diff(oracle::standard_qpt(ChiMatrix1Q::identity()).mat, ChiMatrix1Q::identity().mat) <= 1e-14);

  ChiMatrix1Q flip;
  flip.mat(0, 0) = 0.7;
  flip.mat(1, 1) = 0.3;
  CHECK(max_abs_diff(oracle::standard_qpt(flip).mat, flip.mat) <= 1e-14);

  const ChiMatrix1Q rot = unitary_channel<1>(rotation(PauliIndex{2}, 0.9));
  CHECK(max_abs_diff(oracle::standard_qpt(rot).mat, rot.mat) <= 1e-14);
}

TEST_CASE("oracle agrees with the Bell-measurement reconstruction", "[oracle][property]") {
  const InputParams p{kPi / 8, kPi / 2};
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const ChiMatrix1Q chi = random_channel_1q(seed, true, seed % 4 == 0);
    const ChiMatrix1Q ref = oracle::standard_qpt(chi);
    CHECK(max_abs_diff(ref.mat, chi.mat) <= 1e-10);
    CHECK(max_abs_diff(reconstruct_ideal(simulate_probabilities(chi, p), p).chi.mat, ref.mat) <= 1e-9);
  }
}

TEST_CASE("oracle handles trace-decreasing maps", "[oracle]") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const ChiMatrix1Q chi = random_channel_1q(seed, false, false);
    CHECK(max_abs_diff(oracle::standard_qpt(chi).mat, chi.mat) <= 1e-12);
  }
}
