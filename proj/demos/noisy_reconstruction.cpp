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

// Reconstructs an amplitude-damping channel from data taken with depolarized
// Bell-state preparation and measurement, once with the full noise model and
// once with the contrast correction, and prints both estimates.

#include <cmath>
#include <cstdio>
#include <vector>

#include "dcqd/faulty.hpp"
#include "dcqd/shortcuts.hpp"

int main() {
  using namespace dcqd;
  const double gamma = 0.25;
  const std::vector<ComplexMatrix> kraus{{{1.0, 0.0}, {0.0, std::sqrt(1.0 - gamma)}},
                                         {{0.0, std::sqrt(gamma)}, {0.0, 0.0}}};
  const ChiMatrix1Q truth = chi_from_kraus<1>(kraus);

  FaultySetting setting;
  setting.chi_i = depolarizing_2q(0.9);
  setting.chi_f = depolarizing_2q(0.85);
  const ProbabilityVector data = sample_shots(total_map_probabilities(truth, setting), 200000, 42);

  const Reconstruction full = reconstruct_faulty(data, setting, {.symmetrize = true});
  std::printf("cond(Lambda) = %.3f  |det Lambda| = %.4e\n", full.cond, full.absdet);
  std::printf("%-6s %-24s %-24s\n", "entry", "true", "estimate");
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = a; b < 4; ++b) {
      const Complex t = truth.mat(a, b);
      const Complex e = full.chi.mat(a, b);
      std::printf("(%zu,%zu)  %+.4f%+.4fi          %+.4f%+.4fi\n", a, b, t.real(), t.imag(), e.real(), e.imag());
    }
  std::printf("smallest eigenvalue of the estimate: %.2e\n", full.psd_min_eig);
  return 0;
}
