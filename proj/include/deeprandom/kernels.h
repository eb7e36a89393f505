/*
 * Copyright 2026 The Deep Random Lab Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef DEEPRANDOM_KERNELS_H_
#define DEEPRANDOM_KERNELS_H_

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

// Exhaustive sweeps shared by the distribution and adversary code. Each
// sweep has a serial reference and an OpenMP version that must agree
// bit-for-bit on the selected witness.
namespace deeprandom::kernels {

// Values closer than this are ties; ties go to the lexicographically
// smallest candidate.
inline constexpr double kTieQuantum = 1e-12;

inline int64_t TieKey(double v) {
  return static_cast<int64_t>(std::llround(v / kTieQuantum));
}

// Extremes of cut(I) = sum_{u in I, v not in I} M(u, v) over half-size
// subsets I containing index 0.
struct SubsetExtremes {
  double max_cut = 0;
  std::vector<int> max_set;
  double min_cut = 0;
  std::vector<int> min_set;
  uint64_t visited = 0;
};

// Objective over permutations, given as the image map.
using PermObjective = std::function<double(const std::vector<int>&)>;

struct PermSweepResult {
  double best = 0;
  std::vector<int> argmax;
  double sum = 0;
  uint64_t visited = 0;
};

namespace serial {
SubsetExtremes SubsetSweep(const Eigen::MatrixXd& m);
PermSweepResult PermSweep(int n, const PermObjective& f);
}  // namespace serial

namespace parallel {
SubsetExtremes SubsetSweep(const Eigen::MatrixXd& m);
PermSweepResult PermSweep(int n, const PermObjective& f);
}  // namespace parallel

// Worker count used by the parallel kernels (0 = OpenMP default).
void SetWorkers(int workers);
int Workers();

}  // namespace deeprandom::kernels

#endif  // DEEPRANDOM_KERNELS_H_
