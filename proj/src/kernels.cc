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

#include "deeprandom/kernels.h"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <numeric>

#include "deeprandom/error.h"

namespace deeprandom::kernels {
namespace {

int g_workers = 0;

// Lexicographic order of sorted index sets of equal size.
bool LexLess(uint32_t a, uint32_t b) {
  const uint32_t diff = a ^ b;
  return diff && (a & (diff & -diff));
}

std::vector<int> MaskToSet(uint32_t mask) {
  std::vector<int> out;
  for (int s = 0; mask; ++s, mask >>= 1) {
    if (mask & 1) out.push_back(s);
  }
  return out;
}

struct SweepState {
  int64_t max_key = INT64_MIN;
  double max_cut = 0;
  uint32_t max_mask = 0;
  int64_t min_key = INT64_MAX;
  double min_cut = 0;
  uint32_t min_mask = 0;
  uint64_t visited = 0;

  void Offer(double cut, uint32_t mask) {
    ++visited;
    const int64_t key = TieKey(cut);
    if (key > max_key || (key == max_key && LexLess(mask, max_mask))) {
      max_key = key;
      max_cut = cut;
      max_mask = mask;
    }
    if (key < min_key || (key == min_key && LexLess(mask, min_mask))) {
      min_key = key;
      min_cut = cut;
      min_mask = mask;
    }
  }

  void Merge(const SweepState& o) {
    if (o.visited == 0) return;
    visited += o.visited;
    if (o.max_key > max_key ||
        (o.max_key == max_key && LexLess(o.max_mask, max_mask))) {
      max_key = o.max_key;
      max_cut = o.max_cut;
      max_mask = o.max_mask;
    }
    if (o.min_key < min_key ||
        (o.min_key == min_key && LexLess(o.min_mask, min_mask))) {
      min_key = o.min_key;
      min_cut = o.min_cut;
      min_mask = o.min_mask;
    }
  }
};

struct SweepContext {
  const Eigen::MatrixXd* m;
  std::vector<double> row;
  int n;
  int half;
};

// Extends a partial set in increasing index order.
void Dfs(const SweepContext& ctx, int next, int count, uint32_t mask,
         double inner, double rows, SweepState& st) {
  if (count == ctx.half) {
    st.Offer(rows - inner, mask);
    return;
  }
  const Eigen::MatrixXd& m = *ctx.m;
  const int remaining = ctx.half - count;
  for (int u = next; u <= ctx.n - remaining; ++u) {
    double add = m(u, u);
    for (uint32_t rest = mask; rest; rest &= rest - 1) {
      add += 2.0 * m(u, std::countr_zero(rest));
    }
    Dfs(ctx, u + 1, count + 1, mask | (1u << u), inner + add,
        rows + ctx.row[u], st);
  }
}

SweepContext MakeContext(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  if (n % 2 != 0 || n < 2 || n > 32) {
    throw Error(ErrorCode::kInvalidInput, "subset sweep needs even n <= 32");
  }
  SweepContext ctx{&m, std::vector<double>(n), n, n / 2};
  for (int u = 0; u < n; ++u) ctx.row[u] = m.row(u).sum();
  return ctx;
}

SubsetExtremes Finish(const SweepState& st) {
  SubsetExtremes out;
  out.max_cut = st.max_cut;
  out.max_set = MaskToSet(st.max_mask);
  out.min_cut = st.min_cut;
  out.min_set = MaskToSet(st.min_mask);
  out.visited = st.visited;
  return out;
}

// Root of the sweep with index 0 fixed, then second element `second`.
void SweepBranch(const SweepContext& ctx, int second, SweepState& st) {
  const Eigen::MatrixXd& m = *ctx.m;
  if (ctx.half == 1) {
    if (second == 1) st.Offer(ctx.row[0] - m(0, 0), 1u);
    return;
  }
  const double inner = m(0, 0) + m(second, second) + 2.0 * m(0, second);
  Dfs(ctx, second + 1, 2, 1u | (1u << second), inner,
      ctx.row[0] + ctx.row[second], st);
}

struct PermState {
  int64_t key = INT64_MIN;
  double best = 0;
  std::vector<int> arg;
  double sum = 0;
  uint64_t visited = 0;
};

// All permutations with map[0] == first, in lexicographic order.
void PermBranch(int n, int first, const PermObjective& f, PermState& st) {
  std::vector<int> p(n);
  p[0] = first;
  for (int s = 0, t = 1; s < n; ++s) {
    if (s != first) p[t++] = s;
  }
  do {
    const double v = f(p);
    st.sum += v;
    ++st.visited;
    const int64_t key = TieKey(v);
    if (key > st.key) {
      st.key = key;
      st.best = v;
      st.arg = p;
    }
  } while (std::next_permutation(p.begin() + 1, p.end()));
}

PermSweepResult FinishPerm(const std::vector<PermState>& parts) {
  PermSweepResult out;
  int64_t key = INT64_MIN;
  for (const PermState& st : parts) {
    out.sum += st.sum;
    out.visited += st.visited;
    if (st.visited && st.key > key) {
      key = st.key;
      out.best = st.best;
      out.argmax = st.arg;
    }
  }
  return out;
}

void CheckPermSize(int n) {
  if (n < 1 || n > 10) {
    throw Error(ErrorCode::kCapability, "permutation sweep limited to n <= 10");
  }
}

}  // namespace

void SetWorkers(int workers) { g_workers = workers; }
int Workers() { return g_workers > 0 ? g_workers : omp_get_max_threads(); }

namespace serial {

SubsetExtremes SubsetSweep(const Eigen::MatrixXd& m) {
  const SweepContext ctx = MakeContext(m);
  SweepState st;
  for (int second = 1; second < ctx.n; ++second) SweepBranch(ctx, second, st);
  return Finish(st);
}

PermSweepResult PermSweep(int n, const PermObjective& f) {
  CheckPermSize(n);
  std::vector<PermState> parts(n);
  for (int first = 0; first < n; ++first) PermBranch(n, first, f, parts[first]);
  return FinishPerm(parts);
}

}  // namespace serial

namespace parallel {

SubsetExtremes SubsetSweep(const Eigen::MatrixXd& m) {
  const SweepContext ctx = MakeContext(m);
  std::vector<SweepState> parts(ctx.n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(Workers())
  for (int second = 1; second < ctx.n; ++second) {
    SweepBranch(ctx, second, parts[second]);
  }
  SweepState st;
  for (int second = 1; second < ctx.n; ++second) st.Merge(parts[second]);
  return Finish(st);
}

PermSweepResult PermSweep(int n, const PermObjective& f) {
  CheckPermSize(n);
  std::vector<PermState> parts(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(Workers())
  for (int first = 0; first < n; ++first) PermBranch(n, first, f, parts[first]);
  return FinishPerm(parts);
}

}  // namespace parallel
}  // namespace deeprandom::kernels
