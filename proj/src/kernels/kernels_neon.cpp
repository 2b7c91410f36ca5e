// Copyright 2026 The disclab Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "disclab/kernels.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)
#define DISCLAB_HAVE_NEON 1
#include <arm_neon.h>
#endif

namespace disclab::kernels {

#if DISCLAB_HAVE_NEON

namespace {

inline int64x2_t max_s64(int64x2_t a, int64x2_t b) { return vbslq_s64(vcgtq_s64(a, b), a, b); }

inline std::int64_t reduce_max(int64x2_t v) {
  std::int64_t a = vgetq_lane_s64(v, 0);
  std::int64_t b = vgetq_lane_s64(v, 1);
  return a > b ? a : b;
}

void add(std::int64_t* dst, const std::int64_t* a, const std::int64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_s64(dst + i, vaddq_s64(vld1q_s64(a + i), vld1q_s64(b + i)));
  for (; i < n; ++i) dst[i] = a[i] + b[i];
}

void sub(std::int64_t* dst, const std::int64_t* a, const std::int64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_s64(dst + i, vsubq_s64(vld1q_s64(a + i), vld1q_s64(b + i)));
  for (; i < n; ++i) dst[i] = a[i] - b[i];
}

std::int64_t max_abs(const std::int64_t* v, std::size_t n) {
  int64x2_t best = vdupq_n_s64(0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) best = max_s64(best, vabsq_s64(vld1q_s64(v + i)));
  std::int64_t out = reduce_max(best);
  for (; i < n; ++i) {
    std::int64_t a = v[i] < 0 ? -v[i] : v[i];
    if (a > out) out = a;
  }
  return out;
}

std::int64_t interval_gap(const std::int64_t* acc, const std::int64_t* lo, const std::int64_t* hi, std::size_t n) {
  int64x2_t best = vdupq_n_s64(0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    int64x2_t va = vld1q_s64(acc + i);
    int64x2_t low = vaddq_s64(va, vld1q_s64(lo + i));
    int64x2_t neg_high = vnegq_s64(vaddq_s64(va, vld1q_s64(hi + i)));
    best = max_s64(best, max_s64(low, neg_high));
  }
  std::int64_t out = reduce_max(best);
  for (; i < n; ++i) {
    std::int64_t low = acc[i] + lo[i];
    std::int64_t high = acc[i] + hi[i];
    if (low > out) out = low;
    if (-high > out) out = -high;
  }
  return out;
}

} // namespace

const KernelSet* neon_kernels() noexcept {
  static const KernelSet set{"neon", add, sub, max_abs, interval_gap};
  return &set;
}

#else

const KernelSet* neon_kernels() noexcept { return nullptr; }

#endif

} // namespace disclab::kernels
