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

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define DISCLAB_HAVE_AVX2 1
#include <immintrin.h>
#endif

namespace disclab::kernels {

#if DISCLAB_HAVE_AVX2

namespace {

#define DISCLAB_AVX2 __attribute__((target("avx2")))

// AVX2 has no 64-bit max or abs; both go through cmpgt + blend.

DISCLAB_AVX2 inline __m256i max_epi64(__m256i a, __m256i b) {
  return _mm256_blendv_epi8(b, a, _mm256_cmpgt_epi64(a, b));
}

DISCLAB_AVX2 inline std::int64_t reduce_max(__m256i v) {
  alignas(32) std::int64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  std::int64_t best = lanes[0];
  for (int i = 1; i < 4; ++i)
    if (lanes[i] > best) best = lanes[i];
  return best;
}

DISCLAB_AVX2 void add(std::int64_t* dst, const std::int64_t* a, const std::int64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_add_epi64(va, vb));
  }
  for (; i < n; ++i) dst[i] = a[i] + b[i];
}

DISCLAB_AVX2 void sub(std::int64_t* dst, const std::int64_t* a, const std::int64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_sub_epi64(va, vb));
  }
  for (; i < n; ++i) dst[i] = a[i] - b[i];
}

DISCLAB_AVX2 std::int64_t max_abs(const std::int64_t* v, std::size_t n) {
  const __m256i zero = _mm256_setzero_si256();
  __m256i best = zero;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(v + i));
    __m256i sign = _mm256_cmpgt_epi64(zero, x);
    __m256i ax = _mm256_sub_epi64(_mm256_xor_si256(x, sign), sign);
    best = max_epi64(best, ax);
  }
  std::int64_t out = reduce_max(best);
  for (; i < n; ++i) {
    std::int64_t a = v[i] < 0 ? -v[i] : v[i];
    if (a > out) out = a;
  }
  return out;
}

DISCLAB_AVX2 std::int64_t interval_gap(const std::int64_t* acc, const std::int64_t* lo, const std::int64_t* hi,
                                       std::size_t n) {
  const __m256i zero = _mm256_setzero_si256();
  __m256i best = zero;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc + i));
    __m256i vlo = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(lo + i));
    __m256i vhi = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(hi + i));
    __m256i low = _mm256_add_epi64(va, vlo);
    __m256i neg_high = _mm256_sub_epi64(zero, _mm256_add_epi64(va, vhi));
    best = max_epi64(best, max_epi64(low, neg_high));
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

#undef DISCLAB_AVX2

} // namespace

const KernelSet* avx2_kernels() noexcept {
  static const KernelSet set{"avx2", add, sub, max_abs, interval_gap};
  if (!__builtin_cpu_supports("avx2")) return nullptr;
  return &set;
}

#else

const KernelSet* avx2_kernels() noexcept { return nullptr; }

#endif

} // namespace disclab::kernels
