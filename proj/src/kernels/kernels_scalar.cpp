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

namespace disclab::kernels {

namespace {

void add(std::int64_t* dst, const std::int64_t* a, const std::int64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] + b[i];
}

void sub(std::int64_t* dst, const std::int64_t* a, const std::int64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] - b[i];
}

std::int64_t max_abs(const std::int64_t* v, std::size_t n) {
  std::int64_t best = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t a = v[i] < 0 ? -v[i] : v[i];
    if (a > best) best = a;
  }
  return best;
}

std::int64_t interval_gap(const std::int64_t* acc, const std::int64_t* lo, const std::int64_t* hi, std::size_t n) {
  std::int64_t best = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t low = acc[i] + lo[i];
    std::int64_t high = acc[i] + hi[i];
    if (low > best) best = low;
    if (-high > best) best = -high;
  }
  return best;
}

} // namespace

const KernelSet& scalar_kernels() noexcept {
  static const KernelSet set{"scalar", add, sub, max_abs, interval_gap};
  return set;
}

} // namespace disclab::kernels
