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

#pragma once

// Integer inner loops of the exact searches.
//
// The solvers rescale every rational row sum to a common denominator and
// then only ever add, subtract and compare int64 vectors. Callers guarantee
// (by checked precomputation of the largest possible magnitudes) that no
// kernel can overflow, so the kernels themselves are unchecked.
//
// Each kernel has a scalar reference implementation and, where the target
// supports it, an AVX2 (x86-64) or NEON (AArch64) variant. The variant is
// chosen once at startup from CPUID; DISCLAB_KERNELS=scalar forces the
// reference path. All variants must produce identical results.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace disclab::kernels {

struct KernelSet {
  const char* name;
  /// dst[i] = a[i] + b[i]
  void (*add)(std::int64_t* dst, const std::int64_t* a, const std::int64_t* b, std::size_t n);
  /// dst[i] = a[i] - b[i]
  void (*sub)(std::int64_t* dst, const std::int64_t* a, const std::int64_t* b, std::size_t n);
  /// max_i |v[i]|, 0 for n == 0
  std::int64_t (*max_abs)(const std::int64_t* v, std::size_t n);
  /// max_i max(0, acc[i] + lo[i], -(acc[i] + hi[i])): the largest distance
  /// from zero of any row's reachable interval [acc+lo, acc+hi].
  std::int64_t (*interval_gap)(const std::int64_t* acc, const std::int64_t* lo, const std::int64_t* hi,
                               std::size_t n);
};

const KernelSet& scalar_kernels() noexcept;
/// nullptr when the variant was not compiled in or the CPU lacks it.
const KernelSet* avx2_kernels() noexcept;
const KernelSet* neon_kernels() noexcept;

/// Every variant usable on this machine, scalar first.
std::vector<const KernelSet*> available_kernels();

/// The variant used by the solvers.
const KernelSet& active() noexcept;

/// Override the active variant ("scalar", "avx2", "neon"). Returns false
/// if that variant is unavailable. Not thread-safe against running solvers.
bool select(std::string_view name) noexcept;

} // namespace disclab::kernels
