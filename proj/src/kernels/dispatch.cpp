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

#include <atomic>
#include <cstdlib>

#include "disclab/kernels.hpp"

namespace disclab::kernels {

namespace {

const KernelSet* detect() noexcept {
  if (const char* env = std::getenv("DISCLAB_KERNELS")) {
    std::string_view want(env);
    for (const KernelSet* k : available_kernels())
      if (want == k->name) return k;
  }
  if (const KernelSet* k = avx2_kernels()) return k;
  if (const KernelSet* k = neon_kernels()) return k;
  return &scalar_kernels();
}

std::atomic<const KernelSet*>& slot() noexcept {
  static std::atomic<const KernelSet*> current{detect()};
  return current;
}

} // namespace

std::vector<const KernelSet*> available_kernels() {
  std::vector<const KernelSet*> out{&scalar_kernels()};
  if (const KernelSet* k = avx2_kernels()) out.push_back(k);
  if (const KernelSet* k = neon_kernels()) out.push_back(k);
  return out;
}

const KernelSet& active() noexcept { return *slot().load(std::memory_order_acquire); }

bool select(std::string_view name) noexcept {
  for (const KernelSet* k : available_kernels()) {
    if (name == k->name) {
      slot().store(k, std::memory_order_release);
      return true;
    }
  }
  return false;
}

} // namespace disclab::kernels
