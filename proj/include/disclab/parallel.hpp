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

#include <cstddef>
#include <functional>

namespace disclab {

/// Worker count used when a config asks for 0 threads.
unsigned default_thread_count() noexcept;

/// Runs body(0) .. body(tasks-1), each exactly once, on up to `threads`
/// workers (0 = default_thread_count()). Tasks must write only to their own
/// output slot; the caller merges slots in index order, so results never
/// depend on the worker count. Every task runs even if another throws;
/// afterwards the exception of the lowest failing index is rethrown.
void run_tasks(std::size_t tasks, unsigned threads, const std::function<void(std::size_t)>& body);

} // namespace disclab
