// Copyright 2026 The tpk Authors
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

namespace tpk {

/// Worker count: TPK_THREADS if set and positive, else the hardware
/// concurrency, never less than 1.
unsigned worker_count();

/// Calls body(i) for every i in [0, count) across worker_count() threads.
/// Results must be written to per-index slots; the first exception thrown
/// by any body is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)> &body);

}  // namespace tpk
