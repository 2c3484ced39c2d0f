// Copyright 2026 The dpsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPSYNTH_COMMON_PARALLEL_H_
#define DPSYNTH_COMMON_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace dpsynth {

// Number of worker threads to use when a caller passes threads <= 0.
int DefaultThreadCount();

// Calls fn(i) for every i in [0, count), spreading the indices over up to
// `threads` workers. Each index is visited exactly once; callers write
// results into per-index slots so the outcome never depends on scheduling.
// The first exception thrown by any call is rethrown after all workers stop.
void ParallelFor(size_t count, int threads,
                 const std::function<void(size_t)>& fn);

}  // namespace dpsynth

#endif  // DPSYNTH_COMMON_PARALLEL_H_
