/*
 * Copyright 2026 The ranklosslab Authors.
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

#ifndef RANKLOSSLAB_PARALLEL_H_
#define RANKLOSSLAB_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace ranklosslab {

// Worker cap: RANKLOSSLAB_THREADS when set to a positive integer, otherwise
// the hardware concurrency (at least 1).
int MaxWorkerThreads();

// Runs fn(0) ... fn(count - 1) on up to `workers` threads. Every index runs
// exactly once; the first exception thrown is rethrown after all workers
// join.
void ParallelFor(std::size_t count, int workers,
                 const std::function<void(std::size_t)>& fn);

}  // namespace ranklosslab

#endif  // RANKLOSSLAB_PARALLEL_H_
