// Copyright 2026  hafm authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef HAFM_PARALLEL_H_
#define HAFM_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace hafm {

// Number of worker threads to use. Reads HAFM_THREADS once; 0 or unset means
// hardware concurrency.
std::size_t WorkerCount();

// Calls body(i) for every i in [0, count). Work is split into contiguous
// chunks; each index is visited exactly once. The body must only write to
// state owned by index i so results do not depend on the thread count.
void ParallelFor(std::size_t count, const std::function<void(std::size_t)> &body);

}  // namespace hafm

#endif  // HAFM_PARALLEL_H_
