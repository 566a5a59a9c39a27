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

#include "hafm/parallel.h"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace hafm {

std::size_t WorkerCount() {
  static const std::size_t count = [] {
    std::size_t n = 0;
    if (const char *env = std::getenv("HAFM_THREADS")) {
      try {
        n = static_cast<std::size_t>(std::stoul(env));
      } catch (const std::exception &) {
        n = 0;
      }
    }
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    return n;
  }();
  return count;
}

void ParallelFor(std::size_t count, const std::function<void(std::size_t)> &body) {
  std::size_t workers = std::min(WorkerCount(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; i++) body(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; w++) {
    std::size_t begin = w * chunk, end = std::min(count, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; i++) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto &t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace hafm
