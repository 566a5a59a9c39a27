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

#include "hafm/fft.h"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "hafm/errors.h"

namespace hafm {

namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto &entry : plans_) fftw_destroy_plan(entry.second);
  }

  fftw_plan Get(std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    // FFTW_ESTIMATE leaves the scratch buffers untouched; UNALIGNED lets the
    // plan run on any std::vector storage through fftw_execute_dft.
    std::vector<std::complex<double>> a(n), b(n);
    fftw_plan plan = fftw_plan_dft_1d(
        static_cast<int>(n), reinterpret_cast<fftw_complex *>(a.data()),
        reinterpret_cast<fftw_complex *>(b.data()), sign,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw ArgumentError("FFTW could not plan length " + std::to_string(n));
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache &Cache() {
  static PlanCache cache;
  return cache;
}

void Execute(std::span<const std::complex<double>> in,
             std::span<std::complex<double>> out, int sign) {
  if (in.size() != out.size()) throw ArgumentError("DFT input/output size mismatch");
  if (in.empty()) return;
  fftw_plan plan = Cache().Get(in.size(), sign);
  // fftw_execute_dft does not write to its input for out-of-place plans.
  fftw_execute_dft(plan,
                   reinterpret_cast<fftw_complex *>(
                       const_cast<std::complex<double> *>(in.data())),
                   reinterpret_cast<fftw_complex *>(out.data()));
}

}  // namespace

void DftForward(std::span<const std::complex<double>> in,
                std::span<std::complex<double>> out) {
  Execute(in, out, FFTW_FORWARD);
}

void DftBackward(std::span<const std::complex<double>> in,
                 std::span<std::complex<double>> out) {
  Execute(in, out, FFTW_BACKWARD);
}

}  // namespace hafm
