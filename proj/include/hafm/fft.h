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

#ifndef HAFM_FFT_H_
#define HAFM_FFT_H_

#include <complex>
#include <span>

namespace hafm {

// Unnormalized DFT of arbitrary length n = in.size() = out.size():
//   forward:  out[m] = sum_k in[k] exp(-2 pi i m k / n)
//   backward: out[k] = sum_m in[m] exp(+2 pi i m k / n)
// Safe to call concurrently; plans are cached per (length, direction).
void DftForward(std::span<const std::complex<double>> in,
                std::span<std::complex<double>> out);
void DftBackward(std::span<const std::complex<double>> in,
                 std::span<std::complex<double>> out);

}  // namespace hafm

#endif  // HAFM_FFT_H_
