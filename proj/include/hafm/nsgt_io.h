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

#ifndef HAFM_NSGT_IO_H_
#define HAFM_NSGT_IO_H_

#include <string>

#include "hafm/nsgt.h"

namespace hafm {

// NSGC layout, all little-endian:
//   "NSGC", u32 version = 1, u64 L, u64 a, u64 N, u64 p, u64 q, f64 rate,
//   N x u64 M_n, then frame-major coefficients as (f64 re, f64 im).
std::string EncodeCoefficients(const RaggedCoefficients &coeffs);
RaggedCoefficients DecodeCoefficients(const std::string &bytes);

void WriteCoefficientFile(const RaggedCoefficients &coeffs, const std::string &path);
RaggedCoefficients ReadCoefficientFile(const std::string &path);

}  // namespace hafm

#endif  // HAFM_NSGT_IO_H_
