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

#ifndef HAFM_MASK_IO_H_
#define HAFM_MASK_IO_H_

#include <cstddef>
#include <string>
#include <vector>

#include "hafm/mask.h"

namespace hafm {

// Contents of a HAFM file: the mask, the mu it was estimated with and the
// target system's native channel counts M^B_n.
struct MaskFile {
  FrameMask mask;
  double mu = 0.0;
  std::vector<std::size_t> target_native_M;
};

// HAFM layout, all little-endian:
//   "HAFM", u32 version = 1, u64 rows, u64 N, f64 mu,
//   rows*N column-major (f64 re, f64 im), then N x u64 M^B_n.
std::string EncodeMaskFile(const MaskFile &file);
MaskFile DecodeMaskFile(const std::string &bytes);

void WriteMaskFile(const MaskFile &file, const std::string &path);
MaskFile ReadMaskFile(const std::string &path);

}  // namespace hafm

#endif  // HAFM_MASK_IO_H_
