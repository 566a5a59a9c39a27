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

#include "hafm/mask_io.h"

#include "binary_io.h"
#include "hafm/errors.h"
#include "hafm/signal_io.h"

namespace hafm {

namespace {
constexpr uint32_t kHafmVersion = 1;
}

std::string EncodeMaskFile(const MaskFile &file) {
  const ComplexMatrix &sigma = file.mask.sigma;
  if (file.target_native_M.size() != sigma.cols())
    throw ArgumentError("need one native channel count per mask column");
  internal::ByteWriter w;
  w.Bytes("HAFM", 4);
  w.U32(kHafmVersion);
  w.U64(sigma.rows());
  w.U64(sigma.cols());
  w.F64(file.mu);
  for (const auto &c : sigma.data()) w.Complex(c);
  for (std::size_t m : file.target_native_M) w.U64(m);
  return w.str();
}

MaskFile DecodeMaskFile(const std::string &bytes) {
  internal::ByteReader r(bytes, "HAFM");
  r.Expect("HAFM", 4);
  uint32_t version = r.U32();
  if (version != kHafmVersion)
    throw FormatError("HAFM: unsupported version " + std::to_string(version));
  uint64_t rows = r.U64(), cols = r.U64();
  MaskFile file;
  file.mu = r.F64();
  if (rows != 0 && cols > UINT64_MAX / rows) throw FormatError("HAFM: shape overflow");
  r.NeedItems(rows * cols, 16);
  file.mask.sigma = ComplexMatrix(rows, cols);
  for (auto &c : file.mask.sigma.data()) c = r.Complex();
  r.NeedItems(cols, 8);
  file.target_native_M.resize(cols);
  for (auto &m : file.target_native_M) {
    m = r.U64();
    if (m == 0 || m > rows) throw FormatError("HAFM: native channel count out of range");
  }
  r.ExpectEnd();
  return file;
}

void WriteMaskFile(const MaskFile &file, const std::string &path) {
  WriteFileAtomically(path, EncodeMaskFile(file));
}

MaskFile ReadMaskFile(const std::string &path) {
  return DecodeMaskFile(internal::ReadFileBytes(path));
}

}  // namespace hafm
