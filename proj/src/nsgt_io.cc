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

#include "hafm/nsgt_io.h"

#include <fstream>
#include <sstream>

#include "binary_io.h"
#include "hafm/signal_io.h"
#include "hafm/errors.h"

namespace hafm {

namespace internal {

std::string ReadFileBytes(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path);
  return ss.str();
}

}  // namespace internal

namespace {
constexpr uint32_t kNsgcVersion = 1;
}

std::string EncodeCoefficients(const RaggedCoefficients &coeffs) {
  const NsgtPlan &plan = coeffs.plan();
  internal::ByteWriter w;
  w.Bytes("NSGC", 4);
  w.U32(kNsgcVersion);
  w.U64(plan.signal_length());
  w.U64(plan.time_hop());
  w.U64(plan.frame_count());
  w.U64(plan.p());
  w.U64(plan.q());
  w.F64(plan.sample_rate_hz());
  for (std::size_t m : plan.channel_counts()) w.U64(m);
  for (const auto &frame : coeffs.frames())
    for (const auto &c : frame) w.Complex(c);
  return w.str();
}

RaggedCoefficients DecodeCoefficients(const std::string &bytes) {
  internal::ByteReader r(bytes, "NSGC");
  r.Expect("NSGC", 4);
  uint32_t version = r.U32();
  if (version != kNsgcVersion)
    throw FormatError("NSGC: unsupported version " + std::to_string(version));
  uint64_t length = r.U64(), hop = r.U64(), frames = r.U64(), p = r.U64(), q = r.U64();
  double rate = r.F64();
  r.NeedItems(frames, 8);
  std::vector<std::size_t> counts(frames);
  uint64_t total = 0;
  for (auto &m : counts) {
    m = r.U64();
    if (m > length) throw FormatError("NSGC: channel count exceeds L");
    total += m;
  }
  r.NeedItems(total, 16);
  NsgtPlan plan = [&] {
    try {
      return NsgtPlan::FromChannelCounts(length, hop, counts, p, q, rate);
    } catch (const ArgumentError &e) {
      throw FormatError(std::string("NSGC: inconsistent plan: ") + e.what());
    }
  }();
  std::vector<std::vector<std::complex<double>>> data(frames);
  for (std::size_t n = 0; n < frames; n++) {
    data[n].resize(counts[n]);
    for (auto &c : data[n]) c = r.Complex();
  }
  r.ExpectEnd();
  return RaggedCoefficients(std::move(plan), std::move(data));
}

void WriteCoefficientFile(const RaggedCoefficients &coeffs, const std::string &path) {
  WriteFileAtomically(path, EncodeCoefficients(coeffs));
}

RaggedCoefficients ReadCoefficientFile(const std::string &path) {
  return DecodeCoefficients(internal::ReadFileBytes(path));
}

}  // namespace hafm
