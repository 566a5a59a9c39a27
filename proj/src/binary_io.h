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

// Little-endian encoders/decoders shared by the NSGC and HAFM formats.

#ifndef HAFM_BINARY_IO_H_
#define HAFM_BINARY_IO_H_

#include <bit>
#include <complex>
#include <cstdint>
#include <cstring>
#include <string>

#include "hafm/errors.h"

namespace hafm::internal {

class ByteWriter {
 public:
  void Bytes(const char *data, std::size_t n) { out_.append(data, n); }
  void U32(uint32_t v) { Put(v, 4); }
  void U64(uint64_t v) { Put(v, 8); }
  void F64(double v) { U64(std::bit_cast<uint64_t>(v)); }
  void Complex(std::complex<double> c) {
    F64(c.real());
    F64(c.imag());
  }
  const std::string &str() const { return out_; }

 private:
  void Put(uint64_t v, int width) {
    for (int i = 0; i < width; i++) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  std::string out_;
};

class ByteReader {
 public:
  ByteReader(const std::string &data, std::string what) : data_(data), what_(std::move(what)) {}

  void Expect(const char *magic, std::size_t n) {
    Need(n);
    if (std::memcmp(data_.data() + pos_, magic, n) != 0)
      throw FormatError(what_ + ": bad magic bytes");
    pos_ += n;
  }
  uint32_t U32() { return static_cast<uint32_t>(Get(4)); }
  uint64_t U64() { return Get(8); }
  double F64() { return std::bit_cast<double>(U64()); }
  std::complex<double> Complex() {
    double re = F64();
    return {re, F64()};
  }
  std::size_t remaining() const { return data_.size() - pos_; }
  void ExpectEnd() const {
    if (pos_ != data_.size()) throw FormatError(what_ + ": trailing bytes after payload");
  }
  // Throws unless at least count * width bytes remain; guards allocations
  // driven by header fields.
  void NeedItems(uint64_t count, uint64_t width) const {
    if (width != 0 && count > remaining() / width)
      throw FormatError(what_ + ": truncated payload");
  }

 private:
  void Need(std::size_t n) const {
    if (remaining() < n) throw FormatError(what_ + ": truncated payload");
  }
  uint64_t Get(int width) {
    Need(static_cast<std::size_t>(width));
    uint64_t v = 0;
    for (int i = 0; i < width; i++)
      v |= uint64_t(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    pos_ += static_cast<std::size_t>(width);
    return v;
  }

  const std::string &data_;
  std::string what_;
  std::size_t pos_ = 0;
};

std::string ReadFileBytes(const std::string &path);

}  // namespace hafm::internal

#endif  // HAFM_BINARY_IO_H_
