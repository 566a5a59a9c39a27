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

#ifndef HAFM_ERRORS_H_
#define HAFM_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hafm {

// Bad argument or violated precondition.
class ArgumentError : public std::invalid_argument {
 public:
  explicit ArgumentError(const std::string &what) : std::invalid_argument(what) {}
};

// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string &what) : std::runtime_error(what) {}
};

// File content is structurally wrong (bad magic, unsupported encoding,
// truncated payload).
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string &what) : std::runtime_error(what) {}
};

// Text input rejected at a specific line (1-based).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string &what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Shifted windows leave some sample uncovered, so the frame operator is
// singular.
class CoverageError : public std::runtime_error {
 public:
  explicit CoverageError(const std::string &what) : std::runtime_error(what) {}
};

}  // namespace hafm

#endif  // HAFM_ERRORS_H_
