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

#ifndef HAFM_TESTS_TEST_UTIL_H_
#define HAFM_TESTS_TEST_UTIL_H_

#include <filesystem>
#include <string>
#include <unistd.h>

namespace hafm::testing {

// Fresh per-process scratch directory under the system temp dir.
inline std::string ScratchPath(const std::string &name) {
  auto dir = std::filesystem::temp_directory_path() /
             ("hafm-test-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

inline void WriteText(const std::string &path, const std::string &text);

struct CommandResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr
};

// Runs a shell command line and captures its combined output.
inline CommandResult RunCommand(const std::string &command_line);

}  // namespace hafm::testing

#include <array>
#include <cstdio>
#include <fstream>
#include <sys/wait.h>

inline void hafm::testing::WriteText(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline hafm::testing::CommandResult hafm::testing::RunCommand(const std::string &command_line) {
  CommandResult result;
  FILE *pipe = ::popen((command_line + " 2>&1").c_str(), "r");
  if (!pipe) return result;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) result.output.append(buf.data(), got);
  int status = ::pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

#endif  // HAFM_TESTS_TEST_UTIL_H_
