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

#ifndef HAFM_TOOLS_CLI_COMMANDS_H_
#define HAFM_TOOLS_CLI_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "hafm/pipeline.h"

namespace hafm::cli {

// Thrown for flag combinations CLI11 cannot express; exits with status 2.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string &what) : std::runtime_error(what) {}
};

struct PlanFlags {
  double win_ms = 20.0;
  double hop_ms = 4.0;
  std::size_t q = 75;
  std::string p_mode = "anchor";  // anchor | unit
  double anchor_hz = 280.0;

  AnalysisParams ToParams() const;
};

// Where a signal's f0 comes from: a CSV track or the built-in estimator.
struct F0Source {
  std::string csv_path;
  bool estimate = false;
  double fmin_hz = 60.0;
  double fmax_hz = 400.0;
  double estimator_window_ms = 40.0;
};

struct AnalyzeOptions {
  std::string input;
  std::string output;
  F0Source f0;
  PlanFlags plan;
  bool allow_nonpainless = false;
};

struct SynthOptions {
  std::string input;
  std::string output;
  double win_ms = 20.0;
  std::optional<std::size_t> length;
};

struct PairOptions {
  std::string source;
  std::string target;
  F0Source source_f0;
  F0Source target_f0;
  PlanFlags plan;
  double mu = 1e-7;
};

struct MaskOptions {
  PairOptions pair;
  std::string output;
};

struct ConvertOptions {
  std::string source;
  F0Source source_f0;
  std::string mask;
  PlanFlags plan;
  std::string output;
};

struct FeaturesOptions {
  PairOptions pair;
  std::string output;
  std::string pairing = "all";  // all | aligned
  std::size_t max_pairs = std::size_t{1} << 20;
  std::size_t dimension = 0;    // 0: common row count
  std::string label = "source";
  std::string values = "magnitude";  // magnitude | complex
};

struct F0Options {
  std::string input;
  std::string output;
  double hop_ms = 4.0;
  F0Source estimator;
};

struct EvalDemoOptions {
  uint64_t seed = 7;
  std::size_t trials = 5;
  PlanFlags plan;
  double mu = 1e-7;
  std::size_t dimension = 1200;
  bool shuffle_labels = false;
  std::string features_csv;
};

int RunAnalyze(const AnalyzeOptions &opts);
int RunSynth(const SynthOptions &opts);
int RunMask(const MaskOptions &opts);
int RunConvert(const ConvertOptions &opts);
int RunFeatures(const FeaturesOptions &opts);
int RunF0(const F0Options &opts);
int RunEvalDemo(const EvalDemoOptions &opts);

}  // namespace hafm::cli

#endif  // HAFM_TOOLS_CLI_COMMANDS_H_
