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

#ifndef HAFM_FEATURES_H_
#define HAFM_FEATURES_H_

#include <cstddef>
#include <string>
#include <vector>

#include "hafm/mask.h"

namespace hafm {

struct FeatureVector {
  std::vector<double> values;
  std::string source_label;
  std::size_t source_column = 0;  // nA
  std::size_t target_column = 0;  // nB

  bool operator==(const FeatureVector &) const = default;
};

enum class PairingMode { kAligned, kAllPairs };

// kAligned pairs column n with column n. kAllPairs pairs every source column
// with every target column in row-major (nA, nB) order, keeping the first
// max_pairs.
struct PairingPolicy {
  PairingMode mode = PairingMode::kAllPairs;
  std::size_t max_pairs = std::size_t{1} << 20;
};

// kMagnitude emits |sigma| (D values). kRealImag emits Re sigma followed by
// Im sigma, each truncated or zero-padded to D, for 2D values in total.
enum class FeatureMapping { kMagnitude, kRealImag };

// For each selected column pair, the single-column Tikhonov mask from
// C^A[:, nA] to C^B[:, nB], as magnitudes truncated or zero-padded to
// `dimension` entries. A matrix sigma_ref is indexed by column nA.
std::vector<FeatureVector> ExtractFeatures(const AlignedCoefficients &source,
                                           const AlignedCoefficients &target,
                                           const MaskEstimationConfig &config,
                                           const PairingPolicy &policy,
                                           std::size_t dimension,
                                           const std::string &label = "",
                                           FeatureMapping mapping = FeatureMapping::kMagnitude);

// Header "label,nA,nB,f0,...,f{D-1}"; labels must not contain commas or
// newlines. Values are printed with 17 significant digits.
void WriteFeaturesCsv(const std::vector<FeatureVector> &features, const std::string &path);
std::string FormatFeaturesCsv(const std::vector<FeatureVector> &features);
std::vector<FeatureVector> ReadFeaturesCsv(const std::string &path);
std::vector<FeatureVector> ParseFeaturesCsv(const std::string &text);

}  // namespace hafm

#endif  // HAFM_FEATURES_H_
