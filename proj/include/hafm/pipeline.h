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

#ifndef HAFM_PIPELINE_H_
#define HAFM_PIPELINE_H_

#include <cstddef>
#include <vector>

#include "hafm/mask.h"
#include "hafm/nsgt.h"
#include "hafm/signal_io.h"
#include "hafm/windows.h"

namespace hafm {

// Analysis settings in physical units.
struct AnalysisParams {
  double win_ms = 20.0;
  double hop_ms = 4.0;
  AlignmentParams alignment;  // p rule and q
};

// round(ms * rate / 1000), at least 1.
std::size_t MsToSamples(double ms, double sample_rate_hz);

// Hann support in samples for a window length in ms, rounded to an even count.
int WindowSamples(double win_ms, double sample_rate_hz);

// Plan, window and coefficients of one signal.
struct Analysis {
  Window window;
  NsgtPlan plan;
  RaggedCoefficients coeffs;
  std::size_t raw_length;
  F0Track f0;
};

// Zero-pads the signal to the plan length, samples the f0 points per frame,
// picks p from the alignment rule and the mean f0, and runs the forward
// transform.
Analysis AnalyzeSignal(const Signal &signal, const std::vector<F0Point> &f0_points,
                       const AnalysisParams &params);

// Same with an f0 track that already has one value per plan frame.
Analysis AnalyzeSignal(const Signal &signal, const F0Track &f0, const AnalysisParams &params);

}  // namespace hafm

#endif  // HAFM_PIPELINE_H_
