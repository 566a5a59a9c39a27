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

#include "hafm/pipeline.h"

#include <cmath>

#include "hafm/errors.h"

namespace hafm {

std::size_t MsToSamples(double ms, double sample_rate_hz) {
  if (!(ms > 0.0)) throw ArgumentError("duration in ms must be positive");
  double samples = std::round(ms * sample_rate_hz / 1000.0);
  return samples < 1.0 ? 1 : static_cast<std::size_t>(samples);
}

int WindowSamples(double win_ms, double sample_rate_hz) {
  if (!(win_ms > 0.0)) throw ArgumentError("window length must be positive");
  int samples = 2 * static_cast<int>(std::lround(win_ms * sample_rate_hz / 2000.0));
  return samples < 2 ? 2 : samples;
}

Analysis AnalyzeSignal(const Signal &signal, const F0Track &f0, const AnalysisParams &params) {
  const double rate = signal.sample_rate_hz();
  const std::size_t hop = MsToSamples(params.hop_ms, rate);
  Window window = HannWindow(WindowSamples(params.win_ms, rate));
  const std::size_t p = ChooseP(params.alignment, f0.Mean());
  NsgtPlan plan = BuildPlan(f0, hop, p, params.alignment.q, rate, signal.size());
  RaggedCoefficients coeffs = NsgtForward(signal.Resized(plan.signal_length()), plan, window);
  return Analysis{std::move(window), std::move(plan), std::move(coeffs), signal.size(), f0};
}

Analysis AnalyzeSignal(const Signal &signal, const std::vector<F0Point> &f0_points,
                       const AnalysisParams &params) {
  const double rate = signal.sample_rate_hz();
  const std::size_t hop = MsToSamples(params.hop_ms, rate);
  const std::size_t frames = PlanFrameCount(signal.size(), hop);
  return AnalyzeSignal(signal, SampleF0Track(f0_points, hop, frames, rate), params);
}

}  // namespace hafm
