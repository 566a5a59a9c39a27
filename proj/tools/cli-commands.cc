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

#include "cli-commands.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>

#include "hafm/errors.h"
#include "hafm/eval_harness.h"
#include "hafm/features.h"
#include "hafm/mask.h"
#include "hafm/mask_io.h"
#include "hafm/nsgt_io.h"

namespace hafm::cli {

AnalysisParams PlanFlags::ToParams() const {
  AnalysisParams params;
  params.win_ms = win_ms;
  params.hop_ms = hop_ms;
  params.alignment.q = q;
  params.alignment.anchor_hz = anchor_hz;
  if (p_mode == "anchor") {
    params.alignment.mode = AlignmentMode::kAnchor;
  } else if (p_mode == "unit") {
    params.alignment.mode = AlignmentMode::kUnitP;
  } else {
    throw UsageError("--p-mode must be 'anchor' or 'unit'");
  }
  if (q == 0) throw UsageError("--q must be positive");
  return params;
}

namespace {

std::vector<F0Point> LoadF0(const Signal &signal, const F0Source &source, double hop_ms) {
  if (!source.csv_path.empty() && source.estimate)
    throw UsageError("give either an f0 CSV or --estimate-f0, not both");
  if (!source.csv_path.empty()) return ReadF0Csv(source.csv_path);
  if (!source.estimate) throw UsageError("no f0 source: pass an f0 CSV or --estimate-f0");
  const double rate = signal.sample_rate_hz();
  const std::size_t hop = MsToSamples(hop_ms, rate);
  F0Track track = EstimateF0Autocorrelation(signal, hop,
                                            MsToSamples(source.estimator_window_ms, rate),
                                            source.fmin_hz, source.fmax_hz);
  std::vector<F0Point> points(track.size());
  for (std::size_t n = 0; n < track.size(); n++)
    points[n] = {static_cast<double>(n * hop) / rate, track.values()[n]};
  return points;
}

void RequirePainless(const Analysis &a, const std::string &what) {
  if (!IsPainless(a.plan, a.window))
    throw ArgumentError(what + ": plan is not painless (min M_n " +
                        std::to_string(a.plan.MinChannels()) + " < window support " +
                        std::to_string(WindowSupportLength(a.window)) + ")");
}

double SnrDb(const std::vector<double> &reference, const std::vector<double> &test) {
  double signal = 0.0, noise = 0.0;
  for (std::size_t i = 0; i < reference.size(); i++) {
    signal += reference[i] * reference[i];
    double d = reference[i] - (i < test.size() ? test[i] : 0.0);
    noise += d * d;
  }
  if (noise == 0.0) return INFINITY;
  return 10.0 * std::log10(signal / noise);
}

struct PairAnalysis {
  Analysis source;
  Analysis target;
  std::size_t rows;
};

PairAnalysis AnalyzePair(const PairOptions &opts) {
  Signal source = ReadWav(opts.source);
  Signal target = ReadWav(opts.target);
  if (source.sample_rate_hz() != target.sample_rate_hz())
    throw ArgumentError("source and target sample rates differ");
  if (source.size() != target.size()) {
    std::size_t shorter = std::min(source.size(), target.size());
    std::cerr << "hafm: warning: trimming source (" << source.size() << ") and target ("
              << target.size() << ") to " << shorter << " samples\n";
    source = source.Resized(shorter);
    target = target.Resized(shorter);
  }
  const AnalysisParams params = opts.plan.ToParams();
  Analysis a = AnalyzeSignal(source, LoadF0(source, opts.source_f0, opts.plan.hop_ms), params);
  Analysis b = AnalyzeSignal(target, LoadF0(target, opts.target_f0, opts.plan.hop_ms), params);
  RequirePainless(a, "source");
  RequirePainless(b, "target");
  std::size_t rows = CommonRowCount(a.plan, b.plan);
  return PairAnalysis{std::move(a), std::move(b), rows};
}

}  // namespace

int RunAnalyze(const AnalyzeOptions &opts) {
  Signal signal = ReadWav(opts.input);
  Analysis a = AnalyzeSignal(signal, LoadF0(signal, opts.f0, opts.plan.hop_ms),
                             opts.plan.ToParams());
  bool painless = IsPainless(a.plan, a.window);
  if (!painless && !opts.allow_nonpainless) RequirePainless(a, "analyze");
  WriteCoefficientFile(a.coeffs, opts.output);
  std::printf("L=%zu a=%zu N=%zu W=%zu p=%zu q=%zu rate=%g\n", a.plan.signal_length(),
              a.plan.time_hop(), a.plan.frame_count(), WindowSupportLength(a.window),
              a.plan.p(), a.plan.q(), a.plan.sample_rate_hz());
  std::printf("M_n in [%zu, %zu]\n", a.plan.MinChannels(), a.plan.MaxChannels());
  std::printf("painless: %s\n", painless ? "yes" : "no (synthesis disabled)");
  std::printf("max hop-snap relative deviation: %.6g\n", a.plan.MaxHopDeviation());
  return 0;
}

int RunSynth(const SynthOptions &opts) {
  RaggedCoefficients coeffs = ReadCoefficientFile(opts.input);
  Window window = HannWindow(WindowSamples(opts.win_ms, coeffs.plan().sample_rate_hz()));
  if (!IsPainless(coeffs.plan(), window))
    throw ArgumentError("coefficients come from a non-painless plan; cannot synthesize");
  Signal out = NsgtInverse(coeffs, window);
  if (opts.length) {
    if (*opts.length == 0 || *opts.length > out.size())
      throw ArgumentError("--length must be in [1, L]");
    out = out.Resized(*opts.length);
  }
  WriteWav(out, opts.output);
  return 0;
}

int RunMask(const MaskOptions &opts) {
  PairAnalysis pair = AnalyzePair(opts.pair);
  AlignedCoefficients ca = AlignExtend(pair.source.coeffs, pair.rows);
  AlignedCoefficients cb = AlignExtend(pair.target.coeffs, pair.rows);
  MaskEstimationConfig config{opts.pair.mu, std::nullopt};
  FrameMask mask = EstimateMaskTikhonov(ca, cb, config);
  WriteMaskFile(MaskFile{mask, config.mu, pair.target.plan.channel_counts()}, opts.output);

  double objective = MaskObjective(mask, ca.matrix, cb.matrix, config);
  MaskEstimationConfig fit_only{0.0, std::nullopt};
  double residual = MaskObjective(mask, ca.matrix, cb.matrix, fit_only);
  double target_energy = 0.0;
  for (const auto &c : cb.matrix.data()) target_energy += std::norm(c);
  std::printf("rows=%zu N=%zu p_source=%zu p_target=%zu mu=%g\n", pair.rows,
              ca.matrix.cols(), pair.source.plan.p(), pair.target.plan.p(), config.mu);
  std::printf("objective %.17g\n", objective);
  std::printf("residual %.17g relative %.6g\n", residual,
              target_energy > 0.0 ? residual / target_energy : 0.0);
  return 0;
}

int RunConvert(const ConvertOptions &opts) {
  Signal source = ReadWav(opts.source);
  MaskFile file = ReadMaskFile(opts.mask);
  Analysis a = AnalyzeSignal(source, LoadF0(source, opts.source_f0, opts.plan.hop_ms),
                             opts.plan.ToParams());
  RequirePainless(a, "source");
  const ComplexMatrix &sigma = file.mask.sigma;
  if (sigma.cols() != a.plan.frame_count())
    throw ArgumentError("mask has " + std::to_string(sigma.cols()) +
                        " frames, source plan has " + std::to_string(a.plan.frame_count()));
  if (sigma.rows() < a.plan.MaxChannels())
    throw ArgumentError("mask has fewer rows than the source plan's channels");
  NsgtPlan target_plan = NsgtPlan::FromChannelCounts(
      a.plan.signal_length(), a.plan.time_hop(), file.target_native_M, a.plan.p(),
      a.plan.q(), a.plan.sample_rate_hz());
  if (!IsPainless(target_plan, a.window))
    throw ArgumentError("target plan stored in the mask is not painless");
  Signal out = ApplyMask(file.mask, AlignExtend(a.coeffs, sigma.rows()), target_plan, a.window);
  WriteWav(out.Resized(a.raw_length), opts.output);
  std::printf("snr_vs_source_db %.3f\n", SnrDb(source.samples(), out.samples()));
  return 0;
}

int RunFeatures(const FeaturesOptions &opts) {
  PairingPolicy policy;
  if (opts.pairing == "all") {
    policy.mode = PairingMode::kAllPairs;
  } else if (opts.pairing == "aligned") {
    policy.mode = PairingMode::kAligned;
  } else {
    throw UsageError("--pairing must be 'all' or 'aligned'");
  }
  policy.max_pairs = opts.max_pairs;
  PairAnalysis pair = AnalyzePair(opts.pair);
  MaskEstimationConfig config{opts.pair.mu, std::nullopt};
  auto features = ExtractFeatures(AlignExtend(pair.source.coeffs, pair.rows),
                                  AlignExtend(pair.target.coeffs, pair.rows), config, policy,
                                  opts.dimension == 0 ? pair.rows : opts.dimension, opts.label,
                                  opts.values == "complex" ? FeatureMapping::kRealImag
                                                           : FeatureMapping::kMagnitude);
  WriteFeaturesCsv(features, opts.output);
  std::printf("%zu feature vectors of dimension %zu\n", features.size(),
              features.front().values.size());
  return 0;
}

int RunF0(const F0Options &opts) {
  Signal signal = ReadWav(opts.input);
  F0Source source = opts.estimator;
  source.estimate = true;
  source.csv_path.clear();
  WriteF0Csv(LoadF0(signal, source, opts.hop_ms), opts.output);
  return 0;
}

int RunEvalDemo(const EvalDemoOptions &opts) {
  const std::vector<SyntheticSpeaker> speakers = {
      {{118.0, 124.0, 120.0}, {300.0, 2300.0}, {60.0, 100.0}, "spk_iy"},
      {{126.0, 122.0, 128.0}, {700.0, 1100.0}, {70.0, 90.0}, "spk_aa"},
  };
  const SyntheticSpeaker reference{{130.0}, {500.0, 1500.0}, {80.0, 100.0}, "reference"};

  ComparisonConfig config;
  AnalysisParams params = opts.plan.ToParams();
  config.win_ms = params.win_ms;
  config.hop_ms = params.hop_ms;
  config.alignment = params.alignment;
  config.mu = opts.mu;
  config.dimension = opts.dimension;
  config.seed = opts.seed;
  config.shuffle_labels = opts.shuffle_labels;

  auto utterances = ComputeSpeakerFeatures(speakers, reference, opts.trials, config);
  std::vector<std::string> labels;
  for (const auto &s : speakers) labels.push_back(s.label);
  ComparisonResult result =
      ScoreNearestCentroid(utterances, labels, config.shuffle_labels, config.seed);
  std::printf("seed %llu speakers %zu utterances_per_speaker %zu%s\n",
              static_cast<unsigned long long>(opts.seed), speakers.size(), 2 * opts.trials,
              opts.shuffle_labels ? " (labels shuffled)" : "");
  std::fputs(FormatComparisonReport(result).c_str(), stdout);

  if (!opts.features_csv.empty()) {
    std::vector<FeatureVector> all;
    for (const auto &utt : utterances)
      all.insert(all.end(), utt.features.begin(), utt.features.end());
    WriteFeaturesCsv(all, opts.features_csv);
  }
  return 0;
}

}  // namespace hafm::cli
