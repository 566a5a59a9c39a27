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

#ifndef HAFM_EVAL_HARNESS_H_
#define HAFM_EVAL_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hafm/features.h"
#include "hafm/mask.h"
#include "hafm/signal_io.h"

namespace hafm {

// Source-filter vowel model: pulse train at the f0 contour through cascaded
// two-pole resonators.
struct SyntheticSpeaker {
  std::vector<double> f0_contour_hz;  // spread evenly over the utterance
  std::vector<double> formant_freqs_hz;
  std::vector<double> formant_bandwidths_hz;
  std::string label;
};

// Deterministic in (speaker, duration, rate, seed). The seed drives the pulse
// phase, a 0.5% per-period jitter and a -60 dB noise floor. Peak is 0.9.
Signal GenerateVowel(const SyntheticSpeaker &speaker, double duration_s,
                     double sample_rate_hz, uint64_t seed);

// f0 contour of the speaker as time-stamped points over [0, duration].
std::vector<F0Point> ContourPoints(const SyntheticSpeaker &speaker, double duration_s);

struct ComparisonConfig {
  double sample_rate_hz = 8000.0;
  double duration_s = 0.3;
  double win_ms = 20.0;
  double hop_ms = 4.0;
  AlignmentParams alignment;
  double mu = 1e-7;
  std::size_t dimension = 1200;
  PairingPolicy pairing{PairingMode::kAligned, std::size_t{1} << 20};
  // Per-utterance f0 scale is drawn from [1 - f0_spread, 1 + f0_spread].
  double f0_spread = 0.03;
  uint64_t seed = 1;
  // Permutation control: labels of all feature vectors are shuffled before
  // the train/test split is scored.
  bool shuffle_labels = false;
};

// Mask features of one utterance against the reference utterance.
struct UtteranceFeatures {
  std::size_t speaker = 0;
  std::size_t utterance = 0;
  bool train = false;
  std::vector<FeatureVector> features;
};

struct ComparisonResult {
  double accuracy = 0.0;
  std::vector<std::string> labels;
  // confusion[true][predicted], counted over test feature vectors.
  std::vector<std::vector<std::size_t>> confusion;
  std::size_t test_vectors = 0;
  std::size_t train_vectors = 0;
};

// Generates 2 * trials utterances per speaker (first half train, second half
// test) plus one reference utterance, and extracts mask features of every
// utterance against the reference.
std::vector<UtteranceFeatures> ComputeSpeakerFeatures(
    const std::vector<SyntheticSpeaker> &speakers, const SyntheticSpeaker &reference,
    std::size_t trials_per_speaker, const ComparisonConfig &config);

// Nearest-centroid (Euclidean) classification of the test vectors.
ComparisonResult ScoreNearestCentroid(const std::vector<UtteranceFeatures> &utterances,
                                      const std::vector<std::string> &labels,
                                      bool shuffle_labels, uint64_t seed);

ComparisonResult RunSpeakerComparison(const std::vector<SyntheticSpeaker> &speakers,
                                      const SyntheticSpeaker &reference,
                                      std::size_t trials_per_speaker,
                                      const ComparisonConfig &config);

// Plain-text report: accuracy line followed by the confusion table.
std::string FormatComparisonReport(const ComparisonResult &result);

}  // namespace hafm

#endif  // HAFM_EVAL_HARNESS_H_
