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

#include "hafm/eval_harness.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>

#include "hafm/errors.h"
#include "hafm/parallel.h"
#include "hafm/pipeline.h"

namespace hafm {

namespace {

void ValidateSpeaker(const SyntheticSpeaker &speaker, double sample_rate_hz) {
  if (speaker.f0_contour_hz.empty()) throw ArgumentError("speaker has no f0 contour");
  for (double f0 : speaker.f0_contour_hz)
    if (!(f0 >= 60.0 && f0 <= 400.0))
      throw ArgumentError("speaker f0 " + std::to_string(f0) + " outside [60, 400] Hz");
  const auto &formants = speaker.formant_freqs_hz;
  if (formants.size() < 2 || formants.size() > 3)
    throw ArgumentError("speaker needs 2 or 3 formants");
  if (speaker.formant_bandwidths_hz.size() != formants.size())
    throw ArgumentError("one bandwidth per formant required");
  for (std::size_t i = 0; i < formants.size(); i++) {
    if (!(formants[i] > 0.0) || !(formants[i] < sample_rate_hz / 2))
      throw ArgumentError("formant " + std::to_string(formants[i]) + " Hz above Nyquist");
    if (!(speaker.formant_bandwidths_hz[i] > 0.0))
      throw ArgumentError("formant bandwidth must be positive");
  }
}

// Contour value at fraction u in [0, 1] of the utterance.
double ContourAt(const std::vector<double> &contour, double u) {
  if (contour.size() == 1) return contour[0];
  double x = std::clamp(u, 0.0, 1.0) * static_cast<double>(contour.size() - 1);
  std::size_t i = std::min(static_cast<std::size_t>(x), contour.size() - 2);
  double w = x - static_cast<double>(i);
  return contour[i] + w * (contour[i + 1] - contour[i]);
}

uint64_t MixSeed(uint64_t seed, uint64_t a, uint64_t b) {
  // splitmix64 finalizer over the combined words
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (a + 1) + 0xbf58476d1ce4e5b9ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Signal GenerateVowel(const SyntheticSpeaker &speaker, double duration_s,
                     double sample_rate_hz, uint64_t seed) {
  if (!(duration_s >= 0.1)) throw ArgumentError("vowel duration must be at least 0.1 s");
  if (!(sample_rate_hz > 0.0)) throw ArgumentError("sample rate must be positive");
  ValidateSpeaker(speaker, sample_rate_hz);

  const std::size_t count = static_cast<std::size_t>(std::lround(duration_s * sample_rate_hz));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> symmetric(-1.0, 1.0);

  std::vector<double> x(count, 0.0);
  double phase = unit(rng);
  double jitter = 1.0 + 0.005 * symmetric(rng);
  for (std::size_t i = 0; i < count; i++) {
    double f0 = ContourAt(speaker.f0_contour_hz, static_cast<double>(i) / count) * jitter;
    phase += f0 / sample_rate_hz;
    if (phase >= 1.0) {
      phase -= 1.0;
      x[i] = 1.0;
      jitter = 1.0 + 0.005 * symmetric(rng);
    }
  }

  for (std::size_t k = 0; k < speaker.formant_freqs_hz.size(); k++) {
    double r = std::exp(-std::numbers::pi * speaker.formant_bandwidths_hz[k] / sample_rate_hz);
    double theta = 2.0 * std::numbers::pi * speaker.formant_freqs_hz[k] / sample_rate_hz;
    double a1 = -2.0 * r * std::cos(theta), a2 = r * r;
    double gain = 1.0 + a1 + a2;  // unity gain at DC
    double y1 = 0.0, y2 = 0.0;
    for (double &v : x) {
      double y = gain * v - a1 * y1 - a2 * y2;
      y2 = y1;
      y1 = y;
      v = y;
    }
  }

  double peak = 0.0;
  for (double v : x) peak = std::max(peak, std::abs(v));
  for (double &v : x) v += 1e-3 * peak * symmetric(rng);
  peak = 0.0;
  for (double v : x) peak = std::max(peak, std::abs(v));
  if (peak > 0.0)
    for (double &v : x) v *= 0.9 / peak;
  return Signal(std::move(x), sample_rate_hz);
}

std::vector<F0Point> ContourPoints(const SyntheticSpeaker &speaker, double duration_s) {
  const auto &contour = speaker.f0_contour_hz;
  if (contour.empty()) throw ArgumentError("speaker has no f0 contour");
  if (contour.size() == 1) return {{0.0, contour[0]}};
  std::vector<F0Point> points(contour.size());
  for (std::size_t k = 0; k < contour.size(); k++)
    points[k] = {duration_s * static_cast<double>(k) / (contour.size() - 1), contour[k]};
  return points;
}

std::vector<UtteranceFeatures> ComputeSpeakerFeatures(
    const std::vector<SyntheticSpeaker> &speakers, const SyntheticSpeaker &reference,
    std::size_t trials_per_speaker, const ComparisonConfig &config) {
  if (speakers.empty()) throw ArgumentError("need at least one speaker");
  if (trials_per_speaker == 0) throw ArgumentError("trials per speaker must be positive");

  AnalysisParams params{config.win_ms, config.hop_ms, config.alignment};
  MaskEstimationConfig mask_config{config.mu, std::nullopt};

  const Signal ref_signal =
      GenerateVowel(reference, config.duration_s, config.sample_rate_hz,
                    MixSeed(config.seed, std::numeric_limits<uint64_t>::max(), 0));
  const Analysis ref = AnalyzeSignal(ref_signal, ContourPoints(reference, config.duration_s), params);

  const std::size_t per_speaker = 2 * trials_per_speaker;
  std::vector<UtteranceFeatures> out(speakers.size() * per_speaker);
  ParallelFor(out.size(), [&](std::size_t i) {
    const std::size_t s = i / per_speaker, u = i % per_speaker;
    const uint64_t seed = MixSeed(config.seed, s, u);
    std::mt19937_64 rng(seed);
    double scale = 1.0 + config.f0_spread * std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
    SyntheticSpeaker variant = speakers[s];
    for (double &f0 : variant.f0_contour_hz) f0 = std::clamp(f0 * scale, 60.0, 400.0);

    Signal signal = GenerateVowel(variant, config.duration_s, config.sample_rate_hz, rng());
    Analysis a = AnalyzeSignal(signal, ContourPoints(variant, config.duration_s), params);
    const std::size_t rows = CommonRowCount(a.plan, ref.plan);
    out[i].speaker = s;
    out[i].utterance = u;
    out[i].train = u < trials_per_speaker;
    out[i].features = ExtractFeatures(AlignExtend(a.coeffs, rows), AlignExtend(ref.coeffs, rows),
                                      mask_config, config.pairing, config.dimension,
                                      speakers[s].label);
  });
  return out;
}

ComparisonResult ScoreNearestCentroid(const std::vector<UtteranceFeatures> &utterances,
                                      const std::vector<std::string> &labels,
                                      bool shuffle_labels, uint64_t seed) {
  const std::size_t classes = labels.size();
  struct Item {
    const std::vector<double> *values;
    std::size_t label;
    bool train;
  };
  std::vector<Item> items;
  for (const auto &utt : utterances) {
    if (utt.speaker >= classes) throw ArgumentError("speaker index out of range");
    for (const auto &fv : utt.features) items.push_back({&fv.values, utt.speaker, utt.train});
  }
  if (items.empty()) throw ArgumentError("no feature vectors to score");
  if (shuffle_labels) {
    std::vector<std::size_t> permuted(items.size());
    for (std::size_t i = 0; i < items.size(); i++) permuted[i] = items[i].label;
    std::shuffle(permuted.begin(), permuted.end(), std::mt19937_64(MixSeed(seed, 7, 7)));
    for (std::size_t i = 0; i < items.size(); i++) items[i].label = permuted[i];
  }

  const std::size_t dim = items.front().values->size();
  std::vector<std::vector<double>> centroids(classes, std::vector<double>(dim, 0.0));
  std::vector<std::size_t> counts(classes, 0);
  ComparisonResult result;
  result.labels = labels;
  for (const auto &it : items) {
    if (!it.train) continue;
    if (it.values->size() != dim) throw ArgumentError("feature dimensions differ");
    for (std::size_t d = 0; d < dim; d++) centroids[it.label][d] += (*it.values)[d];
    counts[it.label]++;
    result.train_vectors++;
  }
  for (std::size_t c = 0; c < classes; c++)
    if (counts[c] > 0)
      for (double &v : centroids[c]) v /= static_cast<double>(counts[c]);

  result.confusion.assign(classes, std::vector<std::size_t>(classes, 0));
  std::size_t correct = 0;
  for (const auto &it : items) {
    if (it.train) continue;
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < classes; c++) {
      if (counts[c] == 0) continue;
      double dist = 0.0;
      for (std::size_t d = 0; d < dim; d++) {
        double diff = (*it.values)[d] - centroids[c][d];
        dist += diff * diff;
      }
      if (dist < best_dist) {
        best_dist = dist;
        best = c;
      }
    }
    result.confusion[it.label][best]++;
    correct += best == it.label;
    result.test_vectors++;
  }
  result.accuracy =
      result.test_vectors == 0 ? 0.0 : static_cast<double>(correct) / result.test_vectors;
  return result;
}

ComparisonResult RunSpeakerComparison(const std::vector<SyntheticSpeaker> &speakers,
                                      const SyntheticSpeaker &reference,
                                      std::size_t trials_per_speaker,
                                      const ComparisonConfig &config) {
  auto utterances = ComputeSpeakerFeatures(speakers, reference, trials_per_speaker, config);
  std::vector<std::string> labels;
  for (const auto &s : speakers) labels.push_back(s.label);
  return ScoreNearestCentroid(utterances, labels, config.shuffle_labels, config.seed);
}

std::string FormatComparisonReport(const ComparisonResult &result) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "accuracy %.6f (%zu test vectors, %zu train vectors)\n",
                result.accuracy, result.test_vectors, result.train_vectors);
  std::string out = buf;
  out += "confusion (rows: true, columns: predicted)\n";
  for (std::size_t i = 0; i < result.labels.size(); i++) {
    out += result.labels[i];
    for (std::size_t count : result.confusion[i]) out += ' ' + std::to_string(count);
    out += '\n';
  }
  return out;
}

}  // namespace hafm
