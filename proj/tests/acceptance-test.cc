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

// Acceptance suite: prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "hafm/eval_harness.h"
#include "hafm/features.h"
#include "hafm/mask.h"
#include "hafm/mask_io.h"
#include "hafm/nsgt.h"
#include "hafm/nsgt_io.h"
#include "hafm/pipeline.h"
#include "oracles.h"
#include "test-util.h"

using namespace hafm;
using cd = std::complex<double>;
using Clock = std::chrono::steady_clock;

namespace {

const std::string kCli = HAFM_CLI_PATH;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string Fmt(const char *fmt, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, a, b, c);
  return buf;
}

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

// 100-300 Hz f0 track for `frames` frames: constant when `ramp` is false.
std::vector<double> RandomTrack(std::size_t frames, bool ramp, std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> f0(100.0, 300.0);
  double from = f0(rng), to = ramp ? f0(rng) : from;
  std::vector<double> v(frames);
  for (std::size_t n = 0; n < frames; n++) v[n] = from + (to - from) * n / (frames - 1);
  return v;
}

AnalysisParams DefaultParams() { return AnalysisParams{}; }

ComplexMatrix RandomMatrix(std::size_t rows, std::size_t cols, std::mt19937_64 &rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (auto &v : m.data()) v = cd(dist(rng), dist(rng));
  return m;
}

std::vector<std::size_t> Divisors(std::size_t length, std::size_t at_least) {
  std::vector<std::size_t> d;
  for (std::size_t k = std::max<std::size_t>(1, at_least); k <= length; k++)
    if (length % k == 0) d.push_back(k);
  return d;
}

// Random ragged plan with every M_n >= min_channels.
NsgtPlan RandomPlan(std::size_t length, std::size_t hop, std::size_t min_channels,
                    std::mt19937_64 &rng) {
  auto choices = Divisors(length, min_channels);
  std::uniform_int_distribution<std::size_t> pick(0, choices.size() - 1);
  std::vector<std::size_t> m(length / hop);
  for (auto &v : m) v = choices[pick(rng)];
  return NsgtPlan::FromChannelCounts(length, hop, m, 1, 1, 8000);
}

Outcome PerfectReconstruction() {
  std::mt19937_64 rng(101);
  double worst_err = 0.0, worst_time = 0.0;
  bool painless = true;
  for (int trial = 0; trial < 100; trial++) {
    Signal f(oracle::RandomSignal(4000, rng), 8000);
    std::size_t frames = PlanFrameCount(4000, 32);
    F0Track track(RandomTrack(frames, trial % 2 == 1, rng), 8000);
    auto start = Clock::now();
    Analysis a = AnalyzeSignal(f, track, DefaultParams());
    Signal back = NsgtInverse(a.coeffs, a.window);
    worst_time = std::max(worst_time, Seconds(start));
    painless = painless && IsPainless(a.plan, a.window);
    double num = 0.0, den = 0.0;
    for (std::size_t l = 0; l < 4000; l++) {
      num += std::pow(back.samples()[l] - f.samples()[l], 2);
      den += f.samples()[l] * f.samples()[l];
    }
    worst_err = std::max(worst_err, std::sqrt(num / den));
  }
  return {painless && worst_err <= 1e-8 && worst_time <= 1.0,
          Fmt("max rel error %.3g (<= 1e-8), max time %.3g s (<= 1 s)", worst_err, worst_time)};
}

Outcome FrameOperatorDiagonal() {
  std::mt19937_64 rng(202);
  double off = 0.0, diag_rel = 0.0;
  struct Toy { std::size_t L, a; int W; };
  for (Toy t : {Toy{64, 8, 12}, Toy{120, 6, 20}, Toy{192, 16, 32}, Toy{256, 16, 40}, Toy{256, 32, 64}}) {
    Window w = HannWindow(t.W);
    NsgtPlan plan = RandomPlan(t.L, t.a, WindowSupportLength(w), rng);
    auto S = oracle::FrameOperatorMatrix(oracle::PeriodizedWindow(w.centered_values(), t.L), t.L,
                                         t.a, plan.freq_hops());
    // s_l computed directly from the window values
    for (std::size_t i = 0; i < t.L; i++) {
      double s = 0.0;
      for (std::size_t n = 0; n < plan.frame_count(); n++) {
        long long k = oracle::Wrap(static_cast<long long>(i) - static_cast<long long>(n * t.a), t.L);
        if (k > static_cast<long long>(t.L) / 2) k -= t.L;
        double g = w(static_cast<int>(k));
        s += plan.channel_counts()[n] * g * g;
      }
      for (std::size_t j = 0; j < t.L; j++) {
        if (i == j) {
          diag_rel = std::max(diag_rel, std::abs(S[i * t.L + j] - s) / s);
        } else {
          off = std::max(off, std::abs(S[i * t.L + j]));
        }
      }
    }
    FrameDiagonal lib = ComputeFrameDiagonal(plan, w);
    for (std::size_t i = 0; i < t.L; i++)
      diag_rel = std::max(diag_rel, std::abs(S[i * t.L + i] - lib.s[i]) / lib.s[i]);
  }
  return {off <= 1e-9 && diag_rel <= 1e-9,
          Fmt("max off-diagonal %.3g (<= 1e-9), diagonal rel error %.3g (<= 1e-9)", off, diag_rel)};
}

Outcome EnergyIdentity() {
  std::mt19937_64 rng(303);
  double worst = 0.0;
  bool sandwich = true;
  for (int trial = 0; trial < 100; trial++) {
    Signal f(oracle::RandomSignal(4000, rng), 8000);
    F0Track track(RandomTrack(PlanFrameCount(4000, 32), trial % 2 == 1, rng), 8000);
    Analysis a = AnalyzeSignal(f, track, DefaultParams());
    FrameDiagonal diag = ComputeFrameDiagonal(a.plan, a.window);
    auto [lhs, rhs] = CoefficientEnergyIdentity(f, a.coeffs, diag);
    worst = std::max(worst, std::abs(lhs - rhs) / rhs);
    FrameBounds b = ComputeFrameBounds(diag);
    double energy = 0.0;
    for (double v : f.samples()) energy += v * v;
    sandwich = sandwich && lhs >= b.lower * energy * (1 - 1e-12) && lhs <= b.upper * energy * (1 + 1e-12);
  }
  return {worst <= 1e-10 && sandwich,
          Fmt("max rel identity error %.3g (<= 1e-10), bound sandwich ", worst) +
              (sandwich ? "holds" : "violated")};
}

Outcome MaskOptimality() {
  std::mt19937_64 rng(404);
  double grid_dev = 0.0;
  std::size_t not_strict = 0;
  for (double mu : {1e-7, 0.5}) {
    ComplexMatrix a = RandomMatrix(16, 8, rng), b = RandomMatrix(16, 8, rng);
    MaskEstimationConfig cfg;
    cfg.mu = mu;
    cfg.sigma_ref = RandomMatrix(16, 8, rng);
    FrameMask best = EstimateMaskTikhonov(a, b, cfg);
    for (std::size_t n = 0; n < 8; n++)
      for (std::size_t m = 0; m < 16; m++) {
        // grid shifted off sigma* by a random sub-step offset
        std::uniform_real_distribution<double> shift(-5e-4, 5e-4);
        cd center = best.sigma(m, n) + cd(shift(rng), shift(rng));
        cd grid = oracle::GridSearchScalarMask(a(m, n), b(m, n), (*cfg.sigma_ref)(m, n), mu,
                                               center, 0.01, 1e-3);
        grid_dev = std::max(grid_dev, std::abs(grid - best.sigma(m, n)));
      }
    double f0 = MaskObjective(best, a, b, cfg);
    for (int trial = 0; trial < 100; trial++) {
      ComplexMatrix delta = RandomMatrix(16, 8, rng);
      double norm = 0.0;
      for (const cd &d : delta.data()) norm += std::norm(d);
      FrameMask moved = best;
      for (std::size_t i = 0; i < delta.data().size(); i++)
        moved.sigma.data()[i] += delta.data()[i] * (1e-3 / std::sqrt(norm));
      if (!(MaskObjective(moved, a, b, cfg) > f0)) not_strict++;
    }
  }
  // grid resolution: the nearest grid point is within step / sqrt(2)
  return {grid_dev <= 1e-3 / std::sqrt(2.0) + 1e-12 && not_strict == 0,
          Fmt("max grid deviation %.3g (<= 7.07e-4), perturbations not increasing the objective: %g of 200",
              grid_dev, static_cast<double>(not_strict))};
}

Outcome EstimatorConsistency() {
  std::mt19937_64 rng(505);
  ComplexMatrix a = RandomMatrix(64, 32, rng), b = RandomMatrix(64, 32, rng);
  std::uniform_int_distribution<std::size_t> idx(0, a.data().size() - 1);
  for (int i = 0; i < 50; i++) a.data()[idx(rng)] = 0.0;
  // default all-ones reference for the ratio check
  MaskEstimationConfig cfg;
  cfg.mu = 1e-12;
  FrameMask m = EstimateMaskTikhonov(a, b, cfg);
  double worst = 0.0, exact_gap = 0.0;
  for (std::size_t i = 0; i < a.data().size(); i++)
    if (std::abs(a.data()[i]) >= 0.1) {
      cd ratio = b.data()[i] / a.data()[i];
      double gap = std::abs(m.sigma.data()[i] - ratio);
      if (gap > worst) {
        worst = gap;
        // the formula itself differs from the ratio by mu (1 - ratio) / (|cA|^2 + mu)
        exact_gap = cfg.mu * std::abs(1.0 - ratio) / (std::norm(a.data()[i]) + cfg.mu);
      }
    }

  // reference fallback with a random reference
  cfg.sigma_ref = RandomMatrix(64, 32, rng);
  FrameMask r = EstimateMaskTikhonov(a, b, cfg);
  std::size_t ref_mismatch = 0, zeros = 0;
  for (std::size_t i = 0; i < a.data().size(); i++)
    if (a.data()[i] == 0.0) {
      zeros++;
      if (r.sigma.data()[i] != cfg.sigma_ref->data()[i]) ref_mismatch++;
    }
  return {worst <= 1e-9 && ref_mismatch == 0 && zeros > 0,
          Fmt("max |sigma - cB/cA| %.3g (<= 1e-9; closed-form gap at that entry %.3g), ", worst,
              exact_gap) +
              Fmt("zero-source entries not equal to reference: %g of %g",
                  static_cast<double>(ref_mismatch), static_cast<double>(zeros))};
}

// Harmonic sum at constant f0 with L chosen so that p f0 L / (q fs) is an
// integer; returns the number of (frame, harmonic) bands checked and failed.
std::pair<std::size_t, std::size_t> HarmonicBands(double f0, std::size_t q, std::size_t raw,
                                                  int harmonics) {
  const double rate = 8000.0;
  const std::size_t a = 32;
  std::vector<double> x(raw, 0.0);
  for (int j = 1; j <= harmonics; j++)
    for (std::size_t l = 0; l < raw; l++) x[l] += std::cos(2 * std::numbers::pi * j * f0 * l / rate);
  NsgtPlan plan = BuildPlan(F0Track(std::vector<double>(PlanFrameCount(raw, a), f0), rate), a, 1,
                            q, rate, raw);
  Window w = HannWindow(160);
  if (!IsPainless(plan, w)) return {0, 1};
  Signal f = Signal(x, rate).Resized(plan.signal_length());
  auto c = NsgtForward(f, plan, w);
  std::size_t checked = 0, failed = 0;
  for (std::size_t n = 3; n + 3 < plan.frame_count(); n++) {
    const std::size_t M = plan.channel_counts()[n];
    for (std::size_t j = 1; j <= static_cast<std::size_t>(harmonics) && j * q < M / 2; j++) {
      std::size_t best = 0, best_oracle = 0;
      double mag = -1, mag_oracle = -1;
      for (std::size_t m = j * q - q / 2 + 1; m <= j * q + q / 2; m++) {
        double v = std::abs(c.frame(n)[m]);
        if (v > mag) mag = v, best = m;
        double vo = std::abs(oracle::DirectFrameDft(f.samples(), w.centered_values(), a, M, n,
                                                    static_cast<long long>(m)));
        if (vo > mag_oracle) mag_oracle = vo, best_oracle = m;
      }
      checked++;
      long long off = static_cast<long long>(best) - static_cast<long long>(j * q);
      if (best != best_oracle || off < -1 || off > 1) failed++;
    }
  }
  return {checked, failed};
}

Outcome HarmonicAlignment() {
  auto [c1, f1] = HarmonicBands(200.0, 10, 8000, 12);    // L = 8000, b = 20
  auto [c2, f2] = HarmonicBands(200.0, 75, 24000, 12);   // L = 24000, b = 8
  auto [c3, f3] = HarmonicBands(250.0, 25, 8000, 10);    // L = 8000, b = 10
  std::size_t checked = c1 + c2 + c3, failed = f1 + f2 + f3;
  return {failed == 0 && checked > 0,
          Fmt("%g of %g frame/harmonic bands off by more than 1 or disagreeing with the direct DFT",
              static_cast<double>(failed), static_cast<double>(checked))};
}

Outcome IdentityConversion() {
  SyntheticSpeaker spk{{120.0, 140.0}, {600.0, 1400.0, 2600.0}, {80.0, 100.0, 120.0}, "x"};
  std::string wav = testing::ScratchPath("acc-x.wav"), csv = testing::ScratchPath("acc-x.csv");
  std::string hafm = testing::ScratchPath("acc-x.hafm"), out = testing::ScratchPath("acc-x-out.wav");
  WriteWav(GenerateVowel(spk, 0.5, 8000, 3), wav);
  WriteF0Csv(ContourPoints(spk, 0.5), csv);
  auto m = testing::RunCommand(kCli + " mask --source " + wav + " --target " + wav +
                               " --source-f0 " + csv + " --target-f0 " + csv + " -o " + hafm);
  if (m.exit_code != 0) return {false, "mask failed: " + m.output};
  auto c = testing::RunCommand(kCli + " convert --source " + wav + " --source-f0 " + csv +
                               " --mask " + hafm + " -o " + out);
  if (c.exit_code != 0) return {false, "convert failed: " + c.output};
  Signal in = ReadWav(wav), conv = ReadWav(out);
  if (in.size() != conv.size()) return {false, "output length differs"};
  double num = 0.0, den = 0.0;
  for (std::size_t l = 0; l < in.size(); l++) {
    num += std::pow(conv.samples()[l] - in.samples()[l], 2);
    den += in.samples()[l] * in.samples()[l];
  }
  double snr = 10.0 * std::log10(den / num);
  return {snr >= 80.0, Fmt("SNR %.2f dB (>= 80 dB)", snr)};
}

Outcome FastPathEquivalence() {
  std::mt19937_64 rng(808);
  double worst = 0.0;
  struct Case { std::size_t L, a; int W; };
  for (Case t : {Case{256, 8, 24}, Case{512, 16, 64}, Case{1000, 20, 80}, Case{1024, 32, 160},
                 Case{840, 12, 48}}) {
    Window w = HannWindow(t.W);
    for (int trial = 0; trial < 4; trial++) {
      // channel counts down to 1, so the fold wraps the window several times
      NsgtPlan plan = RandomPlan(t.L, t.a, 1, rng);
      Signal f(oracle::RandomSignal(t.L, rng), 8000);
      auto fast = NsgtForward(f, plan, w), naive = NsgtForwardNaive(f, plan, w);
      for (std::size_t n = 0; n < plan.frame_count(); n++)
        for (std::size_t m = 0; m < fast.frame(n).size(); m++)
          worst = std::max(worst, std::abs(fast.frame(n)[m] - naive.frame(n)[m]));
    }
  }
  return {worst <= 1e-10, Fmt("max |fast - naive| %.3g (<= 1e-10)", worst)};
}

double ParseAccuracy(const std::string &report) {
  auto pos = report.find("accuracy ");
  return pos == std::string::npos ? -1.0 : std::stod(report.substr(pos + 9));
}

Outcome SpeakerComparison() {
  auto start = Clock::now();
  auto run = testing::RunCommand(kCli + " eval-demo --seed 7 --trials 5");
  double elapsed = Seconds(start);
  auto shuffled = testing::RunCommand(kCli + " eval-demo --seed 7 --trials 5 --shuffle-labels");
  if (run.exit_code != 0 || shuffled.exit_code != 0) return {false, "eval-demo failed"};
  double acc = ParseAccuracy(run.output), chance = ParseAccuracy(shuffled.output);
  bool pass = acc >= 0.9 && elapsed <= 30.0 && std::abs(chance - 0.5) <= 0.15;
  return {pass, Fmt("accuracy %.4f (>= 0.9) in %.2f s (<= 30 s), shuffled-label accuracy %.4f (0.5 +- 0.15)",
                    acc, elapsed, chance)};
}

Outcome FormatRoundTrips() {
  std::mt19937_64 rng(1010);
  std::size_t failures = 0;
  auto raw_equal = [](const void *x, const void *y, std::size_t bytes) {
    return std::memcmp(x, y, bytes) == 0;
  };
  for (int trial = 0; trial < 10; trial++) {
    NsgtPlan plan = RandomPlan(240, 8, 1, rng);
    auto c = NsgtForward(Signal(oracle::RandomSignal(240, rng), 8000), plan, HannWindow(16));
    std::string path = testing::ScratchPath("acc.nsgc");
    WriteCoefficientFile(c, path);
    auto back = ReadCoefficientFile(path);
    bool ok = back.plan() == c.plan();
    for (std::size_t n = 0; ok && n < c.frame_count(); n++)
      ok = back.frame(n).size() == c.frame(n).size() &&
           raw_equal(back.frame(n).data(), c.frame(n).data(), c.frame(n).size() * sizeof(cd));
    failures += !ok;

    MaskFile mask{FrameMask{RandomMatrix(24, 30, rng)}, std::ldexp(1.0, -trial - 20), {}};
    for (std::size_t n = 0; n < 30; n++) mask.target_native_M.push_back(1 + rng() % 24);
    std::string mpath = testing::ScratchPath("acc.hafm");
    WriteMaskFile(mask, mpath);
    MaskFile mback = ReadMaskFile(mpath);
    failures += !(mback.mu == mask.mu && mback.target_native_M == mask.target_native_M &&
                  mback.mask.sigma.SameShape(mask.mask.sigma) &&
                  raw_equal(mback.mask.sigma.data().data(), mask.mask.sigma.data().data(),
                            mask.mask.sigma.data().size() * sizeof(cd)));

    std::vector<FeatureVector> features;
    std::uniform_real_distribution<double> mag(0.0, 10.0);
    for (std::size_t i = 0; i < 25; i++) {
      FeatureVector fv{std::vector<double>(33), "spk" + std::to_string(i % 4), i, 24 - i};
      for (auto &v : fv.values) v = mag(rng) * std::pow(10.0, static_cast<int>(rng() % 20) - 10);
      features.push_back(fv);
    }
    std::string fpath = testing::ScratchPath("acc.csv");
    WriteFeaturesCsv(features, fpath);
    auto fback = ReadFeaturesCsv(fpath);
    bool fok = fback.size() == features.size();
    for (std::size_t i = 0; fok && i < features.size(); i++)
      fok = fback[i].source_label == features[i].source_label &&
            fback[i].source_column == features[i].source_column &&
            fback[i].target_column == features[i].target_column &&
            fback[i].values.size() == features[i].values.size() &&
            raw_equal(fback[i].values.data(), features[i].values.data(),
                      features[i].values.size() * sizeof(double));
    failures += !fok;
  }
  return {failures == 0, Fmt("%g of 30 NSGC/HAFM/CSV round trips not bit-exact", static_cast<double>(failures))};
}

}  // namespace

int main() {
  struct Criterion {
    const char *name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"perfect reconstruction", PerfectReconstruction},
      {"frame operator diagonality", FrameOperatorDiagonal},
      {"energy identity and frame bounds", EnergyIdentity},
      {"mask optimality", MaskOptimality},
      {"estimator consistency", EstimatorConsistency},
      {"harmonic alignment", HarmonicAlignment},
      {"identity conversion through the CLI", IdentityConversion},
      {"fast path equivalence", FastPathEquivalence},
      {"desk-scale speaker comparison", SpeakerComparison},
      {"format round trips", FormatRoundTrips},
  };
  int failed = 0, index = 0;
  for (const auto &c : criteria) {
    ++index;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %2d %s: %s (%s)\n", index, o.pass ? "PASS" : "FAIL", c.name,
                o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
