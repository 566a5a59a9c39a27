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

// Drives the hafm binary end to end.

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "hafm/eval_harness.h"
#include "hafm/features.h"
#include "hafm/mask.h"
#include "hafm/mask_io.h"
#include "hafm/nsgt_io.h"
#include "hafm/pipeline.h"
#include "test-util.h"

using namespace hafm;
using testing::RunCommand;
using testing::ScratchPath;

namespace {

const std::string kCli = HAFM_CLI_PATH;

std::string ReadBytes(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double SnrDb(const std::vector<double> &ref, const std::vector<double> &x) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < ref.size(); i++) {
    num += (x[i] - ref[i]) * (x[i] - ref[i]);
    den += ref[i] * ref[i];
  }
  return 10.0 * std::log10(den / num);
}

double FieldAfter(const std::string &text, const std::string &key) {
  auto pos = text.find(key + " ");
  REQUIRE(pos != std::string::npos);
  return std::stod(text.substr(pos + key.size() + 1));
}

struct Fixture {
  SyntheticSpeaker speaker{{125.0, 135.0}, {500.0, 1500.0, 2500.0}, {80.0, 100.0, 120.0}, "a"};
  SyntheticSpeaker other{{110.0, 100.0}, {700.0, 1100.0}, {90.0, 110.0}, "b"};
  std::string wav = ScratchPath("a.wav"), f0 = ScratchPath("a.csv");
  std::string wav_b = ScratchPath("b.wav"), f0_b = ScratchPath("b.csv");

  Fixture() {
    WriteWav(GenerateVowel(speaker, 0.5, 8000, 1), wav);
    WriteF0Csv(ContourPoints(speaker, 0.5), f0);
    WriteWav(GenerateVowel(other, 0.5, 8000, 2), wav_b);
    WriteF0Csv(ContourPoints(other, 0.5), f0_b);
  }
};

}  // namespace

TEST_CASE("analyze then synth reconstructs the input") {
  Fixture fx;
  std::string nsgc = ScratchPath("a.nsgc"), out = ScratchPath("a-synth.wav");
  auto r = RunCommand(kCli + " analyze -i " + fx.wav + " --f0 " + fx.f0 + " -o " + nsgc);
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("a=32") != std::string::npos);
  CHECK(r.output.find("W=160") != std::string::npos);
  CHECK(r.output.find("painless: yes") != std::string::npos);
  CHECK(r.output.find("max hop-snap relative deviation") != std::string::npos);

  auto s = RunCommand(kCli + " synth -i " + nsgc + " --length 4000 -o " + out);
  REQUIRE(s.exit_code == 0);
  Signal in = ReadWav(fx.wav), back = ReadWav(out);
  REQUIRE(back.size() == in.size());
  CHECK(SnrDb(in.samples(), back.samples()) >= 80.0);

  // estimated f0 path
  auto e = RunCommand(kCli + " analyze -i " + fx.wav + " --estimate-f0 -o " + nsgc);
  CHECK(e.exit_code == 0);
}

TEST_CASE("analyze output does not depend on the thread count") {
  Fixture fx;
  std::string one = ScratchPath("t1.nsgc"), four = ScratchPath("t4.nsgc");
  REQUIRE(RunCommand("HAFM_THREADS=1 " + kCli + " analyze -i " + fx.wav + " --f0 " + fx.f0 + " -o " + one).exit_code == 0);
  REQUIRE(RunCommand("HAFM_THREADS=4 " + kCli + " analyze -i " + fx.wav + " --f0 " + fx.f0 + " -o " + four).exit_code == 0);
  CHECK(ReadBytes(one) == ReadBytes(four));
}

TEST_CASE("usage and format errors") {
  Fixture fx;
  std::string nsgc = ScratchPath("e.nsgc");
  auto missing = RunCommand(kCli + " analyze -i " + fx.wav + " -o " + nsgc);
  CHECK(missing.exit_code == 2);
  CHECK(missing.output.find("usage error") != std::string::npos);
  CHECK(std::count(missing.output.begin(), missing.output.end(), '\n') == 1);
  CHECK_FALSE(std::filesystem::exists(nsgc));

  CHECK(RunCommand(kCli + " analyze --bogus").exit_code == 2);
  CHECK(RunCommand(kCli).exit_code == 2);

  REQUIRE(RunCommand(kCli + " analyze -i " + fx.wav + " --f0 " + fx.f0 + " -o " + nsgc).exit_code == 0);
  std::string bytes = ReadBytes(nsgc);
  std::string bad = ScratchPath("bad.nsgc"), trunc = ScratchPath("trunc.nsgc");
  testing::WriteText(bad, "XSGC" + bytes.substr(4));
  testing::WriteText(trunc, bytes.substr(0, bytes.size() / 2));
  std::string out = ScratchPath("never.wav");
  for (const auto &path : {bad, trunc}) {
    auto r = RunCommand(kCli + " synth -i " + path + " -o " + out);
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("NSGC") != std::string::npos);
    CHECK(std::count(r.output.begin(), r.output.end(), '\n') == 1);
  }
  CHECK_FALSE(std::filesystem::exists(out));

  // q = 4 gives M_n near 4 fs / (p f0), about 120 < W = 160
  auto np = RunCommand(kCli + " analyze -i " + fx.wav + " --f0 " + fx.f0 + " --q 4 -o " + nsgc);
  CHECK(np.exit_code == 1);
  CHECK(np.output.find("painless") != std::string::npos);
  auto allowed = RunCommand(kCli + " analyze -i " + fx.wav + " --f0 " + fx.f0 +
                            " --q 4 --allow-nonpainless -o " + nsgc);
  CHECK(allowed.exit_code == 0);
  CHECK(allowed.output.find("painless: no") != std::string::npos);
  CHECK(RunCommand(kCli + " synth -i " + nsgc + " -o " + out).exit_code == 1);
}

TEST_CASE("mask of identical inputs and identity conversion") {
  Fixture fx;
  std::string hafm = ScratchPath("id.hafm"), out = ScratchPath("id-out.wav");
  std::string pair = " --source " + fx.wav + " --target " + fx.wav + " --source-f0 " + fx.f0 +
                     " --target-f0 " + fx.f0;
  auto m = RunCommand(kCli + " mask" + pair + " -o " + hafm);
  REQUIRE(m.exit_code == 0);
  MaskFile file = ReadMaskFile(hafm);
  CHECK(file.mu == 1e-7);

  Analysis a = AnalyzeSignal(ReadWav(fx.wav), ReadF0Csv(fx.f0), AnalysisParams{});
  AlignedCoefficients ca = AlignExtend(a.coeffs, file.mask.sigma.rows());
  double worst = 0.0;
  for (std::size_t i = 0; i < ca.matrix.data().size(); i++)
    if (std::norm(ca.matrix.data()[i]) >= 1e3 * file.mu)
      worst = std::max(worst, std::abs(file.mask.sigma.data()[i] - 1.0));
  CHECK(worst <= 1e-6);

  auto c = RunCommand(kCli + " convert --source " + fx.wav + " --source-f0 " + fx.f0 + " --mask " +
                      hafm + " -o " + out);
  REQUIRE(c.exit_code == 0);
  Signal in = ReadWav(fx.wav), conv = ReadWav(out);
  REQUIRE(conv.size() == in.size());
  CHECK(SnrDb(in.samples(), conv.samples()) >= 80.0);

  // scalar 2 mask on the same system
  MaskFile twice = file;
  for (auto &v : twice.mask.sigma.data()) v = 2.0;
  std::string hafm2 = ScratchPath("two.hafm");
  WriteMaskFile(twice, hafm2);
  REQUIRE(RunCommand(kCli + " convert --source " + fx.wav + " --source-f0 " + fx.f0 + " --mask " +
                     hafm2 + " -o " + out).exit_code == 0);
  Signal doubled = ReadWav(out);
  std::vector<double> expect(in.samples());
  for (auto &v : expect) v *= 2.0;
  CHECK(SnrDb(expect, doubled.samples()) >= 80.0);
}

TEST_CASE("mask and convert between two speakers") {
  Fixture fx;
  std::string hafm = ScratchPath("ab.hafm"), out = ScratchPath("ab-out.wav");
  std::string pair = " --source " + fx.wav + " --target " + fx.wav_b + " --source-f0 " + fx.f0 +
                     " --target-f0 " + fx.f0_b + " --mu 1e-3";
  auto m = RunCommand(kCli + " mask" + pair + " -o " + hafm);
  REQUIRE(m.exit_code == 0);

  AnalysisParams params;
  Analysis a = AnalyzeSignal(ReadWav(fx.wav), ReadF0Csv(fx.f0), params);
  Analysis b = AnalyzeSignal(ReadWav(fx.wav_b), ReadF0Csv(fx.f0_b), params);
  std::size_t rows = CommonRowCount(a.plan, b.plan);
  AlignedCoefficients ca = AlignExtend(a.coeffs, rows), cb = AlignExtend(b.coeffs, rows);
  MaskEstimationConfig cfg{1e-3, std::nullopt};
  FrameMask sigma = EstimateMaskTikhonov(ca, cb, cfg);
  double objective = MaskObjective(sigma, ca.matrix, cb.matrix, cfg);
  double residual = MaskObjective(sigma, ca.matrix, cb.matrix, MaskEstimationConfig{1e-300, std::nullopt});
  CHECK(FieldAfter(m.output, "objective") == doctest::Approx(objective).epsilon(1e-12));
  CHECK(FieldAfter(m.output, "residual") == doctest::Approx(residual).epsilon(1e-9));

  REQUIRE(RunCommand(kCli + " convert --source " + fx.wav + " --source-f0 " + fx.f0 + " --mask " +
                     hafm + " -o " + out).exit_code == 0);
  // The canonical dual has upper frame bound 1 / A, and folding by the mean
  // does not increase energy, so the error energy is at most residual / A.
  Signal conv = ReadWav(out), target = ReadWav(fx.wav_b);
  double err = 0.0;
  for (std::size_t l = 0; l < target.size(); l++)
    err += std::pow(conv.samples()[l] - target.samples()[l], 2);
  double lower = ComputeFrameBounds(ComputeFrameDiagonal(b.plan, b.window)).lower;
  CHECK(err <= residual / lower * (1 + 1e-6) + 1e-9);
}

TEST_CASE("mismatched durations are trimmed with a warning") {
  Fixture fx;
  std::string shorter = ScratchPath("short.wav");
  Signal in = ReadWav(fx.wav);
  WriteWav(in.Resized(3600), shorter);
  auto r = RunCommand(kCli + " mask --source " + fx.wav + " --target " + shorter + " --source-f0 " +
                      fx.f0 + " --target-f0 " + fx.f0 + " -o " + ScratchPath("trim.hafm"));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("warning: trimming") != std::string::npos);
}

TEST_CASE("features on identical files") {
  Fixture fx;
  std::string csv = ScratchPath("feat.csv");
  std::string pair = " --source " + fx.wav + " --target " + fx.wav + " --source-f0 " + fx.f0 +
                     " --target-f0 " + fx.f0;
  REQUIRE(RunCommand(kCli + " features" + pair + " --pairing aligned -o " + csv).exit_code == 0);
  auto rows = ReadFeaturesCsv(csv);
  CHECK(rows.size() == 125);
  for (const auto &row : rows)
    for (double v : row.values) CHECK(v == 1.0);

  REQUIRE(RunCommand(kCli + " features" + pair + " --max-pairs 30 --dim 64 -o " + csv).exit_code == 0);
  rows = ReadFeaturesCsv(csv);
  CHECK(rows.size() == 30);
  CHECK(rows[0].values.size() == 64);
}

TEST_CASE("f0 on a pure tone") {
  std::vector<double> tone(8000);
  for (std::size_t l = 0; l < tone.size(); l++) tone[l] = 0.5 * std::sin(2 * std::numbers::pi * 100.0 * l / 8000.0);
  std::string wav = ScratchPath("tone.wav"), csv = ScratchPath("tone.csv");
  WriteWav(Signal(tone, 8000), wav);
  REQUIRE(RunCommand(kCli + " f0 -i " + wav + " -o " + csv).exit_code == 0);
  auto points = ReadF0Csv(csv);
  REQUIRE(points.size() > 20);
  for (std::size_t i = 10; i + 10 < points.size(); i++) CHECK(std::abs(points[i].f0_hz - 100.0) <= 2.0);
}

TEST_CASE("eval-demo is deterministic") {
  auto first = RunCommand(kCli + " eval-demo --seed 7 --trials 2");
  auto second = RunCommand(kCli + " eval-demo --seed 7 --trials 2");
  REQUIRE(first.exit_code == 0);
  CHECK(first.output == second.output);
  CHECK(first.output.find("accuracy") != std::string::npos);
}
