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

// hafm: pitch-dependent NSGT analysis/synthesis and harmonic-aligned frame
// masks from the command line.

#include <cstdio>
#include <exception>

#include "CLI11.hpp"
#include "cli-commands.h"

namespace {

using namespace hafm::cli;

void AddPlanFlags(CLI::App *cmd, PlanFlags *plan) {
  cmd->add_option("--win-ms", plan->win_ms, "Hann window support in ms")->capture_default_str();
  cmd->add_option("--hop-ms", plan->hop_ms, "time hop in ms")->capture_default_str();
  cmd->add_option("--q", plan->q, "frequency points per p*f0 Hz")->capture_default_str();
  cmd->add_option("--p-mode", plan->p_mode, "anchor: p = round(F / mean f0); unit: p = 1")
      ->check(CLI::IsMember({"anchor", "unit"}))
      ->capture_default_str();
  cmd->add_option("--anchor-hz", plan->anchor_hz,
                  "anchor frequency F (280 for /iy/, 310 for /u/)")
      ->capture_default_str();
}

void AddF0Flags(CLI::App *cmd, F0Source *f0, const std::string &prefix) {
  cmd->add_option("--" + prefix + "f0", f0->csv_path, "f0 CSV (time_s,f0_hz)");
  cmd->add_flag("--" + prefix + "estimate-f0", f0->estimate,
                "estimate f0 by autocorrelation instead of reading a CSV");
  cmd->add_option("--" + prefix + "fmin", f0->fmin_hz, "estimator lower f0 bound")
      ->capture_default_str();
  cmd->add_option("--" + prefix + "fmax", f0->fmax_hz, "estimator upper f0 bound")
      ->capture_default_str();
}

void AddPairFlags(CLI::App *cmd, PairOptions *pair) {
  cmd->add_option("--source", pair->source, "source WAV")->required();
  cmd->add_option("--target", pair->target, "target WAV")->required();
  AddF0Flags(cmd, &pair->source_f0, "source-");
  AddF0Flags(cmd, &pair->target_f0, "target-");
  AddPlanFlags(cmd, &pair->plan);
  cmd->add_option("--mu", pair->mu, "Tikhonov weight")->capture_default_str();
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Pitch-dependent NSGT and harmonic-aligned frame masks"};
  app.require_subcommand(1);

  AnalyzeOptions analyze;
  auto *c_analyze = app.add_subcommand("analyze", "WAV + f0 -> NSGC coefficient file");
  c_analyze->add_option("-i,--input", analyze.input, "input WAV")->required();
  c_analyze->add_option("-o,--output", analyze.output, "output NSGC file")->required();
  AddF0Flags(c_analyze, &analyze.f0, "");
  AddPlanFlags(c_analyze, &analyze.plan);
  c_analyze->add_flag("--allow-nonpainless", analyze.allow_nonpainless,
                      "write coefficients even if synthesis will be impossible");

  SynthOptions synth;
  auto *c_synth = app.add_subcommand("synth", "NSGC coefficient file -> WAV");
  c_synth->add_option("-i,--input", synth.input, "input NSGC file")->required();
  c_synth->add_option("-o,--output", synth.output, "output WAV")->required();
  c_synth->add_option("--win-ms", synth.win_ms, "Hann window support in ms")
      ->capture_default_str();
  c_synth->add_option("--length", synth.length, "trim output to this many samples");

  MaskOptions mask;
  auto *c_mask = app.add_subcommand("mask", "estimate the frame mask from source to target");
  AddPairFlags(c_mask, &mask.pair);
  c_mask->add_option("-o,--output", mask.output, "output HAFM file")->required();

  ConvertOptions convert;
  auto *c_convert = app.add_subcommand("convert", "apply a HAFM mask to a source WAV");
  c_convert->add_option("--source", convert.source, "source WAV")->required();
  AddF0Flags(c_convert, &convert.source_f0, "source-");
  c_convert->add_option("--mask", convert.mask, "HAFM mask file")->required();
  AddPlanFlags(c_convert, &convert.plan);
  c_convert->add_option("-o,--output", convert.output, "output WAV")->required();

  FeaturesOptions features;
  auto *c_features = app.add_subcommand("features", "column-wise mask magnitude features");
  AddPairFlags(c_features, &features.pair);
  c_features->add_option("-o,--output", features.output, "output feature CSV")->required();
  c_features->add_option("--pairing", features.pairing, "all | aligned")
      ->check(CLI::IsMember({"all", "aligned"}))
      ->capture_default_str();
  c_features->add_option("--max-pairs", features.max_pairs, "cap on column pairs");
  c_features->add_option("--dim", features.dimension, "feature length (0: common row count)");
  c_features->add_option("--label", features.label, "label column value")
      ->capture_default_str();
  c_features->add_option("--values", features.values,
                         "magnitude, or complex for real parts followed by imaginary parts")
      ->check(CLI::IsMember({"magnitude", "complex"}))
      ->capture_default_str();

  F0Options f0;
  auto *c_f0 = app.add_subcommand("f0", "estimate an f0 track by autocorrelation");
  c_f0->add_option("-i,--input", f0.input, "input WAV")->required();
  c_f0->add_option("-o,--output", f0.output, "output f0 CSV")->required();
  c_f0->add_option("--hop-ms", f0.hop_ms, "frame hop in ms")->capture_default_str();
  c_f0->add_option("--fmin", f0.estimator.fmin_hz, "lower f0 bound")->capture_default_str();
  c_f0->add_option("--fmax", f0.estimator.fmax_hz, "upper f0 bound")->capture_default_str();
  c_f0->add_option("--window-ms", f0.estimator.estimator_window_ms, "analysis window in ms")
      ->capture_default_str();

  EvalDemoOptions demo;
  auto *c_demo = app.add_subcommand("eval-demo", "synthetic speaker comparison demo");
  c_demo->add_option("--seed", demo.seed, "random seed")->capture_default_str();
  c_demo->add_option("--trials", demo.trials, "train (= test) utterances per speaker")
      ->capture_default_str();
  AddPlanFlags(c_demo, &demo.plan);
  c_demo->add_option("--mu", demo.mu, "Tikhonov weight")->capture_default_str();
  c_demo->add_option("--dim", demo.dimension, "feature length")->capture_default_str();
  c_demo->add_flag("--shuffle-labels", demo.shuffle_labels, "permutation control");
  c_demo->add_option("--features-csv", demo.features_csv, "also write all feature vectors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::fprintf(stderr, "hafm: usage error: %s\n", e.what());
    return 2;
  }

  try {
    if (*c_analyze) return RunAnalyze(analyze);
    if (*c_synth) return RunSynth(synth);
    if (*c_mask) return RunMask(mask);
    if (*c_convert) return RunConvert(convert);
    if (*c_features) return RunFeatures(features);
    if (*c_f0) return RunF0(f0);
    if (*c_demo) return RunEvalDemo(demo);
  } catch (const UsageError &e) {
    std::fprintf(stderr, "hafm: usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception &e) {
    std::fprintf(stderr, "hafm: error: %s\n", e.what());
    return 1;
  }
  return 2;
}
