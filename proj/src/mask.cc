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

#include "hafm/mask.h"

#include <cmath>
#include <string>

#include "hafm/errors.h"

namespace hafm {

namespace {

// Closed-form Tikhonov entry, written out so that a == b gives exactly
// (|a|^2 + mu ref) / (|a|^2 + mu).
inline std::complex<double> TikhonovEntry(std::complex<double> a, std::complex<double> b,
                                          std::complex<double> ref, double mu) {
  const double power = a.real() * a.real() + a.imag() * a.imag();
  if (power == 0.0) return ref;
  const double re = a.real() * b.real() + a.imag() * b.imag();
  const double im = a.real() * b.imag() - a.imag() * b.real();
  return {(re + mu * ref.real()) / (power + mu), (im + mu * ref.imag()) / (power + mu)};
}

}  // namespace

std::complex<double> TikhonovMaskEntry(std::complex<double> source, std::complex<double> target,
                                       std::complex<double> reference, double mu) {
  return TikhonovEntry(source, target, reference, mu);
}

std::size_t ChooseP(const AlignmentParams &params, double mean_f0_hz) {
  if (!(mean_f0_hz > 0.0)) throw ArgumentError("mean f0 must be positive");
  if (params.mode == AlignmentMode::kUnitP) return 1;
  if (!(params.anchor_hz > 0.0)) throw ArgumentError("anchor frequency must be positive");
  double p = std::round(params.anchor_hz / mean_f0_hz);
  return p < 1.0 ? 1 : static_cast<std::size_t>(p);
}

std::size_t CommonRowCount(const NsgtPlan &a, const NsgtPlan &b) {
  return std::max(a.MaxChannels(), b.MaxChannels());
}

AlignedCoefficients AlignExtend(const RaggedCoefficients &coeffs, std::size_t target_rows) {
  const NsgtPlan &plan = coeffs.plan();
  if (target_rows < plan.MaxChannels())
    throw ArgumentError("target row count " + std::to_string(target_rows) +
                        " is below max M_n = " + std::to_string(plan.MaxChannels()));
  AlignedCoefficients out{ComplexMatrix(target_rows, plan.frame_count()),
                          plan.channel_counts(), plan};
  for (std::size_t n = 0; n < plan.frame_count(); n++) {
    const auto &frame = coeffs.frame(n);
    auto *col = out.matrix.column(n);
    for (std::size_t m = 0; m < target_rows; m++) col[m] = frame[m % frame.size()];
  }
  return out;
}

RaggedCoefficients TruncateToNative(const AlignedCoefficients &aligned) {
  std::vector<std::vector<std::complex<double>>> frames(aligned.native_M.size());
  for (std::size_t n = 0; n < frames.size(); n++) {
    const auto *col = aligned.matrix.column(n);
    frames[n].assign(col, col + aligned.native_M[n]);
  }
  return RaggedCoefficients(aligned.plan, std::move(frames));
}

NaiveMask EstimateMaskNaive(const AlignedCoefficients &source,
                            const AlignedCoefficients &target, double epsilon) {
  if (!(epsilon >= 0.0)) throw ArgumentError("epsilon must be nonnegative");
  const ComplexMatrix &ca = source.matrix, &cb = target.matrix;
  if (!ca.SameShape(cb)) throw ArgumentError("coefficient shapes differ");
  NaiveMask out{FrameMask{ComplexMatrix(ca.rows(), ca.cols(), 1.0)},
                std::vector<bool>(ca.data().size(), true)};
  for (std::size_t i = 0; i < ca.data().size(); i++) {
    if (std::abs(ca.data()[i]) > epsilon) {
      out.mask.sigma.data()[i] = cb.data()[i] / ca.data()[i];
    } else {
      out.valid[i] = false;
    }
  }
  return out;
}

FrameMask EstimateMaskTikhonov(const ComplexMatrix &ca, const ComplexMatrix &cb,
                               const MaskEstimationConfig &config) {
  if (!(config.mu > 0.0)) throw ArgumentError("Tikhonov estimator requires mu > 0");
  if (!ca.SameShape(cb)) throw ArgumentError("coefficient shapes differ");
  if (config.sigma_ref && !config.sigma_ref->SameShape(ca))
    throw ArgumentError("reference mask shape differs from coefficients");
  const double mu = config.mu;
  FrameMask out{ComplexMatrix(ca.rows(), ca.cols())};
  for (std::size_t n = 0; n < ca.cols(); n++) {
    for (std::size_t m = 0; m < ca.rows(); m++) {
      out.sigma(m, n) = TikhonovEntry(ca(m, n), cb(m, n), config.Reference(m, n), mu);
    }
  }
  return out;
}

FrameMask EstimateMaskTikhonov(const AlignedCoefficients &source,
                               const AlignedCoefficients &target,
                               const MaskEstimationConfig &config) {
  return EstimateMaskTikhonov(source.matrix, target.matrix, config);
}

double MaskObjective(const FrameMask &mask, const ComplexMatrix &ca, const ComplexMatrix &cb,
                     const MaskEstimationConfig &config) {
  if (!ca.SameShape(cb) || !mask.sigma.SameShape(ca))
    throw ArgumentError("mask and coefficient shapes differ");
  if (config.sigma_ref && !config.sigma_ref->SameShape(ca))
    throw ArgumentError("reference mask shape differs from coefficients");
  double fit = 0.0, penalty = 0.0;
  for (std::size_t n = 0; n < ca.cols(); n++) {
    for (std::size_t m = 0; m < ca.rows(); m++) {
      fit += std::norm(cb(m, n) - mask.sigma(m, n) * ca(m, n));
      penalty += std::norm(mask.sigma(m, n) - config.Reference(m, n));
    }
  }
  return fit + config.mu * penalty;
}

RaggedCoefficients FoldMaskedCoefficients(const FrameMask &mask,
                                          const AlignedCoefficients &source,
                                          const NsgtPlan &target_plan) {
  const ComplexMatrix &ca = source.matrix;
  if (!mask.sigma.SameShape(ca)) throw ArgumentError("mask and coefficient shapes differ");
  if (target_plan.frame_count() != ca.cols())
    throw ArgumentError("target plan has " + std::to_string(target_plan.frame_count()) +
                        " frames, mask has " + std::to_string(ca.cols()));
  if (target_plan.signal_length() != source.plan.signal_length())
    throw ArgumentError("source and target plans have different signal lengths");
  if (target_plan.MaxChannels() > ca.rows())
    throw ArgumentError("target plan has more channels than the aligned grid");
  std::vector<std::vector<std::complex<double>>> frames(ca.cols());
  for (std::size_t n = 0; n < ca.cols(); n++) {
    const std::size_t channels = target_plan.channel_counts()[n];
    std::vector<std::complex<double>> sum(channels);
    std::vector<std::size_t> count(channels, 0);
    for (std::size_t m = 0; m < ca.rows(); m++) {
      sum[m % channels] += mask.sigma(m, n) * ca(m, n);
      count[m % channels]++;
    }
    for (std::size_t r = 0; r < channels; r++) sum[r] /= static_cast<double>(count[r]);
    frames[n] = std::move(sum);
  }
  return RaggedCoefficients(target_plan, std::move(frames));
}

Signal ApplyMask(const FrameMask &mask, const AlignedCoefficients &source,
                 const NsgtPlan &target_plan, const Window &window) {
  if (!IsPainless(target_plan, window))
    throw ArgumentError("target plan is not painless for this window");
  return NsgtInverse(FoldMaskedCoefficients(mask, source, target_plan), window);
}

}  // namespace hafm
