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

#include "hafm/nsgt.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hafm/errors.h"
#include "hafm/fft.h"
#include "hafm/parallel.h"

namespace hafm {

namespace {

// Nonnegative residue of x modulo n.
inline std::size_t Mod(long long x, std::size_t n) {
  long long r = x % static_cast<long long>(n);
  return static_cast<std::size_t>(r < 0 ? r + static_cast<long long>(n) : r);
}

bool IsSevenSmooth(std::size_t n) {
  for (std::size_t prime : {2, 3, 5, 7})
    while (n % prime == 0) n /= prime;
  return n == 1;
}

void CheckShape(const NsgtPlan &plan,
                const std::vector<std::vector<std::complex<double>>> &frames) {
  if (frames.size() != plan.frame_count())
    throw ArgumentError("coefficient frame count " + std::to_string(frames.size()) +
                        " does not match plan frame count " +
                        std::to_string(plan.frame_count()));
  for (std::size_t n = 0; n < frames.size(); n++)
    if (frames[n].size() != plan.channel_counts()[n])
      throw ArgumentError("frame " + std::to_string(n) + " has " +
                          std::to_string(frames[n].size()) + " channels, plan expects " +
                          std::to_string(plan.channel_counts()[n]));
}

}  // namespace

// ---------------------------------------------------------------------------
// NsgtPlan

NsgtPlan NsgtPlan::FromChannelCounts(std::size_t signal_length, std::size_t time_hop,
                                     std::vector<std::size_t> channel_counts,
                                     std::size_t p, std::size_t q,
                                     double sample_rate_hz) {
  if (signal_length == 0 || time_hop == 0) throw ArgumentError("L and a must be positive");
  if (signal_length % time_hop != 0)
    throw ArgumentError("time hop " + std::to_string(time_hop) + " does not divide L=" +
                        std::to_string(signal_length));
  if (channel_counts.size() != signal_length / time_hop)
    throw ArgumentError("expected " + std::to_string(signal_length / time_hop) +
                        " frames, got " + std::to_string(channel_counts.size()));
  if (p == 0 || q == 0) throw ArgumentError("p and q must be positive");
  if (!(sample_rate_hz > 0.0)) throw ArgumentError("sample rate must be positive");
  NsgtPlan plan;
  plan.signal_length_ = signal_length;
  plan.time_hop_ = time_hop;
  plan.freq_hops_.resize(channel_counts.size());
  for (std::size_t n = 0; n < channel_counts.size(); n++) {
    std::size_t m = channel_counts[n];
    if (m == 0 || signal_length % m != 0)
      throw ArgumentError("channel count " + std::to_string(m) + " does not divide L=" +
                          std::to_string(signal_length));
    plan.freq_hops_[n] = signal_length / m;
  }
  plan.channel_counts_ = std::move(channel_counts);
  plan.p_ = p;
  plan.q_ = q;
  plan.sample_rate_hz_ = sample_rate_hz;
  plan.hop_deviation_.assign(plan.channel_counts_.size(), 0.0);
  return plan;
}

std::size_t NsgtPlan::MaxChannels() const {
  return *std::max_element(channel_counts_.begin(), channel_counts_.end());
}

std::size_t NsgtPlan::MinChannels() const {
  return *std::min_element(channel_counts_.begin(), channel_counts_.end());
}

double NsgtPlan::MaxHopDeviation() const {
  return hop_deviation_.empty()
             ? 0.0
             : *std::max_element(hop_deviation_.begin(), hop_deviation_.end());
}

bool NsgtPlan::operator==(const NsgtPlan &o) const {
  return signal_length_ == o.signal_length_ && time_hop_ == o.time_hop_ &&
         channel_counts_ == o.channel_counts_ && p_ == o.p_ && q_ == o.q_ &&
         sample_rate_hz_ == o.sample_rate_hz_;
}

// ---------------------------------------------------------------------------
// Plan construction

std::size_t ChoosePaddedLength(std::size_t raw_len) {
  if (raw_len == 0) throw ArgumentError("raw length must be positive");
  std::size_t n = raw_len;
  while (!IsSevenSmooth(n)) n++;
  return n;
}

std::size_t PaddedLength(std::size_t raw_len, std::size_t time_hop) {
  if (time_hop == 0) throw ArgumentError("time hop must be positive");
  std::size_t smooth = ChoosePaddedLength(raw_len);
  return (smooth + time_hop - 1) / time_hop * time_hop;
}

std::size_t PlanFrameCount(std::size_t raw_len, std::size_t time_hop) {
  return PaddedLength(raw_len, time_hop) / time_hop;
}

std::size_t ComputeFreqHop(double f0_hz, std::size_t p, std::size_t q,
                           double sample_rate_hz, std::size_t signal_length) {
  if (!(f0_hz > 0.0) || p == 0 || q == 0 || !(sample_rate_hz > 0.0) || signal_length == 0)
    throw ArgumentError("frequency hop parameters must be positive");
  double exact = static_cast<double>(p) * f0_hz * static_cast<double>(signal_length) /
                 (static_cast<double>(q) * sample_rate_hz);
  double rounded = std::round(exact);
  return rounded < 1.0 ? 1 : static_cast<std::size_t>(rounded);
}

std::size_t SnapHopToDivisor(std::size_t target_b, std::size_t signal_length) {
  if (signal_length == 0 || target_b == 0 || target_b > signal_length)
    throw ArgumentError("snap target must be in [1, L]");
  std::size_t best = 1;
  std::size_t best_dist = target_b - 1;
  auto consider = [&](std::size_t d) {
    std::size_t dist = d > target_b ? d - target_b : target_b - d;
    if (dist < best_dist || (dist == best_dist && d < best)) {
      best = d;
      best_dist = dist;
    }
  };
  for (std::size_t i = 1; i * i <= signal_length; i++) {
    if (signal_length % i == 0) {
      consider(i);
      consider(signal_length / i);
    }
  }
  return best;
}

NsgtPlan BuildPlan(const F0Track &f0_track, std::size_t time_hop, std::size_t p,
                   std::size_t q, double sample_rate_hz, std::size_t raw_len) {
  if (time_hop == 0) throw ArgumentError("time hop must be positive");
  std::size_t smooth = ChoosePaddedLength(raw_len);
  if (time_hop > smooth)
    throw ArgumentError("time hop " + std::to_string(time_hop) +
                        " exceeds padded length " + std::to_string(smooth));
  std::size_t length = PaddedLength(raw_len, time_hop);
  std::size_t frames = length / time_hop;
  if (f0_track.size() != frames)
    throw ArgumentError("f0 track has " + std::to_string(f0_track.size()) +
                        " frames, plan needs " + std::to_string(frames));
  for (double f0 : f0_track.values())
    if (!(f0 < sample_rate_hz / 2)) throw ArgumentError("f0 at or above Nyquist");

  std::vector<std::size_t> counts(frames);
  std::vector<double> deviation(frames);
  for (std::size_t n = 0; n < frames; n++) {
    std::size_t requested = std::min(
        ComputeFreqHop(f0_track.values()[n], p, q, sample_rate_hz, length), length);
    std::size_t b = SnapHopToDivisor(requested, length);
    counts[n] = length / b;
    deviation[n] = std::abs(static_cast<double>(b) - static_cast<double>(requested)) /
                   static_cast<double>(requested);
  }
  NsgtPlan plan =
      NsgtPlan::FromChannelCounts(length, time_hop, std::move(counts), p, q, sample_rate_hz);
  plan.hop_deviation_ = std::move(deviation);
  return plan;
}

NsgtPlan UniformPlan(std::size_t signal_length, std::size_t time_hop,
                     std::size_t freq_hop, double sample_rate_hz) {
  if (time_hop == 0 || freq_hop == 0 || signal_length % time_hop != 0 ||
      signal_length % freq_hop != 0)
    throw ArgumentError("uniform plan needs a | L and b | L");
  std::vector<std::size_t> counts(signal_length / time_hop, signal_length / freq_hop);
  return NsgtPlan::FromChannelCounts(signal_length, time_hop, std::move(counts), 1, 1,
                                     sample_rate_hz);
}

bool IsPainless(const NsgtPlan &plan, const Window &window) {
  return plan.MinChannels() >= WindowSupportLength(window);
}

// ---------------------------------------------------------------------------
// Coefficients

RaggedCoefficients::RaggedCoefficients(
    NsgtPlan plan, std::vector<std::vector<std::complex<double>>> frames)
    : plan_(std::move(plan)), frames_(std::move(frames)) {
  CheckShape(plan_, frames_);
}

double RaggedCoefficients::SquaredNorm() const {
  double sum = 0.0;
  for (const auto &frame : frames_)
    for (const auto &c : frame) sum += std::norm(c);
  return sum;
}

RaggedCoefficients RaggedCoefficients::Scaled(std::complex<double> factor) const {
  auto frames = frames_;
  for (auto &frame : frames)
    for (auto &c : frame) c *= factor;
  return RaggedCoefficients(plan_, std::move(frames));
}

// ---------------------------------------------------------------------------
// Analysis

namespace {

void CheckSignal(const Signal &signal, const NsgtPlan &plan) {
  if (signal.size() != plan.signal_length())
    throw ArgumentError("signal length " + std::to_string(signal.size()) +
                        " does not match plan length " +
                        std::to_string(plan.signal_length()));
}

}  // namespace

RaggedCoefficients NsgtForward(const Signal &signal, const NsgtPlan &plan,
                               const Window &window) {
  CheckSignal(signal, plan);
  const auto &f = signal.samples();
  const std::size_t length = plan.signal_length();
  const int lo = window.support_lo(), hi = window.support_hi();
  std::vector<std::vector<std::complex<double>>> frames(plan.frame_count());

  ParallelFor(plan.frame_count(), [&](std::size_t n) {
    const std::size_t channels = plan.channel_counts()[n];
    const long long start = static_cast<long long>(n * plan.time_hop());
    std::vector<std::complex<double>> folded(channels);
    for (int k = lo; k <= hi; k++) {
      double g = window(k);
      if (g == 0.0) continue;
      folded[Mod(k, channels)] += f[Mod(start + k, length)] * g;
    }
    frames[n].resize(channels);
    DftForward(folded, frames[n]);
  });
  return RaggedCoefficients(plan, std::move(frames));
}

RaggedCoefficients NsgtForwardNaive(const Signal &signal, const NsgtPlan &plan,
                                    const Window &window) {
  CheckSignal(signal, plan);
  const auto &f = signal.samples();
  const std::size_t length = plan.signal_length();
  const int lo = window.support_lo(), hi = window.support_hi();

  // exp(-2 pi i j / L); phases are reduced modulo L in integer arithmetic.
  std::vector<std::complex<double>> twiddle(length);
  for (std::size_t j = 0; j < length; j++) {
    double angle = -2.0 * std::numbers::pi * static_cast<double>(j) / length;
    twiddle[j] = {std::cos(angle), std::sin(angle)};
  }

  std::vector<std::vector<std::complex<double>>> frames(plan.frame_count());
  ParallelFor(plan.frame_count(), [&](std::size_t n) {
    const std::size_t channels = plan.channel_counts()[n];
    const long long hop = static_cast<long long>(plan.freq_hops()[n]);
    const long long start = static_cast<long long>(n * plan.time_hop());
    frames[n].assign(channels, {0.0, 0.0});
    for (std::size_t m = 0; m < channels; m++) {
      std::complex<double> acc = 0.0;
      for (int k = lo; k <= hi; k++) {
        double g = window(k);
        if (g == 0.0) continue;
        std::size_t phase = Mod(static_cast<long long>(m) * hop * k, length);
        acc += f[Mod(start + k, length)] * g * twiddle[phase];
      }
      frames[n][m] = acc;
    }
  });
  return RaggedCoefficients(plan, std::move(frames));
}

// ---------------------------------------------------------------------------
// Frame operator

FrameDiagonal ComputeFrameDiagonal(const NsgtPlan &plan, const Window &window) {
  const std::size_t length = plan.signal_length();
  FrameDiagonal diag{std::vector<double>(length, 0.0)};
  for (std::size_t n = 0; n < plan.frame_count(); n++) {
    const double channels = static_cast<double>(plan.channel_counts()[n]);
    const long long start = static_cast<long long>(n * plan.time_hop());
    for (int k = window.support_lo(); k <= window.support_hi(); k++) {
      double g = window(k);
      diag.s[Mod(start + k, length)] += channels * g * g;
    }
  }
  for (std::size_t l = 0; l < length; l++)
    if (!(diag.s[l] > 1e-300))
      throw CoverageError("frame operator vanishes at sample " + std::to_string(l) +
                          "; shifted windows do not cover the signal");
  return diag;
}

FrameBounds ComputeFrameBounds(const FrameDiagonal &diag) {
  if (diag.s.empty()) throw ArgumentError("empty frame diagonal");
  auto [lo, hi] = std::minmax_element(diag.s.begin(), diag.s.end());
  return {*lo, *hi};
}

// ---------------------------------------------------------------------------
// Synthesis

std::vector<std::complex<double>> NsgtInverseComplex(const RaggedCoefficients &coeffs,
                                                     const Window &window,
                                                     const FrameDiagonal &diag) {
  const NsgtPlan &plan = coeffs.plan();
  if (!IsPainless(plan, window))
    throw ArgumentError("plan is not painless for this window (min M_n " +
                        std::to_string(plan.MinChannels()) + " < support " +
                        std::to_string(WindowSupportLength(window)) + ")");
  const std::size_t length = plan.signal_length();
  if (diag.s.size() != length) throw ArgumentError("frame diagonal length mismatch");
  const int lo = window.support_lo(), hi = window.support_hi();
  const std::size_t span = static_cast<std::size_t>(hi - lo + 1);

  // Per-frame windowed segments first, then accumulation in frame order so
  // the sum does not depend on the thread count.
  std::vector<std::vector<std::complex<double>>> segments(plan.frame_count());
  ParallelFor(plan.frame_count(), [&](std::size_t n) {
    const std::size_t channels = plan.channel_counts()[n];
    std::vector<std::complex<double>> periodic(channels);
    DftBackward(coeffs.frame(n), periodic);
    auto &seg = segments[n];
    seg.resize(span);
    for (int k = lo; k <= hi; k++)
      seg[static_cast<std::size_t>(k - lo)] = window(k) * periodic[Mod(k, channels)];
  });

  std::vector<std::complex<double>> out(length);
  for (std::size_t n = 0; n < plan.frame_count(); n++) {
    const long long start = static_cast<long long>(n * plan.time_hop());
    for (int k = lo; k <= hi; k++)
      out[Mod(start + k, length)] += segments[n][static_cast<std::size_t>(k - lo)];
  }
  for (std::size_t l = 0; l < length; l++) out[l] /= diag.s[l];
  return out;
}

Signal NsgtInverse(const RaggedCoefficients &coeffs, const Window &window,
                   const FrameDiagonal &diag) {
  auto complex_out = NsgtInverseComplex(coeffs, window, diag);
  std::vector<double> out(complex_out.size());
  for (std::size_t l = 0; l < out.size(); l++) out[l] = complex_out[l].real();
  return Signal(std::move(out), coeffs.plan().sample_rate_hz());
}

Signal NsgtInverse(const RaggedCoefficients &coeffs, const Window &window) {
  if (!IsPainless(coeffs.plan(), window))
    throw ArgumentError("plan is not painless for this window");
  return NsgtInverse(coeffs, window, ComputeFrameDiagonal(coeffs.plan(), window));
}

std::pair<double, double> CoefficientEnergyIdentity(const Signal &signal,
                                                    const RaggedCoefficients &coeffs,
                                                    const FrameDiagonal &diag) {
  if (signal.size() != diag.s.size()) throw ArgumentError("signal/diagonal length mismatch");
  double rhs = 0.0;
  for (std::size_t l = 0; l < signal.size(); l++)
    rhs += diag.s[l] * signal.samples()[l] * signal.samples()[l];
  return {coeffs.SquaredNorm(), rhs};
}

}  // namespace hafm
