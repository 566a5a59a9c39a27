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

#ifndef HAFM_NSGT_H_
#define HAFM_NSGT_H_

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "hafm/signal_io.h"
#include "hafm/windows.h"

namespace hafm {

// Non-stationary Gabor lattice with constant time hop a and per-frame
// frequency hop b_n. Atoms are
//   g_{m,n}[l] = g[l - n a] exp(2 pi i m b_n (l - n a) / L),  m < M_n,
// with all index arithmetic modulo L. Invariants: N a = L and M_n b_n = L.
class NsgtPlan {
 public:
  // Builds a plan from channel counts; b_n = L / M_n. Throws ArgumentError
  // unless every M_n divides L and a divides L.
  static NsgtPlan FromChannelCounts(std::size_t signal_length, std::size_t time_hop,
                                    std::vector<std::size_t> channel_counts,
                                    std::size_t p, std::size_t q, double sample_rate_hz);

  std::size_t signal_length() const { return signal_length_; }
  std::size_t time_hop() const { return time_hop_; }
  std::size_t frame_count() const { return channel_counts_.size(); }
  const std::vector<std::size_t> &freq_hops() const { return freq_hops_; }
  const std::vector<std::size_t> &channel_counts() const { return channel_counts_; }
  std::size_t p() const { return p_; }
  std::size_t q() const { return q_; }
  double sample_rate_hz() const { return sample_rate_hz_; }

  std::size_t MaxChannels() const;
  std::size_t MinChannels() const;

  // |b_n - requested b_n| / requested b_n after snapping to a divisor of L.
  // All zeros for plans not built from an f0 track.
  const std::vector<double> &hop_deviation() const { return hop_deviation_; }
  double MaxHopDeviation() const;

  bool operator==(const NsgtPlan &other) const;

 private:
  friend NsgtPlan BuildPlan(const F0Track &, std::size_t, std::size_t, std::size_t,
                            double, std::size_t);
  NsgtPlan() = default;

  std::size_t signal_length_ = 0;
  std::size_t time_hop_ = 0;
  std::vector<std::size_t> freq_hops_;
  std::vector<std::size_t> channel_counts_;
  std::size_t p_ = 1;
  std::size_t q_ = 1;
  double sample_rate_hz_ = 0.0;
  std::vector<double> hop_deviation_;
};

// Smallest 7-smooth integer >= raw_len.
std::size_t ChoosePaddedLength(std::size_t raw_len);

// ChoosePaddedLength(raw_len) raised to the next multiple of time_hop. This is
// the L that BuildPlan uses.
std::size_t PaddedLength(std::size_t raw_len, std::size_t time_hop);

// Frame count N = PaddedLength(raw_len, a) / a, i.e. the f0 track length that
// BuildPlan expects.
std::size_t PlanFrameCount(std::size_t raw_len, std::size_t time_hop);

// round(p f0 L / (q fs)), ties away from zero, at least 1.
std::size_t ComputeFreqHop(double f0_hz, std::size_t p, std::size_t q,
                           double sample_rate_hz, std::size_t signal_length);

// Divisor of L closest to target_b; ties go to the smaller divisor.
std::size_t SnapHopToDivisor(std::size_t target_b, std::size_t signal_length);

// Pitch-dependent plan: b_n from the f0 of frame n, snapped to a divisor of L.
NsgtPlan BuildPlan(const F0Track &f0_track, std::size_t time_hop, std::size_t p,
                   std::size_t q, double sample_rate_hz, std::size_t raw_len);

// Regular DGT lattice: b_n = b for every frame.
NsgtPlan UniformPlan(std::size_t signal_length, std::size_t time_hop,
                     std::size_t freq_hop, double sample_rate_hz);

// min_n M_n >= support length of the window.
bool IsPainless(const NsgtPlan &plan, const Window &window);

// NSGT coefficients; frame n holds M_n complex values.
class RaggedCoefficients {
 public:
  RaggedCoefficients(NsgtPlan plan, std::vector<std::vector<std::complex<double>>> frames);

  const NsgtPlan &plan() const { return plan_; }
  const std::vector<std::vector<std::complex<double>>> &frames() const { return frames_; }
  const std::vector<std::complex<double>> &frame(std::size_t n) const { return frames_[n]; }
  std::size_t frame_count() const { return frames_.size(); }

  double SquaredNorm() const;
  RaggedCoefficients Scaled(std::complex<double> factor) const;

 private:
  NsgtPlan plan_;
  std::vector<std::vector<std::complex<double>>> frames_;
};

// c_{m,n} = <f, g_{m,n}> evaluated with one length-M_n DFT per frame. The
// windowed segment is folded modulo M_n before the transform, which is exact
// for any M_n.
RaggedCoefficients NsgtForward(const Signal &signal, const NsgtPlan &plan,
                               const Window &window);

// Reference evaluation of the same inner products, O(sum_n M_n W).
RaggedCoefficients NsgtForwardNaive(const Signal &signal, const NsgtPlan &plan,
                                    const Window &window);

// Diagonal of the painless frame operator, s_l = sum_n M_n |g[l - n a]|^2.
struct FrameDiagonal {
  std::vector<double> s;
};

// Throws CoverageError if some s_l is not positive.
FrameDiagonal ComputeFrameDiagonal(const NsgtPlan &plan, const Window &window);

struct FrameBounds {
  double lower;
  double upper;
};

// For a diagonal frame operator the optimal bounds are min and max of s.
FrameBounds ComputeFrameBounds(const FrameDiagonal &diag);

// Synthesis with the canonical painless dual g_{m,n}[l] / s_l. Requires a
// painless plan. Returns the real part of the synthesized signal.
Signal NsgtInverse(const RaggedCoefficients &coeffs, const Window &window);
Signal NsgtInverse(const RaggedCoefficients &coeffs, const Window &window,
                   const FrameDiagonal &diag);

// Complex-valued synthesis, before taking the real part.
std::vector<std::complex<double>> NsgtInverseComplex(const RaggedCoefficients &coeffs,
                                                     const Window &window,
                                                     const FrameDiagonal &diag);

// (sum |c|^2, sum_l s_l |f[l]|^2). Both sides agree for painless plans.
std::pair<double, double> CoefficientEnergyIdentity(const Signal &signal,
                                                    const RaggedCoefficients &coeffs,
                                                    const FrameDiagonal &diag);

}  // namespace hafm

#endif  // HAFM_NSGT_H_
