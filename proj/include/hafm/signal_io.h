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

#ifndef HAFM_SIGNAL_IO_H_
#define HAFM_SIGNAL_IO_H_

#include <cstddef>
#include <string>
#include <vector>

namespace hafm {

// Mono real-valued signal. Samples are nonempty and finite; the rate is
// positive.
class Signal {
 public:
  Signal(std::vector<double> samples, double sample_rate_hz);

  const std::vector<double> &samples() const { return samples_; }
  double sample_rate_hz() const { return sample_rate_hz_; }
  std::size_t size() const { return samples_.size(); }

  // Copy zero-padded (or truncated) to exactly `length` samples.
  Signal Resized(std::size_t length) const;

 private:
  std::vector<double> samples_;
  double sample_rate_hz_;
};

struct F0Point {
  double time_s;
  double f0_hz;
};

// One fundamental-frequency value per analysis frame.
class F0Track {
 public:
  // Every value must be in (0, sample_rate / 2).
  F0Track(std::vector<double> frame_values_hz, double sample_rate_hz);

  const std::vector<double> &values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double Mean() const;

 private:
  std::vector<double> values_;
};

// Accepts mono PCM16 or IEEE float32 RIFF/WAVE. PCM is scaled by 1/32768.
Signal ReadWav(const std::string &path);

// Writes mono IEEE float32. The file is written to a temporary sibling and
// renamed into place, so a failed write leaves no partial output.
void WriteWav(const Signal &signal, const std::string &path);

// Parses "time_s,f0_hz" CSV. Times must strictly increase, f0 must be > 0.
std::vector<F0Point> ReadF0Csv(const std::string &path);
std::vector<F0Point> ParseF0Csv(const std::string &text);
void WriteF0Csv(const std::vector<F0Point> &points, const std::string &path);

// Frame n takes the f0 at time n * hop / rate, linearly interpolated and
// clamped to the end points outside the covered range.
F0Track SampleF0Track(const std::vector<F0Point> &points, std::size_t hop_samples,
                      std::size_t frame_count, double sample_rate_hz);

// Plain integer-lag normalized-autocorrelation pitch estimator. Frame n is
// centered at sample n * hop. Silent frames repeat the previous value (fmin
// for the first frame).
F0Track EstimateF0Autocorrelation(const Signal &signal, std::size_t hop_samples,
                                  std::size_t window_samples, double fmin_hz,
                                  double fmax_hz, std::size_t frame_count);

// Same, with frame_count = ceil(size / hop).
F0Track EstimateF0Autocorrelation(const Signal &signal, std::size_t hop_samples,
                                  std::size_t window_samples, double fmin_hz,
                                  double fmax_hz);

// Writes `bytes` to `path` via a temporary file and rename.
void WriteFileAtomically(const std::string &path, const std::string &bytes);

}  // namespace hafm

#endif  // HAFM_SIGNAL_IO_H_
