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

#include "hafm/signal_io.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <system_error>

#include "hafm/errors.h"

namespace hafm {

Signal::Signal(std::vector<double> samples, double sample_rate_hz)
    : samples_(std::move(samples)), sample_rate_hz_(sample_rate_hz) {
  if (samples_.empty()) throw ArgumentError("signal has no samples");
  if (!(sample_rate_hz_ > 0.0) || !std::isfinite(sample_rate_hz_))
    throw ArgumentError("sample rate must be positive");
  for (double v : samples_)
    if (!std::isfinite(v)) throw ArgumentError("signal contains non-finite samples");
}

Signal Signal::Resized(std::size_t length) const {
  std::vector<double> out(samples_);
  out.resize(length, 0.0);
  return Signal(std::move(out), sample_rate_hz_);
}

F0Track::F0Track(std::vector<double> frame_values_hz, double sample_rate_hz)
    : values_(std::move(frame_values_hz)) {
  if (values_.empty()) throw ArgumentError("f0 track is empty");
  for (std::size_t n = 0; n < values_.size(); n++) {
    double v = values_[n];
    if (!(v > 0.0) || !(v < sample_rate_hz / 2))
      throw ArgumentError("f0 value " + std::to_string(v) + " at frame " +
                          std::to_string(n) + " is outside (0, rate/2)");
  }
}

double F0Track::Mean() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0) / values_.size();
}

// ---------------------------------------------------------------------------
// WAV

namespace {

uint32_t Le32(const unsigned char *p) {
  return uint32_t(p[0]) | uint32_t(p[1]) << 8 | uint32_t(p[2]) << 16 |
         uint32_t(p[3]) << 24;
}
uint16_t Le16(const unsigned char *p) { return uint16_t(p[0] | p[1] << 8); }

void PutLe32(std::string *out, uint32_t v) {
  for (int i = 0; i < 4; i++) out->push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void PutLe16(std::string *out, uint16_t v) {
  out->push_back(static_cast<char>(v & 0xff));
  out->push_back(static_cast<char>(v >> 8));
}

std::string ReadWholeFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path);
  return ss.str();
}

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatFloat = 3;
constexpr uint16_t kFormatExtensible = 0xfffe;

}  // namespace

Signal ReadWav(const std::string &path) {
  const std::string bytes = ReadWholeFile(path);
  const auto *data = reinterpret_cast<const unsigned char *>(bytes.data());
  const std::size_t size = bytes.size();
  if (size < 12) throw IoError(path + ": truncated RIFF header");
  if (std::memcmp(data, "RIFF", 4) != 0 || std::memcmp(data + 8, "WAVE", 4) != 0)
    throw FormatError(path + ": not a RIFF/WAVE file");

  bool have_fmt = false;
  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  std::size_t pos = 12;
  while (true) {
    if (pos + 8 > size) {
      if (!have_fmt) throw IoError(path + ": truncated before fmt chunk");
      throw FormatError(path + ": no data chunk");
    }
    const unsigned char *chunk = data + pos;
    uint32_t chunk_size = Le32(chunk + 4);
    std::size_t body = pos + 8;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (chunk_size < 16 || body + chunk_size > size)
        throw IoError(path + ": truncated fmt chunk");
      format = Le16(data + body);
      channels = Le16(data + body + 2);
      rate = Le32(data + body + 4);
      bits = Le16(data + body + 14);
      if (format == kFormatExtensible) {
        if (chunk_size < 26) throw FormatError(path + ": short extensible fmt chunk");
        format = Le16(data + body + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (!have_fmt) throw FormatError(path + ": data chunk before fmt chunk");
      if (channels != 1)
        throw FormatError(path + ": expected mono, found " + std::to_string(channels) +
                          " channels");
      if (rate == 0) throw FormatError(path + ": zero sample rate");
      std::size_t width;
      if (format == kFormatPcm && bits == 16) {
        width = 2;
      } else if (format == kFormatFloat && bits == 32) {
        width = 4;
      } else {
        throw FormatError(path + ": unsupported encoding (format " +
                          std::to_string(format) + ", " + std::to_string(bits) +
                          " bits)");
      }
      if (body + chunk_size > size) throw IoError(path + ": truncated data chunk");
      if (chunk_size % width != 0) throw IoError(path + ": partial sample in data chunk");
      std::size_t count = chunk_size / width;
      std::vector<double> samples(count);
      const unsigned char *p = data + body;
      for (std::size_t i = 0; i < count; i++, p += width) {
        if (width == 2) {
          samples[i] = static_cast<int16_t>(Le16(p)) / 32768.0;
        } else {
          uint32_t raw = Le32(p);
          float f;
          std::memcpy(&f, &raw, sizeof f);
          samples[i] = f;
        }
      }
      return Signal(std::move(samples), static_cast<double>(rate));
    }
    pos = body + chunk_size + (chunk_size & 1);
  }
}

void WriteWav(const Signal &signal, const std::string &path) {
  const auto &samples = signal.samples();
  if (samples.size() > (0xffffffffu - 64) / 4)
    throw ArgumentError("signal too long for a WAV file");
  uint32_t data_bytes = static_cast<uint32_t>(samples.size() * 4);
  uint32_t rate = static_cast<uint32_t>(std::lround(signal.sample_rate_hz()));
  std::string out;
  out.reserve(44 + data_bytes);
  out += "RIFF";
  PutLe32(&out, 36 + data_bytes);
  out += "WAVEfmt ";
  PutLe32(&out, 16);
  PutLe16(&out, kFormatFloat);
  PutLe16(&out, 1);
  PutLe32(&out, rate);
  PutLe32(&out, rate * 4);
  PutLe16(&out, 4);
  PutLe16(&out, 32);
  out += "data";
  PutLe32(&out, data_bytes);
  for (double v : samples) {
    float f = static_cast<float>(v);
    uint32_t raw;
    std::memcpy(&raw, &f, sizeof raw);
    PutLe32(&out, raw);
  }
  WriteFileAtomically(path, out);
}

void WriteFileAtomically(const std::string &path, const std::string &bytes) {
  if (path.empty()) throw IoError("empty output path");
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      out.close();
      std::remove(tmp.c_str());
      throw IoError("write failed: " + tmp);
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::remove(tmp.c_str());
    throw IoError("cannot rename " + tmp + " to " + path + ": " + ec.message());
  }
}

// ---------------------------------------------------------------------------
// f0 CSV

std::vector<F0Point> ParseF0Csv(const std::string &text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  auto strip = [](std::string *s) {
    while (!s->empty() && (s->back() == '\r' || s->back() == ' ')) s->pop_back();
  };
  if (!std::getline(in, line)) throw ParseError(1, "missing header");
  line_no = 1;
  strip(&line);
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  if (line != "time_s,f0_hz") throw ParseError(1, "expected header \"time_s,f0_hz\"");

  std::vector<F0Point> points;
  while (std::getline(in, line)) {
    line_no++;
    strip(&line);
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
      throw ParseError(line_no, "expected two comma-separated fields");
    F0Point pt;
    try {
      std::size_t used = 0;
      std::string t = line.substr(0, comma), f = line.substr(comma + 1);
      pt.time_s = std::stod(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      pt.f0_hz = std::stod(f, &used);
      if (used != f.size()) throw std::invalid_argument(f);
    } catch (const std::exception &) {
      throw ParseError(line_no, "malformed number in \"" + line + "\"");
    }
    if (!std::isfinite(pt.time_s) || pt.time_s < 0.0)
      throw ParseError(line_no, "time must be finite and nonnegative");
    if (!std::isfinite(pt.f0_hz) || pt.f0_hz <= 0.0)
      throw ParseError(line_no, "f0 must be positive");
    if (!points.empty() && pt.time_s <= points.back().time_s)
      throw ParseError(line_no, "times must be strictly increasing");
    points.push_back(pt);
  }
  return points;
}

std::vector<F0Point> ReadF0Csv(const std::string &path) {
  return ParseF0Csv(ReadWholeFile(path));
}

void WriteF0Csv(const std::vector<F0Point> &points, const std::string &path) {
  std::string out = "time_s,f0_hz\n";
  char buf[64];
  for (const auto &p : points) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.time_s, p.f0_hz);
    out += buf;
  }
  WriteFileAtomically(path, out);
}

F0Track SampleF0Track(const std::vector<F0Point> &points, std::size_t hop_samples,
                      std::size_t frame_count, double sample_rate_hz) {
  if (points.empty()) throw ArgumentError("f0 point list is empty");
  if (hop_samples == 0 || frame_count == 0)
    throw ArgumentError("hop and frame count must be positive");
  std::vector<double> values(frame_count);
  for (std::size_t n = 0; n < frame_count; n++) {
    double t = static_cast<double>(n * hop_samples) / sample_rate_hz;
    if (t <= points.front().time_s) {
      values[n] = points.front().f0_hz;
    } else if (t >= points.back().time_s) {
      values[n] = points.back().f0_hz;
    } else {
      auto hi = std::upper_bound(points.begin(), points.end(), t,
                                 [](double x, const F0Point &p) { return x < p.time_s; });
      auto lo = hi - 1;
      double w = (t - lo->time_s) / (hi->time_s - lo->time_s);
      values[n] = lo->f0_hz + w * (hi->f0_hz - lo->f0_hz);
    }
  }
  return F0Track(std::move(values), sample_rate_hz);
}

// ---------------------------------------------------------------------------
// Autocorrelation pitch estimator

F0Track EstimateF0Autocorrelation(const Signal &signal, std::size_t hop_samples,
                                  std::size_t window_samples, double fmin_hz,
                                  double fmax_hz, std::size_t frame_count) {
  const double rate = signal.sample_rate_hz();
  if (hop_samples == 0 || window_samples == 0 || frame_count == 0)
    throw ArgumentError("hop, window and frame count must be positive");
  if (!(fmin_hz > 0.0) || !(fmin_hz < fmax_hz) || !(fmax_hz < rate / 2))
    throw ArgumentError("require 0 < fmin < fmax < rate/2");
  if (static_cast<double>(window_samples) < 2.0 * rate / fmin_hz)
    throw ArgumentError("window must cover at least two periods of fmin");

  const auto &x = signal.samples();
  const std::size_t width = std::min(window_samples, x.size());
  const std::size_t min_lag =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(rate / fmax_hz)));
  const std::size_t max_lag =
      std::min<std::size_t>(width - 1, static_cast<std::size_t>(std::floor(rate / fmin_hz)));

  std::vector<double> values(frame_count);
  std::vector<double> corr;
  double previous = fmin_hz;
  for (std::size_t n = 0; n < frame_count; n++) {
    double center = static_cast<double>(n * hop_samples);
    double start_d = std::clamp(center - width / 2.0, 0.0,
                                static_cast<double>(x.size() - width));
    const double *seg = x.data() + static_cast<std::size_t>(start_d);

    double energy = 0.0;
    for (std::size_t i = 0; i < width; i++) energy += seg[i] * seg[i];
    if (energy == 0.0 || min_lag > max_lag) {
      values[n] = previous;
      continue;
    }
    corr.assign(max_lag + 2, 0.0);
    double best = -2.0;
    for (std::size_t lag = min_lag; lag <= max_lag; lag++) {
      double num = 0.0, e0 = 0.0, e1 = 0.0;
      for (std::size_t i = 0; i + lag < width; i++) {
        num += seg[i] * seg[i + lag];
        e0 += seg[i] * seg[i];
        e1 += seg[i + lag] * seg[i + lag];
      }
      double den = std::sqrt(e0 * e1);
      corr[lag] = den > 0.0 ? num / den : 0.0;
      best = std::max(best, corr[lag]);
    }
    // Shortest-lag local peak close to the global maximum; a periodic signal
    // correlates equally well at every multiple of its period.
    std::size_t chosen = 0;
    for (std::size_t lag = min_lag; lag <= max_lag; lag++) {
      bool left_ok = lag == min_lag || corr[lag] >= corr[lag - 1];
      bool right_ok = lag == max_lag || corr[lag] >= corr[lag + 1];
      if (left_ok && right_ok && corr[lag] >= 0.9 * best && lag > min_lag) {
        chosen = lag;
        break;
      }
    }
    if (chosen == 0) {
      chosen = min_lag;
      for (std::size_t lag = min_lag; lag <= max_lag; lag++)
        if (corr[lag] > corr[chosen]) chosen = lag;
    }
    values[n] = rate / static_cast<double>(chosen);
    previous = values[n];
  }
  return F0Track(std::move(values), rate);
}

F0Track EstimateF0Autocorrelation(const Signal &signal, std::size_t hop_samples,
                                  std::size_t window_samples, double fmin_hz,
                                  double fmax_hz) {
  if (hop_samples == 0) throw ArgumentError("hop must be positive");
  std::size_t frames = (signal.size() + hop_samples - 1) / hop_samples;
  return EstimateF0Autocorrelation(signal, hop_samples, window_samples, fmin_hz,
                                   fmax_hz, frames);
}

}  // namespace hafm
