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

#include "hafm/features.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hafm/errors.h"
#include "hafm/parallel.h"
#include "hafm/signal_io.h"

namespace hafm {

std::vector<FeatureVector> ExtractFeatures(const AlignedCoefficients &source,
                                           const AlignedCoefficients &target,
                                           const MaskEstimationConfig &config,
                                           const PairingPolicy &policy,
                                           std::size_t dimension,
                                           const std::string &label,
                                           FeatureMapping mapping) {
  const ComplexMatrix &ca = source.matrix, &cb = target.matrix;
  if (!(config.mu > 0.0)) throw ArgumentError("feature extraction requires mu > 0");
  if (ca.rows() != cb.rows())
    throw ArgumentError("source and target have different row counts");
  if (config.sigma_ref &&
      (config.sigma_ref->rows() != ca.rows() || config.sigma_ref->cols() != ca.cols()))
    throw ArgumentError("reference mask shape differs from source coefficients");
  if (dimension == 0) throw ArgumentError("feature dimension must be positive");
  if (policy.max_pairs == 0) throw ArgumentError("max_pairs must be at least 1");

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (policy.mode == PairingMode::kAligned) {
    if (ca.cols() != cb.cols())
      throw ArgumentError("aligned pairing needs equal frame counts");
    for (std::size_t n = 0; n < ca.cols(); n++) pairs.emplace_back(n, n);
  } else {
    for (std::size_t na = 0; na < ca.cols() && pairs.size() < policy.max_pairs; na++)
      for (std::size_t nb = 0; nb < cb.cols() && pairs.size() < policy.max_pairs; nb++)
        pairs.emplace_back(na, nb);
  }
  if (pairs.empty()) throw ArgumentError("no column pairs selected");

  const std::size_t rows = ca.rows();
  const std::size_t kept = std::min(rows, dimension);
  std::vector<FeatureVector> out(pairs.size());
  ParallelFor(pairs.size(), [&](std::size_t i) {
    auto [na, nb] = pairs[i];
    FeatureVector &fv = out[i];
    const bool split = mapping == FeatureMapping::kRealImag;
    fv.values.assign(split ? 2 * dimension : dimension, 0.0);
    fv.source_label = label;
    fv.source_column = na;
    fv.target_column = nb;
    const auto *a = ca.column(na);
    const auto *b = cb.column(nb);
    for (std::size_t m = 0; m < kept; m++) {
      auto sigma = TikhonovMaskEntry(a[m], b[m], config.Reference(m, na), config.mu);
      if (split) {
        fv.values[m] = sigma.real();
        fv.values[dimension + m] = sigma.imag();
      } else {
        fv.values[m] = std::abs(sigma);
      }
    }
  });
  return out;
}

std::string FormatFeaturesCsv(const std::vector<FeatureVector> &features) {
  if (features.empty()) throw ArgumentError("no feature vectors to write");
  const std::size_t dimension = features.front().values.size();
  std::string out = "label,nA,nB";
  for (std::size_t d = 0; d < dimension; d++) out += ",f" + std::to_string(d);
  out += '\n';
  char buf[40];
  for (const auto &fv : features) {
    if (fv.values.size() != dimension)
      throw ArgumentError("feature vectors have different dimensions");
    if (fv.source_label.find_first_of(",\r\n") != std::string::npos)
      throw ArgumentError("feature label contains a comma or newline");
    out += fv.source_label;
    out += ',' + std::to_string(fv.source_column) + ',' + std::to_string(fv.target_column);
    for (double v : fv.values) {
      std::snprintf(buf, sizeof buf, ",%.17g", v);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void WriteFeaturesCsv(const std::vector<FeatureVector> &features, const std::string &path) {
  WriteFileAtomically(path, FormatFeaturesCsv(features));
}

std::vector<FeatureVector> ParseFeaturesCsv(const std::string &text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "missing header");
  if (line.rfind("label,nA,nB", 0) != 0) throw ParseError(1, "unexpected header");
  std::size_t dimension = 0;
  for (char c : line) dimension += c == ',';
  dimension -= 2;

  std::vector<FeatureVector> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    line_no++;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    if (fields.size() != dimension + 3)
      throw ParseError(line_no, "expected " + std::to_string(dimension + 3) + " fields");
    FeatureVector fv;
    fv.source_label = fields[0];
    try {
      fv.source_column = std::stoul(fields[1]);
      fv.target_column = std::stoul(fields[2]);
      fv.values.reserve(dimension);
      for (std::size_t d = 0; d < dimension; d++) fv.values.push_back(std::stod(fields[d + 3]));
    } catch (const std::exception &) {
      throw ParseError(line_no, "malformed number");
    }
    out.push_back(std::move(fv));
  }
  return out;
}

std::vector<FeatureVector> ReadFeaturesCsv(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseFeaturesCsv(ss.str());
}

}  // namespace hafm
