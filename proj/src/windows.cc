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

#include "hafm/windows.h"

#include <cmath>
#include <numbers>
#include <string>

#include "hafm/errors.h"

namespace hafm {

Window::Window(std::vector<double> centered) : values_(std::move(centered)) {
  if (values_.size() % 2 == 0) throw ArgumentError("window must have odd length");
  half_width_ = static_cast<int>(values_.size() / 2);
  bool any_nonzero = false;
  for (std::size_t i = 0; i < values_.size(); i++) {
    if (!std::isfinite(values_[i])) throw ArgumentError("window has non-finite values");
    if (values_[i] != values_[values_.size() - 1 - i])
      throw ArgumentError("window is not symmetric around zero");
    any_nonzero |= values_[i] != 0.0;
  }
  if (!any_nonzero) throw ArgumentError("window is identically zero");
}

double Window::SquaredNorm() const {
  double sum = 0.0;
  for (double v : values_) sum += v * v;
  return sum;
}

Window HannWindow(int support_samples) {
  if (support_samples < 2 || support_samples % 2 != 0)
    throw ArgumentError("Hann support must be a positive even integer, got " +
                        std::to_string(support_samples));
  const int half = support_samples / 2;
  std::vector<double> v(static_cast<std::size_t>(support_samples + 1));
  for (int l = 0; l <= half; l++) {
    // Exact zero at the end points, where cos evaluates to -1 + O(eps).
    double g = l == half ? 0.0
                         : 0.5 * (1.0 + std::cos(2.0 * std::numbers::pi * l / support_samples));
    v[static_cast<std::size_t>(half + l)] = g;
    v[static_cast<std::size_t>(half - l)] = g;
  }
  return Window(std::move(v));
}

Window RectangularWindow(int half_width) {
  if (half_width < 0) throw ArgumentError("negative half width");
  return Window(std::vector<double>(static_cast<std::size_t>(2 * half_width + 1), 1.0));
}

std::size_t WindowSupportLength(const Window &window) {
  int length = window.support_hi() - window.support_lo();
  return length == 0 ? 1 : static_cast<std::size_t>(length);
}

}  // namespace hafm
