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

#ifndef HAFM_WINDOWS_H_
#define HAFM_WINDOWS_H_

#include <cstddef>
#include <vector>

namespace hafm {

// Real window symmetric around offset 0, stored on [-half_width, half_width].
// Values outside that interval are zero.
class Window {
 public:
  // `centered` has odd length 2h+1; entry h is offset 0. Must be symmetric,
  // finite and not identically zero.
  explicit Window(std::vector<double> centered);

  int support_lo() const { return -half_width_; }
  int support_hi() const { return half_width_; }

  // g[offset]; zero outside the support.
  double operator()(int offset) const {
    if (offset < -half_width_ || offset > half_width_) return 0.0;
    return values_[static_cast<std::size_t>(offset + half_width_)];
  }

  const std::vector<double> &centered_values() const { return values_; }

  double SquaredNorm() const;

 private:
  std::vector<double> values_;
  int half_width_;
};

// g[l] = 0.5 (1 + cos(2 pi l / W)) for |l| <= W/2. W must be even and >= 2.
Window HannWindow(int support_samples);

// Constant 1 on |l| <= half_width.
Window RectangularWindow(int half_width);

// d - c of the declared support; a single-sample window counts as 1.
std::size_t WindowSupportLength(const Window &window);

}  // namespace hafm

#endif  // HAFM_WINDOWS_H_
