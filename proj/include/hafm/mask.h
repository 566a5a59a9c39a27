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

#ifndef HAFM_MASK_H_
#define HAFM_MASK_H_

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "hafm/nsgt.h"

namespace hafm {

// Dense column-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols, std::complex<double> fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::complex<double> &operator()(std::size_t m, std::size_t n) { return data_[n * rows_ + m]; }
  const std::complex<double> &operator()(std::size_t m, std::size_t n) const {
    return data_[n * rows_ + m];
  }
  std::complex<double> *column(std::size_t n) { return data_.data() + n * rows_; }
  const std::complex<double> *column(std::size_t n) const { return data_.data() + n * rows_; }

  const std::vector<std::complex<double>> &data() const { return data_; }
  std::vector<std::complex<double>> &data() { return data_; }

  bool SameShape(const ComplexMatrix &o) const { return rows_ == o.rows_ && cols_ == o.cols_; }
  bool operator==(const ComplexMatrix &o) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::complex<double>> data_;
};

// NSGT coefficients periodically extended along m to a common row count:
// matrix(m, n) = c_{m mod M_n, n}.
struct AlignedCoefficients {
  ComplexMatrix matrix;
  std::vector<std::size_t> native_M;
  NsgtPlan plan;
};

struct FrameMask {
  ComplexMatrix sigma;
};

// mu is the Tikhonov weight. An unset sigma_ref is the all-ones reference.
struct MaskEstimationConfig {
  double mu = 1e-7;
  std::optional<ComplexMatrix> sigma_ref;

  std::complex<double> Reference(std::size_t m, std::size_t n) const {
    return sigma_ref ? (*sigma_ref)(m, n) : std::complex<double>(1.0, 0.0);
  }
};

enum class AlignmentMode { kUnitP, kAnchor };

struct AlignmentParams {
  AlignmentMode mode = AlignmentMode::kAnchor;
  double anchor_hz = 280.0;
  std::size_t q = 75;
};

// unit_p -> 1; anchor -> round(anchor / mean_f0), ties away from zero, >= 1.
std::size_t ChooseP(const AlignmentParams &params, double mean_f0_hz);

// M-bar for a pair of systems: the larger of the two max_n M_n.
std::size_t CommonRowCount(const NsgtPlan &a, const NsgtPlan &b);

AlignedCoefficients AlignExtend(const RaggedCoefficients &coeffs, std::size_t target_rows);

// Inverse of AlignExtend: keeps the first M_n rows of every column.
RaggedCoefficients TruncateToNative(const AlignedCoefficients &aligned);

struct NaiveMask {
  FrameMask mask;
  // valid[n * rows + m] is false where |c^A| <= epsilon; those entries are 1.
  std::vector<bool> valid;
};

// sigma = c^B / c^A with a zero guard.
NaiveMask EstimateMaskNaive(const AlignedCoefficients &source,
                            const AlignedCoefficients &target, double epsilon = 1e-12);

// Entrywise minimizer of |c^B - sigma c^A|^2 + mu |sigma - sigma_ref|^2:
//   sigma = (conj(c^A) c^B + mu sigma_ref) / (|c^A|^2 + mu).
// Requires mu > 0.
FrameMask EstimateMaskTikhonov(const AlignedCoefficients &source,
                               const AlignedCoefficients &target,
                               const MaskEstimationConfig &config);

// One entry of the closed-form estimator.
std::complex<double> TikhonovMaskEntry(std::complex<double> source, std::complex<double> target,
                                       std::complex<double> reference, double mu);

// Same formula on raw matrices; used by the column-wise feature extraction.
FrameMask EstimateMaskTikhonov(const ComplexMatrix &source, const ComplexMatrix &target,
                               const MaskEstimationConfig &config);

// ||C^B - sigma . C^A||_F^2 + mu ||sigma - sigma_ref||_F^2.
double MaskObjective(const FrameMask &mask, const ComplexMatrix &source,
                     const ComplexMatrix &target, const MaskEstimationConfig &config);

// Multiplies sigma into the source coefficients, folds the extended rows back
// onto the target plan's native M^B_n (mean over each residue class m mod
// M^B_n) and synthesizes with the target plan's painless dual.
Signal ApplyMask(const FrameMask &mask, const AlignedCoefficients &source,
                 const NsgtPlan &target_plan, const Window &window);

// The folded coefficients that ApplyMask synthesizes.
RaggedCoefficients FoldMaskedCoefficients(const FrameMask &mask,
                                          const AlignedCoefficients &source,
                                          const NsgtPlan &target_plan);

}  // namespace hafm

#endif  // HAFM_MASK_H_
