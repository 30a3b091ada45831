/* Copyright 2026 The cvlab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>

#include "cvlab/gaussian_state.hpp"

namespace cvlab {

class UndefinedCorrelationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Neumaier (improved Kahan) compensated accumulator.
class CompensatedSum {
 public:
  void add(double x);
  void add(const CompensatedSum& other);
  double value() const { return sum_ + comp_; }

 private:
  double sum_  = 0.0;
  double comp_ = 0.0;
};

/// Frame-averaged correlation coefficient
///   c = (<I_h I_k> - <I_h><I_k>) / (Delta(I_h) Delta(I_k)),
/// evaluated two-pass over fixed-size chunks so the result does not depend on
/// the worker count. Throws UndefinedCorrelationError for constant series.
double corr_coeff(std::span<const double> h, std::span<const double> k);

/// Large-sample standard error of corr_coeff without assuming normality
/// (delta method on the standardized fourth moments).
double corr_standard_error(std::span<const double> h, std::span<const double> k);

enum class IntervalMethod { fisher_z };

struct CorrelationEstimate {
  double c = 0.0;
  std::size_t n_frames = 0;
  double ci_low  = 0.0;
  double ci_high = 0.0;
  double level   = 0.99;
};

/// Two-sided interval at `level`, clamped to [-1, 1]; |c| = 1 gives a
/// degenerate interval. Needs n_frames >= 4.
CorrelationEstimate confidence_interval(double c, std::size_t n_frames, double level,
                                        IntervalMethod method = IntervalMethod::fisher_z);

CorrelationEstimate estimate_correlation(std::span<const double> h, std::span<const double> k,
                                         double level,
                                         IntervalMethod method = IntervalMethod::fisher_z);

/// Second-order ladder moments between two modes read off the CM.
struct LadderMoments {
  double photons_h = 0.0;          // <a_h^dag a_h>
  double photons_k = 0.0;
  std::complex<double> normal;     // <a_h^dag a_k>
  std::complex<double> anomalous;  // <a_h a_k>
  std::complex<double> squeeze_h;  // <a_h^2>
  std::complex<double> squeeze_k;
};

LadderMoments ladder_moments(const GaussianState& state, int mode_h, int mode_k);

/// Predicted photon-number correlation between two modes of a zero-mean
/// Gaussian state. Without shot noise the variances are normally ordered,
/// which is the classical-intensity (analog detector) regime.
double cm_to_intensity_corr(const GaussianState& state, int mode_h, int mode_k,
                            bool shot_noise = false);

namespace reference {

/// Serial two-pass evaluation of corr_coeff.
double corr_coeff(std::span<const double> h, std::span<const double> k);

}  // namespace reference

}  // namespace cvlab
