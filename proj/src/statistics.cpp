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

#include "cvlab/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <fmt/format.h>

namespace cvlab {

namespace {

constexpr std::size_t kChunk = 8192;

void check_series(std::span<const double> h, std::span<const double> k)
{
  if (h.size() != k.size()) {
    throw std::invalid_argument(fmt::format("series lengths differ: {} vs {}", h.size(), k.size()));
  }
  if (h.size() < 2) throw std::invalid_argument("correlation needs at least two frames");
}

struct Moments {
  double mean_h = 0.0, mean_k = 0.0;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  double scale_h = 0.0, scale_k = 0.0;
};

double finish(const Moments& m, std::size_t n)
{
  // A constant series leaves only rounding noise in its centered sum.
  const double floor_h = 1e-14 * m.scale_h;
  const double floor_k = 1e-14 * m.scale_k;
  const double dn      = static_cast<double>(n);
  if (m.sxx <= floor_h * floor_h * dn || m.syy <= floor_k * floor_k * dn) {
    throw UndefinedCorrelationError("correlation undefined for a zero-variance series");
  }
  return std::clamp(m.sxy / std::sqrt(m.sxx * m.syy), -1.0, 1.0);
}

// Chunk-wise two-pass moments. Chunk boundaries depend only on the series
// length and chunk partials are combined in ascending order.
Moments chunked_moments(std::span<const double> h, std::span<const double> k)
{
  const std::size_t n       = h.size();
  const std::size_t nchunks = (n + kChunk - 1) / kChunk;
  const auto nc             = static_cast<std::int64_t>(nchunks);

  std::vector<CompensatedSum> sh(nchunks), sk(nchunks);
  std::vector<double> mh(nchunks, 0.0), mk(nchunks, 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < nc; ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
    const std::size_t hi = std::min(n, lo + kChunk);
    for (std::size_t i = lo; i < hi; ++i) {
      sh[c].add(h[i]);
      sk[c].add(k[i]);
      mh[c] = std::max(mh[c], std::abs(h[i]));
      mk[c] = std::max(mk[c], std::abs(k[i]));
    }
  }
  Moments m;
  CompensatedSum th, tk;
  for (std::size_t c = 0; c < nchunks; ++c) {
    th.add(sh[c]);
    tk.add(sk[c]);
    m.scale_h = std::max(m.scale_h, mh[c]);
    m.scale_k = std::max(m.scale_k, mk[c]);
  }
  m.mean_h = th.value() / static_cast<double>(n);
  m.mean_k = tk.value() / static_cast<double>(n);

  std::vector<CompensatedSum> xx(nchunks), yy(nchunks), xy(nchunks);
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < nc; ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
    const std::size_t hi = std::min(n, lo + kChunk);
    for (std::size_t i = lo; i < hi; ++i) {
      const double dh = h[i] - m.mean_h;
      const double dk = k[i] - m.mean_k;
      xx[c].add(dh * dh);
      yy[c].add(dk * dk);
      xy[c].add(dh * dk);
    }
  }
  CompensatedSum txx, tyy, txy;
  for (std::size_t c = 0; c < nchunks; ++c) {
    txx.add(xx[c]);
    tyy.add(yy[c]);
    txy.add(xy[c]);
  }
  m.sxx = txx.value();
  m.syy = tyy.value();
  m.sxy = txy.value();
  return m;
}

}  // namespace

void CompensatedSum::add(double x)
{
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

void CompensatedSum::add(const CompensatedSum& other)
{
  add(other.sum_);
  add(other.comp_);
}

double corr_coeff(std::span<const double> h, std::span<const double> k)
{
  check_series(h, k);
  return finish(chunked_moments(h, k), h.size());
}

double corr_standard_error(std::span<const double> h, std::span<const double> k)
{
  check_series(h, k);
  const Moments m   = chunked_moments(h, k);
  const double r    = finish(m, h.size());
  const double dn   = static_cast<double>(h.size());
  const double sd_h = std::sqrt(m.sxx / dn);
  const double sd_k = std::sqrt(m.syy / dn);

  CompensatedSum u4, v4, u2v2, u3v, uv3;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double u = (h[i] - m.mean_h) / sd_h;
    const double v = (k[i] - m.mean_k) / sd_k;
    u4.add(u * u * u * u);
    v4.add(v * v * v * v);
    u2v2.add(u * u * v * v);
    u3v.add(u * u * u * v);
    uv3.add(u * v * v * v);
  }
  const double e40 = u4.value() / dn, e04 = v4.value() / dn, e22 = u2v2.value() / dn;
  const double e31 = u3v.value() / dn, e13 = uv3.value() / dn;
  const double var =
    (e22 - r * (e31 + e13) + 0.25 * r * r * (e40 + e04 + 2.0 * e22)) / dn;
  return std::sqrt(std::max(var, 0.0));
}

CorrelationEstimate confidence_interval(double c, std::size_t n_frames, double level,
                                        IntervalMethod method)
{
  if (!(level > 0.0 && level < 1.0)) {
    throw std::invalid_argument(fmt::format("confidence level must lie in (0, 1), got {}", level));
  }
  if (n_frames < 4) throw std::invalid_argument("confidence interval needs at least 4 frames");
  if (!(c >= -1.0 && c <= 1.0)) {
    throw std::invalid_argument(fmt::format("correlation {} outside [-1, 1]", c));
  }

  CorrelationEstimate e{c, n_frames, c, c, level};
  if (std::abs(c) == 1.0) return e;

  switch (method) {
    case IntervalMethod::fisher_z: {
      const boost::math::normal_distribution<double> unit;
      const double zcrit = boost::math::quantile(unit, 0.5 * (1.0 + level));
      const double z     = std::atanh(c);
      const double half  = zcrit / std::sqrt(static_cast<double>(n_frames) - 3.0);
      e.ci_low           = std::clamp(std::tanh(z - half), -1.0, c);
      e.ci_high          = std::clamp(std::tanh(z + half), c, 1.0);
      break;
    }
  }
  return e;
}

CorrelationEstimate estimate_correlation(std::span<const double> h, std::span<const double> k,
                                         double level, IntervalMethod method)
{
  return confidence_interval(corr_coeff(h, k), h.size(), level, method);
}

LadderMoments ladder_moments(const GaussianState& state, int mode_h, int mode_k)
{
  const Matrix2 hh = state.block(mode_h, mode_h);
  const Matrix2 kk = state.block(mode_k, mode_k);
  const Matrix2 hk = state.block(mode_h, mode_k);
  using C          = std::complex<double>;

  // a = (x + i p) / sqrt(2) with vacuum variance 1/2.
  LadderMoments m;
  m.photons_h = 0.5 * (hh(0, 0) + hh(1, 1)) - 0.5;
  m.photons_k = 0.5 * (kk(0, 0) + kk(1, 1)) - 0.5;
  m.squeeze_h = 0.5 * C(hh(0, 0) - hh(1, 1), 2.0 * hh(0, 1));
  m.squeeze_k = 0.5 * C(kk(0, 0) - kk(1, 1), 2.0 * kk(0, 1));
  m.normal    = 0.5 * C(hk(0, 0) + hk(1, 1), hk(0, 1) - hk(1, 0));
  m.anomalous = 0.5 * C(hk(0, 0) - hk(1, 1), hk(0, 1) + hk(1, 0));
  return m;
}

double cm_to_intensity_corr(const GaussianState& state, int mode_h, int mode_k, bool shot_noise)
{
  const LadderMoments m = ladder_moments(state, mode_h, mode_k);
  if (m.photons_h <= 1e-15 || m.photons_k <= 1e-15) {
    throw UndefinedCorrelationError("intensity correlation undefined for a mode without photons");
  }

  auto variance = [shot_noise](double n, std::complex<double> sq) {
    return n * n + std::norm(sq) + (shot_noise ? n : 0.0);
  };
  const double var_h = variance(m.photons_h, m.squeeze_h);
  const double var_k = variance(m.photons_k, m.squeeze_k);
  if (mode_h == mode_k) return 1.0;

  const double cov = std::norm(m.normal) + std::norm(m.anomalous);
  return std::clamp(cov / std::sqrt(var_h * var_k), -1.0, 1.0);
}

namespace reference {

double corr_coeff(std::span<const double> h, std::span<const double> k)
{
  check_series(h, k);
  Moments m;
  CompensatedSum sh, sk;
  for (std::size_t i = 0; i < h.size(); ++i) {
    sh.add(h[i]);
    sk.add(k[i]);
    m.scale_h = std::max(m.scale_h, std::abs(h[i]));
    m.scale_k = std::max(m.scale_k, std::abs(k[i]));
  }
  m.mean_h = sh.value() / static_cast<double>(h.size());
  m.mean_k = sk.value() / static_cast<double>(h.size());

  CompensatedSum xx, yy, xy;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double dh = h[i] - m.mean_h;
    const double dk = k[i] - m.mean_k;
    xx.add(dh * dh);
    yy.add(dk * dk);
    xy.add(dh * dk);
  }
  m.sxx = xx.value();
  m.syy = yy.value();
  m.sxy = xy.value();
  return finish(m, h.size());
}

}  // namespace reference

}  // namespace cvlab
