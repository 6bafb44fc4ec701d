// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

// Choice of the private power share t. On the dual-stream branch the
// sum-rate is log2 of a quadratic in t with a closed-form maximizer; the
// single-stream branch has no closed form and is searched numerically.

#include "rsma/power_split.hpp"
#include "rsma/precoding.hpp"
#include "rsma/rates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rsma {

/// Dual-stream sum-rate written as log2(ac + (ad + bc) t + bd t^2).
template <typename Scalar = double>
struct QuadCoeffs
{
  Scalar a = 0;
  Scalar b = 0;
  Scalar c = 0;
  Scalar d = 0;

  Scalar sum_rate(Scalar t) const { return rsma::log2(a * c + (a * d + b * c) * t + b * d * t * t); }
};

// Below this the stationary point of the quadratic is not a maximum.
template <typename Scalar>
inline constexpr Scalar kDegenerateDenominator = Scalar(1e-14);

/// Coefficients of the dual-stream quadratic; fc_gain is |h2_dir^H f_c|^2.
/// Only meaningful for t*P > gap.
template <typename Scalar>
QuadCoeffs<Scalar> quadratic_coefficients(const Geometry<Scalar> &geom, Arg<Scalar> fc_gain, Arg<Scalar> power)
{
  if (!(geom.rho > Scalar(0))) throw std::invalid_argument("quadratic coefficients need rho > 0");
  if (!(power > Scalar(0))) throw std::invalid_argument("power must be > 0");
  const Scalar cross = geom.n2sq * fc_gain; // |h2^H f_c|^2
  QuadCoeffs<Scalar> q;
  q.b = geom.n1sq * geom.rho * power / Scalar(2);
  q.a = Scalar(1) + (geom.gap / power) * q.b;
  q.d = geom.n2sq * geom.rho * power / Scalar(2) - cross * power;
  q.c = Scalar(1) - (geom.gap / power) * q.d + cross * (power - geom.gap);
  return q;
}

/// Closed-form maximizer of the dual-stream sum-rate, clamped to 1.
template <typename Scalar>
Scalar t_star_closed(const Geometry<Scalar> &geom, Arg<Scalar> fc_gain, Arg<Scalar> power)
{
  if (!(geom.rho > Scalar(0))) throw std::invalid_argument("t_star_closed needs rho > 0");
  const Scalar rho = geom.rho;
  const Scalar denom = Scalar(2) * fc_gain - rho;
  if (denom <= kDegenerateDenominator<Scalar>) return Scalar(1);
  const Scalar spread = (Scalar(1) / (Scalar(2) * rho)) * (Scalar(1) / geom.n1sq + Scalar(1) / geom.n2sq);
  const Scalar t = fc_gain / denom + spread * ((Scalar(2) * rho - Scalar(2) * fc_gain) / denom) / power;
  return std::min(t, Scalar(1));
}

/// Limit of t_star_closed as P grows; independent of the channel strengths.
template <typename Scalar>
Scalar t_star_high_snr(Scalar rho, Arg<Scalar> fc_gain)
{
  if (!(rho > Scalar(0))) throw std::invalid_argument("t_star_high_snr needs rho > 0");
  const Scalar denom = Scalar(2) * fc_gain - rho;
  if (denom <= kDegenerateDenominator<Scalar>) return Scalar(1);
  return std::min(fc_gain / denom, Scalar(1));
}

/// High-SNR sum-rate gap between the optimal t and t = 1, in bits.
template <typename Scalar>
Scalar delta_rs_high_snr(Scalar rho, Arg<Scalar> fc_gain)
{
  if (t_star_high_snr(rho, fc_gain) >= Scalar(1)) return Scalar(0);
  return rsma::log2(fc_gain * fc_gain / (rho * (Scalar(2) * fc_gain - rho)));
}

/// Sum-rate with user 2's private stream off and the common direction
/// re-solved on the effective channels for this t.
template <typename Scalar>
Scalar single_stream_rate(const Geometry<Scalar> &geom, Arg<Scalar> t, Arg<Scalar> power)
{
  const Scalar gamma1sq = Scalar(1) + geom.n1sq * geom.rho * t * power;
  const auto   k = balance_coefficients<Scalar>(geom.n1sq / gamma1sq, geom.n2sq, geom.cross_magnitude() / std::sqrt(gamma1sq));
  return rsma::log2(gamma1sq) + rsma::log2(Scalar(1) + (Scalar(1) - t) * power * k.min_gain);
}

template <typename Scalar = double>
struct ScalarOptimum
{
  Scalar t = 0;
  Scalar value = 0;
};

/// Golden-section search for a maximum of f on [lo, hi].
template <typename Scalar, typename F>
ScalarOptimum<Scalar> golden_section_max(F &&f, Scalar lo, Scalar hi, Scalar tol)
{
  const Scalar inv_phi = (std::sqrt(Scalar(5)) - Scalar(1)) / Scalar(2);
  Scalar       x1 = hi - inv_phi * (hi - lo);
  Scalar       x2 = lo + inv_phi * (hi - lo);
  Scalar       f1 = f(x1);
  Scalar       f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  const Scalar mid = (lo + hi) / Scalar(2);
  return {mid, f(mid)};
}

/// Maximizes the single-stream sum-rate over t in [0, t_hi]: a uniform grid
/// with spacing grid_step, then golden-section refinement to 1e-6 around the
/// best grid point. Grid points win ties, so exact endpoints are kept.
template <typename Scalar>
ScalarOptimum<Scalar> maximize_single_stream(const Geometry<Scalar> &geom, Arg<Scalar> power, Arg<Scalar> t_hi,
                                             Arg<Scalar> grid_step = Scalar(1e-3))
{
  if (!(grid_step > Scalar(0))) throw std::invalid_argument("grid step must be > 0");
  auto objective = [&](Scalar t) { return single_stream_rate(geom, t, power); };
  if (!(t_hi > Scalar(0))) return {Scalar(0), objective(Scalar(0))};

  const auto n = std::max<long>(1, static_cast<long>(std::ceil(t_hi / grid_step - Scalar(1e-9))));
  auto       point = [&](long i) { return i >= n ? t_hi : std::min(Scalar(i) * grid_step, t_hi); };

  ScalarOptimum<Scalar> best{Scalar(0), objective(Scalar(0))};
  long                  best_i = 0;
  for (long i = 1; i <= n; ++i) {
    const Scalar t = point(i);
    const Scalar v = objective(t);
    if (v > best.value) {
      best = {t, v};
      best_i = i;
    }
  }

  const Scalar lo = point(std::max<long>(best_i - 1, 0));
  const Scalar hi = point(std::min(best_i + 1, n));
  if (hi - lo > Scalar(1e-6)) {
    const auto refined = golden_section_max<Scalar>(objective, lo, hi, Scalar(1e-6));
    if (refined.value > best.value) best = refined;
  }
  return best;
}

/// Optimal operating point over t in [0, 1] for the ZF family.
template <typename Scalar = double>
struct TOptimum
{
  Scalar                         t = 0;
  PowerSplit<Scalar>             split;
  Scalar                         rs = 0;
  CommonPrecoderSolution<Scalar> common;
};

/// Common direction matching a split: direction-only when both private
/// streams are on, otherwise re-solved on the effective channels.
template <typename Scalar>
CommonPrecoderSolution<Scalar> common_for_split(const ChannelPair<Scalar> &pair, const Geometry<Scalar> &geom,
                                                const PowerSplit<Scalar> &split)
{
  if (split.regime == Regime::DualStream) return direction_only_common(pair);
  return effective_common(pair, geom, split.p1, split.p2);
}

/// Global maximizer of the sum-rate over t in [0, 1].
///
/// The single-stream branch t in [0, min(gap/P, 1)] is searched on a grid;
/// the dual-stream branch uses the closed form clamped to [gap/P, 1]. At
/// equal rates the single-stream point is kept.
template <typename Scalar>
TOptimum<Scalar> optimize_t(const ChannelPair<Scalar> &pair, Arg<Scalar> power, Arg<Scalar> grid_step = Scalar(1e-3))
{
  if (!(power > Scalar(0))) throw std::invalid_argument("power must be > 0");
  const auto geom = geometry(pair);

  const Scalar t_hi = geom.aligned ? Scalar(1) : std::min(geom.gap / power, Scalar(1));
  const auto   single = maximize_single_stream(geom, power, t_hi, grid_step);

  TOptimum<Scalar> out;
  out.t = single.t;
  out.split = single_stream_split(geom, single.t, power);
  out.common = effective_common(pair, geom, out.split.p1, out.split.p2);
  out.rs = sum_rate_zf(geom, out.common, out.split).rs;

  if (!geom.aligned && geom.gap < power) {
    const auto   dir = direction_only_common(pair);
    const Scalar t_dual = std::clamp(t_star_closed(geom, dir.direction_gain2, power), geom.gap / power, Scalar(1));
    const auto   split = waterfill(geom, t_dual, power);
    auto         common = split.regime == Regime::DualStream ? dir : effective_common(pair, geom, split.p1, split.p2);
    const Scalar rs = sum_rate_zf(geom, common, split).rs;
    if (rs > out.rs) {
      out.t = t_dual;
      out.split = split;
      out.common = std::move(common);
      out.rs = rs;
    }
  }
  return out;
}

} // namespace rsma
