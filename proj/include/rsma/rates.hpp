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

// Achievable rates in bits/s/Hz. Noise power is fixed at 1, so transmit power
// in W equals the SNR.

#include "rsma/power_split.hpp"
#include "rsma/precoding.hpp"

#include <algorithm>
#include <stdexcept>

namespace rsma {

/// Common and private precoders; squared norms are the stream powers.
template <typename Scalar = double>
struct PrecoderSet
{
  CVector<Scalar> pc;
  CVector<Scalar> p1;
  CVector<Scalar> p2;

  Scalar total_power() const { return pc.squaredNorm() + p1.squaredNorm() + p2.squaredNorm(); }
};

template <typename Scalar = double>
struct RateReport
{
  Scalar rc = 0;
  Scalar r1 = 0;
  Scalar r2 = 0;
  Scalar rs = 0;
  Scalar gamma1sq = 1;
  Scalar gamma2sq = 1;
};

/// Common-stream rate: both users decode it treating both private streams as noise.
template <typename Scalar>
Scalar rate_common(const ChannelPair<Scalar> &pair, const PrecoderSet<Scalar> &set)
{
  auto at_user = [&](const CVector<Scalar> &h) {
    const Scalar signal = std::norm(h.dot(set.pc));
    const Scalar interference = std::norm(h.dot(set.p1)) + std::norm(h.dot(set.p2));
    return rsma::log2(Scalar(1) + signal / (Scalar(1) + interference));
  };
  return std::min(at_user(pair.h1()), at_user(pair.h2()));
}

/// Private rate of user k (1 or 2) after the common stream has been removed.
template <typename Scalar>
Scalar rate_private(const ChannelPair<Scalar> &pair, const PrecoderSet<Scalar> &set, int k)
{
  if (k != 1 && k != 2) throw std::invalid_argument("user index must be 1 or 2");
  const auto &h = k == 1 ? pair.h1() : pair.h2();
  const auto &own = k == 1 ? set.p1 : set.p2;
  const auto &other = k == 1 ? set.p2 : set.p1;
  const Scalar signal = std::norm(h.dot(own));
  const Scalar interference = std::norm(h.dot(other));
  return rsma::log2(Scalar(1) + signal / (Scalar(1) + interference));
}

/// Precoders of the ZF family: p_k = sqrt(P_k) f_k, p_c = sqrt(P_c) f_c.
template <typename Scalar>
PrecoderSet<Scalar> zf_precoders(const PrivateDirections<Scalar> &dirs, const CommonPrecoderSolution<Scalar> &common,
                                 const PowerSplit<Scalar> &split)
{
  return PrecoderSet<Scalar>{
    std::sqrt(split.pc) * common.fc,
    std::sqrt(split.p1) * dirs.f1,
    std::sqrt(split.p2) * dirs.f2,
  };
}

/// Sum-rate of the ZF family, from scalars only.
///
/// The common rate takes the weaker of the two effective SINRs. When the
/// common direction is balanced this is the familiar
/// log2(gamma1^2) + log2(gamma2^2 + |h2^H p_c|^2).
template <typename Scalar>
RateReport<Scalar> sum_rate_zf(const Geometry<Scalar> &geom, const CommonPrecoderSolution<Scalar> &common,
                               const PowerSplit<Scalar> &split)
{
  RateReport<Scalar> r;
  r.gamma1sq = Scalar(1) + geom.n1sq * geom.rho * split.p1;
  r.gamma2sq = Scalar(1) + geom.n2sq * geom.rho * split.p2;
  const Scalar sinr1 = geom.n1sq * common.direction_gain1 * split.pc / r.gamma1sq;
  const Scalar sinr2 = geom.n2sq * common.direction_gain2 * split.pc / r.gamma2sq;
  r.rc = rsma::log2(Scalar(1) + std::min(sinr1, sinr2));
  r.r1 = rsma::log2(r.gamma1sq);
  r.r2 = rsma::log2(r.gamma2sq);
  r.rs = r.rc + r.r1 + r.r2;
  return r;
}

/// High-SNR approximation of the dual-stream sum-rate; fc_gain is |h2_dir^H f_c|^2.
template <typename Scalar>
Scalar sum_rate_high_snr(const Geometry<Scalar> &geom, Arg<Scalar> fc_gain, Arg<Scalar> t, Arg<Scalar> power)
{
  if (!(geom.rho > Scalar(0))) throw std::invalid_argument("high-SNR sum-rate needs rho > 0");
  if (!(t > Scalar(0) && t <= Scalar(1))) throw std::invalid_argument("t must lie in (0, 1]");
  const Scalar cross = geom.n2sq * fc_gain; // |h2^H f_c|^2
  const Scalar e = geom.n2sq * geom.rho / Scalar(4) - cross / Scalar(2);
  const Scalar f = cross / Scalar(2);
  return rsma::log2(geom.n1sq * geom.rho) + Scalar(2) * rsma::log2(power) + rsma::log2(e * t * t + f * t);
}

} // namespace rsma
