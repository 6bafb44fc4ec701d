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

#include "rsma/channel.hpp"

#include <algorithm>
#include <stdexcept>

namespace rsma {

/// Unit-norm zero-forcing directions of the two private streams.
template <typename Scalar = double>
struct PrivateDirections
{
  CVector<Scalar> f1;
  CVector<Scalar> f2;
};

/// Unit vector orthogonal to the unit vector u, built from the first
/// canonical basis vector that is far enough from u.
template <typename Scalar>
CVector<Scalar> orthogonal_completion(const CVector<Scalar> &u)
{
  const Eigen::Index n = u.size();
  Eigen::Index       pick = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::norm(u(i)) <= Scalar(1) / Scalar(n)) {
      pick = i;
      break;
    }
  }
  CVector<Scalar> v = -u * std::conj(u(pick));
  v(pick) += Scalar(1);
  v.normalize();
  normalize_phase(v);
  return v;
}

/// ZF directions: f1 is h1's direction projected away from h2 (and vice versa).
///
/// Aligned channels have no ZF solution; both directions then fall back to the
/// orthogonal completion of the shared direction and the private gains are 0.
template <typename Scalar>
PrivateDirections<Scalar> zf_directions(const ChannelPair<Scalar> &pair)
{
  const auto u1 = pair.h1_direction();
  const auto u2 = pair.h2_direction();

  PrivateDirections<Scalar> dirs;
  if (geometry(pair).aligned) {
    dirs.f1 = orthogonal_completion<Scalar>(u1);
    dirs.f2 = dirs.f1;
    return dirs;
  }
  dirs.f1 = (u1 - u2 * u2.dot(u1)).normalized();
  dirs.f2 = (u2 - u1 * u1.dot(u2)).normalized();
  normalize_phase(dirs.f1);
  normalize_phase(dirs.f2);
  return dirs;
}

/// Coefficients of the two-user max-min beamformer, computed from the Gram
/// entries a = ||g1||^2, b = ||g2||^2 and c = |g1^H g2|.
template <typename Scalar = double>
struct BalanceCoefficients
{
  Scalar lambda = 0;
  Scalar mu1 = 0;
  Scalar mu2 = 0;
  bool   closed_form = false; ///< balancing solution applies (mu1 > 0 and mu2 > 0)
  int    matched_user = 0;    ///< 1 or 2: matched-filter target when !closed_form
  Scalar min_gain = 0;        ///< optimal value of min(|g1^H f|^2, |g2^H f|^2)
};

template <typename Scalar>
BalanceCoefficients<Scalar> balance_coefficients(Scalar a, Scalar b, Scalar c)
{
  BalanceCoefficients<Scalar> k;
  const Scalar                denom = a + b - Scalar(2) * c;
  if (c < a && c < b && denom > Scalar(1e-14) * (a + b)) {
    k.closed_form = true;
    k.mu1 = (b - c) / denom;
    k.mu2 = (a - c) / denom;
    k.lambda = (a * b - c * c) / denom;
    k.min_gain = k.lambda;
    return k;
  }
  // The weaker channel's own matched filter already reaches the other user
  // at least as strongly, so it is max-min optimal.
  k.matched_user = a < b ? 1 : 2;
  k.lambda = std::min(a, b);
  k.mu1 = k.matched_user == 1 ? Scalar(1) : Scalar(0);
  k.mu2 = k.matched_user == 2 ? Scalar(1) : Scalar(0);
  k.min_gain = k.lambda;
  return k;
}

/// Max-min common precoder direction together with the intermediates of the
/// closed form.
template <typename Scalar = double>
struct CommonPrecoderSolution
{
  CVector<Scalar>      fc;
  Scalar               lambda = 0;
  Scalar               mu1 = 0;
  Scalar               mu2 = 0;
  Scalar               alpha11 = 0;
  Scalar               alpha22 = 0;
  std::complex<Scalar> alpha12{};
  Scalar               balanced_gain = 0; ///< min(|g1^H fc|^2, |g2^H fc|^2) on the solved channels
  bool                 balanced = false;
  Scalar               direction_gain1 = 0; ///< |h1_dir^H fc|^2
  Scalar               direction_gain2 = 0; ///< |h2_dir^H fc|^2
};

/// Solves max_f min(|g1^H f|^2, |g2^H f|^2) over unit-norm f.
template <typename Scalar>
CommonPrecoderSolution<Scalar> maxmin_common_direction(const CVector<Scalar> &g1, const CVector<Scalar> &g2)
{
  if (g1.size() != g2.size()) throw std::invalid_argument("effective channels must have the same length");

  CommonPrecoderSolution<Scalar> s;
  s.alpha11 = g1.squaredNorm();
  s.alpha22 = g2.squaredNorm();
  s.alpha12 = g1.dot(g2);
  if (!(s.alpha11 > Scalar(0)) || !(s.alpha22 > Scalar(0))) throw std::invalid_argument("effective channels must be nonzero");

  const Scalar a = s.alpha11;
  const Scalar b = s.alpha22;
  const Scalar c = std::abs(s.alpha12);
  const auto   k = balance_coefficients(a, b, c);
  s.lambda = k.lambda;
  s.mu1 = k.mu1;
  s.mu2 = k.mu2;

  if (k.closed_form) {
    const std::complex<Scalar> rot = c > Scalar(0) ? std::conj(s.alpha12) / c : std::complex<Scalar>(1);
    // Same direction as (mu1 g1 + mu2 g2 e^{-j angle(alpha12)}) / sqrt(lambda);
    // the common 1/denom factor is dropped and the result renormalized.
    s.fc = (b - c) * g1 + (a - c) * rot * g2;
  } else {
    s.fc = k.matched_user == 1 ? g1 : g2;
  }
  s.fc.normalize();
  normalize_phase(s.fc);

  const Scalar gain1 = std::norm(g1.dot(s.fc));
  const Scalar gain2 = std::norm(g2.dot(s.fc));
  s.balanced_gain = std::min(gain1, gain2);
  s.balanced = k.closed_form || std::abs(gain1 - gain2) <= Scalar(1e-9) * std::max(gain1, gain2);
  s.direction_gain1 = gain1 / a;
  s.direction_gain2 = gain2 / b;
  return s;
}

/// Common direction that depends only on the channel directions. It is the
/// max-min solution whenever both private streams are active.
template <typename Scalar>
CommonPrecoderSolution<Scalar> direction_only_common(const ChannelPair<Scalar> &pair)
{
  return maxmin_common_direction<Scalar>(pair.h1_direction(), pair.h2_direction());
}

/// Max-min common direction on the effective channels h_k / gamma_k, with
/// gamma_k^2 = 1 + ||h_k||^2 rho P_k under ZF private precoding.
template <typename Scalar>
CommonPrecoderSolution<Scalar> effective_common(const ChannelPair<Scalar> &pair, const Geometry<Scalar> &geom,
                                                Arg<Scalar> p1, Arg<Scalar> p2)
{
  const Scalar gamma1 = std::sqrt(Scalar(1) + geom.n1sq * geom.rho * p1);
  const Scalar gamma2 = std::sqrt(Scalar(1) + geom.n2sq * geom.rho * p2);
  return maxmin_common_direction<Scalar>(pair.h1() / gamma1, pair.h2() / gamma2);
}

} // namespace rsma
