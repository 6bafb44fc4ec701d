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

#include "rsma/types.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>
#include <utility>

namespace rsma {

/// Two-user channel with user 1 holding the stronger (larger norm) channel.
///
/// The constructor relabels the users when needed, so downstream closed
/// forms may always assume ||h1|| >= ||h2||.
template <typename Scalar = double>
class ChannelPair
{
public:
  using Vector = CVector<Scalar>;

  ChannelPair(Vector h1, Vector h2)
    : h1_(std::move(h1))
    , h2_(std::move(h2))
  {
    if (h1_.size() != h2_.size()) throw std::invalid_argument("channel vectors must have the same length");
    if (h1_.size() < 2) throw std::invalid_argument("channel vectors need at least two antennas");
    if (!h1_.allFinite() || !h2_.allFinite()) throw std::invalid_argument("channel vectors must be finite");
    if (h1_.squaredNorm() < h2_.squaredNorm()) {
      std::swap(h1_, h2_);
      swapped_ = true;
    }
  }

  const Vector &h1() const { return h1_; }
  const Vector &h2() const { return h2_; }
  Eigen::Index antennas() const { return h1_.size(); }

  /// True when the inputs arrived in weaker-first order and were relabeled.
  bool relabeled() const { return swapped_; }

  Vector h1_direction() const { return h1_.normalized(); }
  Vector h2_direction() const { return h2_.normalized(); }

private:
  Vector h1_;
  Vector h2_;
  bool   swapped_ = false;
};

/// Scalars derived from a channel pair that drive every closed form.
template <typename Scalar = double>
struct Geometry
{
  Scalar rho = 0;  ///< 1 - |h1_dir^H h2_dir|^2, in [0, 1]
  Scalar n1sq = 0; ///< ||h1||^2
  Scalar n2sq = 0; ///< ||h2||^2
  Scalar gap = 0;  ///< single/dual private-stream threshold on t*P (W); +inf when aligned
  bool aligned = false;

  /// |h1^H h2|, recovered from the scalars.
  Scalar cross_magnitude() const { return std::sqrt(n1sq * n2sq * (Scalar(1) - rho)); }
};

// Below this value rho is treated as exactly zero (aligned channels).
template <typename Scalar>
inline constexpr Scalar kAlignedRho = Scalar(1e-13);

template <typename Scalar>
Geometry<Scalar> geometry(const ChannelPair<Scalar> &pair)
{
  Geometry<Scalar> g;
  g.n1sq = pair.h1().squaredNorm();
  g.n2sq = pair.h2().squaredNorm();
  if (!(g.n2sq > Scalar(0))) throw std::invalid_argument("channel norms must be strictly positive");

  const Scalar cross = std::norm(pair.h1().dot(pair.h2()));
  Scalar       rho = Scalar(1) - cross / (g.n1sq * g.n2sq);
  rho = std::clamp(rho, Scalar(0), Scalar(1));
  if (rho < kAlignedRho<Scalar>) rho = Scalar(0);
  g.rho = rho;

  if (rho == Scalar(0)) {
    g.aligned = true;
    g.gap = std::numeric_limits<Scalar>::infinity();
  } else {
    g.gap = (Scalar(1) / rho) * (Scalar(1) / g.n2sq - Scalar(1) / g.n1sq);
    g.gap = std::max(g.gap, Scalar(0));
  }
  return g;
}

/// Two-antenna family h1 = [1, 1]/sqrt(2), h2 = gamma [1, e^{j theta}]^H / sqrt(2).
template <typename Scalar = double>
ChannelPair<Scalar> parametric_pair(Scalar gamma_db, Scalar theta, int n_t = 2)
{
  if (n_t != 2) throw std::invalid_argument("parametric pair is defined for n_t = 2 only");
  if (!(gamma_db <= Scalar(0))) throw std::invalid_argument("gamma_db must be <= 0 so user 1 stays stronger");

  using C = std::complex<Scalar>;
  const Scalar gamma = db_to_amplitude(gamma_db);
  const Scalar s = Scalar(1) / std::sqrt(Scalar(2));

  CVector<Scalar> h1(2), h2(2);
  h1 << C(s, 0), C(s, 0);
  // Column form of [1, e^{j theta}]^H.
  h2 << C(gamma * s, 0), gamma * s * std::polar(Scalar(1), -theta);
  return ChannelPair<Scalar>(std::move(h1), std::move(h2));
}

/// Parametric pair whose direction orthogonality equals rho.
template <typename Scalar = double>
ChannelPair<Scalar> pair_from_rho(Scalar gamma_db, Scalar rho)
{
  if (!(rho >= Scalar(0) && rho <= Scalar(1))) throw std::invalid_argument("rho must lie in [0, 1]");
  return parametric_pair<Scalar>(gamma_db, std::acos(Scalar(1) - Scalar(2) * rho), 2);
}

/// I.i.d. CN(0, variance) entries; real and imaginary parts each carry variance/2.
template <typename Scalar = double, typename Rng>
CVector<Scalar> complex_gaussian(int n, Scalar variance, Rng &rng)
{
  std::normal_distribution<Scalar> normal(Scalar(0), Scalar(1));
  const Scalar                     sigma = std::sqrt(variance / Scalar(2));
  CVector<Scalar>                  v(n);
  for (int i = 0; i < n; ++i) {
    const Scalar re = normal(rng);
    const Scalar im = normal(rng);
    v(i) = std::complex<Scalar>(sigma * re, sigma * im);
  }
  return v;
}

/// Rayleigh pair with entries CN(0, 1/n_t) and CN(0, gamma^2/n_t).
///
/// h1 is drawn before h2 from the same source, so pairs drawn with the same
/// seed at different gamma_db share their directions.
template <typename Scalar = double, typename Rng>
ChannelPair<Scalar> rayleigh_pair(int n_t, Scalar gamma_db, Rng &rng)
{
  if (n_t < 2) throw std::invalid_argument("n_t must be >= 2");
  const Scalar gamma_sq = db_to_power(gamma_db);
  auto         h1 = complex_gaussian<Scalar>(n_t, Scalar(1) / Scalar(n_t), rng);
  auto         h2 = complex_gaussian<Scalar>(n_t, gamma_sq / Scalar(n_t), rng);
  return ChannelPair<Scalar>(std::move(h1), std::move(h2));
}

} // namespace rsma
