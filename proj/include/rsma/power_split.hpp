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

#include <limits>
#include <stdexcept>

namespace rsma {

enum class Regime
{
  SingleStream, ///< only user 1's private stream carries power
  DualStream,   ///< both private streams active
};

/// Power split between the common stream and the two private streams.
template <typename Scalar = double>
struct PowerSplit
{
  Scalar pc = 0;
  Scalar p1 = 0;
  Scalar p2 = 0;
  Scalar t = 0;           ///< private share, (p1 + p2) / P
  Scalar water_level = 0; ///< reported in both regimes; +inf for aligned channels
  Regime regime = Regime::SingleStream;
};

namespace detail {

template <typename Scalar>
void check_t_and_power(Scalar t, Scalar power)
{
  if (!(t >= Scalar(0) && t <= Scalar(1))) throw std::invalid_argument("t must lie in [0, 1]");
  if (!(power > Scalar(0))) throw std::invalid_argument("power must be > 0");
}

template <typename Scalar>
Scalar water_level(const Geometry<Scalar> &geom, Scalar t, Scalar power)
{
  if (geom.aligned) return std::numeric_limits<Scalar>::infinity();
  return t * power / Scalar(2) + (Scalar(1) / (Scalar(2) * geom.rho)) * (Scalar(1) / geom.n1sq + Scalar(1) / geom.n2sq);
}

} // namespace detail

/// Water-filling of t*P across the two ZF private streams.
template <typename Scalar>
PowerSplit<Scalar> waterfill(const Geometry<Scalar> &geom, Arg<Scalar> t, Arg<Scalar> power)
{
  detail::check_t_and_power<Scalar>(t, power);
  PowerSplit<Scalar> s;
  s.t = t;
  const Scalar budget = t * power;
  s.pc = power - budget;
  s.water_level = detail::water_level<Scalar>(geom, t, power);
  s.p1 = budget;
  s.p2 = 0;
  s.regime = Regime::SingleStream;
  if (!geom.aligned && budget > geom.gap) {
    const Scalar p1 = budget / Scalar(2) + geom.gap / Scalar(2);
    // p2 can round to zero right above the threshold; keep the single-stream split then.
    if (budget - p1 > Scalar(0)) {
      s.p1 = p1;
      s.p2 = budget - p1;
      s.regime = Regime::DualStream;
    }
  }
  return s;
}

/// Split with user 2's private stream switched off, whatever the water level.
template <typename Scalar>
PowerSplit<Scalar> single_stream_split(const Geometry<Scalar> &geom, Arg<Scalar> t, Arg<Scalar> power)
{
  detail::check_t_and_power<Scalar>(t, power);
  PowerSplit<Scalar> s;
  s.t = t;
  s.p1 = t * power;
  s.p2 = 0;
  s.pc = power - s.p1;
  s.water_level = detail::water_level<Scalar>(geom, t, power);
  s.regime = Regime::SingleStream;
  return s;
}

} // namespace rsma
