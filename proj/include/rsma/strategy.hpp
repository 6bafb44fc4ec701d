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

#include "rsma/allocation.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <string_view>

namespace rsma {

enum class Strategy
{
  RS,
  SDMA,
  NOMA,
  OMA,
  Multicast,
};

inline constexpr std::array<Strategy, 5> kAllStrategies = {
  Strategy::RS, Strategy::SDMA, Strategy::NOMA, Strategy::OMA, Strategy::Multicast,
};

constexpr std::string_view to_string(Strategy s)
{
  switch (s) {
  case Strategy::RS: return "RS";
  case Strategy::SDMA: return "SDMA";
  case Strategy::NOMA: return "NOMA";
  case Strategy::OMA: return "OMA";
  case Strategy::Multicast: return "Multicast";
  }
  return "?";
}

inline std::optional<Strategy> parse_strategy(std::string_view name)
{
  for (auto s : kAllStrategies)
    if (to_string(s) == name) return s;
  return std::nullopt;
}

// Absolute on t, relative to P on powers.
template <typename Scalar>
inline constexpr Scalar kLabelTolerance = Scalar(1e-6);

/// Names the scheme an operating point specializes to.
/// Precedence at ties: Multicast, OMA, NOMA, SDMA, RS.
template <typename Scalar>
Strategy label_of(const PowerSplit<Scalar> &split, Arg<Scalar> power)
{
  const Scalar tol = kLabelTolerance<Scalar>;
  const bool   full_private = split.t >= Scalar(1) - tol;
  const bool   user2_off = split.p2 <= tol * power;
  if (split.t <= tol) return Strategy::Multicast;
  if (full_private && user2_off) return Strategy::OMA;
  if (user2_off) return Strategy::NOMA;
  if (full_private) return Strategy::SDMA;
  return Strategy::RS;
}

template <typename Scalar = double>
struct StrategyResult
{
  Strategy                       label = Strategy::RS; ///< scheme the operating point specializes to
  Scalar                         t = 0;
  PowerSplit<Scalar>             split;
  Scalar                         rs = 0;
  CommonPrecoderSolution<Scalar> common;
};

namespace detail {

template <typename Scalar>
StrategyResult<Scalar> finish(const ChannelPair<Scalar> &pair, const Geometry<Scalar> &geom, const PowerSplit<Scalar> &split,
                              Scalar power)
{
  StrategyResult<Scalar> r;
  r.t = split.t;
  r.split = split;
  r.common = common_for_split(pair, geom, split);
  r.rs = sum_rate_zf(geom, r.common, split).rs;
  r.label = label_of(split, power);
  return r;
}

} // namespace detail

/// Sum-rate of one scheme, each expressed as a constrained point of the RS
/// family (ZF private directions, max-min common direction).
template <typename Scalar>
StrategyResult<Scalar> evaluate(Strategy strategy, const ChannelPair<Scalar> &pair, Arg<Scalar> power,
                                Arg<Scalar> grid_step = Scalar(1e-3))
{
  if (!(power > Scalar(0))) throw std::invalid_argument("power must be > 0");
  const auto geom = geometry(pair);
  switch (strategy) {
  case Strategy::RS: {
    auto opt = optimize_t(pair, power, grid_step);
    return StrategyResult<Scalar>{label_of(opt.split, power), opt.t, opt.split, opt.rs, std::move(opt.common)};
  }
  case Strategy::SDMA: return detail::finish(pair, geom, waterfill(geom, Scalar(1), power), Scalar(power));
  case Strategy::NOMA: {
    const auto best = maximize_single_stream(geom, power, Scalar(1), grid_step);
    return detail::finish(pair, geom, single_stream_split(geom, best.t, power), Scalar(power));
  }
  case Strategy::OMA: return detail::finish(pair, geom, single_stream_split(geom, Scalar(1), power), Scalar(power));
  case Strategy::Multicast: return detail::finish(pair, geom, single_stream_split(geom, Scalar(0), power), Scalar(power));
  }
  throw std::invalid_argument("unknown strategy");
}

/// Sum-rate maximizing operating point and the scheme it specializes to.
template <typename Scalar>
StrategyResult<Scalar> classify(const ChannelPair<Scalar> &pair, Arg<Scalar> power, Arg<Scalar> grid_step = Scalar(1e-3))
{
  return evaluate(Strategy::RS, pair, power, grid_step);
}

/// Relative sum-rate gains of RS in percent.
template <typename Scalar = double>
struct RelativeGain
{
  Scalar vs_switch = 0; ///< over the better of SDMA and NOMA
  Scalar vs_sdma = 0;
  Scalar vs_noma = 0;
};

template <typename Scalar>
Scalar percent_gain(Scalar rs, Scalar reference)
{
  if (!(reference > Scalar(0))) return Scalar(0);
  return (rs - reference) / reference * Scalar(100);
}

template <typename Scalar>
RelativeGain<Scalar> relative_gain(const ChannelPair<Scalar> &pair, Arg<Scalar> power, Arg<Scalar> grid_step = Scalar(1e-3))
{
  const Scalar rs = evaluate(Strategy::RS, pair, power, grid_step).rs;
  const Scalar sdma = evaluate(Strategy::SDMA, pair, power, grid_step).rs;
  const Scalar noma = evaluate(Strategy::NOMA, pair, power, grid_step).rs;
  return RelativeGain<Scalar>{
    percent_gain(rs, std::max(sdma, noma)),
    percent_gain(rs, sdma),
    percent_gain(rs, noma),
  };
}

} // namespace rsma
