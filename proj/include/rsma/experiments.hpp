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

// Parameter sweeps and Monte-Carlo studies over the strategy classifier,
// plus the CSV/JSON table formats they are written in.

#include "rsma/strategy.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace rsma::experiments {

/// Inclusive arithmetic range; point i is start + i * step (no accumulation).
struct RangeSpec
{
  double start = 0;
  double stop = 0;
  double step = 1;

  std::size_t count() const;
  double      at(std::size_t i) const { return start + static_cast<double>(i) * step; }
  std::string to_string() const;

  /// Parses "start:stop:step"; a single number gives a one-point range.
  static RangeSpec parse(std::string_view text);
};

inline const RangeSpec kDefaultRhoGrid{0.0, 1.0, 0.01};
inline const RangeSpec kDefaultGammaDbGrid{0.0, -20.0, -0.2};

struct RegionCell
{
  double   rho = 0;
  double   gamma_db = 0;
  double   t_star = 0;
  double   p1 = 0;
  double   p2 = 0;
  double   pc = 0;
  double   rs_bits = 0;
  Strategy label = Strategy::RS;
};

struct GainCell
{
  double rho = 0;
  double gamma_db = 0;
  double gain_switch_pct = 0;
  double gain_sdma_pct = 0;
  double gain_noma_pct = 0;
};

struct McFractions
{
  int                   n_t = 2;
  double                power_w = 0;
  double                gamma_db = 0;
  long                  trials = 0;
  std::uint64_t         seed = 0;
  std::array<double, 5> fractions{}; ///< indexed like kAllStrategies

  double fraction(Strategy s) const { return fractions[static_cast<std::size_t>(s)]; }
};

/// Classifies every (rho, gamma_db) grid point of the parametric family.
/// Rows are ordered gamma_db-major, rho-minor.
std::vector<RegionCell> region_map(double power, const RangeSpec &rho_grid = kDefaultRhoGrid,
                                   const RangeSpec &gamma_db_grid = kDefaultGammaDbGrid);

std::vector<GainCell> gain_map(double power, const RangeSpec &rho_grid = kDefaultRhoGrid,
                               const RangeSpec &gamma_db_grid = kDefaultGammaDbGrid);

/// Seed of the generator used for one Monte-Carlo trial: splitmix64(seed + trial).
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

/// Share of Rayleigh realizations on which each scheme is sum-rate optimal.
McFractions mc_fractions(int n_t, double power, double gamma_db, long trials, std::uint64_t seed);

/// mc_fractions at every gamma_db of a range; trial k uses the same seed at
/// every gamma_db, so only the strength of user 2 changes across the sweep.
std::vector<McFractions> mc_sweep(int n_t, double power, const RangeSpec &gamma_db_grid, long trials, std::uint64_t seed);

inline constexpr std::string_view kRegionCsvHeader = "rho,gamma_db,t_star,p1,p2,pc,rs_bits,label";
inline constexpr std::string_view kGainCsvHeader = "rho,gamma_db,gain_switch_pct,gain_sdma_pct,gain_noma_pct";

void write_region_csv(std::ostream &os, const std::vector<RegionCell> &cells);
void write_gain_csv(std::ostream &os, const std::vector<GainCell> &cells);

/// Rounds to 1e-9 so written tables diff cleanly.
double round_output(double x);

nlohmann::ordered_json to_json(const RegionCell &cell);
nlohmann::ordered_json to_json(const GainCell &cell);
nlohmann::ordered_json to_json(const McFractions &f);
McFractions    mc_fractions_from_json(const nlohmann::ordered_json &j);

} // namespace rsma::experiments
