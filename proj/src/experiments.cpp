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

#include "rsma/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>

namespace rsma::experiments {

namespace {

std::string format_coordinate(double x)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

std::string format_value(double x)
{
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.9f", round_output(x));
  std::string s(buf);
  if (s == "-0.000000000") s = "0.000000000";
  return s;
}

double parse_number(std::string_view text)
{
  const std::string s(text);
  std::size_t       used = 0;
  double            v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception &) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

} // namespace

std::size_t RangeSpec::count() const
{
  if (step == 0.0 || !std::isfinite(step)) return start == stop ? 1 : 0;
  const double span = (stop - start) / step;
  if (span < -1e-9) return 0;
  return static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
}

std::string RangeSpec::to_string() const
{
  return format_coordinate(start) + ":" + format_coordinate(stop) + ":" + format_coordinate(step);
}

RangeSpec RangeSpec::parse(std::string_view text)
{
  const auto first = text.find(':');
  if (first == std::string_view::npos) {
    const double v = parse_number(text);
    return RangeSpec{v, v, 1.0};
  }
  const auto second = text.find(':', first + 1);
  if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos)
    throw std::invalid_argument("range must be start:stop:step");

  RangeSpec r{parse_number(text.substr(0, first)), parse_number(text.substr(first + 1, second - first - 1)),
              parse_number(text.substr(second + 1))};
  if (r.step == 0.0) throw std::invalid_argument("range step must be nonzero");
  if ((r.stop - r.start) / r.step < -1e-9) throw std::invalid_argument("range step points away from stop");
  return r;
}

double round_output(double x)
{
  if (!std::isfinite(x)) return x;
  return std::round(x * 1e9) / 1e9;
}

namespace {

ChannelPair<double> grid_pair(double rho, double gamma_db)
{
  return pair_from_rho(gamma_db, std::clamp(rho, 0.0, 1.0));
}

} // namespace

std::vector<RegionCell> region_map(double power, const RangeSpec &rho_grid, const RangeSpec &gamma_db_grid)
{
  std::vector<RegionCell> cells;
  cells.reserve(rho_grid.count() * gamma_db_grid.count());
  for (std::size_t g = 0; g < gamma_db_grid.count(); ++g) {
    const double gamma_db = gamma_db_grid.at(g);
    for (std::size_t r = 0; r < rho_grid.count(); ++r) {
      const double rho = rho_grid.at(r);
      const auto   best = classify(grid_pair(rho, gamma_db), power);
      cells.push_back(RegionCell{rho, gamma_db, best.t, best.split.p1, best.split.p2, best.split.pc, best.rs, best.label});
    }
  }
  return cells;
}

std::vector<GainCell> gain_map(double power, const RangeSpec &rho_grid, const RangeSpec &gamma_db_grid)
{
  std::vector<GainCell> cells;
  cells.reserve(rho_grid.count() * gamma_db_grid.count());
  for (std::size_t g = 0; g < gamma_db_grid.count(); ++g) {
    const double gamma_db = gamma_db_grid.at(g);
    for (std::size_t r = 0; r < rho_grid.count(); ++r) {
      const double rho = rho_grid.at(r);
      const auto   gain = relative_gain(grid_pair(rho, gamma_db), power);
      cells.push_back(GainCell{rho, gamma_db, gain.vs_switch, gain.vs_sdma, gain.vs_noma});
    }
  }
  return cells;
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial)
{
  std::uint64_t z = seed + trial + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

McFractions tally(int n_t, double power, double gamma_db, long trials, std::uint64_t seed, const std::array<long, 5> &counts)
{
  McFractions f;
  f.n_t = n_t;
  f.power_w = power;
  f.gamma_db = gamma_db;
  f.trials = trials;
  f.seed = seed;
  for (std::size_t i = 0; i < counts.size(); ++i) f.fractions[i] = static_cast<double>(counts[i]) / static_cast<double>(trials);
  return f;
}

void check_mc_args(int n_t, double power, long trials)
{
  if (n_t < 2) throw std::invalid_argument("n_t must be >= 2");
  if (!(power > 0)) throw std::invalid_argument("power must be > 0");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
}

} // namespace

McFractions mc_fractions(int n_t, double power, double gamma_db, long trials, std::uint64_t seed)
{
  return mc_sweep(n_t, power, RangeSpec{gamma_db, gamma_db, 1.0}, trials, seed).front();
}

std::vector<McFractions> mc_sweep(int n_t, double power, const RangeSpec &gamma_db_grid, long trials, std::uint64_t seed)
{
  check_mc_args(n_t, power, trials);
  const std::size_t               points = gamma_db_grid.count();
  std::vector<std::array<long, 5>> counts(points, std::array<long, 5>{});
  for (long k = 0; k < trials; ++k) {
    const std::uint64_t s = trial_seed(seed, static_cast<std::uint64_t>(k));
    for (std::size_t g = 0; g < points; ++g) {
      std::mt19937_64 rng(s);
      const auto      pair = rayleigh_pair(n_t, gamma_db_grid.at(g), rng);
      ++counts[g][static_cast<std::size_t>(classify(pair, power).label)];
    }
  }
  std::vector<McFractions> out;
  out.reserve(points);
  for (std::size_t g = 0; g < points; ++g) out.push_back(tally(n_t, power, gamma_db_grid.at(g), trials, seed, counts[g]));
  return out;
}

void write_region_csv(std::ostream &os, const std::vector<RegionCell> &cells)
{
  os << kRegionCsvHeader << '\n';
  for (const auto &c : cells) {
    os << format_coordinate(c.rho) << ',' << format_coordinate(c.gamma_db) << ',' << format_value(c.t_star) << ','
       << format_value(c.p1) << ',' << format_value(c.p2) << ',' << format_value(c.pc) << ',' << format_value(c.rs_bits)
       << ',' << to_string(c.label) << '\n';
  }
}

void write_gain_csv(std::ostream &os, const std::vector<GainCell> &cells)
{
  os << kGainCsvHeader << '\n';
  for (const auto &c : cells) {
    os << format_coordinate(c.rho) << ',' << format_coordinate(c.gamma_db) << ',' << format_value(c.gain_switch_pct) << ','
       << format_value(c.gain_sdma_pct) << ',' << format_value(c.gain_noma_pct) << '\n';
  }
}

nlohmann::ordered_json to_json(const RegionCell &c)
{
  return {
    {"rho", c.rho},
    {"gamma_db", c.gamma_db},
    {"t_star", round_output(c.t_star)},
    {"p1", round_output(c.p1)},
    {"p2", round_output(c.p2)},
    {"pc", round_output(c.pc)},
    {"rs_bits", round_output(c.rs_bits)},
    {"label", std::string(to_string(c.label))},
  };
}

nlohmann::ordered_json to_json(const GainCell &c)
{
  return {
    {"rho", c.rho},
    {"gamma_db", c.gamma_db},
    {"gain_switch_pct", round_output(c.gain_switch_pct)},
    {"gain_sdma_pct", round_output(c.gain_sdma_pct)},
    {"gain_noma_pct", round_output(c.gain_noma_pct)},
  };
}

nlohmann::ordered_json to_json(const McFractions &f)
{
  nlohmann::ordered_json fractions = nlohmann::ordered_json::object();
  for (auto s : kAllStrategies) fractions[std::string(to_string(s))] = f.fraction(s);
  return {
    {"n_t", f.n_t},
    {"power_w", f.power_w},
    {"gamma_db", f.gamma_db},
    {"trials", f.trials},
    {"seed", f.seed},
    {"fractions", fractions},
  };
}

McFractions mc_fractions_from_json(const nlohmann::ordered_json &j)
{
  McFractions f;
  f.n_t = j.at("n_t").get<int>();
  f.power_w = j.at("power_w").get<double>();
  f.gamma_db = j.at("gamma_db").get<double>();
  f.trials = j.at("trials").get<long>();
  f.seed = j.at("seed").get<std::uint64_t>();
  for (auto s : kAllStrategies) f.fractions[static_cast<std::size_t>(s)] = j.at("fractions").at(std::string(to_string(s))).get<double>();
  return f;
}

} // namespace rsma::experiments
