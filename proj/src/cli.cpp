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

#include "rsma/cli.hpp"
#include "rsma/experiments.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

namespace rsma::cli {

namespace {

using Json = nlohmann::ordered_json;

/// Flag validation failure; exits with status 2.
struct UsageError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

/// Output failure; exits with status 1.
struct IoError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

std::shared_ptr<spdlog::logger> logger()
{
  static auto log = [] {
    auto l = std::make_shared<spdlog::logger>("rsma", std::make_shared<spdlog::sinks::stderr_sink_mt>());
    l->set_pattern("[%l] %v");
    spdlog::level::level_enum level = spdlog::level::warn;
    if (const char *env = std::getenv("RSMA_LOG")) level = spdlog::level::from_str(env);
    l->set_level(level);
    return l;
  }();
  return log;
}

struct Options
{
  double                     power = 100.0;
  std::optional<double>      snr_db;
  std::optional<double>      gamma_db;
  std::optional<double>      theta;
  std::optional<double>      rho;
  std::optional<int>         n_t;
  long                       trials = 10000;
  std::uint64_t              seed = 42;
  std::optional<std::string> rho_grid;
  std::optional<std::string> gamma_db_grid;
  std::optional<std::string> out;
  std::optional<std::string> format;
};

struct Flags
{
  CLI::Option *power, *snr_db, *gamma_db, *theta, *rho, *nt, *trials, *seed, *rho_grid, *gamma_db_grid, *out, *format;
};

void reject_unused(std::string_view command, std::initializer_list<CLI::Option *> unused)
{
  for (auto *opt : unused)
    if (opt->count() > 0) throw UsageError(opt->get_name() + ": not used by '" + std::string(command) + "'");
}

experiments::RangeSpec parse_grid(const std::optional<std::string> &text, const experiments::RangeSpec &fallback,
                                  std::string_view flag)
{
  if (!text) return fallback;
  try {
    auto r = experiments::RangeSpec::parse(*text);
    if (r.count() == 0) throw std::invalid_argument("empty range");
    return r;
  } catch (const std::invalid_argument &e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

double effective_power(const Options &o)
{
  const double p = o.snr_db ? db_to_power(*o.snr_db) : o.power;
  if (!(p > 0) || !std::isfinite(p)) throw UsageError(o.snr_db ? "--snr-db: must give a finite power" : "--power: must be > 0");
  return p;
}

std::string format_or(const Options &o, std::string_view fallback) { return o.format ? *o.format : std::string(fallback); }

void emit(const Options &o, const std::string &payload, std::ostream &out)
{
  if (!o.out) {
    out << payload;
    return;
  }
  std::ofstream file(*o.out, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + *o.out + "' for writing");
  file << payload;
  file.flush();
  if (!file) throw IoError("failed writing '" + *o.out + "'");
  logger()->info("wrote {}", *o.out);
}

double rounded(double x) { return experiments::round_output(x); }

Json result_json(const StrategyResult<double> &r)
{
  return {
    {"label", std::string(to_string(r.label))},
    {"t", rounded(r.t)},
    {"pc", rounded(r.split.pc)},
    {"p1", rounded(r.split.p1)},
    {"p2", rounded(r.split.p2)},
    {"rs_bits", rounded(r.rs)},
    {"regime", r.split.regime == Regime::DualStream ? "DualStream" : "SingleStream"},
  };
}

std::string run_eval(const Options &o, const Flags &f)
{
  reject_unused("eval", {f.trials, f.rho_grid, f.gamma_db_grid});
  if (o.format && *o.format != "json") throw UsageError("--format: eval only writes json");
  if (o.theta && o.rho) throw UsageError("--theta: cannot be combined with --rho");
  const double power = effective_power(o);
  const double gamma_db = o.gamma_db.value_or(0.0);

  Json channel;
  std::optional<ChannelPair<double>> pair;
  if (o.theta || o.rho) {
    if (o.n_t && *o.n_t != 2) throw UsageError("--nt: the parametric channel has exactly 2 antennas");
    if (f.seed->count() > 0) throw UsageError("--seed: only used with a Rayleigh channel (--nt without --theta/--rho)");
    if (!(gamma_db <= 0)) throw UsageError("--gamma-db: must be <= 0 for the parametric channel");
    if (o.theta) {
      pair.emplace(parametric_pair(gamma_db, *o.theta, 2));
      channel = {{"mode", "parametric"}, {"gamma_db", gamma_db}, {"theta", *o.theta}};
    } else {
      if (!(*o.rho >= 0 && *o.rho <= 1)) throw UsageError("--rho: must lie in [0, 1]");
      pair.emplace(pair_from_rho(gamma_db, *o.rho));
      channel = {{"mode", "parametric"}, {"gamma_db", gamma_db}, {"rho_requested", *o.rho}};
    }
  } else if (o.n_t) {
    if (*o.n_t < 2) throw UsageError("--nt: must be >= 2");
    std::mt19937_64 rng(experiments::trial_seed(o.seed, 0));
    pair.emplace(rayleigh_pair(*o.n_t, gamma_db, rng));
    channel = {{"mode", "rayleigh"}, {"gamma_db", gamma_db}, {"seed", o.seed}};
  } else {
    throw UsageError("--theta: eval needs a channel (--theta, --rho, or --nt for Rayleigh)");
  }

  const auto geom = geometry(*pair);
  channel["n_t"] = pair->antennas();
  channel["rho"] = rounded(geom.rho);
  channel["n1sq"] = rounded(geom.n1sq);
  channel["n2sq"] = rounded(geom.n2sq);
  channel["gap"] = geom.aligned ? Json(nullptr) : Json(rounded(geom.gap));

  Json strategies = Json::object();
  for (auto s : kAllStrategies) strategies[std::string(to_string(s))] = result_json(evaluate(s, *pair, power));
  const auto best = classify(*pair, power);

  Json doc = {
    {"power_w", power},
    {"channel", channel},
    {"strategies", strategies},
    {"best",
     {
       {"label", std::string(to_string(best.label))},
       {"t_star", rounded(best.t)},
       {"pc", rounded(best.split.pc)},
       {"p1", rounded(best.split.p1)},
       {"p2", rounded(best.split.p2)},
       {"rs_bits", rounded(best.rs)},
     }},
  };
  return doc.dump(2) + "\n";
}

std::string run_map(std::string_view command, const Options &o, const Flags &f)
{
  reject_unused(command, {f.gamma_db, f.theta, f.rho, f.nt, f.trials, f.seed});
  const double power = effective_power(o);
  const auto   rho_grid = parse_grid(o.rho_grid, experiments::kDefaultRhoGrid, "--rho-grid");
  const auto   gamma_grid = parse_grid(o.gamma_db_grid, experiments::kDefaultGammaDbGrid, "--gamma-db-grid");
  for (std::size_t i = 0; i < rho_grid.count(); ++i) {
    const double r = rho_grid.at(i);
    if (!(r >= -1e-12 && r <= 1 + 1e-12)) throw UsageError("--rho-grid: values must lie in [0, 1]");
  }
  for (std::size_t i = 0; i < gamma_grid.count(); ++i)
    if (!(gamma_grid.at(i) <= 1e-12)) throw UsageError("--gamma-db-grid: values must be <= 0");
  logger()->info("{}: P = {} W, rho {}, gamma_db {}", command, power, rho_grid.to_string(), gamma_grid.to_string());

  const std::string format = format_or(o, "csv");
  std::ostringstream os;
  if (command == "region-map") {
    const auto cells = experiments::region_map(power, rho_grid, gamma_grid);
    if (format == "csv") {
      experiments::write_region_csv(os, cells);
    } else {
      Json arr = Json::array();
      for (const auto &c : cells) arr.push_back(experiments::to_json(c));
      os << arr.dump(2) << '\n';
    }
  } else {
    const auto cells = experiments::gain_map(power, rho_grid, gamma_grid);
    if (format == "csv") {
      experiments::write_gain_csv(os, cells);
    } else {
      Json arr = Json::array();
      for (const auto &c : cells) arr.push_back(experiments::to_json(c));
      os << arr.dump(2) << '\n';
    }
  }
  return os.str();
}

std::string run_mc(const Options &o, const Flags &f)
{
  reject_unused("mc", {f.theta, f.rho, f.rho_grid});
  if (o.gamma_db && o.gamma_db_grid) throw UsageError("--gamma-db: cannot be combined with --gamma-db-grid");
  const double power = effective_power(o);
  const int    n_t = o.n_t.value_or(2);
  if (n_t < 2) throw UsageError("--nt: must be >= 2");
  if (o.trials < 1) throw UsageError("--trials: must be >= 1");

  std::vector<experiments::McFractions> rows;
  if (o.gamma_db_grid) {
    rows = experiments::mc_sweep(n_t, power, parse_grid(o.gamma_db_grid, {}, "--gamma-db-grid"), o.trials, o.seed);
  } else {
    rows.push_back(experiments::mc_fractions(n_t, power, o.gamma_db.value_or(0.0), o.trials, o.seed));
  }
  logger()->info("mc: n_t = {}, P = {} W, {} trials x {} gamma points", n_t, power, o.trials, rows.size());

  std::ostringstream os;
  if (format_or(o, "json") == "json") {
    if (o.gamma_db_grid) {
      Json arr = Json::array();
      for (const auto &r : rows) arr.push_back(experiments::to_json(r));
      os << arr.dump(2) << '\n';
    } else {
      os << experiments::to_json(rows.front()).dump(2) << '\n';
    }
  } else {
    os << "n_t,power_w,gamma_db,trials,seed";
    for (auto s : kAllStrategies) os << ',' << to_string(s);
    os << '\n';
    for (const auto &r : rows) {
      os << r.n_t << ',' << Json(r.power_w).dump() << ',' << Json(r.gamma_db).dump() << ',' << r.trials << ',' << r.seed;
      for (auto s : kAllStrategies) os << ',' << Json(r.fraction(s)).dump();
      os << '\n';
    }
  }
  return os.str();
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Two-user MISO broadcast channel: rate-splitting versus SDMA, NOMA, OMA and multicast", "rsma"};
  app.set_config("--config", "", "Flat key = value file using the long flag names; command-line flags take precedence");
  app.require_subcommand(1);

  Options o;
  Flags   f{};
  f.power = app.add_option("--power", o.power, "Total transmit power P in W (noise power is 1 W, so P is the SNR)")
              ->capture_default_str();
  f.snr_db = app.add_option("--snr-db", o.snr_db, "Transmit SNR in dB; alternative to --power")->excludes(f.power);
  f.gamma_db = app.add_option("--gamma-db", o.gamma_db, "Strength of user 2 relative to user 1 in dB (<= 0 for parametric channels)");
  f.theta = app.add_option("--theta", o.theta, "Phase offset of user 2's second antenna in radians (parametric channel)");
  f.rho = app.add_option("--rho", o.rho, "Channel direction orthogonality in [0, 1] (parametric channel)")->excludes(f.theta);
  f.nt = app.add_option("--nt", o.n_t, "Number of transmit antennas (Rayleigh channels)");
  f.trials = app.add_option("--trials", o.trials, "Monte-Carlo channel realizations")->capture_default_str();
  f.seed = app.add_option("--seed", o.seed, "Random seed (Rayleigh channels)")->capture_default_str();
  f.rho_grid = app.add_option("--rho-grid", o.rho_grid, "rho sweep start:stop:step (unitless, default 0:1:0.01)");
  f.gamma_db_grid = app.add_option("--gamma-db-grid", o.gamma_db_grid, "gamma sweep start:stop:step in dB (default 0:-20:-0.2)");
  f.out = app.add_option("--out", o.out, "Output file path (default: standard output)");
  f.format = app.add_option("--format", o.format, "Output format: csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto *eval = app.add_subcommand("eval", "Evaluate every strategy on one channel and report the best (JSON)");
  auto *region = app.add_subcommand("region-map", "Optimal t and preferred strategy over a rho x gamma_db grid");
  auto *gain = app.add_subcommand("gain-map", "Relative sum-rate gains of RS over a rho x gamma_db grid");
  auto *mc = app.add_subcommand("mc", "Preferred-strategy fractions over Rayleigh fading realizations");
  for (auto *sub : {eval, region, gain, mc}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::FileError &e) {
    err << "rsma: " << e.what() << '\n';
    return 1;
  } catch (const CLI::ParseError &e) {
    err << "rsma: " << e.what() << '\n';
    return 2;
  }

  try {
    std::string payload;
    if (eval->parsed()) {
      payload = run_eval(o, f);
    } else if (region->parsed()) {
      payload = run_map("region-map", o, f);
    } else if (gain->parsed()) {
      payload = run_map("gain-map", o, f);
    } else {
      payload = run_mc(o, f);
    }
    emit(o, payload, out);
  } catch (const UsageError &e) {
    err << "rsma: " << e.what() << '\n';
    return 2;
  } catch (const IoError &e) {
    err << "rsma: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument &e) {
    err << "rsma: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

} // namespace rsma::cli
