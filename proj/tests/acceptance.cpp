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

// Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include "oracles.hpp"
#include "rsma/experiments.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace rsma;

namespace {

struct Outcome
{
  bool        pass = true;
  std::string detail;
};

struct Criterion
{
  std::string              name;
  double                   time_limit_s; ///< 0 means no limit
  std::function<Outcome()> check;
};

std::string fmt(const char *f, double a, double b = 0, double c = 0, double d = 0)
{
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

Outcome maxmin_optimality()
{
  std::mt19937_64                        rng(1001);
  std::uniform_real_distribution<double> scale_db(-10.0, 10.0);
  double                                 worst_gap = -1e300, worst_balance = 0;
  int                                    balanced = 0;
  for (int i = 0; i < 1000; ++i) {
    const int  n_t = i % 2 ? 4 : 2;
    const auto g1 = complex_gaussian<double>(n_t, db_to_power(scale_db(rng)), rng);
    const auto g2 = complex_gaussian<double>(n_t, db_to_power(scale_db(rng)), rng);
    const auto s = maxmin_common_direction<double>(g1, g2);
    const double ours = oracle::min_gain(g1, g2, s.fc);
    const double search = oracle::random_search_maxmin(g1, g2, 10000, rng);
    worst_gap = std::max(worst_gap, (search - ours) / search);
    if (s.lambda > 0 && balance_coefficients(s.alpha11, s.alpha22, std::abs(s.alpha12)).closed_form) {
      ++balanced;
      const double a = std::norm(g1.dot(s.fc)), b = std::norm(g2.dot(s.fc));
      worst_balance = std::max(worst_balance, std::abs(a - b) / std::max(a, b));
    }
  }
  return {worst_gap <= 1e-6 && worst_balance <= 1e-9,
          fmt("worst relative shortfall vs search %.2e, balanced cases %.0f, worst imbalance %.2e", worst_gap, balanced,
              worst_balance)};
}

Outcome t_star_vs_grid()
{
  std::mt19937_64 rng(1002);
  double          worst_t = 0, worst_rs = 0;
  for (int i = 0; i < 1000; ++i) {
    double       power = 0;
    const auto   pair = oracle::random_dual_stream_instance(rng, power);
    const auto   geom = geometry(pair);
    const auto   common = direction_only_common(pair);
    const double t = std::clamp(t_star_closed(geom, common.direction_gain2, power), geom.gap / power, 1.0);
    const double rs = sum_rate_zf(geom, common, waterfill(geom, t, power)).rs;
    const auto   grid = oracle::dual_branch_grid(pair, power, 1e-5);
    worst_t = std::max(worst_t, std::abs(t - grid.t));
    worst_rs = std::max(worst_rs, std::abs(rs - grid.rs));
  }
  return {worst_t <= 1e-3 && worst_rs <= 1e-6, fmt("max |dt| %.2e, max |dRs| %.2e bits", worst_t, worst_rs)};
}

Outcome quadratic_and_composition()
{
  std::mt19937_64 rng(1003);
  double          worst_quad = 0, worst_comp = 0;
  for (int i = 0; i < 1000; ++i) {
    double       power = 0;
    const auto   pair = oracle::random_dual_stream_instance(rng, power);
    const auto   geom = geometry(pair);
    const auto   common = direction_only_common(pair);
    const auto   q = quadratic_coefficients(geom, common.direction_gain2, power);
    const auto   dirs = zf_directions(pair);
    const double lo = geom.gap / power;
    for (int k = 1; k <= 20; ++k) {
      const double t = std::min(lo + (1.0 - lo) * k / 20.0, 1.0);
      const auto   split = waterfill(geom, t, power);
      const auto   r = sum_rate_zf(geom, common, split);
      worst_quad = std::max(worst_quad, std::abs(q.sum_rate(t) - r.rs));
      const auto set = zf_precoders(dirs, common, split);
      worst_comp = std::max(worst_comp,
                            std::abs(r.rs - (rate_common(pair, set) + rate_private(pair, set, 1) + rate_private(pair, set, 2))));
    }
  }
  return {worst_quad <= 1e-9 && worst_comp <= 1e-9, fmt("quadratic max err %.2e, composition max err %.2e", worst_quad, worst_comp)};
}

Outcome high_snr()
{
  const double power = 1e6;
  bool         ok = true;
  double       prev_t = -1, prev_delta = 1e300, worst_delta = 0, worst_t = 0;
  for (double rho : {0.3, 0.5, 0.8}) {
    const auto   pair = pair_from_rho(0.0, rho);
    const auto   geom = geometry(pair);
    const double g = direction_only_common(pair).direction_gain2;
    const auto   best = optimize_t(pair, power);
    const double at_one = evaluate(Strategy::SDMA, pair, power).rs;
    const double measured = best.rs - at_one;
    const double predicted = delta_rs_high_snr(geom.rho, g);
    const double t_inf = t_star_high_snr(geom.rho, g);
    worst_delta = std::max(worst_delta, std::abs(measured - predicted));
    worst_t = std::max(worst_t, std::abs(best.t - t_inf));
    ok = ok && best.t >= prev_t && measured <= prev_delta;
    prev_t = best.t;
    prev_delta = measured;
  }
  ok = ok && worst_delta <= 0.01 && worst_t <= 1e-3;
  return {ok, fmt("max |dRs err| %.2e bits, max |t* err| %.2e, monotone in rho", worst_delta, worst_t)};
}

Outcome dof_slopes()
{
  const double one_dof = std::log2(10.0);
  double       worst = 0;
  for (double rho : {0.3, 0.5, 0.8})
    for (double gamma_db : {0.0, -3.0, -10.0}) {
      const auto pair = pair_from_rho(gamma_db, rho);
      for (auto s : kAllStrategies) {
        const double decade = evaluate(s, pair, 1e6).rs - evaluate(s, pair, 1e5).rs;
        const double expected = (s == Strategy::RS || s == Strategy::SDMA) ? 2 * one_dof : one_dof;
        worst = std::max(worst, std::abs(decade - expected));
      }
    }
  return {worst <= 0.1, fmt("max deviation from 6.64 / 3.32 bits per decade %.3f", worst)};
}

bool single_stream(Strategy s) { return s == Strategy::NOMA || s == Strategy::Multicast || s == Strategy::OMA; }

/// Labels along increasing rho form single-stream, then RS, then SDMA runs.
bool ordered_row(const std::vector<Strategy> &row, bool noma_only)
{
  int    phase = 0;
  bool   saw_rs = false;
  for (auto s : row) {
    const int p = single_stream(s) ? 0 : s == Strategy::RS ? 1 : 2;
    if (noma_only && p == 0 && s != Strategy::NOMA) return false;
    if (p < phase) return false;
    phase = p;
    saw_rs = saw_rs || p == 1;
  }
  return saw_rs && phase == 2 && single_stream(row.front());
}

Outcome region_structure()
{
  const double power = 100.0;
  const auto   cells = experiments::region_map(power);
  const bool   examples = classify(pair_from_rho(-5.0, 0.05), power).label == Strategy::NOMA &&
                        classify(pair_from_rho(0.0, 0.9), power).label == Strategy::SDMA &&
                        classify(pair_from_rho(-20.0, 0.5), 10.0).label == Strategy::OMA;
  std::vector<Strategy> row0, row5;
  for (const auto &c : cells) {
    if (std::abs(c.gamma_db) < 1e-9 && c.rho > 0) row0.push_back(c.label);
    if (std::abs(c.gamma_db + 5.0) < 1e-9 && c.rho > 0) row5.push_back(c.label);
  }
  const bool rows = ordered_row(row0, false) && ordered_row(row5, true);
  return {cells.size() == 101 * 101 && examples && rows,
          fmt("%.0f cells", static_cast<double>(cells.size())) + "; point examples " + (examples ? "ok" : "wrong") +
            "; gamma_db 0 and -5 rows ordered single-stream, RS, SDMA: " + (rows ? "yes" : "no")};
}

Outcome mc_fractions()
{
  const experiments::RangeSpec gammas{0.0, -20.0, -2.0};
  const auto                   two = experiments::mc_sweep(2, 1000.0, gammas, 10000, 42);
  const auto                   four = experiments::mc_sweep(4, 1000.0, gammas, 10000, 42);

  auto best_rs = std::max_element(two.begin(), two.end(), [](const auto &a, const auto &b) {
    return a.fraction(Strategy::RS) < b.fraction(Strategy::RS);
  });
  const double rs2 = best_rs->fraction(Strategy::RS);
  const double dual2 = rs2 + best_rs->fraction(Strategy::SDMA);

  auto best_sdma = std::max_element(four.begin(), four.end(), [](const auto &a, const auto &b) {
    return a.fraction(Strategy::SDMA) < b.fraction(Strategy::SDMA);
  });
  const double sdma4 = best_sdma->fraction(Strategy::SDMA);
  const double rs4 = best_sdma->fraction(Strategy::RS);

  const bool ok = rs2 >= 0.70 && dual2 >= 0.95 && std::abs(sdma4 - 0.60) <= 0.07 && std::abs(rs4 - 0.40) <= 0.07;
  return {ok, fmt("n_t=2: RS %.3f, RS+SDMA %.3f; n_t=4: SDMA %.3f, RS %.3f", rs2, dual2, sdma4, rs4)};
}

Outcome stationarity()
{
  std::mt19937_64 rng(1004);
  const double    h = 1e-5;
  double          worst = 0;
  int             found = 0;
  while (found < 1000) {
    double       power = 0;
    const auto   pair = oracle::random_dual_stream_instance(rng, power);
    const auto   geom = geometry(pair);
    const auto   common = direction_only_common(pair);
    const double t = t_star_closed(geom, common.direction_gain2, power);
    if (!(t < 1.0 - 2 * h && t - h > geom.gap / power)) continue;
    ++found;
    auto rate = [&](double x) { return sum_rate_zf(geom, common, waterfill(geom, x, power)).rs; };
    worst = std::max(worst, std::abs((rate(t + h) - rate(t - h)) / (2 * h)));
  }
  return {worst <= 1e-6, fmt("max |dRs/dt| at interior t* %.2e", worst)};
}

Outcome trivial_regimes()
{
  bool ok = true;

  const auto orth = parametric_pair(0.0, kPi<double>);
  for (double power : {1.0, 100.0, 1e4}) {
    const auto r = classify(orth, power);
    ok = ok && r.t == 1.0 && r.label == Strategy::SDMA && r.rs - evaluate(Strategy::SDMA, orth, power).rs == 0.0;
  }
  ok = ok && delta_rs_high_snr(1.0, direction_only_common(orth).direction_gain2) == 0.0;

  const auto aligned = parametric_pair(0.0, 0.0);
  for (double power : {1.0, 100.0, 1e4}) {
    const auto r = classify(aligned, power);
    ok = ok && r.t == 0.0 && r.label == Strategy::Multicast;
  }

  std::mt19937_64                        rng(1005);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  long                                   violations = 0;
  for (long i = 0; i < 100000; ++i) {
    const double power = std::pow(10.0, 6 * u(rng) - 2);
    const auto   pair = i % 2 ? pair_from_rho(-30 * u(rng), u(rng)) : rayleigh_pair(2 + static_cast<int>(i % 3), -30 * u(rng), rng);
    const double t = i % 7 == 0 ? std::round(u(rng)) : u(rng);
    const auto   s = waterfill(geometry(pair), t, power);
    const bool   fine = std::abs(s.pc + s.p1 + s.p2 - power) <= 1e-12 * power && s.p1 >= s.p2 && s.p2 >= 0 && s.pc >= 0;
    if (!fine) ++violations;
  }
  ok = ok && violations == 0;
  return {ok, fmt("orthogonal/aligned cases checked; %.0f split violations in 1e5 fuzzed inputs", violations)};
}

} // namespace

int main()
{
  const std::vector<Criterion> criteria = {
    {"maxmin-precoder-optimality", 30, maxmin_optimality},
    {"closed-form-t-star-vs-grid", 60, t_star_vs_grid},
    {"quadratic-and-composition-identities", 0, quadratic_and_composition},
    {"high-snr-asymptotics", 0, high_snr},
    {"dof-slopes", 0, dof_slopes},
    {"region-map-structure", 120, region_structure},
    {"monte-carlo-fractions", 300, mc_fractions},
    {"stationarity", 0, stationarity},
    {"trivial-regimes", 0, trivial_regimes},
  };

  int failures = 0;
  for (const auto &c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome    o;
    try {
      o = c.check();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool   in_time = c.time_limit_s <= 0 || secs < c.time_limit_s;
    const bool   pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("%s %s: %s (%.2f s%s)\n", pass ? "PASS" : "FAIL", c.name.c_str(), o.detail.c_str(), secs,
                in_time ? "" : ", over time limit");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
