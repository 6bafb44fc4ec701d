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

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace rsma;

TEST_SUITE("strategy")
{
  TEST_CASE("names round-trip")
  {
    for (auto s : kAllStrategies) CHECK(parse_strategy(to_string(s)) == s);
    CHECK_FALSE(parse_strategy("TDMA").has_value());
  }

  TEST_CASE("label precedence")
  {
    auto split = [](double t, double p2) {
      PowerSplit<double> s;
      s.t = t;
      s.p2 = p2;
      return s;
    };
    CHECK(label_of(split(0.0, 0.0), 10.0) == Strategy::Multicast);
    CHECK(label_of(split(1.0, 0.0), 10.0) == Strategy::OMA);
    CHECK(label_of(split(0.4, 0.0), 10.0) == Strategy::NOMA);
    CHECK(label_of(split(1.0, 2.0), 10.0) == Strategy::SDMA);
    CHECK(label_of(split(0.4, 1.0), 10.0) == Strategy::RS);
    CHECK(label_of(split(1 - 1e-7, 5e-6), 10.0) == Strategy::OMA);
    CHECK(label_of(split(5e-7, 1.0), 10.0) == Strategy::Multicast);
  }

  TEST_CASE("multicast transmits the common stream at full power")
  {
    const auto pair = pair_from_rho(-4.0, 0.3);
    const auto r = evaluate(Strategy::Multicast, pair, 50.0);
    const auto g = maxmin_common_direction<double>(pair.h1(), pair.h2());
    CHECK(r.rs == doctest::Approx(std::log2(1 + 50.0 * g.balanced_gain)).epsilon(1e-12));
    CHECK(r.label == Strategy::Multicast);
  }

  TEST_CASE("orthogonal channels: SDMA is optimal")
  {
    const auto pair = parametric_pair(-3.0, kPi<double>);
    const auto rs = evaluate(Strategy::RS, pair, 100.0);
    const auto sdma = evaluate(Strategy::SDMA, pair, 100.0);
    CHECK(rs.rs == doctest::Approx(sdma.rs).epsilon(1e-12));
    CHECK(rs.label == Strategy::SDMA);
    CHECK(relative_gain(pair, 100.0).vs_sdma == doctest::Approx(0.0).epsilon(1e-9));
  }

  TEST_CASE("aligned channels: no private stream helps")
  {
    const auto pair = parametric_pair(-2.0, 0.0);
    const auto mc = evaluate(Strategy::Multicast, pair, 100.0);
    CHECK(mc.rs >= evaluate(Strategy::NOMA, pair, 100.0).rs - 1e-12);
    CHECK(mc.rs >= evaluate(Strategy::OMA, pair, 100.0).rs - 1e-12);
    CHECK(classify(pair, 100.0).label == Strategy::Multicast);
  }

  TEST_CASE("classification examples")
  {
    CHECK(classify(pair_from_rho(-5.0, 0.05), 100.0).label == Strategy::NOMA);
    CHECK(classify(pair_from_rho(0.0, 0.9), 100.0).label == Strategy::SDMA);
    CHECK(classify(pair_from_rho(-20.0, 0.5), 10.0).label == Strategy::OMA);
    const auto rs = classify(pair_from_rho(0.0, 0.5), 100.0);
    CHECK(rs.label == Strategy::RS);
    CHECK(rs.t == doctest::Approx(0.7071).epsilon(0.01));
  }

  TEST_CASE("relative gains")
  {
    const auto oma = relative_gain(pair_from_rho(-20.0, 0.5), 10.0);
    CHECK(std::abs(oma.vs_switch) <= 1e-6);
    CHECK(oma.vs_sdma >= 0);
    CHECK(oma.vs_noma >= -1e-9);
    const auto mid = relative_gain(pair_from_rho(0.0, 0.4), 1000.0);
    CHECK(mid.vs_switch > 0);
    CHECK(mid.vs_sdma > 0);
    CHECK(mid.vs_noma > 0);
    CHECK(percent_gain(3.0, 0.0) == 0.0);
    CHECK(percent_gain(3.0, 2.0) == doctest::Approx(50.0));
  }

  TEST_CASE("RS dominates every special case")
  {
    std::mt19937_64                        rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 300; ++i) {
      const double power = std::pow(10.0, 3 * u(rng));
      const auto   pair = i % 2 ? pair_from_rho(-20 * u(rng), u(rng)) : rayleigh_pair(2 + (i % 4), -20 * u(rng), rng);
      const double rs = evaluate(Strategy::RS, pair, power).rs;
      for (auto s : kAllStrategies) CHECK(rs >= evaluate(s, pair, power).rs - 1e-9);
    }
  }

  TEST_CASE("reported operating point is consistent")
  {
    const auto pair = pair_from_rho(-6.0, 0.35);
    for (auto s : kAllStrategies) {
      const auto r = evaluate(s, pair, 200.0);
      CHECK(r.split.pc + r.split.p1 + r.split.p2 == doctest::Approx(200.0));
      CHECK(r.rs == doctest::Approx(oracle::explicit_sum_rate(pair, r.split)).epsilon(1e-9));
    }
    const auto oma = evaluate(Strategy::OMA, pair, 200.0);
    CHECK(oma.split.p1 == 200.0);
    CHECK(oma.rs == doctest::Approx(std::log2(1 + geometry(pair).n1sq * geometry(pair).rho * 200.0)));
  }

  TEST_CASE("long double instantiation")
  {
    const auto pair = pair_from_rho<long double>(-3.0L, 0.5L);
    const auto r = classify<long double>(pair, 100.0L);
    const auto d = classify(pair_from_rho(-3.0, 0.5), 100.0);
    CHECK(r.label == d.label);
    CHECK(static_cast<double>(r.rs) == doctest::Approx(d.rs).epsilon(1e-9));
  }

  TEST_CASE("invalid power")
  {
    CHECK_THROWS_AS(evaluate(Strategy::RS, pair_from_rho(0.0, 0.5), 0.0), std::invalid_argument);
  }
}
