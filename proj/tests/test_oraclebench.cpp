// Copyright 2026 The rdmrep Authors
// SPDX-License-Identifier: Apache-2.0

#include "rdmrep/oraclebench.hpp"

#include "rdmrep/dualbounds.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace rdmrep;
using Catch::Matchers::WithinAbs;

TEST_CASE("brute-force extremes at half filling", "[oraclebench]") {
  const ExtremeSearchResult a = enumerate_extremes(1.0, model_a());
  CHECK_THAT(a.min_value, WithinAbs(0.8, 1e-9));
  CHECK_THAT(a.max_value, WithinAbs(1.1, 1e-9));
  REQUIRE_FALSE(a.min_attainers.empty());
  CHECK(a.min_attainers.front().family == "triplet");
  REQUIRE_FALSE(a.max_attainers.empty());

  const ExtremeSearchResult hub = enumerate_extremes(1.0, hubbard_dimer());
  CHECK_THAT(hub.min_value, WithinAbs(0.0, 1e-9));
  CHECK_THAT(hub.max_value, WithinAbs(4.0, 1e-9));
}

TEST_CASE("attainer weights form a convex combination", "[oraclebench]") {
  const ExtremeSearchResult r = enumerate_extremes(0.7, model_a());
  for (const auto* set : {&r.min_attainers, &r.max_attainers}) {
    double total = 0.0, occ = 0.0, w = 0.0;
    for (const ExtremeState& s : *set) {
      CHECK(s.weight >= 0.0);
      total += s.weight;
      occ += s.weight * s.occupation;
      w += s.weight * s.w;
    }
    CHECK_THAT(total, WithinAbs(1.0, 1e-12));
    CHECK_THAT(occ, WithinAbs(0.7, 1e-9));
    CHECK_THAT(w, WithinAbs(set == &r.min_attainers ? r.min_value : r.max_value, 1e-9));
  }
}

TEST_CASE("idempotent endpoints have a single preimage", "[oraclebench]") {
  const ExtremeSearchResult r = enumerate_extremes(2.0, model_a());
  CHECK_THAT(r.min_value, WithinAbs(1.0, 1e-12));
  CHECK_THAT(r.max_value, WithinAbs(1.0, 1e-12));
}

TEST_CASE("regime errors", "[oraclebench]") {
  SystemSpec three = model_a();
  three.n_electrons = 3;
  CHECK_THROWS_AS(enumerate_extremes(1.0, three), DimensionError);
  CHECK_THROWS_AS(enumerate_extremes(1.0, model_a(), 50), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_extremes(2.5, model_a()), std::invalid_argument);
}

TEST_CASE("brute-force extremes agree with the certified bounds", "[oraclebench][oracle]") {
  for (const SystemSpec& spec : {model_a(), hubbard_dimer()}) {
    const ModelSpace space(spec);
    for (int k = 0; k <= 20; ++k) {
      const double n = 0.05 + 1.9 * k / 20.0;
      const OneRDM gamma = OneRDM::diagonal(Eigen::Vector2d(n, 2.0 - n));
      const ExtremeSearchResult r = enumerate_extremes(n, spec);
      CHECK_THAT(lower_bound(space, gamma).value, WithinAbs(r.min_value, 1e-5));
      CHECK_THAT(upper_bound(space, gamma).value, WithinAbs(r.max_value, 1e-5));
    }
  }
}
