#include "exactne/planner.hpp"
#include "exactne/simulator.hpp"
#include "exactne/verifier.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace exactne;

TEST_CASE("search reproduces the 8-query NE^2 plan") {
  SearchConfig cfg;
  cfg.max_depth = 2;
  cfg.max_factor = 2;
  const SearchResult r = search(cfg);
  REQUIRE(r.plan);
  CHECK(render_plan(*r.plan) == "amplify(2, lift(0, iterate(iterate(base))))");
  CHECK(r.queries == 8);
  CHECK(r.exponent.per_level == doctest::Approx(std::sqrt(8.0)).epsilon(1e-12));
  CHECK(r.exact_p == Rational(-1));
}

TEST_CASE("search reproduces the 2048-query NE^8 plan") {
  SearchConfig cfg;
  cfg.max_depth = 8;
  cfg.max_factor = 2;
  cfg.p_ceiling = 0.99999;
  const SearchResult r = search(cfg);
  REQUIRE(r.plan);
  CHECK(r.depth == 8);
  CHECK(r.queries == 2048);
  CHECK(r.exponent.per_level == doctest::Approx(2.59366).epsilon(1e-4));
  CHECK(r.exact_p == Rational(-1));
  CHECK(*r.plan == plans::construction2());
}

TEST_CASE("depth-1 search finds the 4-query plan") {
  SearchConfig cfg;
  cfg.max_depth = 1;
  cfg.max_factor = 2;
  const SearchResult r = search(cfg);
  REQUIRE(r.plan);
  CHECK(render_plan(*r.plan) == "amplify(2, lift(0, iterate(base)))");
  CHECK(r.exponent.per_level == doctest::Approx(4.0));
}

TEST_CASE("search is deterministic and monotone in its bounds") {
  SearchConfig cfg;
  cfg.max_depth = 5;
  cfg.max_factor = 3;
  const SearchResult a = search(cfg);
  const SearchResult b = search(cfg);
  REQUIRE(a.plan);
  CHECK(*a.plan == *b.plan);
  CHECK(a.expanded == b.expanded);

  double previous = 1e9;
  for (int t = 1; t <= 8; ++t) {
    cfg.max_depth = t;
    cfg.max_factor = 2;
    const double e = search(cfg).exponent.per_level;
    CHECK(e <= previous + 1e-12);
    previous = e;
    cfg.max_factor = 4;
    CHECK(search(cfg).exponent.per_level <= e + 1e-12);
  }
}

TEST_CASE("cos(pi/c) lifts never make the optimum worse and yield -1 overlaps") {
  SearchConfig cfg;
  cfg.max_depth = 8;
  cfg.max_factor = 4;
  const double plain = search(cfg).exponent.per_level;
  cfg.cos_lift = true;
  const SearchResult r = search(cfg);
  REQUIRE(r.plan);
  CHECK(r.exponent.per_level <= plain + 1e-12);
  CHECK(r.exponent.per_level <= 2.5937);

  // Irrational endings are checked by simulation instead of exact arithmetic.
  cfg.max_depth = 2;
  const SearchResult small = search(cfg);
  REQUIRE(small.plan);
  const Simulator sim(*small.plan);
  for (const auto& bits : structured_inputs(small.depth, 1, 50)) {
    const double expected = eval_ne_d(small.depth, bits) ? -1.0 : 1.0;
    REQUIRE(std::abs(sim.overlap(bits).overlap - expected) < 1e-9);
  }
}

TEST_CASE("search config validation") {
  SearchConfig cfg;
  cfg.max_depth = 0;
  CHECK_THROWS_AS(search(cfg), std::invalid_argument);
  cfg = SearchConfig{};
  cfg.max_factor = 1;
  CHECK_THROWS_AS(search(cfg), std::invalid_argument);
  cfg = SearchConfig{};
  cfg.p_ceiling = 1.0;
  CHECK_THROWS_AS(search(cfg), std::invalid_argument);
}

TEST_CASE("trace tables") {
  const auto c1 = trace(plans::construction1());
  REQUIRE(c1.size() == 5);
  CHECK(c1.back().t == 2);
  CHECK(c1.back().k == 8);
  CHECK(c1.back().p_exact == "-1");
  CHECK(c1[2].p_exact == "-295/729");
  CHECK(c1[3].move == "lift(0)");
  CHECK(c1[3].dim == 10);

  const auto c2 = trace(plans::construction2());
  bool saw_128 = false, saw_256 = false;
  for (const auto& row : c2) {
    if (row.k == 128 && row.move == "iterate") {
      saw_128 = true;
      CHECK(row.p_decimal == "0.2238747");
    }
    if (row.k == 256) {
      saw_256 = true;
      CHECK(row.p_decimal == "-0.8997602");
    }
  }
  CHECK(saw_128);
  CHECK(saw_256);

  const auto base = trace(Plan::base());
  REQUIRE(base.size() == 1);
  CHECK(base[0].k == 1);
  CHECK(base[0].p_exact == "-1");

  std::ostringstream csv;
  write_trace_csv(csv, c1);
  CHECK(csv.str() ==
        "step,move,t,k,p_exact,p_decimal,dim\n"
        "0,base,0,1,-1,-1,1\n"
        "1,iterate,1,2,-7/9,-0.7777778,3\n"
        "2,iterate,2,4,-295/729,-0.4046639,9\n"
        "3,lift(0),2,4,0,0,10\n"
        "4,amplify(2),2,8,-1,-1,10\n");

  const auto sym = trace(parse_plan("amplify(4, lift(cos(pi/4), iterate(base)))"));
  CHECK(sym[2].p_exact == "irrational");
  CHECK(sym[2].p_decimal == "0.7071068");
}
