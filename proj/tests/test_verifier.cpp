#include "exactne/pcalc.hpp"
#include "exactne/simulator.hpp"
#include "exactne/verifier.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <set>

using namespace exactne;

TEST_CASE("verify_p_computation on iterate(base), all 8 inputs") {
  const VerificationReport r = verify_p_computation(Plan::iterate(Plan::base()), InputSet::exhaustive(1));
  CHECK(r.pass);
  CHECK(r.ne0.count == 2);
  CHECK(r.ne1.count == 6);
  CHECK(r.predicted_p == "-7/9");
  CHECK(r.ne1.min_overlap == doctest::Approx(-7.0 / 9.0).epsilon(1e-12));
  CHECK(r.ne1.max_overlap == doctest::Approx(-7.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("verify_p_computation on NE^2, all 512 inputs, agrees with the exact p") {
  const VerificationReport r = verify_p_computation(plans::ne2_four_query(), InputSet::exhaustive(2));
  CHECK(r.pass);
  CHECK(r.ne0.count + r.ne1.count == 512);
  CHECK(r.predicted_p == "-295/729");
  // Uniform overlap across the NE = 1 class.
  CHECK(r.ne1.max_overlap - r.ne1.min_overlap < 1e-9);
  CHECK(r.ne1.max_overlap_deviation < 1e-9);
}

TEST_CASE("a wrong prediction fails the report") {
  // lift(1/2, base): overlap -1/4 + 3/4 = 1/2 on x = 1.
  const VerificationReport ok = verify_p_computation(parse_plan("lift(1/2, base)"), InputSet::exhaustive(0));
  CHECK(ok.pass);
  CHECK(ok.ne1.max_overlap == doctest::Approx(0.5).epsilon(1e-12));

  // Inputs of the wrong depth are rejected outright.
  CHECK_THROWS_AS(verify_p_computation(Plan::base(), InputSet::exhaustive(1)), std::invalid_argument);

  // A tolerance below the rounding floor of a long plan produces a failing report, not an exception.
  const VerificationReport strict =
      verify_p_computation(plans::construction1(), InputSet::exhaustive(2), 0.0);
  CHECK_FALSE(strict.pass);
  CHECK_FALSE(strict.failures.empty());
}

TEST_CASE("verify_exact") {
  const Plan zero = Plan::lift(Rational(0), plans::ne2_four_query());
  const VerificationReport r = verify_exact(zero, InputSet::exhaustive(2));
  CHECK(r.pass);
  CHECK(r.ne0.correct + r.ne1.correct == 512);

  const VerificationReport d0 = verify_exact(Plan::lift(Rational(0), Plan::base()), InputSet::exhaustive(0));
  CHECK(d0.pass);
  CHECK(d0.ne0.correct == 1);
  CHECK(d0.ne1.correct == 1);

  CHECK_THROWS_AS(verify_exact(plans::ne2_four_query(), InputSet::exhaustive(2)), std::invalid_argument);
}

TEST_CASE("structured inputs") {
  const auto d1 = structured_inputs(1, 1, 0);
  const std::set<InputAssignment> s1(d1.begin(), d1.end());
  for (const InputAssignment& want :
       {InputAssignment{0, 0, 0}, InputAssignment{1, 1, 1}, InputAssignment{1, 0, 0}, InputAssignment{1, 1, 0}}) {
    CHECK(s1.count(want) == 1);
  }

  const auto d2 = structured_inputs(2, 1, 0);
  const InputAssignment case2a{1, 0, 0, 0, 0, 0, 0, 0, 0};
  const InputAssignment case2b{1, 0, 0, 0, 1, 0, 0, 0, 0};
  CHECK(std::find(d2.begin(), d2.end(), case2a) != d2.end());
  CHECK(std::find(d2.begin(), d2.end(), case2b) != d2.end());
  auto children = [](const InputAssignment& b) {
    std::vector<int> c;
    for (int l = 0; l < 3; ++l) c.push_back(eval_ne_d(1, Bits(b).subspan(3 * l, 3)));
    return c;
  };
  CHECK(children(case2a) == std::vector<int>{1, 0, 0});
  CHECK(children(case2b) == std::vector<int>{1, 1, 0});

  // Deterministic in the seed, distinct across seeds.
  CHECK(structured_inputs(3, 42, 50) == structured_inputs(3, 42, 50));
  CHECK(structured_inputs(3, 42, 50) != structured_inputs(3, 43, 50));
  CHECK(structured_inputs(0, 1, 0).size() == 2);
}

TEST_CASE("case 2a and case 2b inputs give the same overlap") {
  const Plan p = Plan::iterate(plans::ne2_four_query());
  const Simulator sim(p);
  const auto inputs = structured_inputs(3, 5, 0);
  std::vector<double> overlaps;
  for (const auto& b : inputs) {
    if (eval_ne_d(3, b)) overlaps.push_back(sim.overlap(b).overlap.real());
  }
  REQUIRE(overlaps.size() >= 6);
  for (double v : overlaps) CHECK(v == doctest::Approx(to_double(plan_p(p))).epsilon(1e-10));
}

TEST_CASE("sensitivity at the all-zeros input is 3^d") {
  CHECK(sensitivity_check(0) == 1);
  CHECK(sensitivity_check(1) == 3);
  CHECK(sensitivity_check(2) == 9);
  CHECK(sensitivity_check(3) == 27);
  CHECK_THROWS_AS(sensitivity_check(4), std::invalid_argument);
}

TEST_CASE("report serialization") {
  const VerificationReport r =
      verify_p_computation(Plan::iterate(Plan::base()), InputSet::sampled(1, 9, 4));
  const std::string text = r.to_text();
  CHECK(text.find("plan=iterate(base)\n") == 0);
  CHECK(text.find("seed=9\n") != std::string::npos);
  CHECK(text.find("predicted_p=-7/9\n") != std::string::npos);
  CHECK(text.find("\npass=true\n") != std::string::npos);

  const std::string csv = r.to_csv();
  CHECK(csv.find("class,count,expected_overlap,") == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(csv.find("\nne0,") != std::string::npos);
  CHECK(csv.find("\nne1,") != std::string::npos);

  // Same seed, same bytes.
  CHECK(verify_p_computation(Plan::iterate(Plan::base()), InputSet::sampled(1, 9, 4)).to_csv() == csv);
}

TEST_CASE("exhaustive input indexing") {
  const InputSet set = InputSet::exhaustive(1);
  CHECK(set.size() == 8);
  CHECK(set.at(5) == InputAssignment{1, 0, 1});
  CHECK_THROWS_AS(InputSet::exhaustive(4), std::invalid_argument);
  CHECK_THROWS_AS(InputSet::listed(1, {InputAssignment{0}}, "bad"), std::invalid_argument);
}
