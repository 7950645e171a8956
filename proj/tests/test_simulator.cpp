#include "exactne/pcalc.hpp"
#include "exactne/simulator.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace exactne;

namespace {

const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

std::vector<InputAssignment> all_inputs(int depth) {
  const std::size_t n = pow3(depth);
  std::vector<InputAssignment> out;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) out.push_back(oracle::bits_of(v, n));
  return out;
}

std::vector<InputAssignment> some_inputs(int depth, std::mt19937_64& rng, std::size_t count) {
  if (depth <= 2) return all_inputs(depth);
  const std::size_t n = pow3(depth);
  std::vector<InputAssignment> out{InputAssignment(n, 0), InputAssignment(n, 1)};
  for (std::size_t i = 0; i < count; ++i) {
    InputAssignment b(n);
    for (auto& x : b) x = static_cast<std::uint8_t>(rng() & 1U);
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace

TEST_CASE("start states") {
  CHECK(start_state(Plan::base()).isApprox(ComplexState::Ones(1)));

  ComplexState three(3);
  three << kInvSqrt3, kInvSqrt3, kInvSqrt3;
  CHECK((start_state(Plan::iterate(Plan::base())) - three).norm() < 1e-15);

  const Plan lifted = Plan::lift(Rational(0), plans::ne2_four_query());
  const ComplexState s = start_state(lifted);
  REQUIRE(s.size() == 10);
  const ComplexState child = start_state(plans::ne2_four_query());
  CHECK((s.head(9) - std::sqrt(729.0 / 1024.0) * child).norm() < 1e-15);
  CHECK(std::abs(s(9) - std::sqrt(295.0 / 1024.0)) < 1e-15);
  CHECK(std::abs(s.norm() - 1.0) < 1e-15);
}

TEST_CASE("apply and overlap on iterate(base)") {
  const Plan p = Plan::iterate(Plan::base());
  const ComplexState start = start_state(p);

  const InputAssignment zeros{0, 0, 0};
  CHECK((apply(p, zeros, start, Direction::Forward) - start).norm() < 1e-15);

  const OverlapResult r001 = overlap(p, InputAssignment{0, 0, 1});
  CHECK(std::abs(r001.overlap - (-7.0 / 9.0)) < 1e-15);

  const OverlapResult r011 = overlap(p, InputAssignment{0, 1, 1});
  CHECK(std::abs(r011.overlap - (-7.0 / 9.0)) < 1e-15);
  CHECK(r011.residual_norm == doctest::Approx(std::sqrt(32.0) / 9.0).epsilon(1e-14));
}

TEST_CASE("input validation") {
  const Plan p = Plan::iterate(Plan::base());
  CHECK_THROWS_AS(overlap(p, InputAssignment{0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(apply(p, InputAssignment{0, 0, 1}, ComplexState::Ones(4), Direction::Forward),
                  std::invalid_argument);
}

TEST_CASE("depth-0 plan is the bare query") {
  CHECK(overlap(Plan::base(), InputAssignment{0}).overlap == std::complex<double>(1.0));
  CHECK(overlap(Plan::base(), InputAssignment{1}).overlap == std::complex<double>(-1.0));
}

TEST_CASE("NE^2 overlaps") {
  const Plan p = plans::ne2_four_query();
  CHECK(std::abs(overlap(p, InputAssignment(9, 1)).overlap - 1.0) < 1e-14);
  const Plan c1 = plans::construction1();
  for (const auto& bits : all_inputs(2)) {
    const double expected = eval_ne_d(2, bits) ? -1.0 : 1.0;
    REQUIRE(std::abs(overlap(c1, bits).overlap - expected) < 1e-10);
  }
}

TEST_CASE("dense matrix export") {
  const Eigen::MatrixXcd m = to_dense_matrix(Plan::base(), InputAssignment{1});
  REQUIRE(m.rows() == 1);
  CHECK(m(0, 0) == std::complex<double>(-1.0));

  // With no query sign flips V = I, so the whole unitary is the reflection T = 2|s><s| - I:
  // the start state is fixed while its complement is negated.
  const Plan it = Plan::iterate(Plan::base());
  const ComplexState s0 = start_state(it);
  const Eigen::MatrixXcd reflection = 2.0 * s0 * s0.adjoint() - Eigen::MatrixXcd::Identity(3, 3);
  const Eigen::MatrixXcd u000 = to_dense_matrix(it, InputAssignment{0, 0, 0});
  CHECK((u000 - reflection).norm() < 1e-15);
  CHECK((u000 * s0 - s0).norm() < 1e-15);

  const Eigen::MatrixXcd u = to_dense_matrix(it, InputAssignment{0, 0, 1});
  const ComplexState s = start_state(it);
  CHECK(std::abs(s.dot(u * s) - (-7.0 / 9.0)) < 1e-15);
  CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(3, 3)).norm() < 1e-14);

  CHECK_THROWS_AS(to_dense_matrix(plans::ne2_four_query(), InputAssignment(9, 0), 8), std::length_error);

  std::ostringstream csv;
  write_dense_csv(csv, Eigen::MatrixXcd::Identity(2, 2));
  CHECK(csv.str() == "1,0,0,0\n0,0,1,0\n");
}

TEST_CASE("dense oracle equals the matrix-free interpreter") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 40; ++trial) {
    const Plan p = oracle::random_plan(rng, 64, 5, 2);
    for (const auto& bits : some_inputs(p.depth(), rng, 0)) {
      if (p.depth() == 2 && (bits[0] + bits[4] + bits[8]) % 3 != 0) continue;  // thin out d = 2
      const oracle::DenseAlgorithm ref = oracle::dense_algorithm(p, bits);
      const Eigen::MatrixXcd u = to_dense_matrix(p, bits);
      REQUIRE((u - ref.unitary.cast<std::complex<double>>()).cwiseAbs().maxCoeff() < 1e-10);
      REQUIRE((start_state(p) - ref.start.cast<std::complex<double>>()).norm() < 1e-12);
    }
  }
}

TEST_CASE("unitarity and forward-inverse identity on random plans (dim <= 64, d <= 2)") {
  std::mt19937_64 rng(202);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 30; ++trial) {
    const Plan p = oracle::random_plan(rng, 64, 5, 2);
    const Simulator sim(p);
    const auto n = static_cast<Eigen::Index>(p.dimension());
    for (const auto& bits : all_inputs(p.depth())) {
      const Eigen::MatrixXcd u = sim.to_dense_matrix(bits);
      REQUIRE((u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-9);

      ComplexState x(n);
      for (auto& v : x) v = {gauss(rng), gauss(rng)};
      x.normalize();
      ComplexState y = sim.apply<std::complex<double>>(bits, x, Direction::Forward);
      REQUIRE(std::abs(y.norm() - 1.0) < 1e-10);
      y = sim.apply<std::complex<double>>(bits, y, Direction::Inverse);
      REQUIRE((y - x).norm() < 1e-9);
    }
  }
}

TEST_CASE("p-computation conformance on random plans") {
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 60; ++trial) {
    const Plan p = oracle::random_plan(rng, 400, 6, 4);
    const Simulator sim(p);
    const double predicted = to_double(plan_p(p));
    for (const auto& bits : some_inputs(p.depth(), rng, 40)) {
      const OverlapResult r = sim.overlap(bits);
      REQUIRE(std::abs(std::norm(r.overlap) + r.residual_norm * r.residual_norm - 1.0) < 1e-9);
      if (eval_ne_d(p.depth(), bits) == 0) {
        REQUIRE(std::abs(r.overlap - 1.0) < 1e-9);
        REQUIRE(r.residual_norm < 1e-9);
      } else {
        REQUIRE(std::abs(r.overlap - predicted) < 1e-9);
      }
    }
  }
}

TEST_CASE("negated component of an iterate step has norm sqrt2 (1 - p) / 3") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 25; ++trial) {
    const Plan child = oracle::random_plan(rng, 30, 4, 2);
    const Plan p = Plan::iterate(child);
    const Simulator sim(p);
    const double expected = std::sqrt(2.0) * (1.0 - to_double(plan_p(child))) / 3.0;
    int checked = 0;
    for (const auto& bits : some_inputs(p.depth(), rng, 30)) {
      if (eval_ne_d(p.depth(), bits) == 0) continue;
      REQUIRE(sim.negated_component_norm(bits) == doctest::Approx(expected).epsilon(1e-9));
      ++checked;
    }
    CHECK(checked > 0);
  }
  CHECK_THROWS_AS(Simulator(Plan::base()).negated_component_norm(InputAssignment{0}), std::invalid_argument);
}

TEST_CASE("amplify(P, a b) and amplify(amplify(P, a), b) have equal overlaps") {
  std::mt19937_64 rng(505);
  for (int trial = 0; trial < 20; ++trial) {
    const Plan child = oracle::random_plan(rng, 30, 3, 2);
    const int a = 2 + static_cast<int>(rng() % 2), b = 2 + static_cast<int>(rng() % 2);
    const Simulator once(Plan::amplify(a * b, child));
    const Simulator twice(Plan::amplify(b, Plan::amplify(a, child)));
    for (const auto& bits : some_inputs(child.depth(), rng, 10)) {
      REQUIRE(std::abs(once.overlap(bits).overlap - twice.overlap(bits).overlap) < 1e-9);
    }
  }
}

TEST_CASE("amplify(P, 2) gives 2p^2 - 1 on NE = 1 inputs") {
  const Plan child = plans::ne2_four_query();
  const Simulator sim(Plan::amplify(2, child));
  const double p = -295.0 / 729.0;
  for (const auto& bits : all_inputs(2)) {
    if (!eval_ne_d(2, bits)) continue;
    REQUIRE(std::abs(sim.overlap(bits).overlap - (2 * p * p - 1)) < 1e-12);
  }
}

TEST_CASE("real, complex and long double scalars agree") {
  const Simulator sim(plans::construction1());
  std::mt19937_64 rng(606);
  for (const auto& bits : some_inputs(2, rng, 0)) {
    const ComplexState c = sim.final_state(bits);
    const StateVector<double> r = sim.final_state<double>(bits);
    const StateVector<long double> l = sim.final_state<long double>(bits);
    REQUIRE((c.real() - r).norm() < 1e-14);
    REQUIRE(c.imag().norm() == 0.0);
    REQUIRE((r.cast<long double>() - l).norm() < 1e-13L);
  }
}

TEST_CASE("irrational lift target followed by amplification reaches -1") {
  const Plan p = parse_plan("amplify(4, lift(cos(pi/4), iterate(iterate(base))))");
  const Simulator sim(p);
  CHECK_FALSE(sim.exact_p().has_value());
  for (const auto& bits : all_inputs(2)) {
    const double expected = eval_ne_d(2, bits) ? -1.0 : 1.0;
    REQUIRE(std::abs(sim.overlap(bits).overlap - expected) < 1e-9);
  }
}

TEST_CASE("exact_decide") {
  const Plan p = Plan::lift(Rational(0), plans::ne2_four_query());
  CHECK(exact_decide(p, InputAssignment(9, 0)).outcome == 0);
  CHECK(exact_decide(p, InputAssignment{1, 0, 0, 0, 0, 0, 0, 0, 0}).outcome == 1);
  CHECK(exact_decide(p, InputAssignment(9, 1)).outcome == 0);
  CHECK(exact_decide(p, InputAssignment(9, 1)).success_probability == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(exact_decide(plans::ne2_four_query(), InputAssignment(9, 0)), std::invalid_argument);
  // p = 1/2 would be rejected before measurement; a 0-plan never lands in between.
  CHECK_THROWS_AS(exact_decide(Plan::lift(Rational(1, 2), Plan::base()), InputAssignment{1}),
                  std::invalid_argument);
}
