#pragma once

#include "exactne/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace exactne {

/// One oracle bit per entry, each 0 or 1.
using InputAssignment = std::vector<std::uint8_t>;
using Bits = std::span<const std::uint8_t>;

/// NE(x1, x2, x3): 0 iff all three bits are equal.
int eval_ne(Bits bits);

/// Iterated NE over 3^depth bits, split into consecutive thirds at every level.
int eval_ne_d(int depth, Bits bits);

/// 3^exponent as a size_t. Throws std::overflow_error past 3^39.
std::size_t pow3(int exponent);

/// Target value of a lift node: an exact rational, or cos(pi/m) for an integer m >= 2.
/// Only the planner produces the second form; exact arithmetic rejects it.
class LiftTarget {
 public:
  static LiftTarget rational(Rational value);
  static LiftTarget cos_pi_over(int divisor);

  bool is_exact() const { return exact_.has_value(); }
  const Rational& exact() const;
  int cos_pi_divisor() const { return divisor_; }
  double value() const;
  std::string render() const;

  friend bool operator==(const LiftTarget&, const LiftTarget&) = default;

 private:
  std::optional<Rational> exact_;
  int divisor_ = 0;
};

enum class NodeKind { Base, Iterate, Amplify, Lift };

/// Immutable expression tree describing how an algorithm is assembled from
/// the base query, iteration, amplification and lifting. Copies share nodes.
class Plan {
 public:
  static Plan base();
  static Plan iterate(Plan child);
  /// Throws std::invalid_argument when factor < 2.
  static Plan amplify(int factor, Plan child);
  /// Throws std::invalid_argument unless p(child) < target <= 1.
  static Plan lift(LiftTarget target, Plan child);
  static Plan lift(const Rational& target, Plan child) {
    return lift(LiftTarget::rational(target), std::move(child));
  }

  NodeKind kind() const;
  /// Throws std::logic_error on a base node.
  const Plan& child() const;
  /// Amplification factor c; throws std::logic_error on other kinds.
  int factor() const;
  /// Throws std::logic_error unless kind() == Lift.
  const LiftTarget& target() const;

  int depth() const;
  std::size_t dimension() const;
  const BigInt& queries() const;
  /// p-value folded in double precision (also defined for irrational lift targets).
  double approx_p() const;

  /// Structural equality.
  friend bool operator==(const Plan& a, const Plan& b);

 private:
  struct Node;
  explicit Plan(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct PlanStats {
  int depth = 0;
  BigInt queries;
  std::size_t dimension = 0;
  Rational p;
};

/// Depth, query count, space dimension and exact p. Throws std::domain_error
/// if the plan has an irrational lift target.
PlanStats plan_stats(const Plan& plan);

/// Parse failure with the byte offset where it was detected.
class PlanParseError : public std::runtime_error {
 public:
  PlanParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Grammar (whitespace-insensitive):
///   plan   := "base" | "iterate(" plan ")" | "amplify(" INT "," plan ")"
///           | "lift(" target "," plan ")"
///   target := INT | INT "/" INT | "cos(pi/" INT ")"
Plan parse_plan(std::string_view text);
std::string render_plan(const Plan& plan);

namespace plans {

/// The 4-query plan p-computing NE^2 with p = -295/729.
Plan ne2_four_query();
/// base -> iterate -> iterate -> lift to 0 -> amplify(2): 8 queries, p = -1 on NE^2.
Plan construction1();
/// The 2048-query depth-8 plan with p = -1.
Plan construction2();
/// construction2 without the final lift and amplification (1024 queries, p ~ -0.14353).
Plan construction2_prefix();

}  // namespace plans

}  // namespace exactne
