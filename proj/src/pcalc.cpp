#include "exactne/pcalc.hpp"

#include <cmath>
#include <stdexcept>

namespace exactne {

namespace {

void require_unit_interval(const Rational& p, const char* op) {
  if (p < -1 || p > 1) {
    throw std::invalid_argument(std::string(op) + ": p = " + to_string(p) + " outside [-1, 1]");
  }
}

void require_factor(int factor) {
  if (factor < 2) {
    throw std::invalid_argument("amplification factor must be >= 2, got " + std::to_string(factor));
  }
}

}  // namespace

Rational iterate_p(const Rational& p) {
  require_unit_interval(p, "iterate_p");
  const BigInt a = numerator(p);
  const BigInt b = denominator(p);
  const BigInt gap = b - a;
  const BigInt den = 9 * b * b;
  return Rational(den - 4 * gap * gap, den);
}

double iterate_p(double p) {
  const double gap = 1.0 - p;
  return 1.0 - 4.0 * gap * gap / 9.0;
}

Rational amplify_p(const Rational& p, int factor) {
  require_factor(factor);
  require_unit_interval(p, "amplify_p");
  // Homogenised recurrence: T_n(a/b) = P_n / b^n with P_n = 2a P_{n-1} - b^2 P_{n-2}.
  const BigInt a = numerator(p);
  const BigInt b = denominator(p);
  const BigInt b2 = b * b;
  BigInt prev = 1;
  BigInt cur = a;
  BigInt den = b;
  for (int n = 2; n <= factor; ++n) {
    BigInt next = 2 * a * cur - b2 * prev;
    prev = std::move(cur);
    cur = std::move(next);
    den *= b;
  }
  return Rational(cur, den);
}

double amplify_p(double p, int factor) {
  require_factor(factor);
  double prev = 1.0;
  double cur = p;
  for (int n = 2; n <= factor; ++n) {
    const double next = 2.0 * p * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

LiftMix lift_p(const Rational& p, const Rational& target) {
  if (p == 1) throw std::invalid_argument("lift_p: p = 1 leaves the mixing angle undefined");
  if (!(p < target) || target > 1) {
    throw std::invalid_argument("lift_p: target " + to_string(target) + " outside (" +
                                to_string(p) + ", 1]");
  }
  return LiftMix{target, (1 - target) / (1 - p)};
}

double lift_cos2(double p, double target) { return (1.0 - target) / (1.0 - p); }

Rational plan_p(const Plan& plan) {
  switch (plan.kind()) {
    case NodeKind::Base:
      return Rational(-1);
    case NodeKind::Iterate:
      return iterate_p(plan_p(plan.child()));
    case NodeKind::Amplify:
      return amplify_p(plan_p(plan.child()), plan.factor());
    case NodeKind::Lift:
      return lift_p(plan_p(plan.child()), plan.target().exact()).p;
  }
  throw std::logic_error("unknown plan node");
}

QueryExponent exponent_for(const BigInt& queries, int depth) {
  if (depth < 1) throw std::invalid_argument("exponent needs depth >= 1");
  if (queries < 1) throw std::invalid_argument("exponent needs at least one query");
  // k can exceed the double range only for absurd plans; log via the bit length keeps it finite.
  const std::size_t bits = boost::multiprecision::msb(queries) + 1;
  double log2k = 0.0;
  if (bits <= 1000) {
    log2k = std::log2(queries.convert_to<double>());
  } else {
    const BigInt top = queries >> (bits - 64);
    log2k = std::log2(top.convert_to<double>()) + static_cast<double>(bits - 64);
  }
  const double per_level = std::exp2(log2k / depth);
  return QueryExponent{per_level, log2k / std::log2(3.0) / depth};
}

QueryExponent exponent(const Plan& plan) {
  if (plan.depth() < 1) throw std::invalid_argument("exponent needs depth >= 1");
  if (plan_p(plan) != -1) {
    throw std::invalid_argument("plan " + render_plan(plan) + " does not (-1)-compute its function");
  }
  return exponent_for(plan.queries(), plan.depth());
}

}  // namespace exactne
