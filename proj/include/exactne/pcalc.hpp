#pragma once

// Exact value recurrences for p-computations. A plan p-computes NE^d when its
// start-state overlap is 1 on NE^d = 0 inputs and p on NE^d = 1 inputs.

#include "exactne/plan.hpp"
#include "exactne/rational.hpp"

namespace exactne {

/// 1 - 4(1 - p)^2 / 9. Requires p in [-1, 1].
Rational iterate_p(const Rational& p);
double iterate_p(double p);

/// Chebyshev T_c(p) = cos(c * arccos p), via T_{n} = 2p T_{n-1} - T_{n-2}.
/// Requires p in [-1, 1] and c >= 2.
Rational amplify_p(const Rational& p, int factor);
double amplify_p(double p, int factor);

struct LiftMix {
  Rational p;     ///< the new p (equal to the target)
  Rational cos2;  ///< cos^2 of the mixing angle, (1 - target) / (1 - p)
};

/// Requires p < target <= 1 (so p != 1).
LiftMix lift_p(const Rational& p, const Rational& target);
double lift_cos2(double p, double target);

/// Folds the recurrences bottom-up from p(base) = -1.
/// Throws std::domain_error when a lift target is irrational.
Rational plan_p(const Plan& plan);

struct QueryExponent {
  double per_level;     ///< k^(1/d): the plan yields O(per_level^d) queries for NE^d
  double over_classical;  ///< log_3(k) / d: the power of N = 3^d
};

/// Exponent of k queries spent at depth d. Requires d >= 1, k >= 1.
QueryExponent exponent_for(const BigInt& queries, int depth);

/// Requires depth >= 1 and plan_p(plan) == -1; throws std::invalid_argument otherwise.
QueryExponent exponent(const Plan& plan);

}  // namespace exactne
