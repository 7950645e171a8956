#pragma once

// Search over compositions of iterate / amplify / lift for plans that
// (-1)-compute NE^t with the smallest query exponent k^(1/t).

#include "exactne/pcalc.hpp"
#include "exactne/plan.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace exactne {

struct SearchConfig {
  int max_depth = 8;             ///< t_max >= 1
  int max_factor = 4;            ///< c_max >= 2
  double p_ceiling = 0.99999;    ///< nodes with p above this are pruned; in (0, 1)
  double dedup_resolution = 1e-9;  ///< grid for merging (t, p) states
  bool cos_lift = false;         ///< also finish with lift to cos(pi/c) + amplify(c)
  std::size_t node_limit = 10'000'000;  ///< hard cap on expanded states

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

struct SearchResult {
  std::optional<Plan> plan;  ///< empty when no terminal plan exists within the bounds
  int depth = 0;
  BigInt queries;
  QueryExponent exponent{};
  /// Exact p of the winner (-1), empty for plans with an irrational lift target.
  std::optional<Rational> exact_p;
  std::size_t expanded = 0;
  bool truncated = false;  ///< node_limit was hit before the search closed
};

/// Deterministic best-first search from (t = 0, p = -1, k = 1). States are
/// expanded in order of (k, t, move sequence); a (t, p) state is kept only at
/// its first (cheapest) visit. Ties in exponent go to smaller t, then the
/// lexicographically smaller move sequence (iterate < amplify(2) < amplify(3) ...).
SearchResult search(const SearchConfig& config);

struct TraceRow {
  int step = 0;
  std::string move;
  int t = 0;
  BigInt k;
  std::string p_exact;    ///< rational text, or "irrational"
  std::string p_decimal;  ///< 7 significant digits
  std::size_t dim = 0;
};

/// One row per plan node, base first.
std::vector<TraceRow> trace(const Plan& plan);

/// Header: step,move,t,k,p_exact,p_decimal,dim
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows);
/// Aligned table; p_exact is elided past `max_exact_width` characters.
void write_trace_text(std::ostream& out, const std::vector<TraceRow>& rows,
                      std::size_t max_exact_width = 40);

}  // namespace exactne
