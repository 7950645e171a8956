#include "exactne/planner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <map>
#include <numbers>
#include <ostream>
#include <queue>
#include <set>
#include <stdexcept>

namespace exactne {

void SearchConfig::validate() const {
  if (max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
  if (max_depth > 39) throw std::invalid_argument("max_depth must be <= 39");
  if (max_factor < 2) throw std::invalid_argument("max_factor must be >= 2");
  if (!(p_ceiling > 0.0 && p_ceiling < 1.0)) throw std::invalid_argument("p_ceiling must lie in (0, 1)");
  if (!(dedup_resolution > 0.0)) throw std::invalid_argument("dedup_resolution must be positive");
}

namespace {

// Move codes, ordered for tie-breaking: 0 = iterate, c >= 2 = amplify(c).
using MoveSeq = std::vector<int>;

constexpr double kEps = 1e-12;

struct State {
  int t = 0;
  double p = -1.0;
  BigInt k = 1;
  MoveSeq moves;
};

struct StateOrder {
  // std::priority_queue pops the largest; invert so the smallest (k, t, moves) pops first.
  bool operator()(const State& a, const State& b) const {
    if (a.k != b.k) return a.k > b.k;
    if (a.t != b.t) return a.t > b.t;
    return a.moves > b.moves;
  }
};

struct Ending {
  enum Kind { None, LiftZero, LiftCos } kind = None;
  int factor = 0;  // amplification after the lift
};

struct Candidate {
  double log_exponent = 0.0;  // log2(k) / t
  int t = 0;
  MoveSeq moves;
  Ending ending;
  BigInt k;
};

// Strict "better than" under the documented tie-break.
bool better(const Candidate& a, const Candidate& b) {
  if (std::abs(a.log_exponent - b.log_exponent) > 1e-12 * std::max(1.0, b.log_exponent)) {
    return a.log_exponent < b.log_exponent;
  }
  if (a.t != b.t) return a.t < b.t;
  if (a.moves != b.moves) return a.moves < b.moves;
  return a.ending.kind < b.ending.kind ||
         (a.ending.kind == b.ending.kind && a.ending.factor < b.ending.factor);
}

double log2_big(const BigInt& k) { return std::log2(k.convert_to<double>()); }

Plan build_plan(const Candidate& c) {
  Plan plan = Plan::base();
  for (int move : c.moves) plan = move == 0 ? Plan::iterate(plan) : Plan::amplify(move, plan);
  switch (c.ending.kind) {
    case Ending::None:
      break;
    case Ending::LiftZero:
      plan = Plan::amplify(2, Plan::lift(Rational(0), plan));
      break;
    case Ending::LiftCos: {
      // cos(pi/3) = 1/2 is the only rational value beyond c = 2.
      LiftTarget target = c.ending.factor == 3 ? LiftTarget::rational(Rational(1, 2))
                                               : LiftTarget::cos_pi_over(c.ending.factor);
      plan = Plan::amplify(c.ending.factor, Plan::lift(std::move(target), plan));
      break;
    }
  }
  return plan;
}

}  // namespace

SearchResult search(const SearchConfig& config) {
  config.validate();

  std::priority_queue<State, std::vector<State>, StateOrder> frontier;
  std::set<std::pair<int, long long>> visited;
  frontier.push(State{});

  std::optional<Candidate> best;
  SearchResult result;

  auto offer = [&](Candidate cand) {
    if (best && !better(cand, *best)) return;
    try {
      const Plan plan = build_plan(cand);
      if (cand.ending.kind != Ending::LiftCos || cand.ending.factor == 3) {
        // Rational plan: the double-precision frontier must agree with the exact fold.
        if (plan_p(plan) != -1) return;
      }
    } catch (const std::invalid_argument&) {
      return;  // rounding put a lift target on the wrong side of p
    }
    best = std::move(cand);
  };

  while (!frontier.empty()) {
    State s = frontier.top();
    frontier.pop();

    if (best && log2_big(s.k) / config.max_depth >= best->log_exponent - kEps) break;

    const long long bucket = std::llround(s.p / config.dedup_resolution);
    if (!visited.insert({s.t, bucket}).second) continue;
    if (++result.expanded > config.node_limit) {
      result.truncated = true;
      break;
    }

    if (s.t >= 1) {
      const double lk = log2_big(s.k);
      if (std::abs(s.p + 1.0) < kEps) {
        offer(Candidate{lk / s.t, s.t, s.moves, Ending{}, s.k});
      }
      if (s.p < -kEps) {
        offer(Candidate{(lk + 1.0) / s.t, s.t, s.moves, Ending{Ending::LiftZero, 2}, 2 * s.k});
      }
      if (config.cos_lift) {
        for (int c = 3; c <= config.max_factor; ++c) {
          if (s.p < std::cos(std::numbers::pi / c) - kEps) {
            offer(Candidate{(lk + std::log2(c)) / s.t, s.t, s.moves, Ending{Ending::LiftCos, c}, c * s.k});
          }
        }
      }
    }

    if (s.t < config.max_depth) {
      const double p = iterate_p(s.p);
      if (p <= config.p_ceiling) {
        State next{s.t + 1, p, 2 * s.k, s.moves};
        next.moves.push_back(0);
        frontier.push(std::move(next));
      }
    }
    for (int c = 2; c <= config.max_factor; ++c) {
      const double p = amplify_p(s.p, c);
      if (p > config.p_ceiling) continue;
      State next{s.t, p, c * s.k, s.moves};
      next.moves.push_back(c);
      frontier.push(std::move(next));
    }
  }

  if (!best) return result;
  result.plan = build_plan(*best);
  result.depth = best->t;
  result.queries = best->k;
  result.exponent = exponent_for(best->k, best->t);
  try {
    result.exact_p = plan_p(*result.plan);
  } catch (const std::domain_error&) {
    // irrational lift target
  }
  return result;
}

// ---------------------------------------------------------------------------

namespace {

std::string move_name(const Plan& node) {
  switch (node.kind()) {
    case NodeKind::Base:
      return "base";
    case NodeKind::Iterate:
      return "iterate";
    case NodeKind::Amplify:
      return "amplify(" + std::to_string(node.factor()) + ")";
    case NodeKind::Lift:
      return "lift(" + node.target().render() + ")";
  }
  return "?";
}

std::string sig7(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.7g", v);
  return buf;
}

}  // namespace

std::vector<TraceRow> trace(const Plan& plan) {
  std::vector<const Plan*> chain;
  for (const Plan* p = &plan;; p = &p->child()) {
    chain.push_back(p);
    if (p->kind() == NodeKind::Base) break;
  }
  std::reverse(chain.begin(), chain.end());

  std::vector<TraceRow> rows;
  std::optional<Rational> exact = Rational(-1);
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const Plan& node = *chain[i];
    switch (node.kind()) {
      case NodeKind::Base:
        break;
      case NodeKind::Iterate:
        if (exact) exact = iterate_p(*exact);
        break;
      case NodeKind::Amplify:
        if (exact) exact = amplify_p(*exact, node.factor());
        break;
      case NodeKind::Lift:
        if (exact && node.target().is_exact()) {
          exact = lift_p(*exact, node.target().exact()).p;
        } else {
          exact.reset();
        }
        break;
    }
    TraceRow row;
    row.step = static_cast<int>(i);
    row.move = move_name(node);
    row.t = node.depth();
    row.k = node.queries();
    row.p_exact = exact ? to_string(*exact) : "irrational";
    row.p_decimal = sig7(exact ? to_double(*exact) : node.approx_p());
    row.dim = node.dimension();
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows) {
  out << "step,move,t,k,p_exact,p_decimal,dim\n";
  for (const auto& r : rows) {
    out << r.step << ',' << r.move << ',' << r.t << ',' << r.k << ',' << r.p_exact << ','
        << r.p_decimal << ',' << r.dim << '\n';
  }
}

void write_trace_text(std::ostream& out, const std::vector<TraceRow>& rows, std::size_t max_exact_width) {
  auto clip = [&](const std::string& s) {
    if (s.size() <= max_exact_width) return s;
    return s.substr(0, max_exact_width - 3) + "...";
  };
  out << std::left << std::setw(5) << "step" << std::setw(16) << "move" << std::setw(4) << "t"
      << std::setw(8) << "k" << std::setw(14) << "p" << std::setw(8) << "dim" << "p_exact\n";
  for (const auto& r : rows) {
    out << std::left << std::setw(5) << r.step << std::setw(16) << r.move << std::setw(4) << r.t
        << std::setw(8) << r.k.str() << std::setw(14) << r.p_decimal << std::setw(8) << r.dim
        << clip(r.p_exact) << '\n';
  }
}

}  // namespace exactne
