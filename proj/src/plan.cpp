#include "exactne/plan.hpp"

#include "exactne/pcalc.hpp"

#include <cctype>
#include <cmath>
#include <numbers>

namespace exactne {

int eval_ne(Bits bits) {
  if (bits.size() != 3) {
    throw std::invalid_argument("NE takes exactly 3 bits, got " + std::to_string(bits.size()));
  }
  return (bits[0] == bits[1] && bits[1] == bits[2]) ? 0 : 1;
}

std::size_t pow3(int exponent) {
  if (exponent < 0) throw std::invalid_argument("negative exponent");
  if (exponent > 39) throw std::overflow_error("3^" + std::to_string(exponent) + " overflows");
  std::size_t value = 1;
  for (int i = 0; i < exponent; ++i) value *= 3;
  return value;
}

namespace {

int eval_ne_rec(int depth, Bits bits) {
  if (depth == 0) return bits[0] != 0 ? 1 : 0;
  const std::size_t third = bits.size() / 3;
  const std::uint8_t children[3] = {
      static_cast<std::uint8_t>(eval_ne_rec(depth - 1, bits.subspan(0, third))),
      static_cast<std::uint8_t>(eval_ne_rec(depth - 1, bits.subspan(third, third))),
      static_cast<std::uint8_t>(eval_ne_rec(depth - 1, bits.subspan(2 * third, third)))};
  return eval_ne(children);
}

}  // namespace

int eval_ne_d(int depth, Bits bits) {
  if (depth < 0) throw std::invalid_argument("negative depth");
  if (bits.size() != pow3(depth)) {
    throw std::invalid_argument("NE^" + std::to_string(depth) + " needs " +
                                std::to_string(pow3(depth)) + " bits, got " +
                                std::to_string(bits.size()));
  }
  return eval_ne_rec(depth, bits);
}

// ---------------------------------------------------------------------------

LiftTarget LiftTarget::rational(Rational value) {
  LiftTarget t;
  t.exact_ = std::move(value);
  return t;
}

LiftTarget LiftTarget::cos_pi_over(int divisor) {
  if (divisor < 2) throw std::invalid_argument("cos(pi/m) lift target needs m >= 2");
  LiftTarget t;
  t.divisor_ = divisor;
  return t;
}

const Rational& LiftTarget::exact() const {
  if (!exact_) throw std::domain_error("lift target " + render() + " is irrational");
  return *exact_;
}

double LiftTarget::value() const {
  if (exact_) return to_double(*exact_);
  return std::cos(std::numbers::pi / divisor_);
}

std::string LiftTarget::render() const {
  if (exact_) return to_string(*exact_);
  return "cos(pi/" + std::to_string(divisor_) + ")";
}

// ---------------------------------------------------------------------------

struct Plan::Node {
  NodeKind kind = NodeKind::Base;
  std::optional<Plan> child;
  int factor = 0;
  LiftTarget target;
  int depth = 0;
  std::size_t dimension = 1;
  BigInt queries = 1;
  double approx_p = -1.0;
};

Plan Plan::base() {
  static const Plan shared{std::make_shared<const Node>()};
  return shared;
}

Plan Plan::iterate(Plan child) {
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::Iterate;
  node->depth = child.depth() + 1;
  node->dimension = 3 * child.dimension();
  node->queries = 2 * child.queries();
  node->approx_p = iterate_p(child.approx_p());
  node->child = std::move(child);
  return Plan(std::move(node));
}

Plan Plan::amplify(int factor, Plan child) {
  if (factor < 2) {
    throw std::invalid_argument("amplification factor must be >= 2, got " + std::to_string(factor));
  }
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::Amplify;
  node->factor = factor;
  node->depth = child.depth();
  node->dimension = child.dimension();
  node->queries = factor * child.queries();
  node->approx_p = amplify_p(child.approx_p(), factor);
  node->child = std::move(child);
  return Plan(std::move(node));
}

namespace {

bool has_irrational_lift(const Plan& plan) {
  for (const Plan* p = &plan; p->kind() != NodeKind::Base; p = &p->child()) {
    if (p->kind() == NodeKind::Lift && !p->target().is_exact()) return true;
  }
  return false;
}

}  // namespace

Plan Plan::lift(LiftTarget target, Plan child) {
  if (target.is_exact() && !has_irrational_lift(child)) {
    const Rational child_p = plan_p(child);
    if (!(child_p < target.exact()) || target.exact() > 1) {
      throw std::invalid_argument("lift target " + target.render() + " outside (" +
                                  to_string(child_p) + ", 1]");
    }
  } else {
    const double t = target.value();
    if (!(child.approx_p() < t) || t > 1.0) {
      throw std::invalid_argument("lift target " + target.render() + " outside (" +
                                  std::to_string(child.approx_p()) + ", 1]");
    }
  }
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::Lift;
  node->depth = child.depth();
  node->dimension = child.dimension() + 1;
  node->queries = child.queries();
  node->approx_p = target.value();
  node->target = std::move(target);
  node->child = std::move(child);
  return Plan(std::move(node));
}

NodeKind Plan::kind() const { return node_->kind; }

const Plan& Plan::child() const {
  if (!node_->child) throw std::logic_error("base plan has no child");
  return *node_->child;
}

int Plan::factor() const {
  if (node_->kind != NodeKind::Amplify) throw std::logic_error("not an amplify node");
  return node_->factor;
}

const LiftTarget& Plan::target() const {
  if (node_->kind != NodeKind::Lift) throw std::logic_error("not a lift node");
  return node_->target;
}

int Plan::depth() const { return node_->depth; }
std::size_t Plan::dimension() const { return node_->dimension; }
const BigInt& Plan::queries() const { return node_->queries; }
double Plan::approx_p() const { return node_->approx_p; }

bool operator==(const Plan& a, const Plan& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case NodeKind::Base:
      return true;
    case NodeKind::Iterate:
      break;
    case NodeKind::Amplify:
      if (a.factor() != b.factor()) return false;
      break;
    case NodeKind::Lift:
      if (!(a.target() == b.target())) return false;
      break;
  }
  return a.child() == b.child();
}

PlanStats plan_stats(const Plan& plan) {
  return PlanStats{plan.depth(), plan.queries(), plan.dimension(), plan_p(plan)};
}

// ---------------------------------------------------------------------------

PlanParseError::PlanParseError(const std::string& what, std::size_t position)
    : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}

namespace {

class PlanParser {
 public:
  explicit PlanParser(std::string_view text) : text_(text) {}

  Plan parse() {
    Plan plan = parse_plan();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return plan;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw PlanParseError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }

  // Digits with an optional sign; whitespace between sign and digits is not allowed.
  std::string integer_token(bool allow_sign) {
    skip_space();
    const std::size_t start = pos_;
    if (allow_sign && pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) {
      pos_ = start;
      fail("expected integer");
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  int small_int() {
    const std::size_t start = pos_;
    const std::string token = integer_token(false);
    if (token.size() > 9) {
      pos_ = start;
      fail("integer too large");
    }
    return std::stoi(token);
  }

  LiftTarget parse_target() {
    if (accept("cos(")) {
      expect("pi");
      expect("/");
      const std::size_t at = pos_;
      const int divisor = small_int();
      expect(")");
      if (divisor < 2) {
        pos_ = at;
        fail("cos(pi/m) needs m >= 2");
      }
      return LiftTarget::cos_pi_over(divisor);
    }
    std::string text = integer_token(true);
    if (accept("/")) {
      const std::size_t at = pos_;
      const std::string den = integer_token(false);
      if (den.find_first_not_of('0') == std::string::npos) {
        pos_ = at;
        fail("zero denominator");
      }
      text += "/" + den;
    }
    return LiftTarget::rational(parse_rational(text));
  }

  Plan parse_plan() {
    skip_space();
    const std::size_t start = pos_;
    if (accept("base")) return Plan::base();
    if (accept("iterate")) {
      expect("(");
      Plan child = parse_plan();
      expect(")");
      return Plan::iterate(std::move(child));
    }
    if (accept("amplify")) {
      expect("(");
      skip_space();
      const std::size_t at = pos_;
      const int factor = small_int();
      if (factor < 2) {
        pos_ = at;
        fail("amplification factor must be >= 2");
      }
      expect(",");
      Plan child = parse_plan();
      expect(")");
      return Plan::amplify(factor, std::move(child));
    }
    if (accept("lift")) {
      expect("(");
      skip_space();
      const std::size_t at = pos_;
      LiftTarget target = parse_target();
      expect(",");
      Plan child = parse_plan();
      expect(")");
      try {
        return Plan::lift(std::move(target), std::move(child));
      } catch (const std::invalid_argument& e) {
        pos_ = at;
        fail(e.what());
      }
    }
    pos_ = start;
    fail("expected 'base', 'iterate', 'amplify' or 'lift'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void render_into(const Plan& plan, std::string& out) {
  switch (plan.kind()) {
    case NodeKind::Base:
      out += "base";
      return;
    case NodeKind::Iterate:
      out += "iterate(";
      break;
    case NodeKind::Amplify:
      out += "amplify(" + std::to_string(plan.factor()) + ", ";
      break;
    case NodeKind::Lift:
      out += "lift(" + plan.target().render() + ", ";
      break;
  }
  render_into(plan.child(), out);
  out += ')';
}

}  // namespace

Plan parse_plan(std::string_view text) { return PlanParser(text).parse(); }

std::string render_plan(const Plan& plan) {
  std::string out;
  render_into(plan, out);
  return out;
}

namespace plans {

Plan ne2_four_query() { return Plan::iterate(Plan::iterate(Plan::base())); }

Plan construction1() { return Plan::amplify(2, Plan::lift(Rational(0), ne2_four_query())); }

Plan construction2_prefix() {
  Plan p = Plan::amplify(2, Plan::iterate(ne2_four_query()));
  for (int i = 0; i < 3; ++i) p = Plan::iterate(p);
  p = Plan::amplify(2, p);
  for (int i = 0; i < 2; ++i) p = Plan::iterate(p);
  return p;
}

Plan construction2() { return Plan::amplify(2, Plan::lift(Rational(0), construction2_prefix())); }

}  // namespace plans

}  // namespace exactne
