#include "exactne/simulator.hpp"

#include "exactne/pcalc.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace exactne {

namespace {

// sqrt of the lift mixing weight; exact rationals are used when available so
// the start state does not inherit rounding from the double p-fold.
double lift_cos(const Plan& lift) {
  const Plan& child = lift.child();
  if (lift.target().is_exact()) {
    try {
      return std::sqrt(to_double(lift_p(plan_p(child), lift.target().exact()).cos2));
    } catch (const std::domain_error&) {
      // child carries an irrational target further down
    }
  }
  return std::sqrt(lift_cos2(child.approx_p(), lift.target().value()));
}

}  // namespace

Simulator::Simulator(Plan plan) : plan_(std::move(plan)) {
  try {
    exact_p_ = plan_p(plan_);
  } catch (const std::domain_error&) {
    // irrational lift target
  }
  std::vector<const Plan*> chain;
  for (const Plan* p = &plan_;; p = &p->child()) {
    chain.push_back(p);
    if (p->kind() == NodeKind::Base) break;
  }
  levels_.reserve(chain.size());
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    const Plan& node = **it;
    Level level;
    level.kind = node.kind();
    level.dimension = node.dimension();
    switch (node.kind()) {
      case NodeKind::Base:
        level.start = Eigen::VectorXd::Ones(1);
        break;
      case NodeKind::Iterate: {
        const Eigen::VectorXd& child = levels_.back().start;
        const auto n = child.size();
        level.child_start = child;
        level.start.resize(3 * n);
        for (int l = 0; l < 3; ++l) level.start.segment(l * n, n) = child / std::sqrt(3.0);
        break;
      }
      case NodeKind::Amplify:
        level.factor = node.factor();
        level.child_start = levels_.back().start;
        level.start = level.child_start;
        break;
      case NodeKind::Lift: {
        const Eigen::VectorXd& child = levels_.back().start;
        const double c = lift_cos(node);
        level.child_start = child;
        level.start.resize(child.size() + 1);
        level.start.head(child.size()) = c * child;
        level.start(child.size()) = std::sqrt(std::max(0.0, 1.0 - c * c));
        break;
      }
    }
    levels_.push_back(std::move(level));
  }
}

void Simulator::check_input(Bits bits, std::size_t state_size) const {
  if (state_size != dimension()) {
    throw std::invalid_argument("state has dimension " + std::to_string(state_size) +
                                ", plan needs " + std::to_string(dimension()));
  }
  if (bits.size() != pow3(depth())) {
    throw std::invalid_argument("plan of depth " + std::to_string(depth()) + " needs " +
                                std::to_string(pow3(depth())) + " input bits, got " +
                                std::to_string(bits.size()));
  }
}

Eigen::MatrixXcd Simulator::to_dense_matrix(Bits bits, std::size_t max_dimension) const {
  const std::size_t n = dimension();
  if (n > max_dimension) {
    throw std::length_error("dense export of dimension " + std::to_string(n) +
                            " exceeds the limit " + std::to_string(max_dimension));
  }
  Eigen::MatrixXcd m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    ComplexState e = ComplexState::Unit(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(j));
    apply_in_place<std::complex<double>>(bits, e, Direction::Forward);
    m.col(static_cast<Eigen::Index>(j)) = e;
  }
  return m;
}

double Simulator::negated_component_norm(Bits bits) const {
  if (plan_.kind() != NodeKind::Iterate) {
    throw std::invalid_argument("negated_component_norm needs an iterate plan");
  }
  ComplexState x = start_state().cast<std::complex<double>>();
  check_input(bits, static_cast<std::size_t>(x.size()));
  const std::size_t top = levels_.size() - 1;
  const Eigen::VectorXd& s = levels_[top].child_start;
  const auto n = s.size();
  const std::size_t third = bits.size() / 3;
  Eigen::Vector3cd coeff;
  for (int l = 0; l < 3; ++l) {
    apply_level(top - 1, bits.subspan(l * third, third), x.data() + l * n, Direction::Forward);
    coeff(l) = s.cast<std::complex<double>>().dot(x.segment(l * n, n));
  }
  return (coeff.array() - coeff.mean()).matrix().norm();
}

ComplexState start_state(const Plan& plan) {
  return Simulator(plan).start_state().cast<std::complex<double>>();
}

ComplexState apply(const Plan& plan, Bits bits, const ComplexState& state, Direction dir) {
  return Simulator(plan).apply<std::complex<double>>(bits, state, dir);
}

OverlapResult overlap(const Plan& plan, Bits bits) { return Simulator(plan).overlap(bits); }

Eigen::MatrixXcd to_dense_matrix(const Plan& plan, Bits bits, std::size_t max_dimension) {
  return Simulator(plan).to_dense_matrix(bits, max_dimension);
}

Decision exact_decide(const Simulator& sim, Bits bits, double tolerance) {
  if (!sim.exact_p() || *sim.exact_p() != 0) {
    throw std::invalid_argument("exact_decide needs a plan with exact p = 0, got p = " +
                                (sim.exact_p() ? to_string(*sim.exact_p()) : std::string("irrational")));
  }
  const OverlapResult r = sim.overlap(bits);
  const double stay = std::norm(r.overlap);
  const double leave = r.residual_norm * r.residual_norm;
  Decision d = stay >= leave ? Decision{0, stay} : Decision{1, leave};
  if (std::abs(d.success_probability - 1.0) > tolerance) {
    throw std::runtime_error("measurement is not deterministic: outcome " +
                             std::to_string(d.outcome) + " has probability " +
                             std::to_string(d.success_probability));
  }
  return d;
}

Decision exact_decide(const Plan& plan, Bits bits, double tolerance) {
  return exact_decide(Simulator(plan), bits, tolerance);
}

void write_dense_csv(std::ostream& out, const Eigen::MatrixXcd& matrix) {
  const auto old_precision = out.precision(17);
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      if (j > 0) out << ',';
      out << matrix(i, j).real() << ',' << matrix(i, j).imag();
    }
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace exactne
