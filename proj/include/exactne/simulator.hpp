#pragma once

// Matrix-free interpreter that realizes a Plan as the unitary built by the
// iterate / amplify / lift constructions, acting on a state vector of size
// plan.dimension().
//
// Space layout, recursively:
//   base          one coordinate, the query (-1)^{x_1}
//   iterate(P)    three consecutive copies of P's space, copy l reads the l-th third of the input
//   amplify(c, P) P's space
//   lift(t, P)    P's space followed by one ancilla coordinate (untouched by queries)
//
// Every unitary here is real orthogonal, so the interpreter works for any
// Eigen scalar (double, std::complex<double>, long double, ...).

#include "exactne/plan.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

namespace exactne {

template <typename Scalar>
using StateVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using ComplexState = StateVector<std::complex<double>>;

enum class Direction { Forward, Inverse };

inline Direction reversed(Direction d) {
  return d == Direction::Forward ? Direction::Inverse : Direction::Forward;
}

struct OverlapResult {
  std::complex<double> overlap;  ///< <start| A |start>
  double residual_norm = 0.0;    ///< || A|start> - overlap |start> ||
};

/// Default guard on dense-matrix export.
inline constexpr std::size_t kDenseDimensionLimit = 4096;

/// A plan compiled for repeated application: start states and mixing angles
/// are computed once, inputs vary per call. Immutable and thread-compatible.
class Simulator {
 public:
  explicit Simulator(Plan plan);

  const Plan& plan() const { return plan_; }
  std::size_t dimension() const { return levels_.back().dimension; }
  int depth() const { return plan_.depth(); }
  /// Exact p of the plan, empty when a lift target is irrational.
  const std::optional<Rational>& exact_p() const { return exact_p_; }

  /// Real unit start state of the whole plan.
  const Eigen::VectorXd& start_state() const { return levels_.back().start; }

  /// Applies the plan unitary (or its inverse) to `state` in place.
  template <typename Scalar>
  void apply_in_place(Bits bits, Eigen::Ref<StateVector<Scalar>> state, Direction dir) const;

  template <typename Scalar>
  StateVector<Scalar> apply(Bits bits, StateVector<Scalar> state, Direction dir) const {
    apply_in_place<Scalar>(bits, state, dir);
    return state;
  }

  /// Final state A|start> for the given input.
  template <typename Scalar = std::complex<double>>
  StateVector<Scalar> final_state(Bits bits) const {
    return apply<Scalar>(bits, start_state().template cast<Scalar>(), Direction::Forward);
  }

  template <typename Scalar = std::complex<double>>
  OverlapResult overlap(Bits bits) const;

  /// Columns are the images of the basis vectors. Throws std::length_error
  /// above `max_dimension`.
  Eigen::MatrixXcd to_dense_matrix(Bits bits, std::size_t max_dimension = kDenseDimensionLimit) const;

  /// For an iterate plan: norm of the part of V|start> that the inner
  /// reflection negates (V = the three parallel child runs).
  double negated_component_norm(Bits bits) const;

 private:
  struct Level {
    NodeKind kind = NodeKind::Base;
    int factor = 0;
    std::size_t dimension = 1;
    Eigen::VectorXd start;     // start state of this node
    Eigen::VectorXd child_start;  // start state of the child (empty for base)
  };

  void check_input(Bits bits, std::size_t state_size) const;

  template <typename Scalar>
  void apply_level(std::size_t level, Bits bits, Scalar* x, Direction dir) const;

  template <typename Scalar>
  void reflect_about(const Eigen::VectorXd& axis, Scalar* x) const;

  template <typename Scalar>
  void reflect_iterate(const Eigen::VectorXd& child_start, Scalar* x) const;

  Plan plan_;
  std::optional<Rational> exact_p_;
  std::vector<Level> levels_;  // levels_[0] is the base, levels_.back() the root
};

// ---- free-function front end -------------------------------------------------

ComplexState start_state(const Plan& plan);
ComplexState apply(const Plan& plan, Bits bits, const ComplexState& state, Direction dir);
OverlapResult overlap(const Plan& plan, Bits bits);
Eigen::MatrixXcd to_dense_matrix(const Plan& plan, Bits bits,
                                 std::size_t max_dimension = kDenseDimensionLimit);

struct Decision {
  int outcome = 0;                  ///< 0: final state is the start state; 1: orthogonal to it
  double success_probability = 0;  ///< probability of the reported outcome
};

/// Measures {|start><start|, 1 - |start><start|} after running a plan whose
/// exact p is 0. Throws std::invalid_argument if plan_p != 0 and
/// std::runtime_error if the winning probability is not within `tolerance` of 1.
Decision exact_decide(const Plan& plan, Bits bits, double tolerance = 1e-9);
Decision exact_decide(const Simulator& sim, Bits bits, double tolerance = 1e-9);

/// Row-major CSV, each cell written as two columns "re,im".
void write_dense_csv(std::ostream& out, const Eigen::MatrixXcd& matrix);

// ---- template implementation -------------------------------------------------

// The reflections run in the innermost loop of every plan; plain loops over the
// real start vector beat Eigen's mixed real/complex expressions here.
template <typename Scalar>
void Simulator::reflect_about(const Eigen::VectorXd& axis, Scalar* x) const {
  const Eigen::Index n = axis.size();
  const double* s = axis.data();
  Scalar c{};
  for (Eigen::Index i = 0; i < n; ++i) c += s[i] * x[i];
  const Scalar twice = Scalar(2) * c;
  for (Eigen::Index i = 0; i < n; ++i) x[i] = s[i] * twice - x[i];
}

template <typename Scalar>
void Simulator::reflect_iterate(const Eigen::VectorXd& child_start, Scalar* x) const {
  const Eigen::Index n = child_start.size();
  const double* s = child_start.data();
  Scalar coeff[3] = {};
  for (int l = 0; l < 3; ++l) {
    const Scalar* block = x + l * n;
    for (Eigen::Index i = 0; i < n; ++i) coeff[l] += s[i] * block[i];
  }
  // Within span{s_1, s_2, s_3}: fix the uniform combination, negate its complement.
  const Scalar two_mean = Scalar(2) * (coeff[0] + coeff[1] + coeff[2]) / Scalar(3);
  for (int l = 0; l < 3; ++l) {
    const Scalar delta = two_mean - Scalar(2) * coeff[l];
    Scalar* block = x + l * n;
    for (Eigen::Index i = 0; i < n; ++i) block[i] += s[i] * delta;
  }
}

template <typename Scalar>
void Simulator::apply_level(std::size_t level, Bits bits, Scalar* x, Direction dir) const {
  const Level& node = levels_[level];
  switch (node.kind) {
    case NodeKind::Base:
      if (bits[0]) x[0] = -x[0];
      return;

    case NodeKind::Iterate: {
      // V^{-1} T V is an involution, so both directions run the same sequence.
      const std::size_t n = levels_[level - 1].dimension;
      const std::size_t third = bits.size() / 3;
      if (levels_[level - 1].kind == NodeKind::Base) {
        for (int l = 0; l < 3; ++l) {
          if (bits[l]) x[l] = -x[l];
        }
        reflect_iterate(node.child_start, x);
        for (int l = 0; l < 3; ++l) {
          if (bits[l]) x[l] = -x[l];
        }
        return;
      }
      for (std::size_t l = 0; l < 3; ++l) {
        apply_level(level - 1, bits.subspan(l * third, third), x + l * n, Direction::Forward);
      }
      reflect_iterate(node.child_start, x);
      for (std::size_t l = 0; l < 3; ++l) {
        apply_level(level - 1, bits.subspan(l * third, third), x + l * n, Direction::Inverse);
      }
      return;
    }

    case NodeKind::Amplify: {
      // Forward: V_1, T, V_2, T, ..., T, V_c with V_i = A for odd i, A^{-1} for even i.
      const int c = node.factor;
      for (int step = 0; step < c; ++step) {
        const int i = dir == Direction::Forward ? step + 1 : c - step;
        const Direction vi = (i % 2 == 1) ? Direction::Forward : Direction::Inverse;
        if (step > 0) reflect_about(node.child_start, x);
        apply_level(level - 1, bits, x, dir == Direction::Forward ? vi : reversed(vi));
      }
      return;
    }

    case NodeKind::Lift:
      apply_level(level - 1, bits, x, dir);
      return;
  }
}

template <typename Scalar>
void Simulator::apply_in_place(Bits bits, Eigen::Ref<StateVector<Scalar>> state, Direction dir) const {
  check_input(bits, static_cast<std::size_t>(state.size()));
  apply_level(levels_.size() - 1, bits, state.data(), dir);
}

template <typename Scalar>
OverlapResult Simulator::overlap(Bits bits) const {
  const StateVector<Scalar> out = final_state<Scalar>(bits);
  const auto start = start_state().template cast<Scalar>();
  const Scalar ov = (start.array() * out.array()).sum();
  const double residual = (out - ov * start).norm();
  return OverlapResult{std::complex<double>(ov), residual};
}

}  // namespace exactne
