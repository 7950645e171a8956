#pragma once

// Hand-built small algorithms for NE and NE^2, written out with explicit
// matrices. They do not go through the plan interpreter and serve as
// independent references for it.

#include "exactne/plan.hpp"

#include <Eigen/Dense>

namespace exactne::fixtures {

/// The 4x4 orthogonal U_1 mapping (|1>+|2>+|3>)/sqrt3 to |0>; basis order |0>,|1>,|2>,|3>.
Eigen::Matrix4d algorithm1_unitary();

/// Start state (|1>+|2>+|3>)/sqrt3 of the one-query NE algorithm.
Eigen::Vector4d algorithm1_start();

/// Phase query on |1>,|2>,|3>; |0> is not queried.
Eigen::Matrix4d query(Bits bits);

/// U_1 Q |start> for three input bits.
Eigen::Vector4cd algorithm1_final_state(Bits bits);

/// Q U_1^{-1} T U_1 Q |start>, T = diag(1, -1, -1, -1): the two-query NE algorithm.
Eigen::Vector4cd algorithm2_final_state(Bits bits);

/// Layout of the NE^2 algorithm built from three copies of algorithm 2:
/// index 0 is the extra |0>, copy l occupies indices 1 + 4l .. 4 + 4l.
inline constexpr int kAlgorithm3Dimension = 13;

/// Start state of copy l (0-based) embedded in the 13-dim space.
Eigen::VectorXd algorithm3_child_start(int copy);
Eigen::VectorXd algorithm3_start();

/// The U_2 map on the 13-dim space: sends the start state to |0>, acts as
/// identity off span{|0>, child starts}.
Eigen::MatrixXd algorithm3_u2();

/// Runs the three algorithm-2 copies on the thirds of a 9-bit input, then U_2.
Eigen::VectorXcd algorithm3_final_state(Bits bits);

}  // namespace exactne::fixtures

#include <string>
#include <vector>

namespace exactne::fixtures {

struct FixtureCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Runs the named small-algorithm checks against closed forms and the plan
/// interpreter. `tolerance` bounds every amplitude comparison.
std::vector<FixtureCheck> run_fixture_checks(double tolerance = 1e-10);

}  // namespace exactne::fixtures
