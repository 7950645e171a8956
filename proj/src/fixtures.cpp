#include "exactne/fixtures.hpp"

#include <cmath>
#include <stdexcept>

namespace exactne::fixtures {

namespace {

void require_bits(Bits bits, std::size_t n) {
  if (bits.size() != n) {
    throw std::invalid_argument("fixture needs " + std::to_string(n) + " bits, got " +
                                std::to_string(bits.size()));
  }
}

const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

}  // namespace

Eigen::Matrix4d algorithm1_unitary() {
  Eigen::Matrix4d u;
  u << 0, 1, 1, 1,
       1, 1, 0, -1,
       1, -1, 1, 0,
       1, 0, -1, 1;
  return u * kInvSqrt3;
}

Eigen::Vector4d algorithm1_start() { return Eigen::Vector4d(0, 1, 1, 1) * kInvSqrt3; }

Eigen::Matrix4d query(Bits bits) {
  require_bits(bits, 3);
  Eigen::Vector4d diag(1, bits[0] ? -1 : 1, bits[1] ? -1 : 1, bits[2] ? -1 : 1);
  return diag.asDiagonal();
}

Eigen::Vector4cd algorithm1_final_state(Bits bits) {
  return (algorithm1_unitary() * query(bits) * algorithm1_start()).cast<std::complex<double>>();
}

Eigen::Vector4cd algorithm2_final_state(Bits bits) {
  const Eigen::Matrix4d u1 = algorithm1_unitary();
  const Eigen::Matrix4d q = query(bits);
  const Eigen::Matrix4d t = Eigen::Vector4d(1, -1, -1, -1).asDiagonal();
  return (q * u1.transpose() * t * u1 * q * algorithm1_start()).cast<std::complex<double>>();
}

Eigen::VectorXd algorithm3_child_start(int copy) {
  if (copy < 0 || copy > 2) throw std::out_of_range("algorithm 3 has copies 0, 1, 2");
  Eigen::VectorXd s = Eigen::VectorXd::Zero(kAlgorithm3Dimension);
  s.segment<4>(1 + 4 * copy) = algorithm1_start();
  return s;
}

Eigen::VectorXd algorithm3_start() {
  return (algorithm3_child_start(0) + algorithm3_child_start(1) + algorithm3_child_start(2)) *
         kInvSqrt3;
}

Eigen::MatrixXd algorithm3_u2() {
  // Orthonormal frame (|0>, s_1, s_2, s_3) and U_2's action in that frame:
  //   U_2 |0>  = (s_1 + s_2 + s_3)/sqrt3
  //   U_2 s_1  = (|0> + s_1 - s_2)/sqrt3, and cyclically.
  Eigen::MatrixXd frame(kAlgorithm3Dimension, 4);
  frame.col(0) = Eigen::VectorXd::Unit(kAlgorithm3Dimension, 0);
  for (int l = 0; l < 3; ++l) frame.col(l + 1) = algorithm3_child_start(l);

  Eigen::Matrix4d local;
  local << 0, 1, 1, 1,
           1, 1, 0, -1,
           1, -1, 1, 0,
           1, 0, -1, 1;
  local *= kInvSqrt3;

  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(kAlgorithm3Dimension, kAlgorithm3Dimension);
  return identity + frame * (local - Eigen::Matrix4d::Identity()) * frame.transpose();
}

Eigen::VectorXcd algorithm3_final_state(Bits bits) {
  require_bits(bits, 9);
  const Eigen::Matrix4d u1 = algorithm1_unitary();
  const Eigen::Matrix4d t = Eigen::Vector4d(1, -1, -1, -1).asDiagonal();

  Eigen::MatrixXd parallel = Eigen::MatrixXd::Identity(kAlgorithm3Dimension, kAlgorithm3Dimension);
  for (int l = 0; l < 3; ++l) {
    const Eigen::Matrix4d q = query(bits.subspan(3 * l, 3));
    parallel.block<4, 4>(1 + 4 * l, 1 + 4 * l) = q * u1.transpose() * t * u1 * q;
  }
  const Eigen::VectorXd out = algorithm3_u2() * parallel * algorithm3_start();
  return out.cast<std::complex<double>>();
}

}  // namespace exactne::fixtures

// ---------------------------------------------------------------------------

#include "exactne/simulator.hpp"

#include <cstdio>

namespace exactne::fixtures {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

InputAssignment bits_of(unsigned value, int n) {
  InputAssignment b(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) b[static_cast<std::size_t>(j)] = (value >> j) & 1U;
  return b;
}

FixtureCheck check(std::string name, double error, double tolerance) {
  return FixtureCheck{std::move(name), error <= tolerance, "max error " + num(error)};
}

}  // namespace

std::vector<FixtureCheck> run_fixture_checks(double tolerance) {
  std::vector<FixtureCheck> out;

  {
    const Eigen::Matrix4d u1 = algorithm1_unitary();
    const double err = (u1 * u1.transpose() - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff();
    const double send = (u1 * algorithm1_start() - Eigen::Vector4d::Unit(0)).norm();
    out.push_back(check("algorithm1: U1 orthogonal and maps start to |0>", std::max(err, send), tolerance));
  }

  {
    const InputAssignment b{0, 0, 1};
    const Eigen::Vector4cd expected(1.0 / 3, 2.0 / 3, 0.0, -2.0 / 3);
    out.push_back(check("algorithm1: final state on 001 is (1/3, 2/3, 0, -2/3)",
                        (algorithm1_final_state(b) - expected).norm(), tolerance));
  }

  {
    // Closed form: ((s1+s2+s3)/3, (s1-s3)/3, (s2-s1)/3, (s3-s2)/3) with s_i = (-1)^{x_i}.
    double err = 0.0;
    double prob_err = 0.0;
    for (unsigned v = 0; v < 8; ++v) {
      const InputAssignment b = bits_of(v, 3);
      const double s1 = b[0] ? -1 : 1, s2 = b[1] ? -1 : 1, s3 = b[2] ? -1 : 1;
      const Eigen::Vector4cd closed((s1 + s2 + s3) / 3, (s1 - s3) / 3, (s2 - s1) / 3, (s3 - s2) / 3);
      const Eigen::Vector4cd got = algorithm1_final_state(b);
      err = std::max(err, (got - closed).norm());
      const double p_one = got.tail<3>().squaredNorm();
      prob_err = std::max(prob_err, std::abs(p_one - (eval_ne(b) ? 8.0 / 9.0 : 0.0)));
    }
    out.push_back(check("algorithm1: closed-form amplitudes on all 8 inputs", err, tolerance));
    out.push_back(check("algorithm1: output-1 probability 8/9 iff NE = 1", prob_err, tolerance));
  }

  {
    const Simulator sim(Plan::iterate(Plan::base()));
    double err = 0.0;
    for (unsigned v = 0; v < 8; ++v) {
      const InputAssignment b = bits_of(v, 3);
      const Eigen::Vector4cd alg2 = algorithm2_final_state(b);
      const ComplexState interp = sim.final_state(b);
      err = std::max(err, std::abs(alg2(0)));
      err = std::max(err, (alg2.tail<3>() - interp).norm());
      const std::complex<double> ov = algorithm1_start().cast<std::complex<double>>().dot(alg2);
      err = std::max(err, std::abs(ov - (eval_ne(b) ? -7.0 / 9.0 : 1.0)));
    }
    out.push_back(check("algorithm2: matches iterate(base) interpreter, overlap -7/9 on NE = 1",
                        err, tolerance));
  }

  {
    const Eigen::MatrixXd u2 = algorithm3_u2();
    const double orth =
        (u2 * u2.transpose() - Eigen::MatrixXd::Identity(kAlgorithm3Dimension, kAlgorithm3Dimension))
            .cwiseAbs()
            .maxCoeff();
    const double send = (u2 * algorithm3_start() - Eigen::VectorXd::Unit(kAlgorithm3Dimension, 0)).norm();
    out.push_back(check("algorithm3: U2 orthogonal and maps start to |0>", std::max(orth, send), tolerance));
  }

  {
    const InputAssignment zeros(9, 0);
    const Eigen::VectorXcd expected =
        Eigen::VectorXd::Unit(kAlgorithm3Dimension, 0).cast<std::complex<double>>();
    out.push_back(check("algorithm3: all-zeros input ends in |0>",
                        (algorithm3_final_state(zeros) - expected).norm(), tolerance));
  }

  {
    // Every child NE value is 1: the final state is -7/9 |0> + (part orthogonal to the child starts).
    const InputAssignment b{1, 0, 0, 0, 1, 0, 0, 0, 1};
    const Eigen::VectorXcd f = algorithm3_final_state(b);
    double err = std::abs(f(0) + 7.0 / 9.0);
    for (int l = 0; l < 3; ++l) {
      err = std::max(err, std::abs(algorithm3_child_start(l).cast<std::complex<double>>().dot(f)));
    }
    out.push_back(check("algorithm3: all children 1 ends in -7/9|0> + psi_perp", err, tolerance));
  }

  {
    double err = 0.0;
    double min_len = 1.0, max_len = 0.0;
    std::size_t zeros = 0;
    for (unsigned v = 0; v < 512; ++v) {
      const InputAssignment b = bits_of(v, 9);
      const Eigen::VectorXcd f = algorithm3_final_state(b);
      double proj = 0.0;
      for (int l = 0; l < 3; ++l) {
        const std::complex<double> c = algorithm3_child_start(l).cast<std::complex<double>>().dot(f);
        proj += std::norm(c);
        if (eval_ne_d(2, b) == 0) err = std::max(err, std::abs(c));
      }
      if (eval_ne_d(2, b) == 0) {
        ++zeros;
      } else {
        min_len = std::min(min_len, std::sqrt(proj));
        max_len = std::max(max_len, std::sqrt(proj));
      }
    }
    FixtureCheck c = check("algorithm3: NE^2 = 0 final states orthogonal to all child starts", err, tolerance);
    c.detail += " over " + std::to_string(zeros) + " inputs";
    out.push_back(std::move(c));
    out.push_back(check("algorithm3: NE^2 = 1 projection onto child starts has constant length",
                        max_len - min_len, tolerance));
  }

  return out;
}

}  // namespace exactne::fixtures
